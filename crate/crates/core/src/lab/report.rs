//! Verdict reports and the request format that reproduces them.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::horn::{CMat, IndexTuple};
use crate::interval::Trilean;
use crate::multiaffine::MultiPoly;
use crate::poly::RatPoly;
use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Everything a verifier needs. Serialised into every report so that the
/// report can be fed back to `verify` unchanged.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyRequest {
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<RatPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<RatPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<RatPoly>,
    /// Weyl indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<IndexTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rat::serde_opt")]
    pub alpha: Option<Rat>,
    /// Multivariate input for `sr-check` and `above-roots`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<MultiPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rat_vec")]
    pub point: Option<Vec<Rat>>,
    /// `[p, q, r]` for `mv-submodularity`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<Vec<MultiPoly>>,
    /// `[a, b]` for `mv-submodularity`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rat_vecs")]
    pub points: Option<Vec<Vec<Rat>>>,
    /// Hermitian matrices for `matrix-submodularity`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<CMat>>,
}

mod opt_rat_vec {
    use super::Rat;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(crate::rat::format).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
        let v = Option::<Vec<String>>::deserialize(d)?;
        v.map(|v| {
            v.iter()
                .map(|s| crate::rat::parse(s).map_err(D::Error::custom))
                .collect()
        })
        .transpose()
    }
}

mod opt_rat_vecs {
    use super::Rat;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<Rat>>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| {
                v.iter()
                    .map(|x| x.iter().map(crate::rat::format).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rat>>>, D::Error> {
        let v = Option::<Vec<Vec<String>>>::deserialize(d)?;
        v.map(|v| {
            v.iter()
                .map(|x| {
                    x.iter()
                        .map(|s| crate::rat::parse(s).map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        })
        .transpose()
    }
}

impl VerifyRequest {
    pub fn new(statement: &str) -> Self {
        VerifyRequest {
            statement: statement.to_string(),
            ..Default::default()
        }
    }

    pub(crate) fn need_poly(&self, name: &str) -> Result<&RatPoly> {
        let v = match name {
            "p" => &self.p,
            "q" => &self.q,
            _ => &self.r,
        };
        v.as_ref().ok_or_else(|| Error::MissingInput(name.to_string()))
    }

    /// `n` if given, otherwise the ambient size of `p`.
    pub(crate) fn ambient(&self) -> Result<usize> {
        match (self.n, &self.p) {
            (Some(n), _) => Ok(n),
            (None, Some(p)) => Ok(p.ambient()),
            _ => Err(Error::MissingInput("n".into())),
        }
    }
}

/// Outcome of one verifier call.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub statement: String,
    pub status: String,
    pub verdict: Trilean,
    pub inputs: VerifyRequest,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(with = "rat::serde_str")]
    pub eps: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl VerdictReport {
    pub fn new(inputs: VerifyRequest, verdict: Trilean, eps: &Rat, detail: Value) -> Self {
        // a certified violation carries its own evidence
        let witness = verdict.is_false().then(|| detail.clone());
        VerdictReport {
            statement: inputs.statement.clone(),
            status: verdict.status().to_string(),
            verdict,
            inputs,
            witness,
            eps: eps.clone(),
            seed: None,
            detail,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Process exit code: 0 verified, 2 indeterminate, 3 violated.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Trilean::True => 0,
            Trilean::Indeterminate(_) => 2,
            Trilean::False => 3,
        }
    }
}
