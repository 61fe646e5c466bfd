//! Seeded randomized search over the conjectured inequalities.
//!
//! Trial `t` of a run with seed `s` draws everything from
//! `ChaCha8Rng::seed_from_u64(s)` on stream `t`, so trials are independent
//! and can be evaluated in any order.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::gen::{self, GenConfig};
use super::report::{VerdictReport, VerifyRequest};
use super::verify::{self, diagonal_boundary_point};
use crate::horn::{self, IndexTuple, MAX_HORN_N};
use crate::interval::Trilean;
use crate::multiaffine::{self, MultiPoly};
use crate::poly::{self, RatPoly};
use crate::rat::{self, Rat};
use crate::roots::default_eps;
use crate::{Error, Result};

/// Identifier of the generator recorded in every search output.
pub const RNG_ID: &str = "rand_chacha::ChaCha8Rng seed_from_u64(seed), set_stream(trial)";

/// Statement ids accepted by [`search_conjectures`].
pub const SEARCH_STATEMENTS: &[&str] = &["2.3", "2.4", "2.5", "submodularity", "mss", "mv-submodularity"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub statement: String,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub gen: GenConfig,
    #[serde(with = "rat::serde_str", default = "default_eps")]
    pub eps: Rat,
}

impl SearchConfig {
    pub fn new(statement: &str, n: usize, trials: u64, seed: u64) -> Self {
        SearchConfig {
            statement: statement.to_string(),
            n,
            trials,
            seed,
            gen: GenConfig::default(),
            eps: default_eps(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub statement: String,
    pub trials: u64,
    pub verified: u64,
    pub violated: u64,
    pub indeterminate: u64,
    /// Trials whose inputs were rejected (e.g. stability not certified).
    pub skipped: u64,
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: u64,
    pub report: VerdictReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutput {
    pub rng: String,
    pub config: SearchConfig,
    pub summary: SearchSummary,
    /// Non-verified trials only, by trial index.
    pub reports: Vec<TrialReport>,
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

enum Outcome {
    Report(Box<VerdictReport>),
    Skipped,
}

/// Horn and non-Horn triples for every `r`, computed once per run.
struct TripleTables {
    horn: Vec<IndexTuple>,
    non_horn: Vec<IndexTuple>,
}

impl TripleTables {
    fn new(n: usize) -> Result<Self> {
        let mut horn_all = Vec::new();
        let mut non_horn = Vec::new();
        for r in 1..=n {
            let h = horn::horn_triples(n, r)?;
            let set: std::collections::BTreeSet<_> = h.iter().cloned().collect();
            non_horn.extend(horn::all_triples(n, r).into_iter().filter(|t| !set.contains(t)));
            horn_all.extend(h);
        }
        Ok(TripleTables {
            horn: horn_all,
            non_horn,
        })
    }
}

fn as_4tuple(t: &IndexTuple) -> IndexTuple {
    IndexTuple {
        l: Some(t.i.clone()),
        ..t.clone()
    }
}

fn three_polys(rng: &mut ChaCha8Rng, n: usize, cfg: &GenConfig) -> [RatPoly; 3] {
    [0, 1, 2].map(|_| gen::random_real_rooted(rng, n, n, cfg))
}

fn run_trial(cfg: &SearchConfig, tables: Option<&TripleTables>, trial: u64) -> Result<Outcome> {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = cfg.n;
    let eps = &cfg.eps;
    let report = match cfg.statement.as_str() {
        "2.3" | "2.4" => {
            let tables = tables.expect("tables built");
            let pool = if cfg.statement == "2.3" {
                &tables.horn
            } else {
                &tables.non_horn
            };
            let Some(t) = pool.choose(&mut rng) else {
                return Ok(Outcome::Skipped);
            };
            let [p, q, r] = three_polys(&mut rng, n, &cfg.gen);
            verify::verify_4tuple(&as_4tuple(t), &p, &q, &r, n, eps)?
        }
        "2.5" => {
            // Weyl triple (i, j, k), i ≥ j + k − 1
            let j = rng.random_range(1..=n);
            let k = rng.random_range(1..=n + 1 - j);
            let i = rng.random_range(j + k - 1..=n);
            let m = j.max(k);
            let l = if trial % 2 == 0 { m } else { n + 1 - m };
            let t = IndexTuple {
                n,
                i: vec![i],
                l: Some(vec![l]),
                j: vec![j],
                k: vec![k],
            };
            let [p, q, r] = three_polys(&mut rng, n, &cfg.gen);
            verify::verify_4tuple(&t, &p, &q, &r, n, eps)?
        }
        "submodularity" => {
            let d = gen::random_degrees(&mut rng, n, true);
            let [p, q, r] = d.map(|d| gen::random_real_rooted(&mut rng, d, n, &cfg.gen));
            verify::verify_submodularity(&p, &q, &r, n, eps)?
        }
        "mss" => {
            let p = gen::random_real_rooted(&mut rng, n, n, &cfg.gen);
            let q = gen::random_real_rooted(&mut rng, n, n, &cfg.gen);
            let alpha = gen::random_alpha(&mut rng);
            verify::verify_mss_ualpha(&p, &q, &alpha, n, eps)?
        }
        "mv-submodularity" => {
            let polys: Vec<MultiPoly> = (0..3)
                .map(|_| multiaffine::random_stable_multiaffine(n, &mut rng))
                .collect();
            let pr = multiaffine::boxplus_gamma(&polys[0], &polys[2])?;
            let qr = multiaffine::boxplus_gamma(&polys[1], &polys[2])?;
            let mut w = || -> Vec<Rat> { (0..n).map(|_| rat::int(rng.random_range(-2..=2))).collect() };
            let (wa, wb) = (w(), w());
            let a = diagonal_boundary_point(&pr, &wa, eps);
            let b = diagonal_boundary_point(&qr, &wb, eps);
            match verify::verify_mv_submodularity(&polys, &a, &b, eps) {
                Ok(rep) => rep,
                Err(Error::StabilityNotCertified | Error::PreconditionNotCertified(_)) => {
                    return Ok(Outcome::Skipped)
                }
                Err(e) => return Err(e),
            }
        }
        other => return Err(Error::UnknownStatement(other.to_string())),
    };
    Ok(Outcome::Report(Box::new(recheck(report, eps)?.with_seed(cfg.seed))))
}

/// A certified violation is emitted only if its serialized inputs
/// reproduce it.
fn recheck(rep: VerdictReport, eps: &Rat) -> Result<VerdictReport> {
    if !rep.verdict.is_false() {
        return Ok(rep);
    }
    let text = serde_json::to_string(&rep.inputs).map_err(|e| Error::Parse(e.to_string()))?;
    let back: VerifyRequest = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let again = verify::verify(&back, eps)?;
    if again.verdict.is_false() {
        Ok(rep)
    } else {
        let mut detail = rep.detail.clone();
        detail["recheck"] = json!(again.status);
        Ok(VerdictReport::new(rep.inputs, Trilean::Indeterminate(Rat::from_integer(0.into())), eps, detail))
    }
}

/// Run `cfg.trials` seeded trials of one statement. The output depends only
/// on `cfg`, not on the thread count.
pub fn search_conjectures(cfg: &SearchConfig) -> Result<SearchOutput> {
    if !SEARCH_STATEMENTS.contains(&cfg.statement.as_str()) {
        return Err(Error::UnknownStatement(cfg.statement.clone()));
    }
    if cfg.n == 0 {
        return Err(Error::DegreeZero);
    }
    let needs_tables = matches!(cfg.statement.as_str(), "2.3" | "2.4");
    if needs_tables && cfg.n > MAX_HORN_N {
        return Err(Error::UnsupportedSize(cfg.n));
    }
    let tables = if needs_tables {
        Some(TripleTables::new(cfg.n)?)
    } else {
        None
    };
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, tables.as_ref(), t))
        .collect::<Result<_>>()?;
    let mut summary = SearchSummary {
        statement: cfg.statement.clone(),
        trials: cfg.trials,
        verified: 0,
        violated: 0,
        indeterminate: 0,
        skipped: 0,
        seeds: vec![cfg.seed],
    };
    let mut reports = Vec::new();
    for (trial, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Skipped => summary.skipped += 1,
            Outcome::Report(rep) => {
                match rep.verdict {
                    Trilean::True => {
                        summary.verified += 1;
                        continue;
                    }
                    Trilean::False => summary.violated += 1,
                    Trilean::Indeterminate(_) => summary.indeterminate += 1,
                }
                reports.push(TrialReport {
                    trial: trial as u64,
                    report: *rep,
                });
            }
        }
    }
    Ok(SearchOutput {
        rng: RNG_ID.to_string(),
        config: cfg.clone(),
        summary,
        reports,
    })
}

/// The MSS specialisation checked against an independent formulation:
/// `λ₁(p ⊞ q ⊞ u_α) + λ₁(u_α)` against the direct `U_α` form.
pub fn mss_agrees(p: &RatPoly, q: &RatPoly, alpha: &Rat, n: usize, eps: &Rat) -> Result<bool> {
    let a = verify::verify_mss_ualpha(p, q, alpha, n, eps)?;
    let b = verify::verify_submodularity(p, q, &poly::u_alpha(n, alpha), n, eps)?;
    Ok(a.verdict.is_false() == b.verdict.is_false())
}
