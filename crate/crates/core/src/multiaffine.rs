//! Multivariate polynomials with boxed degrees `0 ≤ μ ≤ γ`, the convolution
//! `⊞^γ`, strongly Rayleigh certificates and points above the roots.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::interval::Trilean;
use crate::poly::RatPoly;
use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Exponent vector.
pub type Mono = Vec<u32>;

/// `Σ c_μ x^μ` over `0 ≤ μ ≤ γ`, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MultiJson", into = "MultiJson")]
pub struct MultiPoly {
    gamma: Mono,
    terms: BTreeMap<Mono, Rat>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mu: Mono,
    #[serde(with = "rat::serde_str")]
    c: Rat,
}

#[derive(Serialize, Deserialize)]
struct MultiJson {
    gamma: Mono,
    terms: Vec<TermJson>,
}

impl TryFrom<MultiJson> for MultiPoly {
    type Error = Error;
    fn try_from(j: MultiJson) -> Result<Self> {
        let mut p = MultiPoly::zero(j.gamma);
        for t in j.terms {
            p.add_term(t.mu, t.c)?;
        }
        Ok(p)
    }
}

impl From<MultiPoly> for MultiJson {
    fn from(p: MultiPoly) -> Self {
        MultiJson {
            gamma: p.gamma,
            terms: p
                .terms
                .into_iter()
                .map(|(mu, c)| TermJson { mu, c })
                .collect(),
        }
    }
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn mono_factorial(mu: &[u32]) -> Rat {
    Rat::from_integer(mu.iter().map(|&m| rat::factorial(m as usize)).product())
}

impl MultiPoly {
    pub fn zero(gamma: Mono) -> Self {
        MultiPoly {
            gamma,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gamma: Mono, c: Rat) -> Self {
        let mut p = Self::zero(gamma);
        let z = vec![0; p.n_vars()];
        p.add_term(z, c).expect("zero exponent is in every box");
        p
    }

    /// Build from `(μ, c)` pairs; repeated monomials are summed.
    pub fn from_terms(gamma: Mono, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Result<Self> {
        let mut p = Self::zero(gamma);
        for (mu, c) in terms {
            p.add_term(mu, c)?;
        }
        Ok(p)
    }

    /// `x^γ`.
    pub fn x_gamma(gamma: Mono) -> Self {
        let mut p = Self::zero(gamma.clone());
        p.terms.insert(gamma, Rat::one());
        p
    }

    /// `Π (xᵢ + yᵢ)^{γᵢ}`.
    pub fn linear_power(gamma: Mono, y: &[Rat]) -> Result<Self> {
        if y.len() != gamma.len() {
            return Err(Error::GammaMismatch);
        }
        Ok(Self::x_gamma(gamma).mshift(y))
    }

    pub fn add_term(&mut self, mu: Mono, c: Rat) -> Result<()> {
        if mu.len() != self.gamma.len() || mu.iter().zip(&self.gamma).any(|(m, g)| m > g) {
            return Err(Error::GammaMismatch);
        }
        let sum = self.coeff(&mu) + c;
        if sum.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, sum);
        }
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[u32] {
        &self.gamma
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Rat> {
        &self.terms
    }

    pub fn coeff(&self, mu: &[u32]) -> Rat {
        self.terms.get(mu).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree at most one in every variable.
    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|mu| mu.iter().all(|&m| m <= 1))
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.n_vars())
            .filter(|&i| self.terms.keys().any(|mu| mu[i] > 0))
            .collect()
    }

    /// `∂^μ p`, keeping the box `γ`.
    pub fn partial(&self, mu: &[u32]) -> MultiPoly {
        let mut out = Self::zero(self.gamma.clone());
        for (nu, c) in &self.terms {
            if nu.iter().zip(mu).any(|(n, m)| n < m) {
                continue;
            }
            let f: BigInt = nu.iter().zip(mu).map(|(&n, &m)| falling(n, m)).product();
            let e: Mono = nu.iter().zip(mu).map(|(n, m)| n - m).collect();
            out.terms.insert(e, c * Rat::from_integer(f));
        }
        out
    }

    /// `∂ᵢ` for a 0-based variable.
    pub fn d(&self, i: usize) -> MultiPoly {
        let mut mu = vec![0; self.n_vars()];
        mu[i] = 1;
        self.partial(&mu)
    }

    pub fn meval(&self, a: &[Rat]) -> Rat {
        assert_eq!(a.len(), self.n_vars(), "point dimension");
        self.terms.iter().fold(Rat::zero(), |acc, (mu, c)| {
            let m = mu
                .iter()
                .zip(a)
                .fold(c.clone(), |t, (&e, x)| t * num_traits::pow(x.clone(), e as usize));
            acc + m
        })
    }

    /// `p(x + a)`.
    pub fn mshift(&self, a: &[Rat]) -> MultiPoly {
        assert_eq!(a.len(), self.n_vars(), "shift dimension");
        let mut out = Self::zero(self.gamma.clone());
        for (mu, c) in &self.terms {
            // expand Π (xᵢ + aᵢ)^{μᵢ}
            let mut partial: Vec<(Mono, Rat)> = vec![(vec![0; mu.len()], c.clone())];
            for (i, &m) in mu.iter().enumerate() {
                let mut next = Vec::new();
                for (e, v) in &partial {
                    for k in 0..=m {
                        let coef = Rat::from_integer(binomial(BigInt::from(m), BigInt::from(k)))
                            * num_traits::pow(a[i].clone(), (m - k) as usize);
                        if coef.is_zero() {
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2[i] = k;
                        next.push((e2, v * coef));
                    }
                }
                partial = next;
            }
            for (e, v) in partial {
                out.add_term(e, v).expect("shift stays in the box");
            }
        }
        out
    }

    /// Product; the box of the result is `γ_p + γ_q`.
    pub fn mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        if self.n_vars() != o.n_vars() {
            return Err(Error::GammaMismatch);
        }
        let gamma: Mono = self.gamma.iter().zip(&o.gamma).map(|(a, b)| a + b).collect();
        let mut out = Self::zero(gamma);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let e: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c * d)?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        if self.gamma != o.gamma {
            return Err(Error::GammaMismatch);
        }
        let mut out = self.clone();
        for (mu, c) in &o.terms {
            out.add_term(mu.clone(), -c.clone())?;
        }
        Ok(out)
    }

    pub fn add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        if self.gamma != o.gamma {
            return Err(Error::GammaMismatch);
        }
        let mut out = self.clone();
        for (mu, c) in &o.terms {
            out.add_term(mu.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        let mut out = Self::zero(self.gamma.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        }
        out
    }

    /// `p(c·x)`.
    pub fn scale_args(&self, c: &Rat) -> MultiPoly {
        let mut out = Self::zero(self.gamma.clone());
        for (mu, v) in &self.terms {
            let deg: u32 = mu.iter().sum();
            out.add_term(mu.clone(), v * num_traits::pow(c.clone(), deg as usize))
                .expect("same box");
        }
        out
    }

    /// Re-box into a larger `γ`.
    pub fn with_gamma(&self, gamma: Mono) -> Result<MultiPoly> {
        MultiPoly::from_terms(gamma, self.terms.clone())
    }

    /// `t ↦ p(w + t·(1,…,1))`.
    pub fn diagonal_restriction(&self, w: &[Rat]) -> RatPoly {
        let shifted = self.mshift(w);
        let total: u32 = self.gamma.iter().sum();
        let mut coeffs = vec![Rat::zero(); total as usize + 1];
        for (mu, c) in shifted.terms() {
            let d: u32 = mu.iter().sum();
            coeffs[d as usize] += c;
        }
        RatPoly::from_coeffs(coeffs)
    }

    /// Univariate view of a one-variable polynomial with ambient `γ₁`.
    pub fn to_univariate(&self) -> Result<RatPoly> {
        if self.n_vars() != 1 {
            return Err(Error::GammaMismatch);
        }
        let g = self.gamma[0] as usize;
        let mut coeffs = vec![Rat::zero(); g + 1];
        for (mu, c) in &self.terms {
            coeffs[mu[0] as usize] = c.clone();
        }
        RatPoly::new(coeffs, g)
    }

    pub fn from_univariate(p: &RatPoly) -> MultiPoly {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![k as u32], c.clone()));
        MultiPoly::from_terms(vec![p.ambient() as u32], terms).expect("degree ≤ ambient")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mu, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let vars: Vec<String> = mu
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn box_monos(gamma: &[u32]) -> Vec<Mono> {
    let mut out = vec![Vec::new()];
    for &g in gamma {
        out = out
            .into_iter()
            .flat_map(|m: Mono| {
                (0..=g).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .collect();
    }
    out
}

/// `(p ⊞^γ q)(x) = Σ_{0≤μ≤γ} ∂^μ p(x) · ∂^{γ−μ} q(0)`, without any
/// factorial normalisation; `x^γ/γ!` is the identity.
pub fn boxplus_gamma(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if p.gamma != q.gamma {
        return Err(Error::GammaMismatch);
    }
    let gamma = &p.gamma;
    let mut out = MultiPoly::zero(gamma.clone());
    for mu in box_monos(gamma) {
        let rest: Mono = gamma.iter().zip(&mu).map(|(g, m)| g - m).collect();
        let qc = q.coeff(&rest);
        if qc.is_zero() {
            continue;
        }
        // ∂^{γ−μ} q(0) = (γ−μ)! · q_{γ−μ}
        let w = qc * mono_factorial(&rest);
        for (nu, c) in p.partial(&mu).terms {
            out.add_term(nu, c * &w)?;
        }
    }
    Ok(out)
}

/// `Δᵢⱼ = ∂ᵢp·∂ⱼp − p·∂ᵢ∂ⱼp` (0-based `i`, `j`).
pub fn rayleigh_difference(p: &MultiPoly, i: usize, j: usize) -> MultiPoly {
    let (di, dj) = (p.d(i), p.d(j));
    let dij = di.d(j);
    let a = di.mul(&dj).expect("same variables");
    let b = p.mul(&dij).expect("same variables");
    a.sub(&b).expect("same box")
}

const SR_SAMPLES: usize = 400;
const SR_SEED: u64 = 0x5eed_5a;

fn nonnegative(delta: &MultiPoly, rng: &mut ChaCha8Rng) -> Trilean {
    let vars = delta.support_vars();
    match vars.as_slice() {
        [] => Trilean::from(!delta.coeff(&vec![0; delta.n_vars()]).is_negative()),
        [v] if delta.terms.keys().all(|mu| mu[*v] <= 2) => {
            let mut e = vec![0; delta.n_vars()];
            let c = delta.coeff(&e);
            e[*v] = 1;
            let b = delta.coeff(&e);
            e[*v] = 2;
            let a = delta.coeff(&e);
            if a.is_zero() {
                Trilean::from(b.is_zero() && !c.is_negative())
            } else {
                let disc = &b * &b - rat::int(4) * &a * &c;
                Trilean::from(a.is_positive() && !disc.is_positive())
            }
        }
        _ => {
            // sampling can only refute
            let n = delta.n_vars();
            let grid = [-2, -1, 0, 1, 2];
            for k in 0..SR_SAMPLES {
                let x: Vec<Rat> = (0..n)
                    .map(|i| {
                        if k < 25 {
                            rat::int(grid[(k / 5usize.pow(i as u32 % 2)) % 5])
                        } else {
                            rat::ratio(rng.random_range(-64..=64), rng.random_range(1..=16))
                        }
                    })
                    .collect();
                if delta.meval(&x).is_negative() {
                    return Trilean::False;
                }
            }
            Trilean::Indeterminate(Rat::zero())
        }
    }
}

/// Real stability of a multiaffine polynomial through the strongly Rayleigh
/// condition `Δᵢⱼ ≥ 0` for all `i < j`.
///
/// Exact whenever every `Δᵢⱼ` is effectively univariate of degree ≤ 2 (in
/// particular for three variables); otherwise a seeded sampler can only
/// certify `False`, and an undecided result is `Indeterminate` with width 0.
pub fn strongly_rayleigh(p: &MultiPoly) -> Result<Trilean> {
    if !p.is_multiaffine() {
        return Err(Error::NotMultiaffine);
    }
    let n = p.n_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(SR_SEED);
    let mut verdict = Trilean::True;
    for i in 0..n {
        for j in i + 1..n {
            let delta = rayleigh_difference(p, i, j);
            debug_assert!(delta.d(i).is_zero() && delta.d(j).is_zero());
            verdict = verdict.and(nonnegative(&delta, &mut rng));
            if verdict.is_false() {
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// Outcome of the same-sign test for `a ∈ Ab(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbVerdict {
    #[serde(with = "rat::serde_vec")]
    pub point: Vec<Rat>,
    pub verdict: Trilean,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Membership `a ∈ Ab(p)` for certified real stable multiaffine `p`: the
/// coefficients of `p(x + a)` must not take both signs. Zero coefficients
/// are neutral, so boundary points with `p(a) = 0` can belong.
pub fn above_roots(p: &MultiPoly, a: &[Rat]) -> Result<AbVerdict> {
    if a.len() != p.n_vars() {
        return Err(Error::GammaMismatch);
    }
    if !strongly_rayleigh(p)?.is_true() {
        return Err(Error::StabilityNotCertified);
    }
    Ok(same_sign(p, a))
}

fn same_sign(p: &MultiPoly, a: &[Rat]) -> AbVerdict {
    let s = p.mshift(a);
    let positive = s.terms.values().filter(|c| c.is_positive()).count();
    let negative = s.terms.values().filter(|c| c.is_negative()).count();
    let total: usize = p.gamma.iter().map(|&g| g as usize + 1).product();
    let zero = total - positive - negative;
    // Ab(0) is everything
    let ok = !(positive > 0 && negative > 0);
    AbVerdict {
        point: a.to_vec(),
        verdict: Trilean::from(ok),
        positive,
        negative,
        zero,
    }
}

/// `Φᵢ(a) = ∂ᵢp(a) / p(a)`, 1-based `i`.
pub fn potential(p: &MultiPoly, i: usize, a: &[Rat]) -> Result<Rat> {
    if i == 0 || i > p.n_vars() {
        return Err(Error::IndexOutOfRange(format!("variable {i} not in 1..={}", p.n_vars())));
    }
    if a.len() != p.n_vars() {
        return Err(Error::GammaMismatch);
    }
    let v = p.meval(a);
    if v.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    Ok(p.d(i - 1).meval(a) / v)
}

/// `det(Σ xᵢ vᵢvᵢᵀ + B)` for random rational `vᵢ` and symmetric `B`: a
/// multiaffine real stable polynomial.
pub fn random_stable_multiaffine(n: usize, rng: &mut impl Rng) -> MultiPoly {
    let m = n.max(1);
    let small = |rng: &mut dyn rand::RngCore| rat::int(rng.random_range(-3..=3));
    let vs: Vec<Vec<Rat>> = (0..n)
        .map(|_| loop {
            let v: Vec<Rat> = (0..m).map(|_| small(rng)).collect();
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        })
        .collect();
    let mut b = vec![vec![Rat::zero(); m]; m];
    for r in 0..m {
        for c in r..m {
            let x = small(rng);
            b[r][c] = x.clone();
            b[c][r] = x;
        }
    }
    // values on {0,1}ⁿ, then Möbius inversion to coefficients
    let gamma = vec![1; n];
    let corners = box_monos(&gamma);
    let value = |s: &Mono| {
        let mut mat = b.clone();
        for (i, &on) in s.iter().enumerate() {
            if on == 1 {
                for r in 0..m {
                    for c in 0..m {
                        mat[r][c] += &vs[i][r] * &vs[i][c];
                    }
                }
            }
        }
        det(mat)
    };
    let vals: BTreeMap<Mono, Rat> = corners.iter().map(|s| (s.clone(), value(s))).collect();
    let terms = corners.iter().map(|s| {
        let c = corners
            .iter()
            .filter(|t| t.iter().zip(s).all(|(a, b)| a <= b))
            .fold(Rat::zero(), |acc, t| {
                let parity = s.iter().zip(t).filter(|(a, b)| a != b).count();
                if parity % 2 == 0 {
                    acc + &vals[t]
                } else {
                    acc - &vals[t]
                }
            });
        (s.clone(), c)
    });
    MultiPoly::from_terms(gamma, terms).expect("multiaffine")
}

fn det(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            let f = &a[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// One exact check of the counterexample reproduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

fn r(n: i64, d: i64) -> Rat {
    rat::ratio(n, d)
}

fn m3(a: u32, b: u32, c: u32) -> Mono {
    vec![a, b, c]
}

/// The multiaffine polynomial in three variables whose self-convolution
/// leaves `Ab` at `−1 − e₁`.
pub fn counterexample_p() -> MultiPoly {
    MultiPoly::from_terms(
        vec![1, 1, 1],
        [
            (m3(1, 1, 1), r(8, 21)),
            (m3(1, 1, 0), r(80, 21)),
            (m3(1, 0, 1), r(27, 7)),
            (m3(0, 1, 1), r(1, 1)),
            (m3(1, 0, 0), r(4, 1)),
            (m3(0, 1, 0), r(4, 1)),
            (m3(0, 0, 1), r(4, 1)),
            (m3(0, 0, 0), r(4, 1)),
        ],
    )
    .expect("multiaffine")
}

/// The published expansion of `p ⊞ p`.
pub fn counterexample_expected_square() -> Vec<(Mono, Rat)> {
    vec![
        (m3(1, 1, 1), r(64, 441)),
        (m3(1, 1, 0), r(1280, 441)),
        (m3(1, 0, 1), r(144, 49)),
        (m3(0, 1, 1), r(16, 21)),
        (m3(1, 0, 0), r(4768, 147)),
        (m3(0, 1, 0), r(32, 3)),
        (m3(0, 0, 1), r(226, 21)),
        (m3(0, 0, 0), r(1520, 21)),
    ]
}

/// Published value of `(p ⊞ p)(−1 − e₁)`.
pub fn counterexample_expected_value() -> Rat {
    r(-1450, 441)
}

/// The point `−1 − e₁ = (−2, −1, −1)`.
pub fn counterexample_point() -> Vec<Rat> {
    vec![rat::int(-2), rat::int(-1), rat::int(-1)]
}

fn square_of_linear(scale: Rat, lin: &[(usize, i64)], constant: i64) -> MultiPoly {
    let mut l = MultiPoly::constant(vec![1, 1, 1], rat::int(constant));
    for &(v, c) in lin {
        let mut mu = vec![0, 0, 0];
        mu[v] = 1;
        l.add_term(mu, rat::int(c)).expect("in box");
    }
    l.mul(&l).expect("same variables").scale(&scale)
}

/// The three closed forms of `Δ₁₂`, `Δ₁₃`, `Δ₂₃` for [`counterexample_p`].
pub fn counterexample_expected_deltas() -> Vec<((usize, usize), MultiPoly)> {
    vec![
        ((1, 2), square_of_linear(r(1, 21), &[(2, 7)], 4)),
        ((1, 3), square_of_linear(r(4, 7), &[(1, 2)], 1)),
        ((2, 3), square_of_linear(r(4, 147), &[(0, 22)], 21)),
    ]
}

/// Every exact check of the counterexample, in a fixed order.
pub fn counterexample_checks() -> Vec<Check> {
    let p = counterexample_p();
    let mut checks = Vec::new();
    let mut push = |name: String, expected: String, actual: String| {
        let ok = expected == actual;
        checks.push(Check {
            name,
            expected,
            actual,
            ok,
        });
    };
    for ((i, j), want) in counterexample_expected_deltas() {
        let got = rayleigh_difference(&p, i - 1, j - 1);
        push(format!("delta_{i}{j}"), want.to_string(), got.to_string());
    }
    let sr = strongly_rayleigh(&p).map(|t| t.status().to_string());
    push(
        "p strongly Rayleigh".into(),
        "Verified".into(),
        sr.unwrap_or_else(|e| e.to_string()),
    );
    for i in 0..3 {
        let mut a = vec![Rat::zero(); 3];
        a[i] = rat::int(-1);
        let v = above_roots(&p, &a).map(|v| v.verdict.status().to_string());
        push(
            format!("-e{} in Ab(p)", i + 1),
            "Verified".into(),
            v.unwrap_or_else(|e| e.to_string()),
        );
    }
    let sq = boxplus_gamma(&p, &p).expect("same box");
    for (mu, c) in counterexample_expected_square() {
        let name = if mu.iter().all(|&m| m == 0) {
            "coefficient 1".to_string()
        } else {
            let vars: Vec<String> = mu
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| format!("x{}", i + 1))
                .collect();
            format!("coefficient {}", vars.join("*"))
        };
        push(name, rat::format(&c), rat::format(&sq.coeff(&mu)));
    }
    let extra = sq.terms.len() == counterexample_expected_square().len();
    push(
        "no other monomials".into(),
        "true".into(),
        extra.to_string(),
    );
    let value = sq.meval(&counterexample_point());
    push(
        "(p+p)(-1-e1)".into(),
        rat::format(&counterexample_expected_value()),
        rat::format(&value),
    );
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn mp(gamma: &[u32], t: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(gamma.to_vec(), t.iter().map(|(m, c)| (m.to_vec(), int(*c)))).unwrap()
    }

    #[test]
    fn partial_examples() {
        let p = mp(&[1, 1], &[(&[1, 1], 1), (&[0, 0], 1)]);
        assert_eq!(p.partial(&[1, 0]), mp(&[1, 1], &[(&[0, 1], 1)]));
        assert_eq!(mp(&[1, 1], &[(&[1, 1], 1)]).partial(&[1, 1]), mp(&[1, 1], &[(&[0, 0], 1)]));
        assert!(p.partial(&[2, 0]).is_zero());
    }

    #[test]
    fn shift_and_eval() {
        let p = mp(&[1, 1], &[(&[1, 1], 1)]);
        assert_eq!(
            p.mshift(&[int(1), int(1)]),
            mp(&[1, 1], &[(&[1, 1], 1), (&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)])
        );
        assert_eq!(counterexample_p().meval(&vec![int(0); 3]), int(4));
    }

    #[test]
    fn identity_element() {
        let p = mp(&[1, 1], &[(&[1, 1], 3), (&[1, 0], -2), (&[0, 0], 5)]);
        let x = MultiPoly::x_gamma(vec![1, 1]);
        assert_eq!(boxplus_gamma(&p, &x).unwrap(), p);
        let g = vec![2, 1];
        let q = mp(&g, &[(&[2, 1], 1), (&[1, 0], 4), (&[0, 1], -1)]);
        // γ! = 2
        assert_eq!(boxplus_gamma(&q, &MultiPoly::x_gamma(g)).unwrap(), q.scale(&int(2)));
        assert_eq!(
            boxplus_gamma(&p, &MultiPoly::x_gamma(vec![1])),
            Err(Error::GammaMismatch)
        );
    }

    #[test]
    fn univariate_bridge() {
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        let q = RatPoly::from_ints(&[3, -2, 1]);
        let mv = boxplus_gamma(&MultiPoly::from_univariate(&p), &MultiPoly::from_univariate(&q)).unwrap();
        let uv = crate::poly::boxplus(&p, &q, 2).unwrap();
        assert_eq!(mv.to_univariate().unwrap(), uv.scale(&int(2)));
    }

    #[test]
    fn sr_examples() {
        let a = mp(&[1, 1], &[(&[1, 1], 1), (&[0, 0], 1)]);
        assert_eq!(rayleigh_difference(&a, 0, 1), mp(&[2, 2], &[(&[0, 0], -1)]));
        assert_eq!(strongly_rayleigh(&a).unwrap(), Trilean::False);
        let b = mp(&[1, 1], &[(&[1, 1], 1), (&[0, 0], -1)]);
        assert_eq!(strongly_rayleigh(&b).unwrap(), Trilean::True);
        assert_eq!(strongly_rayleigh(&counterexample_p()).unwrap(), Trilean::True);
        assert_eq!(
            strongly_rayleigh(&mp(&[2], &[(&[2], 1)])),
            Err(Error::NotMultiaffine)
        );
    }

    #[test]
    fn counterexample_deltas() {
        let p = counterexample_p();
        for ((i, j), want) in counterexample_expected_deltas() {
            assert_eq!(rayleigh_difference(&p, i - 1, j - 1), want, "Δ{i}{j}");
        }
    }

    #[test]
    fn counterexample_square_coefficients() {
        let p = counterexample_p();
        let sq = boxplus_gamma(&p, &p).unwrap();
        for (mu, c) in counterexample_expected_square() {
            assert_eq!(sq.coeff(&mu), c, "{mu:?}");
        }
    }

    #[test]
    fn above_roots_examples() {
        let p = counterexample_p();
        let z = vec![int(0); 3];
        assert_eq!(above_roots(&p, &z).unwrap().verdict, Trilean::True);
        for i in 0..3 {
            let mut a = z.clone();
            a[i] = int(-1);
            assert_eq!(above_roots(&p, &a).unwrap().verdict, Trilean::True);
            // Φᵢ(0) = 1 ≤ 1 agrees with −eᵢ ∈ Ab(p)
            assert_eq!(potential(&p, i + 1, &z).unwrap(), int(1));
        }
        let sq = boxplus_gamma(&p, &p).unwrap();
        let v = above_roots(&sq, &counterexample_point()).unwrap();
        assert_eq!(v.verdict, Trilean::False);
        assert!(sq.meval(&counterexample_point()).is_negative());
        let bad = mp(&[1, 1], &[(&[1, 1], 1), (&[0, 0], 1)]);
        assert_eq!(above_roots(&bad, &[int(0), int(0)]), Err(Error::StabilityNotCertified));
    }

    #[test]
    fn potential_examples() {
        let p = mp(&[1], &[(&[1], 1), (&[0], 1)]);
        assert_eq!(potential(&p, 1, &[int(0)]).unwrap(), int(1));
        assert_eq!(potential(&p, 1, &[int(-1)]), Err(Error::PoleAtPoint));
        assert_eq!(potential(&p, 1, &[ratio(1, 2)]).unwrap(), ratio(2, 3));
    }

    #[test]
    fn symbol_identity_small() {
        let g = vec![2, 1];
        let (y, w) = (vec![ratio(1, 3), int(-2)], vec![int(5), ratio(-7, 4)]);
        let yw: Vec<Rat> = y.iter().zip(&w).map(|(a, b)| a + b).collect();
        let lhs = boxplus_gamma(
            &MultiPoly::linear_power(g.clone(), &y).unwrap(),
            &MultiPoly::linear_power(g.clone(), &w).unwrap(),
        )
        .unwrap();
        // normalised by γ! = 2 so that x^γ/γ! is the unit
        assert_eq!(lhs, MultiPoly::linear_power(g, &yw).unwrap().scale(&int(2)));
    }

    #[test]
    fn random_stable_is_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let p = random_stable_multiaffine(3, &mut rng);
            assert_ne!(strongly_rayleigh(&p).unwrap(), Trilean::False, "{p}");
        }
    }

    #[test]
    fn json_form() {
        let p = mp(&[1, 1, 1], &[(&[1, 1, 0], 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"gamma":[1,1,1],"terms":[{"mu":[1,1,0],"c":"2/1"}]}"#);
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<MultiPoly>(r#"{"gamma":[1],"terms":[{"mu":[2],"c":"1"}]}"#).is_err());
    }
}
