//! Dense univariate polynomials over ℚ and the finite free additive
//! convolution.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Polynomial in `ℝⁿ[t]` with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `tⁱ`; trailing zeros are trimmed so
/// the zero polynomial has no coefficients. `ambient` is the `n` of the
/// space the polynomial is viewed in; it matters to [`boxplus`] and
/// [`crate::roots::padded_root_vector`] but not to equality, which compares
/// coefficients only.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct RatPoly {
    coeffs: Vec<Rat>,
    ambient: usize,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    #[serde(with = "rat::serde_vec")]
    coeffs: Vec<Rat>,
}

impl TryFrom<PolyJson> for RatPoly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        RatPoly::new(j.coeffs, j.n)
    }
}

impl From<RatPoly> for PolyJson {
    fn from(p: RatPoly) -> Self {
        PolyJson {
            n: p.ambient,
            coeffs: p.coeffs,
        }
    }
}

impl PartialEq for RatPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for RatPoly {}

fn trim(mut coeffs: Vec<Rat>) -> Vec<Rat> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl RatPoly {
    /// Polynomial in `ℝⁿ[t]`; fails if the degree exceeds `n`.
    pub fn new(coeffs: Vec<Rat>, n: usize) -> Result<Self> {
        let p = RatPoly {
            coeffs: trim(coeffs),
            ambient: n,
        };
        match p.degree() {
            Some(d) if d > n => Err(Error::DegreeExceedsAmbient { degree: d, n }),
            _ => Ok(p),
        }
    }

    /// Polynomial whose ambient degree is its own degree.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let coeffs = trim(coeffs);
        let ambient = coeffs.len().saturating_sub(1);
        RatPoly { coeffs, ambient }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        RatPoly {
            coeffs: Vec::new(),
            ambient: n,
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·tᵏ`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `tⁿ`, the identity of `⊞ⁿ`.
    pub fn x_pow(n: usize) -> Self {
        Self::monomial(Rat::one(), n)
    }

    /// Monic `∏ (t − λᵢ)`; ambient degree is the number of roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        let mut coeffs = vec![Rat::one()];
        for r in roots {
            let mut next = vec![Rat::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Same polynomial viewed in `ℝⁿ[t]`.
    pub fn with_ambient(mut self, n: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeExceedsAmbient { degree: d, n });
            }
        }
        self.ambient = n;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly {
            coeffs: trim(self.coeffs.iter().map(|x| x * c).collect()),
            ambient: self.ambient,
        }
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Sum of the roots with multiplicity, `−c_{d−1}/c_d`, read off the
    /// coefficients.
    pub fn root_sum(&self) -> Option<Rat> {
        let d = self.degree()?;
        if d == 0 {
            return Some(Rat::zero());
        }
        Some(-self.coeff(d - 1) / self.leading())
    }

    /// `Dᵏ p`; the ambient degree drops by `k` (floored at 0).
    pub fn derivative(&self, k: usize) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, c)| {
                let falling: BigInt = ((i - k + 1)..=i).fold(BigInt::one(), |a, j| a * BigInt::from(j));
                c * Rat::from_integer(falling)
            })
            .collect();
        RatPoly {
            coeffs: trim(coeffs),
            ambient: self.ambient.saturating_sub(k),
        }
    }

    /// `p(t + a)`.
    pub fn shift(&self, a: &Rat) -> RatPoly {
        // Horner in the shifted variable: p(t+a) = (...(c_d (t+a) + c_{d-1})(t+a) ...).
        let mut acc: Vec<Rat> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Rat::zero(); acc.len() + 1];
            for (i, x) in acc.iter().enumerate() {
                next[i + 1] += x;
                next[i] += x * a;
            }
            next[0] += c;
            acc = next;
        }
        RatPoly {
            coeffs: trim(acc),
            ambient: self.ambient,
        }
    }

    /// `p(a·t)`.
    pub fn scale_arg(&self, a: &Rat) -> RatPoly {
        let mut pow = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow *= a;
        }
        RatPoly {
            coeffs: trim(coeffs),
            ambient: self.ambient,
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(0), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (
            RatPoly::from_coeffs(quot),
            RatPoly {
                coeffs: trim(rem),
                ambient: self.ambient,
            },
        )
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = rat::common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        RatPoly {
            coeffs: ints.into_iter().map(|c| Rat::new(c, g.clone())).collect(),
            ambient: self.ambient,
        }
    }

    /// `p / gcd(p, p′)`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative(1));
        Ok(self.div_rem(&g).0.primitive().with_ambient_unchecked(self.ambient))
    }

    /// Yun's square-free factorisation: monic `f₁, f₂, …` with
    /// `p = c·∏ fᵢⁱ`. Trailing trivial factors are dropped.
    pub fn squarefree_factors(&self) -> Result<Vec<RatPoly>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.deg() == 0 {
            return Ok(out);
        }
        let d = self.derivative(1);
        let a = self.gcd(&d);
        let mut b = self.div_rem(&a).0;
        let mut c = d.div_rem(&a).0;
        let mut dd = &c - &b.derivative(1);
        while b.deg() > 0 {
            let a = b.gcd(&dd);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = &c - &b.derivative(1);
        }
        while out.last().is_some_and(|f| f.deg() == 0) {
            out.pop();
        }
        Ok(out)
    }

    fn with_ambient_unchecked(mut self, n: usize) -> RatPoly {
        self.ambient = n.max(self.deg());
        self
    }
}

/// Finite free additive convolution
/// `p ⊞ⁿ q = (1/n!) Σₖ Dᵏp(t) · D^{n−k}q(0)`.
pub fn boxplus(p: &RatPoly, q: &RatPoly, n: usize) -> Result<RatPoly> {
    for x in [p, q] {
        if let Some(d) = x.degree() {
            if d > n {
                return Err(Error::DegreeExceedsAmbient { degree: d, n });
            }
        }
    }
    let n_fact = Rat::from_integer(rat::factorial(n));
    let mut out = vec![Rat::zero(); n + 1];
    for k in 0..=n {
        // D^{n-k} q (0) = (n-k)! q_{n-k}
        let qk = q.coeff(n - k);
        if qk.is_zero() {
            continue;
        }
        let w = qk * Rat::from_integer(rat::factorial(n - k)) / &n_fact;
        for (i, c) in p.derivative(k).coeffs.iter().enumerate() {
            out[i] += &w * c;
        }
    }
    RatPoly::new(out, n)
}

/// `tⁿ − nα·tⁿ⁻¹`, which represents `1 − αD` under `⊞ⁿ`.
pub fn u_alpha(n: usize, alpha: &Rat) -> RatPoly {
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    coeffs[n - 1] = -(rat::int(n as i64) * alpha);
    RatPoly::new(coeffs, n).expect("degree n fits")
}

/// `(1 − αD) p = p − α p′`.
pub fn apply_u_alpha(p: &RatPoly, alpha: &Rat) -> RatPoly {
    let mut out = p - &p.derivative(1).scale(alpha);
    out.ambient = p.ambient;
    out
}

fn zip_with(a: &RatPoly, b: &RatPoly, f: impl Fn(&Rat, &Rat) -> Rat) -> RatPoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    let zero = Rat::zero();
    let coeffs = (0..len)
        .map(|i| f(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
        .collect();
    RatPoly {
        coeffs: trim(coeffs),
        ambient: a.ambient.max(b.ambient),
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero(self.ambient + rhs.ambient);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly {
            coeffs: trim(coeffs),
            ambient: self.ambient + rhs.ambient,
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}·")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}
