//! The pinch deformation `p̃_μ`, `p̂_μ`, `f_μ` and the search for `μ*`.
//!
//! With roots `λ₁ ≥ ⋯ ≥ λₙ` of a monic `p` and `k` minimal with
//! `λ_k ≠ λ₁`, write `g = p / ((x − λ₁)(x − λ_k))`. Then
//! `p̃_μ = (x − μ)² g`, `p̂_μ = p − p̃_μ` and `f_μ = (x − μ) g` for
//! `μ ∈ [μ₀, μ₁] = [(λ₁ + λ_k)/2, λ₁]`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::{Interval, Trilean};
use crate::poly::{self, RatPoly};
use crate::rat::{self, Rat};
use crate::roots::{interlaces, Isolation, LinearForm, RootArena};
use crate::{Error, Result};

/// Exact value of distinct root `d`, or `IrrationalRoot`.
fn rational_root(iso: &mut Isolation, d: usize) -> Result<Rat> {
    if let Some(x) = iso.exact(d) {
        return Ok(x);
    }
    // a rational root a/b of the integer square-free part has b | lead, so
    // at width < 1/(2·lead²) it is the simplest rational in its enclosure
    let s = iso.sqfree();
    let den = rat::common_denominator(s.coeffs());
    let lead = (s.leading() * Rat::from_integer(den)).abs();
    let w = (Rat::from_integer(2.into()) * &lead * &lead).recip();
    iso.refine(d, &w);
    iso.exact(d)
        .ok_or_else(|| Error::IrrationalRoot(format!("{}", iso.enclosure(d))))
}

/// `λ₁` and `λ_k` of a monic polynomial with at least two distinct roots.
pub fn pinch_roots(p: &RatPoly) -> Result<(Rat, Rat)> {
    let mut iso = Isolation::new(p)?;
    if iso.distinct_count() < 2 {
        return Err(Error::SingleDistinctRoot);
    }
    Ok((rational_root(&mut iso, 0)?, rational_root(&mut iso, 1)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PinchDecomposition {
    #[serde(with = "rat::serde_str")]
    pub mu0: Rat,
    #[serde(with = "rat::serde_str")]
    pub mu1: Rat,
    #[serde(with = "rat::serde_str")]
    pub mu: Rat,
    /// Minimal 1-based `k` with `λ_k ≠ λ₁`.
    pub k: usize,
    #[serde(with = "rat::serde_str")]
    pub lambda1: Rat,
    #[serde(with = "rat::serde_str")]
    pub lambda_k: Rat,
    pub p_tilde: RatPoly,
    pub p_hat: RatPoly,
    pub f_mu: RatPoly,
    /// Extra root of `p̂_μ`; absent at `μ = μ₀` where `p̂` drops degree.
    #[serde(with = "rat::serde_opt")]
    pub rho: Option<Rat>,
    /// `f_μ ≪ p̃_μ`, `f_μ ≪ p̂_μ`, `f_μ ≪ p`.
    pub f_interlaces_tilde: Trilean,
    pub f_interlaces_hat: Option<Trilean>,
    pub f_interlaces_p: Trilean,
    /// `ρ ≥ λ₁` when `ρ` exists.
    pub rho_above_lambda1: Option<bool>,
}

/// `p̃_μ`, `p̂_μ`, `f_μ`, `ρ` and their interlacing certificates.
pub fn pinch_decomposition(p: &RatPoly, mu: &Rat, eps: &Rat) -> Result<PinchDecomposition> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let (l1, lk) = pinch_roots(p)?;
    let (mu0, mu1) = ((&l1 + &lk) / rat::int(2), l1.clone());
    if mu < &mu0 || mu > &mu1 {
        return Err(Error::MuOutOfRange);
    }
    let mult1 = {
        let iso = Isolation::new(p)?;
        iso.multiplicity(0)
    };
    let pair = RatPoly::from_roots(&[l1.clone(), lk.clone()]);
    let (g, rem) = p.div_rem(&pair);
    debug_assert!(rem.is_zero());
    let n = p.ambient();
    let lin = RatPoly::from_roots(std::slice::from_ref(mu));
    let f_mu = (&lin * &g).with_ambient(n)?;
    let p_tilde = (&lin * &f_mu).with_ambient(n)?;
    let p_hat = (p - &p_tilde).with_ambient(n)?;
    let denom = rat::int(2) * mu - &l1 - &lk;
    let rho = (!denom.is_zero()).then(|| (mu * mu - &l1 * &lk) / &denom);
    let f_interlaces_tilde = interlaces(&f_mu, &p_tilde, eps)?;
    let f_interlaces_p = interlaces(&f_mu, p, eps)?;
    let f_interlaces_hat = if p_hat.leading().is_positive() && p_hat.deg() == f_mu.deg() {
        Some(interlaces(&f_mu, &p_hat, eps)?)
    } else {
        None
    };
    Ok(PinchDecomposition {
        rho_above_lambda1: rho.as_ref().map(|r| r >= &l1),
        mu0,
        mu1,
        mu: mu.clone(),
        k: mult1 + 1,
        lambda1: l1,
        lambda_k: lk,
        p_tilde,
        p_hat,
        f_mu,
        rho,
        f_interlaces_tilde,
        f_interlaces_hat,
        f_interlaces_p,
    })
}

/// `p̃_μ` given `λ₁`, `λ_k` (no checks).
fn tilde(p: &RatPoly, l1: &Rat, lk: &Rat, mu: &Rat) -> RatPoly {
    let pair = RatPoly::from_roots(&[l1.clone(), lk.clone()]);
    let g = p.div_rem(&pair).0;
    let sq = RatPoly::from_roots(&[mu.clone(), mu.clone()]);
    (&sq * &g).with_ambient(p.ambient()).expect("degree kept")
}

/// One evaluation of the bisection predicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuStep {
    #[serde(with = "rat::serde_str")]
    pub mu: Rat,
    /// Enclosure of `λ₁(p̃_μ ⊞ r)`.
    pub lambda1: Interval,
    /// `λ₁(p̃_μ ⊞ r) > λ₁(p ⊞ r)`.
    pub above: Trilean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuStar {
    #[serde(with = "rat::serde_str")]
    pub mu0: Rat,
    #[serde(with = "rat::serde_str")]
    pub mu1: Rat,
    /// `μ* ∈ [lo, hi]`.
    pub enclosure: Interval,
    pub steps: Vec<MuStep>,
    /// `λ₁(p̃_μ ⊞ r)` certified non-decreasing over all evaluated `μ`.
    pub monotone: Trilean,
    /// `λ₁(p̃_{μ₀} ⊞ r) ≤ λ₁(p ⊞ r) ≤ λ₁(p̃_{μ₁} ⊞ r)`.
    pub endpoints_bracket: Trilean,
    pub above_mu0: Trilean,
    /// `λ₁(p̂ ⊞ r) = λ₁(p ⊞ r) = λ₁(p̃ ⊞ r)` within `eps` at the reported `μ`.
    pub proposition: Trilean,
    #[serde(with = "rat::serde_str")]
    pub proposition_mu: Rat,
}

const MAX_EXTRA_STEPS: usize = 64;

/// `decide_le0` at `eps`, then at up to four successively finer precisions
/// (down to `eps·2⁻³²`) while undecided.
fn decide_le0_fine(arena: &mut RootArena, f: &LinearForm, eps: &Rat) -> Trilean {
    let mut prec = eps.clone();
    let mut v = arena.decide_le0(f, &prec).0;
    for _ in 0..4 {
        if !v.is_indeterminate() {
            break;
        }
        prec *= rat::pow2(-8);
        v = arena.decide_le0(f, &prec).0;
    }
    v
}

/// Bisect for the largest `μ ∈ [μ₀, μ₁]` with
/// `λ₁(p̃_μ ⊞ⁿ r) = λ₁(p ⊞ⁿ r)`, using that `μ ↦ λ₁(p̃_μ ⊞ r)` is
/// non-decreasing.
pub fn find_mu_star(p: &RatPoly, r: &RatPoly, n: usize, eps: &Rat) -> Result<MuStar> {
    let p = p.monic().with_ambient(n)?;
    if p.deg() != n || r.deg() != n {
        return Err(Error::DegreeMismatch(format!("need deg p = deg r = {n}")));
    }
    let (l1, lk) = pinch_roots(&p)?;
    let (mu0, mu1) = ((&l1 + &lk) / rat::int(2), l1.clone());
    let mut arena = RootArena::new();
    let target = arena.add(&poly::boxplus(&p, r, n)?)?;
    let mut steps: Vec<(MuStep, usize)> = Vec::new();

    let eval = |arena: &mut RootArena, mu: &Rat| -> Result<(MuStep, usize)> {
        let t = poly::boxplus(&tilde(&p, &l1, &lk, mu), r, n)?;
        let id = arena.add(&t)?;
        let diff = arena.lambda(id, 1).sub(&arena.lambda(target, 1));
        let le = decide_le0_fine(arena, &diff, eps);
        let lambda1 = arena.eval_refined(&arena.lambda(id, 1), eps);
        Ok((
            MuStep {
                mu: mu.clone(),
                lambda1,
                above: le.not(),
            },
            id,
        ))
    };

    let first = eval(&mut arena, &mu0)?;
    let last = eval(&mut arena, &mu1)?;
    let endpoints_bracket = {
        let a = arena.lambda(first.1, 1).sub(&arena.lambda(target, 1));
        let b = arena.lambda(target, 1).sub(&arena.lambda(last.1, 1));
        decide_le0_fine(&mut arena, &a, eps).and(decide_le0_fine(&mut arena, &b, eps))
    };
    let top_above = last.0.above.clone();
    steps.push(first);
    steps.push(last);

    let (mut lo, mut hi) = (mu0.clone(), mu1.clone());
    let mut undecided = None;
    if top_above.is_false() {
        // equality already at μ₁
        lo = mu1.clone();
    } else {
        let two = rat::int(2);
        while &hi - &lo > *eps {
            let m = (&lo + &hi) / &two;
            let step = eval(&mut arena, &m)?;
            let above = step.0.above.clone();
            steps.push(step);
            match above {
                Trilean::True => hi = m,
                Trilean::False => lo = m,
                Trilean::Indeterminate(w) => {
                    undecided = Some(w);
                    break;
                }
            }
        }
    }

    // Proposition at the left end (equality side); refine further if p̂ is
    // not yet within eps.
    let mut proposition = Trilean::Indeterminate(&hi - &lo);
    let mut prop_mu = lo.clone();
    if lo > mu0 {
        for extra in 0..=MAX_EXTRA_STEPS {
            let v = proposition_at(&mut arena, &p, r, n, &l1, &lk, &lo, target, eps)?;
            prop_mu = lo.clone();
            proposition = v;
            if proposition.is_true() || extra == MAX_EXTRA_STEPS || undecided.is_some() || hi == lo {
                break;
            }
            let m = (&lo + &hi) / rat::int(2);
            let step = eval(&mut arena, &m)?;
            let above = step.0.above.clone();
            steps.push(step);
            match above {
                Trilean::True => hi = m,
                Trilean::False => lo = m,
                Trilean::Indeterminate(_) => break,
            }
        }
    }

    // monotonicity over all evaluated μ in increasing order
    steps.sort_by(|a, b| a.0.mu.cmp(&b.0.mu));
    steps.dedup_by(|a, b| a.0.mu == b.0.mu);
    let mut monotone = Trilean::True;
    for w in steps.windows(2) {
        let f = arena.lambda(w[0].1, 1).sub(&arena.lambda(w[1].1, 1));
        monotone = monotone.and(decide_le0_fine(&mut arena, &f, eps));
    }
    let above_mu0 = if lo > mu0 {
        Trilean::True
    } else {
        Trilean::Indeterminate(undecided.unwrap_or_else(|| &hi - &lo))
    };
    Ok(MuStar {
        mu0,
        mu1,
        enclosure: Interval::new(lo, hi),
        steps: steps.into_iter().map(|s| s.0).collect(),
        monotone,
        endpoints_bracket,
        above_mu0,
        proposition,
        proposition_mu: prop_mu,
    })
}

#[allow(clippy::too_many_arguments)]
fn proposition_at(
    arena: &mut RootArena,
    p: &RatPoly,
    r: &RatPoly,
    n: usize,
    l1: &Rat,
    lk: &Rat,
    mu: &Rat,
    target: usize,
    eps: &Rat,
) -> Result<Trilean> {
    let t = tilde(p, l1, lk, mu);
    let h = (p - &t).with_ambient(n)?;
    if !h.leading().is_positive() {
        return Ok(Trilean::Indeterminate(Rat::one()));
    }
    let it = arena.add(&poly::boxplus(&t, r, n)?)?;
    let ih = arena.add(&poly::boxplus(&h, r, n)?)?;
    let mut v = Trilean::True;
    for id in [it, ih] {
        let d = arena.lambda(id, 1).sub(&arena.lambda(target, 1));
        // |d| ≤ eps; the difference is never certified as a violation
        let a = arena.decide_le0(&d.add_const(&-eps.clone()), eps).0;
        let b = arena.decide_le0(&d.scale(&-Rat::one()).add_const(&-eps.clone()), eps).0;
        let here = match (a, b) {
            (Trilean::True, Trilean::True) => Trilean::True,
            _ => Trilean::Indeterminate(arena.eval(&d).width().max(eps.clone())),
        };
        v = v.and(here);
    }
    Ok(v)
}

/// Non-positivity of `β(p) = λ₁(p⊞q⊞r) + λ₁(r) − λ₁(p⊞r) − λ₁(q⊞r)` over
/// monic `p` with roots on a grid in `[−radius, radius]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaDiagnostic {
    pub evaluated: usize,
    pub verified: usize,
    pub indeterminate: usize,
    pub violated: usize,
    /// Largest upper bound seen for `β`.
    #[serde(with = "rat::serde_str")]
    pub max_upper: Rat,
}

pub fn beta_grid(q: &RatPoly, r: &RatPoly, n: usize, radius: &Rat, steps: usize, eps: &Rat) -> Result<BetaDiagnostic> {
    let pts: Vec<Rat> = (0..=steps)
        .map(|k| -radius.clone() + rat::int(2) * radius * rat::ratio(k as i64, steps.max(1) as i64))
        .collect();
    // non-increasing index tuples into pts
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let start = t.last().copied().unwrap_or(0);
                (start..pts.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    let qr = poly::boxplus(q, r, n)?;
    let mut out = BetaDiagnostic {
        evaluated: 0,
        verified: 0,
        indeterminate: 0,
        violated: 0,
        max_upper: -Rat::from_integer(1_000_000.into()),
    };
    for t in tuples {
        let roots: Vec<Rat> = t.iter().map(|&k| pts[k].clone()).collect();
        let p = RatPoly::from_roots(&roots).with_ambient(n)?;
        let mut a = RootArena::new();
        let pqr = a.add(&poly::boxplus(&poly::boxplus(&p, q, n)?, r, n)?)?;
        let ir = a.add(r)?;
        let pr = a.add(&poly::boxplus(&p, r, n)?)?;
        let iqr = a.add(&qr)?;
        let beta = a
            .lambda(pqr, 1)
            .add(&a.lambda(ir, 1))
            .sub(&a.lambda(pr, 1))
            .sub(&a.lambda(iqr, 1));
        let (v, iv) = a.decide_le0(&beta, eps);
        out.evaluated += 1;
        match v {
            Trilean::True => out.verified += 1,
            Trilean::False => out.violated += 1,
            Trilean::Indeterminate(_) => out.indeterminate += 1,
        }
        if iv.hi > out.max_upper {
            out.max_upper = iv.hi;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn e() -> Rat {
        rat::pow2(-40)
    }

    #[test]
    fn decomposition_at_mu1() {
        let p = RatPoly::from_ints(&[-4, 0, 1]);
        let d = pinch_decomposition(&p, &int(2), &e()).unwrap();
        assert_eq!(d.p_tilde, RatPoly::from_ints(&[4, -4, 1]));
        assert_eq!(d.p_hat, RatPoly::from_ints(&[-8, 4]));
        assert_eq!(d.rho, Some(int(2)));
        assert_eq!(d.k, 2);
        assert_eq!(&d.p_tilde + &d.p_hat, p);
        assert_eq!(d.f_interlaces_tilde, Trilean::True);
        assert_eq!(d.f_interlaces_hat, Some(Trilean::True));
        assert_eq!(d.f_interlaces_p, Trilean::True);
    }

    #[test]
    fn decomposition_at_mu0() {
        let p = RatPoly::from_ints(&[-4, 0, 1]);
        let d = pinch_decomposition(&p, &int(0), &e()).unwrap();
        assert_eq!(d.p_tilde, RatPoly::x_pow(2));
        assert_eq!(d.p_hat, RatPoly::from_ints(&[-4]));
        assert!(d.p_hat.leading().is_negative());
        assert_eq!(d.p_hat.deg(), 0);
        assert_eq!(d.rho, None);
        assert_eq!(d.f_interlaces_hat, None);
    }

    #[test]
    fn rho_above_lambda1_everywhere() {
        let p = RatPoly::from_roots(&[int(3), int(3), int(1), ratio(-1, 2)]);
        for k in 1..=8 {
            let mu = int(2) + ratio(k, 8);
            let d = pinch_decomposition(&p, &mu, &e()).unwrap();
            assert_eq!(d.k, 3);
            assert_eq!(d.rho_above_lambda1, Some(true));
            assert_eq!(&d.p_tilde + &d.p_hat, p);
            assert!(d.p_hat.leading().is_positive());
            assert_eq!(d.p_hat.deg(), 3);
            assert_eq!(d.f_interlaces_tilde, Trilean::True);
            assert_eq!(d.f_interlaces_hat, Some(Trilean::True));
            assert_eq!(d.f_interlaces_p, Trilean::True);
        }
    }

    #[test]
    fn decomposition_errors() {
        let p = RatPoly::from_ints(&[-4, 0, 1]);
        assert_eq!(pinch_decomposition(&p, &int(3), &e()), Err(Error::MuOutOfRange));
        let one = RatPoly::from_roots(&[int(1), int(1)]);
        assert_eq!(pinch_decomposition(&one, &int(1), &e()), Err(Error::SingleDistinctRoot));
        assert_eq!(pinch_decomposition(&p.scale(&int(2)), &int(1), &e()), Err(Error::NotMonic));
        assert!(matches!(
            pinch_decomposition(&RatPoly::from_ints(&[-2, 0, 1]), &int(1), &e()),
            Err(Error::IrrationalRoot(_))
        ));
    }

    #[test]
    fn mu_star_identity_is_mu1() {
        let p = RatPoly::from_roots(&[int(2), int(-2), int(0)]);
        let m = find_mu_star(&p, &RatPoly::x_pow(3), 3, &e()).unwrap();
        assert_eq!(m.enclosure, Interval::point(int(2)));
        assert_eq!(m.above_mu0, Trilean::True);
        assert_eq!(m.monotone, Trilean::True);
        assert_eq!(m.proposition, Trilean::True);
    }

    #[test]
    fn mu_star_nontrivial() {
        let p = RatPoly::from_roots(&[int(2), int(-2)]);
        let r = RatPoly::from_ints(&[-1, 0, 1]);
        let m = find_mu_star(&p, &r, 2, &rat::pow2(-30)).unwrap();
        assert_eq!(m.endpoints_bracket, Trilean::True);
        assert_eq!(m.monotone, Trilean::True);
        assert_eq!(m.above_mu0, Trilean::True);
        assert_eq!(m.proposition, Trilean::True);
        assert!(m.enclosure.width() <= rat::pow2(-30), "{m:?}");
    }

    #[test]
    fn beta_is_nonpositive_on_grid() {
        let q = RatPoly::from_roots(&[int(1), int(-1)]);
        let r = RatPoly::from_roots(&[int(2), int(0)]);
        let b = beta_grid(&q, &r, 2, &int(2), 4, &e()).unwrap();
        assert_eq!(b.evaluated, 15);
        assert_eq!(b.violated, 0);
        assert!(b.max_upper <= Rat::zero() || b.indeterminate > 0);
    }
}
