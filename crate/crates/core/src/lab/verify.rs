//! Certified verifiers for the root inequalities.

use num_traits::Zero;
use serde_json::{json, Value};

use super::report::{VerdictReport, VerifyRequest};
use crate::horn::{CMat, IndexTuple};
use crate::interval::{Interval, Trilean};
use crate::majorization::majorizes_forms;
use crate::multiaffine::{self, MultiPoly};
use crate::poly::{self, RatPoly};
use crate::rat::{self, Rat};
use crate::roots::{LinearForm, RootArena};
use crate::{Error, Result};

fn full_degree(p: &RatPoly, n: usize) -> Result<()> {
    match p.degree() {
        Some(d) if d == n => Ok(()),
        Some(d) if d > n => Err(Error::DegreeExceedsAmbient { degree: d, n }),
        Some(d) => Err(Error::DegreeDeficient { degree: d, n }),
        None => Err(Error::NotRealRooted),
    }
}

fn boxplus(p: &RatPoly, q: &RatPoly, n: usize) -> Result<RatPoly> {
    poly::boxplus(p, q, n)
}

fn ambient(p: &RatPoly, n: usize) -> Result<RatPoly> {
    p.clone().with_ambient(n)
}

fn sum_lambdas(arena: &RootArena, id: usize, idx: &[usize]) -> LinearForm {
    LinearForm::sum(&idx.iter().map(|&i| arena.lambda(id, i)).collect::<Vec<_>>())
}

/// Decide `lhs ≤ rhs` and describe both sides.
fn compare(arena: &mut RootArena, lhs: &LinearForm, rhs: &LinearForm, eps: &Rat) -> (Trilean, Value) {
    let (v, diff) = arena.decide_le0(&lhs.sub(rhs), eps);
    let (l, r) = (arena.eval_refined(lhs, eps), arena.eval_refined(rhs, eps));
    (v, json!({ "lhs": l, "rhs": r, "lhs_minus_rhs": diff }))
}

fn enclosures(arena: &RootArena, forms: &[LinearForm]) -> Vec<Interval> {
    forms.iter().map(|f| arena.eval(f)).collect()
}

fn add_vectors(a: &[LinearForm], b: &[LinearForm]) -> Vec<LinearForm> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// `λ₁(p ⊞ⁿ q) ≤ λ₁(p) + λ₁(q)`.
pub fn verify_triangle(p: &RatPoly, q: &RatPoly, n: usize, eps: &Rat) -> Result<VerdictReport> {
    full_degree(p, n)?;
    full_degree(q, n)?;
    let s = boxplus(p, q, n)?;
    let mut a = RootArena::new();
    let (ip, iq, is) = (a.add(p)?, a.add(q)?, a.add(&s)?);
    let lhs = a.lambda(is, 1);
    let rhs = a.lambda(ip, 1).add(&a.lambda(iq, 1));
    let (v, detail) = compare(&mut a, &lhs, &rhs, eps);
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        ..VerifyRequest::new("triangle")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `λ_{i+j−1}(p ⊞ⁿ q) ≤ λᵢ(p) + λⱼ(q)`, 1-based.
pub fn verify_weyl(
    p: &RatPoly,
    q: &RatPoly,
    n: usize,
    i: usize,
    j: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    if i == 0 || j == 0 || i + j - 1 > n {
        return Err(Error::IndexOutOfRange(format!("i + j - 1 = {} not in 1..={n}", (i + j).saturating_sub(1))));
    }
    full_degree(p, n)?;
    full_degree(q, n)?;
    let s = boxplus(p, q, n)?;
    let mut a = RootArena::new();
    let (ip, iq, is) = (a.add(p)?, a.add(q)?, a.add(&s)?);
    let lhs = a.lambda(is, i + j - 1);
    let rhs = a.lambda(ip, i).add(&a.lambda(iq, j));
    let (v, detail) = compare(&mut a, &lhs, &rhs, eps);
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        i: Some(i),
        j: Some(j),
        ..VerifyRequest::new("weyl")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `λ(p ⊞ⁿ q) ≺ λ(p) + λ(q)`.
pub fn verify_majorization_conv(p: &RatPoly, q: &RatPoly, n: usize, eps: &Rat) -> Result<VerdictReport> {
    full_degree(p, n)?;
    full_degree(q, n)?;
    let s = boxplus(p, q, n)?;
    let mut a = RootArena::new();
    let (ip, iq, is) = (a.add(p)?, a.add(q)?, a.add(&s)?);
    let x = add_vectors(&a.lambdas(ip), &a.lambdas(iq));
    let y = a.lambdas(is);
    let v = majorizes_forms(&mut a, &x, &y, eps)?;
    let detail = json!({ "majorant": enclosures(&a, &x), "minorant": enclosures(&a, &y) });
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        ..VerifyRequest::new("maj-conv")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// Given certified `λ(p) ≺ λ(q)`, checks `λ(p ⊞ⁿ r) ≺ λ(q ⊞ⁿ r)`.
pub fn verify_maj_preservation(
    p: &RatPoly,
    q: &RatPoly,
    r: &RatPoly,
    n: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    for x in [p, q, r] {
        full_degree(x, n)?;
    }
    let (pr, qr) = (boxplus(p, r, n)?, boxplus(q, r, n)?);
    let mut a = RootArena::new();
    let (ip, iq) = (a.add(p)?, a.add(q)?);
    let (xq, xp) = (a.lambdas(iq), a.lambdas(ip));
    let pre = majorizes_forms(&mut a, &xq, &xp, eps)?;
    if !pre.is_true() {
        return Err(Error::PreconditionNotCertified(format!(
            "λ(p) ≺ λ(q) is {}",
            pre.status()
        )));
    }
    let (ipr, iqr) = (a.add(&pr)?, a.add(&qr)?);
    let (x, y) = (a.lambdas(iqr), a.lambdas(ipr));
    let v = majorizes_forms(&mut a, &x, &y, eps)?;
    let detail = json!({ "majorant": enclosures(&a, &x), "minorant": enclosures(&a, &y) });
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        r: Some(ambient(r, n)?),
        ..VerifyRequest::new("maj-preserve")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `(n − deg p) + (n − deg q) + (n − deg r) < n`.
pub fn degree_condition(p: &RatPoly, q: &RatPoly, r: &RatPoly, n: usize) -> Result<()> {
    let mut deficiency = 0;
    for x in [p, q, r] {
        let d = x.degree().ok_or(Error::DegreeConditionViolated)?;
        if d > n {
            return Err(Error::DegreeExceedsAmbient { degree: d, n });
        }
        deficiency += n - d;
    }
    if deficiency < n {
        Ok(())
    } else {
        Err(Error::DegreeConditionViolated)
    }
}

/// `λ₁(p ⊞ⁿ q ⊞ⁿ r) + λ₁(r) ≤ λ₁(p ⊞ⁿ r) + λ₁(q ⊞ⁿ r)`.
pub fn verify_submodularity(
    p: &RatPoly,
    q: &RatPoly,
    r: &RatPoly,
    n: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    degree_condition(p, q, r, n)?;
    let pr = boxplus(p, r, n)?;
    let qr = boxplus(q, r, n)?;
    let pqr = boxplus(&boxplus(p, q, n)?, r, n)?;
    let mut a = RootArena::new();
    let (ipqr, ir, ipr, iqr) = (a.add(&pqr)?, a.add(r)?, a.add(&pr)?, a.add(&qr)?);
    let lhs = a.lambda(ipqr, 1).add(&a.lambda(ir, 1));
    let rhs = a.lambda(ipr, 1).add(&a.lambda(iqr, 1));
    let (v, detail) = compare(&mut a, &lhs, &rhs, eps);
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        r: Some(ambient(r, n)?),
        ..VerifyRequest::new("submodularity")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `Σ_I λ(p⊞q⊞r) + Σ_L λ(r) ≤ Σ_J λ(p⊞r) + Σ_K λ(q⊞r)` for one instance.
pub fn verify_4tuple(
    t: &IndexTuple,
    p: &RatPoly,
    q: &RatPoly,
    r: &RatPoly,
    n: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    t.validate()?;
    if t.n != n {
        return Err(Error::IndexOutOfRange(format!("tuple is for n = {}, inputs for n = {n}", t.n)));
    }
    let l = t.l.as_ref().ok_or_else(|| Error::MissingInput("L".into()))?;
    for x in [p, q, r] {
        full_degree(x, n)?;
    }
    let pr = boxplus(p, r, n)?;
    let qr = boxplus(q, r, n)?;
    let pqr = boxplus(&boxplus(p, q, n)?, r, n)?;
    let mut a = RootArena::new();
    let (ipqr, ir, ipr, iqr) = (a.add(&pqr)?, a.add(r)?, a.add(&pr)?, a.add(&qr)?);
    let lhs = sum_lambdas(&a, ipqr, &t.i).add(&sum_lambdas(&a, ir, l));
    let rhs = sum_lambdas(&a, ipr, &t.j).add(&sum_lambdas(&a, iqr, &t.k));
    let (v, detail) = compare(&mut a, &lhs, &rhs, eps);
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        r: Some(ambient(r, n)?),
        tuple: Some(t.clone()),
        ..VerifyRequest::new("4tuple")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// For `deg p = 1`: `λⁿ(p⊞q⊞r) + λⁿ(r) ≺ λⁿ(p⊞r) + λⁿ(q⊞r)`.
pub fn verify_basecase_majorization(
    p: &RatPoly,
    q: &RatPoly,
    r: &RatPoly,
    n: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    if p.degree() != Some(1) || q.degree() != Some(n) || r.degree() != Some(n) {
        return Err(Error::DegreeMismatch(format!(
            "need deg p = 1 and deg q = deg r = {n}, got {}, {}, {}",
            p.deg(),
            q.deg(),
            r.deg()
        )));
    }
    let pr = boxplus(p, r, n)?;
    let qr = boxplus(q, r, n)?;
    let pqr = boxplus(&boxplus(p, q, n)?, r, n)?;
    let mut a = RootArena::new();
    let (ipqr, ir, ipr, iqr) = (a.add(&pqr)?, a.add(r)?, a.add(&pr)?, a.add(&qr)?);
    let y = add_vectors(&a.padded_lambdas(ipqr, n), &a.padded_lambdas(ir, n));
    let x = add_vectors(&a.padded_lambdas(ipr, n), &a.padded_lambdas(iqr, n));
    let v = majorizes_forms(&mut a, &x, &y, eps)?;
    let detail = json!({ "majorant": enclosures(&a, &x), "minorant": enclosures(&a, &y) });
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        r: Some(ambient(r, n)?),
        ..VerifyRequest::new("basecase")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `λ₁(U_α(p ⊞ⁿ q)) + nα ≤ λ₁(U_α p) + λ₁(U_α q)` with `U_α = 1 − αD`.
pub fn verify_mss_ualpha(
    p: &RatPoly,
    q: &RatPoly,
    alpha: &Rat,
    n: usize,
    eps: &Rat,
) -> Result<VerdictReport> {
    full_degree(p, n)?;
    full_degree(q, n)?;
    if alpha <= &Rat::zero() {
        return Err(Error::NonpositiveOmega);
    }
    let s = boxplus(p, q, n)?;
    let (up, uq, us) = (
        poly::apply_u_alpha(p, alpha),
        poly::apply_u_alpha(q, alpha),
        poly::apply_u_alpha(&s, alpha),
    );
    let mut a = RootArena::new();
    let (ip, iq, is) = (a.add(&up)?, a.add(&uq)?, a.add(&us)?);
    let lhs = a.lambda(is, 1).add_const(&(alpha * rat::int(n as i64)));
    let rhs = a.lambda(ip, 1).add(&a.lambda(iq, 1));
    let (v, detail) = compare(&mut a, &lhs, &rhs, eps);
    let req = VerifyRequest {
        n: Some(n),
        p: Some(ambient(p, n)?),
        q: Some(ambient(q, n)?),
        alpha: Some(alpha.clone()),
        ..VerifyRequest::new("mss-ualpha")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// Strongly Rayleigh check of a multiaffine polynomial.
pub fn verify_sr(p: &MultiPoly, eps: &Rat) -> Result<VerdictReport> {
    let v = multiaffine::strongly_rayleigh(p)?;
    let deltas: Vec<Value> = (0..p.n_vars())
        .flat_map(|i| (i + 1..p.n_vars()).map(move |j| (i, j)))
        .map(|(i, j)| {
            json!({
                "i": i + 1,
                "j": j + 1,
                "delta": multiaffine::rayleigh_difference(p, i, j).to_string(),
            })
        })
        .collect();
    let req = VerifyRequest {
        poly: Some(p.clone()),
        ..VerifyRequest::new("sr-check")
    };
    Ok(VerdictReport::new(req, v, eps, json!({ "deltas": deltas })))
}

/// `a ∈ Ab(p)` by the same-sign test.
pub fn verify_above_roots(p: &MultiPoly, point: &[Rat], eps: &Rat) -> Result<VerdictReport> {
    let ab = multiaffine::above_roots(p, point)?;
    let req = VerifyRequest {
        poly: Some(p.clone()),
        point: Some(point.to_vec()),
        ..VerifyRequest::new("above-roots")
    };
    let detail = json!({
        "value": rat::format(&p.meval(point)),
        "positive": ab.positive,
        "negative": ab.negative,
        "zero": ab.zero,
    });
    Ok(VerdictReport::new(req, ab.verdict, eps, detail))
}

/// The 2×2 diagonal matrices used as the matrix counterexample.
pub fn diagonal_counterexample() -> Vec<CMat> {
    let d = |a: i64, b: i64| CMat::diag(&[rat::int(a), rat::int(b)]);
    vec![d(2, 0), d(2, 0), d(0, 2)]
}

/// Matrix analogue `λ₁(A+B+C) + λ₁(C) ≤ λ₁(A+C) + λ₁(B+C)`.
pub fn verify_matrix_submodularity(m: &[CMat], eps: &Rat) -> Result<VerdictReport> {
    let [a, b, c] = m else {
        return Err(Error::MissingInput("three matrices A, B, C".into()));
    };
    if !(a.n == b.n && b.n == c.n) || ![a, b, c].iter().all(|x| x.is_hermitian()) {
        return Err(Error::DegreeMismatch("A, B, C must be Hermitian of one size".into()));
    }
    let mut ar = RootArena::new();
    let abc = ar.add(&a.add(b).add(c).char_poly())?;
    let ic = ar.add(&c.char_poly())?;
    let ac = ar.add(&a.add(c).char_poly())?;
    let bc = ar.add(&b.add(c).char_poly())?;
    let lhs = ar.lambda(abc, 1).add(&ar.lambda(ic, 1));
    let rhs = ar.lambda(ac, 1).add(&ar.lambda(bc, 1));
    let (v, detail) = compare(&mut ar, &lhs, &rhs, eps);
    let req = VerifyRequest {
        matrices: Some(m.to_vec()),
        ..VerifyRequest::new("matrix-submodularity")
    };
    Ok(VerdictReport::new(req, v, eps, detail))
}

/// `t₀ ≥ λ₁(t ↦ p(w + t·1))` as a rational upper bound, or `None` when the
/// restriction has no roots.
pub fn diagonal_bound(p: &MultiPoly, w: &[Rat], eps: &Rat) -> Option<Rat> {
    let d = p.diagonal_restriction(w);
    if d.deg() == 0 {
        return None;
    }
    crate::roots::maxroot(&d, eps).ok().map(|e| e.hi)
}

/// `w + λ₁(t ↦ p(w + t·1))·1`, a point of `Ab(p)` on its boundary up to
/// the enclosure width.
pub fn diagonal_boundary_point(p: &MultiPoly, w: &[Rat], eps: &Rat) -> Vec<Rat> {
    match diagonal_bound(p, w, eps) {
        Some(t) => w.iter().map(|x| x + &t).collect(),
        None => w.to_vec(),
    }
}

fn in_ab(p: &MultiPoly, x: &[Rat]) -> Result<bool> {
    Ok(multiaffine::above_roots(p, x)?.verdict.is_true())
}

/// Pointwise `Ab(p⊞q⊞r) + Ab(r) ⊇ Ab(p⊞r) + Ab(q⊞r)` at `a ∈ Ab(p⊞r)`,
/// `b ∈ Ab(q⊞r)`: search a short list of candidates `c ∈ Ab(r)` with
/// `a + b − c ∈ Ab(p⊞q⊞r)`. Finding none is `Indeterminate`, never `False`.
pub fn verify_mv_submodularity(polys: &[MultiPoly], a: &[Rat], b: &[Rat], eps: &Rat) -> Result<VerdictReport> {
    let [p, q, r] = polys else {
        return Err(Error::MissingInput("three polynomials p, q, r".into()));
    };
    let pr = multiaffine::boxplus_gamma(p, r)?;
    let qr = multiaffine::boxplus_gamma(q, r)?;
    let pqr = multiaffine::boxplus_gamma(&multiaffine::boxplus_gamma(p, q)?, r)?;
    if !in_ab(&pr, a)? {
        return Err(Error::PreconditionNotCertified("a not in Ab(p⊞r)".into()));
    }
    if !in_ab(&qr, b)? {
        return Err(Error::PreconditionNotCertified("b not in Ab(q⊞r)".into()));
    }
    let n = p.n_vars();
    let s: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let mut dirs: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n], a.to_vec(), b.to_vec()];
    dirs.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
    dirs.push(b.iter().zip(a).map(|(x, y)| x - y).collect());
    for i in 0..n {
        for sgn in [1, -1] {
            let mut e = vec![Rat::zero(); n];
            e[i] = rat::int(sgn);
            dirs.push(e);
        }
    }
    let mut candidates = Vec::new();
    for w in &dirs {
        candidates.push(diagonal_boundary_point(r, w, eps));
        let d = diagonal_boundary_point(&pqr, w, eps);
        candidates.push(s.iter().zip(&d).map(|(x, y)| x - y).collect::<Vec<_>>());
    }
    let mut found = None;
    for c in &candidates {
        let rest: Vec<Rat> = s.iter().zip(c).map(|(x, y)| x - y).collect();
        if in_ab(r, c)? && in_ab(&pqr, &rest)? {
            found = Some((c.clone(), rest));
            break;
        }
    }
    let verdict = if found.is_some() {
        Trilean::True
    } else {
        Trilean::Indeterminate(Rat::zero())
    };
    let fmt = |v: &[Rat]| v.iter().map(rat::format).collect::<Vec<_>>();
    let detail = json!({
        "candidates": candidates.len(),
        "c": found.as_ref().map(|(c, _)| fmt(c)),
        "a_plus_b_minus_c": found.as_ref().map(|(_, d)| fmt(d)),
    });
    let req = VerifyRequest {
        polys: Some(polys.to_vec()),
        points: Some(vec![a.to_vec(), b.to_vec()]),
        ..VerifyRequest::new("mv-submodularity")
    };
    Ok(VerdictReport::new(req, verdict, eps, detail))
}

/// Statement ids accepted by [`verify`].
pub const STATEMENTS: &[&str] = &[
    "triangle",
    "weyl",
    "maj-conv",
    "maj-preserve",
    "submodularity",
    "4tuple",
    "basecase",
    "mss-ualpha",
    "sr-check",
    "above-roots",
    "matrix-submodularity",
    "mv-submodularity",
];

/// Run the verifier named by `req.statement`.
pub fn verify(req: &VerifyRequest, eps: &Rat) -> Result<VerdictReport> {
    let s = req.statement.as_str();
    match s {
        "triangle" => verify_triangle(req.need_poly("p")?, req.need_poly("q")?, req.ambient()?, eps),
        "weyl" => verify_weyl(
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.ambient()?,
            req.i.ok_or_else(|| Error::MissingInput("i".into()))?,
            req.j.ok_or_else(|| Error::MissingInput("j".into()))?,
            eps,
        ),
        "maj-conv" => verify_majorization_conv(req.need_poly("p")?, req.need_poly("q")?, req.ambient()?, eps),
        "maj-preserve" => verify_maj_preservation(
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.need_poly("r")?,
            req.ambient()?,
            eps,
        ),
        "submodularity" => verify_submodularity(
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.need_poly("r")?,
            req.ambient()?,
            eps,
        ),
        "4tuple" => verify_4tuple(
            req.tuple.as_ref().ok_or_else(|| Error::MissingInput("tuple".into()))?,
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.need_poly("r")?,
            req.ambient()?,
            eps,
        ),
        "basecase" => verify_basecase_majorization(
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.need_poly("r")?,
            req.ambient()?,
            eps,
        ),
        "mss-ualpha" => verify_mss_ualpha(
            req.need_poly("p")?,
            req.need_poly("q")?,
            req.alpha.as_ref().ok_or_else(|| Error::MissingInput("alpha".into()))?,
            req.ambient()?,
            eps,
        ),
        "sr-check" => verify_sr(req.poly.as_ref().ok_or_else(|| Error::MissingInput("poly".into()))?, eps),
        "above-roots" => verify_above_roots(
            req.poly.as_ref().ok_or_else(|| Error::MissingInput("poly".into()))?,
            req.point.as_ref().ok_or_else(|| Error::MissingInput("point".into()))?,
            eps,
        ),
        "matrix-submodularity" => {
            let m = req.matrices.clone().unwrap_or_else(diagonal_counterexample);
            verify_matrix_submodularity(&m, eps)
        }
        "mv-submodularity" => {
            let polys = req.polys.as_ref().ok_or_else(|| Error::MissingInput("polys".into()))?;
            let pts = req.points.as_ref().ok_or_else(|| Error::MissingInput("points".into()))?;
            let [a, b] = pts.as_slice() else {
                return Err(Error::MissingInput("points a, b".into()));
            };
            verify_mv_submodularity(polys, a, b, eps)
        }
        other => Err(Error::UnknownStatement(other.to_string())),
    }
}
