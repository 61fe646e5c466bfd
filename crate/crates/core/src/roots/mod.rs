//! Certified real roots.
//!
//! Roots are isolated with Sturm sequences on the square-free part and
//! refined by exact bisection. Every enclosure `[lo, hi]` either is an exact
//! rational point or has non-root endpoints and contains exactly one
//! distinct root, so it can be refined further at any time.

mod arena;

pub use arena::{LinearForm, RootArena, RootRef};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::{Interval, Trilean};
use crate::poly::{self, RatPoly};
use crate::rat::{self, Rat};
use crate::{Error, Result};

/// Default enclosure width for verifier suites, `2⁻⁴⁰`.
pub fn default_eps() -> Rat {
    rat::pow2(-40)
}

/// Enclosure of one root together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(with = "rat::serde_str")]
    pub lo: Rat,
    #[serde(with = "rat::serde_str")]
    pub hi: Rat,
    pub mult: usize,
}

impl RootEnclosure {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Roots in non-increasing order, expanded by multiplicity.
///
/// Serialises as a bare JSON list of `{"lo","hi","mult"}` objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootVector {
    pub entries: Vec<RootEnclosure>,
    /// Largest enclosure width.
    pub width: Rat,
    /// Exact sum of the entries when known (from the coefficients).
    pub sum: Option<Rat>,
}

impl RootVector {
    pub fn from_entries(entries: Vec<RootEnclosure>, sum: Option<Rat>) -> Self {
        let width = entries
            .iter()
            .map(RootEnclosure::width)
            .max()
            .unwrap_or_else(Rat::zero);
        RootVector { entries, width, sum }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `λᵢ`, 1-based.
    pub fn lambda(&self, i: usize) -> Option<Interval> {
        i.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(RootEnclosure::interval)
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.entries.iter().map(RootEnclosure::interval).collect()
    }

    /// Ordering certificate: each entry lies weakly above the next.
    pub fn is_ordered(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[0].lo >= w[1].hi || w[0] == w[1])
    }
}

impl Serialize for RootVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<RootEnclosure>::deserialize(d)?;
        Ok(RootVector::from_entries(entries, None))
    }
}

/// Sturm chain `P₀ = p, P₁ = p′, Pᵢ₊₁ = −rem(Pᵢ₋₁, Pᵢ)`, each term scaled
/// by a positive constant.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let norm = |q: RatPoly| {
        let l = q.leading().abs();
        if l.is_zero() {
            q
        } else {
            q.scale(&l.recip())
        }
    };
    let mut chain = vec![norm(p.clone())];
    let d = p.derivative(1);
    if d.is_zero() {
        return chain;
    }
    chain.push(norm(d));
    loop {
        let k = chain.len();
        let r = chain[k - 2].div_rem(&chain[k - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(norm(-&r));
    }
    chain
}

/// Sign variations of the chain at `x`, zeros dropped.
fn variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for q in chain {
        let s = q.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidInterval);
    }
    for x in [lo, hi] {
        if p.eval(x).is_zero() {
            return Err(Error::EndpointIsRoot(rat::format(x)));
        }
    }
    let chain = sturm_chain(p);
    Ok(variations(&chain, lo) - variations(&chain, hi))
}

/// Distinct roots of the chain's polynomial in the closed `[lo, hi]`.
fn count_closed(chain: &[RatPoly], lo: &Rat, hi: &Rat) -> usize {
    let at_lo = usize::from(chain[0].eval(lo).is_zero());
    if lo == hi {
        return at_lo;
    }
    at_lo + variations(chain, lo) - variations(chain, hi)
}

/// Cauchy bound `1 + max |cᵢ/c_d|`: every root has modulus strictly below it.
pub fn cauchy_bound(p: &RatPoly) -> Rat {
    let lead = p.leading().abs();
    let d = p.deg();
    let m = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + m
}

/// Whether every complex root of `p` is real. The zero polynomial is not.
pub fn is_real_rooted(p: &RatPoly) -> bool {
    let Ok(s) = p.squarefree_part() else {
        return false;
    };
    if s.deg() == 0 {
        return true;
    }
    let chain = sturm_chain(&s);
    let b = cauchy_bound(&s);
    variations(&chain, &-b.clone()) - variations(&chain, &b) == s.deg()
}

#[derive(Debug, Clone)]
struct DistinctRoot {
    lo: Rat,
    hi: Rat,
    mult: usize,
    // whether the simplest rational in [lo, hi] has been tried as a root
    probed: bool,
}

/// All real roots of a real-rooted polynomial, isolated and refinable.
#[derive(Debug, Clone)]
pub struct Isolation {
    poly: RatPoly,
    sqfree: RatPoly,
    chain: Vec<RatPoly>,
    roots: Vec<DistinctRoot>,
    // lambda index (0-based) -> distinct root index
    expanded: Vec<usize>,
}

impl Isolation {
    pub fn new(p: &RatPoly) -> Result<Self> {
        let sqfree = p.squarefree_part()?;
        let chain = sturm_chain(&sqfree);
        let mut iso = Isolation {
            poly: p.clone(),
            sqfree,
            chain,
            roots: Vec::new(),
            expanded: Vec::new(),
        };
        if iso.sqfree.deg() == 0 {
            return Ok(iso);
        }
        let b = cauchy_bound(&iso.sqfree);
        let nb = -b.clone();
        let (vlo, vhi) = (variations(&iso.chain, &nb), variations(&iso.chain, &b));
        if vlo - vhi != iso.sqfree.deg() {
            return Err(Error::NotRealRooted);
        }
        let mut found = Vec::new();
        iso.isolate(nb, b, vlo, vhi, &mut found);
        found.sort_by(|a, b| b.0.cmp(&a.0));
        let factors = p.squarefree_factors()?;
        for (lo, hi) in found {
            let mult = factors
                .iter()
                .position(|f| {
                    if lo == hi {
                        f.eval(&lo).is_zero()
                    } else {
                        f.sign_at(&lo) * f.sign_at(&hi) < 0
                    }
                })
                .map(|i| i + 1)
                .expect("every root lies in one square-free factor");
            iso.roots.push(DistinctRoot {
                lo,
                hi,
                mult,
                probed: false,
            });
        }
        iso.expanded = iso
            .roots
            .iter()
            .enumerate()
            .flat_map(|(i, r)| std::iter::repeat_n(i, r.mult))
            .collect();
        Ok(iso)
    }

    // Roots in (lo, hi] where lo, hi are not roots; `vlo`, `vhi` are the
    // variation counts there.
    fn isolate(&self, lo: Rat, hi: Rat, vlo: usize, vhi: usize, out: &mut Vec<(Rat, Rat)>) {
        let count = vlo - vhi;
        if count == 0 {
            return;
        }
        if count == 1 {
            out.push((lo, hi));
            return;
        }
        let two = rat::int(2);
        let m = (&lo + &hi) / &two;
        if !self.sqfree.eval(&m).is_zero() {
            let vm = variations(&self.chain, &m);
            self.isolate(lo, m.clone(), vlo, vm, out);
            self.isolate(m, hi, vm, vhi, out);
            return;
        }
        out.push((m.clone(), m.clone()));
        let vm = variations(&self.chain, &m);
        // step left until (ml, m] holds only m
        let mut delta = (&m - &lo) / &two;
        let (ml, vml) = loop {
            let ml = &m - &delta;
            let v = variations(&self.chain, &ml);
            if !self.sqfree.eval(&ml).is_zero() && v - vm == 1 {
                break (ml, v);
            }
            delta /= &two;
        };
        self.isolate(lo, ml, vlo, vml, out);
        // step right until (m, mr] is root-free
        let mut delta = (&hi - &m) / &two;
        let (mr, vmr) = loop {
            let mr = &m + &delta;
            let v = variations(&self.chain, &mr);
            if !self.sqfree.eval(&mr).is_zero() && v == vm {
                break (mr, v);
            }
            delta /= &two;
        };
        self.isolate(mr, hi, vmr, vhi, out);
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn sqfree(&self) -> &RatPoly {
        &self.sqfree
    }

    /// Number of roots counted with multiplicity.
    pub fn len(&self) -> usize {
        self.expanded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expanded.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        self.roots.len()
    }

    /// Distinct-root index of `λᵢ` (1-based `i`).
    pub fn distinct_of(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|i| self.expanded.get(i).copied())
    }

    pub fn multiplicity(&self, d: usize) -> usize {
        self.roots[d].mult
    }

    pub fn enclosure(&self, d: usize) -> Interval {
        let r = &self.roots[d];
        Interval::new(r.lo.clone(), r.hi.clone())
    }

    /// Exact root value if known.
    pub fn exact(&self, d: usize) -> Option<Rat> {
        let r = &self.roots[d];
        (r.lo == r.hi).then(|| r.lo.clone())
    }

    /// Sum of all roots with multiplicity, exactly.
    pub fn root_sum(&self) -> Rat {
        self.poly.root_sum().unwrap_or_else(Rat::zero)
    }

    fn set_exact(&mut self, d: usize, x: Rat) {
        let r = &mut self.roots[d];
        r.lo = x.clone();
        r.hi = x;
    }

    // One bisection step on a non-point enclosure.
    fn bisect(&mut self, d: usize) {
        let r = &self.roots[d];
        let m = (&r.lo + &r.hi) / rat::int(2);
        let sm = self.sqfree.sign_at(&m);
        if sm == 0 {
            self.set_exact(d, m);
            return;
        }
        let slo = self.sqfree.sign_at(&r.lo);
        let r = &mut self.roots[d];
        if sm == slo {
            r.lo = m;
        } else {
            r.hi = m;
        }
        r.probed = false;
    }

    /// Try the simplest rational in the enclosure as an exact root.
    fn probe_rational(&mut self, d: usize) {
        let r = &self.roots[d];
        if r.probed || r.lo == r.hi {
            return;
        }
        let q = rat::simplest_between(&r.lo, &r.hi);
        if self.sqfree.eval(&q).is_zero() {
            self.set_exact(d, q);
        } else {
            self.roots[d].probed = true;
        }
    }

    /// Shrink enclosure `d` to width at most `eps`.
    pub fn refine(&mut self, d: usize, eps: &Rat) {
        self.probe_rational(d);
        while self.roots[d].hi.clone() - &self.roots[d].lo > *eps {
            self.bisect(d);
        }
        self.probe_rational(d);
    }

    pub fn refine_all(&mut self, eps: &Rat) {
        for d in 0..self.roots.len() {
            self.refine(d, eps);
        }
    }

    /// Refine `d` until `x` is not strictly inside its enclosure; exact if
    /// `x` is the root.
    pub fn separate_from(&mut self, d: usize, x: &Rat) {
        loop {
            let r = &self.roots[d];
            if !(&r.lo < x && x < &r.hi) {
                return;
            }
            if self.sqfree.eval(x).is_zero() {
                self.set_exact(d, x.clone());
                return;
            }
            self.bisect(d);
        }
    }

    /// Whether `other`'s square-free chain has a root in the closed
    /// enclosure of `d`.
    pub(crate) fn chain_has_root_in(chain: &[RatPoly], iv: &Interval) -> bool {
        count_closed(chain, &iv.lo, &iv.hi) > 0
    }

    pub fn root_vector(&self) -> RootVector {
        let entries = self
            .expanded
            .iter()
            .map(|&d| {
                let r = &self.roots[d];
                RootEnclosure {
                    lo: r.lo.clone(),
                    hi: r.hi.clone(),
                    mult: r.mult,
                }
            })
            .collect();
        RootVector::from_entries(entries, Some(self.root_sum()))
    }
}

/// `λ(p)` with every enclosure of width at most `eps`.
pub fn root_vector(p: &RatPoly, eps: &Rat) -> Result<RootVector> {
    let mut iso = Isolation::new(p).map_err(not_real_rooted)?;
    iso.refine_all(eps);
    Ok(iso.root_vector())
}

fn not_real_rooted(e: Error) -> Error {
    match e {
        Error::ZeroPolynomial => Error::NotRealRooted,
        e => e,
    }
}

/// `λⁿ(p)`: the roots of `p` padded to length `n` with copies of their
/// exact mean, in non-increasing order.
pub fn padded_root_vector(p: &RatPoly, n: usize, eps: &Rat) -> Result<RootVector> {
    let d = p.degree().ok_or(Error::NotRealRooted)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if d > n {
        return Err(Error::DegreeExceedsAmbient { degree: d, n });
    }
    let mut iso = Isolation::new(p).map_err(not_real_rooted)?;
    iso.refine_all(eps);
    let mean = iso.root_sum() / rat::int(d as i64);
    let pad = n - d;
    for k in 0..iso.distinct_count() {
        iso.separate_from(k, &mean);
    }
    let mut entries = iso.root_vector().entries;
    let mut pad_mult = pad;
    for e in entries.iter_mut() {
        if e.lo == mean && e.hi == mean {
            pad_mult = pad + e.mult;
            e.mult = pad_mult;
        }
    }
    entries.extend((0..pad).map(|_| RootEnclosure {
        lo: mean.clone(),
        hi: mean.clone(),
        mult: pad_mult,
    }));
    entries.sort_by(|a, b| b.lo.cmp(&a.lo).then_with(|| b.hi.cmp(&a.hi)));
    let sum = mean * rat::int(n as i64);
    Ok(RootVector::from_entries(entries, Some(sum)))
}

/// Enclosure of the largest root.
pub fn maxroot(p: &RatPoly, eps: &Rat) -> Result<RootEnclosure> {
    if p.deg() == 0 {
        return Err(Error::DegreeZero);
    }
    let mut iso = Isolation::new(p).map_err(not_real_rooted)?;
    iso.refine(0, eps);
    let iv = iso.enclosure(0);
    Ok(RootEnclosure {
        lo: iv.lo,
        hi: iv.hi,
        mult: iso.multiplicity(0),
    })
}

/// Certified `q ≪ p`: `deg q ∈ {deg p, deg p − 1}` and
/// `⋯ ≤ λ₂(q) ≤ λ₂(p) ≤ λ₁(q) ≤ λ₁(p)`.
pub fn interlaces(q: &RatPoly, p: &RatPoly, eps: &Rat) -> Result<Trilean> {
    let (dq, dp) = (q.deg(), p.deg());
    if !(dq == dp || dq + 1 == dp) || p.is_zero() || q.is_zero() {
        return Err(Error::DegreeMismatch(format!(
            "deg q = {dq} must be deg p or deg p - 1 (deg p = {dp})"
        )));
    }
    if !q.leading().is_positive() || !p.leading().is_positive() {
        return Err(Error::NonpositiveLeading);
    }
    let mut arena = RootArena::new();
    let iq = arena.add(q)?;
    let ip = arena.add(p)?;
    let mut verdicts = Vec::new();
    for i in 1..=dq {
        // λᵢ(q) ≤ λᵢ(p)
        let f = arena.lambda(iq, i).sub(&arena.lambda(ip, i));
        verdicts.push(arena.decide_le0(&f, eps).0);
        // λᵢ₊₁(p) ≤ λᵢ(q)
        if i < dp {
            let f = arena.lambda(ip, i + 1).sub(&arena.lambda(iq, i));
            verdicts.push(arena.decide_le0(&f, eps).0);
        }
    }
    Ok(Trilean::all(verdicts))
}

/// `𝒦_ω(p)`: the unique `x > λ₁(p)` with `p′(x)/p(x) = ω`.
///
/// Computed by bisecting the sign of `p′(x) − ω·p(x)` above the largest
/// root, independently of the root isolation of `p − p′/ω`.
pub fn cauchy_inverse(p: &RatPoly, omega: &Rat, eps: &Rat) -> Result<RootEnclosure> {
    if !omega.is_positive() {
        return Err(Error::NonpositiveOmega);
    }
    let d = p.deg();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let mut iso = Isolation::new(p).map_err(not_real_rooted)?;
    let dp = p.derivative(1);
    // g(x) = p'(x)/p(x) − ω is decreasing on (λ₁, ∞); bisect on its sign.
    let g_sign = |x: &Rat| -> i8 {
        let v = dp.eval(x) / p.eval(x) - omega;
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    let two = rat::int(2);
    // lower bracket: just above λ₁ where g > 0
    let mut width = Rat::one();
    let mut lo = loop {
        iso.refine(0, &width);
        let top = iso.enclosure(0);
        let a = if top.is_point() {
            &top.hi + &width
        } else {
            top.hi.clone()
        };
        if g_sign(&a) > 0 {
            break a;
        }
        if g_sign(&a) == 0 {
            return Ok(exact_enclosure(a));
        }
        width /= &two;
    };
    // upper bracket: p'/p ≤ d/(x − λ₁) < ω once x > λ₁ + d/ω
    let mut hi = &lo + rat::int(d as i64) / omega + Rat::one();
    debug_assert!(g_sign(&hi) < 0);
    while &hi - &lo > *eps {
        let m = (&lo + &hi) / &two;
        match g_sign(&m) {
            0 => return Ok(exact_enclosure(m)),
            1 => lo = m,
            _ => hi = m,
        }
    }
    let q = rat::simplest_between(&lo, &hi);
    if g_sign(&q) == 0 {
        return Ok(exact_enclosure(q));
    }
    Ok(RootEnclosure { lo, hi, mult: 1 })
}

fn exact_enclosure(x: Rat) -> RootEnclosure {
    RootEnclosure {
        lo: x.clone(),
        hi: x,
        mult: 1,
    }
}

/// `λ₁(U_α p)` computed by root isolation; agrees with
/// [`cauchy_inverse`] at `ω = 1/α`.
pub fn maxroot_u_alpha(p: &RatPoly, alpha: &Rat, eps: &Rat) -> Result<RootEnclosure> {
    maxroot(&poly::apply_u_alpha(p, alpha), eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    fn eps() -> Rat {
        ratio(1, 1000)
    }

    #[test]
    fn sturm_count_examples() {
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &int(-2), &int(2)).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &int(-10), &int(10)).unwrap(), 0);
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &int(0), &int(2)).unwrap(), 1);
        assert!(matches!(
            sturm_count(&p(&[-1, 0, 1]), &int(1), &int(2)),
            Err(Error::EndpointIsRoot(_))
        ));
        assert_eq!(sturm_count(&p(&[-1, 0, 1]), &int(2), &int(1)), Err(Error::InvalidInterval));
    }

    #[test]
    fn real_rootedness() {
        assert!(is_real_rooted(&p(&[-1, 0, 1])));
        assert!(!is_real_rooted(&p(&[1, 0, 1])));
        let f = RatPoly::from_roots(&[int(1), int(1), int(1), int(-2)]);
        assert!(is_real_rooted(&f));
        assert!(!is_real_rooted(&(&f * &p(&[1, 0, 1]))));
        assert!(is_real_rooted(&p(&[7])));
        assert!(!is_real_rooted(&RatPoly::zero(2)));
    }

    #[test]
    fn root_vector_sqrt2() {
        let rv = root_vector(&p(&[-2, 0, 1]), &eps()).unwrap();
        assert_eq!(rv.len(), 2);
        assert!(rv.width <= eps());
        let top = rv.lambda(1).unwrap();
        // oracle: 1.41421356... brackets
        assert!(top.lo <= ratio(141_422, 100_000) && top.hi >= ratio(141_421, 100_000));
        assert!(&top.lo * &top.lo <= int(2) && &top.hi * &top.hi >= int(2));
        assert!(rv.entries.iter().all(|e| e.mult == 1));
        assert!(rv.is_ordered());
    }

    #[test]
    fn root_vector_exact_rational() {
        let rv = root_vector(&p(&[1, -2, 1]), &eps()).unwrap();
        assert_eq!(rv.len(), 2);
        assert!(rv.entries.iter().all(|e| e.is_exact() && e.lo == int(1) && e.mult == 2));

        let rv = root_vector(&p(&[0, 0, -2, 1]), &eps()).unwrap();
        let vals: Vec<_> = rv.entries.iter().map(|e| (e.lo.clone(), e.mult)).collect();
        assert_eq!(vals, vec![(int(2), 1), (int(0), 2), (int(0), 2)]);
        assert!(rv.entries.iter().all(RootEnclosure::is_exact));
    }

    #[test]
    fn root_vector_rejects_complex() {
        assert_eq!(root_vector(&p(&[1, 0, 1]), &eps()), Err(Error::NotRealRooted));
    }

    #[test]
    fn close_roots_are_separated() {
        let f = RatPoly::from_roots(&[ratio(1, 1000), ratio(2, 1000), int(5), ratio(-7, 3)]);
        let rv = root_vector(&f, &rat::pow2(-40)).unwrap();
        let got: Vec<_> = rv.entries.iter().map(|e| e.lo.clone()).collect();
        assert_eq!(got, vec![int(5), ratio(2, 1000), ratio(1, 1000), ratio(-7, 3)]);
    }

    #[test]
    fn padded_examples() {
        let rv = padded_root_vector(&p(&[-3, 1]), 2, &eps()).unwrap();
        assert_eq!(rv.intervals(), vec![Interval::point(int(3)); 2]);

        let rv = padded_root_vector(&p(&[-1, 0, 1]), 2, &eps()).unwrap();
        assert_eq!(rv.intervals(), vec![Interval::point(int(1)), Interval::point(int(-1))]);

        let rv = padded_root_vector(&p(&[-4, 0, 1]), 4, &eps()).unwrap();
        let pts: Vec<_> = rv.intervals().into_iter().map(|i| i.lo).collect();
        assert_eq!(pts, vec![int(2), int(0), int(0), int(-2)]);
        assert_eq!(rv.sum, Some(int(0)));

        assert_eq!(padded_root_vector(&p(&[4]), 2, &eps()), Err(Error::DegreeZero));
    }

    #[test]
    fn padded_irrational_straddling_mean() {
        // roots ±√2 + 1/100 ... mean 1/100 sits between them; padding needs certified order
        let f = p(&[-2, 0, 1]).shift(&ratio(-1, 100));
        let rv = padded_root_vector(&f, 3, &int(4)).unwrap();
        assert!(rv.is_ordered());
        assert_eq!(rv.entries[1].interval(), Interval::point(ratio(1, 100)));
    }

    #[test]
    fn maxroot_examples() {
        let m = maxroot(&poly::u_alpha(2, &int(1)), &eps()).unwrap();
        assert!(m.is_exact() && m.lo == int(2));
        let m = maxroot(&p(&[-2, 0, 1]), &eps()).unwrap();
        assert!(m.lo.clone() * m.lo.clone() <= int(2) && m.hi.clone() * m.hi.clone() >= int(2));
        let m = maxroot(&RatPoly::from_roots(&vec![int(-5); 3]), &eps()).unwrap();
        assert_eq!((m.lo.clone(), m.hi.clone(), m.mult), (int(-5), int(-5), 3));
    }

    #[test]
    fn interlacing_examples() {
        let e = eps();
        assert_eq!(interlaces(&p(&[0, 2]), &p(&[-1, 0, 1]), &e).unwrap(), Trilean::True);
        assert_eq!(interlaces(&p(&[-5, 1]), &p(&[-1, 0, 1]), &e).unwrap(), Trilean::False);
        let a = ratio(7, 3);
        let q = RatPoly::from_roots(&[a.clone()]);
        let pp = RatPoly::from_roots(&[a.clone(), a]);
        assert_eq!(interlaces(&q, &pp, &e).unwrap(), Trilean::True);
        assert!(matches!(
            interlaces(&p(&[1]), &p(&[-1, 0, 1]), &e),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn interlacing_shared_irrational_root() {
        // q = (x²−2), p = (x²−2)(x−3): shared roots ±√2 must compare as equal
        let q = p(&[-2, 0, 1]);
        let pp = &q * &p(&[-3, 1]);
        assert_eq!(interlaces(&q, &pp, &eps()).unwrap(), Trilean::True);
    }

    #[test]
    fn cauchy_inverse_examples() {
        let e = eps();
        let k = cauchy_inverse(&p(&[0, 0, 1]), &int(1), &e).unwrap();
        assert!(k.is_exact() && k.lo == int(2));

        let alpha = int(3);
        let k = cauchy_inverse(&p(&[0, 0, 1]), &alpha.recip(), &e).unwrap();
        let m = maxroot_u_alpha(&p(&[0, 0, 1]), &alpha, &e).unwrap();
        assert_eq!(k.lo, int(6));
        assert_eq!(m.lo, int(6));

        let c = ratio(-2, 7);
        let omega = ratio(5, 3);
        let k = cauchy_inverse(&RatPoly::from_roots(&[c.clone()]), &omega, &e).unwrap();
        assert!(k.is_exact());
        assert_eq!(k.lo, c + omega.recip());

        assert_eq!(cauchy_inverse(&p(&[0, 1]), &int(0), &e), Err(Error::NonpositiveOmega));
    }

    #[test]
    fn cauchy_inverse_irrational_agrees_with_u_alpha() {
        let f = RatPoly::from_roots(&[int(1), ratio(-1, 2), int(3)]);
        let omega = ratio(7, 5);
        let e = rat::pow2(-30);
        let k = cauchy_inverse(&f, &omega, &e).unwrap();
        let m = maxroot_u_alpha(&f, &omega.recip(), &e).unwrap();
        assert!(k.interval().overlaps(&m.interval()));
        assert!(k.lo > int(3));
    }
}
