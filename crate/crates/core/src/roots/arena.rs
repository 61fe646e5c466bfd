//! Certified comparisons among roots of several polynomials.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::Isolation;
use crate::interval::{Interval, Trilean};
use crate::poly::RatPoly;
use crate::rat::{self, Rat};
use crate::Result;

/// A distinct root of a polynomial registered in a [`RootArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootRef {
    pub poly: usize,
    pub root: usize,
}

/// `Σ cᵢ·rᵢ + c₀` over roots `rᵢ`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearForm {
    pub terms: Vec<(RootRef, Rat)>,
    pub constant: Rat,
}

impl LinearForm {
    pub fn constant(c: Rat) -> Self {
        LinearForm {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn root(r: RootRef) -> Self {
        LinearForm {
            terms: vec![(r, Rat::from_integer(1.into()))],
            constant: Rat::zero(),
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LinearForm {
            terms,
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rat) -> LinearForm {
        LinearForm {
            terms: self.terms.iter().map(|(r, a)| (*r, a * c)).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn add_const(&self, c: &Rat) -> LinearForm {
        LinearForm {
            terms: self.terms.clone(),
            constant: &self.constant + c,
        }
    }

    pub fn sum<'a>(forms: impl IntoIterator<Item = &'a LinearForm>) -> LinearForm {
        forms
            .into_iter()
            .fold(LinearForm::default(), |acc, f| acc.add(f))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Isolations of several polynomials plus the exact root-equality oracle.
#[derive(Debug, Default, Clone)]
pub struct RootArena {
    isos: Vec<Isolation>,
    gcds: HashMap<(usize, usize), Vec<RatPoly>>,
    equal: HashMap<(RootRef, RootRef), bool>,
    shifts: HashMap<(usize, usize), Option<Rat>>,
}

impl RootArena {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a real-rooted polynomial; errors as [`Isolation::new`].
    pub fn add(&mut self, p: &RatPoly) -> Result<usize> {
        let iso = Isolation::new(p).map_err(|e| match e {
            crate::Error::ZeroPolynomial => crate::Error::NotRealRooted,
            e => e,
        })?;
        self.isos.push(iso);
        Ok(self.isos.len() - 1)
    }

    pub fn iso(&self, id: usize) -> &Isolation {
        &self.isos[id]
    }

    pub fn iso_mut(&mut self, id: usize) -> &mut Isolation {
        &mut self.isos[id]
    }

    /// `λᵢ` of polynomial `id` (1-based) as a reference.
    pub fn lambda_ref(&self, id: usize, i: usize) -> RootRef {
        let root = self.isos[id]
            .distinct_of(i)
            .unwrap_or_else(|| panic!("λ_{i} out of range for polynomial {id}"));
        RootRef { poly: id, root }
    }

    pub fn lambda(&self, id: usize, i: usize) -> LinearForm {
        LinearForm::root(self.lambda_ref(id, i))
    }

    /// `λ₁, …, λ_d` as forms.
    pub fn lambdas(&self, id: usize) -> Vec<LinearForm> {
        (1..=self.isos[id].len()).map(|i| self.lambda(id, i)).collect()
    }

    /// `λⁿ` as forms: roots padded to length `n` with their exact mean,
    /// ordered with certificates (enclosures are separated from the mean).
    pub fn padded_lambdas(&mut self, id: usize, n: usize) -> Vec<LinearForm> {
        let d = self.isos[id].len();
        assert!(d > 0 && d <= n, "padding needs 0 < degree <= n");
        let mean = self.isos[id].root_sum() / rat::int(d as i64);
        for k in 0..self.isos[id].distinct_count() {
            self.isos[id].separate_from(k, &mean);
        }
        let mut out = Vec::with_capacity(n);
        let mut padded = false;
        for i in 1..=d {
            let r = self.lambda_ref(id, i);
            let enc = self.enclosure(r);
            if !padded && enc.hi <= mean {
                out.extend((d..n).map(|_| LinearForm::constant(mean.clone())));
                padded = true;
            }
            out.push(LinearForm::root(r));
        }
        if !padded {
            out.extend((d..n).map(|_| LinearForm::constant(mean.clone())));
        }
        out
    }

    pub fn enclosure(&self, r: RootRef) -> Interval {
        self.isos[r.poly].enclosure(r.root)
    }

    pub fn refine(&mut self, r: RootRef, eps: &Rat) {
        self.isos[r.poly].refine(r.root, eps);
    }

    /// [`eval`](Self::eval) after refining every root of `f` to `eps`.
    pub fn eval_refined(&mut self, f: &LinearForm, eps: &Rat) -> Interval {
        for (r, _) in &f.terms {
            self.refine(*r, eps);
        }
        self.eval(f)
    }

    // Sturm chain of gcd(sqfree a, sqfree b).
    fn gcd_chain(&mut self, a: usize, b: usize) -> &[RatPoly] {
        let key = (a.min(b), a.max(b));
        if !self.gcds.contains_key(&key) {
            let g = self.isos[a].sqfree().gcd(self.isos[b].sqfree());
            self.gcds.insert(key, super::sturm_chain(&g));
        }
        &self.gcds[&key]
    }

    /// Exact equality of two roots.
    pub fn roots_equal(&mut self, a: RootRef, b: RootRef) -> bool {
        if a == b {
            return true;
        }
        if a.poly == b.poly {
            return false;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&v) = self.equal.get(&key) {
            return v;
        }
        let v = self.decide_equal(a, b);
        self.equal.insert(key, v);
        v
    }

    fn decide_equal(&mut self, a: RootRef, b: RootRef) -> bool {
        let (ea, eb) = (self.enclosure(a), self.enclosure(b));
        if !ea.overlaps(&eb) {
            return false;
        }
        if ea.is_point() && eb.is_point() {
            return ea.lo == eb.lo;
        }
        // a common root of both square-free parts inside both isolating
        // enclosures is necessarily a = b
        let lo = std::cmp::max(ea.lo, eb.lo);
        let hi = std::cmp::min(ea.hi, eb.hi);
        let chain = self.gcd_chain(a.poly, b.poly);
        chain[0].deg() > 0 && Isolation::chain_has_root_in(chain, &Interval::new(lo, hi))
    }

    /// `c` with `{roots of a} = {roots of b} + c` (distinct roots), if any.
    pub fn shift_between(&mut self, a: usize, b: usize) -> Option<Rat> {
        if let Some(v) = self.shifts.get(&(a, b)) {
            return v.clone();
        }
        let (sa, sb) = (self.isos[a].sqfree().monic(), self.isos[b].sqfree().monic());
        let d = sa.deg();
        let v = (d > 0 && d == sb.deg())
            .then(|| (sb.coeff(d - 1) - sa.coeff(d - 1)) / rat::int(d as i64))
            .filter(|c| sb.shift(&-c.clone()) == sa);
        self.shifts.insert((a, b), v.clone());
        self.shifts.insert((b, a), v.as_ref().map(|c| -c.clone()));
        v
    }

    /// Enclosure of the form's value.
    pub fn eval(&self, f: &LinearForm) -> Interval {
        f.terms.iter().fold(Interval::point(f.constant.clone()), |acc, (r, c)| {
            &acc + &self.enclosure(*r).scale(c)
        })
    }

    /// Merge terms on equal roots and replace complete root sums by their
    /// exact value.
    pub fn simplify(&mut self, f: &LinearForm) -> LinearForm {
        let mut terms: Vec<(RootRef, Rat)> = Vec::new();
        for (r, c) in &f.terms {
            match terms.iter_mut().find(|(s, _)| s == r) {
                Some((_, a)) => *a += c,
                None => terms.push((*r, c.clone())),
            }
        }
        let mut constant = f.constant.clone();
        self.collapse_sums(&mut terms, &mut constant);
        // roots that are equal across polynomials
        let mut out: Vec<(RootRef, Rat)> = Vec::new();
        for (r, c) in terms {
            let hit = out
                .iter()
                .position(|(s, _)| s.poly != r.poly && self.roots_equal(*s, r));
            match hit {
                Some(k) => out[k].1 += c,
                None => out.push((r, c)),
            }
        }
        self.collapse_sums(&mut out, &mut constant);
        // the same root of two polynomials that are translates of each other
        let mut merged: Vec<(RootRef, Rat)> = Vec::new();
        for (r, c) in out {
            let hit = merged.iter().enumerate().find_map(|(k, (s, _))| {
                (s.poly != r.poly && s.root == r.root)
                    .then(|| self.shift_between(r.poly, s.poly).map(|d| (k, d)))
                    .flatten()
            });
            match hit {
                Some((k, d)) => {
                    constant += &c * d;
                    merged[k].1 += c;
                }
                None => merged.push((r, c)),
            }
        }
        self.collapse_sums(&mut merged, &mut constant);
        LinearForm {
            terms: merged,
            constant,
        }
    }

    // Σ c·mult·root over every distinct root of one polynomial is c times
    // the exact root sum.
    fn collapse_sums(&self, terms: &mut Vec<(RootRef, Rat)>, constant: &mut Rat) {
        terms.retain(|(_, c)| !c.is_zero());
        let mut polys: Vec<usize> = terms.iter().map(|(r, _)| r.poly).collect();
        polys.sort_unstable();
        polys.dedup();
        for id in polys {
            let iso = &self.isos[id];
            let per_mult: Vec<Rat> = terms
                .iter()
                .filter(|(r, _)| r.poly == id)
                .map(|(r, c)| c / rat::int(iso.multiplicity(r.root) as i64))
                .collect();
            if per_mult.len() == iso.distinct_count() && per_mult.iter().all(|c| *c == per_mult[0]) {
                *constant += &per_mult[0] * iso.root_sum();
                terms.retain(|(r, _)| r.poly != id);
            }
        }
    }

    /// Certified `f ≤ 0`, refining enclosures progressively down to `eps`.
    /// Returns the verdict and the last enclosure of `f`.
    pub fn decide_le0(&mut self, f: &LinearForm, eps: &Rat) -> (Trilean, Interval) {
        let f = self.simplify(f);
        let mut prec = rat::pow2(-8);
        loop {
            let iv = self.eval(&f);
            if !iv.hi.is_positive() {
                return (Trilean::True, iv);
            }
            if iv.lo.is_positive() {
                return (Trilean::False, iv);
            }
            if prec < *eps {
                let w = iv.width();
                return (Trilean::Indeterminate(w), iv);
            }
            for (r, _) in &f.terms {
                self.refine(*r, &prec);
            }
            prec = if prec == *eps {
                &prec / rat::int(2)
            } else {
                std::cmp::max(&prec * rat::pow2(-8), eps.clone())
            };
        }
    }

    /// Certified `f = 0`. Exact once the simplified form is constant;
    /// otherwise only a violation can be certified.
    pub fn decide_eq0(&mut self, f: &LinearForm, eps: &Rat) -> (Trilean, Interval) {
        let f = self.simplify(f);
        if f.is_constant() {
            return (Trilean::from(f.constant.is_zero()), Interval::point(f.constant));
        }
        let mut prec = rat::pow2(-8);
        loop {
            let iv = self.eval(&f);
            if !iv.contains(&Rat::zero()) {
                return (Trilean::False, iv);
            }
            if prec < *eps {
                return (Trilean::Indeterminate(iv.width()), iv);
            }
            for (r, _) in &f.terms {
                self.refine(*r, &prec);
            }
            prec = if prec == *eps {
                &prec / rat::int(2)
            } else {
                std::cmp::max(&prec * rat::pow2(-8), eps.clone())
            };
        }
    }

    /// Certified `f < 0`.
    pub fn decide_lt0(&mut self, f: &LinearForm, eps: &Rat) -> (Trilean, Interval) {
        let (eq, iv) = self.decide_eq0(f, eps);
        if eq.is_true() {
            return (Trilean::False, iv);
        }
        let (le, iv) = self.decide_le0(f, eps);
        match (le, eq) {
            (Trilean::True, Trilean::False) => (Trilean::True, iv),
            (Trilean::True, ind) => (ind, iv),
            (le, _) => (le, iv),
        }
    }
}
