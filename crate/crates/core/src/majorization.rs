//! Majorization order and pinch moves.
//!
//! `y ≺ x` means the partial sums of `y↓` never exceed those of `x↓` and the
//! totals agree.

use num_traits::Zero;

use crate::interval::{Interval, Trilean};
use crate::rat::Rat;
use crate::roots::{LinearForm, RootArena, RootVector};
use crate::{Error, Result};

/// A real vector given by exact or enclosed entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosedVec {
    pub entries: Vec<Interval>,
    /// Exact total when known independently of the enclosures.
    pub exact_total: Option<Rat>,
}

impl EnclosedVec {
    pub fn from_rats(xs: &[Rat]) -> Self {
        EnclosedVec {
            entries: xs.iter().cloned().map(Interval::point).collect(),
            exact_total: Some(xs.iter().fold(Rat::zero(), |a, b| a + b)),
        }
    }

    pub fn from_intervals(entries: Vec<Interval>) -> Self {
        let exact_total = entries
            .iter()
            .all(Interval::is_point)
            .then(|| entries.iter().fold(Rat::zero(), |a, b| a + &b.lo));
        EnclosedVec {
            entries,
            exact_total,
        }
    }

    pub fn from_root_vector(rv: &RootVector) -> Self {
        let mut v = Self::from_intervals(rv.intervals());
        if v.exact_total.is_none() {
            v.exact_total = rv.sum.clone();
        }
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn total(&self) -> Interval {
        match &self.exact_total {
            Some(t) => Interval::point(t.clone()),
            None => self
                .entries
                .iter()
                .fold(Interval::zero(), |acc, e| &acc + e),
        }
    }

    fn width(&self) -> Rat {
        self.entries
            .iter()
            .map(Interval::width)
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Bounds on the sum of the `k` largest entries.
    fn top_sum(&self, k: usize) -> Interval {
        let mut los: Vec<&Rat> = self.entries.iter().map(|e| &e.lo).collect();
        let mut his: Vec<&Rat> = self.entries.iter().map(|e| &e.hi).collect();
        los.sort_by(|a, b| b.cmp(a));
        his.sort_by(|a, b| b.cmp(a));
        let lo = los.into_iter().take(k).fold(Rat::zero(), |a, b| a + b);
        let hi = his.into_iter().take(k).fold(Rat::zero(), |a, b| a + b);
        Interval::new(lo, hi)
    }
}

/// Entries in non-increasing order.
pub fn sorted_desc(xs: &[Rat]) -> Vec<Rat> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Certified `y ≺ x`. Exact on rational entries; on enclosures the verdict
/// is whatever the given widths can decide.
pub fn majorizes(x: &EnclosedVec, y: &EnclosedVec, _eps: &Rat) -> Result<Trilean> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let width = std::cmp::max(x.width(), y.width());
    let mut verdict = Trilean::True;
    for k in 1..n {
        let (sx, sy) = (x.top_sum(k), y.top_sum(k));
        let v = if sy.hi <= sx.lo {
            Trilean::True
        } else if sy.lo > sx.hi {
            Trilean::False
        } else {
            Trilean::Indeterminate(width.clone())
        };
        verdict = verdict.and(v);
        if verdict.is_false() {
            return Ok(verdict);
        }
    }
    let (tx, ty) = (x.total(), y.total());
    let total = if tx.is_point() && ty.is_point() {
        Trilean::from(tx.lo == ty.lo)
    } else if !tx.overlaps(&ty) {
        Trilean::False
    } else {
        Trilean::Indeterminate(width)
    };
    Ok(verdict.and(total))
}

/// `y ≺ x` where both are already certified non-increasing lists of root
/// forms. Partial sums are compared as linear forms so equal roots cancel
/// exactly.
pub fn majorizes_forms(
    arena: &mut RootArena,
    x: &[LinearForm],
    y: &[LinearForm],
    eps: &Rat,
) -> Result<Trilean> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let mut verdict = Trilean::True;
    let mut sx = LinearForm::default();
    let mut sy = LinearForm::default();
    for k in 0..n {
        sx = sx.add(&x[k]);
        sy = sy.add(&y[k]);
        let diff = sy.sub(&sx);
        let v = if k + 1 < n {
            arena.decide_le0(&diff, eps).0
        } else {
            arena.decide_eq0(&diff, eps).0
        };
        verdict = verdict.and(v);
        if verdict.is_false() {
            break;
        }
    }
    Ok(verdict)
}

/// Move `x_j` and `x_k` towards each other by `alpha` (1-based indices).
pub fn pinch(x: &[Rat], j: usize, k: usize, alpha: &Rat) -> Result<Vec<Rat>> {
    let n = x.len();
    for i in [j, k] {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("pinch index {i} not in 1..={n}")));
        }
    }
    let (xj, xk) = (&x[j - 1], &x[k - 1]);
    if xj < xk || alpha < &Rat::zero() || alpha * crate::rat::int(2) > xj - xk {
        return Err(Error::CrossingPinch);
    }
    let mut out = x.to_vec();
    out[j - 1] = xj - alpha;
    out[k - 1] = xk + alpha;
    Ok(out)
}
