//! Horn triples and a random Hermitian falsification oracle.
//!
//! A triple `(I, J, K)` of `r`-subsets of `[n]` is read as the inequality
//! `Σ_I λ(A+B) ≤ Σ_J λ(A) + Σ_K λ(B)` for Hermitian `A, B`, eigenvalues in
//! non-increasing order and indices 1-based.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::interval::Trilean;
use crate::poly::RatPoly;
use crate::rat::{self, Rat};
use crate::roots::{LinearForm, RootArena};
use crate::{Error, Result};

/// Largest `n` for which Horn triples are generated.
pub const MAX_HORN_N: usize = 6;

/// Float tolerance for a sampled violation.
pub const FLOAT_TOL: f64 = 1e-8;

/// Index sets `(I, L, J, K)`; `L` is only used by 4-tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple {
    pub n: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<usize>>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl IndexTuple {
    pub fn triple(n: usize, i: Vec<usize>, j: Vec<usize>, k: Vec<usize>) -> Self {
        IndexTuple { n, i, l: None, j, k }
    }

    /// Checks that every set is sorted, duplicate free, non-empty and in `1..=n`.
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, s: &[usize]| {
            if s.is_empty() {
                return Err(Error::IndexOutOfRange(format!("{name} is empty")));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::IndexOutOfRange(format!("{name} is not strictly increasing")));
            }
            if s[0] == 0 || *s.last().unwrap() > self.n {
                return Err(Error::IndexOutOfRange(format!("{name} has an index outside 1..={}", self.n)));
            }
            Ok(())
        };
        check("I", &self.i)?;
        check("J", &self.j)?;
        check("K", &self.k)?;
        if let Some(l) = &self.l {
            check("L", l)?;
        }
        Ok(())
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < r - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, r, &mut Vec::new(), &mut out);
    out
}

type Triple = (Vec<usize>, Vec<usize>, Vec<usize>);

// Fulton's T^n_r in decreasing-eigenvalue indexing: the inequalities
// Σ_K γ ≤ Σ_I α + Σ_J β for C = A + B.
fn fulton(n: usize, r: usize, memo: &mut HashMap<(usize, usize), Vec<Triple>>) -> Vec<Triple> {
    if let Some(v) = memo.get(&(n, r)) {
        return v.clone();
    }
    let lower: Vec<(usize, Vec<Triple>)> = (1..r).map(|p| (p, fulton(r, p, memo))).collect();
    let sets = subsets(n, r);
    let target = r * (r + 1) / 2;
    let mut out = Vec::new();
    for i in &sets {
        for j in &sets {
            for k in &sets {
                let s = |x: &[usize]| x.iter().sum::<usize>();
                if s(i) + s(j) != s(k) + target {
                    continue;
                }
                let ok = lower.iter().all(|(p, ts)| {
                    ts.iter().all(|(f, g, h)| {
                        let a: usize = f.iter().map(|&x| i[x - 1]).sum();
                        let b: usize = g.iter().map(|&x| j[x - 1]).sum();
                        let c: usize = h.iter().map(|&x| k[x - 1]).sum();
                        a + b <= c + p * (p + 1) / 2
                    })
                });
                if ok {
                    out.push((i.clone(), j.clone(), k.clone()));
                }
            }
        }
    }
    memo.insert((n, r), out.clone());
    out
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All valid triples `(I, J, K)` with `|I| = |J| = |K| = r`: the recursive
/// Horn conditions plus everything they imply by moving indices of `I` down
/// the spectrum or indices of `J`, `K` up.
pub fn horn_triples(n: usize, r: usize) -> Result<Vec<IndexTuple>> {
    if n > MAX_HORN_N {
        return Err(Error::UnsupportedSize(n));
    }
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange(format!("r = {r} not in 1..={n}")));
    }
    let mut memo = HashMap::new();
    // re-orient: our (I, J, K) = (K, I, J) of the Fulton triple
    let essential: Vec<Triple> = fulton(n, r, &mut memo)
        .into_iter()
        .map(|(i, j, k)| (k, i, j))
        .collect();
    let sets = subsets(n, r);
    let mut out = BTreeSet::new();
    for i in &sets {
        for j in &sets {
            for k in &sets {
                let implied = essential
                    .iter()
                    .any(|(i0, j0, k0)| dominated(i0, i) && dominated(j, j0) && dominated(k, k0));
                if implied {
                    out.insert(IndexTuple::triple(n, i.clone(), j.clone(), k.clone()));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All `r`-subset triples of `[n]`, valid or not.
pub fn all_triples(n: usize, r: usize) -> Vec<IndexTuple> {
    let sets = subsets(n, r);
    let mut out = Vec::new();
    for i in &sets {
        for j in &sets {
            for k in &sets {
                out.push(IndexTuple::triple(n, i.clone(), j.clone(), k.clone()));
            }
        }
    }
    out
}

/// Hermitian matrix with Gaussian-rational entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMat {
    pub n: usize,
    #[serde(with = "rat::serde_vec")]
    pub re: Vec<Rat>,
    #[serde(with = "rat::serde_vec")]
    pub im: Vec<Rat>,
}

impl CMat {
    fn zeros(n: usize) -> Self {
        CMat {
            n,
            re: vec![Rat::zero(); n * n],
            im: vec![Rat::zero(); n * n],
        }
    }

    pub fn diag(d: &[Rat]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, x) in d.iter().enumerate() {
            m.re[i * n + i] = x.clone();
        }
        m
    }

    pub fn add(&self, o: &CMat) -> CMat {
        CMat {
            n: self.n,
            re: self.re.iter().zip(&o.re).map(|(a, b)| a + b).collect(),
            im: self.im.iter().zip(&o.im).map(|(a, b)| a + b).collect(),
        }
    }

    fn mul(&self, o: &CMat) -> CMat {
        let n = self.n;
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let (mut sr, mut si) = (Rat::zero(), Rat::zero());
                for k in 0..n {
                    let (a, b) = (&self.re[r * n + k], &self.im[r * n + k]);
                    let (x, y) = (&o.re[k * n + c], &o.im[k * n + c]);
                    sr += a * x - b * y;
                    si += a * y + b * x;
                }
                m.re[r * n + c] = sr;
                m.im[r * n + c] = si;
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.n;
        (0..n).all(|r| {
            (0..n).all(|c| {
                self.re[r * n + c] == self.re[c * n + r] && self.im[r * n + c] == -self.im[c * n + r].clone()
            })
        })
    }

    /// `det(xI − M)` by Faddeev–LeVerrier; real for Hermitian input.
    pub fn char_poly(&self) -> RatPoly {
        let n = self.n;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            let mut next = self.mul(&m);
            for d in 0..n {
                next.re[d * n + d] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next);
            let tr = (0..n).fold(Rat::zero(), |acc, d| acc + &am.re[d * n + d]);
            coeffs[n - k] = -tr / rat::int(k as i64);
            m = next;
        }
        RatPoly::from_coeffs(coeffs).with_ambient(n).expect("degree n")
    }

    fn to_float(&self) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |r, c| {
            Complex64::new(rat::to_f64(&self.re[r * n + c]), rat::to_f64(&self.im[r * n + c]))
        })
    }
}

/// Certified counterexample to a triple inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HornWitness {
    pub tuple: IndexTuple,
    pub trial: u64,
    pub a: CMat,
    pub b: CMat,
    /// `Σ_I λ(A+B) − Σ_J λ(A) − Σ_K λ(B)` in floating point.
    pub float_gap: f64,
}

const DYADIC_BITS: u32 = 16;

fn dyadic(x: f64) -> Rat {
    rat::from_f64_dyadic(x, DYADIC_BITS)
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, strategy: u64) -> CMat {
    let mut m = CMat::zeros(n);
    match strategy {
        // diagonal with small integer spectrum
        1 => {
            for d in 0..n {
                m.re[d * n + d] = rat::int(rng.random_range(-3..=3));
            }
        }
        // scaled rank one v v*
        2 => {
            let v: Vec<(f64, f64)> = (0..n)
                .map(|_| (rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let s: f64 = rng.random_range(-2.0..2.0);
            for r in 0..n {
                for c in r..n {
                    let (a, b) = v[r];
                    let (x, y) = v[c];
                    // v_r · conj(v_c)
                    let re = s * (a * x + b * y);
                    let im = s * (b * x - a * y);
                    m.re[r * n + c] = dyadic(re);
                    m.re[c * n + r] = dyadic(re);
                    if r != c {
                        m.im[r * n + c] = dyadic(im);
                        m.im[c * n + r] = -dyadic(im);
                    }
                }
            }
        }
        // GUE-like
        _ => {
            for r in 0..n {
                let d: f64 = rng.sample(StandardNormal);
                m.re[r * n + r] = dyadic(d);
                for c in r + 1..n {
                    let re: f64 = rng.sample::<f64, _>(StandardNormal) / std::f64::consts::SQRT_2;
                    let im: f64 = rng.sample::<f64, _>(StandardNormal) / std::f64::consts::SQRT_2;
                    m.re[r * n + c] = dyadic(re);
                    m.re[c * n + r] = dyadic(re);
                    m.im[r * n + c] = dyadic(im);
                    m.im[c * n + r] = -dyadic(im);
                }
            }
        }
    }
    m
}

/// The `trial`-th sample pair for `seed`. Each trial has its own RNG
/// stream, so trials can be drawn in any order or in parallel.
pub fn sample_pair(n: usize, seed: u64, trial: u64) -> (CMat, CMat) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let a = random_hermitian(&mut rng, n, trial % 3);
    let b = random_hermitian(&mut rng, n, (trial / 3) % 3);
    (a, b)
}

fn float_spectrum(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.to_float().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn float_gap(t: &IndexTuple, c: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let s = |idx: &[usize], v: &[f64]| idx.iter().map(|&i| v[i - 1]).sum::<f64>();
    s(&t.i, c) - s(&t.j, a) - s(&t.k, b)
}

/// Exact check of the triple inequality on rational matrices.
pub fn exact_triple_verdict(t: &IndexTuple, a: &CMat, b: &CMat, eps: &Rat) -> Result<Trilean> {
    let c = a.add(b);
    let mut arena = RootArena::new();
    let ia = arena.add(&a.char_poly())?;
    let ib = arena.add(&b.char_poly())?;
    let ic = arena.add(&c.char_poly())?;
    let mut f = LinearForm::default();
    for &i in &t.i {
        f = f.add(&arena.lambda(ic, i));
    }
    for &j in &t.j {
        f = f.sub(&arena.lambda(ia, j));
    }
    for &k in &t.k {
        f = f.sub(&arena.lambda(ib, k));
    }
    Ok(arena.decide_le0(&f, eps).0)
}

struct Sample {
    trial: u64,
    a: CMat,
    b: CMat,
    spec: [Vec<f64>; 3],
}

fn draw_samples(n: usize, trials: u64, seed: u64) -> Vec<Sample> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let (a, b) = sample_pair(n, seed, trial);
            let spec = [float_spectrum(&a.add(&b)), float_spectrum(&a), float_spectrum(&b)];
            Sample { trial, a, b, spec }
        })
        .collect()
}

fn first_witness(t: &IndexTuple, samples: &[Sample]) -> Option<HornWitness> {
    let eps = rat::pow2(-40);
    samples.iter().find_map(|s| {
        let gap = float_gap(t, &s.spec[0], &s.spec[1], &s.spec[2]);
        if gap <= FLOAT_TOL {
            return None;
        }
        match exact_triple_verdict(t, &s.a, &s.b, &eps) {
            Ok(Trilean::False) => Some(HornWitness {
                tuple: t.clone(),
                trial: s.trial,
                a: s.a.clone(),
                b: s.b.clone(),
                float_gap: gap,
            }),
            _ => None,
        }
    })
}

/// Sample `trials` Hermitian pairs and return the first one whose
/// violation of `t` survives an exact recheck.
pub fn hermitian_falsify(t: &IndexTuple, trials: u64, seed: u64) -> Result<Option<HornWitness>> {
    t.validate()?;
    let samples = draw_samples(t.n, trials, seed);
    Ok(first_witness(t, &samples))
}

/// [`hermitian_falsify`] for many tuples of the same `n` over one shared
/// set of samples. Results are in input order.
pub fn hermitian_falsify_many(
    tuples: &[IndexTuple],
    trials: u64,
    seed: u64,
) -> Result<Vec<Option<HornWitness>>> {
    let Some(first) = tuples.first() else {
        return Ok(Vec::new());
    };
    for t in tuples {
        t.validate()?;
        if t.n != first.n {
            return Err(Error::DegreeMismatch(format!("tuples for n = {} and n = {}", first.n, t.n)));
        }
    }
    let samples = draw_samples(first.n, trials, seed);
    Ok(tuples.par_iter().map(|t| first_witness(t, &samples)).collect())
}

/// Disagreement between [`horn_triples`] and the sampling oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub tuple: IndexTuple,
    pub in_horn_set: bool,
    pub falsified: bool,
}

/// Compare every `r`-subset triple of `[n]` against the sampling oracle.
/// A valid triple that is falsified, or an invalid one that survives, is
/// reported.
pub fn horn_cross_check(n: usize, trials: u64, seed: u64) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for r in 1..=n {
        let valid: BTreeSet<IndexTuple> = horn_triples(n, r)?.into_iter().collect();
        let all = all_triples(n, r);
        let res = hermitian_falsify_many(&all, trials, seed)?;
        for (t, w) in all.into_iter().zip(res) {
            let in_horn_set = valid.contains(&t);
            let falsified = w.is_some();
            if in_horn_set == falsified {
                out.push(Discrepancy {
                    tuple: t,
                    in_horn_set,
                    falsified,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn t(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> IndexTuple {
        IndexTuple::triple(n, i.to_vec(), j.to_vec(), k.to_vec())
    }

    fn weyl(n: usize) -> Vec<IndexTuple> {
        let mut v = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i + 1 >= j + k {
                        v.push(t(n, &[i], &[j], &[k]));
                    }
                }
            }
        }
        v.sort();
        v
    }

    #[test]
    fn r1_is_weyl() {
        for n in 1..=6 {
            assert_eq!(horn_triples(n, 1).unwrap(), weyl(n), "n = {n}");
        }
        let two: Vec<_> = horn_triples(2, 1)
            .unwrap()
            .into_iter()
            .map(|x| (x.i[0], x.j[0], x.k[0]))
            .collect();
        assert_eq!(two, vec![(1, 1, 1), (2, 1, 1), (2, 1, 2), (2, 2, 1)]);
    }

    #[test]
    fn full_rank_is_trace() {
        assert_eq!(horn_triples(2, 2).unwrap(), vec![t(2, &[1, 2], &[1, 2], &[1, 2])]);
        assert_eq!(horn_triples(4, 4).unwrap().len(), 1);
    }

    #[test]
    fn ky_fan_is_included() {
        // λ₁+λ₂ of A+B ≤ λ₁+λ₂ of A plus λ₁+λ₂ of B
        let h = horn_triples(4, 2).unwrap();
        assert!(h.contains(&t(4, &[1, 2], &[1, 2], &[1, 2])));
        assert!(!h.contains(&t(4, &[1, 2], &[3, 4], &[3, 4])));
    }

    #[test]
    fn unsupported() {
        assert_eq!(horn_triples(7, 1), Err(Error::UnsupportedSize(7)));
    }

    #[test]
    fn tuple_json() {
        let x = IndexTuple {
            n: 3,
            i: vec![1],
            l: Some(vec![1]),
            j: vec![1],
            k: vec![1],
        };
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":3,"I":[1],"L":[1],"J":[1],"K":[1]}"#);
        assert_eq!(serde_json::from_str::<IndexTuple>(&s).unwrap(), x);
        let y: IndexTuple = serde_json::from_str(r#"{"n":2,"I":[2],"J":[1],"K":[1]}"#).unwrap();
        assert_eq!(y.l, None);
    }

    #[test]
    fn char_poly_matches_diagonal() {
        let m = CMat::diag(&[int(2), int(-1), int(3)]);
        assert_eq!(m.char_poly(), RatPoly::from_roots(&[int(2), int(-1), int(3)]));
        // [[1, i], [−i, 1]] has eigenvalues 0 and 2
        let h = CMat {
            n: 2,
            re: vec![int(1), int(0), int(0), int(1)],
            im: vec![int(0), int(1), int(-1), int(0)],
        };
        assert!(h.is_hermitian());
        assert_eq!(h.char_poly(), RatPoly::from_ints(&[0, -2, 1]));
    }

    #[test]
    fn falsify_non_weyl() {
        let w = hermitian_falsify(&t(2, &[1], &[1], &[2]), 200, 7).unwrap();
        let w = w.expect("λ₁(A+B) ≤ λ₁(A) + λ₂(B) is false");
        assert!(w.float_gap > FLOAT_TOL);
        assert_eq!(
            exact_triple_verdict(&w.tuple, &w.a, &w.b, &rat::pow2(-40)).unwrap(),
            Trilean::False
        );
        assert!(hermitian_falsify(&t(2, &[2], &[1], &[1]), 2000, 7).unwrap().is_none());
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_pair(3, 5, 11), sample_pair(3, 5, 11));
        assert_ne!(sample_pair(3, 5, 11), sample_pair(3, 5, 12));
    }

    #[test]
    fn diagonal_pair_counterexample() {
        // A = diag(0,0), B = diag(1,0): λ₁(A+B) = 1 > 0 = λ₁(A) + λ₂(B)
        let a = CMat::diag(&[int(0), int(0)]);
        let b = CMat::diag(&[int(1), int(0)]);
        let v = exact_triple_verdict(&t(2, &[1], &[1], &[2]), &a, &b, &rat::pow2(-40)).unwrap();
        assert_eq!(v, Trilean::False);
    }
}
