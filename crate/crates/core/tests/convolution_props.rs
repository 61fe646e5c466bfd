use freeconv::lab::machinery::pinch_decomposition;
use freeconv::multiaffine::{boxplus_gamma, MultiPoly};
use freeconv::poly::{apply_u_alpha, boxplus, u_alpha};
use freeconv::rat::{self, Rat};
use freeconv::roots::is_real_rooted;
use freeconv::RatPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn fact(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

// Coefficient form: with p = Σ (−1)ⁱ aᵢ tⁿ⁻ⁱ and q = Σ (−1)ʲ bⱼ tⁿ⁻ʲ,
// the k-th signed coefficient of p ⊞ⁿ q is
// Σ_{i+j=k} (n−i)!(n−j)! / (n!(n−k)!) · aᵢ bⱼ.
fn oracle_boxplus(p: &[Rat], q: &[Rat], n: usize) -> Vec<Rat> {
    let signed = |c: &[Rat], i: usize| {
        let v = c.get(n - i).cloned().unwrap_or_else(Rat::zero);
        if i % 2 == 0 {
            v
        } else {
            -v
        }
    };
    let mut out = vec![Rat::zero(); n + 1];
    for k in 0..=n {
        let mut s = Rat::zero();
        for i in 0..=k {
            let j = k - i;
            let w = Rat::new(fact(n - i) * fact(n - j), fact(n) * fact(n - k));
            s += w * signed(p, i) * signed(q, j);
        }
        out[n - k] = if k % 2 == 0 { s } else { -s };
    }
    out
}

fn rat_s() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(a, b)| rat::ratio(a, b))
}

fn coeffs_s(max_len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(rat_s(), 1..=max_len)
}

/// `(n, p)` with `p` real-rooted of degree `n`, built from rational roots.
fn rooted_s() -> impl Strategy<Value = (usize, Vec<Rat>)> {
    (1usize..=8).prop_flat_map(|n| (Just(n), prop::collection::vec(rat_s(), n)))
}

fn pair_s() -> impl Strategy<Value = (usize, RatPoly, RatPoly)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(rat_s(), n).prop_map(|r| RatPoly::from_roots(&r)),
            prop::collection::vec(rat_s(), n).prop_map(|r| RatPoly::from_roots(&r)),
        )
    })
}

fn padded(p: &RatPoly, n: usize) -> Vec<Rat> {
    (0..=n).map(|i| p.coeff(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matches_coefficient_oracle(n in 1usize..=8, a in coeffs_s(9), b in coeffs_s(9)) {
        let a: Vec<Rat> = a.into_iter().take(n + 1).collect();
        let b: Vec<Rat> = b.into_iter().take(n + 1).collect();
        let p = RatPoly::from_coeffs(a.clone());
        let q = RatPoly::from_coeffs(b.clone());
        let got = boxplus(&p, &q, n).unwrap();
        prop_assert_eq!(padded(&got, n), oracle_boxplus(&a, &b, n));
    }

    #[test]
    fn symmetry_and_identity((n, p, q) in pair_s()) {
        prop_assert_eq!(boxplus(&p, &q, n).unwrap(), boxplus(&q, &p, n).unwrap());
        prop_assert_eq!(boxplus(&p, &RatPoly::x_pow(n), n).unwrap(), p);
    }

    #[test]
    fn shift_invariance((n, p, q) in pair_s(), a in rat_s()) {
        let base = boxplus(&p, &q, n).unwrap().shift(&a);
        prop_assert_eq!(boxplus(&p.shift(&a), &q, n).unwrap(), base.clone());
        prop_assert_eq!(boxplus(&p, &q.shift(&a), n).unwrap(), base);
    }

    #[test]
    fn scale_invariance((n, p, q) in pair_s(), a in rat_s()) {
        let lhs = boxplus(&p.scale_arg(&a), &q.scale_arg(&a), n).unwrap();
        let an = (0..n).fold(Rat::one(), |acc, _| acc * &a);
        let rhs = boxplus(&p, &q, n).unwrap().scale_arg(&a).scale(&an);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_invariance((n, p, q) in pair_s()) {
        let d = boxplus(&p, &q, n).unwrap().derivative(1);
        prop_assert_eq!(boxplus(&p.derivative(1), &q, n).unwrap(), d.clone());
        prop_assert_eq!(boxplus(&p, &q.derivative(1), n).unwrap(), d);
    }

    #[test]
    fn real_rootedness_and_root_sums((n, p, q) in pair_s()) {
        let s = boxplus(&p, &q, n).unwrap();
        prop_assert!(is_real_rooted(&s));
        prop_assert_eq!(s.root_sum().unwrap(), p.root_sum().unwrap() + q.root_sum().unwrap());
    }

    #[test]
    fn u_alpha_operator((n, roots) in rooted_s(), num in 1i64..=12, den in 1i64..=4) {
        let alpha = rat::ratio(num, den);
        let p = RatPoly::from_roots(&roots);
        prop_assert_eq!(apply_u_alpha(&p, &alpha), boxplus(&p, &u_alpha(n, &alpha), n).unwrap());
    }

    #[test]
    fn pinch_parts_sum_to_p((n, roots) in rooted_s(), t in 0i64..=16) {
        let p = RatPoly::from_roots(&roots);
        prop_assume!(n >= 2);
        let top = roots.iter().max().unwrap();
        prop_assume!(roots.iter().any(|r| r != top));
        let eps = rat::pow2(-20);
        let probe = pinch_decomposition(&p, top, &eps).unwrap();
        let mu = &probe.mu0 + (&probe.mu1 - &probe.mu0) * rat::ratio(t, 16);
        let d = pinch_decomposition(&p, &mu, &eps).unwrap();
        prop_assert_eq!(&d.p_tilde + &d.p_hat, p);
        if mu > d.mu0 {
            prop_assert_eq!(d.p_hat.deg(), n - 1);
            prop_assert_eq!(d.rho_above_lambda1, Some(true));
        } else {
            prop_assert_eq!(d.p_hat.degree().unwrap_or(0), n - 2);
        }
    }

    #[test]
    fn symbol_identity(g in prop::collection::vec(0u32..=2, 1..=3), ys in prop::collection::vec(rat_s(), 3), ws in prop::collection::vec(rat_s(), 3)) {
        let k = g.len();
        let (y, w) = (&ys[..k], &ws[..k]);
        let yw: Vec<Rat> = y.iter().zip(w).map(|(a, b)| a + b).collect();
        let lhs = boxplus_gamma(
            &MultiPoly::linear_power(g.clone(), y).unwrap(),
            &MultiPoly::linear_power(g.clone(), w).unwrap(),
        ).unwrap();
        let gf: Rat = g.iter().map(|&x| Rat::from_integer(fact(x as usize))).product();
        prop_assert_eq!(lhs, MultiPoly::linear_power(g, &yw).unwrap().scale(&gf));
    }

    #[test]
    fn univariate_bridge((n, p, q) in pair_s()) {
        let mv = boxplus_gamma(&MultiPoly::from_univariate(&p), &MultiPoly::from_univariate(&q)).unwrap();
        let uv = boxplus(&p, &q, n).unwrap().scale(&Rat::from_integer(fact(n)));
        prop_assert_eq!(mv.to_univariate().unwrap(), uv);
    }
}
