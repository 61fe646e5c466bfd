//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that every line is printed even when
//! all criteria pass. Exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use freeconv::horn::{self, CMat};
use freeconv::interval::Trilean;
use freeconv::lab::gen::{self, Distribution, GenConfig};
use freeconv::lab::search::trial_rng;
use freeconv::lab::{machinery, verify};
use freeconv::majorization::pinch;
use freeconv::multiaffine::{self, MultiPoly};
use freeconv::poly::{self, boxplus};
use freeconv::rat::{self, Rat};
use freeconv::roots;
use freeconv::RatPoly;
use num_traits::{One, Zero};
use rand::Rng;

/// Verdict precision used throughout.
fn eps() -> Rat {
    rat::pow2(-40)
}

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome { ok, note: note.into() }
}

#[derive(Default)]
struct Tally {
    verified: usize,
    indeterminate: usize,
    violated: usize,
}

impl Tally {
    fn add(&mut self, t: &Trilean) {
        match t {
            Trilean::True => self.verified += 1,
            Trilean::False => self.violated += 1,
            Trilean::Indeterminate(_) => self.indeterminate += 1,
        }
    }

    fn text(&self) -> String {
        format!(
            "verified {}, indeterminate {}, violated {}",
            self.verified, self.indeterminate, self.violated
        )
    }
}

fn cfg(d: Distribution) -> GenConfig {
    GenConfig {
        distribution: d,
        ..GenConfig::default()
    }
}

// Multiaffine ⊞ from the definition, on plain coefficient maps keyed by
// variable subsets: (p ⊞ q)(x) = Σ_S ∂^S p(x) · [x^{[n]∖S}] q.
fn oracle_mv_boxplus(p: &BTreeMap<u8, Rat>, q: &BTreeMap<u8, Rat>, n: u32) -> BTreeMap<u8, Rat> {
    let full: u8 = (1u8 << n) - 1;
    let mut out: BTreeMap<u8, Rat> = BTreeMap::new();
    for s in 0..=full {
        let qc = q.get(&(full & !s)).cloned().unwrap_or_else(Rat::zero);
        if qc.is_zero() {
            continue;
        }
        for (&m, c) in p {
            if m & s == s {
                *out.entry(m & !s).or_insert_with(Rat::zero) += c * &qc;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn to_mask(p: &MultiPoly) -> BTreeMap<u8, Rat> {
    p.terms()
        .iter()
        .map(|(mu, c)| {
            let m = mu.iter().enumerate().fold(0u8, |acc, (i, &e)| acc | ((e as u8) << i));
            (m, c.clone())
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = multiaffine::counterexample_p();
    let sq = multiaffine::boxplus_gamma(&p, &p).unwrap();
    let value = sq.meval(&[rat::int(-2), rat::int(-1), rat::int(-1)]);
    let elapsed = start.elapsed();
    // published expansion, keyed by variable mask (x1 = bit 0)
    let r = rat::ratio;
    let published: BTreeMap<u8, Rat> = [
        (0b111, r(64, 441)),
        (0b011, r(1280, 441)),
        (0b101, r(144, 49)),
        (0b110, r(16, 21)),
        (0b001, r(4768, 147)),
        (0b010, r(32, 3)),
        (0b100, r(226, 21)),
        (0b000, r(1520, 21)),
    ]
    .into_iter()
    .collect();
    let coeffs_ok = to_mask(&sq) == published;
    let oracle_ok = oracle_mv_boxplus(&to_mask(&p), &to_mask(&p), 3) == published;
    let value_ok = value == r(-1450, 441);
    let fast = elapsed < Duration::from_secs(1);
    outcome(
        coeffs_ok && oracle_ok && value_ok && fast,
        format!(
            "coefficients {}, oracle {}, value {} (expected -1450/441), {:?}",
            if coeffs_ok { "match" } else { "MISMATCH" },
            if oracle_ok { "agrees" } else { "DISAGREES" },
            rat::format(&value),
            elapsed
        ),
    )
}

fn criterion_2() -> Outcome {
    let p = multiaffine::counterexample_p();
    let g = vec![1u32, 1, 1];
    let lin = |c: i64, terms: &[(usize, i64)]| {
        let mut l = MultiPoly::constant(g.clone(), rat::int(c));
        for &(v, a) in terms {
            let mut mu = vec![0, 0, 0];
            mu[v] = 1;
            l.add_term(mu, rat::int(a)).unwrap();
        }
        l
    };
    let sq = |s: Rat, l: MultiPoly| l.mul(&l).unwrap().scale(&s);
    let want = [
        ((0, 1), sq(rat::ratio(1, 21), lin(4, &[(2, 7)]))),
        ((0, 2), sq(rat::ratio(4, 7), lin(1, &[(1, 2)]))),
        ((1, 2), sq(rat::ratio(4, 147), lin(21, &[(0, 22)]))),
    ];
    // oracle: for multiaffine p, ∂ᵢp(x) = p(x; xᵢ=1) − p(x; xᵢ=0), so Δᵢⱼ can
    // be evaluated from values of p alone
    let at = |x: &[Rat], fix: &[(usize, i64)]| {
        let mut y = x.to_vec();
        for &(v, c) in fix {
            y[v] = rat::int(c);
        }
        p.meval(&y)
    };
    let d1 = |x: &[Rat], i: usize| at(x, &[(i, 1)]) - at(x, &[(i, 0)]);
    let d2 = |x: &[Rat], i: usize, j: usize| {
        at(x, &[(i, 1), (j, 1)]) - at(x, &[(i, 1), (j, 0)]) - at(x, &[(i, 0), (j, 1)]) + at(x, &[(i, 0), (j, 0)])
    };
    let mut bad = Vec::new();
    for ((i, j), w) in &want {
        let lib = multiaffine::rayleigh_difference(&p, *i, *j);
        let mut ok = &lib == w;
        for t in 0..25i64 {
            let x = [rat::ratio(t - 12, 5), rat::ratio(7 - t, 3), rat::ratio(t * t - 40, 11)];
            let oracle = d1(&x, *i) * d1(&x, *j) - p.meval(&x) * d2(&x, *i, *j);
            ok &= oracle == w.meval(&x);
        }
        if !ok {
            bad.push(format!("delta_{}{}", i + 1, j + 1));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "3/3 exact".to_string() } else { bad.join(", ") })
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let e = eps();
    let mut tally = Tally::default();
    let mut oracle_conflicts = 0;
    let (mut tight, mut loose) = (0, 0);
    for trial in 0..200u64 {
        let mut rng = trial_rng(3, trial);
        let n = 1 + (trial % 6) as usize;
        let g = cfg(Distribution::Mixed);
        let p = gen::random_real_rooted(&mut rng, n, n, &g);
        let q = gen::random_real_rooted(&mut rng, n, n, &g);
        for alpha in [rat::ratio(1, 4), rat::int(1), rat::int(3)] {
            let v = verify::verify_mss_ualpha(&p, &q, &alpha, n, &e).unwrap().verdict;
            // oracle: λ₁(U_α p) as the inverse Cauchy transform at 1/α
            let w = Rat::one() / &alpha;
            let k = |x: &RatPoly| roots::cauchy_inverse(x, &w, &e).unwrap().interval();
            let lhs = &k(&boxplus(&p, &q, n).unwrap()) + &freeconv::Interval::point(&alpha * rat::int(n as i64));
            let rhs = &k(&p) + &k(&q);
            let oracle = lhs.le(&rhs);
            if (oracle.is_true() && v.is_false()) || (oracle.is_false() && !v.is_false()) {
                oracle_conflicts += 1;
            }
            if v.is_indeterminate() {
                // allowed only when the gap is below the working precision:
                // at 2^-80 the case must verify with |lhs - rhs| < 2^-38
                let fine = verify::verify_mss_ualpha(&p, &q, &alpha, n, &rat::pow2(-80)).unwrap();
                let gap: freeconv::Interval =
                    serde_json::from_value(fine.detail["lhs_minus_rhs"].clone()).unwrap();
                if fine.verdict.is_true() && gap.lo > -rat::pow2(-38) {
                    tight += 1;
                } else {
                    loose += 1;
                }
            }
            tally.add(&v);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        tally.violated == 0
            && loose == 0
            && oracle_conflicts == 0
            && elapsed < Duration::from_secs(120),
        format!(
            "{} (gap below eps: {tight}, undecided otherwise: {loose}), oracle conflicts {oracle_conflicts}, {elapsed:?}",
            tally.text()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let e = eps();
    let mut tally = Tally::default();
    let mut deficient = 0;
    let dists = [
        Distribution::Mixed,
        Distribution::Clustered,
        Distribution::UAlpha,
        Distribution::Progression,
        Distribution::Identity,
    ];
    for trial in 0..500u64 {
        let mut rng = trial_rng(4, trial);
        let n = 1 + (trial % 6) as usize;
        let d = gen::random_degrees(&mut rng, n, true);
        if d.iter().any(|&x| x < n) {
            deficient += 1;
        }
        let polys: Vec<RatPoly> = d
            .iter()
            .enumerate()
            .map(|(i, &deg)| {
                let dist = if i == 2 { dists[(trial % 5) as usize] } else { Distribution::Mixed };
                gen::random_real_rooted(&mut rng, deg, n, &cfg(dist))
            })
            .collect();
        let v = verify::verify_submodularity(&polys[0], &polys[1], &polys[2], n, &e)
            .unwrap()
            .verdict;
        tally.add(&v);
    }
    let elapsed = start.elapsed();
    outcome(
        tally.violated == 0 && deficient > 0 && elapsed < Duration::from_secs(300),
        format!("{}, degree-deficient {}, {:?}", tally.text(), deficient, elapsed),
    )
}

fn criterion_5() -> Outcome {
    let e = eps();
    let mut conv = Tally::default();
    let mut pres = Tally::default();
    for trial in 0..500u64 {
        let mut rng = trial_rng(5, trial);
        let n = 1 + (trial % 6) as usize;
        let g = GenConfig::default();
        let p = gen::random_real_rooted(&mut rng, n, n, &g);
        let q = gen::random_real_rooted(&mut rng, n, n, &g);
        conv.add(&verify::verify_majorization_conv(&p, &q, n, &e).unwrap().verdict);

        // λ(p') ≺ λ(q') by construction: p' is a chain of pinches of q'
        let mut roots_q = gen::random_roots(&mut rng, n, &g);
        roots_q.sort_by(|a, b| b.cmp(a));
        let mut roots_p = roots_q.clone();
        for _ in 0..rng.random_range(1..=3) {
            if n < 2 {
                break;
            }
            let j = rng.random_range(1..n);
            let k = rng.random_range(j + 1..=n);
            let (hi, lo) = if roots_p[j - 1] >= roots_p[k - 1] { (j, k) } else { (k, j) };
            let gap = &roots_p[hi - 1] - &roots_p[lo - 1];
            let alpha = gap * rat::ratio(rng.random_range(0..=4), 8);
            roots_p = pinch(&roots_p, hi, lo, &alpha).unwrap();
        }
        let r = gen::random_real_rooted(&mut rng, n, n, &g);
        let v = verify::verify_maj_preservation(
            &RatPoly::from_roots(&roots_p),
            &RatPoly::from_roots(&roots_q),
            &r,
            n,
            &e,
        )
        .unwrap()
        .verdict;
        pres.add(&v);
    }
    outcome(
        conv.violated == 0 && pres.violated == 0,
        format!("convolution: {}; preservation: {}", conv.text(), pres.text()),
    )
}

fn criterion_6() -> Outcome {
    let d = |a: i64, b: i64| CMat::diag(&[rat::int(a), rat::int(b)]);
    let rep = verify::verify_matrix_submodularity(&[d(2, 0), d(2, 0), d(0, 2)], &eps()).unwrap();
    let point = |k: &str| rep.detail[k]["lo"] == rep.detail[k]["hi"];
    let ok = rep.verdict == Trilean::False
        && rep.detail["lhs"]["lo"] == "6/1"
        && rep.detail["rhs"]["lo"] == "4/1"
        && point("lhs")
        && point("rhs");
    outcome(
        ok,
        format!("lhs {} rhs {} {}", rep.detail["lhs"]["lo"], rep.detail["rhs"]["lo"], rep.status),
    )
}

fn criterion_7() -> Outcome {
    let mut falsified = 0;
    let mut total = 0;
    let mut weyl_ok = true;
    for n in 1..=4 {
        for r in 1..=n {
            let ts = horn::horn_triples(n, r).unwrap();
            total += ts.len();
            let res = horn::hermitian_falsify_many(&ts, 10_000, 7).unwrap();
            falsified += res.iter().filter(|w| w.is_some()).count();
            if r == 1 {
                let got: BTreeSet<(usize, usize, usize)> =
                    ts.iter().map(|t| (t.i[0], t.j[0], t.k[0])).collect();
                let mut want = BTreeSet::new();
                for i in 1..=n {
                    for j in 1..=n {
                        for k in 1..=n {
                            if i + 1 >= j + k {
                                want.insert((i, j, k));
                            }
                        }
                    }
                }
                weyl_ok &= got == want;
            }
        }
    }
    outcome(
        falsified == 0 && weyl_ok,
        format!(
            "{total} triples for n <= 4, falsified {falsified}, r = 1 equals Weyl set: {weyl_ok}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut fail = |name: &'static str, ok: bool| {
        if !ok {
            *failures.entry(name).or_default() += 1;
        }
    };
    let g = GenConfig::default();
    for trial in 0..1000u64 {
        let mut rng = trial_rng(8, trial);
        let n = 1 + (trial % 8) as usize;
        let p = gen::random_real_rooted(&mut rng, n, n, &g);
        let q = gen::random_real_rooted(&mut rng, n, n, &g);
        let a = rat::ratio(rng.random_range(-6..=6), rng.random_range(1..=3));
        let s = boxplus(&p, &q, n).unwrap();
        fail("symmetry", s == boxplus(&q, &p, n).unwrap());
        fail("shift", boxplus(&p.shift(&a), &q, n).unwrap() == s.shift(&a));
        fail("shift-right", boxplus(&p, &q.shift(&a), n).unwrap() == s.shift(&a));
        let an = (0..n).fold(Rat::one(), |acc, _| acc * &a);
        fail(
            "scale",
            boxplus(&p.scale_arg(&a), &q.scale_arg(&a), n).unwrap() == s.scale_arg(&a).scale(&an),
        );
        fail("derivative", boxplus(&p.derivative(1), &q, n).unwrap() == s.derivative(1));
        fail("identity", boxplus(&p, &RatPoly::x_pow(n), n).unwrap() == p);
        let alpha = gen::random_alpha(&mut rng);
        fail(
            "u-alpha",
            poly::apply_u_alpha(&p, &alpha) == boxplus(&p, &poly::u_alpha(n, &alpha), n).unwrap(),
        );
        // p̃ + p̂ = p on a monic polynomial with two distinct roots
        if n >= 2 {
            let mut rs = gen::random_roots(&mut rng, n, &g);
            rs[1] = &rs[0] - rat::ratio(rng.random_range(1..=8), 2);
            let m = RatPoly::from_roots(&rs);
            let probe = machinery::pinch_decomposition(&m, &rs.iter().max().unwrap().clone(), &eps()).unwrap();
            let mu = &probe.mu0 + (&probe.mu1 - &probe.mu0) * rat::ratio(rng.random_range(0..=8), 8);
            let d = machinery::pinch_decomposition(&m, &mu, &eps()).unwrap();
            fail("pinch-sum", &d.p_tilde + &d.p_hat == m);
        }
        // symbol identity (x+y)^γ ⊞ (x+w)^γ = γ!·(x+y+w)^γ
        let k = rng.random_range(1..=3usize);
        let gamma: Vec<u32> = (0..k).map(|_| rng.random_range(0..=2)).collect();
        let y: Vec<Rat> = (0..k).map(|_| rat::ratio(rng.random_range(-5..=5), 2)).collect();
        let w: Vec<Rat> = (0..k).map(|_| rat::ratio(rng.random_range(-5..=5), 3)).collect();
        let yw: Vec<Rat> = y.iter().zip(&w).map(|(a, b)| a + b).collect();
        let gf: Rat = gamma.iter().map(|&x| Rat::from_integer(rat::factorial(x as usize))).product();
        let lhs = multiaffine::boxplus_gamma(
            &MultiPoly::linear_power(gamma.clone(), &y).unwrap(),
            &MultiPoly::linear_power(gamma.clone(), &w).unwrap(),
        )
        .unwrap();
        fail("symbol", lhs == MultiPoly::linear_power(gamma, &yw).unwrap().scale(&gf));
        // normalisation bridge: one-variable ⊞^γ is n!·⊞ⁿ
        let mv = multiaffine::boxplus_gamma(&MultiPoly::from_univariate(&p), &MultiPoly::from_univariate(&q))
            .unwrap();
        fail(
            "bridge",
            mv.to_univariate().unwrap() == s.scale(&Rat::from_integer(rat::factorial(n))),
        );
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        if failures.is_empty() {
            format!("1000 instances, all identities exact, {elapsed:?}")
        } else {
            format!("failures {failures:?}, {elapsed:?}")
        },
    )
}

fn criterion_9() -> Outcome {
    let e = eps();
    let (mut above, mut mono, mut prop, mut steps) = (0, 0, 0, 0);
    let g = GenConfig::default();
    for trial in 0..100u64 {
        let mut rng = trial_rng(9, trial);
        let n = 2 + (trial % 4) as usize;
        let mut rs = gen::random_roots(&mut rng, n, &g);
        if rs.iter().all(|x| *x == rs[0]) {
            rs[0] += Rat::one();
        }
        let p = RatPoly::from_roots(&rs);
        let r = gen::random_real_rooted(&mut rng, n, n, &g);
        let m = machinery::find_mu_star(&p, &r, n, &e).unwrap();
        above += m.above_mu0.is_true() as usize;
        mono += m.monotone.is_true() as usize;
        prop += m.proposition.is_true() as usize;
        steps += m.steps.len();
    }
    outcome(
        above == 100 && mono == 100 && prop == 100,
        format!(
            "mu* > mu0 certified {above}/100, monotone {mono}/100, equalities within eps {prop}/100, {steps} evaluations"
        ),
    )
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_freeconv"))
        .args(args)
        .env("FREECONV_THREADS", "2")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let dir = tempfile::tempdir().unwrap();
    for (st, n, trials) in [("2.4", "2", "150"), ("2.3", "3", "150"), ("2.5", "3", "60")] {
        let args = ["search", "--statement", st, "--n", n, "--trials", trials, "--seed", "7"];
        let (a, ca) = run_cli(&args);
        let (b, cb) = run_cli(&args);
        let same = a == b && ca == 0 && cb == 0;
        ok &= same;
        let out: serde_json::Value = serde_json::from_slice(&a).unwrap_or_default();
        let mut rechecked = 0;
        for t in out["reports"].as_array().cloned().unwrap_or_default() {
            if t["report"]["status"] != "ViolatedCertified" {
                continue;
            }
            let path = dir.path().join(format!("{st}-{}.json", t["trial"]));
            std::fs::write(&path, serde_json::to_vec(&t["report"]).unwrap()).unwrap();
            let (_, code) = run_cli(&["verify", "--in", path.to_str().unwrap()]);
            ok &= code == 3;
            rechecked += 1;
        }
        notes.push(format!(
            "{st}: identical {same}, violations re-verified {rechecked}/{}",
            out["summary"]["violated"]
        ));
    }
    outcome(ok, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("counterexample reproduction", criterion_1),
        ("strongly Rayleigh certificates", criterion_2),
        ("MSS specialization", criterion_3),
        ("submodularity suite", criterion_4),
        ("majorization suite", criterion_5),
        ("matrix counterexample", criterion_6),
        ("Horn oracle consistency", criterion_7),
        ("algebraic identities", criterion_8),
        ("pinch machinery", criterion_9),
        ("search determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {:>2} {name}: {} ({:.1}s)",
            k + 1,
            o.note,
            start.elapsed().as_secs_f64()
        );
        failed += (!o.ok) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
