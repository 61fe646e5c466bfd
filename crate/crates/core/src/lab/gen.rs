//! Random real-rooted polynomials with rational roots.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{self, RatPoly};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    /// iid roots.
    Uniform,
    /// Roots in close pairs.
    Clustered,
    /// Arithmetic progression with random start and step.
    Progression,
    /// One root far above the rest.
    Dominant,
    /// `u_α = xⁿ − nα xⁿ⁻¹`.
    UAlpha,
    /// `xⁿ`, the unit of the convolution.
    Identity,
    /// Each draw picks one of the above (mostly iid).
    Mixed,
}

impl std::str::FromStr for Distribution {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| crate::Error::Parse(format!("unknown distribution `{s}`")))
    }
}

/// Root ranges: numerators in `[-num_bound, num_bound]`, denominators in
/// `1..=den_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub distribution: Distribution,
    pub num_bound: i64,
    pub den_bound: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            distribution: Distribution::Mixed,
            num_bound: 8,
            den_bound: 4,
        }
    }
}

fn rational(rng: &mut impl Rng, cfg: &GenConfig) -> Rat {
    let d = rng.random_range(1..=cfg.den_bound.max(1));
    let b = cfg.num_bound.max(1);
    rat::ratio(rng.random_range(-b..=b), d)
}

/// `count` roots drawn from `dist`.
pub fn random_roots(rng: &mut impl Rng, count: usize, cfg: &GenConfig) -> Vec<Rat> {
    let dist = match cfg.distribution {
        Distribution::Mixed => {
            let pick = [
                Distribution::Uniform,
                Distribution::Uniform,
                Distribution::Uniform,
                Distribution::Clustered,
                Distribution::Progression,
                Distribution::Dominant,
            ];
            *pick.choose(rng).expect("non-empty")
        }
        d => d,
    };
    let cfg1 = GenConfig {
        distribution: dist,
        ..cfg.clone()
    };
    match dist {
        Distribution::Uniform | Distribution::Mixed => {
            (0..count).map(|_| rational(rng, &cfg1)).collect()
        }
        Distribution::Clustered => {
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let c = rational(rng, &cfg1);
                let gap = rat::ratio(rng.random_range(0..=2), 64 * cfg1.den_bound.max(1));
                out.push(c.clone());
                if out.len() < count {
                    out.push(c + gap);
                }
            }
            out
        }
        Distribution::Progression => {
            let a = rational(rng, &cfg1);
            let step = rat::ratio(rng.random_range(0..=3), cfg1.den_bound.max(1));
            (0..count).map(|k| &a + &step * rat::int(k as i64)).collect()
        }
        Distribution::Dominant => {
            let mut v: Vec<Rat> = (0..count).map(|_| rational(rng, &cfg1)).collect();
            if let Some(first) = v.first_mut() {
                *first = rat::int(4 * cfg1.num_bound.max(1)) + rational(rng, &cfg1);
            }
            v
        }
        Distribution::UAlpha => {
            let alpha = random_alpha(rng);
            let mut v = vec![Rat::from_integer(0.into()); count];
            if let Some(first) = v.first_mut() {
                *first = alpha * rat::int(count as i64);
            }
            v
        }
        Distribution::Identity => vec![Rat::from_integer(0.into()); count],
    }
}

/// Positive `α` with a small denominator.
pub fn random_alpha(rng: &mut impl Rng) -> Rat {
    rat::ratio(rng.random_range(1..=12), rng.random_range(1..=4))
}

/// Monic real-rooted polynomial of the given degree with ambient `n`.
pub fn random_real_rooted(rng: &mut impl Rng, degree: usize, n: usize, cfg: &GenConfig) -> RatPoly {
    if cfg.distribution == Distribution::UAlpha && degree == n {
        return poly::u_alpha(n, &random_alpha(rng));
    }
    let roots = random_roots(rng, degree, cfg);
    RatPoly::from_roots(&roots)
        .with_ambient(n)
        .expect("degree ≤ n")
}

/// Degrees `(dp, dq, dr)` in `1..=n` with total deficiency below `n`,
/// full degree most of the time.
pub fn random_degrees(rng: &mut impl Rng, n: usize, allow_deficient: bool) -> [usize; 3] {
    if !allow_deficient || n == 1 || rng.random_bool(0.6) {
        return [n; 3];
    }
    loop {
        let d = [0, 1, 2].map(|_| n - rng.random_range(0..n));
        let deficiency: usize = d.iter().map(|x| n - x).sum();
        if deficiency < n {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::is_real_rooted;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_distribution_is_real_rooted() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dist in [
            Distribution::Uniform,
            Distribution::Clustered,
            Distribution::Progression,
            Distribution::Dominant,
            Distribution::UAlpha,
            Distribution::Identity,
            Distribution::Mixed,
        ] {
            let cfg = GenConfig {
                distribution: dist,
                ..GenConfig::default()
            };
            for n in 1..=6 {
                let p = random_real_rooted(&mut rng, n, n, &cfg);
                assert_eq!(p.deg(), n);
                assert!(p.is_monic());
                assert!(is_real_rooted(&p), "{dist:?} {p}");
            }
        }
    }

    #[test]
    fn degrees_respect_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let d = random_degrees(&mut rng, 4, true);
            assert!(d.iter().all(|&x| (1..=4).contains(&x)));
            assert!(d.iter().map(|x| 4 - x).sum::<usize>() < 4);
        }
    }

    #[test]
    fn distribution_names() {
        assert_eq!("u-alpha".parse::<Distribution>().unwrap(), Distribution::UAlpha);
        assert!("bogus".parse::<Distribution>().is_err());
    }
}
