//! Empirical d.f., Kolmogorov–Smirnov statistics and grid sup-norms.
//!
//! Critical values are the asymptotic ones, `c(alpha) / sqrt(n)`. Every
//! Monte-Carlo check in this crate runs at `n >= 10^5`, where the asymptotic
//! band is accurate.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::MaxLaw;

/// Level of every KS test in the crate.
pub const KS_ALPHA: f64 = 0.01;

/// Asymptotic Kolmogorov quantile at the 1% level.
pub const KS_C_01: f64 = 1.628;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    /// Size of the second sample for two-sample tests.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub critical_value: f64,
    pub pass: bool,
    pub alpha_level: f64,
}

impl KsReport {
    fn new(statistic: f64, n: usize, m: Option<usize>) -> Self {
        let critical_value = match m {
            None => KS_C_01 / (n as f64).sqrt(),
            Some(m) => KS_C_01 * ((n + m) as f64 / (n as f64 * m as f64)).sqrt(),
        };
        KsReport {
            statistic,
            n,
            m,
            critical_value,
            pass: statistic < critical_value,
            alpha_level: KS_ALPHA,
        }
    }
}

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    v
}

/// Fraction of `samples` at or below `x`.
pub fn ecdf(samples: &[f64], x: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Empty("ecdf"));
    }
    let below = samples.iter().filter(|&&s| s <= x).count();
    Ok(below as f64 / samples.len() as f64)
}

/// One-sample KS test of `samples` against a continuous d.f.
pub fn ks_one_sample<F>(samples: &[f64], cdf: F) -> Result<KsReport>
where
    F: Fn(f64) -> f64,
{
    if samples.is_empty() {
        return Err(Error::Empty("one-sample KS test"));
    }
    let xs = sorted(samples);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let hi = (i + 1) as f64 / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi.abs()).max(lo.abs());
    }
    Ok(KsReport::new(d, xs.len(), None))
}

/// Two-sample KS test: sup distance between the two empirical d.f.s.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("two-sample KS test"));
    }
    let xa = sorted(a);
    let xb = sorted(b);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        // step past every tie at x in both samples before comparing
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(KsReport::new(d, xa.len(), Some(xb.len())))
}

/// `max |f(x) - g(x)|` over the grid.
pub fn sup_norm_grid<F, G>(f: F, g: G, grid: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if grid.is_empty() {
        return Err(Error::Empty("sup-norm grid"));
    }
    Ok(grid
        .iter()
        .map(|&x| (f(x) - g(x)).abs())
        .fold(0.0, f64::max))
}

/// `count` points of `law`, evenly spaced in probability from 0.001 to 0.999.
pub fn quantile_grid(law: &MaxLaw, count: usize) -> Vec<f64> {
    let (lo, hi) = (0.001, 0.999);
    match count {
        0 => Vec::new(),
        1 => vec![law.quantile(0.5).expect("0.5 is inside (0, 1)")],
        _ => (0..count)
            .map(|i| {
                let u = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                law.quantile(u).expect("grid stays inside (0, 1)")
            })
            .collect(),
    }
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::rng::RandomSource;

    #[test]
    fn ecdf_examples() {
        let s = [1.0, 2.0, 3.0];
        assert_eq!(ecdf(&s, 2.0).unwrap(), 2.0 / 3.0);
        assert_eq!(ecdf(&s, 0.0).unwrap(), 0.0);
        assert_eq!(ecdf(&s, 10.0).unwrap(), 1.0);
        assert!(ecdf(&[], 1.0).is_err());
    }

    #[test]
    fn one_sample_small_cases() {
        let law = MaxLaw::gmid(Exponent::frechet(1.0).unwrap());
        // median of GMID Frechet(1) is x = 1
        let rep = ks_one_sample(&[1.0], |x| law.cdf(x)).unwrap();
        assert!((rep.statistic - 0.5).abs() < 1e-15);
        let c = 2.0;
        let rep = ks_one_sample(&[c; 100], |x| law.cdf(x)).unwrap();
        assert!(rep.statistic >= 1.0 - law.cdf(c) - 1e-15);
        assert!(!rep.pass);
        assert!(ks_one_sample(&[], |x| x).is_err());
    }

    #[test]
    fn critical_values() {
        let r = KsReport::new(0.0, 100_000, None);
        assert!((r.critical_value - 0.005_148).abs() < 1e-6);
        let r = KsReport::new(0.0, 100_000, Some(100_000));
        assert!((r.critical_value - 0.007_281).abs() < 1e-6);
    }

    #[test]
    fn two_sample_extremes() {
        let a = [0.3, 1.0, 2.0, 2.0, 5.0];
        assert_eq!(ks_two_sample(&a, &a).unwrap().statistic, 0.0);
        let b = [10.0, 11.0];
        assert_eq!(ks_two_sample(&a, &b).unwrap().statistic, 1.0);
        assert!(ks_two_sample(&a, &[]).is_err());
    }

    #[test]
    fn two_sample_matches_brute_force() {
        let mut rng = RandomSource::new(21);
        // coarse values force plenty of ties
        let a: Vec<f64> = (0..300)
            .map(|_| (rng.uniform_open() * 20.0).floor())
            .collect();
        let b: Vec<f64> = (0..170)
            .map(|_| (rng.uniform_open() * 23.0).floor())
            .collect();
        let brute = a
            .iter()
            .chain(&b)
            .map(|&x| (ecdf(&a, x).unwrap() - ecdf(&b, x).unwrap()).abs())
            .fold(0.0, f64::max);
        let fast = ks_two_sample(&a, &b).unwrap().statistic;
        assert!((brute - fast).abs() < 1e-15);
    }

    #[test]
    fn same_law_two_sample_passes_on_most_seeds() {
        let law = MaxLaw::gmid(Exponent::gumbel());
        let passes = (0..10u64)
            .filter(|&seed| {
                let a = law
                    .sample_inverse(&mut RandomSource::with_stream(seed, 0), 100_000)
                    .unwrap();
                let b = law
                    .sample_inverse(&mut RandomSource::with_stream(seed, 1), 100_000)
                    .unwrap();
                ks_two_sample(&a, &b).unwrap().pass
            })
            .count();
        assert!(passes >= 9, "{passes}");
    }

    #[test]
    fn one_sample_passes_on_most_seeds() {
        let law = MaxLaw::gamma_mid(Exponent::weibull(1.5).unwrap(), 0.8).unwrap();
        let passes = (0..10u64)
            .filter(|&seed| {
                let xs = law
                    .sample_inverse(&mut RandomSource::new(seed), 100_000)
                    .unwrap();
                ks_one_sample(&xs, |x| law.cdf(x)).unwrap().pass
            })
            .count();
        assert!(passes >= 9, "{passes}");
    }

    #[test]
    fn sup_norm() {
        let grid = linear_grid(0.0, 1.0, 11);
        assert_eq!(sup_norm_grid(|x| x, |x| x, &grid).unwrap(), 0.0);
        assert!((sup_norm_grid(|x| x, |x| x * x, &grid).unwrap() - 0.25).abs() < 1e-15);
        assert!(sup_norm_grid(|x| x, |x| x, &[]).is_err());
    }

    #[test]
    fn quantile_grid_is_increasing() {
        // the G-gamma-MID(1) lower tail reaches x = -999 on the Gumbel scale
        let law = MaxLaw::ggamma_mid(Exponent::gumbel(), 1.0).unwrap();
        let g = quantile_grid(&law, 1000);
        assert_eq!(g.len(), 1000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!((law.cdf(g[0]) - 0.001).abs() < 1e-12);
        assert!((law.cdf(g[999]) - 0.999).abs() < 1e-12);
    }
}
