//! Latent variates used by the mixture samplers.
//!
//! Gamma draws are produced on the log scale. For small shapes the variate
//! is routinely below `f64::MIN_POSITIVE`, and the mixture samplers only ever
//! need `ln T`, so nothing is lost to underflow.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{check_positive, domain, Result};
use crate::rng::RandomSource;

/// Logarithm of a unit-scale gamma variate with the given shape.
///
/// Marsaglia–Tsang squeeze for `shape >= 1`; for `shape < 1` the
/// `G(shape) = G(shape + 1) * U^(1/shape)` boost is applied additively.
pub fn sample_log_gamma(shape: f64, rng: &mut RandomSource) -> Result<f64> {
    check_positive("gamma shape", shape)?;
    Ok(log_gamma_unchecked(shape, rng))
}

pub(crate) fn log_gamma_unchecked(shape: f64, rng: &mut RandomSource) -> f64 {
    if shape < 1.0 {
        let boost = rng.uniform_open().ln() / shape;
        return marsaglia_tsang_log(shape + 1.0, rng) + boost;
    }
    marsaglia_tsang_log(shape, rng)
}

fn marsaglia_tsang_log(shape: f64, rng: &mut RandomSource) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let z: f64 = StandardNormal.sample(rng);
        let v = 1.0 + c * z;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = rng.uniform_open();
        let z2 = z * z;
        if u < 1.0 - 0.0331 * z2 * z2 || u.ln() < 0.5 * z2 + d * (1.0 - v + v.ln()) {
            return d.ln() + v.ln();
        }
    }
}

/// Unit-scale gamma variate; Laplace transform `(1 + lam)^-shape`.
///
/// May return `0.0` when the true draw is below the smallest subnormal,
/// which happens for shapes well under `0.01`.
///
/// ```
/// use maxid::{sample_gamma, RandomSource};
///
/// let mut rng = RandomSource::new(1);
/// let g = sample_gamma(2.5, &mut rng).unwrap();
/// assert!(g > 0.0);
/// ```
pub fn sample_gamma(shape: f64, rng: &mut RandomSource) -> Result<f64> {
    sample_log_gamma(shape, rng).map(f64::exp)
}

/// Logarithm of a geometric-gamma(`beta`) variate.
///
/// A unit exponential `E` randomizes the gamma shape to `beta * E`.
pub fn sample_log_ggamma(beta: f64, rng: &mut RandomSource) -> Result<f64> {
    check_positive("beta", beta)?;
    Ok(log_ggamma_unchecked(beta, rng))
}

pub(crate) fn log_ggamma_unchecked(beta: f64, rng: &mut RandomSource) -> f64 {
    loop {
        let shape = beta * rng.exponential();
        // shape 0 is a point mass at 0; redraw instead
        if shape > 0.0 {
            return log_gamma_unchecked(shape, rng);
        }
    }
}

/// Geometric-gamma(`beta`) variate with Laplace transform
/// `1 / (1 + beta * ln(1 + lam))`.
pub fn sample_ggamma(beta: f64, rng: &mut RandomSource) -> Result<f64> {
    sample_log_ggamma(beta, rng).map(f64::exp)
}

/// Laplace transform of the geometric-gamma(`beta`) law at `lam >= 0`.
///
/// ```
/// assert_eq!(maxid::lt_ggamma(3.0, 0.0).unwrap(), 1.0);
/// ```
pub fn lt_ggamma(beta: f64, lam: f64) -> Result<f64> {
    check_positive("beta", beta)?;
    if lam.is_nan() || lam < 0.0 {
        return Err(domain("lambda", "nonnegative", lam));
    }
    Ok(1.0 / (1.0 + beta * lam.ln_1p()))
}

/// Count `N` on `{1, 2, ...}` with `P(N = k) = p (1 - p)^(k - 1)`.
pub(crate) fn geometric_count(p: f64, rng: &mut RandomSource) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    let k = (rng.uniform_open().ln() / (-p).ln_1p()).floor();
    if k >= u64::MAX as f64 {
        u64::MAX
    } else {
        1 + k as u64
    }
}
