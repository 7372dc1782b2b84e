//! Extremal processes with homogeneous max-increments and their random
//! time changes.
//!
//! An extremal process `Y` whose value at time 1 has d.f. `F` has marginal
//! `F^t` at time `t`, and its max-increment over `(s, s + h]` is independent
//! of the past with d.f. `F^h`. Paths are simulated exactly on a user grid.
//!
//! A time change `T` with stationary independent increments and Laplace
//! transform `phi` gives `X(t) = Y(T(t))`, whose marginal d.f. is
//! `phi(-ln F(x))^t`.

use serde::{Deserialize, Serialize};

use crate::error::{check_positive, domain, Error, Result};
use crate::exponent::Support;
use crate::law::{LawKind, MaxLaw};
use crate::rng::RandomSource;
use crate::variate::{log_gamma_unchecked, log_ggamma_unchecked};

/// Homogeneous extremal process described by its time-1 law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalSpec {
    base_law: MaxLaw,
    support: Support,
}

impl ExtremalSpec {
    pub fn new(base_law: MaxLaw) -> Self {
        ExtremalSpec {
            base_law,
            support: base_law.exponent().support(),
        }
    }

    pub fn base_law(&self) -> &MaxLaw {
        &self.base_law
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// D.f. of `Y(t)`.
    pub fn marginal_cdf(&self, t: f64, x: f64) -> f64 {
        (-t * self.base_law.neg_log_cdf(x)).exp()
    }

    /// Draw from `F^t` given a unit exponential `e`: `-ln U / t = e / t`.
    #[inline]
    fn draw_power(&self, t: f64, rng: &mut RandomSource) -> f64 {
        self.base_law.quantile_from_neg_log(rng.exponential() / t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubordinatorSpec {
    /// Gamma process: increments over `dt` are gamma(dt, 1). `T(1)` is unit
    /// exponential, `phi(lam) = 1 / (1 + lam)`.
    GammaProcess,
    /// Geometric-gamma(beta) law at `t = 1` only,
    /// `phi(lam) = 1 / (1 + beta ln(1 + lam))`.
    GGammaAtUnitTime { beta: f64 },
}

impl SubordinatorSpec {
    pub fn ggamma(beta: f64) -> Result<Self> {
        Ok(SubordinatorSpec::GGammaAtUnitTime {
            beta: check_positive("beta", beta)?,
        })
    }

    /// Laplace transform of `T(1)`.
    pub fn laplace(&self, lam: f64) -> f64 {
        match *self {
            SubordinatorSpec::GammaProcess => 1.0 / (1.0 + lam),
            SubordinatorSpec::GGammaAtUnitTime { beta } => 1.0 / (1.0 + beta * lam.ln_1p()),
        }
    }

    /// `ln phi(lam)` given `ln(1 + lam)`, which stays finite when `lam`
    /// itself overflows.
    fn log_laplace_from_ln_1p(&self, ln_1p_lam: f64) -> f64 {
        match *self {
            SubordinatorSpec::GammaProcess => -ln_1p_lam,
            SubordinatorSpec::GGammaAtUnitTime { beta } => -(beta * ln_1p_lam).ln_1p(),
        }
    }

    /// Whether `T(t)` can be drawn.
    pub fn check_time(&self, t: f64) -> Result<()> {
        match *self {
            SubordinatorSpec::GGammaAtUnitTime { .. } if t != 1.0 => Err(Error::Unsupported {
                op: "geometric-gamma time change",
                what: format!("t = {t} (only t = 1 can be simulated)"),
            }),
            _ => Ok(()),
        }
    }

    /// `ln T(t)`; the caller has passed `check_time`.
    fn draw_log(&self, t: f64, rng: &mut RandomSource) -> f64 {
        match *self {
            SubordinatorSpec::GammaProcess => log_gamma_unchecked(t, rng),
            SubordinatorSpec::GGammaAtUnitTime { beta } => log_ggamma_unchecked(beta, rng),
        }
    }
}

/// Sampled path on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathGrid {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl PathGrid {
    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Empty("time grid"));
    }
    let ok = times[0] > 0.0
        && times.iter().all(|t| t.is_finite())
        && times.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::BadGrid)
    }
}

/// Quantile of `Y(t)`, i.e. of `F^t`.
pub fn ep_marginal_quantile(spec: &ExtremalSpec, t: f64, u: f64) -> Result<f64> {
    check_positive("t", t)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("probability", "in (0, 1)", u));
    }
    Ok(spec.base_law.quantile_from_neg_log(-u.ln() / t))
}

/// Simulate `Y` on `times`, returning the path and the max-increments
/// `J_k` (the first one is `Y(t_1)` itself).
pub fn ep_simulate_with_increments(
    spec: &ExtremalSpec,
    times: &[f64],
    rng: &mut RandomSource,
) -> Result<(PathGrid, Vec<f64>)> {
    check_grid(times)?;
    let mut values = Vec::with_capacity(times.len());
    let mut increments = Vec::with_capacity(times.len());
    let mut prev_t = 0.0;
    let mut level = f64::NEG_INFINITY;
    for &t in times {
        let jump = spec.draw_power(t - prev_t, rng);
        level = level.max(jump);
        increments.push(jump);
        values.push(level);
        prev_t = t;
    }
    Ok((
        PathGrid {
            times: times.to_vec(),
            values,
        },
        increments,
    ))
}

/// Simulate `Y` on a strictly increasing grid of positive times.
pub fn ep_simulate_path(
    spec: &ExtremalSpec,
    times: &[f64],
    rng: &mut RandomSource,
) -> Result<PathGrid> {
    ep_simulate_with_increments(spec, times, rng).map(|(path, _)| path)
}

/// Gamma-process path `T(t_k)` on `times`.
pub fn subordinator_path(
    sub: &SubordinatorSpec,
    times: &[f64],
    rng: &mut RandomSource,
) -> Result<PathGrid> {
    check_grid(times)?;
    if let SubordinatorSpec::GGammaAtUnitTime { .. } = sub {
        if times != [1.0] {
            return Err(Error::Unsupported {
                op: "geometric-gamma subordinator paths",
                what: "grids other than {1}".into(),
            });
        }
        return Ok(PathGrid {
            times: times.to_vec(),
            values: vec![sub.draw_log(1.0, rng).exp()],
        });
    }
    let mut prev_t = 0.0;
    let mut total = 0.0;
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        total += log_gamma_unchecked(t - prev_t, rng).exp();
        values.push(total);
        prev_t = t;
    }
    Ok(PathGrid {
        times: times.to_vec(),
        values,
    })
}

/// `phi(-ln F(x))^t`, the d.f. of `Y(T(t))` at `x`.
pub fn compound_marginal_cdf(
    spec: &ExtremalSpec,
    sub: &SubordinatorSpec,
    t: f64,
    x: f64,
) -> Result<f64> {
    check_positive("t", t)?;
    let ln_1p_mu = spec.base_law.ln_1p_neg_log_cdf(x);
    if ln_1p_mu == f64::INFINITY {
        return Ok(0.0);
    }
    Ok((t * sub.log_laplace_from_ln_1p(ln_1p_mu)).exp())
}

/// `n` draws of `X(t) = Y(T(t))`.
///
/// `T(t)` is drawn on the log scale, so the conditional level `E / T` never
/// overflows. A draw with `T = 0` exactly is rejected and redrawn.
pub fn compound_simulate(
    spec: &ExtremalSpec,
    sub: &SubordinatorSpec,
    t: f64,
    rng: &mut RandomSource,
    n: usize,
) -> Result<Vec<f64>> {
    check_positive("t", t)?;
    if n == 0 {
        return Err(Error::Empty("sample size"));
    }
    sub.check_time(t)?;
    let law = spec.base_law;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let log_t = loop {
            let l = sub.draw_log(t, rng);
            if l > f64::NEG_INFINITY {
                break l;
            }
        };
        let log_level = rng.exponential().ln() - log_t;
        out.push(if law.kind() == LawKind::Base {
            law.exponent().inverse_from_log(log_level)
        } else {
            law.quantile_from_neg_log(log_level.exp())
        });
    }
    Ok(out)
}

/// `X(t_k) = Y(T(t_k))` on a grid, with `T` a gamma process.
pub fn compound_simulate_path(
    spec: &ExtremalSpec,
    sub: &SubordinatorSpec,
    times: &[f64],
    rng: &mut RandomSource,
) -> Result<PathGrid> {
    let clock = subordinator_path(sub, times, rng)?;
    let mut prev = 0.0;
    let mut level = f64::NEG_INFINITY;
    let mut values = Vec::with_capacity(times.len());
    for &tau in &clock.values {
        let dt = tau - prev;
        // a zero clock increment is a degenerate max-increment at the bottom
        if dt > 0.0 {
            level = level.max(spec.draw_power(dt, rng));
        } else if level == f64::NEG_INFINITY {
            level = spec.support.lower;
        }
        values.push(level);
        prev = tau;
    }
    Ok(PathGrid {
        times: times.to_vec(),
        values,
    })
}
