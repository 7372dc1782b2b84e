//! First-order max-autoregressive chains with geometric-gamma marginals.
//!
//! Each step either restarts from a fresh innovation (probability `p`) or
//! keeps the running maximum with it:
//!
//! ```text
//!     X_n = eps_n                 with probability p
//!     X_n = max(X_{n-1}, eps_n)   with probability 1 - p
//! ```
//!
//! A stationary d.f. satisfies `F = p F_eps + (1 - p) F F_eps`, so `F` is the
//! geometric(p) maximum of the innovation law. With G-gamma-MID(`p beta`)
//! innovations the stationary law is G-gamma-MID(`beta`).

use serde::{Deserialize, Serialize};

use crate::algebra::GeoP;
use crate::error::{check_positive, domain, Error, Result};
use crate::exponent::Exponent;
use crate::law::MaxLaw;
use crate::rng::RandomSource;
use crate::stats::{ks_one_sample, KsReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ar1Spec {
    p: GeoP,
    marginal_beta: f64,
    innovation_beta: f64,
    exponent: Exponent,
}

impl Ar1Spec {
    /// Chain whose stationary marginal is G-gamma-MID(`marginal_beta`).
    pub fn new(p: GeoP, marginal_beta: f64, exponent: Exponent) -> Result<Self> {
        if p.p() >= 1.0 {
            return Err(domain("p", "in (0, 1)", p.p()));
        }
        check_positive("beta", marginal_beta)?;
        Ok(Ar1Spec {
            p,
            marginal_beta,
            innovation_beta: stationary_innovation_shape(marginal_beta, p)?,
            exponent,
        })
    }

    /// Replace the innovation shape; the chain is then no longer stationary
    /// at `marginal_beta` unless `beta == p * marginal_beta`.
    pub fn with_innovation_beta(mut self, beta: f64) -> Result<Self> {
        self.innovation_beta = check_positive("innovation beta", beta)?;
        Ok(self)
    }

    pub fn p(&self) -> GeoP {
        self.p
    }

    pub fn marginal_beta(&self) -> f64 {
        self.marginal_beta
    }

    pub fn innovation_beta(&self) -> f64 {
        self.innovation_beta
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn marginal_law(&self) -> MaxLaw {
        MaxLaw::ggamma_mid(self.exponent, self.marginal_beta).expect("validated in new")
    }

    pub fn innovation_law(&self) -> MaxLaw {
        MaxLaw::ggamma_mid(self.exponent, self.innovation_beta).expect("validated")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ar1Init {
    /// `X_0` drawn from the stationary marginal.
    Stationary,
    Fixed(f64),
}

/// Innovation d.f. value that makes `f` the stationary d.f. value:
/// `F / (p + (1 - p) F)`.
pub fn innovation_cdf_from_marginal(f: f64, p: GeoP) -> f64 {
    let p = p.p();
    if f <= 0.0 {
        return 0.0;
    }
    f / (p + (1.0 - p) * f)
}

/// G-gamma-MID shape of the innovations, `p * beta`.
pub fn stationary_innovation_shape(beta: f64, p: GeoP) -> Result<f64> {
    check_positive("beta", beta)?;
    Ok(p.p() * beta)
}

/// One transition given the innovation and a uniform draw `u`.
#[inline]
pub fn ar1_step(x_prev: f64, innovation: f64, u: f64, p: GeoP) -> f64 {
    if u < p.p() {
        innovation
    } else {
        x_prev.max(innovation)
    }
}

/// `X_1, ..., X_{n_steps}` of one chain.
pub fn ar1_simulate(
    spec: &Ar1Spec,
    n_steps: usize,
    init: Ar1Init,
    rng: &mut RandomSource,
) -> Result<Vec<f64>> {
    if n_steps == 0 {
        return Err(Error::Empty("chain length"));
    }
    let marginal = spec.marginal_law();
    let innovations = spec.innovation_law();
    let mut x = match init {
        Ar1Init::Stationary => marginal.draw_inverse(rng),
        Ar1Init::Fixed(x0) => x0,
    };
    let mut out = Vec::with_capacity(n_steps);
    for _ in 0..n_steps {
        let eps = innovations.draw_inverse(rng);
        x = ar1_step(x, eps, rng.uniform_open(), spec.p);
        out.push(x);
    }
    Ok(out)
}

/// KS test of `X_lag` across `chains` independent chains against the
/// G-gamma-MID(`marginal_beta`) d.f.
pub fn stationarity_check(
    spec: &Ar1Spec,
    chains: usize,
    lag: usize,
    init: Ar1Init,
    rng: &mut RandomSource,
) -> Result<KsReport> {
    if chains == 0 {
        return Err(Error::Empty("chain count"));
    }
    let mut finals = Vec::with_capacity(chains);
    for _ in 0..chains {
        let path = ar1_simulate(spec, lag, init, rng)?;
        finals.push(*path.last().expect("lag >= 1"));
    }
    let law = spec.marginal_law();
    ks_one_sample(&finals, |x| law.cdf(x))
}

/// Fraction of steps where the chain strictly drops below its previous value.
pub fn reset_fraction(path: &[f64]) -> f64 {
    if path.len() < 2 {
        return 0.0;
    }
    let drops = path.windows(2).filter(|w| w[1] < w[0]).count();
    drops as f64 / (path.len() - 1) as f64
}

/// JSON summary of a chain run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ar1Summary {
    pub p: f64,
    pub beta: f64,
    pub innovation_beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_statistic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Ar1Summary {
    pub fn new(spec: &Ar1Spec, check: Option<&KsReport>) -> Self {
        Ar1Summary {
            p: spec.p.p(),
            beta: spec.marginal_beta,
            innovation_beta: spec.innovation_beta,
            ks_statistic: check.map(|r| r.statistic),
            critical_value: check.map(|r| r.critical_value),
            pass: check.map(|r| r.pass),
        }
    }
}
