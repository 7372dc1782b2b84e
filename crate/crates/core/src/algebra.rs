//! Geometric maxima and the d.f. operators built on them.
//!
//! If `N` is geometric on `{1, 2, ...}` with `P(N = k) = p (1 - p)^(k - 1)`
//! and `X_i` are i.i.d. with d.f. `H`, then `max(X_1, ..., X_N)` has d.f.
//!
//! ```text
//!     p H / (1 - (1 - p) H)  =  1 / (1 + (1/H - 1) / p)
//! ```
//!
//! In terms of `L = -ln H` the right-hand form is `1 / (1 + expm1(L) / p)`,
//! which is how [`CdfExpr`] evaluates composed laws. The free function
//! [`geo_max_cdf`] keeps the literal left-hand form so that identity checks
//! compare two different evaluation routes.

use crate::error::{domain, Error, Result};
use crate::exponent::{Exponent, ExponentFamily};
use crate::law::{LawKind, MaxLaw};
use crate::rng::RandomSource;
use crate::variate::geometric_count;

/// Success probability of a geometric count on `{1, 2, ...}`; mean `1 / p`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GeoP(f64);

impl GeoP {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p <= 1.0 {
            Ok(GeoP(p))
        } else {
            Err(domain("p", "in (0, 1]", p))
        }
    }

    pub fn p(self) -> f64 {
        self.0
    }

    /// Mean of the count, `a = 1 / p`.
    pub fn mean(self) -> f64 {
        1.0 / self.0
    }

    /// Draw the count.
    pub fn sample(self, rng: &mut RandomSource) -> u64 {
        geometric_count(self.0, rng)
    }
}

/// A closed-form d.f. assembled from the laws and operators of this module.
#[derive(Debug, Clone, PartialEq)]
pub enum CdfExpr {
    Law(MaxLaw),
    /// `1 / (1 + a s(x))`.
    ScaledGMid {
        exponent: Exponent,
        a: f64,
    },
    /// Geometric(p) maximum of i.i.d. copies of the inner law.
    GeoMax {
        inner: Box<CdfExpr>,
        p: GeoP,
    },
    /// Maximum of `n` i.i.d. copies.
    Power {
        inner: Box<CdfExpr>,
        n: u64,
    },
    /// `1 / (1 - ln F(x))`.
    Iterate(Box<CdfExpr>),
}

impl From<MaxLaw> for CdfExpr {
    fn from(law: MaxLaw) -> Self {
        CdfExpr::Law(law)
    }
}

impl CdfExpr {
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            CdfExpr::Law(law) => law.cdf(x),
            CdfExpr::ScaledGMid { exponent, a } => 1.0 / (1.0 + a * exponent.eval(x)),
            CdfExpr::GeoMax { inner, p } => 1.0 / (1.0 + inner.neg_log_cdf(x).exp_m1() / p.p()),
            CdfExpr::Power { inner, n } => (-(*n as f64) * inner.neg_log_cdf(x)).exp(),
            CdfExpr::Iterate(inner) => 1.0 / (1.0 + inner.neg_log_cdf(x)),
        }
    }

    pub fn neg_log_cdf(&self, x: f64) -> f64 {
        match self {
            CdfExpr::Law(law) => law.neg_log_cdf(x),
            CdfExpr::ScaledGMid { exponent, a } => (a * exponent.eval(x)).ln_1p(),
            CdfExpr::GeoMax { inner, p } => (inner.neg_log_cdf(x).exp_m1() / p.p()).ln_1p(),
            CdfExpr::Power { inner, n } => *n as f64 * inner.neg_log_cdf(x),
            CdfExpr::Iterate(inner) => inner.ln_1p_neg_log_cdf(x),
        }
    }

    /// `ln(1 - ln cdf(x))`; exact for laws and iterates even where
    /// `-ln cdf(x)` overflows.
    pub fn ln_1p_neg_log_cdf(&self, x: f64) -> f64 {
        match self {
            CdfExpr::Law(law) => law.ln_1p_neg_log_cdf(x),
            CdfExpr::Iterate(inner) => inner.ln_1p_neg_log_cdf(x).ln_1p(),
            other => other.neg_log_cdf(x).ln_1p(),
        }
    }

    /// The exponent of a `1 / (1 + a s)` expression, with its multiplier.
    fn as_scaled_gmid(&self) -> Option<(Exponent, f64)> {
        match self {
            CdfExpr::Law(law) if law.kind() == LawKind::GMid => Some((*law.exponent(), 1.0)),
            CdfExpr::ScaledGMid { exponent, a } => Some((*exponent, *a)),
            _ => None,
        }
    }
}

/// `p H(x) / (1 - (1 - p) H(x))`, the d.f. of a geometric(p) maximum at a
/// point where the component d.f. equals `h`.
#[inline]
pub fn geo_max_value(h: f64, p: GeoP) -> f64 {
    if h >= 1.0 {
        return 1.0;
    }
    let p = p.p();
    p * h / (1.0 - (1.0 - p) * h)
}

/// D.f. at `x` of the geometric(p) maximum of i.i.d. draws from `h`.
pub fn geo_max_cdf(h: &CdfExpr, p: GeoP, x: f64) -> f64 {
    geo_max_value(h.cdf(x), p)
}

/// The maximum of a geometric(p) number of i.i.d. draws from `law`.
pub fn geo_max_sample(law: &MaxLaw, p: GeoP, rng: &mut RandomSource) -> f64 {
    let n = p.sample(rng);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..n {
        best = best.max(law.draw_inverse(rng));
    }
    best
}

/// `1 / (1 + a s(x))` from a d.f. `1 / (1 + s(x))`.
///
/// Defined for every `a > 0`. Only for `a >= 1` is the result the d.f. of a
/// geometric maximum (with `p = 1 / a`); for `a < 1` it is still a d.f. but
/// the mixture weights in its series expansion are not probabilities.
///
/// ```
/// use maxid::{scale_exponent, CdfExpr, Exponent, MaxLaw};
///
/// let h = CdfExpr::from(MaxLaw::gmid(Exponent::frechet(1.0).unwrap()));
/// let g = scale_exponent(&h, 2.0).unwrap();
/// assert_eq!(g.cdf(2.0), 0.5);
/// ```
pub fn scale_exponent(h: &CdfExpr, a: f64) -> Result<CdfExpr> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain("a", "positive and finite", a));
    }
    let (exponent, a0) = h.as_scaled_gmid().ok_or_else(|| Error::Unsupported {
        op: "exponent scaling",
        what: "a d.f. not of the form 1/(1+s)".into(),
    })?;
    Ok(CdfExpr::ScaledGMid {
        exponent,
        a: a0 * a,
    })
}

/// Scale `b` with `geo_max_cdf(GMID, p, x) == cdf(GMID, b x)` for all `x`.
///
/// `b = p^(1/alpha)` on the Fréchet branch, `b = p^(-1/alpha)` on the
/// Weibull branch. Gumbel exponents admit no such scale (the geometric
/// maximum is a shift, not a scale change).
pub fn semi_stable_scale(p: GeoP, exponent: &Exponent) -> Result<f64> {
    match exponent.family() {
        ExponentFamily::Frechet => Ok(p.p().powf(1.0 / exponent.alpha())),
        ExponentFamily::Weibull => Ok(p.p().powf(-1.0 / exponent.alpha())),
        ExponentFamily::Gumbel => Err(Error::Unsupported {
            op: "semi-stable scaling",
            what: "gumbel exponents".into(),
        }),
    }
}

/// `cdf(law, x)^n`, the d.f. of the maximum of `n` i.i.d. draws.
pub fn n_max_cdf(law: &MaxLaw, n: u64, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Empty("n-fold maximum"));
    }
    Ok((-(n as f64) * law.neg_log_cdf(x)).exp())
}

/// D.f. of the geometric(1/n) maximum of i.i.d. gamma-MID(beta / n) draws,
/// `1 / (1 + n ((1 + s(x))^(beta/n) - 1))`. Tends to the G-gamma-MID(beta)
/// d.f. as `n` grows.
///
/// ```
/// use maxid::{limit_geo_gamma_cdf, Exponent};
///
/// let e = Exponent::frechet(1.0).unwrap();
/// assert!((limit_geo_gamma_cdf(1.0, 1, &e, 1.0).unwrap() - 0.5).abs() < 1e-15);
/// ```
pub fn limit_geo_gamma_cdf(beta: f64, n: u64, exponent: &Exponent, x: f64) -> Result<f64> {
    crate::error::check_positive("beta", beta)?;
    if n == 0 {
        return Err(Error::Empty("geometric limit sequence"));
    }
    let s = exponent.eval(x);
    if s == f64::INFINITY {
        return Ok(0.0);
    }
    let n = n as f64;
    Ok(1.0 / (1.0 + n * (beta / n * s.ln_1p()).exp_m1()))
}

/// `x -> 1 / (1 - ln f(x))`. Applying it to a d.f. yields a d.f. again, so
/// it can be repeated.
pub fn iterate_transform(f: &CdfExpr) -> CdfExpr {
    CdfExpr::Iterate(Box::new(f.clone()))
}
