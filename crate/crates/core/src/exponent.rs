//! Exponent functions `s(x) = -log F(x)` of a base max-id law.
//!
//! Three closed-form families are supported. Each has an exact inverse, so
//! every derived distribution function in this crate has an exact quantile.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_positive, domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentFamily {
    /// `x^-alpha` on `(0, inf)`.
    Frechet,
    /// `(-x)^alpha` on `(-inf, 0)`.
    Weibull,
    /// `exp(-x)` on the whole line.
    Gumbel,
}

impl ExponentFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExponentFamily::Frechet => "frechet",
            ExponentFamily::Weibull => "weibull",
            ExponentFamily::Gumbel => "gumbel",
        }
    }
}

impl fmt::Display for ExponentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExponentFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "frechet" => Ok(ExponentFamily::Frechet),
            "weibull" => Ok(ExponentFamily::Weibull),
            "gumbel" => Ok(ExponentFamily::Gumbel),
            _ => Err(Error::UnknownName {
                what: "exponent family",
                value: s.to_string(),
            }),
        }
    }
}

/// Interval carrying the mass of a law: `lower` is the bottom of the
/// support, `upper` the right endpoint beyond which the d.f. equals one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

/// A nonincreasing, nonnegative exponent function vanishing at `+inf`.
///
/// ```
/// use maxid::Exponent;
///
/// let e = Exponent::frechet(1.0).unwrap();
/// assert_eq!(e.eval(2.0), 0.5);
/// assert_eq!(e.inverse(0.5).unwrap(), 2.0);
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    family: ExponentFamily,
    alpha: f64,
}

impl Exponent {
    pub fn new(family: ExponentFamily, alpha: f64) -> Result<Self> {
        match family {
            ExponentFamily::Gumbel => Ok(Self::gumbel()),
            _ => Ok(Exponent {
                family,
                alpha: check_positive("alpha", alpha)?,
            }),
        }
    }

    pub fn frechet(alpha: f64) -> Result<Self> {
        Self::new(ExponentFamily::Frechet, alpha)
    }

    pub fn weibull(alpha: f64) -> Result<Self> {
        Self::new(ExponentFamily::Weibull, alpha)
    }

    pub fn gumbel() -> Self {
        // alpha is carried but never read for this family
        Exponent {
            family: ExponentFamily::Gumbel,
            alpha: 1.0,
        }
    }

    pub fn family(&self) -> ExponentFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn support(&self) -> Support {
        match self.family {
            ExponentFamily::Frechet => Support {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            ExponentFamily::Weibull => Support {
                lower: f64::NEG_INFINITY,
                upper: 0.0,
            },
            ExponentFamily::Gumbel => Support {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            },
        }
    }

    /// Value of the exponent at `x`; `+inf` below the Fréchet support.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self.family {
            ExponentFamily::Frechet => {
                if x > 0.0 {
                    x.powf(-self.alpha)
                } else {
                    f64::INFINITY
                }
            }
            ExponentFamily::Weibull => {
                if x < 0.0 {
                    (-x).powf(self.alpha)
                } else {
                    0.0
                }
            }
            ExponentFamily::Gumbel => (-x).exp(),
        }
    }

    /// `ln eval(x)`, finite wherever `x` is inside the support even when
    /// `eval(x)` itself overflows.
    #[inline]
    pub fn log_eval(&self, x: f64) -> f64 {
        match self.family {
            ExponentFamily::Frechet if x > 0.0 => -self.alpha * x.ln(),
            ExponentFamily::Frechet => f64::INFINITY,
            ExponentFamily::Weibull if x < 0.0 => self.alpha * (-x).ln(),
            ExponentFamily::Weibull => f64::NEG_INFINITY,
            ExponentFamily::Gumbel => -x,
        }
    }

    /// `ln(1 + eval(x))` without overflow.
    #[inline]
    pub(crate) fn ln_1p_eval(&self, x: f64) -> f64 {
        let s = self.eval(x);
        if s < 1e300 {
            s.ln_1p()
        } else {
            let ls = self.log_eval(x);
            if ls == f64::INFINITY {
                ls
            } else {
                ls + (-ls).exp().ln_1p()
            }
        }
    }

    /// The point `x` with `eval(x) == s`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(domain("exponent level", "positive and finite", s));
        }
        Ok(match self.family {
            ExponentFamily::Frechet => s.powf(-1.0 / self.alpha),
            ExponentFamily::Weibull => -s.powf(1.0 / self.alpha),
            ExponentFamily::Gumbel => -s.ln(),
        })
    }

    /// Inverse evaluated from `ln s`, for levels that would over- or
    /// underflow when exponentiated. `ln s = inf` maps to the support
    /// bottom.
    #[inline]
    pub(crate) fn inverse_from_log(&self, log_s: f64) -> f64 {
        match self.family {
            ExponentFamily::Frechet => (-log_s / self.alpha).exp(),
            ExponentFamily::Weibull => -(log_s / self.alpha).exp(),
            ExponentFamily::Gumbel => -log_s,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ExponentFamily::Gumbel => write!(f, "gumbel"),
            fam => write!(f, "{}(alpha={})", fam, self.alpha),
        }
    }
}
