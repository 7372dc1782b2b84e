//! The four distribution families built over an [`Exponent`] `s(x)`:
//!
//! | kind        | d.f.                         |
//! |-------------|------------------------------|
//! | `Base`      | `exp(-s)`                    |
//! | `GMid`      | `1 / (1 + s)`                |
//! | `GammaMid`  | `(1 + s)^-beta`              |
//! | `GGammaMid` | `1 / (1 + beta ln(1 + s))`   |
//!
//! Every law has an exact quantile and an inverse-transform sampler. The
//! three mixture kinds also have a latent sampler that draws a random power
//! `T` and then samples from `exp(-T s(x))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_positive, domain, Error, Result};
use crate::exponent::{Exponent, ExponentFamily};
use crate::rng::RandomSource;
use crate::variate::{log_gamma_unchecked, log_ggamma_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawKind {
    Base,
    GMid,
    GammaMid,
    GGammaMid,
}

impl LawKind {
    pub const ALL: [LawKind; 4] = [
        LawKind::Base,
        LawKind::GMid,
        LawKind::GammaMid,
        LawKind::GGammaMid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawKind::Base => "base",
            LawKind::GMid => "gmid",
            LawKind::GammaMid => "gamma-mid",
            LawKind::GGammaMid => "ggamma-mid",
        }
    }

    /// Whether the shape `beta` is a free parameter of this kind.
    pub fn has_shape(self) -> bool {
        matches!(self, LawKind::GammaMid | LawKind::GGammaMid)
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "base" => Ok(LawKind::Base),
            "gmid" | "g-mid" => Ok(LawKind::GMid),
            "gamma-mid" | "gammamid" => Ok(LawKind::GammaMid),
            "ggamma-mid" | "ggammamid" | "g-gamma-mid" => Ok(LawKind::GGammaMid),
            _ => Err(Error::UnknownName {
                what: "law kind",
                value: s.to_string(),
            }),
        }
    }
}

/// One of the four law families over an exponent.
///
/// ```
/// use maxid::{Exponent, MaxLaw};
///
/// let law = MaxLaw::ggamma_mid(Exponent::frechet(1.0).unwrap(), 1.0).unwrap();
/// let u = law.cdf(1.0);
/// assert!((u - 1.0 / (1.0 + 2f64.ln())).abs() < 1e-15);
/// assert!((law.quantile(u).unwrap() - 1.0).abs() < 1e-12);
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LawDescriptor", into = "LawDescriptor")]
pub struct MaxLaw {
    kind: LawKind,
    exponent: Exponent,
    beta: f64,
}

impl MaxLaw {
    /// `beta` is validated for the shaped kinds and replaced by 1 otherwise.
    pub fn new(kind: LawKind, exponent: Exponent, beta: f64) -> Result<Self> {
        let beta = if kind.has_shape() {
            check_positive("beta", beta)?
        } else {
            1.0
        };
        Ok(MaxLaw {
            kind,
            exponent,
            beta,
        })
    }

    pub fn base(exponent: Exponent) -> Self {
        MaxLaw {
            kind: LawKind::Base,
            exponent,
            beta: 1.0,
        }
    }

    pub fn gmid(exponent: Exponent) -> Self {
        MaxLaw {
            kind: LawKind::GMid,
            exponent,
            beta: 1.0,
        }
    }

    pub fn gamma_mid(exponent: Exponent, beta: f64) -> Result<Self> {
        Self::new(LawKind::GammaMid, exponent, beta)
    }

    pub fn ggamma_mid(exponent: Exponent, beta: f64) -> Result<Self> {
        Self::new(LawKind::GGammaMid, exponent, beta)
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.kind {
            LawKind::Base => (-self.exponent.eval(x)).exp(),
            LawKind::GMid => 1.0 / (1.0 + self.exponent.eval(x)),
            LawKind::GammaMid => (-self.beta * self.exponent.ln_1p_eval(x)).exp(),
            LawKind::GGammaMid => 1.0 / (1.0 + self.beta * self.exponent.ln_1p_eval(x)),
        }
    }

    /// `-ln cdf(x)` in closed form, accurate where the d.f. is close to 1.
    pub fn neg_log_cdf(&self, x: f64) -> f64 {
        match self.kind {
            LawKind::Base => self.exponent.eval(x),
            LawKind::GMid => self.exponent.ln_1p_eval(x),
            LawKind::GammaMid => self.beta * self.exponent.ln_1p_eval(x),
            LawKind::GGammaMid => (self.beta * self.exponent.ln_1p_eval(x)).ln_1p(),
        }
    }

    /// `ln(1 - ln cdf(x))`, finite wherever `x` is inside the support.
    pub fn ln_1p_neg_log_cdf(&self, x: f64) -> f64 {
        let l = self.exponent.ln_1p_eval(x);
        match self.kind {
            LawKind::Base => l,
            LawKind::GMid => l.ln_1p(),
            LawKind::GammaMid => (self.beta * l).ln_1p(),
            LawKind::GGammaMid => (self.beta * l).ln_1p().ln_1p(),
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain("probability", "in (0, 1)", u));
        }
        Ok(self.quantile_from_neg_log(-u.ln()))
    }

    /// The `x` with `neg_log_cdf(x) == v`, for `v >= 0`.
    ///
    /// Working from `v = -ln u` keeps full precision for `u` near 1 and lets
    /// callers pass powers `u^(1/t)` as `v / t` without rounding to 1.
    pub(crate) fn quantile_from_neg_log(&self, v: f64) -> f64 {
        // levels are carried as ln s: the G-gamma-MID level is a double
        // exponential in v and overflows long before x leaves f64 range
        let log_s = match self.kind {
            LawKind::Base => v.ln(),
            LawKind::GMid => ln_exp_m1(v),
            LawKind::GammaMid => ln_exp_m1(v / self.beta),
            LawKind::GGammaMid => ln_exp_m1(v.exp_m1() / self.beta),
        };
        self.exponent.inverse_from_log(log_s)
    }

    /// `n` inverse-transform draws `quantile(U_i)`.
    pub fn sample_inverse(&self, rng: &mut RandomSource, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Empty("sample size"));
        }
        Ok((0..n).map(|_| self.draw_inverse(rng)).collect())
    }

    #[inline]
    pub(crate) fn draw_inverse(&self, rng: &mut RandomSource) -> f64 {
        self.quantile_from_neg_log(rng.exponential())
    }

    /// `n` draws through the mixture representation: a latent power `T`
    /// (exponential for `GMid`, gamma(beta) for `GammaMid`, geometric
    /// gamma(beta) for `GGammaMid`) followed by a draw from `exp(-T s(x))`.
    pub fn sample_latent(&self, rng: &mut RandomSource, n: usize) -> Result<Vec<f64>> {
        if self.kind == LawKind::Base {
            return Err(Error::Unsupported {
                op: "latent sampling",
                what: "the base kind".into(),
            });
        }
        if n == 0 {
            return Err(Error::Empty("sample size"));
        }
        Ok((0..n).map(|_| self.draw_latent(rng)).collect())
    }

    fn draw_latent(&self, rng: &mut RandomSource) -> f64 {
        let log_t = loop {
            let log_t = match self.kind {
                LawKind::GMid => rng.exponential().ln(),
                LawKind::GammaMid => log_gamma_unchecked(self.beta, rng),
                LawKind::GGammaMid => log_ggamma_unchecked(self.beta, rng),
                LawKind::Base => unreachable!(),
            };
            if log_t > f64::NEG_INFINITY {
                break log_t;
            }
        };
        // conditional d.f. exp(-T s): level s = E / T with E unit exponential
        self.exponent
            .inverse_from_log(rng.exponential().ln() - log_t)
    }
}

/// `ln(exp(w) - 1)` for `w >= 0`.
#[inline]
fn ln_exp_m1(w: f64) -> f64 {
    if w > 40.0 {
        w + (-(-w).exp()).ln_1p()
    } else {
        w.exp_m1().ln()
    }
}

impl fmt::Display for MaxLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_shape() {
            write!(
                f,
                "{}(beta={}) over {}",
                self.kind, self.beta, self.exponent
            )
        } else {
            write!(f, "{} over {}", self.kind, self.exponent)
        }
    }
}

/// Flat `{kind, family, alpha, beta}` form used for JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawDescriptor {
    pub kind: String,
    pub family: ExponentFamily,
    pub alpha: f64,
    pub beta: f64,
}

impl From<MaxLaw> for LawDescriptor {
    fn from(law: MaxLaw) -> Self {
        LawDescriptor {
            kind: law.kind.name().to_string(),
            family: law.exponent.family(),
            alpha: law.exponent.alpha(),
            beta: law.beta,
        }
    }
}

impl TryFrom<LawDescriptor> for MaxLaw {
    type Error = Error;

    fn try_from(d: LawDescriptor) -> Result<Self> {
        let kind: LawKind = d.kind.parse()?;
        MaxLaw::new(kind, Exponent::new(d.family, d.alpha)?, d.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ks_one_sample, ks_two_sample};
    use proptest::prelude::*;

    fn fr1() -> Exponent {
        Exponent::frechet(1.0).unwrap()
    }

    fn every_law(beta: f64) -> Vec<MaxLaw> {
        let mut out = Vec::new();
        for e in [fr1(), Exponent::weibull(2.0).unwrap(), Exponent::gumbel()] {
            for kind in LawKind::ALL {
                out.push(MaxLaw::new(kind, e, beta).unwrap());
            }
        }
        out
    }

    // Values frozen from an independent 30-digit mpmath evaluation.
    #[test]
    fn cdf_examples() {
        assert!((MaxLaw::base(fr1()).cdf(1.0) - 0.367_879_441_171_442_3).abs() < 1e-15);
        assert!((MaxLaw::gamma_mid(fr1(), 2.0).unwrap().cdf(1.0) - 0.25).abs() < 1e-15);
        assert!(
            (MaxLaw::ggamma_mid(fr1(), 1.0).unwrap().cdf(1.0) - 0.590_616_109_149_641_2).abs()
                < 1e-15
        );
        for law in every_law(0.7) {
            if law.exponent().family() == ExponentFamily::Frechet {
                assert_eq!(law.cdf(-1.0), 0.0);
            }
        }
    }

    #[test]
    fn neg_log_cdf_examples() {
        assert_eq!(MaxLaw::base(fr1()).neg_log_cdf(1.0), 1.0);
        let g = MaxLaw::gamma_mid(fr1(), 2.0).unwrap();
        assert!((g.neg_log_cdf(1.0) - 1.386_294_361_119_890_6).abs() < 1e-15);
        for law in every_law(1.3) {
            assert!(law.neg_log_cdf(1e300) < 1e-200, "{law}");
            assert_eq!(law.cdf(1e300), 1.0);
        }
    }

    #[test]
    fn neg_log_agrees_with_log_of_cdf() {
        for law in every_law(0.4) {
            for u in [0.01, 0.2, 0.5, 0.9] {
                let x = law.quantile(u).unwrap();
                assert!(
                    (law.neg_log_cdf(x) + law.cdf(x).ln()).abs() < 1e-12,
                    "{law} {u}"
                );
            }
        }
    }

    #[test]
    fn quantile_examples() {
        let g = MaxLaw::gamma_mid(fr1(), 2.0).unwrap();
        assert!((g.quantile(0.25).unwrap() - 1.0).abs() < 1e-14);
        let gg = MaxLaw::ggamma_mid(fr1(), 1.0).unwrap();
        assert!((gg.quantile(0.5).unwrap() - 0.581_976_706_869_326_4).abs() < 1e-14);
        assert!((MaxLaw::gmid(fr1()).quantile(0.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quantile_rejects_endpoints() {
        let law = MaxLaw::gmid(fr1());
        for u in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(law.quantile(u).is_err(), "{u}");
        }
    }

    #[test]
    fn quantile_cdf_round_trip_grid() {
        for law in every_law(0.6).into_iter().chain(every_law(2.5)) {
            for i in 1..=1000 {
                let u = i as f64 / 1001.0;
                let x = law.quantile(u).unwrap();
                if x == 0.0 || x.is_infinite() {
                    // quantile outside the f64 range
                    continue;
                }
                assert!((law.cdf(x) - u).abs() <= 1e-10, "{law} {u}");
            }
        }
    }

    #[test]
    fn cdf_is_a_distribution_function() {
        for law in every_law(0.5) {
            let sup = law.exponent().support();
            assert_eq!(law.cdf(sup.lower), 0.0, "{law}");
            assert_eq!(law.cdf(f64::INFINITY), 1.0, "{law}");
            assert_eq!(law.cdf(1e300), 1.0, "{law}");
            let mut prev = 0.0;
            for i in 0..2000 {
                let x = -50.0 + 0.05 * i as f64;
                let f = law.cdf(x);
                assert!(f >= prev && (0.0..=1.0).contains(&f), "{law} {x}");
                prev = f;
            }
        }
    }

    #[test]
    fn beta_validation() {
        assert!(MaxLaw::gamma_mid(fr1(), 0.0).is_err());
        assert!(MaxLaw::ggamma_mid(fr1(), -2.0).is_err());
        assert_eq!(MaxLaw::new(LawKind::GMid, fr1(), -5.0).unwrap().beta(), 1.0);
    }

    #[test]
    fn zero_draws_is_an_error() {
        let mut rng = RandomSource::new(1);
        let law = MaxLaw::gmid(fr1());
        assert!(law.sample_inverse(&mut rng, 0).is_err());
        assert!(law.sample_latent(&mut rng, 0).is_err());
        assert!(matches!(
            MaxLaw::base(fr1()).sample_latent(&mut rng, 5),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let law = MaxLaw::ggamma_mid(fr1(), 1.0).unwrap();
        let a = law.sample_inverse(&mut RandomSource::new(99), 5).unwrap();
        let b = law.sample_inverse(&mut RandomSource::new(99), 5).unwrap();
        assert_eq!(a, b);
        let a = law.sample_latent(&mut RandomSource::new(99), 5).unwrap();
        let b = law.sample_latent(&mut RandomSource::new(99), 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_sampler_fits_cdf() {
        let law = MaxLaw::ggamma_mid(fr1(), 1.0).unwrap();
        let xs = law
            .sample_inverse(&mut RandomSource::new(8), 100_000)
            .unwrap();
        let rep = ks_one_sample(&xs, |x| law.cdf(x)).unwrap();
        assert!(rep.statistic < 0.01, "{rep:?}");
    }

    #[test]
    fn latent_and_inverse_samplers_agree() {
        let e = fr1();
        for law in [
            MaxLaw::gmid(e),
            MaxLaw::gamma_mid(e, 0.5).unwrap(),
            MaxLaw::ggamma_mid(e, 1.0).unwrap(),
        ] {
            let mut passes = 0;
            for seed in 0..10u64 {
                let a = law
                    .sample_inverse(&mut RandomSource::with_stream(seed, 0), 100_000)
                    .unwrap();
                let b = law
                    .sample_latent(&mut RandomSource::with_stream(seed, 1), 100_000)
                    .unwrap();
                let rep = ks_two_sample(&a, &b).unwrap();
                assert!(rep.statistic < 0.0122, "{law} seed {seed}: {rep:?}");
                passes += rep.pass as usize;
            }
            assert!(passes >= 9, "{law}: {passes}/10");
        }
    }

    #[test]
    fn gamma_mid_unit_shape_latent_matches_gmid() {
        let e = Exponent::gumbel();
        let a = MaxLaw::gamma_mid(e, 1.0)
            .unwrap()
            .sample_latent(&mut RandomSource::new(4), 100_000)
            .unwrap();
        let b = MaxLaw::gmid(e)
            .sample_latent(&mut RandomSource::with_stream(4, 1), 100_000)
            .unwrap();
        assert!(ks_two_sample(&a, &b).unwrap().pass);
    }

    #[test]
    fn latent_draws_stay_above_support_bottom() {
        // small beta puts heavy mass on tiny T, i.e. huge levels s
        let law = MaxLaw::ggamma_mid(fr1(), 0.05).unwrap();
        let xs = law
            .sample_latent(&mut RandomSource::new(13), 20_000)
            .unwrap();
        assert!(xs.iter().all(|&x| x >= 0.0 && !x.is_nan()));
    }

    // F = cdf(GGammaMID(beta)) turns into cdf(GammaMID(beta)) under
    // x -> exp(-(1/F - 1)), which is the G-MID characterization.
    #[test]
    fn ggamma_mid_is_geometric_max_id() {
        for beta in [0.5, 1.0, 2.0] {
            for e in [fr1(), Exponent::gumbel()] {
                let gg = MaxLaw::ggamma_mid(e, beta).unwrap();
                let g = MaxLaw::gamma_mid(e, beta).unwrap();
                for i in 1..1000 {
                    let x = g.quantile(i as f64 / 1000.0).unwrap();
                    let lhs = (-(1.0 / gg.cdf(x) - 1.0)).exp();
                    assert!((lhs - g.cdf(x)).abs() < 1e-12, "{beta} {x}");
                }
            }
        }
    }

    #[test]
    fn json_descriptor() {
        let law = MaxLaw::ggamma_mid(Exponent::weibull(2.0).unwrap(), 1.5).unwrap();
        let js = serde_json::to_string(&law).unwrap();
        assert_eq!(
            js,
            r#"{"kind":"ggamma-mid","family":"weibull","alpha":2.0,"beta":1.5}"#
        );
        let back: MaxLaw = serde_json::from_str(&js).unwrap();
        assert_eq!(back, law);
        let bad = r#"{"kind":"gamma-mid","family":"frechet","alpha":1.0,"beta":-1.0}"#;
        assert!(serde_json::from_str::<MaxLaw>(bad).is_err());
    }

    proptest! {
        #[test]
        fn prop_quantile_inverts_cdf(u in 1e-6f64..(1.0 - 1e-6), beta in 0.05f64..20.0, k in 0usize..4) {
            let law = MaxLaw::new(LawKind::ALL[k], Exponent::frechet(1.3).unwrap(), beta).unwrap();
            let x = law.quantile(u).unwrap();
            prop_assume!(x > 0.0 && x.is_finite());
            prop_assert!((law.cdf(x) - u).abs() <= 1e-10);
        }
    }
}
