//! Max-infinitely divisible laws built from an exponent `s(x) = -ln F(x)`:
//! the base law `exp(-s)`, geometric max-id `1/(1+s)`, gamma max-id
//! `(1+s)^-beta` and geometric gamma max-id `1/(1+beta ln(1+s))`.
//!
//! The crate provides exact d.f.s and quantiles for each family, two
//! independent samplers, the geometric-maximum algebra that connects the
//! families, extremal processes with random time changes, a stationary
//! max-autoregressive chain, and a registry of executable checks
//! ([`verify`]) for the identities and limit theorems relating them.
//!
//! ```
//! use maxid::{geo_max_cdf, CdfExpr, Exponent, GeoP, MaxLaw};
//!
//! let e = Exponent::frechet(1.0)?;
//! let h = CdfExpr::from(MaxLaw::ggamma_mid(e, 1.0)?);
//! let p = GeoP::new(0.5)?;
//! // a geometric(1/2) maximum doubles the shape
//! let doubled = MaxLaw::ggamma_mid(e, 2.0)?;
//! assert!((geo_max_cdf(&h, p, 1.3) - doubled.cdf(1.3)).abs() < 1e-15);
//! # Ok::<(), maxid::Error>(())
//! ```

pub mod algebra;
pub mod ar1;
mod error;
pub mod exponent;
pub mod extremal;
pub mod io;
pub mod law;
mod rng;
pub mod stats;
mod variate;
pub mod verify;

pub use algebra::{
    geo_max_cdf, geo_max_sample, geo_max_value, iterate_transform, limit_geo_gamma_cdf, n_max_cdf,
    scale_exponent, semi_stable_scale, CdfExpr, GeoP,
};
pub use ar1::{
    ar1_simulate, ar1_step, innovation_cdf_from_marginal, stationarity_check,
    stationary_innovation_shape, Ar1Init, Ar1Spec, Ar1Summary,
};
pub use error::{Error, Result};
pub use exponent::{Exponent, ExponentFamily, Support};
pub use extremal::{
    compound_marginal_cdf, compound_simulate, compound_simulate_path, ep_marginal_quantile,
    ep_simulate_path, ep_simulate_with_increments, subordinator_path, ExtremalSpec, PathGrid,
    SubordinatorSpec,
};
pub use law::{LawDescriptor, LawKind, MaxLaw};
pub use rng::RandomSource;
pub use stats::{ecdf, ks_one_sample, ks_two_sample, sup_norm_grid, KsReport};
pub use variate::{lt_ggamma, sample_gamma, sample_ggamma, sample_log_gamma, sample_log_ggamma};
pub use verify::{verify, verify_all, verify_named, CheckMode, TheoremId, VerificationReport};
