//! Executable checks, one per claim about the four law families.
//!
//! Closed-form claims are checked algebraically: both sides are evaluated on
//! 1000-point quantile-spaced grids and the sup-norm distance is compared with
//! a 1e-12 tolerance (1e-3 for the two limit theorems, which hold only as
//! `n -> inf`). Claims about samplers and processes are checked by Monte
//! Carlo with `n = 10^5` draws and the asymptotic 1% KS band; the reported
//! discrepancy is the worst KS statistic over the parameter lattice.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    geo_max_cdf, iterate_transform, limit_geo_gamma_cdf, n_max_cdf, scale_exponent,
    semi_stable_scale, CdfExpr, GeoP,
};
use crate::ar1::{stationarity_check, Ar1Init, Ar1Spec};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::extremal::{compound_marginal_cdf, compound_simulate, ExtremalSpec, SubordinatorSpec};
use crate::law::{LawKind, MaxLaw};
use crate::rng::RandomSource;
use crate::stats::{ks_one_sample, quantile_grid, sup_norm_grid, KS_C_01};

/// Shapes of the parameter lattice.
pub const BETA_LATTICE: [f64; 3] = [0.5, 1.0, 2.0];
/// Geometric parameters of the lattice.
pub const P_LATTICE: [f64; 3] = [0.2, 0.5, 0.9];
/// Sequence indices for the two limit theorems.
pub const LIMIT_SEQUENCE: [u64; 4] = [10, 100, 1000, 10_000];

pub const GRID_POINTS: usize = 1000;
pub const MC_DRAWS: usize = 100_000;
pub const AR1_LAG: usize = 100;
pub const ALGEBRAIC_TOL: f64 = 1e-12;
pub const LIMIT_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T2_1,
    T2_2,
    T2_3,
    T2_4,
    T2_5,
    T2_6,
    T2_7,
    R2_1,
    T3_1,
    T3_2,
    T3_3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::T2_4,
        TheoremId::T2_5,
        TheoremId::T2_6,
        TheoremId::T2_7,
        TheoremId::R2_1,
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::T3_3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2_1",
            TheoremId::T2_2 => "T2_2",
            TheoremId::T2_3 => "T2_3",
            TheoremId::T2_4 => "T2_4",
            TheoremId::T2_5 => "T2_5",
            TheoremId::T2_6 => "T2_6",
            TheoremId::T2_7 => "T2_7",
            TheoremId::R2_1 => "R2_1",
            TheoremId::T3_1 => "T3_1",
            TheoremId::T3_2 => "T3_2",
            TheoremId::T3_3 => "T3_3",
        }
    }

    /// One-line statement of what the check establishes.
    pub fn claim(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "G-gamma-MID(b) is G-MID: exp(-(1/F - 1)) is gamma-MID(b)",
            TheoremId::T2_2 => "G-gamma-MID(b) is a d.f. exactly when gamma-MID(b) is",
            TheoremId::T2_3 => "geo(1/n)-max of gamma-MID(b/n) tends to G-gamma-MID(b)",
            TheoremId::T2_4 => "n-max of G-gamma-MID(b/n) tends to gamma-MID(b)",
            TheoremId::T2_5 => "geo(p)-max of G-MID is G-MID rescaled by b = p^(1/alpha)",
            TheoremId::T2_6 => "1/(1 + a s) is the geo(1/a)-max of 1/(1 + s)",
            TheoremId::T2_7 => "geo(p)-max of G-gamma-MID(b) is G-gamma-MID(b/p)",
            TheoremId::R2_1 => {
                "1/(1 - ln F) is a d.f.; iterating maps base -> G-MID -> G-gamma-MID(1)"
            }
            TheoremId::T3_1 => {
                "gamma-MID(b) extremal process at unit-exponential time is G-gamma-MID(b)"
            }
            TheoremId::T3_2 => "base extremal process at G-gamma(b) time is G-gamma-MID(b)",
            TheoremId::T3_3 => {
                "max-AR(1) is stationary G-gamma-MID(b) iff innovations are G-gamma-MID(p b)"
            }
        }
    }

    fn stream_base(self) -> u64 {
        let idx = TheoremId::ALL
            .iter()
            .position(|&t| t == self)
            .expect("listed") as u64;
        (idx + 1) << 16
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckMode {
    Algebraic,
    MonteCarlo,
}

/// The printed-but-inconsistent variant run alongside a Monte-Carlo check;
/// it is expected to be rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub description: String,
    /// Smallest KS statistic over the lattice.
    pub statistic: f64,
    pub critical_value: f64,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub mode: CheckMode,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_control: Option<NegativeControl>,
}

/// Run the check for one claim.
pub fn verify(id: TheoremId, seed: u64) -> VerificationReport {
    let check = match id {
        TheoremId::T2_1 => check_gmid_characterization(),
        TheoremId::T2_2 => check_validity_equivalence(),
        TheoremId::T2_3 => check_geometric_limit(),
        TheoremId::T2_4 => check_n_max_limit(),
        TheoremId::T2_5 => check_semi_stable(),
        TheoremId::T2_6 => check_scaled_exponent(),
        TheoremId::T2_7 => check_shape_invariance(),
        TheoremId::R2_1 => check_iterate(),
        TheoremId::T3_1 => check_gamma_time_change(seed, id.stream_base()),
        TheoremId::T3_2 => check_ggamma_time_change(seed, id.stream_base()),
        TheoremId::T3_3 => check_max_ar1(seed, id.stream_base()),
    };
    let pass =
        check.discrepancy < check.tolerance && check.control.as_ref().is_none_or(|c| c.rejected);
    VerificationReport {
        theorem_id: id,
        mode: check.mode,
        discrepancy: check.discrepancy,
        tolerance: check.tolerance,
        pass,
        seed,
        detail: check.detail,
        negative_control: check.control,
    }
}

/// Like [`verify`], looking the claim up by name (`"T2_7"`, ...).
pub fn verify_named(name: &str, seed: u64) -> Result<VerificationReport> {
    Ok(verify(name.parse()?, seed))
}

pub fn verify_all(seed: u64) -> Vec<VerificationReport> {
    TheoremId::ALL.iter().map(|&id| verify(id, seed)).collect()
}

struct Check {
    mode: CheckMode,
    discrepancy: f64,
    tolerance: f64,
    detail: String,
    control: Option<NegativeControl>,
}

impl Check {
    fn algebraic(discrepancy: f64, detail: String) -> Self {
        Check {
            mode: CheckMode::Algebraic,
            discrepancy,
            tolerance: ALGEBRAIC_TOL,
            detail,
            control: None,
        }
    }
}

fn exponents() -> [Exponent; 4] {
    [
        Exponent::frechet(1.0).expect("valid"),
        Exponent::frechet(2.0).expect("valid"),
        Exponent::weibull(2.0).expect("valid"),
        Exponent::gumbel(),
    ]
}

fn law(kind: LawKind, e: Exponent, beta: f64) -> MaxLaw {
    MaxLaw::new(kind, e, beta).expect("lattice parameters are valid")
}

fn geo(p: f64) -> GeoP {
    GeoP::new(p).expect("lattice parameters are valid")
}

fn sup<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(f: F, g: G, grid: &[f64]) -> f64 {
    sup_norm_grid(f, g, grid).expect("grids are nonempty")
}

fn check_gmid_characterization() -> Check {
    let mut worst = 0.0f64;
    for e in exponents() {
        for beta in BETA_LATTICE {
            let gg = law(LawKind::GGammaMid, e, beta);
            let g = law(LawKind::GammaMid, e, beta);
            let grid = quantile_grid(&g, GRID_POINTS);
            worst = worst.max(sup(
                |x| (-(1.0 / gg.cdf(x) - 1.0)).exp(),
                |x| g.cdf(x),
                &grid,
            ));
        }
    }
    Check::algebraic(
        worst,
        "sup |exp(1 - 1/F_gg) - F_g| over 4 exponents x 3 shapes".into(),
    )
}

/// Largest violation of the d.f. axioms seen on a grid plus the far ends.
fn df_violation(f: &dyn Fn(f64) -> f64, grid: &[f64]) -> f64 {
    let mut worst = f(f64::NEG_INFINITY)
        .abs()
        .max((1.0 - f(f64::INFINITY)).abs());
    let mut prev = 0.0f64;
    for &x in grid {
        let v = f(x);
        worst = worst.max(prev - v).max(-v).max(v - 1.0);
        prev = v;
    }
    // adding zero turns a negative zero into a plain zero
    worst + 0.0
}

fn check_validity_equivalence() -> Check {
    let mut worst = 0.0f64;
    let mut mismatches = 0;
    for e in exponents() {
        for beta in BETA_LATTICE.iter().chain(&[0.01, 50.0]).copied() {
            let gg = law(LawKind::GGammaMid, e, beta);
            let g = law(LawKind::GammaMid, e, beta);
            let mut grid = quantile_grid(&gg, GRID_POINTS);
            grid.extend(quantile_grid(&g, GRID_POINTS));
            grid.sort_by(f64::total_cmp);
            let a = df_violation(&|x| gg.cdf(x), &grid);
            let b = df_violation(&|x| g.cdf(x), &grid);
            if (a < ALGEBRAIC_TOL) != (b < ALGEBRAIC_TOL) {
                mismatches += 1;
            }
            worst = worst.max(a).max(b);
        }
    }
    let discrepancy = if mismatches > 0 { 1.0 } else { worst };
    Check::algebraic(
        discrepancy,
        format!("largest d.f.-axiom violation, 4 exponents x 5 shapes; {mismatches} validity mismatches"),
    )
}

fn limit_report(distances: &[f64]) -> Check {
    let last = *distances.last().expect("nonempty");
    let worst_rise = distances
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    let listing: Vec<String> = LIMIT_SEQUENCE
        .iter()
        .zip(distances)
        .map(|(n, d)| format!("n={n}: {d:.3e}"))
        .collect();
    Check {
        mode: CheckMode::Algebraic,
        discrepancy: last.max(worst_rise),
        tolerance: LIMIT_TOL,
        detail: format!("sup-grid distance {}", listing.join(", ")),
        control: None,
    }
}

/// Sup-grid distances of the geometric limit sequence to G-gamma-MID(1),
/// Fréchet(1), along [`LIMIT_SEQUENCE`].
pub fn geometric_limit_distances() -> Vec<f64> {
    let e = Exponent::frechet(1.0).expect("valid");
    let target = law(LawKind::GGammaMid, e, 1.0);
    let grid = quantile_grid(&target, GRID_POINTS);
    LIMIT_SEQUENCE
        .iter()
        .map(|&n| {
            sup(
                |x| limit_geo_gamma_cdf(1.0, n, &e, x).expect("valid"),
                |x| target.cdf(x),
                &grid,
            )
        })
        .collect()
}

/// Sup-grid distances of the `n`-max of G-gamma-MID(1/n) to gamma-MID(1).
pub fn n_max_limit_distances() -> Vec<f64> {
    let e = Exponent::frechet(1.0).expect("valid");
    let target = law(LawKind::GammaMid, e, 1.0);
    let grid = quantile_grid(&target, GRID_POINTS);
    LIMIT_SEQUENCE
        .iter()
        .map(|&n| {
            let component = law(LawKind::GGammaMid, e, 1.0 / n as f64);
            sup(
                |x| n_max_cdf(&component, n, x).expect("n >= 1"),
                |x| target.cdf(x),
                &grid,
            )
        })
        .collect()
}

fn check_geometric_limit() -> Check {
    limit_report(&geometric_limit_distances())
}

fn check_n_max_limit() -> Check {
    limit_report(&n_max_limit_distances())
}

fn check_semi_stable() -> Check {
    let mut worst = 0.0f64;
    let exps = [
        Exponent::frechet(1.0).expect("valid"),
        Exponent::frechet(2.0).expect("valid"),
        Exponent::weibull(1.0).expect("valid"),
        Exponent::weibull(2.0).expect("valid"),
    ];
    for e in exps {
        let gmid = MaxLaw::gmid(e);
        let h = CdfExpr::from(gmid);
        let grid = quantile_grid(&gmid, GRID_POINTS);
        for p in P_LATTICE {
            let b = semi_stable_scale(geo(p), &e).expect("power exponent");
            worst = worst.max(sup(
                |x| geo_max_cdf(&h, geo(p), x),
                |x| gmid.cdf(b * x),
                &grid,
            ));
        }
    }
    Check::algebraic(
        worst,
        "sup |geo-max(G-MID) - G-MID(b x)|, Frechet and Weibull branches".into(),
    )
}

fn check_scaled_exponent() -> Check {
    let mut worst = 0.0f64;
    for e in exponents() {
        let gmid = MaxLaw::gmid(e);
        let h = CdfExpr::from(gmid);
        for p in P_LATTICE {
            let scaled = scale_exponent(&h, 1.0 / p).expect("G-MID form");
            let grid = quantile_grid(&gmid, GRID_POINTS);
            worst = worst.max(sup(
                |x| scaled.cdf(x),
                |x| geo_max_cdf(&h, geo(p), x),
                &grid,
            ));
        }
    }
    Check::algebraic(
        worst,
        "sup |1/(1 + a s) - geo(1/a)-max|, a in {5, 2, 1.11}".into(),
    )
}

fn check_shape_invariance() -> Check {
    let mut worst = 0.0f64;
    for e in exponents() {
        for beta in BETA_LATTICE {
            for p in P_LATTICE {
                let h = CdfExpr::from(law(LawKind::GGammaMid, e, beta));
                let target = law(LawKind::GGammaMid, e, beta / p);
                let grid = quantile_grid(&target, GRID_POINTS);
                worst = worst.max(sup(
                    |x| geo_max_cdf(&h, geo(p), x),
                    |x| target.cdf(x),
                    &grid,
                ));
            }
        }
    }
    Check::algebraic(
        worst,
        "sup |geo-max(G-gamma-MID(b)) - G-gamma-MID(b/p)| over the lattice".into(),
    )
}

fn check_iterate() -> Check {
    let mut worst = 0.0f64;
    let mut axiom = 0.0f64;
    for e in exponents() {
        let gmid = MaxLaw::gmid(e);
        let gg = law(LawKind::GGammaMid, e, 1.0);
        let once = iterate_transform(&CdfExpr::from(MaxLaw::base(e)));
        let twice = iterate_transform(&once);
        let grid = quantile_grid(&gg, GRID_POINTS);
        worst = worst.max(sup(|x| once.cdf(x), |x| gmid.cdf(x), &grid));
        worst = worst.max(sup(|x| twice.cdf(x), |x| gg.cdf(x), &grid));
        for kind in LawKind::ALL {
            let mut f = CdfExpr::from(law(kind, e, 0.7));
            for _ in 0..3 {
                f = iterate_transform(&f);
                axiom = axiom.max(df_violation(&|x| f.cdf(x), &grid));
            }
        }
    }
    Check::algebraic(
        worst.max(axiom),
        format!("iterate(base) vs G-MID and iterate^2(base) vs G-gamma-MID(1): {worst:.2e}; d.f. axioms over 3 iterations: {axiom:.2e}"),
    )
}

fn mc_band() -> f64 {
    KS_C_01 / (MC_DRAWS as f64).sqrt()
}

fn compound_check(
    seed: u64,
    stream: u64,
    build: impl Fn(Exponent, f64) -> (ExtremalSpec, SubordinatorSpec),
    label: &str,
) -> Check {
    let e = Exponent::frechet(1.0).expect("valid");
    let mut worst = 0.0f64;
    let mut stats = Vec::new();
    for (i, beta) in BETA_LATTICE.into_iter().enumerate() {
        let (spec, sub) = build(e, beta);
        let target = law(LawKind::GGammaMid, e, beta);
        let mut rng = RandomSource::with_stream(seed, stream + i as u64);
        let xs =
            compound_simulate(&spec, &sub, 1.0, &mut rng, MC_DRAWS).expect("t = 1 is supported");
        let algebraic = sup(
            |x| compound_marginal_cdf(&spec, &sub, 1.0, x).expect("t > 0"),
            |x| target.cdf(x),
            &quantile_grid(&target, GRID_POINTS),
        );
        // a broken closed form would dwarf any KS statistic
        worst = worst.max(algebraic);
        let rep = ks_one_sample(&xs, |x| target.cdf(x)).expect("nonempty");
        worst = worst.max(rep.statistic);
        stats.push(format!("b={beta}: {:.4}", rep.statistic));
    }
    Check {
        mode: CheckMode::MonteCarlo,
        discrepancy: worst,
        tolerance: mc_band(),
        detail: format!("{label}; KS {}", stats.join(", ")),
        control: None,
    }
}

fn check_gamma_time_change(seed: u64, stream: u64) -> Check {
    compound_check(
        seed,
        stream,
        |e, beta| {
            (
                ExtremalSpec::new(law(LawKind::GammaMid, e, beta)),
                SubordinatorSpec::GammaProcess,
            )
        },
        "X(1) = Y(T(1)), Y gamma-MID(b), T gamma process",
    )
}

fn check_ggamma_time_change(seed: u64, stream: u64) -> Check {
    compound_check(
        seed,
        stream,
        |e, beta| {
            (
                ExtremalSpec::new(MaxLaw::base(e)),
                SubordinatorSpec::ggamma(beta).expect("valid"),
            )
        },
        "X(1) = Y(T(1)), Y base, T G-gamma(b)",
    )
}

fn check_max_ar1(seed: u64, stream: u64) -> Check {
    let e = Exponent::frechet(1.0).expect("valid");
    let mut worst = 0.0f64;
    let mut control_best = f64::INFINITY;
    let mut k = 0u64;
    for beta in BETA_LATTICE {
        for p in P_LATTICE {
            let spec = Ar1Spec::new(geo(p), beta, e).expect("valid");
            let mut rng = RandomSource::with_stream(seed, stream + k);
            let rep = stationarity_check(&spec, MC_DRAWS, AR1_LAG, Ar1Init::Stationary, &mut rng)
                .expect("nonempty");
            worst = worst.max(rep.statistic);

            let printed = spec.with_innovation_beta(beta / p).expect("valid");
            let mut rng = RandomSource::with_stream(seed, stream + 100 + k);
            let rep =
                stationarity_check(&printed, MC_DRAWS, AR1_LAG, Ar1Init::Stationary, &mut rng)
                    .expect("nonempty");
            control_best = control_best.min(rep.statistic);
            k += 1;
        }
    }
    let band = mc_band();
    Check {
        mode: CheckMode::MonteCarlo,
        discrepancy: worst,
        tolerance: band,
        detail: format!(
            "X_{AR1_LAG} over {MC_DRAWS} stationary chains with G-gamma-MID(p b) innovations, (b, p) lattice"
        ),
        control: Some(NegativeControl {
            description: "innovations G-gamma-MID(b/p) must not give a G-gamma-MID(b) marginal".into(),
            statistic: control_best,
            critical_value: band,
            rejected: control_best >= band,
        }),
    }
}
