use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use maxid::io::{format_f64, write_chain_csv, write_csv, write_path_csv};
use maxid::stats::{linear_grid, quantile_grid};
use maxid::{
    ar1_simulate, compound_simulate, compound_simulate_path, ep_marginal_quantile,
    ep_simulate_path, stationarity_check, verify, Ar1Init, Ar1Spec, Ar1Summary, Exponent,
    ExponentFamily, ExtremalSpec, GeoP, LawKind, MaxLaw, RandomSource, SubordinatorSpec, TheoremId,
    VerificationReport,
};
use serde_json::json;

use crate::args::{
    Ar1Args, Compound, EpArgs, Family, Format, GridSpec, Kind, LawArgs, OutputArgs, Route,
    SampleArgs, SeedArg, TableArgs, VerifyArgs,
};

pub const SEED_ENV: &str = "MAXID_SEED";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unsupported combination; exit code 2.
    Usage(String),
    /// A requested check did not pass; exit code 1.
    Failed(String),
}

impl From<maxid::Error> for CliError {
    fn from(e: maxid::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

type CliResult = Result<(), CliError>;

fn kind(k: Kind) -> LawKind {
    match k {
        Kind::Base => LawKind::Base,
        Kind::Gmid => LawKind::GMid,
        Kind::GammaMid => LawKind::GammaMid,
        Kind::GgammaMid => LawKind::GGammaMid,
    }
}

fn exponent(f: Family, alpha: f64) -> Result<Exponent, CliError> {
    let family = match f {
        Family::Frechet => ExponentFamily::Frechet,
        Family::Weibull => ExponentFamily::Weibull,
        Family::Gumbel => ExponentFamily::Gumbel,
    };
    Ok(Exponent::new(family, alpha)?)
}

fn build_law(k: Kind, f: Family, alpha: f64, beta: Option<f64>) -> Result<MaxLaw, CliError> {
    let k = kind(k);
    let beta = match (k.has_shape(), beta) {
        (true, None) => return Err(CliError::Usage(format!("--beta is required for kind {k}"))),
        (_, b) => b.unwrap_or(1.0),
    };
    Ok(MaxLaw::new(k, exponent(f, alpha)?, beta)?)
}

fn law_from(args: &LawArgs) -> Result<MaxLaw, CliError> {
    build_law(args.kind, args.family, args.alpha, args.beta)
}

fn seed(arg: &SeedArg) -> Result<u64, CliError> {
    if let Some(s) = arg.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("${SEED_ENV} is not an unsigned integer: `{v}`"))),
        Err(_) => Ok(0),
    }
}

fn open_out(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_values(output: &OutputArgs, meta: serde_json::Value, values: &[f64]) -> CliResult {
    let mut out = open_out(output.out.as_deref())?;
    match output.format {
        Format::Csv => write_csv(&mut out, &["value"], values.iter().map(|&v| vec![v]))?,
        Format::Json => {
            let mut doc = meta;
            doc["values"] = json!(values);
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn table(args: &TableArgs) -> CliResult {
    let law = law_from(&args.law)?;
    let xs = match (args.grid, args.quantile_grid) {
        (Some(GridSpec { lo, hi, count }), None) => linear_grid(lo, hi, count),
        (None, Some(count)) if count > 0 => quantile_grid(&law, count),
        (None, Some(_)) => return Err(CliError::Usage("--quantile-grid needs count >= 1".into())),
        _ => {
            return Err(CliError::Usage(
                "one of --grid or --quantile-grid is required".into(),
            ))
        }
    };
    let mut out = open_out(args.output.out.as_deref())?;
    match args.output.format {
        Format::Csv => write_csv(
            &mut out,
            &["x", "cdf", "neg_log_cdf"],
            xs.iter().map(|&x| vec![x, law.cdf(x), law.neg_log_cdf(x)]),
        )?,
        Format::Json => {
            let rows: Vec<_> = xs
                .iter()
                .map(|&x| json!({"x": x, "cdf": law.cdf(x), "neg_log_cdf": law.neg_log_cdf(x)}))
                .collect();
            let doc = json!({"law": law, "rows": rows});
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn sample(args: &SampleArgs) -> CliResult {
    let law = law_from(&args.law)?;
    let seed = seed(&args.seed)?;
    let mut rng = RandomSource::new(seed);
    let (values, route) = match args.route {
        Route::Inverse => (law.sample_inverse(&mut rng, args.n)?, "inverse"),
        Route::Latent => (law.sample_latent(&mut rng, args.n)?, "latent"),
    };
    let meta = json!({"law": law, "route": route, "seed": seed, "n": args.n});
    write_values(&args.output, meta, &values)
}

fn subordinator(args: &EpArgs) -> Result<Option<SubordinatorSpec>, CliError> {
    Ok(match args.compound {
        Compound::None => None,
        Compound::Gamma => Some(SubordinatorSpec::GammaProcess),
        Compound::Ggamma => {
            let beta = args.sub_beta.or(args.beta).ok_or_else(|| {
                CliError::Usage("--sub-beta (or --beta) is required with --compound ggamma".into())
            })?;
            Some(SubordinatorSpec::ggamma(beta)?)
        }
    })
}

pub fn ep(args: &EpArgs) -> CliResult {
    let law = build_law(args.base, args.family, args.alpha, args.beta)?;
    let spec = ExtremalSpec::new(law);
    let sub = subordinator(args)?;
    let seed = seed(&args.seed)?;
    let mut rng = RandomSource::new(seed);

    if args.path {
        let times = match (&args.times, args.grid) {
            (Some(t), None) => t.clone(),
            (None, Some(GridSpec { lo, hi, count })) => linear_grid(lo, hi, count),
            _ => return Err(CliError::Usage("--path needs --times or --grid".into())),
        };
        let path = match &sub {
            None => ep_simulate_path(&spec, &times, &mut rng)?,
            Some(s) => compound_simulate_path(&spec, s, &times, &mut rng)?,
        };
        let mut out = open_out(args.output.out.as_deref())?;
        match args.output.format {
            Format::Csv => write_path_csv(&mut out, &path)?,
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &path).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        out.flush()?;
        return Ok(());
    }

    if let Some(s) = &sub {
        s.check_time(args.t)?;
    }
    let values = match &sub {
        None => {
            let mut v = Vec::with_capacity(args.n);
            for _ in 0..args.n {
                v.push(ep_marginal_quantile(&spec, args.t, rng.uniform_open())?);
            }
            if v.is_empty() {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            v
        }
        Some(s) => compound_simulate(&spec, s, args.t, &mut rng, args.n)?,
    };
    let meta = json!({"base": law, "subordinator": sub, "t": args.t, "seed": seed, "n": args.n});
    write_values(&args.output, meta, &values)
}

pub fn ar1(args: &Ar1Args) -> CliResult {
    let p = GeoP::new(args.p)?;
    let mut spec = Ar1Spec::new(p, args.beta, exponent(args.family, args.alpha)?)?;
    if let Some(b) = args.innovation_beta_override {
        spec = spec.with_innovation_beta(b)?;
    }
    let init = match args.x0 {
        Some(x0) => Ar1Init::Fixed(x0),
        None => Ar1Init::Stationary,
    };
    let seed = seed(&args.seed)?;
    let chain = ar1_simulate(&spec, args.steps, init, &mut RandomSource::new(seed))?;
    let mut out = open_out(args.out.as_deref())?;
    write_chain_csv(&mut out, &chain)?;
    out.flush()?;
    drop(out);

    let check = if args.check {
        // the check uses its own stream so the chain above is unaffected
        let mut rng = RandomSource::with_stream(seed, 1);
        Some(stationarity_check(
            &spec,
            args.chains,
            args.lag,
            init,
            &mut rng,
        )?)
    } else {
        None
    };
    let summary = Ar1Summary::new(&spec, check.as_ref());
    let text = serde_json::to_string_pretty(&summary).map_err(io::Error::from)?;
    match &args.summary {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => eprintln!("{text}"),
    }
    match check {
        Some(rep) if !rep.pass => Err(CliError::Failed(format!(
            "stationarity check failed: KS {} >= {}",
            format_f64(rep.statistic),
            format_f64(rep.critical_value)
        ))),
        _ => Ok(()),
    }
}

fn parse_ids(ids: &[String]) -> Result<Vec<TheoremId>, CliError> {
    if ids.is_empty() || ids.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        if ids.len() > 1 {
            return Err(CliError::Usage(
                "`all` cannot be combined with other ids".into(),
            ));
        }
        return Ok(TheoremId::ALL.to_vec());
    }
    ids.iter()
        .map(|s| s.parse::<TheoremId>().map_err(CliError::from))
        .collect()
}

fn render_table(reports: &[VerificationReport]) -> String {
    let mut s = format!(
        "{:<6} {:<11} {:>12} {:>12} {:<6}\n",
        "id", "mode", "discrepancy", "tolerance", "result"
    );
    for r in reports {
        let mode = match r.mode {
            maxid::CheckMode::Algebraic => "algebraic",
            maxid::CheckMode::MonteCarlo => "monte-carlo",
        };
        s += &format!(
            "{:<6} {:<11} {:>12.3e} {:>12.3e} {:<6}\n",
            r.theorem_id.name(),
            mode,
            r.discrepancy,
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        );
        if let Some(c) = &r.negative_control {
            s += &format!(
                "{:<6} {:<11} {:>12.3e} {:>12.3e} {:<6}\n",
                "",
                "  control",
                c.statistic,
                c.critical_value,
                if c.rejected { "REJ" } else { "ACCEPT" }
            );
        }
    }
    s
}

pub fn verify_cmd(args: &VerifyArgs) -> CliResult {
    let ids = parse_ids(&args.ids)?;
    let seed = seed(&args.seed)?;
    let reports: Vec<VerificationReport> = ids.iter().map(|&id| verify(id, seed)).collect();
    let json = serde_json::to_string_pretty(&reports).map_err(io::Error::from)?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    write!(out, "{}", render_table(&reports))?;
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => writeln!(out, "{json}")?,
    }
    out.flush()?;

    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.theorem_id.name())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert_eq!(parse_ids(&["all".into()]).unwrap().len(), 11);
        assert_eq!(parse_ids(&[]).unwrap().len(), 11);
        assert_eq!(
            parse_ids(&["T2_7".into(), "r2_1".into()]).unwrap(),
            [TheoremId::T2_7, TheoremId::R2_1]
        );
        assert!(matches!(
            parse_ids(&["bogus".into()]),
            Err(CliError::Usage(_))
        ));
        assert!(parse_ids(&["all".into(), "T2_1".into()]).is_err());
    }

    #[test]
    fn beta_required_for_shaped_kinds() {
        assert!(build_law(Kind::GgammaMid, Family::Frechet, 1.0, None).is_err());
        assert!(build_law(Kind::Gmid, Family::Frechet, 1.0, None).is_ok());
        assert!(build_law(Kind::GammaMid, Family::Weibull, 2.0, Some(0.5)).is_ok());
        assert!(build_law(Kind::GammaMid, Family::Weibull, -2.0, Some(0.5)).is_err());
    }
}
