use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use smoothprod::asymptotics::{
    can_of_pens_log_psi, estimate_report, predicted_exponents, regime_classify, DEFAULT_BAND_CONSTANT,
};
use smoothprod::expt::{encode_records, sweep, verify, Format, Guards, SweepConfig};
use smoothprod::setops::{additive_energy, factor_witness, productset, sumset, trivial_quadruples};
use smoothprod::{enumerate_smooth, psi_exact, Error, IntegerSet, Natural, PsiMemo, SmoothParams};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "smoothprod", version, about = "Sum and product sets of smooth numbers")]
struct Cli {
    /// Ψ memo file, loaded before and saved after the run.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Output encoding (csv|json). Overrides the sweep config.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Output file (default standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Constant `c` of the `y ≤ c·log x` band used by the regime classifier.
    #[arg(long, global = true, default_value_t = DEFAULT_BAND_CONSTANT)]
    band_constant: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ψ(x, y).
    Psi { x: f64, y: f64 },
    /// Elements of S(x, y) in increasing order.
    Enum { x: f64, y: f64 },
    /// |A + A| for A = S(x, y).
    Sumset { x: f64, y: f64 },
    /// |A · A| for A = S(x, y).
    Prodset { x: f64, y: f64 },
    /// Additive energy of S(x, y).
    Energy { x: f64, y: f64 },
    /// Factor n ∈ S(x²/y, y) as a product of two elements of S(x, y).
    Witness { n: Natural, x: f64, y: f64 },
    /// Exact Ψ against the estimators, with the regime and predicted exponents.
    Estimate { x: f64, y: f64 },
    /// Run a sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a named invariant suite.
    Verify { suite: String },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct PsiRecord {
    x: f64,
    y: f64,
    psi: Natural,
}

#[derive(Serialize)]
struct ElementRecord {
    n: Natural,
}

#[derive(Serialize)]
struct SizeRecord {
    x: f64,
    y: f64,
    psi: Natural,
    size: Natural,
    exponent: Option<f64>,
}

#[derive(Serialize)]
struct EnergyRecord {
    x: f64,
    y: f64,
    psi: Natural,
    total: Natural,
    trivial: Natural,
    nontrivial: Natural,
}

#[derive(Serialize)]
struct WitnessRecord {
    n: Natural,
    x: f64,
    y: f64,
    d: Natural,
    e: Natural,
    case: String,
}

#[derive(Serialize)]
struct EstimateRecord {
    x: f64,
    y: f64,
    regime: &'static str,
    psi: Option<Natural>,
    exact_log_psi: Option<f64>,
    debruijn_log_psi: f64,
    debruijn_rel_error: Option<f64>,
    ennola_psi: Option<f64>,
    ennola_rel_error: Option<f64>,
    ennola_budget: Option<f64>,
    can_of_pens_log_psi: Option<f64>,
    predicted_sum: Option<f64>,
    predicted_sum_bound: &'static str,
    predicted_product: Option<f64>,
    predicted_product_bound: &'static str,
}

/// Outcome of a command that ran to completion.
struct Outcome {
    bytes: Vec<u8>,
    checks_pass: bool,
}

impl Outcome {
    fn ok(bytes: Vec<u8>) -> Self {
        Outcome { bytes, checks_pass: true }
    }
}

fn guarded_set(x: f64, y: f64, memo: &PsiMemo) -> smoothprod::Result<IntegerSet> {
    let params = SmoothParams::new(x, y)?;
    let guards = Guards::default();
    let floor_x = params.floor_x()?;
    if floor_x > guards.max_floor_x {
        return Err(Error::LimitExceeded {
            what: "floor_x",
            value: floor_x,
            limit: guards.max_floor_x,
        });
    }
    let psi = psi_exact(params, memo)?;
    if psi > guards.max_psi {
        return Err(Error::LimitExceeded {
            what: "psi",
            value: psi,
            limit: guards.max_psi,
        });
    }
    Ok(IntegerSet::from(enumerate_smooth(params)?))
}

fn exponent(size: Natural, psi: Natural) -> Option<f64> {
    (psi >= 2).then(|| (size as f64).ln() / (psi as f64).ln())
}

fn estimate(x: f64, y: f64, band_constant: f64, memo: &PsiMemo) -> smoothprod::Result<EstimateRecord> {
    let params = SmoothParams::new(x, y)?;
    let psi = match params.floor_x()? {
        fx if fx <= Guards::default().max_floor_x => Some(psi_exact(params, memo)?),
        _ => None,
    };
    let report = estimate_report(x, y, psi)?;
    let spec = regime_classify(x, y, band_constant, None)?;
    let prediction = predicted_exponents(&spec)?;
    Ok(EstimateRecord {
        x,
        y,
        regime: spec.name(),
        psi,
        exact_log_psi: report.exact_log_psi,
        debruijn_log_psi: report.debruijn_log_psi,
        debruijn_rel_error: report.debruijn_rel_error,
        ennola_psi: report.ennola_psi,
        ennola_rel_error: report.ennola_rel_error,
        ennola_budget: report.ennola_budget,
        can_of_pens_log_psi: can_of_pens_log_psi(x, y).ok(),
        predicted_sum: prediction.sum_exponent.value(),
        predicted_sum_bound: prediction.sum_exponent.direction(),
        predicted_product: prediction.product_exponent.value(),
        predicted_product_bound: prediction.product_exponent.direction(),
    })
}

fn run_command(cli: &Cli, memo: &PsiMemo) -> smoothprod::Result<Outcome> {
    let format = cli.format.unwrap_or_default();
    match &cli.command {
        &Command::Psi { x, y } => {
            let psi = psi_exact(SmoothParams::new(x, y)?, memo)?;
            Ok(Outcome::ok(encode_records(&[PsiRecord { x, y, psi }], format)?))
        }
        &Command::Enum { x, y } => {
            let set = guarded_set(x, y, memo)?;
            let rows: Vec<_> = set.elements().iter().map(|&n| ElementRecord { n }).collect();
            Ok(Outcome::ok(encode_records(&rows, format)?))
        }
        &Command::Sumset { x, y } | &Command::Prodset { x, y } => {
            let set = guarded_set(x, y, memo)?;
            let op = if matches!(cli.command, Command::Sumset { .. }) { sumset } else { productset };
            let psi = set.len() as Natural;
            let size = op(&set)?.len() as Natural;
            let record = SizeRecord {
                x,
                y,
                psi,
                size,
                exponent: exponent(size, psi),
            };
            Ok(Outcome::ok(encode_records(&[record], format)?))
        }
        &Command::Energy { x, y } => {
            let set = guarded_set(x, y, memo)?;
            let psi = set.len() as Natural;
            let c = additive_energy(&set)?;
            let record = EnergyRecord {
                x,
                y,
                psi,
                total: c.total,
                trivial: trivial_quadruples(psi),
                nontrivial: c.nontrivial,
            };
            Ok(Outcome::ok(encode_records(&[record], format)?))
        }
        &Command::Witness { n, x, y } => {
            let w = factor_witness(n, x, y)?;
            let record = WitnessRecord {
                n,
                x,
                y,
                d: w.d,
                e: w.e,
                case: w.case.to_string(),
            };
            Ok(Outcome::ok(encode_records(&[record], format)?))
        }
        &Command::Estimate { x, y } => {
            let record = estimate(x, y, cli.band_constant, memo)?;
            Ok(Outcome::ok(encode_records(&[record], format)?))
        }
        Command::Sweep { config } => {
            let config = SweepConfig::load(config)?;
            let rows = sweep(&config, memo)?;
            let checks_pass = rows
                .iter()
                .all(|r| r.checks_pass() && r.product_exponent_in_sandwich().unwrap_or(true));
            let format = cli.format.unwrap_or(config.format);
            Ok(Outcome {
                bytes: encode_records(&rows, format)?,
                checks_pass,
            })
        }
        Command::Verify { suite } => {
            let summary = verify(suite, memo)?;
            let bytes = match cli.format {
                Some(Format::Json) => {
                    let mut b = serde_json::to_vec_pretty(&summary).map_err(|e| Error::Encode(e.to_string()))?;
                    b.push(b'\n');
                    b
                }
                _ => summary.to_string().into_bytes(),
            };
            Ok(Outcome {
                bytes,
                checks_pass: summary.passed(),
            })
        }
    }
}

/// A sweep config may name the cache; the command-line flag wins.
fn cache_path(cli: &Cli) -> smoothprod::Result<Option<PathBuf>> {
    if cli.cache.is_some() {
        return Ok(cli.cache.clone());
    }
    match &cli.command {
        Command::Sweep { config } => Ok(SweepConfig::load(config)?.cache),
        _ => Ok(None),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> smoothprod::Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => io::stdout().write_all(bytes).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvariantViolation(_) => EXIT_CHECK,
        _ => EXIT_USAGE,
    }
}

fn run(cli: &Cli) -> smoothprod::Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    let cache = cache_path(cli)?;
    let memo = match &cache {
        Some(path) => PsiMemo::load(path)?,
        None => PsiMemo::new(),
    };
    let outcome = run_command(cli, &memo);
    if let Some(path) = &cache {
        memo.save(path)?;
    }
    let outcome = outcome?;
    write_output(cli.out.as_deref(), &outcome.bytes)?;
    Ok(outcome.checks_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK),
        Err(e) => {
            eprintln!("smoothprod: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
