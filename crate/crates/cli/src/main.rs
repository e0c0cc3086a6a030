//! `spiked`: sample the spiked ensembles, run the verification suites and
//! tabulate the analytic curves.
//!
//! Exit codes: 0 success, 1 a suite failed, 2 bad arguments or unsupported
//! parameters, 3 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spiked_wishart::analytic::hyp1f1_spiked;
use spiked_wishart::harness::suites::{
    consistency_suite, density_blind_suite, eigenvector_suite, equivalence_suite, hardedge_suite, identity_suite,
    pde_residual_suite, residue_suite, sao_suite, softedge_w0_suite, softedge_w_suite, AlgebraParams,
    DensityBlindParams, EquivalenceParams, HardEdgeParams, PdeParams, SaoParams, SoftEdgeParams,
};
use spiked_wishart::harness::{draw_spectra, par_draw, SuiteName, SuiteOutcome, Variants};
use spiked_wishart::io::{write_samples, write_table, write_table_to, SampleSidecar};
use spiked_wishart::painleve::{default_table, spiked_edge_cdf, tw_goe_cdf, PainleveTable};
use spiked_wishart::sampling::pencil::PencilSpikeScaling;
use spiked_wishart::sampling::sao::{sample_stochastic_airy, RobinSaoConfig};
use spiked_wishart::sampling::secular::ZeroWeightScale;
use spiked_wishart::sampling::{Construction, SpikeConfig};
use spiked_wishart::softedge::density_blind;
use spiked_wishart::Error;

#[derive(Parser)]
#[command(name = "spiked", version, about = "Spiked Wishart beta-ensembles: samples, checks and curves")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for default output paths.
    #[arg(long, global = true, env = "SPIKED_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw spectra from one construction and write CSV plus a JSON sidecar.
    Sample(SampleArgs),
    /// Run a verification suite and write its JSON report.
    Verify(VerifyArgs),
    /// Tabulate an analytic curve as CSV.
    Curves(CurveArgs),
}

#[derive(Args, Clone)]
struct SpikeArgs {
    #[arg(long)]
    beta: Option<f64>,
    /// Number of rows n (may be fractional).
    #[arg(long)]
    n: Option<f64>,
    /// Number of eigenvalues N.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Spike value(s); comma-separated for the multi-spike construction.
    #[arg(long, value_delimiter = ',')]
    b: Vec<f64>,
}

impl SpikeArgs {
    fn config(&self) -> Result<SpikeConfig, Failure> {
        let (Some(beta), Some(n), Some(big_n)) = (self.beta, self.n, self.big_n) else {
            return Err(Failure::usage("--beta, --n and --N are required"));
        };
        if self.b.is_empty() {
            return Err(Failure::usage("--b is required"));
        }
        Ok(SpikeConfig::new(beta, n, big_n, self.b.clone())?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Q0Scale {
    Two,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum PencilScaling {
    Linear,
    Sqrt,
}

#[derive(Args)]
struct SampleArgs {
    /// bidiagonal, secular, pencil, multispike or sao.
    #[arg(long)]
    construction: String,
    #[command(flatten)]
    spike: SpikeArgs,
    /// Robin parameter of the stochastic Airy operator (`inf` for Dirichlet).
    #[arg(long, default_value_t = 0.0)]
    w: f64,
    /// Grid step of the stochastic Airy operator.
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    /// Number of smallest operator eigenvalues kept per draw.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Output file (default: <out-dir>/<construction>-seed<seed>.<format>).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, value_enum, default_value = "two")]
    q0_scale: Q0Scale,
    #[arg(long, value_enum, default_value = "linear")]
    pencil_scaling: PencilScaling,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Master seed; required by every suite that draws random numbers.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the suite's default sample count.
    #[arg(long)]
    samples: Option<usize>,
    /// Configuration of the equivalence suite (default β=2, n=6, N=4, b=1.5).
    #[command(flatten)]
    spike: SpikeArgs,
    #[arg(long, value_enum, default_value = "two")]
    q0_scale: Q0Scale,
    #[arg(long, value_enum, default_value = "linear")]
    pencil_scaling: PencilScaling,
    /// Directory for the report (default: <out-dir>).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    /// tw-goe, spiked-edge, density-blind, painleve-table or hyp1f1.
    #[arg(long)]
    curve: String,
    #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    s_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    w: f64,
    /// β of the hypergeometric function (abscissa is its argument scale c).
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    /// Points of the hypergeometric function, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a, &cli.out_dir).map(|()| true),
        Command::Verify(a) => cmd_verify(a, &cli.out_dir),
        Command::Curves(a) => cmd_curves(a).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
    }
}

fn is_broken_pipe(e: &Error) -> bool {
    let io = match e {
        Error::Io(e) => Some(e),
        Error::Csv(e) => match e.kind() {
            csv::ErrorKind::Io(e) => Some(e),
            _ => None,
        },
        _ => None,
    };
    io.is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn variants(q0: Q0Scale, pencil: PencilScaling) -> Variants {
    Variants {
        zero_scale: match q0 {
            Q0Scale::Two => ZeroWeightScale::Two,
            Q0Scale::Half => ZeroWeightScale::Half,
        },
        pencil_scaling: match pencil {
            PencilScaling::Linear => PencilSpikeScaling::Linear,
            PencilScaling::Sqrt => PencilSpikeScaling::SquareRoot,
        },
    }
}

fn cmd_sample(a: &SampleArgs, out_dir: &Path) -> Result<(), Failure> {
    let construction: Construction = a.construction.parse()?;
    if a.samples == 0 {
        return Err(Failure::usage("--samples must be positive"));
    }
    let (rows, columns, config) = match construction {
        Construction::Sao => {
            let beta = a.spike.beta.ok_or_else(|| Failure::usage("--beta is required"))?;
            let cfg = RobinSaoConfig { step: a.step, k: a.k, ..RobinSaoConfig::new(beta, a.w) };
            cfg.cells()?;
            let rows = par_draw(a.seed, construction.tag(), a.samples, |rng| sample_stochastic_airy(&cfg, rng))?;
            let columns = (1..=a.k).map(|i| format!("mu_{i}")).collect();
            (rows, columns, serde_json::to_value(&cfg).unwrap_or_default())
        }
        Construction::Hermite => return Err(Failure::usage("construction must be one of bidiagonal, secular, pencil, multispike, sao")),
        _ => {
            let cfg = a.spike.config()?;
            let v = variants(a.q0_scale, a.pencil_scaling);
            let spectra = draw_spectra(construction, &cfg, v, a.samples, a.seed)?;
            let rows = spectra.into_iter().map(|s| s.into_vec()).collect();
            let columns = (1..=cfg.big_n).map(|i| format!("lambda_{i}")).collect();
            let mut config = serde_json::to_value(&cfg).unwrap_or_default();
            if v != Variants::default() {
                config["variants"] = serde_json::json!(format!("{v:?}"));
            }
            (rows, columns, config)
        }
    };
    let ext = match a.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = a.out.clone().unwrap_or_else(|| out_dir.join(format!("{}-seed{}.{ext}", construction.tag(), a.seed)));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let sidecar = SampleSidecar {
        construction,
        seed: a.seed,
        n_samples: a.samples,
        config,
        columns,
        command: std::env::args().skip(1).collect(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    match a.format {
        Format::Csv => {
            write_samples(&path, &rows, &sidecar)?;
        }
        Format::Json => {
            let doc = serde_json::json!({ "metadata": sidecar, "samples": rows });
            fs::write(&path, serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n")?;
        }
    }
    println!("wrote {} draws to {}", a.samples, path.display());
    Ok(())
}

fn require_seed(a: &VerifyArgs) -> Result<u64, Failure> {
    a.seed.ok_or_else(|| Failure::usage("--seed is required for this suite"))
}

fn cmd_verify(a: &VerifyArgs, out_dir: &Path) -> Result<bool, Failure> {
    let suite: SuiteName = a.suite.parse()?;
    let table = || -> Result<PainleveTable, Failure> { Ok(default_table()?) };
    let n = |default: usize| a.samples.unwrap_or(default);
    let algebra = |seed, n_configs, tol| AlgebraParams { seed, n_configs, tol };
    let outcome: SuiteOutcome = match suite {
        SuiteName::Equivalence => {
            let given = a.spike.beta.is_some() || a.spike.n.is_some() || a.spike.big_n.is_some() || !a.spike.b.is_empty();
            let cfg = if given { a.spike.config()? } else { SpikeConfig::single(2.0, 6.0, 4, 1.5)? };
            let mut p = EquivalenceParams::new(cfg, n(10_000), require_seed(a)?);
            p.variants = variants(a.q0_scale, a.pencil_scaling);
            equivalence_suite(&p)?
        }
        SuiteName::Hardedge => hardedge_suite(&HardEdgeParams::new(n(100_000), require_seed(a)?))?,
        SuiteName::SoftedgeW0 => softedge_w0_suite(&table()?, &SoftEdgeParams::new(n(10_000), require_seed(a)?))?,
        SuiteName::SoftedgeW => softedge_w_suite(&table()?, &SoftEdgeParams::new(n(10_000), require_seed(a)?))?,
        SuiteName::DensityBlind => density_blind_suite(&DensityBlindParams::new(n(10_000), require_seed(a)?))?,
        SuiteName::PdeResidual => pde_residual_suite(&table()?, &PdeParams::default())?,
        SuiteName::Sao => sao_suite(&table()?, &SaoParams::new(n(5_000), require_seed(a)?))?,
        SuiteName::Identity => identity_suite(&table()?, 1e-10)?,
        SuiteName::Consistency => {
            consistency_suite(&algebra(require_seed(a)?, n(100), 1e-6), &[(2.0, 3), (4.0, 3), (1.0, 4)])?
        }
        SuiteName::Residue => residue_suite(&algebra(require_seed(a)?, n(100), 1e-8), &[2, 3, 5])?,
        SuiteName::Eigenvector => eigenvector_suite(&algebra(require_seed(a)?, n(1_000), 1e-10), 12)?,
    };
    let dir = a.out.clone().unwrap_or_else(|| out_dir.to_path_buf());
    let written = outcome.write(&dir)?;
    let r = &outcome.report;
    for c in r.comparisons.iter().filter(|c| c.counted) {
        let value = c.p_value.map(|p| format!("p = {p:.3e}")).unwrap_or_else(|| format!("{:.3e}", c.statistic));
        println!("{} {}: {value} (threshold {:.3e})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.threshold);
    }
    println!("suite {}: {}", r.suite, if r.pass { "PASS" } else { "FAIL" });
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(r.pass)
}

fn grid(a: &CurveArgs) -> Result<Vec<f64>, Failure> {
    if !(a.s_min.is_finite() && a.s_max.is_finite() && a.s_max >= a.s_min && a.step > 0.0) {
        return Err(Failure::usage("need finite --s-min <= --s-max and --step > 0"));
    }
    let count = ((a.s_max - a.s_min) / a.step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(Failure::usage("grid has more than 10^7 points"));
    }
    Ok((0..count).map(|k| a.s_min + k as f64 * a.step).collect())
}

fn cmd_curves(a: &CurveArgs) -> Result<(), Failure> {
    let (columns, rows): (Vec<&str>, Vec<Vec<f64>>) = match a.curve.as_str() {
        "tw-goe" => {
            let t = default_table()?;
            let rows = grid(a)?.into_iter().map(|s| Ok(vec![s, tw_goe_cdf(&t, s)?])).collect::<Result<_, Error>>()?;
            (vec!["s", "F"], rows)
        }
        "spiked-edge" => {
            let t = default_table()?;
            let rows =
                grid(a)?.into_iter().map(|s| Ok(vec![s, spiked_edge_cdf(&t, s, a.w)?])).collect::<Result<_, Error>>()?;
            (vec!["x", "F"], rows)
        }
        "density-blind" => {
            let rows =
                grid(a)?.into_iter().map(|x| Ok(vec![x, density_blind(x, a.w)?])).collect::<Result<_, Error>>()?;
            (vec!["X", "rho"], rows)
        }
        "painleve-table" => {
            let t = default_table()?;
            let rows = grid(a)?
                .into_iter()
                .map(|s| {
                    let (q, qp) = t.q_at(s)?;
                    Ok(vec![s, q, qp, t.ln_e_at(s)?.exp(), t.ln_f_at(s)?.exp()])
                })
                .collect::<Result<_, Error>>()?;
            (vec!["s", "q", "q_prime", "E", "F"], rows)
        }
        "hyp1f1" => {
            if a.x.is_empty() {
                return Err(Failure::usage("--x is required for hyp1f1"));
            }
            let rows =
                grid(a)?.into_iter().map(|c| Ok(vec![c, hyp1f1_spiked(a.beta, c, &a.x)?])).collect::<Result<_, Error>>()?;
            (vec!["c", "value"], rows)
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown curve '{other}' (tw-goe, spiked-edge, density-blind, painleve-table, hyp1f1)"
            )))
        }
    };
    match &a.out {
        Some(p) => write_table(p, &columns, &rows)?,
        None => match write_table_to(std::io::stdout().lock(), &columns, &rows) {
            // A closed pipe (`| head`) is not a failure.
            Err(e) if is_broken_pipe(&e) => {}
            r => r?,
        },
    }
    Ok(())
}
