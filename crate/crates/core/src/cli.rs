//! The `proxcatch` command line: Monte Carlo distributions of γ, tests on
//! user data and power studies. Data goes to `--output` (written atomically)
//! or standard output; diagnostics go to standard error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geometry::{delaunay, DelaunayMesh, Point};
use crate::inference::{power_study, run_test, CriticalMode, Side};
use crate::proximity::RFactor;
use crate::simulation::{
    random_mesh, replicate_gamma, with_threads, AlternativeSpec, ReplicationPlan,
};

/// Sample sizes of the reference grid.
pub const TABLE_N: [usize; 12] = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 200, 300];

#[derive(Debug, Parser)]
#[command(
    name = "proxcatch",
    version,
    about = "Proximity catch digraphs and the mean domination test"
)]
pub struct Cli {
    /// Worker threads for replication; results do not depend on it.
    #[arg(long, global = true, env = "PROXCATCH_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo distribution of γ for uniform data on the standard triangle.
    Simulate(SimulateArgs),
    /// Test a point pattern X against the Delaunay triangulation of Y.
    Test(TestArgs),
    /// Rejection rates of the test under a chosen model.
    Power(PowerArgs),
    /// γ distributions over the reference grid of n plus a large-n row.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Output file; standard output if absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1.5")]
    pub r: RFactor,
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// CSV with header `x,y`: the points under test.
    #[arg(long)]
    pub x_file: PathBuf,
    /// CSV with header `x,y`: the Delaunay sites.
    #[arg(long)]
    pub y_file: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value = "1.5")]
    pub r: RFactor,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Null,
    Segregation,
    Association,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Critical {
    Asymptotic,
    Empirical,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long, value_enum, default_value_t = Model::Null)]
    pub alternative: Model,
    #[arg(long, conflicts_with = "delta")]
    pub epsilon: Option<f64>,
    /// Area fraction removed at each vertex (segregation only).
    #[arg(long)]
    pub delta: Option<f64>,
    /// CSV with header `x,y` of Delaunay sites; a random mesh if absent.
    #[arg(long)]
    pub y_file: Option<PathBuf>,
    /// Sites of the random mesh, uniform on the unit square.
    #[arg(long, default_value_t = 10)]
    pub sites: usize,
    /// Required triangle count of the random mesh.
    #[arg(long, default_value_t = 13)]
    pub triangles: usize,
    #[arg(long, default_value_t = 2004)]
    pub mesh_seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Critical::Asymptotic)]
    pub critical: Critical,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, default_value_t = 1000)]
    pub replicates: usize,
    /// Row `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "1.5")]
    pub r: RFactor,
    /// Sample size of the final row.
    #[arg(long, default_value_t = 5000)]
    pub large_n: usize,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Data(e.to_string())
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn main() -> ExitCode {
    main_with(std::env::args_os())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli.threads;
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    with_threads(threads, move || match cli.command {
        Command::Simulate(a) => simulate(&a),
        Command::Test(a) => test(&a),
        Command::Power(a) => power(&a),
        Command::Tables(a) => tables(&a),
    })
}

const SIMULATE_HEADER: &str = "n,r,replicates,seed,count_gamma1,count_gamma2,count_gamma3";

fn simulate(a: &SimulateArgs) -> Result<(), CliError> {
    if a.replicates == 0 {
        return Err(CliError::Usage("--replicates must be at least 1".into()));
    }
    let h = replicate_gamma(&ReplicationPlan::standard(a.n, a.replicates, a.seed, a.r))?;
    let mut out = format!("{SIMULATE_HEADER}\n");
    writeln!(
        out,
        "{},{},{},{},{},{},{}",
        h.n, h.r, h.replicates, h.seed, h.counts[1], h.counts[2], h.counts[3]
    )
    .expect("write to string");
    emit(a.out.output.as_deref(), out.as_bytes())
}

fn test(a: &TestArgs) -> Result<(), CliError> {
    check_alpha(a.alpha)?;
    let x = read_points(&a.x_file)?;
    let y = read_points(&a.y_file)?;
    let outcome = run_test(&x, &y, a.r, a.alpha)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let mut json =
        serde_json::to_string_pretty(&outcome).map_err(|e| CliError::Internal(e.to_string()))?;
    json.push('\n');
    emit(a.out.output.as_deref(), json.as_bytes())
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

fn alternative(a: &PowerArgs) -> Result<AlternativeSpec, CliError> {
    let usage = |m: &str| CliError::Usage(m.to_string());
    let spec = match (a.alternative, a.epsilon, a.delta) {
        (Model::Null, None, None) => Ok(AlternativeSpec::Null),
        (Model::Null, _, _) => {
            return Err(usage("the null model takes neither --epsilon nor --delta"))
        }
        (Model::Segregation, Some(e), None) => AlternativeSpec::segregation(e),
        (Model::Segregation, None, Some(d)) => AlternativeSpec::segregation_from_delta(d),
        (Model::Association, Some(e), None) => AlternativeSpec::association(e),
        (Model::Association, _, Some(_)) => {
            return Err(usage("--delta applies to segregation only"))
        }
        (_, None, None) => {
            return Err(usage(
                "segregation and association need --epsilon (or --delta)",
            ))
        }
        (_, Some(_), Some(_)) => return Err(usage("--epsilon and --delta are exclusive")),
    };
    spec.map_err(|e| CliError::Usage(e.to_string()))
}

const POWER_HEADER: &str = "alternative,epsilon,J,n,replicates,critical_mode,alpha,rate";

fn power(a: &PowerArgs) -> Result<(), CliError> {
    check_alpha(a.alpha)?;
    if a.replicates == 0 {
        return Err(CliError::Usage("--replicates must be at least 1".into()));
    }
    let alt = alternative(a)?;
    let mesh: DelaunayMesh = match &a.y_file {
        Some(path) => delaunay(&read_points(path)?)?,
        None => {
            let (mesh, stream) = random_mesh(a.sites, a.triangles, a.mesh_seed)?;
            eprintln!(
                "mesh: {} sites, {} triangles, seed {} stream {stream}",
                a.sites,
                mesh.len(),
                a.mesh_seed
            );
            mesh
        }
    };
    let mode = match a.critical {
        Critical::Asymptotic => CriticalMode::Asymptotic,
        Critical::Empirical => CriticalMode::Empirical,
    };
    let study = power_study(&mesh, a.n, alt, a.replicates, a.alpha, a.seed, mode)?;
    let mut out = format!("{POWER_HEADER}\n");
    for sr in &study.rates {
        let label = match (alt, sr.side) {
            (AlternativeSpec::Null, Side::Segregation) => "null-segregation",
            (AlternativeSpec::Null, Side::Association) => "null-association",
            _ => alt.name(),
        };
        let eps = alt.epsilon().map(|e| e.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{label},{eps},{},{},{},{},{},{}",
            study.j,
            study.n,
            study.replicates,
            mode.name(),
            sr.level,
            sr.rate
        )
        .expect("write to string");
    }
    emit(a.out.output.as_deref(), out.as_bytes())
}

const TABLES_HEADER: &str =
    "n,r,replicates,seed,count_gamma1,count_gamma2,count_gamma3,p_gamma1,p_gamma2,p_gamma3,tolerance_3se";

fn tables(a: &TablesArgs) -> Result<(), CliError> {
    if a.replicates == 0 {
        return Err(CliError::Usage("--replicates must be at least 1".into()));
    }
    let ns = TABLE_N.iter().copied().chain(std::iter::once(a.large_n));
    // Largest binomial standard error, at p = 1/2.
    let tol = 3.0 * (0.25 / a.replicates as f64).sqrt();
    let mut out = format!("{TABLES_HEADER}\n");
    for (i, n) in ns.enumerate() {
        let seed = a.seed.wrapping_add(i as u64);
        let h = replicate_gamma(&ReplicationPlan::standard(n, a.replicates, seed, a.r))?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            h.n,
            h.r,
            h.replicates,
            h.seed,
            h.counts[1],
            h.counts[2],
            h.counts[3],
            h.proportion(1),
            h.proportion(2),
            h.proportion(3),
            tol
        )
        .expect("write to string");
    }
    emit(a.out.output.as_deref(), out.as_bytes())
}

/// Reads a CSV point file with header `x,y`.
pub fn read_points(path: &Path) -> Result<Vec<Point>, CliError> {
    let data = |e: &dyn std::fmt::Display| CliError::Data(format!("{}: {e}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| data(&e))?;
    let headers = reader.headers().map_err(|e| data(&e))?;
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(data(&"expected the header `x,y`"));
    }
    reader
        .deserialize::<Point>()
        .map(|row| row.map_err(|e| data(&e)))
        .collect()
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Data(format!("writing output: {e}"));
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).map_err(io)?;
            stdout.flush().map_err(io)
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(bytes).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}
