//! The `ising` command line: `simulate`, `sweep` and `analyze`.
//!
//! Settings come from a flat configuration file of `key = value` lines
//! (see [`CliConfig`]); flags on the command line override the file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    binder_blocks, collapse_blocks, collapse_curves, collapse_deviation, emit_figure_data,
    read_tc_estimate, sizescaling_blocks, susceptibility_blocks, write_tc_estimate, AnalysisConfig,
    Dataset, FitKind, TcEstimate, TC_ESTIMATE_FILE,
};
use crate::engine::{
    quantize_beta, run_file_name, run_points, run_sweep, PointStatus, SweepPlan, SweepPoint,
    SweepReport, SweepSettings,
};
use crate::error::{Error, Result};

/// Exit status for invalid arguments or configuration.
const USAGE_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ising",
    version,
    about = "Wolff-cluster Monte Carlo for the 2D Ising model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one lattice size at a list of temperatures.
    Simulate(SimulateArgs),
    /// Simulate every (L, T) point of the configured plan, skipping finished points.
    Sweep(SweepArgs),
    /// Reduce run files to figure data.
    Analyze(AnalyzeArgs),
    /// Print the default configuration file.
    DefaultConfig,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Linear lattice size L (even, at least 2).
    #[arg(long)]
    pub size: usize,
    /// Recorded measurements per chain, after thermalization.
    #[arg(long)]
    pub measurements: usize,
    /// Inverse temperatures, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present = "temperature",
        conflicts_with = "temperature"
    )]
    pub beta: Vec<f64>,
    /// Temperatures in units of J, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub temperature: Vec<f64>,
    /// Base seed; each chain's seed is derived from it, L and the list position.
    #[arg(long, default_value_t = 42)]
    pub seed: u32,
    /// Directory receiving the run files and sweep.log.
    #[arg(long, default_value = "data")]
    pub out: PathBuf,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Overwrite existing run files.
    #[arg(long)]
    pub force: bool,
    /// Coupling constant J.
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
    /// Fraction of the measurement count spent on thermalization.
    #[arg(long, default_value_t = crate::engine::DEFAULT_THERMALIZATION_FRACTION)]
    pub thermalization_fraction: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Configuration file; built-in defaults when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Print the points and their seeds without simulating.
    #[arg(long)]
    pub dry_run: bool,
    /// Worker threads; 0 uses every available core.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Directory receiving the run files and sweep.log.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Overwrite existing run files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalysisKind {
    Susceptibility,
    Binder,
    Collapse,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Which figure to produce.
    #[arg(value_enum)]
    pub kind: AnalysisKind,
    /// Configuration file; built-in defaults when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory holding the run files.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Directory receiving fig_*/ and tc_estimate.txt.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Polynomial fitted to each Binder curve.
    #[arg(long)]
    pub fit_kind: Option<FitKind>,
    /// Smallest L (larger size of a pair) entering the extrapolation.
    #[arg(long = "min-L")]
    pub min_size: Option<usize>,
    /// Largest L (larger size of a pair) entering the extrapolation.
    #[arg(long = "max-L")]
    pub max_size: Option<usize>,
    /// Critical temperature for the collapse, overriding tc_estimate.txt.
    #[arg(long)]
    pub tc: Option<f64>,
    /// Correlation-length exponent.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Jackknife bins per run.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Temperature window `lo,hi` of the Binder curve fits.
    #[arg(long, value_delimiter = ',', value_name = "LO,HI")]
    pub fit_window: Option<Vec<f64>>,
}

/// Everything a configuration file can set.
///
/// | key | meaning | default |
/// |---|---|---|
/// | `sizes` | comma-separated lattice sizes | `8, 16, 32, 64` |
/// | `t_min`, `t_max`, `t_step` | temperature grid, both ends included | `2.21`, `2.33`, `0.005` |
/// | `temperatures` | explicit grid, replaces the three keys above | |
/// | `measurements` | measurements per chain | `200000` |
/// | `coupling` | `J` | `1` |
/// | `thermalization_fraction` | thermalization as a fraction of measurements | `0.1` |
/// | `base_seed` | root of the per-chain seeds | `42` |
/// | `threads` | sweep workers, `0` for all cores | `1` |
/// | `data_dir`, `out_dir` | run files and figure data | `data`, `figures` |
/// | `binder_crossing_fit_kind` | `cubic` or `linear` | `cubic` |
/// | `finite_size_min_L`, `finite_size_max_L` | size range of the extrapolation | `16`, `4096` |
/// | `Tc` | collapse temperature, overriding the stored estimate | |
/// | `nu` | correlation-length exponent | `1` |
/// | `jackknife_bins` | bins per run | `100` |
/// | `fit_window` | `lo, hi` temperature window of the curve fits | |
///
/// Relative directories are taken relative to the working directory.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub plan: SweepPlan,
    pub analysis: AnalysisConfig,
    /// Whether `nu` was given explicitly rather than defaulted.
    pub nu_explicit: bool,
    pub data_dir: PathBuf,
    pub out_dir: PathBuf,
}

/// `lo, lo + step, ...` up to and including `hi`, rounded to 1e-9 so that
/// grid points print as written.
pub fn temperature_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && lo > 0.0 && hi >= lo && step.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "temperature grid {lo}..{hi} step {step} is invalid"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|i| ((lo + step * i as f64) * 1e9).round() / 1e9)
        .collect())
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            plan: SweepPlan {
                sizes: vec![8, 16, 32, 64],
                temperatures: temperature_grid(2.21, 2.33, 0.005).expect("valid default grid"),
                settings: SweepSettings::default(),
            },
            analysis: AnalysisConfig::default(),
            nu_explicit: false,
            data_dir: PathBuf::from("data"),
            out_dir: PathBuf::from("figures"),
        }
    }
}

const DEFAULT_CONFIG: &str = "\
# Sweep plan
sizes = 8, 16, 32, 64
t_min = 2.21
t_max = 2.33
t_step = 0.005
measurements = 200000
coupling = 1
thermalization_fraction = 0.1
base_seed = 42
threads = 1

# Directories
data_dir = data
out_dir = figures

# Analysis
binder_crossing_fit_kind = cubic
finite_size_min_L = 16
finite_size_max_L = 4096
nu = 1
jackknife_bins = 100
# Tc = 2.269
# fit_window = 2.24, 2.30
";

fn parse_list<T: std::str::FromStr>(value: &str) -> std::result::Result<Vec<T>, String> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("cannot parse '{}'", s.trim()))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(value: &str) -> std::result::Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse '{value}'"))
}

impl CliConfig {
    /// Text of the default configuration file.
    pub fn default_text() -> &'static str {
        DEFAULT_CONFIG
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses configuration text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = CliConfig::default();
        let mut grid: [Option<(f64, usize)>; 3] = [None; 3];
        let mut explicit_temperatures: Option<usize> = None;
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let result: std::result::Result<(), String> = (|| {
                match key {
                    "sizes" => config.plan.sizes = parse_list(value)?,
                    "t_min" => grid[0] = Some((parse_one(value)?, line_no)),
                    "t_max" => grid[1] = Some((parse_one(value)?, line_no)),
                    "t_step" => grid[2] = Some((parse_one(value)?, line_no)),
                    "temperatures" => {
                        config.plan.temperatures = parse_list(value)?;
                        explicit_temperatures = Some(line_no);
                    }
                    "measurements" => config.plan.settings.measurements = parse_one(value)?,
                    "coupling" => config.plan.settings.coupling = parse_one(value)?,
                    "thermalization_fraction" => {
                        config.plan.settings.thermalization_fraction = parse_one(value)?
                    }
                    "base_seed" => config.plan.settings.base_seed = parse_one(value)?,
                    "threads" => config.plan.settings.threads = parse_one(value)?,
                    "data_dir" => config.data_dir = PathBuf::from(value),
                    "out_dir" => config.out_dir = PathBuf::from(value),
                    "binder_crossing_fit_kind" => {
                        config.analysis.fit_kind =
                            value.parse().map_err(|e: Error| e.to_string())?
                    }
                    "finite_size_min_L" => config.analysis.min_size = parse_one(value)?,
                    "finite_size_max_L" => config.analysis.max_size = parse_one(value)?,
                    "Tc" => config.analysis.tc = Some(parse_one(value)?),
                    "nu" => {
                        config.analysis.nu = parse_one(value)?;
                        config.nu_explicit = true;
                    }
                    "jackknife_bins" => config.analysis.jackknife_bins = parse_one(value)?,
                    "fit_window" => match parse_list::<f64>(value)?.as_slice() {
                        &[lo, hi] => config.analysis.fit_window = Some((lo, hi)),
                        _ => return Err("fit_window takes two temperatures 'lo, hi'".into()),
                    },
                    _ => return Err(format!("unknown key '{key}'")),
                }
                Ok(())
            })();
            result.map_err(err)?;
        }

        if grid.iter().any(Option::is_some) {
            if let Some(line) = explicit_temperatures {
                return Err(Error::Config {
                    line,
                    message: "'temperatures' cannot be combined with t_min/t_max/t_step".into(),
                });
            }
            let defaults = [2.21, 2.33, 0.005];
            let value = |k: usize| grid[k].map_or(defaults[k], |(v, _)| v);
            let line = grid
                .iter()
                .flatten()
                .map(|&(_, l)| l)
                .max()
                .unwrap_or(last_line);
            config.plan.temperatures =
                temperature_grid(value(0), value(1), value(2)).map_err(|e| Error::Config {
                    line,
                    message: e.to_string(),
                })?;
        }
        config.analysis.validate().map_err(|e| Error::Config {
            line: last_line,
            message: e.to_string(),
        })?;
        Ok(config)
    }

    fn load_or_default(path: Option<&Path>) -> Result<Self> {
        path.map_or_else(|| Ok(CliConfig::default()), CliConfig::load)
    }
}

fn resolve_threads(threads: usize) -> usize {
    if threads == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        threads
    }
}

/// Entry point used by the binary.
pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::DefaultConfig => {
            print!("{}", CliConfig::default_text());
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Config { .. } => ExitCode::from(USAGE_ERROR),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn report_outcomes(report: &SweepReport) -> bool {
    for o in &report.outcomes {
        let name = o
            .path
            .as_deref()
            .and_then(Path::file_name)
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        match &o.status {
            PointStatus::Simulated => println!("simulated {name}"),
            PointStatus::Skipped => println!("skipped {name} (already present)"),
            PointStatus::Failed(msg) => eprintln!(
                "failed L={} beta={:.6} {name}: {msg}",
                o.point.size, o.point.beta
            ),
        }
    }
    println!(
        "{} simulated, {} skipped, {} failed",
        report.simulated(),
        report.skipped(),
        report.failures().len()
    );
    report.is_success()
}

/// Runs one chain per requested temperature. Every argument is checked
/// before the first file is written.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<bool> {
    let betas: Vec<f64> = if args.temperature.is_empty() {
        args.beta.clone()
    } else {
        args.temperature
            .iter()
            .map(|&t| {
                if t > 0.0 && t.is_finite() {
                    Ok(1.0 / t)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "temperature {t} must be positive"
                    )))
                }
            })
            .collect::<Result<_>>()?
    };
    if betas.is_empty() {
        return Err(Error::InvalidArgument("no temperatures given".into()));
    }
    let settings = SweepSettings {
        measurements: args.measurements,
        coupling: args.coupling,
        thermalization_fraction: args.thermalization_fraction,
        base_seed: args.seed,
        threads: resolve_threads(args.threads),
        force: args.force,
    };
    let points: Vec<SweepPoint> = betas
        .iter()
        .enumerate()
        .map(|(index, &b)| SweepPoint {
            size: args.size,
            beta: quantize_beta(b),
            index,
        })
        .collect();
    for (i, p) in points.iter().enumerate() {
        p.params(&settings)?;
        if points[..i].iter().any(|q| q.beta == p.beta) {
            return Err(Error::InvalidArgument(format!(
                "beta {:.6} requested twice",
                p.beta
            )));
        }
    }
    let report = run_points(&points, &settings, &args.out)?;
    Ok(report_outcomes(&report))
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<bool> {
    let mut config = CliConfig::load_or_default(args.config.as_deref())?;
    if let Some(t) = args.threads {
        config.plan.settings.threads = t;
    }
    config.plan.settings.threads = resolve_threads(config.plan.settings.threads);
    config.plan.settings.force |= args.force;
    let dir = args.data_dir.clone().unwrap_or(config.data_dir);
    let plan = config.plan;
    plan.validate()?;

    if args.dry_run {
        let points = plan.points();
        for p in &points {
            let params = p.params(&plan.settings)?;
            println!(
                "L={} T={} beta={:.6} seed={} file={}",
                p.size,
                plan.temperatures[p.index],
                p.beta,
                params.seed,
                dir.join(run_file_name(&params)).display()
            );
        }
        println!("{} points, nothing simulated", points.len());
        return Ok(true);
    }
    let report = run_sweep(&plan, &dir)?;
    Ok(report_outcomes(&report))
}

/// Analysis settings after applying command-line overrides to the file.
fn analysis_config(args: &AnalyzeArgs, config: &mut CliConfig) -> Result<()> {
    let a = &mut config.analysis;
    if let Some(k) = args.fit_kind {
        a.fit_kind = k;
    }
    if let Some(v) = args.min_size {
        a.min_size = v;
    }
    if let Some(v) = args.max_size {
        a.max_size = v;
    }
    if let Some(v) = args.tc {
        a.tc = Some(v);
    }
    if let Some(v) = args.nu {
        a.nu = v;
        config.nu_explicit = true;
    }
    if let Some(v) = args.bins {
        a.jackknife_bins = v;
    }
    if let Some(w) = &args.fit_window {
        match w.as_slice() {
            &[lo, hi] => a.fit_window = Some((lo, hi)),
            _ => {
                return Err(Error::InvalidArgument(
                    "--fit-window takes two temperatures 'lo,hi'".into(),
                ))
            }
        }
    }
    a.validate()
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<bool> {
    let mut config = CliConfig::load_or_default(args.config.as_deref())?;
    analysis_config(args, &mut config)?;
    let data_dir = args
        .data_dir
        .clone()
        .unwrap_or_else(|| config.data_dir.clone());
    let out_dir = args
        .out_dir
        .clone()
        .unwrap_or_else(|| config.out_dir.clone());
    let dataset = Dataset::load(&data_dir, config.analysis.jackknife_bins)?;

    match args.kind {
        AnalysisKind::Susceptibility => {
            let curves = dataset.susceptibility_curves()?;
            let path =
                emit_figure_data("susceptibility", &susceptibility_blocks(&curves), &out_dir)?;
            for (size, pts) in &curves {
                if let Some(peak) = pts.iter().max_by(|a, b| a.value.total_cmp(&b.value)) {
                    println!(
                        "L={size} peak T={} chi={} +- {}",
                        peak.temperature, peak.value, peak.error
                    );
                }
            }
            println!("wrote {}", path.display());
        }
        AnalysisKind::Binder => {
            let analysis = dataset.binder_analysis(&config.analysis)?;
            let a = emit_figure_data(
                "binder_cumulant",
                &binder_blocks(&analysis, &config.analysis)?,
                &out_dir,
            )?;
            let b = emit_figure_data("sizescaling", &sizescaling_blocks(&analysis), &out_dir)?;
            let estimate = TcEstimate::new(&analysis.fss, &config.analysis);
            let c = write_tc_estimate(&estimate, &out_dir)?;
            let mut text = String::new();
            for x in &analysis.crossings {
                let used = analysis.fss.crossings_used.contains(x);
                let _ = writeln!(
                    text,
                    "crossing L={}/{}: T={} +- {}{}",
                    x.size / 2,
                    x.size,
                    x.temperature,
                    x.error,
                    if used { "" } else { " (excluded)" }
                );
            }
            print!("{text}");
            print!("{}", estimate.to_line());
            for p in [a, b, c] {
                println!("wrote {}", p.display());
            }
        }
        AnalysisKind::Collapse => {
            let stored = out_dir.join(TC_ESTIMATE_FILE);
            let from_file = || -> Result<TcEstimate> {
                read_tc_estimate(&stored).map_err(|e| {
                    Error::InsufficientData(format!(
                        "no Tc given and {} is unreadable ({e}); run 'analyze binder' or pass --tc",
                        stored.display()
                    ))
                })
            };
            let (tc, nu) = match (config.analysis.tc, config.nu_explicit) {
                (Some(tc), true) => (tc, config.analysis.nu),
                (Some(tc), false) => (tc, from_file().map_or(config.analysis.nu, |e| e.nu)),
                (None, explicit) => {
                    let e = from_file()?;
                    (e.tc_star, if explicit { config.analysis.nu } else { e.nu })
                }
            };
            let curves = dataset.binder_curves(&config.analysis)?;
            let path = emit_figure_data(
                "binder_collapse",
                &collapse_blocks(&curves, tc, nu),
                &out_dir,
            )?;
            println!("collapse at Tc={tc} nu={nu}");
            if let Some(z) = collapse_deviation(&collapse_curves(&curves, tc, nu), -1.0, 1.0) {
                println!("largest pairwise deviation for |x| <= 1: {z} combined errors");
            }
            println!("wrote {}", path.display());
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_text_parses_to_defaults() {
        let parsed = CliConfig::parse(CliConfig::default_text()).unwrap();
        let expected = CliConfig {
            nu_explicit: true,
            ..CliConfig::default()
        };
        assert_eq!(parsed, expected);
        assert_eq!(parsed.plan.temperatures.len(), 25);
        assert_eq!(parsed.plan.temperatures[3], 2.225);
        assert_eq!(*parsed.plan.temperatures.last().unwrap(), 2.33);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = CliConfig::parse("sizes = 8\n\nbogus = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 3, .. }), "{e}");
        let e = CliConfig::parse("measurements = lots\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, .. }));
        let e = CliConfig::parse("# fine\nno equals sign\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        let e = CliConfig::parse("jackknife_bins = 10\n").unwrap_err();
        assert!(matches!(e, Error::Config { .. }));
        let e = CliConfig::parse("temperatures = 2.2, 2.3\nt_min = 2.1\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, .. }));
        assert!(CliConfig::parse("finite_size_min_L = 64\nfinite_size_max_L = 32\n").is_err());
    }

    #[test]
    fn parse_values() {
        let c = CliConfig::parse(
            "sizes = 4, 8   # pairs\ntemperatures = 2.0, 2.5\nbinder_crossing_fit_kind = linear\n\
             Tc = 2.3\nfit_window = 2.1, 2.4\ndata_dir = d\n",
        )
        .unwrap();
        assert_eq!(c.plan.sizes, vec![4, 8]);
        assert_eq!(c.plan.temperatures, vec![2.0, 2.5]);
        assert_eq!(c.analysis.fit_kind, FitKind::Linear);
        assert_eq!(c.analysis.tc, Some(2.3));
        assert_eq!(c.analysis.fit_window, Some((2.1, 2.4)));
        assert_eq!(c.data_dir, PathBuf::from("d"));
        assert!(!c.nu_explicit);
    }

    #[test]
    fn grid_includes_both_ends() {
        assert_eq!(
            temperature_grid(1.0, 1.3, 0.1).unwrap(),
            vec![1.0, 1.1, 1.2, 1.3]
        );
        assert_eq!(temperature_grid(1.0, 1.0, 0.1).unwrap(), vec![1.0]);
        assert!(temperature_grid(1.0, 0.5, 0.1).is_err());
        assert!(temperature_grid(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        assert!(
            Cli::try_parse_from(["ising", "simulate", "--size", "8", "--measurements", "10"])
                .is_err()
        );
        assert!(Cli::try_parse_from([
            "ising",
            "simulate",
            "--size",
            "8",
            "--measurements",
            "10",
            "--beta",
            "0.4",
            "--temperature",
            "2.5"
        ])
        .is_err());
        let cli = Cli::try_parse_from([
            "ising",
            "simulate",
            "--size",
            "8",
            "--measurements",
            "10",
            "--beta",
            "0.42,0.44",
        ])
        .unwrap();
        match cli.command {
            Command::Simulate(a) => assert_eq!(a.beta, vec![0.42, 0.44]),
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from([
            "ising",
            "analyze",
            "binder",
            "--fit-kind",
            "linear",
            "--min-L",
            "32",
        ])
        .unwrap();
        match cli.command {
            Command::Analyze(a) => {
                assert_eq!(a.kind, AnalysisKind::Binder);
                assert_eq!(a.fit_kind, Some(FitKind::Linear));
                assert_eq!(a.min_size, Some(32));
            }
            other => panic!("{other:?}"),
        }
    }
}
