//! Parameter sweeps over `(L, T)` points, one independent chain per point.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use chrono::{SecondsFormat, Utc};
use rayon::prelude::*;

use super::{
    code_version, current_hostname, quantize_beta, read_run_file, run_file_name, write_run_file,
    MeasurementSeries, RunMetadata, RunParams, DEFAULT_THERMALIZATION_FRACTION,
};
use crate::error::{Error, Result};

pub const LOG_FILE_NAME: &str = "sweep.log";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the chain at `(size, temperature_index)`.
///
/// `h = splitmix64(base)`, then `h = splitmix64(h ^ size)`, then
/// `h = splitmix64(h ^ temperature_index)`; the seed is the upper 32 bits.
/// It depends only on its three inputs, never on scheduling.
pub fn derive_seed(base_seed: u32, size: usize, temperature_index: usize) -> u32 {
    let h = splitmix64(u64::from(base_seed));
    let h = splitmix64(h ^ size as u64);
    let h = splitmix64(h ^ temperature_index as u64);
    (h >> 32) as u32
}

/// Sizes times temperatures, plus the per-chain settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub sizes: Vec<usize>,
    /// Temperatures in units of `J`.
    pub temperatures: Vec<f64>,
    pub settings: SweepSettings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub measurements: usize,
    pub coupling: f64,
    pub thermalization_fraction: f64,
    pub base_seed: u32,
    pub threads: usize,
    /// Overwrite existing run files instead of skipping or rejecting them.
    pub force: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            measurements: 200_000,
            coupling: 1.0,
            thermalization_fraction: DEFAULT_THERMALIZATION_FRACTION,
            base_seed: 42,
            threads: 1,
            force: false,
        }
    }
}

/// One chain of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub size: usize,
    pub beta: f64,
    /// Position of this point's temperature in the sweep grid; feeds the seed.
    pub index: usize,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidArgument(
                "sweep needs at least one size".into(),
            ));
        }
        if self.temperatures.is_empty() {
            return Err(Error::InvalidArgument(
                "sweep needs at least one temperature".into(),
            ));
        }
        if !self.sizes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "sizes must be strictly ascending".into(),
            ));
        }
        for &l in &self.sizes {
            if l < 2 || l % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "size {l} must be even and at least 2"
                )));
            }
        }
        for &l in &self.sizes[1..] {
            if !self.sizes.contains(&(l / 2)) {
                return Err(Error::InvalidArgument(format!(
                    "size {l} has no partner {} for the Binder crossing",
                    l / 2
                )));
            }
        }
        let mut betas = Vec::with_capacity(self.temperatures.len());
        for &t in &self.temperatures {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "temperature {t} must be positive"
                )));
            }
            let b = quantize_beta(1.0 / t);
            if betas.contains(&b) {
                return Err(Error::InvalidArgument(format!(
                    "temperature {t} duplicates another grid point at six-decimal beta"
                )));
            }
            betas.push(b);
        }
        if self.settings.measurements == 0 {
            return Err(Error::InvalidArgument(
                "measurements must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<SweepPoint> {
        self.sizes
            .iter()
            .flat_map(|&size| {
                self.temperatures
                    .iter()
                    .enumerate()
                    .map(move |(index, &t)| SweepPoint {
                        size,
                        beta: quantize_beta(1.0 / t),
                        index,
                    })
            })
            .collect()
    }
}

impl SweepPoint {
    pub fn params(&self, settings: &SweepSettings) -> Result<RunParams> {
        RunParams::with_thermalization_fraction(
            self.size,
            self.beta,
            settings.coupling,
            settings.measurements,
            derive_seed(settings.base_seed, self.size, self.index),
            settings.thermalization_fraction,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointStatus {
    Simulated,
    Skipped,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointOutcome {
    pub point: SweepPoint,
    pub path: Option<PathBuf>,
    pub status: PointStatus,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub outcomes: Vec<PointOutcome>,
}

impl SweepReport {
    /// Run files present after the sweep, in point order.
    pub fn files(&self) -> Vec<PathBuf> {
        self.outcomes
            .iter()
            .filter(|o| !matches!(o.status, PointStatus::Failed(_)))
            .filter_map(|o| o.path.clone())
            .collect()
    }

    fn count(&self, pred: impl Fn(&PointStatus) -> bool) -> usize {
        self.outcomes.iter().filter(|o| pred(&o.status)).count()
    }

    pub fn simulated(&self) -> usize {
        self.count(|s| *s == PointStatus::Simulated)
    }

    pub fn skipped(&self) -> usize {
        self.count(|s| *s == PointStatus::Skipped)
    }

    pub fn failures(&self) -> Vec<(SweepPoint, String)> {
        self.outcomes
            .iter()
            .filter_map(|o| match &o.status {
                PointStatus::Failed(msg) => Some((o.point, msg.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn is_success(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Append-only event log shared by all workers of a sweep.
pub struct SweepLog {
    file: Mutex<File>,
}

fn format_value(value: &str) -> String {
    if value.is_empty() || value.chars().any(|c| c.is_whitespace() || c == '"') {
        format!("{value:?}")
    } else {
        value.to_string()
    }
}

impl SweepLog {
    pub fn open(directory: &Path) -> Result<Self> {
        let path = directory.join(LOG_FILE_NAME);
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        Ok(SweepLog {
            file: Mutex::new(file),
        })
    }

    /// Writes `<ISO-8601> <event> key=value ...` as one line.
    pub fn event(&self, event: &str, fields: &[(&str, String)]) {
        let mut line = format!(
            "{} {event}",
            Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
        );
        for (k, v) in fields {
            line.push(' ');
            line.push_str(k);
            line.push('=');
            line.push_str(&format_value(v));
        }
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        // A lost log line must not abort the simulations themselves.
        let _ = file.write_all(line.as_bytes());
    }
}

fn point_fields(point: &SweepPoint, params: Option<&RunParams>) -> Vec<(&'static str, String)> {
    let mut f = vec![
        ("L", point.size.to_string()),
        ("beta", format!("{:.6}", point.beta)),
    ];
    if let Some(p) = params {
        f.push(("seed", p.seed.to_string()));
    }
    f
}

fn run_point(
    point: &SweepPoint,
    settings: &SweepSettings,
    directory: &Path,
    log: &SweepLog,
) -> PointOutcome {
    let params = match point.params(settings) {
        Ok(p) => p,
        Err(e) => {
            let msg = e.to_string();
            let mut fields = point_fields(point, None);
            fields.push(("error", msg.clone()));
            log.event("point_failed", &fields);
            return PointOutcome {
                point: *point,
                path: None,
                status: PointStatus::Failed(msg),
            };
        }
    };
    let path = directory.join(run_file_name(&params));
    let mut fields = point_fields(point, Some(&params));
    fields.push((
        "file",
        path.file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned(),
    ));

    let fail = |msg: String, mut fields: Vec<(&'static str, String)>| {
        fields.push(("error", msg.clone()));
        log.event("point_failed", &fields);
        PointOutcome {
            point: *point,
            path: Some(path.clone()),
            status: PointStatus::Failed(msg),
        }
    };

    if path.exists() && !settings.force {
        return match read_run_file(&path) {
            Ok(existing) if existing.metadata.params == params => {
                log.event("point_skipped", &fields);
                PointOutcome {
                    point: *point,
                    path: Some(path.clone()),
                    status: PointStatus::Skipped,
                }
            }
            Ok(_) => fail(
                "existing run file has different parameters; rerun with --force".into(),
                fields,
            ),
            Err(e) => fail(
                format!("existing run file is invalid ({e}); rerun with --force"),
                fields,
            ),
        };
    }

    log.event("point_start", &fields);
    let started = Instant::now();
    let metadata = RunMetadata::capture(params);
    let result = super::simulate_records(&params).and_then(|records| {
        write_run_file(&MeasurementSeries { metadata, records }, directory, true)
    });
    match result {
        Ok(_) => {
            fields.push((
                "elapsed_s",
                format!("{:.3}", started.elapsed().as_secs_f64()),
            ));
            log.event("point_done", &fields);
            PointOutcome {
                point: *point,
                path: Some(path.clone()),
                status: PointStatus::Simulated,
            }
        }
        Err(e) => fail(e.to_string(), fields),
    }
}

/// Runs every point on a pool of `settings.threads` workers.
///
/// Existing run files with matching parameters are kept, so an interrupted
/// sweep resumes where it stopped. Failures are collected, not fatal.
pub fn run_points(
    points: &[SweepPoint],
    settings: &SweepSettings,
    directory: &Path,
) -> Result<SweepReport> {
    fs::create_dir_all(directory).map_err(|e| Error::io(directory, e))?;
    let log = SweepLog::open(directory)?;
    let threads = settings.threads.max(1);
    log.event(
        "sweep_start",
        &[
            ("host", current_hostname()),
            ("version", code_version().to_string()),
            ("points", points.len().to_string()),
            ("threads", threads.to_string()),
            ("base_seed", settings.base_seed.to_string()),
            ("measurements", settings.measurements.to_string()),
            ("J", settings.coupling.to_string()),
            (
                "thermalization_fraction",
                settings.thermalization_fraction.to_string(),
            ),
            ("force", settings.force.to_string()),
        ],
    );
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<PointOutcome> = pool.install(|| {
        points
            .par_iter()
            .with_max_len(1)
            .map(|p| run_point(p, settings, directory, &log))
            .collect()
    });
    let report = SweepReport { outcomes };
    log.event(
        "sweep_end",
        &[
            ("simulated", report.simulated().to_string()),
            ("skipped", report.skipped().to_string()),
            ("failed", report.failures().len().to_string()),
        ],
    );
    Ok(report)
}

/// Runs a validated plan.
pub fn run_sweep(plan: &SweepPlan, directory: &Path) -> Result<SweepReport> {
    plan.validate()?;
    fs::create_dir_all(directory).map_err(|e| Error::io(directory, e))?;
    SweepLog::open(directory)?.event("plan", &plan_fields(plan));
    run_points(&plan.points(), &plan.settings, directory)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn plan_fields(plan: &SweepPlan) -> Vec<(&'static str, String)> {
    vec![
        ("sizes", join(&plan.sizes)),
        ("temperatures", join(&plan.temperatures)),
    ]
}
