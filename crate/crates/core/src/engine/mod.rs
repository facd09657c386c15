//! Simulation driver: single chains, run files and parameter sweeps.

mod runfile;
mod sweep;

pub use runfile::{read_run_file, run_file_name, write_run_file, FORMAT_VERSION};
pub use sweep::{
    derive_seed, run_points, run_sweep, PointOutcome, PointStatus, SweepLog, SweepPlan, SweepPoint,
    SweepReport, SweepSettings, LOG_FILE_NAME,
};

use chrono::{DateTime, SubsecRound, Utc};

use crate::error::{Error, Result};
use crate::lattice::SpinConfig;
use crate::rng::RandomStream;
use crate::wolff::{add_probability, WolffUpdater};

pub const DEFAULT_THERMALIZATION_FRACTION: f64 = 0.10;

/// Rounds an inverse temperature to the six decimals stored in run files,
/// so a chain always simulates exactly the value its file records.
pub fn quantize_beta(beta: f64) -> f64 {
    (beta * 1e6).round() / 1e6
}

/// Parameters of one Markov chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunParams {
    pub size: usize,
    /// Inverse temperature, already rounded to six decimals.
    pub beta: f64,
    pub coupling: f64,
    pub measurements: usize,
    /// Discarded updates before the first measurement.
    pub thermalization: usize,
    pub seed: u32,
}

impl RunParams {
    /// Parameters with the default 10% thermalization.
    pub fn new(
        size: usize,
        beta: f64,
        coupling: f64,
        measurements: usize,
        seed: u32,
    ) -> Result<Self> {
        Self::with_thermalization_fraction(
            size,
            beta,
            coupling,
            measurements,
            seed,
            DEFAULT_THERMALIZATION_FRACTION,
        )
    }

    /// Discards `ceil(fraction * measurements)` updates before measuring.
    pub fn with_thermalization_fraction(
        size: usize,
        beta: f64,
        coupling: f64,
        measurements: usize,
        seed: u32,
        fraction: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&fraction) {
            return Err(Error::InvalidArgument(format!(
                "thermalization fraction must lie in [0, 1), got {fraction}"
            )));
        }
        // Guard against 0.1 * 1000 landing a hair above 100.
        let raw = fraction * measurements as f64;
        let thermalization = if (raw - raw.round()).abs() < 1e-9 {
            raw.round() as usize
        } else {
            raw.ceil() as usize
        };
        let params = RunParams {
            size,
            beta: quantize_beta(beta),
            coupling,
            measurements,
            thermalization,
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.size < 2 || !self.size.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "lattice size must be even and at least 2, got {}",
                self.size
            )));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "inverse temperature must be positive, got {}",
                self.beta
            )));
        }
        if !(self.coupling > 0.0 && self.coupling.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "coupling J must be positive, got {}",
                self.coupling
            )));
        }
        if self.measurements == 0 {
            return Err(Error::InvalidArgument(
                "number of measurements must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }
}

/// Provenance stored in every run file header.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetadata {
    /// Whole seconds, UTC.
    pub start_time: DateTime<Utc>,
    pub hostname: String,
    pub code_version: String,
    pub params: RunParams,
    pub format_version: String,
}

impl RunMetadata {
    /// Metadata stamped with the current time, host and crate version.
    pub fn capture(params: RunParams) -> Self {
        RunMetadata {
            start_time: Utc::now().trunc_subsecs(0),
            hostname: current_hostname(),
            code_version: code_version().to_string(),
            params,
            format_version: FORMAT_VERSION.to_string(),
        }
    }
}

pub fn code_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Host name with whitespace replaced so it fits a `key=value` token.
pub fn current_hostname() -> String {
    let name = gethostname::gethostname().to_string_lossy().into_owned();
    let cleaned: String = name
        .chars()
        .map(|c| {
            if c.is_whitespace() || c == '=' {
                '_'
            } else {
                c
            }
        })
        .collect();
    if cleaned.is_empty() {
        "unknown".to_string()
    } else {
        cleaned
    }
}

/// One measurement, taken after one Wolff update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub total_spin: i64,
    pub cluster_size: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    pub metadata: RunMetadata,
    pub records: Vec<Record>,
}

impl MeasurementSeries {
    pub fn params(&self) -> &RunParams {
        &self.metadata.params
    }

    /// Per-record magnetization `m = S / L^2`.
    pub fn magnetizations(&self) -> impl Iterator<Item = f64> + '_ {
        let sites = (self.params().size * self.params().size) as f64;
        self.records
            .iter()
            .map(move |r| r.total_spin as f64 / sites)
    }

    /// Checks the record count and every record against the lattice size.
    pub fn validate(&self) -> Result<()> {
        let p = self.params();
        p.validate()?;
        if self.records.len() != p.measurements {
            return Err(Error::InvalidArgument(format!(
                "series holds {} records but declares {}",
                self.records.len(),
                p.measurements
            )));
        }
        for (i, r) in self.records.iter().enumerate() {
            if let Err(msg) = check_record(p.size, r) {
                return Err(Error::InvalidArgument(format!("record {i}: {msg}")));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_record(size: usize, r: &Record) -> std::result::Result<(), String> {
    let sites = (size * size) as i64;
    if r.total_spin.abs() > sites {
        return Err(format!(
            "|S| = {} exceeds L^2 = {sites}",
            r.total_spin.abs()
        ));
    }
    if (r.total_spin - sites).rem_euclid(2) != 0 {
        return Err(format!(
            "S = {} has the wrong parity for L^2 = {sites}",
            r.total_spin
        ));
    }
    if r.cluster_size == 0 || i64::from(r.cluster_size) > sites {
        return Err(format!(
            "cluster size {} outside [1, {sites}]",
            r.cluster_size
        ));
    }
    Ok(())
}

/// Runs one chain from an all-up start: `params.thermalization` discarded
/// updates, then one recorded measurement after each of
/// `params.measurements` updates.
pub fn run_chain(params: &RunParams) -> Result<MeasurementSeries> {
    params.validate()?;
    let metadata = RunMetadata::capture(*params);
    let records = simulate_records(params)?;
    Ok(MeasurementSeries { metadata, records })
}

pub(crate) fn simulate_records(params: &RunParams) -> Result<Vec<Record>> {
    let mut config = SpinConfig::new_uniform(params.size, params.coupling, true)?;
    let mut rng = RandomStream::new(params.seed);
    let mut updater = WolffUpdater::new(config.sites());
    let p = add_probability(params.beta, params.coupling)?;

    for _ in 0..params.thermalization {
        updater.update_with_probability(&mut config, p, &mut rng);
    }
    let mut records = Vec::new();
    records
        .try_reserve_exact(params.measurements)
        .map_err(|e| Error::InsufficientData(format!("cannot allocate records: {e}")))?;
    for _ in 0..params.measurements {
        let r = updater.update_with_probability(&mut config, p, &mut rng);
        records.push(Record {
            total_spin: config.total_spin(),
            cluster_size: r.cluster_size as u32,
        });
    }
    Ok(records)
}
