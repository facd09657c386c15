//! Line-oriented text run files.
//!
//! ```text
//! # ising-run v1
//! # L=<int> beta=<6 decimals> J=<decimal> seed=<uint32>
//! # measurements=<int> thermalization=<int>
//! # start=<ISO-8601 UTC> host=<string> version=<string>
//! # columns: S cluster_size
//! <S> <cluster_size>
//! ...
//! ```

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};

use super::{check_record, MeasurementSeries, Record, RunMetadata, RunParams};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: &str = "v1";
const MAGIC: &str = "# ising-run v1";
const COLUMNS: &str = "# columns: S cluster_size";

/// Canonical file name `ising_L{L}_beta{beta:.6}_seed{seed}.dat`.
pub fn run_file_name(params: &RunParams) -> String {
    format!(
        "ising_L{}_beta{:.6}_seed{}.dat",
        params.size, params.beta, params.seed
    )
}

fn format_header(meta: &RunMetadata) -> String {
    let p = &meta.params;
    format!(
        "{MAGIC}\n# L={} beta={:.6} J={} seed={}\n# measurements={} thermalization={}\n# start={} host={} version={}\n{COLUMNS}\n",
        p.size,
        p.beta,
        p.coupling,
        p.seed,
        p.measurements,
        p.thermalization,
        meta.start_time.to_rfc3339_opts(SecondsFormat::Secs, true),
        meta.hostname,
        meta.code_version,
    )
}

/// Writes `series` into `directory` under its canonical name.
///
/// The data goes to a temporary file first and is renamed into place, so a
/// run file is either complete or absent. An existing file is only replaced
/// when `force` is set.
pub fn write_run_file(
    series: &MeasurementSeries,
    directory: &Path,
    force: bool,
) -> Result<PathBuf> {
    series.validate()?;
    let path = directory.join(run_file_name(series.params()));
    if path.exists() && !force {
        return Err(Error::FileExists(path));
    }
    let tmp = path.with_extension("dat.partial");
    let write = || -> std::io::Result<()> {
        let mut out = BufWriter::new(File::create(&tmp)?);
        out.write_all(format_header(&series.metadata).as_bytes())?;
        for r in &series.records {
            writeln!(out, "{} {}", r.total_spin, r.cluster_size)?;
        }
        out.into_inner()?.sync_all()
    };
    write().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

struct HeaderLine<'a> {
    path: &'a Path,
    line: usize,
    fields: HashMap<&'a str, &'a str>,
}

impl<'a> HeaderLine<'a> {
    fn parse(path: &'a Path, line: usize, text: &'a str) -> Result<Self> {
        let body = text
            .strip_prefix("# ")
            .ok_or_else(|| Error::MalformedHeader {
                path: path.to_path_buf(),
                line,
                message: "expected a '# ' comment line".into(),
            })?;
        let mut fields = HashMap::new();
        for token in body.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::MalformedHeader {
                    path: path.to_path_buf(),
                    line,
                    message: format!("token '{token}' is not key=value"),
                })?;
            fields.insert(key, value);
        }
        Ok(HeaderLine { path, line, fields })
    }

    fn err(&self, message: String) -> Error {
        Error::MalformedHeader {
            path: self.path.to_path_buf(),
            line: self.line,
            message,
        }
    }

    fn raw(&self, key: &str) -> Result<&'a str> {
        self.fields
            .get(key)
            .copied()
            .ok_or_else(|| self.err(format!("missing '{key}'")))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| self.err(format!("cannot parse {key}='{raw}'")))
    }
}

/// Loads and fully validates a run file.
pub fn read_run_file(path: &Path) -> Result<MeasurementSeries> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    let mut header = Vec::with_capacity(5);
    for line in 1..=5 {
        match lines.next() {
            Some(text) => header.push(text.map_err(|e| Error::io(path, e))?),
            None => {
                return Err(Error::MalformedHeader {
                    path: path.to_path_buf(),
                    line,
                    message: "file ends inside the header".into(),
                })
            }
        }
    }
    let malformed = |line: usize, message: &str| Error::MalformedHeader {
        path: path.to_path_buf(),
        line,
        message: message.to_string(),
    };
    if header[0] != MAGIC {
        return Err(malformed(1, "not an ising-run v1 file"));
    }
    if header[4] != COLUMNS {
        return Err(malformed(5, "unexpected column declaration"));
    }

    let sizes = HeaderLine::parse(path, 2, &header[1])?;
    let counts = HeaderLine::parse(path, 3, &header[2])?;
    let prov = HeaderLine::parse(path, 4, &header[3])?;

    let params = RunParams {
        size: sizes.get("L")?,
        beta: sizes.get("beta")?,
        coupling: sizes.get("J")?,
        seed: sizes.get("seed")?,
        measurements: counts.get("measurements")?,
        thermalization: counts.get("thermalization")?,
    };
    params
        .validate()
        .map_err(|e| malformed(2, &e.to_string()))?;
    let start = prov.raw("start")?;
    let start_time = DateTime::parse_from_rfc3339(start)
        .map_err(|e| prov.err(format!("bad start time '{start}': {e}")))?
        .with_timezone(&Utc);
    let metadata = RunMetadata {
        start_time,
        hostname: prov.raw("host")?.to_string(),
        code_version: prov.raw("version")?.to_string(),
        params,
        format_version: FORMAT_VERSION.to_string(),
    };

    let mut records = Vec::with_capacity(params.measurements);
    for (offset, text) in lines.enumerate() {
        let line = offset + 6;
        let text = text.map_err(|e| Error::io(path, e))?;
        if text.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::MalformedRecord {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut parts = text.split_whitespace();
        let (Some(s), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected two integers, got '{text}'")));
        };
        let record = Record {
            total_spin: s
                .parse()
                .map_err(|_| bad(format!("bad total spin '{s}'")))?,
            cluster_size: c
                .parse()
                .map_err(|_| bad(format!("bad cluster size '{c}'")))?,
        };
        check_record(params.size, &record).map_err(|message| Error::InvariantViolation {
            path: path.to_path_buf(),
            line,
            message,
        })?;
        records.push(record);
    }
    if records.len() != params.measurements {
        return Err(Error::RecordCountMismatch {
            path: path.to_path_buf(),
            expected: params.measurements,
            found: records.len(),
        });
    }
    Ok(MeasurementSeries { metadata, records })
}
