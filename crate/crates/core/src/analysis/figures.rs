//! Text data behind the figures, plus the stored `Tc` estimate.
//!
//! Every figure lives in `fig_<name>/fig_<name>.txt` as a sequence of
//! blank-line separated blocks:
//!
//! ```text
//! # fig_<name> v1
//! # label: L=<int>
//! # columns: T value error
//! <T> <value> <error>
//! ```
//!
//! Numbers use Rust's shortest round-trip formatting, so identical inputs
//! give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::dataset::{collapse_curves, BinderAnalysis};
use super::{AnalysisConfig, CurvePoint, FitKind, FssResult};
use crate::error::{Error, Result};

pub const TC_ESTIMATE_FILE: &str = "tc_estimate.txt";

/// Samples drawn along each fitted curve.
const FIT_SAMPLES: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureBlock {
    pub label: String,
    pub columns: [String; 3],
    pub rows: Vec<[f64; 3]>,
}

impl FigureBlock {
    pub fn new(label: impl Into<String>, columns: [&str; 3], rows: Vec<[f64; 3]>) -> Self {
        FigureBlock {
            label: label.into(),
            columns: columns.map(str::to_string),
            rows,
        }
    }

    /// `T value error` block labelled `L=<size>`.
    pub fn curve(size: usize, points: &[CurvePoint]) -> Self {
        Self::new(
            format!("L={size}"),
            ["T", "value", "error"],
            points
                .iter()
                .map(|p| [p.temperature, p.value, p.error])
                .collect(),
        )
    }
}

/// Writes `out_dir/fig_<name>/fig_<name>.txt` and returns its path.
pub fn emit_figure_data(name: &str, blocks: &[FigureBlock], out_dir: &Path) -> Result<PathBuf> {
    if blocks.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "figure '{name}' has no data"
        )));
    }
    let dir = out_dir.join(format!("fig_{name}"));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut text = String::new();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        let _ = writeln!(text, "# fig_{name} v1");
        let _ = writeln!(text, "# label: {}", block.label);
        let _ = writeln!(text, "# columns: {}", block.columns.join(" "));
        for [a, b, c] in &block.rows {
            let _ = writeln!(text, "{a} {b} {c}");
        }
    }
    let path = dir.join(format!("fig_{name}.txt"));
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn susceptibility_blocks(curves: &[(usize, Vec<CurvePoint>)]) -> Vec<FigureBlock> {
    curves
        .iter()
        .map(|(l, pts)| FigureBlock::curve(*l, pts))
        .collect()
}

/// Data points, fitted curves and the `Tc` band of the Binder figure.
pub fn binder_blocks(
    analysis: &BinderAnalysis,
    config: &AnalysisConfig,
) -> Result<Vec<FigureBlock>> {
    let mut blocks: Vec<FigureBlock> = analysis
        .curves
        .iter()
        .map(|c| FigureBlock::curve(c.size, &c.points))
        .collect();
    for c in &analysis.curves {
        let fit = c.fit(config)?;
        let ts: Vec<f64> = c
            .points
            .iter()
            .map(|p| p.temperature)
            .filter(|&t| config.in_window(t))
            .collect();
        let (lo, hi) = (ts[0], ts[ts.len() - 1]);
        let rows = (0..FIT_SAMPLES)
            .map(|k| {
                let t = lo + (hi - lo) * k as f64 / (FIT_SAMPLES - 1) as f64;
                [t, fit.eval(t), 0.0]
            })
            .collect();
        blocks.push(FigureBlock::new(
            format!("fit L={} kind={}", c.size, config.fit_kind),
            ["T", "value", "error"],
            rows,
        ));
    }
    let fss = &analysis.fss;
    blocks.push(FigureBlock::new(
        "Tc_star",
        ["T", "lower", "upper"],
        vec![[
            fss.tc_star,
            fss.tc_star - fss.tc_star_error,
            fss.tc_star + fss.tc_star_error,
        ]],
    ));
    Ok(blocks)
}

/// Crossings against `x = L^(-1/nu)`, the fitted line and its intercept.
pub fn sizescaling_blocks(analysis: &BinderAnalysis) -> Vec<FigureBlock> {
    let fss = &analysis.fss;
    let x = |l: usize| (l as f64).powf(-1.0 / fss.nu);
    let cross = |c: &super::CrossingPoint| [x(c.size), c.temperature, c.error];
    let used: Vec<[f64; 3]> = fss.crossings_used.iter().map(cross).collect();
    let unused: Vec<[f64; 3]> = analysis
        .crossings
        .iter()
        .filter(|c| !fss.crossings_used.contains(c))
        .map(cross)
        .collect();
    let x_max = used.iter().map(|r| r[0]).fold(0.0, f64::max);
    let line = (0..FIT_SAMPLES)
        .map(|k| {
            let xv = x_max * k as f64 / (FIT_SAMPLES - 1) as f64;
            [xv, fss.fit.eval(xv), 0.0]
        })
        .collect();
    let mut blocks = vec![FigureBlock::new("crossings", ["x", "T_L", "zeta_L"], used)];
    if !unused.is_empty() {
        blocks.push(FigureBlock::new(
            "crossings excluded",
            ["x", "T_L", "zeta_L"],
            unused,
        ));
    }
    blocks.push(FigureBlock::new("fit", ["x", "T", "error"], line));
    blocks.push(FigureBlock::new(
        "Tc_star",
        ["x", "T", "error"],
        vec![[0.0, fss.tc_star, fss.tc_star_error]],
    ));
    blocks
}

/// Binder curves of every size in collapse coordinates.
pub fn collapse_blocks(curves: &[super::BinderCurve], tc: f64, nu: f64) -> Vec<FigureBlock> {
    collapse_curves(curves, tc, nu)
        .into_iter()
        .map(|(l, pts)| {
            FigureBlock::new(
                format!("L={l}"),
                ["x", "value", "error"],
                pts.iter()
                    .map(|p| [p.temperature, p.value, p.error])
                    .collect(),
            )
        })
        .collect()
}

/// Contents of `tc_estimate.txt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TcEstimate {
    pub tc_star: f64,
    pub error: f64,
    pub slope: f64,
    pub chi_squared: f64,
    pub nu: f64,
    pub fit_kind: FitKind,
    pub min_size: usize,
    pub max_size: usize,
}

impl TcEstimate {
    pub fn new(fss: &FssResult, config: &AnalysisConfig) -> Self {
        TcEstimate {
            tc_star: fss.tc_star,
            error: fss.tc_star_error,
            slope: fss.slope,
            chi_squared: fss.chi_squared,
            nu: fss.nu,
            fit_kind: config.fit_kind,
            min_size: config.min_size,
            max_size: config.max_size,
        }
    }

    pub fn to_line(&self) -> String {
        format!(
            "Tc_star={} error={} A={} chi2={} nu={} fit_kind={} min_L={} max_L={}\n",
            self.tc_star,
            self.error,
            self.slope,
            self.chi_squared,
            self.nu,
            self.fit_kind,
            self.min_size,
            self.max_size
        )
    }
}

pub fn write_tc_estimate(estimate: &TcEstimate, out_dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let path = out_dir.join(TC_ESTIMATE_FILE);
    fs::write(&path, estimate.to_line()).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn read_tc_estimate(path: &Path) -> Result<TcEstimate> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let bad = |message: String| Error::MalformedHeader {
        path: path.to_path_buf(),
        line: 1,
        message,
    };
    let line = text.lines().next().unwrap_or_default();
    let mut fields = std::collections::HashMap::new();
    for token in line.split_whitespace() {
        let (k, v) = token
            .split_once('=')
            .ok_or_else(|| bad(format!("token '{token}' is not key=value")))?;
        fields.insert(k, v);
    }
    fn get<T: std::str::FromStr>(
        fields: &std::collections::HashMap<&str, &str>,
        key: &str,
        bad: &dyn Fn(String) -> Error,
    ) -> Result<T> {
        let raw = fields
            .get(key)
            .ok_or_else(|| bad(format!("missing '{key}'")))?;
        raw.parse()
            .map_err(|_| bad(format!("cannot parse {key}='{raw}'")))
    }
    Ok(TcEstimate {
        tc_star: get(&fields, "Tc_star", &bad)?,
        error: get(&fields, "error", &bad)?,
        slope: get(&fields, "A", &bad)?,
        chi_squared: get(&fields, "chi2", &bad)?,
        nu: get(&fields, "nu", &bad)?,
        fit_kind: get(&fields, "fit_kind", &bad)?,
        min_size: get(&fields, "min_L", &bad)?,
        max_size: get(&fields, "max_L", &bad)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(n: usize) -> Vec<CurvePoint> {
        (0..n)
            .map(|i| CurvePoint {
                temperature: 2.2 + 0.01 * i as f64,
                value: i as f64,
                error: 0.1,
            })
            .collect()
    }

    #[test]
    fn figure_layout() {
        let dir = tempfile::tempdir().unwrap();
        let blocks = susceptibility_blocks(&[(8, pts(2)), (16, pts(2)), (32, pts(3))]);
        let path = emit_figure_data("susceptibility", &blocks, dir.path()).unwrap();
        assert!(path.ends_with("fig_susceptibility/fig_susceptibility.txt"));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches("# fig_susceptibility v1\n").count(), 3);
        assert!(text.starts_with(
            "# fig_susceptibility v1\n# label: L=8\n# columns: T value error\n2.2 0 0.1\n"
        ));
        assert_eq!(text.split("\n\n").count(), 3);

        let again = emit_figure_data("susceptibility", &blocks, dir.path()).unwrap();
        assert_eq!(fs::read(&again).unwrap(), text.as_bytes());

        assert!(emit_figure_data("empty", &[], dir.path()).is_err());
    }

    #[test]
    fn tc_estimate_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let est = TcEstimate {
            tc_star: 2.2693,
            error: 0.0004,
            slope: 0.31,
            chi_squared: 0.7,
            nu: 1.0,
            fit_kind: FitKind::Cubic,
            min_size: 16,
            max_size: 4096,
        };
        let path = write_tc_estimate(&est, dir.path()).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "Tc_star=2.2693 error=0.0004 A=0.31 chi2=0.7 nu=1 fit_kind=cubic min_L=16 max_L=4096\n"
        );
        assert_eq!(read_tc_estimate(&path).unwrap(), est);
        fs::write(&path, "Tc_star=2.2\n").unwrap();
        assert!(read_tc_estimate(&path).is_err());
    }
}
