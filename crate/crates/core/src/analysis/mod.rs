//! From run files to a critical temperature.
//!
//! Each run file is reduced to `B` bin means of `|m|` and `m^2`
//! ([`BinnedPoint`]). Everything downstream, including the crossing
//! temperatures and their error bars, is a function of those bin means and
//! goes through the jackknife.

mod crossing;
mod dataset;
mod figures;
mod observables;
mod poly;

pub use crossing::{
    binder_curve, crossing_roots, find_crossing, fss_extrapolate, BinderCurve, CrossingPoint,
    FssResult,
};
pub use dataset::{collapse_curves, BinderAnalysis, Dataset};
pub use figures::{
    binder_blocks, collapse_blocks, emit_figure_data, read_tc_estimate, sizescaling_blocks,
    susceptibility_blocks, write_tc_estimate, FigureBlock, TcEstimate, TC_ESTIMATE_FILE,
};
pub use observables::{binder_cumulant, susceptibility, BinnedPoint};
pub use poly::{fit_curve, fit_polynomial, Polynomial};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stats::{DEFAULT_JACKKNIFE_BINS, MIN_JACKKNIFE_BINS};

/// Onsager's `T_c = 2J / ln(1 + sqrt(2))`.
pub fn exact_tc(coupling: f64) -> f64 {
    2.0 * coupling / (1.0 + 2f64.sqrt()).ln()
}

/// Scaling variable `L^(1/nu) (T - Tc) / Tc` of the Binder data collapse.
pub fn collapse_transform(temperature: f64, size: usize, tc: f64, nu: f64) -> f64 {
    (size as f64).powf(1.0 / nu) * (temperature - tc) / tc
}

/// Polynomial used to interpolate Binder curves between temperatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitKind {
    #[default]
    Cubic,
    Linear,
}

impl FitKind {
    pub fn degree(self) -> usize {
        match self {
            FitKind::Cubic => 3,
            FitKind::Linear => 1,
        }
    }

    /// Fewest temperatures a curve needs for this fit.
    pub fn min_points(self) -> usize {
        self.degree() + 1
    }
}

impl fmt::Display for FitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitKind::Cubic => "cubic",
            FitKind::Linear => "linear",
        })
    }
}

impl FromStr for FitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubic" => Ok(FitKind::Cubic),
            "linear" => Ok(FitKind::Linear),
            other => Err(Error::InvalidArgument(format!(
                "fit kind must be 'cubic' or 'linear', got '{other}'"
            ))),
        }
    }
}

/// Knobs of the evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub fit_kind: FitKind,
    /// Crossings with `min_size <= L <= max_size` enter the extrapolation;
    /// `L` is the larger size of each pair.
    pub min_size: usize,
    pub max_size: usize,
    /// Critical temperature for the data collapse; `None` defers to the
    /// stored estimate.
    pub tc: Option<f64>,
    pub nu: f64,
    pub jackknife_bins: usize,
    /// Restricts curve fits and crossing searches to `[lo, hi]`.
    pub fit_window: Option<(f64, f64)>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            fit_kind: FitKind::Cubic,
            min_size: 16,
            max_size: 4096,
            tc: None,
            nu: 1.0,
            jackknife_bins: DEFAULT_JACKKNIFE_BINS,
            fit_window: None,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_size > self.max_size {
            return Err(Error::InvalidArgument(format!(
                "finite_size_min_L = {} exceeds finite_size_max_L = {}",
                self.min_size, self.max_size
            )));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "nu must be positive, got {}",
                self.nu
            )));
        }
        if let Some(tc) = self.tc {
            if !(tc > 0.0 && tc.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "Tc must be positive, got {tc}"
                )));
            }
        }
        if self.jackknife_bins < MIN_JACKKNIFE_BINS {
            return Err(Error::InvalidArgument(format!(
                "jackknife_bins must be at least {MIN_JACKKNIFE_BINS}, got {}",
                self.jackknife_bins
            )));
        }
        if let Some((lo, hi)) = self.fit_window {
            if !(lo < hi) {
                return Err(Error::InvalidArgument(format!(
                    "fit window [{lo}, {hi}] is empty"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn in_window(&self, t: f64) -> bool {
        self.fit_window
            .is_none_or(|(lo, hi)| (lo..=hi).contains(&t))
    }
}

/// One point of a temperature curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub temperature: f64,
    pub value: f64,
    pub error: f64,
}

/// Largest deviation, in combined error bars, between the collapsed Binder
/// curves of any two sizes over `x` in `[x_min, x_max]`.
///
/// Curves are given as `(size, points)` with points in collapse coordinates
/// (`temperature` holds `x`), sorted by `x`. Both curves are linearly
/// interpolated on a common grid of 101 points restricted to their overlap.
pub fn collapse_deviation(
    curves: &[(usize, Vec<CurvePoint>)],
    x_min: f64,
    x_max: f64,
) -> Option<f64> {
    let interp = |pts: &[CurvePoint], x: f64| -> Option<(f64, f64)> {
        let k = pts
            .windows(2)
            .position(|w| w[0].temperature <= x && x <= w[1].temperature)?;
        let (a, b) = (pts[k], pts[k + 1]);
        let f = (x - a.temperature) / (b.temperature - a.temperature);
        Some((
            a.value + f * (b.value - a.value),
            a.error + f * (b.error - a.error),
        ))
    };
    let mut worst: Option<f64> = None;
    for (i, (_, a)) in curves.iter().enumerate() {
        for (_, b) in &curves[i + 1..] {
            let lo = x_min
                .max(a.first()?.temperature)
                .max(b.first()?.temperature);
            let hi = x_max.min(a.last()?.temperature).min(b.last()?.temperature);
            if !(lo < hi) {
                continue;
            }
            for k in 0..=100 {
                let x = lo + (hi - lo) * k as f64 / 100.0;
                if let (Some((va, ea)), Some((vb, eb))) = (interp(a, x), interp(b, x)) {
                    let z = (va - vb).abs() / (ea * ea + eb * eb).sqrt();
                    worst = Some(worst.map_or(z, |w: f64| w.max(z)));
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn onsager_temperature() {
        assert!((exact_tc(1.0) - 2.269185).abs() < 5e-7);
        assert!((exact_tc(1.0) - 2.269_185_314_213_022).abs() < 1e-14);
        assert!((exact_tc(2.0) - 4.538_370_628_426_044).abs() < 1e-13);
        assert!((exact_tc(1.0) * (1.0 + 2f64.sqrt()).ln() / 2.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collapse_variable() {
        assert_eq!(collapse_transform(2.269185, 64, 2.269185, 1.0), 0.0);
        let x = collapse_transform(2.3, 16, 2.269185, 1.0);
        assert!((x - 16.0 * 0.030815 / 2.269185).abs() < 1e-12);
        assert!((x - 0.21727).abs() < 1e-5);
        let x32 = collapse_transform(2.3, 32, 2.269185, 1.0);
        assert!((x32 - 2.0 * x).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        AnalysisConfig::default().validate().unwrap();
        let bad = [
            AnalysisConfig {
                min_size: 64,
                max_size: 32,
                ..Default::default()
            },
            AnalysisConfig {
                nu: 0.0,
                ..Default::default()
            },
            AnalysisConfig {
                jackknife_bins: 50,
                ..Default::default()
            },
            AnalysisConfig {
                tc: Some(-1.0),
                ..Default::default()
            },
            AnalysisConfig {
                fit_window: Some((2.3, 2.2)),
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        assert_eq!("linear".parse::<FitKind>().unwrap(), FitKind::Linear);
        assert_eq!(FitKind::Cubic.to_string(), "cubic");
        assert!("quartic".parse::<FitKind>().is_err());
    }

    #[test]
    fn collapse_deviation_of_identical_curves_is_zero() {
        let pts: Vec<CurvePoint> = (0..11)
            .map(|i| CurvePoint {
                temperature: -1.0 + 0.2 * i as f64,
                value: 1.1 + 0.01 * i as f64,
                error: 0.01,
            })
            .collect();
        let d = collapse_deviation(&[(8, pts.clone()), (16, pts)], -1.0, 1.0).unwrap();
        assert!(d < 1e-12);
    }
}
