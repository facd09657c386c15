use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::{
    binder_curve, collapse_transform, find_crossing, fss_extrapolate, AnalysisConfig, BinderCurve,
    BinnedPoint, CrossingPoint, CurvePoint, FssResult,
};
use crate::engine::read_run_file;
use crate::error::{Error, Result};

/// All runs of a data directory, binned and grouped by lattice size.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    by_size: BTreeMap<usize, Vec<BinnedPoint>>,
}

/// Binder curves, their crossings and the extrapolated `Tc`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinderAnalysis {
    pub curves: Vec<BinderCurve>,
    pub crossings: Vec<CrossingPoint>,
    pub fss: FssResult,
}

fn run_files(directory: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(directory).map_err(|e| Error::io(directory, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(directory, e))?.path();
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default();
        if name.starts_with("ising_") && name.ends_with(".dat") && path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

impl Dataset {
    /// Reads every `ising_*.dat` run file in `directory`, reducing each to
    /// `bins` bin means.
    pub fn load(directory: &Path, bins: usize) -> Result<Self> {
        let files = run_files(directory)?;
        if files.is_empty() {
            return Err(Error::InsufficientData(format!(
                "no run files in {}",
                directory.display()
            )));
        }
        let mut points = Vec::with_capacity(files.len());
        for path in files {
            let series = read_run_file(&path)?;
            points.push(
                BinnedPoint::from_series(&series, bins)
                    .map_err(|e| Error::InsufficientData(format!("{}: {e}", path.display())))?,
            );
        }
        Self::from_points(points)
    }

    pub fn from_points(points: Vec<BinnedPoint>) -> Result<Self> {
        let mut by_size: BTreeMap<usize, Vec<BinnedPoint>> = BTreeMap::new();
        for p in points {
            by_size.entry(p.size).or_default().push(p);
        }
        for (size, pts) in by_size.iter_mut() {
            pts.sort_by(|a, b| a.temperature().total_cmp(&b.temperature()));
            if let Some(w) = pts.windows(2).find(|w| w[0].beta == w[1].beta) {
                return Err(Error::InvalidArgument(format!(
                    "L={size}: more than one run at beta={}",
                    w[0].beta
                )));
            }
        }
        Ok(Dataset { by_size })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.by_size.keys().copied().collect()
    }

    pub fn points(&self, size: usize) -> &[BinnedPoint] {
        self.by_size.get(&size).map_or(&[], Vec::as_slice)
    }

    /// Susceptibility against temperature for every size.
    pub fn susceptibility_curves(&self) -> Result<Vec<(usize, Vec<CurvePoint>)>> {
        self.by_size
            .iter()
            .map(|(&size, pts)| {
                let curve = pts
                    .iter()
                    .map(BinnedPoint::susceptibility)
                    .collect::<Result<_>>()?;
                Ok((size, curve))
            })
            .collect()
    }

    pub fn binder_curves(&self, config: &AnalysisConfig) -> Result<Vec<BinderCurve>> {
        self.by_size
            .values()
            .map(|pts| binder_curve(pts, config))
            .collect()
    }

    /// Crossings for every `(L/2, L)` pair, then the finite-size
    /// extrapolation over those with `L` inside the configured size range.
    /// A pair outside the range that has no usable crossing is left out.
    pub fn binder_analysis(&self, config: &AnalysisConfig) -> Result<BinderAnalysis> {
        config.validate()?;
        let curves = self.binder_curves(config)?;
        let mut crossings = Vec::new();
        for large in &curves {
            let Some(small) = curves.iter().find(|c| 2 * c.size == large.size) else {
                continue;
            };
            if (config.min_size..=config.max_size).contains(&large.size) {
                crossings.push(find_crossing(small, large, config)?);
            } else if let Ok(c) = find_crossing(small, large, config) {
                // Shown in the figure, kept out of the fit.
                crossings.push(c);
            }
        }
        if !crossings
            .iter()
            .any(|c| (config.min_size..=config.max_size).contains(&c.size))
        {
            return Err(Error::InsufficientData(format!(
                "no (L/2, L) size pairs with {} <= L <= {} among sizes {:?}",
                config.min_size,
                config.max_size,
                self.sizes()
            )));
        }
        let fss = fss_extrapolate(&crossings, config)?;
        Ok(BinderAnalysis {
            curves,
            crossings,
            fss,
        })
    }
}

/// Binder curves in collapse coordinates `x = L^(1/nu) (T - Tc) / Tc`.
pub fn collapse_curves(curves: &[BinderCurve], tc: f64, nu: f64) -> Vec<(usize, Vec<CurvePoint>)> {
    curves
        .iter()
        .map(|c| {
            let pts = c
                .points
                .iter()
                .map(|p| CurvePoint {
                    temperature: collapse_transform(p.temperature, c.size, tc, nu),
                    ..*p
                })
                .collect();
            (c.size, pts)
        })
        .collect()
}
