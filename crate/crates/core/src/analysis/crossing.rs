//! Binder-cumulant crossings between sizes `L/2` and `L`, and their
//! extrapolation `T(L) = Tc + A L^(-1/nu)`.

use super::poly::fit_polynomial;
use super::{fit_curve, AnalysisConfig, BinnedPoint, CurvePoint, Polynomial};
use crate::error::{Error, Result};
use crate::stats::{weighted_linear_fit, JackknifeSamples, WeightedFit};

/// Scan resolution used to bracket sign changes before bisection.
const SCAN_POINTS: usize = 1000;

/// Binder cumulants of one size, sorted by temperature, together with the
/// leave-one-out values behind each error bar.
#[derive(Debug, Clone, PartialEq)]
pub struct BinderCurve {
    pub size: usize,
    pub points: Vec<CurvePoint>,
    /// `samples[k][i]`: `U2` at point `k` with bin `i` left out.
    pub samples: Vec<Vec<f64>>,
}

impl BinderCurve {
    /// Builds a curve from explicit points and leave-one-out samples.
    pub fn new(size: usize, points: Vec<CurvePoint>, samples: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() != samples.len() {
            return Err(Error::InvalidArgument(
                "one jackknife sample set per point is required".into(),
            ));
        }
        let bins = samples.first().map_or(0, Vec::len);
        if samples.iter().any(|s| s.len() != bins) {
            return Err(Error::InvalidArgument(format!(
                "L={size}: temperatures differ in jackknife bin count"
            )));
        }
        if !points
            .windows(2)
            .all(|w| w[0].temperature < w[1].temperature)
        {
            return Err(Error::InvalidArgument(format!(
                "L={size}: temperatures must be strictly increasing"
            )));
        }
        Ok(BinderCurve {
            size,
            points,
            samples,
        })
    }

    pub fn bins(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    fn windowed(&self, config: &AnalysisConfig) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&k| config.in_window(self.points[k].temperature))
            .collect()
    }

    /// The curve's fit over the configured window.
    pub fn fit(&self, config: &AnalysisConfig) -> Result<Polynomial> {
        let sel = self.windowed(config);
        if sel.len() < config.fit_kind.min_points() {
            return Err(Error::InsufficientData(format!(
                "L={}: {} temperatures in the fit window, a {} fit needs {}",
                self.size,
                sel.len(),
                config.fit_kind,
                config.fit_kind.min_points()
            )));
        }
        let pts: Vec<CurvePoint> = sel.iter().map(|&k| self.points[k]).collect();
        fit_curve(&pts, config.fit_kind)
    }
}

/// Binder curve of one size from its per-temperature runs.
pub fn binder_curve(points: &[BinnedPoint], config: &AnalysisConfig) -> Result<BinderCurve> {
    let first = points
        .first()
        .ok_or_else(|| Error::InsufficientData("no runs for the Binder curve".into()))?;
    if let Some(other) = points.iter().find(|p| p.size != first.size) {
        return Err(Error::InvalidArgument(format!(
            "Binder curve mixes sizes {} and {}",
            first.size, other.size
        )));
    }
    if points.len() < config.fit_kind.min_points() {
        return Err(Error::InsufficientData(format!(
            "L={}: {} temperatures, a {} fit needs at least {}",
            first.size,
            points.len(),
            config.fit_kind,
            config.fit_kind.min_points()
        )));
    }
    let mut sorted: Vec<&BinnedPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.temperature().total_cmp(&b.temperature()));
    if let Some(w) = sorted.windows(2).find(|w| w[0].beta == w[1].beta) {
        return Err(Error::InvalidArgument(format!(
            "L={}: duplicate temperature T={}",
            first.size,
            w[0].temperature()
        )));
    }
    let mut pts = Vec::with_capacity(sorted.len());
    let mut samples = Vec::with_capacity(sorted.len());
    for p in sorted {
        let jk = p.binder_samples()?;
        let e = jk.estimate();
        pts.push(CurvePoint {
            temperature: p.temperature(),
            value: e.value,
            error: e.error,
        });
        samples.push(jk.leave_one_out);
    }
    BinderCurve::new(first.size, pts, samples)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Roots of `f` in `[lo, hi]`, bracketed on an evenly spaced 1000-point
/// scan and refined by bisection. Grid points where `f` is exactly zero are
/// roots themselves.
pub fn crossing_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<f64> {
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let mut roots = Vec::new();
    for k in 0..SCAN_POINTS {
        if values[k] == 0.0 {
            roots.push(grid[k]);
        } else if k + 1 < SCAN_POINTS
            && values[k + 1] != 0.0
            && (values[k] < 0.0) != (values[k + 1] < 0.0)
        {
            roots.push(bisect(&f, grid[k], grid[k + 1]));
        }
    }
    roots
}

/// Crossing temperature of sizes `L/2` and `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingPoint {
    /// The larger size of the pair.
    pub size: usize,
    pub temperature: f64,
    /// Jackknife standard error of `temperature`.
    pub error: f64,
}

fn overlap(small: &BinderCurve, large: &BinderCurve, ks: &[usize], kl: &[usize]) -> (f64, f64) {
    let lo = small.points[ks[0]]
        .temperature
        .max(large.points[kl[0]].temperature);
    let hi = small.points[*ks.last().unwrap()]
        .temperature
        .min(large.points[*kl.last().unwrap()].temperature);
    (lo, hi)
}

/// Locates the crossing of the fitted Binder curves of `small` (size `L/2`)
/// and `large` (size `L`), with a jackknife error from refitting both curves
/// and re-solving on every leave-one-out sample.
///
/// More than one sign change of the full-sample difference is an error that
/// lists every root. On leave-one-out samples the root nearest the
/// full-sample crossing is used.
pub fn find_crossing(
    small: &BinderCurve,
    large: &BinderCurve,
    config: &AnalysisConfig,
) -> Result<CrossingPoint> {
    if large.size != 2 * small.size {
        return Err(Error::InvalidArgument(format!(
            "crossing pairs L/2 with L, got sizes {} and {}",
            small.size, large.size
        )));
    }
    if small.bins() != large.bins() {
        return Err(Error::InvalidArgument(format!(
            "L={} and L={} differ in jackknife bin count ({} vs {})",
            small.size,
            large.size,
            small.bins(),
            large.bins()
        )));
    }
    let ks = small.windowed(config);
    let kl = large.windowed(config);
    let fit_small = small.fit(config)?;
    let fit_large = large.fit(config)?;
    let (lo, hi) = overlap(small, large, &ks, &kl);
    let no_crossing = || Error::NoCrossing {
        small: small.size,
        large: large.size,
        t_min: lo,
        t_max: hi,
    };
    if !(lo < hi) {
        return Err(no_crossing());
    }
    let roots = crossing_roots(|t| fit_large.eval(t) - fit_small.eval(t), lo, hi);
    let full = match roots.as_slice() {
        [] => return Err(no_crossing()),
        [t] => *t,
        _ => {
            return Err(Error::AmbiguousCrossing {
                small: small.size,
                large: large.size,
                roots,
            })
        }
    };

    let sigma = |curve: &BinderCurve, sel: &[usize]| -> Option<Vec<f64>> {
        let errs: Vec<f64> = sel.iter().map(|&k| curve.points[k].error).collect();
        errs.iter()
            .all(|&e| e > 0.0 && e.is_finite())
            .then_some(errs)
    };
    let ts_small: Vec<f64> = ks.iter().map(|&k| small.points[k].temperature).collect();
    let ts_large: Vec<f64> = kl.iter().map(|&k| large.points[k].temperature).collect();
    let sig_small = sigma(small, &ks);
    let sig_large = sigma(large, &kl);
    let degree = config.fit_kind.degree();

    let mut loo = Vec::with_capacity(small.bins());
    for i in 0..small.bins() {
        let ys: Vec<f64> = ks.iter().map(|&k| small.samples[k][i]).collect();
        let yl: Vec<f64> = kl.iter().map(|&k| large.samples[k][i]).collect();
        let ps = fit_polynomial(&ts_small, &ys, sig_small.as_deref(), degree)?;
        let pl = fit_polynomial(&ts_large, &yl, sig_large.as_deref(), degree)?;
        let r = crossing_roots(|t| pl.eval(t) - ps.eval(t), lo, hi);
        let nearest = r
            .into_iter()
            .min_by(|a, b| (a - full).abs().total_cmp(&(b - full).abs()))
            .ok_or_else(no_crossing)?;
        loo.push(nearest);
    }
    let error = JackknifeSamples::new(full, loo)?.error();
    if !(error > 0.0) {
        return Err(Error::Degenerate(format!(
            "crossing of L={} and L={} has zero jackknife spread",
            small.size, large.size
        )));
    }
    Ok(CrossingPoint {
        size: large.size,
        temperature: full,
        error,
    })
}

/// Extrapolated critical temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct FssResult {
    pub tc_star: f64,
    pub tc_star_error: f64,
    /// Slope `A` against `L^(-1/nu)`.
    pub slope: f64,
    pub chi_squared: f64,
    pub nu: f64,
    pub crossings_used: Vec<CrossingPoint>,
    pub fit: WeightedFit,
}

/// Weighted straight-line fit of crossing temperatures against
/// `L^(-1/nu)`, using crossings with `min_size <= L <= max_size`.
pub fn fss_extrapolate(crossings: &[CrossingPoint], config: &AnalysisConfig) -> Result<FssResult> {
    let used: Vec<CrossingPoint> = crossings
        .iter()
        .copied()
        .filter(|c| (config.min_size..=config.max_size).contains(&c.size))
        .collect();
    if used.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} crossings with {} <= L <= {}, need at least 2",
            used.len(),
            config.min_size,
            config.max_size
        )));
    }
    let x: Vec<f64> = used
        .iter()
        .map(|c| (c.size as f64).powf(-1.0 / config.nu))
        .collect();
    let y: Vec<f64> = used.iter().map(|c| c.temperature).collect();
    let s: Vec<f64> = used.iter().map(|c| c.error).collect();
    let fit = weighted_linear_fit(&x, &y, &s)?;
    Ok(FssResult {
        tc_star: fit.intercept,
        tc_star_error: fit.intercept_error,
        slope: fit.slope,
        chi_squared: fit.chi_squared,
        nu: config.nu,
        crossings_used: used,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    /// A synthetic curve whose leave-one-out samples scatter around `f`.
    fn synthetic(size: usize, f: impl Fn(f64) -> f64, seed: u32) -> BinderCurve {
        let mut rng = RandomStream::new(seed);
        let ts: Vec<f64> = (0..25).map(|i| 2.21 + 0.005 * i as f64).collect();
        let bins = 100;
        let mut points = Vec::new();
        let mut samples = Vec::new();
        for &t in &ts {
            let s: Vec<f64> = (0..bins)
                .map(|_| f(t) + 1e-5 * (rng.next_unit_real() - 0.5))
                .collect();
            let jk = JackknifeSamples::new(f(t), s.clone()).unwrap();
            points.push(CurvePoint {
                temperature: t,
                value: f(t),
                error: jk.error(),
            });
            samples.push(s);
        }
        BinderCurve::new(size, points, samples).unwrap()
    }

    #[test]
    fn constructed_linear_crossing() {
        let a = synthetic(8, |t| 1.2 - 0.1 * (t - 2.27), 1);
        let b = synthetic(16, |t| 1.2 - 0.4 * (t - 2.27), 2);
        for kind in [super::super::FitKind::Linear, super::super::FitKind::Cubic] {
            let cfg = AnalysisConfig {
                fit_kind: kind,
                ..Default::default()
            };
            let c = find_crossing(&a, &b, &cfg).unwrap();
            assert_eq!(c.size, 16);
            assert!(
                (c.temperature - 2.27).abs() < 1e-9,
                "{kind}: {}",
                c.temperature
            );
            assert!(c.error > 0.0 && c.error < 1e-3);
        }
    }

    #[test]
    fn identical_curves_are_ambiguous() {
        let a = synthetic(8, |t| 1.2 - 0.1 * (t - 2.27), 1);
        let mut b = a.clone();
        b.size = 16;
        let cfg = AnalysisConfig {
            fit_kind: super::super::FitKind::Linear,
            ..Default::default()
        };
        assert!(matches!(
            find_crossing(&a, &b, &cfg),
            Err(Error::AmbiguousCrossing { .. })
        ));
    }

    #[test]
    fn parallel_curves_do_not_cross() {
        let a = synthetic(8, |t| 1.2 - 0.1 * t, 1);
        let b = synthetic(16, |t| 1.3 - 0.1 * t, 2);
        let cfg = AnalysisConfig::default();
        assert!(matches!(
            find_crossing(&a, &b, &cfg),
            Err(Error::NoCrossing { .. })
        ));
        let c = synthetic(32, |t| 1.3 - 0.1 * t, 2);
        assert!(find_crossing(&a, &c, &cfg).is_err());
    }

    #[test]
    fn several_roots_are_reported() {
        let a = synthetic(8, |_| 1.1, 1);
        let b = synthetic(16, |t| 1.1 + (t - 2.23) * (t - 2.27) * (t - 2.31), 2);
        let err = find_crossing(&a, &b, &AnalysisConfig::default()).unwrap_err();
        match err {
            Error::AmbiguousCrossing { roots, .. } => {
                assert_eq!(roots.len(), 3);
                for (r, want) in roots.iter().zip([2.23, 2.27, 2.31]) {
                    assert!((r - want).abs() < 1e-6, "{roots:?}");
                }
            }
            other => panic!("unexpected {other}"),
        }
        // A window around one root resolves the ambiguity.
        let cfg = AnalysisConfig {
            fit_window: Some((2.25, 2.29)),
            ..Default::default()
        };
        let c = find_crossing(&a, &b, &cfg).unwrap();
        assert!((c.temperature - 2.27).abs() < 1e-6);
    }

    #[test]
    fn roots_on_grid_nodes() {
        let r = crossing_roots(|t| t - 1.0, 0.0, 1.0);
        assert_eq!(r, vec![1.0]);
        let r = crossing_roots(|t| t - 0.5, 0.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn extrapolation_of_exact_scaling_data() {
        let cross: Vec<CrossingPoint> = [16usize, 32, 64]
            .iter()
            .map(|&l| CrossingPoint {
                size: l,
                temperature: 2.269185 + 0.3 / l as f64,
                error: 1e-3,
            })
            .collect();
        let r = fss_extrapolate(&cross, &AnalysisConfig::default()).unwrap();
        assert!((r.tc_star - 2.269185).abs() <= 1e-12 * 2.269185);
        assert!((r.slope - 0.3).abs() < 1e-10);
        assert!(r.chi_squared < 1e-18);
        assert!(r.tc_star_error > 0.0);
        assert_eq!(r.crossings_used.len(), 3);

        let narrow = AnalysisConfig {
            min_size: 32,
            ..Default::default()
        };
        let r = fss_extrapolate(&cross, &narrow).unwrap();
        assert_eq!(
            r.crossings_used.iter().map(|c| c.size).collect::<Vec<_>>(),
            vec![32, 64]
        );
        assert!((r.tc_star - 2.269185).abs() < 1e-12);

        let one = AnalysisConfig {
            min_size: 64,
            ..Default::default()
        };
        assert!(fss_extrapolate(&cross, &one).is_err());
    }

    #[test]
    fn binder_curve_validation() {
        let mk = |size: usize, beta: f64| {
            let m: Vec<f64> = (0..400).map(|i| 0.5 + 0.001 * (i % 7) as f64).collect();
            BinnedPoint::from_magnetizations(size, beta, &m, 100).unwrap()
        };
        let cfg = AnalysisConfig::default();
        let pts: Vec<BinnedPoint> = [0.40, 0.44, 0.42, 0.43, 0.41]
            .iter()
            .map(|&b| mk(8, b))
            .collect();
        let curve = binder_curve(&pts, &cfg).unwrap();
        assert_eq!(curve.points.len(), 5);
        assert!(curve
            .points
            .windows(2)
            .all(|w| w[0].temperature < w[1].temperature));

        let mut dup = pts.clone();
        dup.push(mk(8, 0.42));
        assert!(binder_curve(&dup, &cfg).is_err());
        let mut mixed = pts.clone();
        mixed.push(mk(16, 0.45));
        assert!(binder_curve(&mixed, &cfg).is_err());
        assert!(binder_curve(&pts[..3], &cfg).is_err());
        let lin = AnalysisConfig {
            fit_kind: super::super::FitKind::Linear,
            ..Default::default()
        };
        assert!(binder_curve(&pts[..2], &lin).is_ok());
    }
}
