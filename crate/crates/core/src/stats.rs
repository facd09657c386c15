//! Error analysis: binning, jackknife resampling and weighted straight-line
//! fits.
//!
//! The usual flow is to bin a correlated time series into `B` blocks so the
//! block means are (nearly) independent, then push those block means
//! through [`jackknife`] to get an error bar for a nonlinear statistic.

use crate::error::{Error, Result};

/// Jackknife bin count used when nothing else is configured.
pub const DEFAULT_JACKKNIFE_BINS: usize = 100;

/// Smallest bin count accepted for jackknife error bars on Monte Carlo data.
pub const MIN_JACKKNIFE_BINS: usize = 78;

/// A statistic with its error bar and the number of bins behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableEstimate {
    pub value: f64,
    pub error: f64,
    pub bins: usize,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Means of consecutive blocks of `bin_size` samples; the incomplete tail
/// block is dropped.
pub fn bin_means(samples: &[f64], bin_size: usize) -> Vec<f64> {
    if bin_size == 0 {
        return Vec::new();
    }
    samples.chunks_exact(bin_size).map(mean).collect()
}

/// Splits `samples` into exactly `bins` equal blocks of
/// `floor(len / bins)` samples each and returns the block means.
pub fn partition_means(samples: &[f64], bins: usize) -> Result<Vec<f64>> {
    if bins < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    let bin_size = samples.len() / bins;
    if bin_size == 0 {
        return Err(Error::InsufficientData(format!(
            "{} samples cannot fill {bins} bins",
            samples.len()
        )));
    }
    let mut means = bin_means(samples, bin_size);
    means.truncate(bins);
    Ok(means)
}

/// Mean of the samples that fill complete bins, with the standard error of
/// the bin means.
pub fn binning_error(samples: &[f64], bin_size: usize) -> Result<ObservableEstimate> {
    if bin_size == 0 {
        return Err(Error::InvalidArgument("bin size must be positive".into()));
    }
    let means = bin_means(samples, bin_size);
    let bins = means.len();
    if bins < 2 {
        return Err(Error::InsufficientData(format!(
            "{} samples give fewer than 2 bins of size {bin_size}",
            samples.len()
        )));
    }
    let value = mean(&means);
    let var = means.iter().map(|m| (m - value).powi(2)).sum::<f64>() / (bins - 1) as f64;
    Ok(ObservableEstimate {
        value,
        error: (var / bins as f64).sqrt(),
        bins,
    })
}

/// Binning errors at bin sizes 1, 2, 4, ... (at most `max_levels` of them),
/// stopping once fewer than two bins would remain.
///
/// The error grows with bin size while bins are still correlated and
/// levels off once they are not; the plateau is the honest error bar.
pub fn binning_curve(samples: &[f64], max_levels: usize) -> Result<Vec<(usize, f64)>> {
    if samples.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "binning curve needs at least 4 samples, got {}",
            samples.len()
        )));
    }
    let mut curve = Vec::new();
    let mut bin_size = 1usize;
    while curve.len() < max_levels && samples.len() / bin_size >= 2 {
        curve.push((bin_size, binning_error(samples, bin_size)?.error));
        bin_size *= 2;
    }
    Ok(curve)
}

/// Full-sample value and leave-one-out values of a statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct JackknifeSamples {
    pub full: f64,
    pub leave_one_out: Vec<f64>,
}

impl JackknifeSamples {
    pub fn new(full: f64, leave_one_out: Vec<f64>) -> Result<Self> {
        if leave_one_out.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "jackknife needs at least 2 bins, got {}",
                leave_one_out.len()
            )));
        }
        Ok(JackknifeSamples {
            full,
            leave_one_out,
        })
    }

    pub fn bins(&self) -> usize {
        self.leave_one_out.len()
    }

    /// `sqrt((B - 1) / B * sum_i (theta_i - theta_bar)^2)`.
    pub fn error(&self) -> f64 {
        let b = self.bins() as f64;
        let avg = mean(&self.leave_one_out);
        let ss: f64 = self.leave_one_out.iter().map(|t| (t - avg).powi(2)).sum();
        ((b - 1.0) / b * ss).sqrt()
    }

    pub fn estimate(&self) -> ObservableEstimate {
        ObservableEstimate {
            value: self.full,
            error: self.error(),
            bins: self.bins(),
        }
    }
}

/// Means over all bins but one, for every bin in turn.
pub fn leave_one_out_means(bins: &[f64]) -> Vec<f64> {
    let total: f64 = bins.iter().sum();
    let rest = (bins.len() - 1) as f64;
    bins.iter().map(|b| (total - b) / rest).collect()
}

/// Jackknife over pre-binned data.
///
/// `columns[k][i]` is the mean of observable `k` in bin `i`; every column
/// must hold the same number of bins. `statistic` receives one mean per
/// observable.
pub fn jackknife<F>(columns: &[Vec<f64>], statistic: F) -> Result<JackknifeSamples>
where
    F: Fn(&[f64]) -> f64,
{
    let bins = columns.first().map_or(0, Vec::len);
    if columns.is_empty() || bins < 2 {
        return Err(Error::InsufficientData(format!(
            "jackknife needs at least 2 bins, got {bins}"
        )));
    }
    if columns.iter().any(|c| c.len() != bins) {
        return Err(Error::InvalidArgument(
            "jackknife columns differ in bin count".into(),
        ));
    }
    let full_means: Vec<f64> = columns.iter().map(|c| mean(c)).collect();
    let loo: Vec<Vec<f64>> = columns.iter().map(|c| leave_one_out_means(c)).collect();
    let mut args = vec![0.0; columns.len()];
    let leave_one_out = (0..bins)
        .map(|i| {
            for (arg, col) in args.iter_mut().zip(&loo) {
                *arg = col[i];
            }
            statistic(&args)
        })
        .collect();
    JackknifeSamples::new(statistic(&full_means), leave_one_out)
}

/// Result of a weighted fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedFit {
    pub intercept: f64,
    pub slope: f64,
    pub intercept_error: f64,
    pub slope_error: f64,
    pub chi_squared: f64,
    pub points_used: usize,
}

impl WeightedFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Weighted least squares straight line with weights `1 / sigma^2`.
///
/// Parameter errors come from the inverse of the weighted normal matrix,
/// i.e. they take the `sigma` values at face value.
pub fn weighted_linear_fit(x: &[f64], y: &[f64], sigma: &[f64]) -> Result<WeightedFit> {
    if x.len() != y.len() || x.len() != sigma.len() {
        return Err(Error::InvalidArgument(
            "x, y and sigma must have equal lengths".into(),
        ));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "straight-line fit needs at least 2 points, got {}",
            x.len()
        )));
    }
    if let Some(s) = sigma.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidArgument(format!(
            "fit uncertainties must be positive, got {s}"
        )));
    }
    let w: Vec<f64> = sigma.iter().map(|s| 1.0 / (s * s)).collect();
    let sw: f64 = w.iter().sum();
    let x_bar = w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() / sw;
    let y_bar = w.iter().zip(y).map(|(w, y)| w * y).sum::<f64>() / sw;
    let mut stt = 0.0;
    let mut sty = 0.0;
    for ((&wi, &xi), &yi) in w.iter().zip(x).zip(y) {
        let t = xi - x_bar;
        stt += wi * t * t;
        sty += wi * t * (yi - y_bar);
    }
    let spread = x.iter().map(|v| (v - x_bar).abs()).fold(0.0, f64::max);
    if stt <= 0.0 || spread <= f64::EPSILON * x_bar.abs() {
        return Err(Error::Degenerate("all x values are equal".into()));
    }
    let slope = sty / stt;
    let intercept = y_bar - slope * x_bar;
    let chi_squared = w
        .iter()
        .zip(x)
        .zip(y)
        .map(|((w, x), y)| w * (y - intercept - slope * x).powi(2))
        .sum();
    Ok(WeightedFit {
        intercept,
        slope,
        intercept_error: (1.0 / sw + x_bar * x_bar / stt).sqrt(),
        slope_error: (1.0 / stt).sqrt(),
        chi_squared,
        points_used: x.len(),
    })
}
