use super::CurvePoint;
use crate::engine::MeasurementSeries;
use crate::error::{Error, Result};
use crate::stats::{jackknife, partition_means, JackknifeSamples};

/// A run reduced to bin means of `|m|` and `m^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedPoint {
    pub size: usize,
    pub beta: f64,
    pub abs_m: Vec<f64>,
    pub m2: Vec<f64>,
}

impl BinnedPoint {
    /// Splits the series into `bins` equal blocks; trailing records that do
    /// not fill a block are dropped.
    pub fn from_series(series: &MeasurementSeries, bins: usize) -> Result<Self> {
        let m: Vec<f64> = series.magnetizations().collect();
        Self::from_magnetizations(series.params().size, series.params().beta, &m, bins)
    }

    pub fn from_magnetizations(size: usize, beta: f64, m: &[f64], bins: usize) -> Result<Self> {
        let abs: Vec<f64> = m.iter().map(|x| x.abs()).collect();
        let sq: Vec<f64> = m.iter().map(|x| x * x).collect();
        Ok(BinnedPoint {
            size,
            beta,
            abs_m: partition_means(&abs, bins)?,
            m2: partition_means(&sq, bins)?,
        })
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn bins(&self) -> usize {
        self.abs_m.len()
    }

    fn columns(&self) -> [Vec<f64>; 2] {
        [self.abs_m.clone(), self.m2.clone()]
    }

    /// Jackknife samples of `U2 = <m^2> / <|m|>^2`.
    pub fn binder_samples(&self) -> Result<JackknifeSamples> {
        if self.abs_m.iter().all(|&a| a == 0.0) {
            return Err(Error::Degenerate(format!(
                "magnetization vanishes identically at L={} beta={}",
                self.size, self.beta
            )));
        }
        jackknife(&self.columns(), |m| m[1] / (m[0] * m[0]))
    }

    /// Jackknife samples of `chi = beta L^2 (<m^2> - <|m|>^2)`.
    pub fn susceptibility_samples(&self) -> Result<JackknifeSamples> {
        let scale = self.beta * (self.size * self.size) as f64;
        jackknife(&self.columns(), |m| scale * (m[1] - m[0] * m[0]))
    }

    pub fn binder(&self) -> Result<CurvePoint> {
        let e = self.binder_samples()?.estimate();
        Ok(CurvePoint {
            temperature: self.temperature(),
            value: e.value,
            error: e.error,
        })
    }

    pub fn susceptibility(&self) -> Result<CurvePoint> {
        let e = self.susceptibility_samples()?.estimate();
        Ok(CurvePoint {
            temperature: self.temperature(),
            value: e.value,
            error: e.error,
        })
    }
}

/// Connected susceptibility of one run with a jackknife error over `bins`.
pub fn susceptibility(series: &MeasurementSeries, bins: usize) -> Result<CurvePoint> {
    BinnedPoint::from_series(series, bins)?.susceptibility()
}

/// Binder cumulant of one run with a jackknife error over `bins`.
pub fn binder_cumulant(series: &MeasurementSeries, bins: usize) -> Result<CurvePoint> {
    BinnedPoint::from_series(series, bins)?.binder()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    #[test]
    fn constant_magnetization() {
        let p = BinnedPoint::from_magnetizations(8, 0.4, &[0.5; 400], 100).unwrap();
        let chi = p.susceptibility().unwrap();
        assert!(chi.value.abs() < 1e-15 && chi.error < 1e-15);
        let u = BinnedPoint::from_magnetizations(8, 0.4, &[1.0; 400], 100).unwrap();
        let b = u.binder().unwrap();
        assert_eq!((b.value, b.error), (1.0, 0.0));
        let zero = BinnedPoint::from_magnetizations(8, 0.4, &[0.0; 400], 100).unwrap();
        assert!(matches!(zero.binder(), Err(Error::Degenerate(_))));
        assert!(BinnedPoint::from_magnetizations(8, 0.4, &[0.5; 50], 100).is_err());
    }

    #[test]
    fn susceptibility_arithmetic() {
        // |m| alternates 0.6 +- d with d^2 = 0.14: <|m|> = 0.6, <m^2> = 0.5.
        let d = 0.14f64.sqrt();
        let m: Vec<f64> = (0..1000)
            .map(|i| if i % 2 == 0 { 0.6 + d } else { -(0.6 - d) })
            .collect();
        let p = BinnedPoint::from_magnetizations(8, 0.4, &m, 100).unwrap();
        let chi = p.susceptibility().unwrap();
        assert!((chi.value - 3.584).abs() < 1e-12, "{}", chi.value);
        assert!((chi.temperature - 2.5).abs() < 1e-15);
    }

    #[test]
    fn gaussian_binder_limit() {
        // Independent Gaussian m: <m^2> / <|m|>^2 = pi / 2.
        let mut rng = RandomStream::new(77);
        let m: Vec<f64> = (0..2_000_000)
            .map(|_| {
                let u1 = 1.0 - rng.next_unit_real();
                let u2 = rng.next_unit_real();
                0.1 * (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            })
            .collect();
        let b = BinnedPoint::from_magnetizations(32, 0.2, &m, 100)
            .unwrap()
            .binder()
            .unwrap();
        let target = std::f64::consts::FRAC_PI_2;
        assert!(
            (b.value - target).abs() < 5.0 * b.error,
            "{} +- {}",
            b.value,
            b.error
        );
        assert!(b.error < 0.005);
    }
}
