use super::{CurvePoint, FitKind};
use crate::error::{Error, Result};

/// Least-squares polynomial in `u = (T - center) / scale`.
///
/// Fitting in the centered, scaled variable keeps the design matrix well
/// conditioned even for cubics over a narrow window like `[2.21, 2.33]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    center: f64,
    scale: f64,
    /// Coefficients of `u^0, u^1, ...`.
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.scale;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    /// Coefficients of `T^0, T^1, ...` in the plain monomial basis.
    pub fn coefficients(&self) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let lead = c / self.scale.powi(j as i32);
            let mut binom = 1.0;
            for (i, o) in out.iter_mut().enumerate().take(j + 1) {
                // term: C(j, i) T^i (-center)^(j - i)
                *o += lead * binom * (-self.center).powi((j - i) as i32);
                binom = binom * (j - i) as f64 / (i + 1) as f64;
            }
        }
        out
    }
}

/// Weighted least-squares fit of `ys` against `ts`.
///
/// With `sigma` given, rows are weighted by `1 / sigma`; otherwise all rows
/// count equally.
pub fn fit_polynomial(
    ts: &[f64],
    ys: &[f64],
    sigma: Option<&[f64]>,
    degree: usize,
) -> Result<Polynomial> {
    let n = ts.len();
    let k = degree + 1;
    if ys.len() != n || sigma.is_some_and(|s| s.len() != n) {
        return Err(Error::InvalidArgument("fit inputs differ in length".into()));
    }
    if n < k {
        return Err(Error::InsufficientData(format!(
            "degree-{degree} fit needs at least {k} points, got {n}"
        )));
    }
    let lo = ts.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (lo + hi);
    let scale = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };

    // Column-major design matrix and right-hand side, rows pre-weighted.
    let mut a = vec![0.0; n * k];
    let mut b = vec![0.0; n];
    for r in 0..n {
        let w = sigma.map_or(1.0, |s| 1.0 / s[r]);
        let u = (ts[r] - center) / scale;
        let mut pow = w;
        for c in 0..k {
            a[c * n + r] = pow;
            pow *= u;
        }
        b[r] = w * ys[r];
    }

    // Householder QR, applying each reflection to b as we go.
    let mut diag = vec![0.0; k];
    for c in 0..k {
        let col = &mut a[c * n..(c + 1) * n];
        let norm = col[c..].iter().map(|x| x * x).sum::<f64>().sqrt();
        let alpha = if col[c] > 0.0 { -norm } else { norm };
        diag[c] = alpha;
        if norm == 0.0 {
            continue;
        }
        col[c] -= alpha;
        let vnorm2: f64 = col[c..].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let v: Vec<f64> = col[c..].to_vec();
        for c2 in c + 1..k {
            let other = &mut a[c2 * n..(c2 + 1) * n];
            let dot: f64 = v.iter().zip(&other[c..]).map(|(x, y)| x * y).sum();
            let f = 2.0 * dot / vnorm2;
            for (o, x) in other[c..].iter_mut().zip(&v) {
                *o -= f * x;
            }
        }
        let dot: f64 = v.iter().zip(&b[c..]).map(|(x, y)| x * y).sum();
        let f = 2.0 * dot / vnorm2;
        for (o, x) in b[c..].iter_mut().zip(&v) {
            *o -= f * x;
        }
    }

    let biggest = diag.iter().map(|d| d.abs()).fold(0.0, f64::max);
    if diag.iter().any(|d| d.abs() <= 1e-12 * biggest) {
        return Err(Error::Degenerate(format!(
            "degree-{degree} fit is rank deficient (too few distinct temperatures)"
        )));
    }
    // Back substitution on R, whose strict upper part sits in `a`.
    let mut coeffs = vec![0.0; k];
    for c in (0..k).rev() {
        let mut acc = b[c];
        for c2 in c + 1..k {
            acc -= a[c2 * n + c] * coeffs[c2];
        }
        coeffs[c] = acc / diag[c];
    }
    Ok(Polynomial {
        center,
        scale,
        coeffs,
    })
}

/// Fits a curve with the polynomial of `kind`, weighted by `1 / error^2`
/// when every point carries a positive error and unweighted otherwise.
pub fn fit_curve(points: &[CurvePoint], kind: FitKind) -> Result<Polynomial> {
    let ts: Vec<f64> = points.iter().map(|p| p.temperature).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.value).collect();
    let errs: Vec<f64> = points.iter().map(|p| p.error).collect();
    let weighted = errs.iter().all(|&e| e > 0.0 && e.is_finite());
    fit_polynomial(&ts, &ys, weighted.then_some(errs.as_slice()), kind.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(f: impl Fn(f64) -> f64, ts: &[f64], err: f64) -> Vec<CurvePoint> {
        ts.iter()
            .map(|&t| CurvePoint {
                temperature: t,
                value: f(t),
                error: err,
            })
            .collect()
    }

    #[test]
    fn cubic_through_four_points_is_exact() {
        let f = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t - 0.25 * t * t * t;
        let p = fit_curve(&pts(f, &[0.0, 1.0, 2.0, 3.0], 0.0), FitKind::Cubic).unwrap();
        let c = p.coefficients();
        for (got, want) in c.iter().zip([1.0, -2.0, 0.5, -0.25]) {
            assert!((got - want).abs() < 1e-12, "{c:?}");
        }
        for t in [0.0, 1.0, 2.0, 3.0, 1.7] {
            assert!((p.eval(t) - f(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_fit_on_line() {
        let f = |t: f64| 1.2 - 0.4 * (t - 2.27);
        let ts: Vec<f64> = (0..25).map(|i| 2.21 + 0.005 * i as f64).collect();
        let p = fit_curve(&pts(f, &ts, 0.01), FitKind::Linear).unwrap();
        let c = p.coefficients();
        assert!((c[1] + 0.4).abs() < 1e-12);
        assert!((c[0] - (1.2 + 0.4 * 2.27)).abs() < 1e-12);
    }

    #[test]
    fn weighted_fit_pulls_towards_precise_points() {
        // Three points, line through the two precise ones.
        let points = vec![
            CurvePoint {
                temperature: 0.0,
                value: 0.0,
                error: 1e-4,
            },
            CurvePoint {
                temperature: 1.0,
                value: 10.0,
                error: 10.0,
            },
            CurvePoint {
                temperature: 2.0,
                value: 2.0,
                error: 1e-4,
            },
        ];
        let p = fit_curve(&points, FitKind::Linear).unwrap();
        assert!((p.eval(1.0) - 1.0).abs() < 1e-3);
        // Unweighted when one error is zero.
        let mut flat = points.clone();
        flat[1].error = 0.0;
        let q = fit_curve(&flat, FitKind::Linear).unwrap();
        assert!((q.eval(1.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn underdetermined_and_degenerate() {
        let three = pts(|t| t, &[1.0, 2.0, 3.0], 0.1);
        assert!(matches!(
            fit_curve(&three, FitKind::Cubic),
            Err(Error::InsufficientData(_))
        ));
        let repeated = pts(|t| t, &[1.0, 1.0, 2.0, 2.0], 0.1);
        assert!(matches!(
            fit_curve(&repeated, FitKind::Cubic),
            Err(Error::Degenerate(_))
        ));
    }

    proptest! {
        #[test]
        fn recovers_random_cubics(
            c in proptest::array::uniform4(-3.0f64..3.0),
            start in 1.0f64..3.0,
        ) {
            let f = |t: f64| c[0] + c[1] * (t - 2.0) + c[2] * (t - 2.0).powi(2) + c[3] * (t - 2.0).powi(3);
            let ts: Vec<f64> = (0..12).map(|i| start + 0.01 * i as f64).collect();
            let p = fit_curve(&pts(f, &ts, 0.01), FitKind::Cubic).unwrap();
            for &t in &ts {
                prop_assert!((p.eval(t) - f(t)).abs() < 1e-9);
            }
        }
    }
}
