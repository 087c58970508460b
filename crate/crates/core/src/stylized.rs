//! Volatility-clustering diagnostics.
//!
//! The pipeline: absolute-return autocorrelation by lag, a log-log
//! power-law fit C/tau^beta over the positive-valued lags, and the
//! Minkowski embedding of the curve — per lag, x is the (optionally
//! normalized) ACF value, x* = tau^beta its power-law counterpart, and the
//! interval ds² = x² - x*² classifies the lag as timelike, lightlike or
//! spacelike. On an exact power law the normalized embedding sits on the
//! unit hyperbola x·x* = 1.

use crate::series::ReturnSeries;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StylizedError {
    #[error("series too short: need more than {need}, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("zero variance: |returns| are constant")]
    ZeroVariance,
    #[error("singular design: regressor is constant")]
    SingularDesign,
    #[error("need at least 3 lags with positive ACF, got {got}")]
    InsufficientPositiveLags { got: usize },
    #[error("invalid power-law fit: C must be > 0, got {c}")]
    InvalidFit { c: f64 },
    #[error("no real root: mu4/kurt - 3 = {s4} is negative")]
    NoRealRoot { s4: f64 },
    #[error("kurtosis is zero")]
    ZeroKurtosis,
    #[error("max_lag must be >= 1")]
    ZeroMaxLag,
}

/// Absolute-return autocorrelation at lags 1..=L.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfCurve {
    pub lags: Vec<usize>,
    pub values: Vec<f64>,
}

/// Fitted C/tau^beta with the log-log R² and the lags that entered.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    pub c: f64,
    pub beta: f64,
    pub r_squared: f64,
    pub used_lags: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

impl CausalClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalClass::Timelike => "Timelike",
            CausalClass::Lightlike => "Lightlike",
            CausalClass::Spacelike => "Spacelike",
        }
    }
}

/// One lag of the embedded curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedLag {
    pub lag: usize,
    pub acf: f64,
    pub x: f64,
    pub x_star: f64,
    pub ds_sq: f64,
    pub causal_class: CausalClass,
}

/// Minkowski embedding of an ACF curve against its fitted power law.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiEmbedding {
    pub points: Vec<EmbeddedLag>,
    pub normalized: bool,
}

pub const CAUSAL_TOL: f64 = 1e-9;

impl MinkowskiEmbedding {
    /// `tau,acf,x,x_star,ds_sq,class` rows with a header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("tau,acf,x,x_star,ds_sq,class\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{:?},{:?},{:?},{:?},{}\n",
                p.lag,
                p.acf,
                p.x,
                p.x_star,
                p.ds_sq,
                p.causal_class.as_str()
            ));
        }
        out
    }
}

impl AcfCurve {
    /// `tau,acf` rows with a header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("tau,acf\n");
        for (lag, v) in self.lags.iter().zip(&self.values) {
            out.push_str(&format!("{lag},{v:?}\n"));
        }
        out
    }
}

/// Pearson correlation of the overlapping pairs (|r_t|, |r_{t+tau}|) for
/// tau = 1..=max_lag, with per-lag means and variances.
pub fn abs_acf(returns: &ReturnSeries, max_lag: usize) -> Result<AcfCurve, StylizedError> {
    if max_lag == 0 {
        return Err(StylizedError::ZeroMaxLag);
    }
    let n = returns.len();
    if n <= max_lag + 4 {
        return Err(StylizedError::TooShort {
            need: max_lag + 4,
            got: n,
        });
    }
    let abs: Vec<f64> = returns.values.iter().map(|r| r.abs()).collect();
    let (min, max) = abs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if min == max {
        return Err(StylizedError::ZeroVariance);
    }
    let mut lags = Vec::with_capacity(max_lag);
    let mut values = Vec::with_capacity(max_lag);
    for tau in 1..=max_lag {
        let m = n - tau;
        let x = &abs[..m];
        let y = &abs[tau..];
        let mx = x.iter().sum::<f64>() / m as f64;
        let my = y.iter().sum::<f64>() / m as f64;
        let mut sxy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        for i in 0..m {
            let dx = x[i] - mx;
            let dy = y[i] - my;
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
        if sxx == 0.0 || syy == 0.0 {
            return Err(StylizedError::ZeroVariance);
        }
        let corr = sxy / (sxx.sqrt() * syy.sqrt());
        debug_assert!(corr.abs() <= 1.0 + 1e-12);
        lags.push(tau);
        values.push(corr);
    }
    Ok(AcfCurve { lags, values })
}

/// Exact normal-equation least squares for y = intercept + slope·x.
#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub intercept: f64,
    pub slope: f64,
    pub residuals: Vec<f64>,
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<OlsFit, StylizedError> {
    assert_eq!(x.len(), y.len(), "ols: x and y must have equal length");
    if x.len() < 2 {
        return Err(StylizedError::TooShort { need: 2, got: x.len() });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..x.len() {
        let dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if sxx == 0.0 {
        return Err(StylizedError::SingularDesign);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| yi - intercept - slope * xi)
        .collect();
    Ok(OlsFit {
        intercept,
        slope,
        residuals,
    })
}

/// Log-log fit ln C(tau) = ln C - beta·ln tau over the positive-valued
/// lags; beta is reported with the decay sign convention (beta = -slope).
pub fn fit_power_law(curve: &AcfCurve) -> Result<PowerLawFit, StylizedError> {
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    let mut used_lags = Vec::new();
    for (&lag, &v) in curve.lags.iter().zip(&curve.values) {
        if v > 0.0 {
            lx.push((lag as f64).ln());
            ly.push(v.ln());
            used_lags.push(lag);
        }
    }
    if used_lags.len() < 3 {
        return Err(StylizedError::InsufficientPositiveLags { got: used_lags.len() });
    }
    let fit = ols(&lx, &ly)?;
    let ss_res: f64 = fit.residuals.iter().map(|r| r * r).sum();
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let ss_tot: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    // a flat exact curve has zero total variance and zero residuals: R² = 1
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(PowerLawFit {
        c: fit.intercept.exp(),
        beta: -fit.slope,
        r_squared,
        used_lags,
    })
}

/// Rotate by pi/4: maps the hyperbola x·x* = C onto u² - v² = 2C while
/// preserving the Euclidean norm.
pub fn rotate_hyperbola(x: f64, x_star: f64) -> (f64, f64) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ((x + x_star) * s, (x_star - x) * s)
}

/// Embed the curve against its fitted law. Normalized, x = value/C and
/// x* = tau^beta so an exact power law lands on x·x* = 1; unnormalized,
/// x keeps the raw ACF value and the 1/C scale moves into x*.
pub fn minkowski_embedding(
    curve: &AcfCurve,
    fit: &PowerLawFit,
    normalize: bool,
) -> Result<MinkowskiEmbedding, StylizedError> {
    if fit.c.is_nan() || fit.c <= 0.0 {
        return Err(StylizedError::InvalidFit { c: fit.c });
    }
    let points = curve
        .lags
        .iter()
        .zip(&curve.values)
        .map(|(&lag, &v)| {
            let tau_pow = (lag as f64).powf(fit.beta);
            let (x, x_star) = if normalize {
                (v / fit.c, tau_pow)
            } else {
                (v, tau_pow / fit.c)
            };
            let ds_sq = x * x - x_star * x_star;
            let causal_class = if ds_sq > CAUSAL_TOL {
                CausalClass::Timelike
            } else if ds_sq < -CAUSAL_TOL {
                CausalClass::Spacelike
            } else {
                CausalClass::Lightlike
            };
            EmbeddedLag {
                lag,
                acf: v,
                x,
                x_star,
                ds_sq,
                causal_class,
            }
        })
        .collect();
    Ok(MinkowskiEmbedding {
        points,
        normalized: normalize,
    })
}

/// Per-lag memory constant C(tau)·tau^beta and its population-standard-
/// deviation dispersion over the positive-valued lags; exactly constant
/// (zero dispersion) on a noiseless power law with matching beta.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryConstant {
    pub per_lag_c: Vec<f64>,
    pub dispersion: f64,
}

pub fn memory_constant(curve: &AcfCurve, beta: f64) -> MemoryConstant {
    let per_lag_c: Vec<f64> = curve
        .lags
        .iter()
        .zip(&curve.values)
        .map(|(&lag, &v)| v * (lag as f64).powf(beta))
        .collect();
    let positive: Vec<f64> = curve
        .values
        .iter()
        .zip(&per_lag_c)
        .filter(|(&v, _)| v > 0.0)
        .map(|(_, &c)| c)
        .collect();
    let dispersion = if positive.is_empty() {
        0.0
    } else {
        let n = positive.len() as f64;
        let mean = positive.iter().sum::<f64>() / n;
        (positive.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / n).sqrt()
    };
    MemoryConstant {
        per_lag_c,
        dispersion,
    }
}

/// Signed roots of the rearranged kurtosis relation s⁴ = mu4/kurt - 3
/// (implemented exactly as stated; it is *not* the standard
/// kurt = mu4/sigma⁴ - 3, which lives in `series::moments`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkRoot {
    pub plus: f64,
    pub minus: f64,
}

pub fn dark_root(mu4: f64, kurt: f64) -> Result<DarkRoot, StylizedError> {
    if kurt == 0.0 {
        return Err(StylizedError::ZeroKurtosis);
    }
    let s4 = mu4 / kurt - 3.0;
    if s4 < 0.0 {
        return Err(StylizedError::NoRealRoot { s4 });
    }
    let root = s4.sqrt();
    Ok(DarkRoot {
        plus: root,
        minus: -root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{ReturnKind, ReturnSeries};

    fn series(v: &[f64]) -> ReturnSeries {
        ReturnSeries::from_values(v.to_vec(), ReturnKind::Log)
    }

    fn exact_power_curve(c: f64, beta: f64, max_lag: usize) -> AcfCurve {
        let lags: Vec<usize> = (1..=max_lag).collect();
        let values = lags
            .iter()
            .map(|&t| c * (t as f64).powf(-beta))
            .collect();
        AcfCurve { lags, values }
    }

    #[test]
    fn alternating_magnitudes_have_lag1_acf_minus_one() {
        let r: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { -2.0 }).collect();
        let acf = abs_acf(&series(&r), 1).unwrap();
        assert!((acf.values[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_magnitude_rejected() {
        let r: Vec<f64> = (0..40).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert_eq!(abs_acf(&series(&r), 3).unwrap_err(), StylizedError::ZeroVariance);
    }

    #[test]
    fn too_short_for_lags() {
        let r: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(matches!(
            abs_acf(&series(&r), 6).unwrap_err(),
            StylizedError::TooShort { .. }
        ));
    }

    #[test]
    fn acf_is_scale_invariant() {
        let r: Vec<f64> = (0..60).map(|i| ((i * 31 % 17) as f64 - 8.0) / 5.0).collect();
        let a = abs_acf(&series(&r), 5).unwrap();
        let scaled: Vec<f64> = r.iter().map(|x| -3.5 * x).collect();
        let b = abs_acf(&series(&scaled), 5).unwrap();
        for (u, v) in a.values.iter().zip(&b.values) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn ols_two_point_line() {
        let fit = ols(&[0.0, 1.0], &[1.0, 3.0]).unwrap();
        assert_eq!((fit.intercept, fit.slope), (1.0, 2.0));
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-15));
    }

    #[test]
    fn ols_constant_x_is_singular() {
        assert_eq!(
            ols(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]).unwrap_err(),
            StylizedError::SingularDesign
        );
    }

    #[test]
    fn ols_exact_affine_data() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|x| 5.0 - 2.0 * x).collect();
        let fit = ols(&x, &y).unwrap();
        assert!((fit.intercept - 5.0).abs() < 1e-12);
        assert!((fit.slope + 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_law_exact_recovery() {
        let fit = fit_power_law(&exact_power_curve(0.4, 0.3, 50)).unwrap();
        assert!((fit.c - 0.4).abs() < 1e-10, "C = {}", fit.c);
        assert!((fit.beta - 0.3).abs() < 1e-10, "beta = {}", fit.beta);
        assert!((fit.r_squared - 1.0).abs() < 1e-10);
        assert_eq!(fit.used_lags.len(), 50);
    }

    #[test]
    fn power_law_needs_three_positive_lags() {
        let curve = AcfCurve {
            lags: vec![1, 2, 3, 4],
            values: vec![0.5, -0.1, 0.2, -0.3],
        };
        assert_eq!(
            fit_power_law(&curve).unwrap_err(),
            StylizedError::InsufficientPositiveLags { got: 2 }
        );
    }

    #[test]
    fn rotation_examples() {
        let (u, v) = rotate_hyperbola(1.0, 1.0);
        assert!((u - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(v.abs() < 1e-15);
        assert!((u * u - v * v - 2.0).abs() < 1e-12);

        let (u, v) = rotate_hyperbola(3.0, 4.0);
        assert!((u * u + v * v - 25.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_of_exact_law_is_unit_hyperbola() {
        let curve = exact_power_curve(0.4, 0.3, 50);
        let fit = fit_power_law(&curve).unwrap();
        let emb = minkowski_embedding(&curve, &fit, true).unwrap();
        for p in &emb.points {
            assert!((p.x * p.x_star - 1.0).abs() < 1e-12, "lag {}", p.lag);
            assert!((p.ds_sq - (p.x * p.x - 1.0 / (p.x * p.x))).abs() < 1e-12);
        }
        // lag 1 has x = x* = 1: lightlike
        assert_eq!(emb.points[0].causal_class, CausalClass::Lightlike);
        assert!(emb.points[0].ds_sq.abs() < 1e-12);
    }

    #[test]
    fn embedding_arithmetic_cases() {
        // synthetic fit with C = 1, beta = 1 so x* = tau
        let fit = PowerLawFit {
            c: 1.0,
            beta: 1.0,
            r_squared: 1.0,
            used_lags: vec![1, 2],
        };
        let curve = AcfCurve {
            lags: vec![1, 2],
            values: vec![2.0, 1.0],
        };
        let emb = minkowski_embedding(&curve, &fit, true).unwrap();
        // x = 2, x* = 1 -> ds² = 3, timelike
        assert_eq!(emb.points[0].ds_sq, 3.0);
        assert_eq!(emb.points[0].causal_class, CausalClass::Timelike);
        // x = 1, x* = 2 -> ds² = -3, spacelike
        assert_eq!(emb.points[1].ds_sq, -3.0);
        assert_eq!(emb.points[1].causal_class, CausalClass::Spacelike);
    }

    #[test]
    fn embedding_rejects_nonpositive_c() {
        let fit = PowerLawFit {
            c: 0.0,
            beta: 0.3,
            r_squared: 1.0,
            used_lags: vec![1],
        };
        let curve = exact_power_curve(0.4, 0.3, 5);
        assert!(matches!(
            minkowski_embedding(&curve, &fit, true).unwrap_err(),
            StylizedError::InvalidFit { .. }
        ));
    }

    #[test]
    fn memory_constant_cancels_exact_law() {
        let curve = exact_power_curve(0.4, 0.3, 30);
        let m = memory_constant(&curve, 0.3);
        assert!(m.per_lag_c.iter().all(|c| (c - 0.4).abs() < 1e-12));
        assert!(m.dispersion < 1e-12);
    }

    #[test]
    fn memory_constant_identity_exponent() {
        let curve = exact_power_curve(0.4, 0.3, 10);
        let m = memory_constant(&curve, 0.0);
        assert_eq!(m.per_lag_c, curve.values);
    }

    #[test]
    fn dark_root_examples() {
        let r = dark_root(12.0, 3.0).unwrap();
        assert_eq!((r.plus, r.minus), (1.0, -1.0));
        let r = dark_root(4.0, 1.0).unwrap();
        assert_eq!((r.plus, r.minus), (1.0, -1.0));
        assert!(matches!(
            dark_root(1.0, 1.0).unwrap_err(),
            StylizedError::NoRealRoot { .. }
        ));
        assert_eq!(dark_root(1.0, 0.0).unwrap_err(), StylizedError::ZeroKurtosis);
    }

    #[test]
    fn dark_root_is_symmetric() {
        let r = dark_root(10.0, 2.0).unwrap();
        assert_eq!(r.plus, -r.minus);
    }
}
