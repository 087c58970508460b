//! Metric-coefficient GARCH flow with signed variance.
//!
//! The recursion g_t = alpha0 + alpha1·‖eps_t‖² + beta·g_{t-1} has the
//! same shape as the GARCH variance filter but drops the positivity
//! constraint on the state: a negative metric coefficient g flips the sign
//! of the variance ("dark volatility", sigma² = g·‖x‖² < 0). Each step is
//! labelled by the coordinate regime the coefficient selects — spherical at
//! g = 1, Minkowski-like at g = -1, hyperbolic in between (the bands are
//! closed outward so classification is total).

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("invalid metric parameters: {0}")]
    InvalidParams(String),
    #[error("shock {index} is negative ({value}); squared shocks must be >= 0")]
    NegativeShock { index: usize, value: f64 },
    #[error("alpha1 is zero; shock extraction is undefined")]
    ZeroAlpha1,
    #[error("path too short: need at least {need} points, got {got}")]
    TooShort { need: usize, got: usize },
    #[error("singular design: all metric increments are equal")]
    SingularDesign,
    #[error("length mismatch: path has {path} points, expected {expected} for {shocks} shocks")]
    LengthMismatch {
        path: usize,
        expected: usize,
        shocks: usize,
    },
}

/// Flow coefficients; same stationarity constraint as GARCH(1,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    alpha0: f64,
    alpha1: f64,
    beta: f64,
}

impl MetricParams {
    pub fn new(alpha0: f64, alpha1: f64, beta: f64) -> Result<Self, MetricError> {
        if !(alpha0.is_finite() && alpha0 > 0.0) {
            return Err(MetricError::InvalidParams(format!(
                "alpha0 must be > 0, got {alpha0}"
            )));
        }
        if !(alpha1.is_finite() && alpha1 >= 0.0) {
            return Err(MetricError::InvalidParams(format!(
                "alpha1 must be >= 0, got {alpha1}"
            )));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(MetricError::InvalidParams(format!(
                "beta must be >= 0, got {beta}"
            )));
        }
        if alpha1 + beta >= 1.0 {
            return Err(MetricError::InvalidParams(format!(
                "alpha1 + beta must be < 1, got {}",
                alpha1 + beta
            )));
        }
        Ok(MetricParams { alpha0, alpha1, beta })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Coordinate regime selected by a metric coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    Spherical,
    Hyperbolic,
    MinkowskiLike,
}

impl RegimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeKind::Spherical => "Spherical",
            RegimeKind::Hyperbolic => "Hyperbolic",
            RegimeKind::MinkowskiLike => "MinkowskiLike",
        }
    }
}

/// Regime label with the raw coefficient that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub kind: RegimeKind,
    pub g: f64,
}

/// Time-indexed metric coefficients with per-step regime labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPath {
    pub g_values: Vec<f64>,
    pub regimes: Vec<Regime>,
}

/// Variance with sign carried by the metric; negative = dark volatility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedVariance {
    pub value: f64,
}

/// Persistence class of a volatility increment and the price-change sign
/// it predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Persistence {
    Persistent,
    Inert,
    Neutral,
}

impl Persistence {
    pub fn expected_price_sign(&self) -> i8 {
        match self {
            Persistence::Persistent => 1,
            Persistence::Inert => -1,
            Persistence::Neutral => 0,
        }
    }
}

pub const REGIME_TOL: f64 = 1e-9;

/// Band classification: values beyond ±1 close onto the nearest named case.
pub fn classify_regime(g: f64, tol: f64) -> Regime {
    let kind = if g >= 1.0 - tol {
        RegimeKind::Spherical
    } else if g <= -1.0 + tol {
        RegimeKind::MinkowskiLike
    } else {
        RegimeKind::Hyperbolic
    };
    Regime { kind, g }
}

impl MetricPath {
    /// Wrap raw coefficients, classifying each with the default band
    /// tolerance.
    pub fn from_g_values(g_values: Vec<f64>) -> MetricPath {
        let regimes = g_values
            .iter()
            .map(|&g| classify_regime(g, REGIME_TOL))
            .collect();
        MetricPath { g_values, regimes }
    }

    pub fn len(&self) -> usize {
        self.g_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g_values.is_empty()
    }

    /// `t,g,regime` rows with a header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("t,g,regime\n");
        for (t, (g, r)) in self.g_values.iter().zip(&self.regimes).enumerate() {
            out.push_str(&format!("{t},{g:?},{}\n", r.kind.as_str()));
        }
        out
    }
}

/// Run the metric recursion from g0 over squared shocks. The path carries
/// `shock_sq.len() + 1` values and mirrors the GARCH filter exactly when
/// g0 > 0 (same arithmetic per step).
pub fn metric_flow(
    shock_sq: &[f64],
    params: &MetricParams,
    g0: f64,
) -> Result<MetricPath, MetricError> {
    if !g0.is_finite() {
        return Err(MetricError::InvalidParams(format!("g0 must be finite, got {g0}")));
    }
    for (i, &s) in shock_sq.iter().enumerate() {
        if s.is_nan() || s < 0.0 {
            return Err(MetricError::NegativeShock { index: i, value: s });
        }
    }
    let mut g_values = Vec::with_capacity(shock_sq.len() + 1);
    let mut g = g0;
    g_values.push(g);
    for &s in shock_sq {
        g = params.alpha0 + params.alpha1 * s + params.beta * g;
        g_values.push(g);
    }
    Ok(MetricPath::from_g_values(g_values))
}

/// sigma² = g·‖x‖²; the sign travels with the metric.
pub fn signed_variance(g: f64, x_norm_sq: f64) -> SignedVariance {
    SignedVariance { value: g * x_norm_sq }
}

/// Invert one flow step: ‖eps‖² = (g_t - alpha0 - beta·g_{t-1}) / alpha1.
pub fn extract_shock(g_t: f64, g_prev: f64, params: &MetricParams) -> Result<f64, MetricError> {
    if params.alpha1 == 0.0 {
        return Err(MetricError::ZeroAlpha1);
    }
    Ok((g_t - params.alpha0 - params.beta * g_prev) / params.alpha1)
}

/// Affine fit of squared shocks against metric increments.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowResidual {
    pub a: f64,
    pub b: f64,
    pub residuals: Vec<f64>,
}

/// Least-squares fit of ‖eps_t‖² = a + b·`(g[t+1] - g[t])` with the
/// metric derivative discretized as a unit-step forward difference.
pub fn flow_residual(path: &MetricPath, shock_sq: &[f64]) -> Result<FlowResidual, MetricError> {
    if path.len() != shock_sq.len() + 1 {
        return Err(MetricError::LengthMismatch {
            path: path.len(),
            expected: shock_sq.len() + 1,
            shocks: shock_sq.len(),
        });
    }
    if path.len() < 3 {
        return Err(MetricError::TooShort {
            need: 3,
            got: path.len(),
        });
    }
    let dg: Vec<f64> = path.g_values.windows(2).map(|w| w[1] - w[0]).collect();
    let fit = crate::stylized::ols(&dg, shock_sq).map_err(|_| MetricError::SingularDesign)?;
    Ok(FlowResidual {
        a: fit.intercept,
        b: fit.slope,
        residuals: fit.residuals,
    })
}

/// sqrt(g)·eps in the complex plane; imaginary when g < 0 (the shock
/// propagates on a hidden time scale).
pub fn scale_shock(eps: f64, g: f64) -> Complex64 {
    Complex64::new(g, 0.0).sqrt() * eps
}

/// Membership test for the light cone (x-D)² - (y-S)² = k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeCheck {
    pub residual: f64,
    pub on_cone: bool,
}

pub const CONE_TOL: f64 = 1e-12;

pub fn in_cone(point: (f64, f64), center: (f64, f64), k: f64) -> ConeCheck {
    let (x, y) = point;
    let (d, s) = center;
    let residual = (x - d).powi(2) - (y - s).powi(2) - k;
    ConeCheck {
        residual,
        on_cone: residual.abs() <= CONE_TOL,
    }
}

/// Sign relation between a variance increment and the expected price move:
/// rising variance is persistent (+1), falling is inert (-1). Non-finite
/// input degrades to Neutral.
pub fn classify_persistence(delta_sigma_sq: f64) -> Persistence {
    match delta_sigma_sq.partial_cmp(&0.0) {
        Some(std::cmp::Ordering::Greater) => Persistence::Persistent,
        Some(std::cmp::Ordering::Less) => Persistence::Inert,
        _ => Persistence::Neutral,
    }
}
