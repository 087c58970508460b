//! Sine-Gordon kink in supply/demand coordinates.
//!
//! The analytic solution Psi(D,S) = 4·arctan(exp(theta)) with
//! theta = k·alpha·(D - p·S) + delta and alpha = 1/sqrt(1 - p²) satisfies
//! Psi_DD - Psi_SS = k²·sin(Psi) identically (k = 1 recovers the plain
//! wave-coordinate equation). The residual evaluator discretizes the left
//! side with centered second differences, so on an exact kink it measures
//! pure truncation error, which must scale as O(h²).

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SolitonError {
    #[error("invalid soliton parameters: {0}")]
    InvalidParams(String),
    #[error("grid too small: need at least 3 points per axis, got {nd}x{ns}")]
    GridTooSmall { nd: usize, ns: usize },
}

/// Kink parameters: coupling k > 0, velocity-like |p| < 1, phase delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    k: f64,
    p: f64,
    delta: f64,
}

impl SolitonParams {
    pub fn new(k: f64, p: f64, delta: f64) -> Result<Self, SolitonError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(SolitonError::InvalidParams(format!("k must be > 0, got {k}")));
        }
        if !(p.is_finite() && p.abs() < 1.0) {
            return Err(SolitonError::InvalidParams(format!("|p| must be < 1, got {p}")));
        }
        if !delta.is_finite() {
            return Err(SolitonError::InvalidParams(format!("delta must be finite, got {delta}")));
        }
        Ok(SolitonParams { k, p, delta })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Lorentz-like factor 1/sqrt(1 - p²).
    pub fn alpha(&self) -> f64 {
        1.0 / (1.0 - self.p * self.p).sqrt()
    }

    pub fn theta(&self, d: f64, s: f64) -> f64 {
        self.k * self.alpha() * (d - self.p * s) + self.delta
    }
}

/// Psi = 4·arctan(exp(theta)), strictly increasing in theta with range
/// (0, 2π).
pub fn soliton_value(d: f64, s: f64, params: &SolitonParams) -> f64 {
    4.0 * params.theta(d, s).exp().atan()
}

/// Uniform grid over [d_min, d_max] x [s_min, s_max]; values stored
/// row-major with the D index slow.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub d_min: f64,
    pub d_max: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub h: f64,
    pub n_d: usize,
    pub n_s: usize,
    pub values: Vec<f64>,
}

impl Grid2D {
    /// Sample f over the grid; the spans are rounded to whole steps.
    pub fn sample<F: Fn(f64, f64) -> f64>(
        d_range: (f64, f64),
        s_range: (f64, f64),
        h: f64,
        f: F,
    ) -> Grid2D {
        assert!(h > 0.0 && d_range.1 > d_range.0 && s_range.1 > s_range.0);
        let n_d = ((d_range.1 - d_range.0) / h).round() as usize + 1;
        let n_s = ((s_range.1 - s_range.0) / h).round() as usize + 1;
        let mut values = Vec::with_capacity(n_d * n_s);
        for i in 0..n_d {
            let d = d_range.0 + i as f64 * h;
            for j in 0..n_s {
                let s = s_range.0 + j as f64 * h;
                values.push(f(d, s));
            }
        }
        Grid2D {
            d_min: d_range.0,
            d_max: d_range.1,
            s_min: s_range.0,
            s_max: s_range.1,
            h,
            n_d,
            n_s,
            values,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_s + j]
    }

    pub fn d_at(&self, i: usize) -> f64 {
        self.d_min + i as f64 * self.h
    }

    pub fn s_at(&self, j: usize) -> f64 {
        self.s_min + j as f64 * self.h
    }
}

/// Residual grid (zero on the boundary ring) and its max interior
/// magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualField {
    pub residual: Grid2D,
    pub max_abs: f64,
}

/// residual = Psi_DD - Psi_SS - k²·sin(Psi) at interior points, centered
/// second differences. Evaluation order is row-major and the result per
/// point depends only on its stencil, so parallel evaluation would be
/// bitwise identical.
pub fn sine_gordon_residual(field: &Grid2D, k: f64) -> Result<ResidualField, SolitonError> {
    if field.n_d < 3 || field.n_s < 3 {
        return Err(SolitonError::GridTooSmall {
            nd: field.n_d,
            ns: field.n_s,
        });
    }
    let h2 = field.h * field.h;
    let k2 = k * k;
    let mut residual = vec![0.0; field.values.len()];
    let mut max_abs: f64 = 0.0;
    for i in 1..field.n_d - 1 {
        for j in 1..field.n_s - 1 {
            let center = field.at(i, j);
            let psi_dd = (field.at(i + 1, j) - 2.0 * center + field.at(i - 1, j)) / h2;
            let psi_ss = (field.at(i, j + 1) - 2.0 * center + field.at(i, j - 1)) / h2;
            let r = psi_dd - psi_ss - k2 * center.sin();
            residual[i * field.n_s + j] = r;
            max_abs = max_abs.max(r.abs());
        }
    }
    Ok(ResidualField {
        residual: Grid2D {
            values: residual,
            ..field.clone()
        },
        max_abs,
    })
}

/// Light-cone coordinates (pD, pS) = ((D+S)/2, (D-S)/2).
pub fn lightcone_transform(d: f64, s: f64) -> (f64, f64) {
    ((d + s) / 2.0, (d - s) / 2.0)
}

/// Inverse map: D = pD + pS, S = pD - pS.
pub fn lightcone_inverse(pd: f64, ps: f64) -> (f64, f64) {
    (pd + ps, pd - ps)
}

impl ResidualField {
    /// `D,S,psi,residual` rows with a header (`psi` from the sampled
    /// field).
    pub fn to_csv_string(&self, field: &Grid2D) -> String {
        let mut out = String::from("D,S,psi,residual\n");
        for i in 0..field.n_d {
            for j in 0..field.n_s {
                out.push_str(&format!(
                    "{:?},{:?},{:?},{:?}\n",
                    field.d_at(i),
                    field.s_at(j),
                    field.at(i, j),
                    self.residual.at(i, j)
                ));
            }
        }
        out
    }
}
