//! Nahm flow dT_i/ds = [T_{i+1}, T_{i+2}] (indices cyclic) on a triple of
//! 2x2 complex matrices, integrated by classic fixed-step RK4, plus the
//! spectral side: the Lax polynomial A(k) = (T1 + iT2) - 2ik·T3 +
//! k²(T1 - iT2) whose eigenvalues are conserved along the flow.
//!
//! Solutions generically blow up in finite flow time (the canonical-basis
//! trajectory is the scalar pole f(s) = 1/(1-s)); integration stops cleanly
//! with a BlowUp error once any matrix entry passes the threshold.

use crate::mat2::{Mat2, I};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Max entry modulus beyond which the flow is declared to have hit a pole.
pub const BLOWUP_THRESHOLD: f64 = 1e8;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("flow blew up at s = {s:.6} (entry magnitude {magnitude:.3e})")]
    BlowUp { s: f64, magnitude: f64 },
    #[error("invalid integration step: {0}")]
    InvalidStep(f64),
}

/// Ordered triple (T1, T2, T3) evolved by the Nahm flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Triple {
    pub t1: Mat2,
    pub t2: Mat2,
    pub t3: Mat2,
}

impl Su2Triple {
    pub fn new(t1: Mat2, t2: Mat2, t3: Mat2) -> Su2Triple {
        Su2Triple { t1, t2, t3 }
    }

    pub fn zero() -> Su2Triple {
        Su2Triple::new(Mat2::zero(), Mat2::zero(), Mat2::zero())
    }

    /// T_i = -(i/2)·sigma_i — the fixed direction of the flow, whose
    /// scalar profile solves f' = f².
    pub fn canonical_basis() -> Su2Triple {
        Su2Triple::new(Mat2::su2_basis(1), Mat2::su2_basis(2), Mat2::su2_basis(3))
    }

    /// Seeded random traceless anti-Hermitian triple, rescaled so the
    /// largest Frobenius norm is 1 (keeps the pole safely past s = 0.5).
    pub fn random_normalized(seed: u64) -> Su2Triple {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_mat = || {
            let mut m = Mat2::zero();
            for k in 1..=3 {
                let c: f64 = rng.random_range(-1.0..1.0);
                m = m + Mat2::su2_basis(k).scale_re(c);
            }
            m
        };
        let t = Su2Triple::new(rand_mat(), rand_mat(), rand_mat());
        let max_norm = t
            .components()
            .iter()
            .map(|m| m.frobenius_norm())
            .fold(0.0, f64::max);
        t.scale_re(1.0 / max_norm)
    }

    pub fn components(&self) -> [Mat2; 3] {
        [self.t1, self.t2, self.t3]
    }

    pub fn scale_re(&self, s: f64) -> Su2Triple {
        Su2Triple::new(self.t1.scale_re(s), self.t2.scale_re(s), self.t3.scale_re(s))
    }

    pub fn add(&self, other: &Su2Triple) -> Su2Triple {
        Su2Triple::new(self.t1 + other.t1, self.t2 + other.t2, self.t3 + other.t3)
    }

    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(|m| m.max_abs())
            .fold(0.0, f64::max)
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.components().iter().all(|m| m.is_traceless(tol))
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.components().iter().all(|m| m.is_anti_hermitian(tol))
    }
}

/// Right-hand side ½ Σ_jk eps_ijk `[T_j, T_k]`, which collapses to the
/// cyclic commutators `[T2,T3]`, `[T3,T1]`, `[T1,T2]`.
pub fn nahm_rhs(t: &Su2Triple) -> Su2Triple {
    Su2Triple::new(
        Mat2::commutator(&t.t2, &t.t3),
        Mat2::commutator(&t.t3, &t.t1),
        Mat2::commutator(&t.t1, &t.t2),
    )
}

/// The same right-hand side written as Σ_jk eps_ijk T_j·T_k. Algebraically
/// identical to [`nahm_rhs`]; kept separate so tests can assert the two
/// displayed forms never diverge.
pub fn nahm_rhs_products(t: &Su2Triple) -> Su2Triple {
    Su2Triple::new(
        t.t2 * t.t3 - t.t3 * t.t2,
        t.t3 * t.t1 - t.t1 * t.t3,
        t.t1 * t.t2 - t.t2 * t.t1,
    )
}

/// Flow trajectory sampled at every step.
#[derive(Debug, Clone)]
pub struct NahmTrajectory {
    pub s_values: Vec<f64>,
    pub states: Vec<Su2Triple>,
}

impl NahmTrajectory {
    /// `s` plus 24 entry columns (re/im of each of the 12 matrix entries).
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("s");
        for t in 1..=3 {
            for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                out.push_str(&format!(",re(T{t}_{r}{c}),im(T{t}_{r}{c})"));
            }
        }
        out.push('\n');
        for (s, state) in self.s_values.iter().zip(&self.states) {
            out.push_str(&format!("{s:?}"));
            for m in state.components() {
                for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let z = m.e[r][c];
                    out.push_str(&format!(",{:?},{:?}", z.re, z.im));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Classic RK4 with a fixed step from s_from to s_to (the span is rounded
/// to a whole number of steps). Fails with BlowUp before crossing a pole.
pub fn integrate_nahm(
    t0: &Su2Triple,
    s_from: f64,
    s_to: f64,
    step: f64,
) -> Result<NahmTrajectory, DynamicsError> {
    if !(step > 0.0 && step.is_finite()) || s_to <= s_from {
        return Err(DynamicsError::InvalidStep(step));
    }
    let n_steps = ((s_to - s_from) / step).round().max(1.0) as usize;
    let mut s_values = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut state = *t0;
    let mut s = s_from;
    s_values.push(s);
    states.push(state);
    for i in 0..n_steps {
        let k1 = nahm_rhs(&state);
        let k2 = nahm_rhs(&state.add(&k1.scale_re(step / 2.0)));
        let k3 = nahm_rhs(&state.add(&k2.scale_re(step / 2.0)));
        let k4 = nahm_rhs(&state.add(&k3.scale_re(step)));
        let incr = k1
            .add(&k2.scale_re(2.0))
            .add(&k3.scale_re(2.0))
            .add(&k4)
            .scale_re(step / 6.0);
        state = state.add(&incr);
        s = s_from + (i + 1) as f64 * step;
        let magnitude = state.max_abs();
        if !magnitude.is_finite() || magnitude > BLOWUP_THRESHOLD {
            return Err(DynamicsError::BlowUp { s, magnitude });
        }
        s_values.push(s);
        states.push(state);
    }
    Ok(NahmTrajectory { s_values, states })
}

/// Spectral-parameter polynomial whose eigenvalues the flow conserves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxPolynomial {
    pub k: f64,
    pub matrix: Mat2,
}

pub fn lax_matrix(t: &Su2Triple, k: f64) -> LaxPolynomial {
    let plus = t.t1 + t.t2.scale(I);
    let minus = t.t1 - t.t2.scale(I);
    let middle = t.t3.scale(-2.0 * I);
    let matrix = plus + middle.scale_re(k) + minus.scale_re(k * k);
    LaxPolynomial { k, matrix }
}

/// Closed-form eigenvalues, ordered by (re, im).
pub fn spectrum(m: &Mat2) -> (Complex64, Complex64) {
    m.eigenvalues()
}
