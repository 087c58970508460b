//! Trader strategy matrices.
//!
//! A2 (noise trader) is sigma_y; A1 (fundamentalist) is the real
//! antidiagonal matrix [[0,-1],[1,0]]. The bias trader A3 exists in two
//! inequivalent presentations: at the Pauli level (1/2i)[sigma_z, sigma_y]
//! ·(-1) = sigma_x, while the literal displayed matrices commute — A1 is
//! -i·sigma_y, so (1/2i)[A1, A2] = 0. Both are returned; picking one
//! silently would hide the discrepancy.

use crate::mat2::{Mat2, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraderLabel {
    A1,
    A2,
    A3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraderMatrix {
    pub label: TraderLabel,
    pub matrix: Mat2,
}

/// The full algebra: A1, A2, and both readings of the bias trader.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraderAlgebra {
    pub a1: TraderMatrix,
    pub a2: TraderMatrix,
    pub a3_pauli: TraderMatrix,
    pub a3_literal: TraderMatrix,
}

pub fn trader_matrices() -> TraderAlgebra {
    let a1 = Mat2::from_re(0.0, -1.0, 1.0, 0.0);
    let a2 = Mat2::pauli_y();
    // (1/2i)[sigma_z, sigma_y]·(-1) = (1/2i)(2i·sigma_x) = sigma_x
    let a3_pauli = Mat2::commutator(&Mat2::pauli_z(), &Mat2::pauli_y())
        .scale((2.0 * I).inv())
        .scale_re(-1.0);
    let a3_literal = Mat2::commutator(&a1, &a2).scale((2.0 * I).inv());
    TraderAlgebra {
        a1: TraderMatrix { label: TraderLabel::A1, matrix: a1 },
        a2: TraderMatrix { label: TraderLabel::A2, matrix: a2 },
        a3_pauli: TraderMatrix { label: TraderLabel::A3, matrix: a3_pauli },
        a3_literal: TraderMatrix { label: TraderLabel::A3, matrix: a3_literal },
    }
}

/// Component swap (a, b) -> (b, a): the entanglement action on a
/// predictor/predictant pair.
pub fn wilson_swap<T>(pair: (T, T)) -> (T, T) {
    (pair.1, pair.0)
}
