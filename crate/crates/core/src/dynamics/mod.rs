//! Numerical verification of the integrable-dynamics layer: the Nahm flow
//! on su(2) triples, Lax-polynomial isospectrality, sine-Gordon kinks in
//! supply/demand coordinates, and the Pauli trader algebra.

mod nahm;
mod soliton;
mod trader;

pub use nahm::{
    integrate_nahm, lax_matrix, nahm_rhs, nahm_rhs_products, spectrum, DynamicsError,
    LaxPolynomial, NahmTrajectory, Su2Triple, BLOWUP_THRESHOLD,
};
pub use soliton::{
    lightcone_inverse, lightcone_transform, sine_gordon_residual, soliton_value, Grid2D,
    ResidualField, SolitonError, SolitonParams,
};
pub use trader::{trader_matrices, wilson_swap, TraderAlgebra, TraderLabel, TraderMatrix};
