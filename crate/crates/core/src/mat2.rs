//! Dense 2x2 complex matrices with the little algebra the dynamics layer
//! needs: commutators, Pauli constructors, and a closed-form eigensolve
//! (roots of lambda² - tr·lambda + det; no iteration, no tolerance knobs).

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Mat2 {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn from_re(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
        Mat2::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn zero() -> Mat2 {
        Mat2::from_re(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Mat2 {
        Mat2::from_re(1.0, 0.0, 0.0, 1.0)
    }

    pub fn pauli_x() -> Mat2 {
        Mat2::from_re(0.0, 1.0, 1.0, 0.0)
    }

    pub fn pauli_y() -> Mat2 {
        Mat2::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn pauli_z() -> Mat2 {
        Mat2::from_re(1.0, 0.0, 0.0, -1.0)
    }

    pub fn pauli(i: usize) -> Mat2 {
        match i {
            1 => Mat2::pauli_x(),
            2 => Mat2::pauli_y(),
            3 => Mat2::pauli_z(),
            _ => panic!("pauli index must be 1..=3, got {i}"),
        }
    }

    /// su(2) basis element -(i/2)·sigma_k; satisfies [E_j, E_k] = eps_jkl E_l.
    pub fn su2_basis(k: usize) -> Mat2 {
        Mat2::pauli(k).scale(Complex64::new(0.0, -0.5))
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2::new(
            self.e[0][0] * s,
            self.e[0][1] * s,
            self.e[1][0] * s,
            self.e[1][1] * s,
        )
    }

    pub fn scale_re(&self, s: f64) -> Mat2 {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
        *a * *b - *b * *a
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol
    }

    /// A + A† = 0 within tol.
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        (*self + self.adjoint()).max_abs() <= tol
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }

    /// The two eigenvalues, ordered by (real part, imaginary part) so the
    /// result is deterministic.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let l1 = half_tr - disc;
        let l2 = half_tr + disc;
        if (l1.re, l1.im) <= (l2.re, l2.im) {
            (l1, l2)
        } else {
            (l2, l1)
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
