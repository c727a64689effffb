//! Small dense linear algebra and 1-D root finding used by the physics modules.

mod eigen;
mod evolve;
mod matrix;
mod roots;

pub use eigen::{hermitian_eig, EigenSystem, MAX_SWEEPS};
pub use evolve::{evolve, propagator, Ket};
pub use matrix::{CMatrix, HermitianMatrix, MAX_DIM};
pub use roots::{bracket_roots, BISECTION_TOL};

pub use num_complex::Complex64 as C64;
