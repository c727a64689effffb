use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest matrix dimension accepted by [`HermitianMatrix`].
pub const MAX_DIM: usize = 16;

const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row slices. Panics if the rows are ragged or not square.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), dim, "matrix rows must have length {dim}");
            data.extend_from_slice(r);
        }
        Self { dim, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| C64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (&(&self.adjoint() * self) - &Self::identity(self.dim)).max_abs()
    }

    /// Largest |a_ij - conj(a_ji)| together with its position.
    fn hermiticity_defect(&self) -> Option<(usize, usize, f64)> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let a = self[(i, j)];
                let b = self[(j, i)].conj();
                let dev = (a - b).norm();
                let scale = a.norm().max(b.norm());
                if dev > HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE) && dev > 0.0 {
                    return Some((i, j, dev));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A [`CMatrix`] checked to be Hermitian, in MHz.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let n = m.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "Hermitian matrix dimension must be in 1..={MAX_DIM}, got {n}"
            )));
        }
        if let Some((row, col, deviation)) = m.hermiticity_defect() {
            return Err(Error::NonHermitian { row, col, deviation });
        }
        Ok(Self(m))
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    /// ⟨ψ|H|ψ⟩ (real part; the imaginary part vanishes for Hermitian H).
    pub fn expectation(&self, psi: &[C64]) -> f64 {
        let h_psi = self.0.mul_vec(psi);
        psi.iter().zip(&h_psi).map(|(a, b)| a.conj() * b).sum::<C64>().re
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities() {
        let k = CMatrix::identity(2).kron(&CMatrix::identity(3));
        assert_eq!(k, CMatrix::identity(6));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[
            [C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            [C64::new(0.0, 1.0), C64::new(2.0, 0.0)],
        ]);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NonHermitian { row: 0, col: 1, .. })
        ));
        let imag_diag = CMatrix::from_rows(&[[C64::new(1.0, 1e-3)]]);
        assert!(HermitianMatrix::new(imag_diag).is_err());
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(HermitianMatrix::new(CMatrix::zeros(0)).is_err());
        assert!(HermitianMatrix::new(CMatrix::identity(17)).is_err());
        assert!(HermitianMatrix::new(CMatrix::identity(16)).is_ok());
    }

    #[test]
    fn tolerates_rounding_asymmetry() {
        let m = CMatrix::from_real_rows(&[[1.0, 0.3], [0.3 + 1e-17, 2.0]]);
        assert!(HermitianMatrix::new(m).is_ok());
    }
}
