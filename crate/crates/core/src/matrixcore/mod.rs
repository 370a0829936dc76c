//! Dense complex matrices, the Hermitian state type, LUE sampling and a
//! Jacobi eigensolver.

mod jacobi;
mod sampling;

pub use jacobi::{
    eigen_decomposition, eigenvalues_hermitian, EigenDecomposition, DEFAULT_TOL, MAX_SWEEPS,
};
pub use sampling::{sample_ginibre, sample_lue};

use crate::error::{LupError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative Hermiticity defect tolerated at construction.
pub const HERMITIAN_TOL: f64 = 1e-13;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LupError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(LupError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `A·A*`, exactly Hermitian by construction.
    pub fn gram(&self) -> HermitianMatrix {
        let n = self.rows;
        let mut h = CMatrix::zeros(n, n);
        for i in 0..n {
            let ri = &self.data[i * self.cols..(i + 1) * self.cols];
            for j in i..n {
                let rj = &self.data[j * self.cols..(j + 1) * self.cols];
                let s: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                if i == j {
                    h[(i, i)] = Complex64::new(s.re, 0.0);
                } else {
                    h[(i, j)] = s;
                    h[(j, i)] = s.conj();
                }
            }
        }
        HermitianMatrix { m: h }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense complex Hermitian matrix; immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CMatrix", into = "CMatrix")]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl TryFrom<CMatrix> for HermitianMatrix {
    type Error = LupError;
    fn try_from(m: CMatrix) -> Result<Self> {
        HermitianMatrix::new(m)
    }
}

impl From<HermitianMatrix> for CMatrix {
    fn from(h: HermitianMatrix) -> CMatrix {
        h.m
    }
}

impl HermitianMatrix {
    /// Accepts `m` if `‖m − m*‖_F ≤ 1e−13·‖m‖_F`, then stores the exactly
    /// Hermitian part `(m + m*)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(LupError::DimensionMismatch {
                expected: m.rows,
                found: m.cols,
            });
        }
        if m.rows == 0 {
            return Err(LupError::invalid(
                "dim",
                "matrix dimension must be positive",
            ));
        }
        let n = m.rows;
        let mut defect = 0.0;
        for i in 0..n {
            for j in 0..n {
                defect += (m[(i, j)] - m[(j, i)].conj()).norm_sqr();
            }
        }
        let defect = defect.sqrt();
        let limit = HERMITIAN_TOL * m.frobenius();
        if defect > limit {
            return Err(LupError::NotHermitian { defect, limit });
        }
        let sym = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(m[(i, i)].re, 0.0)
            } else {
                0.5 * (m[(i, j)] + m[(j, i)].conj())
            }
        });
        Ok(HermitianMatrix { m: sym })
    }

    pub fn from_real_symmetric(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(LupError::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(data[i * n + j], 0.0)
        }))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        HermitianMatrix {
            m: CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(values[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            m: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            m: CMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.m
    }

    /// Real part of the trace (the imaginary part is exactly zero).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.m[(i, i)].re).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.m.frobenius()
    }

    fn zip_with(
        &self,
        other: &HermitianMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(LupError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let data = self
            .m
            .data
            .iter()
            .zip(&other.m.data)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(HermitianMatrix {
            m: CMatrix {
                rows: self.m.rows,
                cols: self.m.cols,
                data,
            },
        })
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianMatrix {
            m: CMatrix {
                rows: self.m.rows,
                cols: self.m.cols,
                data: self.m.data.iter().map(|z| z * c).collect(),
            },
        }
    }

    /// `U·H·U*` for a unitary `U`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        let p = u.matmul(&self.m)?.matmul(&u.adjoint())?;
        HermitianMatrix::new(p)
    }

    /// `tr(H·T)`, real for Hermitian `H` and `T`.
    pub fn trace_product(&self, t: &HermitianMatrix) -> Result<f64> {
        if self.dim() != t.dim() {
            return Err(LupError::DimensionMismatch {
                expected: self.dim(),
                found: t.dim(),
            });
        }
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.m[(i, j)] * t.m[(j, i)]).re;
            }
        }
        Ok(s)
    }
}
