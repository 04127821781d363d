//! Small dense linear algebra: a row-major matrix, Cholesky factorisation and
//! a cyclic Jacobi eigensolver, combined into the symmetric-definite
//! generalized eigenproblem `H C = S C diag(ε)`.
//!
//! The matrices handled here are at most a few dozen rows (two atoms with up
//! to nine orbitals each), so Jacobi's quadratic convergence and exact
//! orthogonality are worth more than the asymptotic speed of a tridiagonal QR.
//! Every routine is free of data-dependent parallelism and therefore
//! bit-reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not positive definite (pivot {index} = {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from row slices. Panics if rows are ragged.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self {
            rows: n_rows,
            cols: n_cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower-triangular Cholesky factor `L` with `S = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Matrix,
}

impl Cholesky {
    pub fn new(s: &Matrix) -> Result<Self, LinalgError> {
        check_square(s, s.rows())?;
        let n = s.rows();
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = s[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(LinalgError::NotPositiveDefinite { index: j, pivot: d });
            }
            let ljj = libm::sqrt(d);
            l[(j, j)] = ljj;
            for i in j + 1..n {
                let mut v = s[(i, j)];
                for k in 0..j {
                    v -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = v / ljj;
            }
        }
        Ok(Self { l })
    }

    pub fn factor(&self) -> &Matrix {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// Solves `L x = b` in place.
    fn forward(&self, b: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let mut v = b[i];
            for k in 0..i {
                v -= self.l[(i, k)] * b[k];
            }
            b[i] = v / self.l[(i, i)];
        }
    }

    /// Solves `Lᵀ x = b` in place.
    fn backward(&self, b: &mut [f64]) {
        let n = self.dim();
        for i in (0..n).rev() {
            let mut v = b[i];
            for k in i + 1..n {
                v -= self.l[(k, i)] * b[k];
            }
            b[i] = v / self.l[(i, i)];
        }
    }

    /// Solves `H C = S C diag(ε)` for the `S` this factor was built from.
    pub fn solve_generalized(&self, h: &Matrix) -> Result<Eigen, LinalgError> {
        let n = self.dim();
        check_square(h, n)?;

        // A = L⁻¹ H L⁻ᵀ, built column by column: first W = L⁻¹ H, then A = L⁻¹ Wᵀ.
        let mut w = Matrix::zeros(n, n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            for i in 0..n {
                col[i] = h[(i, j)];
            }
            self.forward(&mut col);
            for i in 0..n {
                w[(i, j)] = col[i];
            }
        }
        let mut a = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                col[i] = w[(j, i)];
            }
            self.forward(&mut col);
            for i in 0..n {
                a[(i, j)] = col[i];
            }
        }
        for i in 0..n {
            for j in 0..i {
                let m = 0.5 * (a[(i, j)] + a[(j, i)]);
                a[(i, j)] = m;
                a[(j, i)] = m;
            }
        }

        let Eigen { values, vectors } = symmetric_eigen(&a)?;

        let mut c = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                col[i] = vectors[(i, j)];
            }
            self.backward(&mut col);
            for i in 0..n {
                c[(i, j)] = col[i];
            }
        }
        Ok(Eigen { values, vectors: c })
    }
}

fn check_square(m: &Matrix, n: usize) -> Result<(), LinalgError> {
    if m.rows() != n || m.cols() != n {
        return Err(LinalgError::Dimension {
            expected: n,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi diagonalisation of a real symmetric matrix.
///
/// Eigenvalues are returned ascending (ties keep their diagonal order).
/// Each eigenvector is sign-normalised so that its largest-magnitude
/// component is positive.
pub fn symmetric_eigen(a: &Matrix) -> Result<Eigen, LinalgError> {
    let n = a.rows();
    check_square(a, n)?;
    let mut a = a.clone();
    let mut v = Matrix::identity(n);

    let scale = a.as_slice().iter().map(|x| x * x).sum::<f64>();
    let target = scale * f64::EPSILON * f64::EPSILON;

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off == 0.0 || 2.0 * off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                let tau = s / (1.0 + c);

                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = a[(r, p)];
                        let arq = a[(r, q)];
                        let np = arp - s * (arq + tau * arp);
                        let nq = arq + s * (arp - tau * arq);
                        a[(r, p)] = np;
                        a[(p, r)] = np;
                        a[(r, q)] = nq;
                        a[(q, r)] = nq;
                    }
                }
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp - s * (vrq + tau * vrp);
                    v[(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        let mut pivot = 0.0f64;
        for r in 0..n {
            if v[(r, old)].abs() > pivot.abs() {
                pivot = v[(r, old)];
            }
        }
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, new)] = sign * v[(r, old)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Solves the symmetric-definite generalized eigenproblem `H C = S C diag(ε)`.
///
/// `S` is reduced with a Cholesky factorisation, so the returned columns are
/// S-orthonormal (`Cᵀ S C = I`). Fails if `S` has a non-positive pivot.
pub fn solve_generalized_eig(h: &Matrix, s: &Matrix) -> Result<Eigen, LinalgError> {
    Cholesky::new(s)?.solve_generalized(h)
}

/// `max |H C − S C diag(ε)|`.
pub fn eigen_residual(h: &Matrix, s: &Matrix, eig: &Eigen) -> f64 {
    let hc = h.matmul(&eig.vectors);
    let sc = s.matmul(&eig.vectors);
    let mut worst = 0.0f64;
    for i in 0..hc.rows() {
        for j in 0..hc.cols() {
            worst = worst.max((hc[(i, j)] - sc[(i, j)] * eig.values[j]).abs());
        }
    }
    worst
}

/// `max |Cᵀ S C − I|`.
pub fn orthonormality_defect(s: &Matrix, c: &Matrix) -> f64 {
    let g = c.transpose().matmul(&s.matmul(c));
    let mut worst = 0.0f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}
