use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense complex matrix acting on a tensor-power space. Row-major storage.
#[derive(Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.dim,
            });
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    /// Kronecker product: `(self (x) rhs)`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let d = self.dim * rhs.dim;
        let mut m = Self::zeros(d);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self[(i1, j1)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..rhs.dim {
                    for j2 in 0..rhs.dim {
                        m[(i1 * rhs.dim + i2, j1 * rhs.dim + j2)] = a * rhs[(i2, j2)];
                    }
                }
            }
        }
        m
    }

    /// `I^(x)(k-1) (x) self (x) I^(x)(strands-k-?)`: the operator acting on
    /// sites `pos..pos+width` of a chain of `strands` sites with local
    /// dimension `n`, where `self` has dimension `n^width`.
    pub fn embed_at(&self, n: usize, strands: usize, pos: usize, width: usize) -> Self {
        assert_eq!(self.dim, n.pow(width as u32));
        assert!(pos + width <= strands);
        let left = DenseOperator::identity(n.pow(pos as u32));
        let right = DenseOperator::identity(n.pow((strands - pos - width) as u32));
        left.kron(self).kron(&right)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A - A^dagger|`, the Hermiticity residual.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut r = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi;
    /// the caller is responsible for Hermiticity (checked loosely).
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let scale = self.max_abs().max(1.0);
        debug_assert!(
            self.hermiticity_residual() <= 1e-8 * scale,
            "hermitian_eigenvalues on a non-Hermitian matrix"
        );
        let n = self.dim;
        let mut a = self.clone();
        // Symmetrize to wash out representation noise.
        let ad = a.dagger();
        for (x, y) in a.data.iter_mut().zip(ad.data) {
            *x = (*x + y) * 0.5;
        }
        let tol = 1e-30 * scale * scale;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off <= tol * (n * n) as f64 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.norm_sqr() <= tol {
                        continue;
                    }
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    // Phase that makes the pivot real, then a real Jacobi
                    // rotation.
                    let m = apq.norm();
                    let phase = apq / m;
                    let tau = (aqq - app) / (2.0 * m);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Column rotation: [p q] -> [c*p - s*phase^* q, s*phase*p + c*q]
                    for i in 0..n {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = aip * c - aiq * phase.conj() * s;
                        a[(i, q)] = aip * phase * s + aiq * c;
                    }
                    for j in 0..n {
                        let apj = a[(p, j)];
                        let aqj = a[(q, j)];
                        a[(p, j)] = apj * c - aqj * phase * s;
                        a[(q, j)] = apj * phase.conj() * s + aqj * c;
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        eigs
    }

    /// Singular values, descending: square roots of the eigenvalues of
    /// A^dagger A.
    pub fn singular_values(&self) -> Vec<f64> {
        let ata = &self.dagger() * self;
        let mut sv: Vec<f64> = ata
            .hermitian_eigenvalues()
            .into_iter()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        sv
    }

    /// Numerical rank: singular values above `tol` (absolute).
    pub fn rank(&self, tol: f64) -> usize {
        self.singular_values().iter().filter(|&&s| s > tol).count()
    }
}

impl std::ops::Index<(usize, usize)> for DenseOperator {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        DenseOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        DenseOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = DenseOperator::zeros(n);
        // i-k-j loop order keeps the inner loop contiguous.
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseOperator {}x{}:", self.dim, self.dim)?;
        let show = self.dim.min(8);
        for i in 0..show {
            for j in 0..show {
                write!(f, " {:.3}{:+.3}i", self[(i, j)].re, self[(i, j)].im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Serialization mirror: split real and imaginary parts row by row.
#[derive(Serialize, Deserialize)]
pub struct DenseOperatorJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DenseOperator> for DenseOperatorJson {
    fn from(m: &DenseOperator) -> Self {
        let dim = m.dim();
        let mut re = vec![vec![0.0; dim]; dim];
        let mut im = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                re[i][j] = m[(i, j)].re;
                im[i][j] = m[(i, j)].im;
            }
        }
        Self { dim, re, im }
    }
}

impl TryFrom<&DenseOperatorJson> for DenseOperator {
    type Error = Error;
    fn try_from(j: &DenseOperatorJson) -> Result<DenseOperator> {
        let dim = j.dim;
        if j.re.len() != dim || j.im.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: j.re.len(),
            });
        }
        let mut m = DenseOperator::zeros(dim);
        for i in 0..dim {
            if j.re[i].len() != dim || j.im[i].len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: j.re[i].len(),
                });
            }
            for k in 0..dim {
                m[(i, k)] = Complex64::new(j.re[i][k], j.im[i][k]);
            }
        }
        Ok(m)
    }
}
