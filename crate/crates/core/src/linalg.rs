//! Dense symmetric eigenvalues (cyclic Jacobi) and pivoted Cholesky.

use alloc::vec;
use alloc::vec::Vec;

use crate::prelude::*;

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    fn max_off_diagonal(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                m = m.max(self[(i, j)].abs());
            }
        }
        m
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenvalues of a symmetric matrix, ascending. Only the upper triangle is
/// read. Cyclic Jacobi sweeps with a threshold on small rotations.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    let n = a.n;
    let mut m = a.clone();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    let scale = m.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 || n < 2 {
        let mut d: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
        d.sort_by(|x, y| x.total_cmp(y));
        return Ok(d);
    }
    for sweep in 0..100 {
        let off = m.max_off_diagonal();
        if off <= f64::EPSILON * 1e-3 * scale {
            break;
        }
        // early sweeps skip rotations far below the current off-diagonal level
        let thresh = if sweep < 3 { 0.2 * off / (n as f64) } else { 0.0 };
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= thresh || apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                if sweep > 3 && apq.abs() < 1e-18 * (app.abs() + aqq.abs()) {
                    m[(p, q)] = 0.0;
                    m[(q, p)] = 0.0;
                    continue;
                }
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, p, q, c, s);
            }
        }
        if sweep == 99 {
            return Err(Error::NoConvergence {
                what: "Jacobi eigenvalue sweeps",
                best: 0.0,
                err_est: m.max_off_diagonal(),
            });
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    d.sort_by(|x, y| x.total_cmp(y));
    Ok(d)
}

// A ← JᵀAJ for the rotation in the (p, q) plane; keeps A symmetric.
fn rotate(m: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = m.n;
    for k in 0..n {
        let akp = m.data[k * n + p];
        let akq = m.data[k * n + q];
        m.data[k * n + p] = c * akp - s * akq;
        m.data[k * n + q] = s * akp + c * akq;
    }
    let (rp, rq) = (p * n, q * n);
    for k in 0..n {
        let apk = m.data[rp + k];
        let aqk = m.data[rq + k];
        m.data[rp + k] = c * apk - s * aqk;
        m.data[rq + k] = s * apk + c * aqk;
    }
}

/// Pivoted Cholesky `P A Pᵀ ≈ L Lᵀ` of a positive semi-definite matrix,
/// stopping when the largest remaining pivot falls below `rel_tol·max diag`.
/// Returns the columns of `L` in the original ordering (`A ≈ Σ l lᵀ`).
pub fn pivoted_cholesky(a: &Matrix, rel_tol: f64) -> Vec<Vec<f64>> {
    let n = a.n;
    let mut diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let max_diag = diag.iter().fold(0.0f64, |m, v| m.max(*v));
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; n];
    for _ in 0..n {
        let (piv, &dmax) = match diag
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .max_by(|x, y| x.1.total_cmp(y.1))
        {
            Some(v) => v,
            None => break,
        };
        if !(dmax > rel_tol * max_diag) {
            break;
        }
        used[piv] = true;
        let root = dmax.sqrt();
        let mut col = vec![0.0; n];
        for i in 0..n {
            if used[i] && i != piv {
                continue;
            }
            let mut v = a[(i, piv)];
            for c in &cols {
                v -= c[i] * c[piv];
            }
            col[i] = v / root;
        }
        col[piv] = root;
        for i in 0..n {
            if !used[i] {
                diag[i] -= col[i] * col[i];
            }
        }
        cols.push(col);
    }
    cols
}
