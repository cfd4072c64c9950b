//! Small dense symmetric-matrix primitives.
//!
//! Everything here targets matrices of dimension at most ~12: correlation
//! blocks, their completions, and the Gram matrices extracted from them.
//! Eigenvalues come from cyclic Jacobi sweeps, determinants from Gaussian
//! elimination with partial pivoting, and Gram factors from a pivoted
//! semidefinite Cholesky that clamps tiny negative pivots so boundary
//! (rank-deficient) matrices factor cleanly.

use thiserror::Error;

/// Hard cap for principal-minor enumeration: 2^dim minors.
pub const MAX_SYLVESTER_DIM: usize = 12;

/// Pivot threshold below which a trailing block counts as singular.
const SINGULAR_PIVOT: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("dimension {0} exceeds the minor-enumeration cap of {MAX_SYLVESTER_DIM}")]
    DimensionTooLarge(usize),
    #[error("trailing block is singular (pivot {0:e})")]
    SingularBlock(f64),
    #[error("matrix is not positive semidefinite (pivot {0:e})")]
    NotPsd(f64),
    #[error("diagonal entry {0} is {1}, expected 1")]
    NotUnitDiagonal(usize, f64),
}

/// Dense real symmetric matrix. Only the upper triangle is stored, so
/// `get(i, j) == get(j, i)` holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    /// Row-major upper triangle: row i contributes entries (i,i)..(i,dim-1).
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "SymMatrix dimension must be at least 1");
        SymMatrix {
            dim,
            entries: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds from full rows; the strictly lower triangle is ignored.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            assert_eq!(rows[i].len(), dim, "row {i} has wrong length");
            for j in i..dim {
                m.set(i, j, rows[i][j]);
            }
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        // offset of row r in the packed triangle
        r * self.dim - r * (r + 1) / 2 + c
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.entries[k] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Principal submatrix on the given (strictly increasing) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// Simultaneous row/column permutation: entry (i,j) of the result is
    /// entry (perm[i], perm[j]) of self.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.dim);
        SymMatrix::from_fn(self.dim, |i, j| self.get(perm[i], perm[j]))
    }

    /// All eigenvalues, ascending, by cyclic Jacobi rotations.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Eigenvalues (ascending) with matching unit eigenvectors.
    pub fn eigen(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let mut a = self.to_rows();
        jacobi_eigen(&mut a)
    }

    /// Smallest eigenvalue, accurate to about 1e-12 in absolute terms for
    /// the matrix sizes handled here.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Psd test with caller-chosen slack: true iff lambda_min >= -tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Sylvester criterion in psd form: every nonempty principal minor is
    /// nonnegative. Enumerates all 2^dim - 1 subsets, so the dimension is
    /// capped at [`MAX_SYLVESTER_DIM`].
    pub fn sylvester_psd(&self) -> Result<bool, MatrixError> {
        if self.dim > MAX_SYLVESTER_DIM {
            return Err(MatrixError::DimensionTooLarge(self.dim));
        }
        let mut idx = Vec::with_capacity(self.dim);
        for mask in 1u32..(1u32 << self.dim) {
            idx.clear();
            for i in 0..self.dim {
                if mask & (1 << i) != 0 {
                    idx.push(i);
                }
            }
            let minor = self.principal_submatrix(&idx).det();
            // guard against rounding on exactly-zero minors
            if minor < -SINGULAR_PIVOT {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.to_rows();
        let mut det = 1.0;
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[i][k].abs() > a[p][k].abs() {
                    p = i;
                }
            }
            if a[p][k] == 0.0 {
                return 0.0;
            }
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }

    /// Schur complement of the trailing block: with `M = [[A, B], [B^T, D]]`
    /// and `A` of size `k`, returns `A - B D^-1 B^T`.
    pub fn schur_complement(&self, k: usize) -> Result<SymMatrix, MatrixError> {
        assert!(k >= 1 && k < self.dim, "block split must satisfy 1 <= k < dim");
        let n = self.dim;
        let t = n - k; // trailing block size
        // Solve D X = B^T for X (t x k) by Gauss with partial pivoting.
        let mut d: Vec<Vec<f64>> = (k..n)
            .map(|i| (k..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut x: Vec<Vec<f64>> = (k..n)
            .map(|i| (0..k).map(|j| self.get(i, j)).collect())
            .collect();
        for col in 0..t {
            let mut p = col;
            for r in col + 1..t {
                if d[r][col].abs() > d[p][col].abs() {
                    p = r;
                }
            }
            let pivot = d[p][col];
            if pivot.abs() < SINGULAR_PIVOT {
                return Err(MatrixError::SingularBlock(pivot));
            }
            d.swap(p, col);
            x.swap(p, col);
            for r in 0..t {
                if r == col {
                    continue;
                }
                let f = d[r][col] / pivot;
                if f == 0.0 {
                    continue;
                }
                for c in col..t {
                    d[r][c] -= f * d[col][c];
                }
                for c in 0..k {
                    x[r][c] -= f * x[col][c];
                }
            }
        }
        for r in 0..t {
            let pivot = d[r][r];
            for c in 0..k {
                x[r][c] /= pivot;
            }
        }
        // A - B X, symmetrized against rounding drift.
        let mut out = SymMatrix::zeros(k);
        for i in 0..k {
            for j in i..k {
                let mut bx = 0.0;
                for r in 0..t {
                    bx += self.get(i, k + r) * x[r][j];
                }
                let mut xb = 0.0;
                for r in 0..t {
                    xb += self.get(j, k + r) * x[r][i];
                }
                out.set(i, j, self.get(i, j) - 0.5 * (bx + xb));
            }
        }
        Ok(out)
    }

    /// Pivoted semidefinite factorization of a unit-diagonal psd matrix.
    ///
    /// Returns `dim` vectors of length `dim` with `<w_i, w_j> = M(i,j)`;
    /// negative pivots within `tol` are clamped to zero so boundary
    /// matrices factor, and a pivot below `-tol` is rejected as NotPsd.
    pub fn cholesky_gram_vectors(&self, tol: f64) -> Result<Vec<Vec<f64>>, MatrixError> {
        let n = self.dim;
        for i in 0..n {
            let d = self.get(i, i);
            if (d - 1.0).abs() > 1e-9 {
                return Err(MatrixError::NotUnitDiagonal(i, d));
            }
        }
        let mut w = self.to_rows(); // working residual
        let mut l = vec![vec![0.0; n]; n]; // rows are the output vectors
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            // largest remaining diagonal; first index on ties
            let mut best = k;
            for j in k + 1..n {
                if w[perm[j]][perm[j]] > w[perm[best]][perm[best]] {
                    best = j;
                }
            }
            perm.swap(k, best);
            let pk = perm[k];
            let d = w[pk][pk];
            if d < -tol {
                return Err(MatrixError::NotPsd(d));
            }
            if d <= SINGULAR_PIVOT {
                // numerical rank reached: remaining residual is within tol of zero
                break;
            }
            let root = d.sqrt();
            l[pk][k] = root;
            for j in k + 1..n {
                let pj = perm[j];
                l[pj][k] = w[pj][pk] / root;
            }
            for i in k + 1..n {
                let pi = perm[i];
                for j in i..n {
                    let pj = perm[j];
                    let upd = w[pi][pj] - l[pi][k] * l[pj][k];
                    w[pi][pj] = upd;
                    w[pj][pi] = upd;
                }
            }
        }
        Ok(l)
    }
}

/// Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix.
/// Follows the classical rotation formulas; the matrix is destroyed.
/// Returns eigenvalues ascending and the matching unit eigenvectors.
fn jacobi_eigen(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    if n == 1 {
        return (vec![a[0][0]], vec![vec![1.0]]);
    }
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let off = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i][j] * a[i][j];
            }
        }
        s
    };
    let scale: f64 = (0..n)
        .map(|i| a[i][i].abs())
        .fold(1.0, f64::max);
    let threshold = (scale * 1e-15).powi(2).max(f64::MIN_POSITIVE);
    for _sweep in 0..50 {
        if off(a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= scale * 1e-18 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let apq = a[p][q];
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = aip - s * (aiq + tau * aip);
                    a[p][i] = a[i][p];
                    a[i][q] = aiq + s * (aip - tau * aiq);
                    a[q][i] = a[i][q];
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - s * viq;
                    row[q] = s * vip + c * viq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).unwrap());
    let eig: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let vecs: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i][k]).collect())
        .collect();
    (eig, vecs)
}
