//! Dense matrices over [`Scalar`] with exact or pivoted elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of a row reduction: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from row vectors. An empty list gives a `0 × cols` matrix.
    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
            .collect();
        Matrix::from_rows(&rows, cols)
    }

    pub fn from_cols(cols: &[Vec<Scalar>], rows: usize) -> Self {
        Matrix::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(Scalar::conj).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() && a.is_exact() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() && b.is_exact() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "incompatible matrix-vector product");
        (0..self.rows)
            .map(|i| dot(self.row_slice(i), v))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Largest tolerance carried by any entry (zero when exact).
    pub fn tolerance(&self) -> f64 {
        self.data.iter().map(Scalar::tolerance).fold(0.0, f64::max)
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        let mut b = Matrix::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                b[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let n = a.rows;
        let mut m = Matrix::zeros(2 * n, 2 * n);
        m.set_block(0, 0, a);
        m.set_block(0, n, b);
        m.set_block(n, 0, c);
        m.set_block(n, n, d);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Reduced row echelon form.
    ///
    /// Exact matrices pivot on the first nonzero entry. Matrices with float
    /// entries use partial pivoting and treat entries below
    /// `tol · max(1, max|a_ij|)` as zero.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let exact = m.is_exact();
        let threshold = if exact {
            0.0
        } else {
            let scale = m.data.iter().map(Scalar::abs_f64).fold(1.0, f64::max);
            m.tolerance() * scale
        };
        let negligible = |s: &Scalar| {
            if exact {
                s.is_zero()
            } else {
                s.abs_f64() <= threshold
            }
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = if exact {
                (r..m.rows).find(|&i| !m[(i, c)].is_zero())
            } else {
                (r..m.rows)
                    .filter(|&i| !negligible(&m[(i, c)]))
                    .max_by(|&a, &b| m[(a, c)].abs_f64().total_cmp(&m[(b, c)].abs_f64()))
            };
            let Some(p) = pivot_row else {
                for i in r..m.rows {
                    m[(i, c)] = Scalar::zero();
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            m[(r, c)] = Scalar::one();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() && exact {
                    continue;
                }
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
                m[(i, c)] = Scalar::zero();
            }
            pivots.push(c);
            r += 1;
        }
        if !exact {
            for x in m.data.iter_mut() {
                if x.abs_f64() <= threshold {
                    *x = Scalar::zero();
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> Matrix {
        let Rref { matrix, pivots } = self.rref();
        matrix.block(0, 0, pivots.len(), self.cols)
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&matrix[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::new(self.rows, 1, b.to_vec()));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.block(0, n, n, n))
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let exact = m.is_exact();
        let mut det = Scalar::one();
        for c in 0..n {
            let p = if exact {
                (c..n).find(|&i| !m[(i, c)].is_zero())
            } else {
                (c..n).max_by(|&a, &b| m[(a, c)].abs_f64().total_cmp(&m[(b, c)].abs_f64()))
            };
            let Some(p) = p else {
                return Scalar::zero();
            };
            if exact && m[(p, c)].is_zero() {
                return Scalar::zero();
            }
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.checked_inv();
            let Some(inv) = inv else {
                return Scalar::zero();
            };
            for i in c + 1..n {
                let f = &m[(i, c)] * &inv;
                if f.is_zero() && exact {
                    continue;
                }
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        det
    }

    /// Promotes every entry to a complex float with tolerance `tol`.
    pub fn to_complex(&self, tol: f64) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|s| s.to_complex(tol)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Bilinear dot product without conjugation.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if (x.is_exact() && x.is_zero()) || (y.is_exact() && y.is_zero()) {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_slice(i).iter().map(Scalar::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        // 2(1-0) - 1(0-3) + 0 = 5
        assert_eq!(m.det(), Scalar::int(5));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        let s = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), Scalar::zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Scalar::int(3), Scalar::int(1)]).unwrap();
        assert_eq!(x, vec![Scalar::int(2), Scalar::int(1)]);
        let s = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[Scalar::int(1), Scalar::int(3)]).is_none());
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let t = 1e-9;
        let m = Matrix::new(
            2,
            2,
            vec![
                Scalar::complex(1.0, 0.0, t),
                Scalar::complex(2.0, 0.0, t),
                Scalar::complex(2.0, 0.0, t),
                Scalar::complex(4.0 + 1e-12, 0.0, t),
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn gaussian_rank() {
        let i = Scalar::i();
        let m = Matrix::new(2, 2, vec![Scalar::one(), i.clone(), i.clone(), Scalar::int(-1)]);
        assert_eq!(m.rank(), 1);
    }
}
