//! Dense matrices over the rationals with exact Gauss-Jordan elimination.

use crate::rational::Rational;
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of reduced row echelon form: the unique RREF, its rank, pivot
/// columns, and a basis of the right null space.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: QMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub kernel: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Integer-entry convenience constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        let p = &self[(i, j)] * &v[j];
                        acc += &p;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> QMatrix {
        QMatrix::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Columns of `self` stacked side by side with columns of `other`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        QMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn from_cols(cols: &[Vec<Rational>]) -> QMatrix {
        let nc = cols.len();
        let nr = cols.first().map_or(0, |c| c.len());
        QMatrix::from_fn(nr, nc, |i, j| cols[j][i].clone())
    }

    /// Unique reduced row echelon form with rank, pivots and right kernel basis.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            let Some(sel) = (pr..m.rows).find(|&i| !m[(i, pc)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = m[(pr, pc)].recip();
            for j in pc..m.cols {
                let v = &m[(pr, j)] * &inv;
                m[(pr, j)] = v;
            }
            for i in 0..m.rows {
                if i != pr && !m[(i, pc)].is_zero() {
                    let f = m[(i, pc)].clone();
                    for j in pc..m.cols {
                        let delta = &f * &m[(pr, j)];
                        m[(i, j)] -= &delta;
                    }
                }
            }
            pivot_cols.push(pc);
            pr += 1;
            if pr == m.rows {
                break;
            }
        }
        let rank = pivot_cols.len();
        let mut kernel = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; m.cols];
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..m.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut k = vec![Rational::zero(); m.cols];
            k[free] = Rational::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                k[c] = -&m[(r, free)];
            }
            kernel.push(k);
        }
        Rref {
            matrix: m,
            rank,
            pivot_cols,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Exact inverse; `Err(Singular)` when rank < dimension.
    pub fn invert(&self) -> Result<QMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape(format!(
                "invert on {}x{}",
                self.rows, self.cols
            )));
        }
        let aug = self.hstack(&QMatrix::identity(self.rows));
        let red = aug.rref();
        let left_rank = red.pivot_cols.iter().filter(|&&c| c < self.cols).count();
        if left_rank < self.rows {
            return Err(MatrixError::Singular);
        }
        Ok(red.matrix.submatrix(0, self.rows, self.rows, self.rows))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len());
        let rhs = QMatrix::from_cols(&[b.to_vec()]);
        let red = self.hstack(&rhs).rref();
        // Any pivot in the last column means inconsistency.
        if red.pivot_cols.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in red.pivot_cols.iter().enumerate() {
            x[c] = red.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Rational {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for p in 0..n {
            let Some(sel) = (p..n).find(|&i| !m[(i, p)].is_zero()) else {
                return Rational::zero();
            };
            if sel != p {
                m.swap_rows(p, sel);
                det = -det;
            }
            let piv = m[(p, p)].clone();
            det = &det * &piv;
            let inv = piv.recip();
            for i in p + 1..n {
                if m[(i, p)].is_zero() {
                    continue;
                }
                let f = &m[(i, p)] * &inv;
                for j in p..n {
                    let delta = &f * &m[(p, j)];
                    m[(i, j)] -= &delta;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Extends the linearly independent columns `cols` to a basis of Q^dim by
/// greedily appending unit vectors; returns the full square invertible matrix.
pub fn complete_to_basis(cols: &[Vec<Rational>], dim: usize) -> QMatrix {
    let mut chosen: Vec<Vec<Rational>> = cols.to_vec();
    for i in 0..dim {
        if chosen.len() == dim {
            break;
        }
        let mut e = vec![Rational::zero(); dim];
        e[i] = Rational::one();
        let mut candidate = chosen.clone();
        candidate.push(e.clone());
        if QMatrix::from_cols(&candidate).rank() == candidate.len() {
            chosen.push(e);
        }
    }
    assert_eq!(chosen.len(), dim, "could not complete to a basis");
    QMatrix::from_cols(&chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rref_proportional_rows() {
        let m = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        assert_eq!(r.kernel[0], vec![q(-2, 1), q(1, 1)]);
    }

    #[test]
    fn rref_identity() {
        let m = QMatrix::identity(3);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
        assert_eq!(r.matrix, QMatrix::identity(3));
    }

    #[test]
    fn rref_unit_rows() {
        let m = QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel, vec![vec![q(1, 1), q(0, 1), q(0, 1)]]);
    }

    #[test]
    fn invert_cases() {
        let swap = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        let twice = QMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let half = twice.invert().unwrap();
        assert_eq!(half[(0, 0)], q(1, 2));
        assert_eq!(half[(1, 1)], q(1, 2));
        let sing = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(sing.invert(), Err(MatrixError::Singular));
    }

    #[test]
    fn rank_kernel_consistency() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let r = m.rref();
        assert_eq!(r.rank + r.kernel.len(), m.cols());
    }

    // Randomized: kernel vectors are exact null vectors, inverse is exact.
    #[test]
    fn random_rref_and_invert_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let m = QMatrix::from_fn(rows, cols, |_, _| {
                Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            });
            let r = m.rref();
            for k in &r.kernel {
                assert!(m.mul_vec(k).iter().all(Rational::is_zero));
            }
            assert_eq!(r.rank + r.kernel.len(), cols);
            if rows == cols && r.rank == rows {
                let inv = m.invert().unwrap();
                assert_eq!(inv.mul(&m), QMatrix::identity(rows));
                assert_eq!(m.mul(&inv), QMatrix::identity(rows));
            }
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(QMatrix::identity(3).det(), q(1, 1));
        assert_eq!(QMatrix::from_i64(&[&[1, 1], &[1, 1]]).det(), q(0, 1));
        assert_eq!(QMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), q(-1, 1));
        let m = QMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // Expansion along the first row: 2*(12-1) - 1*(4-0) = 18.
        assert_eq!(m.det(), q(18, 1));
    }

    #[test]
    fn complete_basis() {
        let c0 = vec![q(1, 1), q(1, 1), q(0, 1)];
        let b = complete_to_basis(&[c0], 3);
        assert!(b.is_invertible());
        assert_eq!(b.col(0), vec![q(1, 1), q(1, 1), q(0, 1)]);
    }
}
