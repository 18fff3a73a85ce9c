//! Sparse matrices over an exact [`Scalar`] ring.

use std::collections::BTreeMap;

use crate::exactnum::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| S::one()))
    }

    pub fn diagonal(values: impl IntoIterator<Item = S>) -> Self {
        let values: Vec<S> = values.into_iter().collect();
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&S> {
        self.entries.get(&(r, c))
    }

    pub fn get_or_zero(&self, r: usize, c: usize) -> S {
        self.get(r, c).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: S) {
        let cur = self.get_or_zero(r, c);
        self.set(r, c, cur + v);
    }

    /// Nonzero entries as `((row, col), value)`, row-major.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cols];
        for &(_, c) in self.entries.keys() {
            counts[c] += 1;
        }
        counts
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&S) -> D) -> SparseMatrix<D> {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&i), Some(&j)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<(usize, &S)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            by_row[r].push((c, v));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &rhs.entries {
            out.add_to(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, v.clone() * k.clone());
        }
        out
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Kronecker product `self ⊗ rhs` with row index `i·rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &rhs.entries {
                out.set(i * rhs.rows + k, j * rhs.cols + l, a.clone() * b.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> SparseMatrix<BigInt> {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn product_and_commutator() {
        let h = m(&[&[1, 0], &[0, -1]]);
        let x = m(&[&[0, 1], &[0, 0]]);
        let y = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(h.commutator(&x), x.scale(&int(2)));
        assert_eq!(h.commutator(&y), y.scale(&int(-2)));
        assert_eq!(x.commutator(&y), h);
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut a = SparseMatrix::<BigInt>::zeros(2, 2);
        a.set(0, 1, int(3));
        a.add_to(0, 1, int(-3));
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn kron_with_identity() {
        let x = m(&[&[0, 1], &[0, 0]]);
        let k = x.kron(&SparseMatrix::identity(3));
        assert_eq!(k.rows(), 6);
        assert_eq!(k.nnz(), 3);
        assert_eq!(k.get(0, 3), Some(&int(1)));
    }
}
