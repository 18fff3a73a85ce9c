use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::matrix::SparseMatrix;
use crate::reptheory::RepMatrix;

/// Determinant by fraction-free (Bareiss) elimination with row swaps. Every
/// division is exact in any integral domain; a failed one is reported as an
/// invariant violation.
pub fn determinant<S: Scalar>(m: &SparseMatrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "determinant of a {}×{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.to_dense();
    let mut negate = false;
    let mut prev = S::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(S::zero()),
            }
        }
        for i in k + 1..n {
            let lead = std::mem::replace(&mut a[i][k], S::zero());
            for j in k + 1..n {
                let mut v = a[i][j].clone() * a[k][k].clone();
                if !lead.is_zero() && !a[k][j].is_zero() {
                    v = v - lead.clone() * a[k][j].clone();
                }
                a[i][j] = v
                    .exact_div(&prev)
                    .ok_or_else(|| Error::Invariant("inexact division in fraction-free elimination".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if negate { -prev } else { prev })
}

/// Determinant of a labelled square block.
pub fn exact_determinant<S: Scalar>(m: &RepMatrix<S>) -> Result<S> {
    if m.rows().len() != m.cols().len() {
        return Err(Error::InvalidArgument(format!(
            "block is {}×{}, not square",
            m.rows().len(),
            m.cols().len()
        )));
    }
    determinant(m.matrix())
}

/// Sign of the permutation `k ↦ p[k]`.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
