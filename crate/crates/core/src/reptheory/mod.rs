//! Finite-dimensional representations of `sl(2)` and its quantum deformation
//! on weight bases, and the blocks of `α(X)` whose determinants count plane
//! partitions.
//!
//! A basis vector of `V_{n_1} ⊗ … ⊗ V_{n_k}` is named by its tuple of weights
//! `(w_1, …, w_k)`, `w_p ∈ {n_p, n_p − 2, …, −n_p}`; its *rank* in factor `p`
//! is `(n_p − w_p)/2`. Rows and columns of every matrix are sorted by weight
//! tuple, lexicographically ascending.
//!
//! The quantum coproduct is `Δ(L) = L ⊗ q^{H/4} + q^{−H/4} ⊗ L` for
//! `L ∈ {X, Y}`, iterated left to right, so on a triple product the raising
//! operator in factor `p` picks up `q^{(Σ_{r>p} w_r − Σ_{r<p} w_r)/4}`.

mod character;
mod classes;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};
use crate::exactnum::Scalar;
use crate::matrix::SparseMatrix;

pub use character::{
    character, clebsch_gordan, cspp_character, d_map, d_monomial, irrep_character, tcpp_character,
    wedge_cube_character, Character,
};
pub use classes::{
    class_matrix, cspp_matrix, cstcpp_matrix, pp_factors, pp_matrix, symmetric_block, tcpp_matrix, MatchingMatrix,
    SymmetryClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    H,
    X,
    Y,
}

/// The irreducible representation of highest weight `n` (dimension `n + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irrep {
    pub n: u32,
    pub mode: Mode,
}

impl Irrep {
    pub fn weights(&self) -> Vec<i64> {
        let n = self.n as i64;
        (0..=n).map(|r| n - 2 * r).collect()
    }
}

/// An ordered tensor product of irreps, all in the same mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRep {
    pub factors: Vec<u32>,
    pub mode: Mode,
}

impl TensorRep {
    pub fn new(factors: Vec<u32>, mode: Mode) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument(
                "a tensor product needs at least one factor".into(),
            ));
        }
        Ok(TensorRep { factors, mode })
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|&n| n as usize + 1).product()
    }

    /// All basis tuples, or those of one weight slice, in canonical order.
    pub fn basis(&self, slice: Option<i64>) -> Vec<WeightVector> {
        let mut out = vec![Vec::new()];
        for &n in &self.factors {
            let n = n as i64;
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..=n).rev().map(move |r| {
                        let mut v = prefix.clone();
                        v.push(n - 2 * r);
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<WeightVector> = out
            .into_iter()
            .map(WeightVector)
            .filter(|w| slice.is_none_or(|s| w.total() == s))
            .collect();
        out.sort();
        out
    }

    pub fn ranks(&self, w: &WeightVector) -> Vec<i64> {
        self.factors
            .iter()
            .zip(&w.0)
            .map(|(&n, &x)| (n as i64 - x) / 2)
            .collect()
    }

    pub fn from_ranks(&self, ranks: &[i64]) -> WeightVector {
        WeightVector(
            self.factors
                .iter()
                .zip(ranks)
                .map(|(&n, &r)| n as i64 - 2 * r)
                .collect(),
        )
    }

    /// The image of one basis vector under `X` or `Y`, as `(target, coefficient)`
    /// pairs, one per factor that can move.
    pub fn apply<S: Scalar>(&self, gen: Generator, w: &WeightVector) -> Result<Vec<(WeightVector, S)>> {
        if gen == Generator::H {
            return Ok(vec![(w.clone(), S::from_i64(w.total()))]);
        }
        let mut out = Vec::new();
        for p in 0..self.factors.len() {
            if let Some(term) = self.move_factor::<S>(gen, w, p)? {
                out.push(term);
            }
        }
        Ok(out)
    }

    /// The single term of `X` (or `Y`) acting in factor `p`.
    pub fn move_factor<S: Scalar>(
        &self,
        gen: Generator,
        w: &WeightVector,
        p: usize,
    ) -> Result<Option<(WeightVector, S)>> {
        let n = self.factors[p] as i64;
        let r = (n - w.0[p]) / 2;
        let (step, k) = match gen {
            Generator::X if r >= 1 => (2, r),
            Generator::Y if r < n => (-2, n - r),
            _ => return Ok(None),
        };
        let before: i64 = w.0[..p].iter().sum();
        let after: i64 = w.0[p + 1..].iter().sum();
        let coef = bracket::<S>(k, self.mode)? * q_quarter_power::<S>(after - before, self.mode)?;
        let mut target = w.clone();
        target.0[p] += step;
        Ok(Some((target, coef)))
    }
}

/// `k` classically, `[k]` in quantum mode.
pub fn bracket<S: Scalar>(k: i64, mode: Mode) -> Result<S> {
    match mode {
        Mode::Classical => Ok(S::from_i64(k)),
        Mode::Quantum => S::quantum_integer(k).ok_or_else(no_q),
    }
}

fn q_quarter_power<S: Scalar>(quarters: i64, mode: Mode) -> Result<S> {
    match mode {
        Mode::Classical => Ok(S::one()),
        Mode::Quantum => S::q_power_quarters(quarters).ok_or_else(no_q),
    }
}

fn no_q() -> Error {
    Error::Unsupported("quantum mode needs a scalar ring containing q^(1/4)".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A sparse matrix whose rows and columns are named by weight tuples.
///
/// For symmetrised bases a label names the basis vector through its
/// distinguished member (the tensor basis vector occurring with coefficient
/// `+1`).
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix<S> {
    rows: Vec<WeightVector>,
    cols: Vec<WeightVector>,
    row_index: BTreeMap<WeightVector, usize>,
    col_index: BTreeMap<WeightVector, usize>,
    matrix: SparseMatrix<S>,
}

impl<S: Scalar> RepMatrix<S> {
    /// Labels are sorted into canonical order; entries are summed.
    pub fn from_entries(
        mut rows: Vec<WeightVector>,
        mut cols: Vec<WeightVector>,
        entries: impl IntoIterator<Item = (WeightVector, WeightVector, S)>,
    ) -> Result<Self> {
        rows.sort();
        rows.dedup();
        cols.sort();
        cols.dedup();
        let index = |v: &[WeightVector]| v.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let row_index: BTreeMap<WeightVector, usize> = index(&rows);
        let col_index: BTreeMap<WeightVector, usize> = index(&cols);
        let mut matrix = SparseMatrix::zeros(rows.len(), cols.len());
        for (r, c, v) in entries {
            let (Some(&i), Some(&j)) = (row_index.get(&r), col_index.get(&c)) else {
                return Err(Error::Invariant(format!(
                    "entry at {r} x {c} outside the labelled block"
                )));
            };
            matrix.add_to(i, j, v);
        }
        Ok(RepMatrix {
            rows,
            cols,
            row_index,
            col_index,
            matrix,
        })
    }

    pub fn rows(&self) -> &[WeightVector] {
        &self.rows
    }

    pub fn cols(&self) -> &[WeightVector] {
        &self.cols
    }

    pub fn row_of(&self, w: &WeightVector) -> Option<usize> {
        self.row_index.get(w).copied()
    }

    pub fn col_of(&self, w: &WeightVector) -> Option<usize> {
        self.col_index.get(w).copied()
    }

    pub fn matrix(&self) -> &SparseMatrix<S> {
        &self.matrix
    }

    pub fn get(&self, row: &WeightVector, col: &WeightVector) -> S {
        match (self.row_of(row), self.col_of(col)) {
            (Some(i), Some(j)) => self.matrix.get_or_zero(i, j),
            _ => S::zero(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    /// Nonzero entries with their labels.
    pub fn labelled_entries(&self) -> impl Iterator<Item = (&WeightVector, &WeightVector, &S)> {
        self.matrix.iter().map(|((i, j), v)| (&self.rows[i], &self.cols[j], v))
    }

    /// `self · rhs`; the column labels of `self` must be the row labels of `rhs`.
    pub fn compose(&self, rhs: &RepMatrix<S>) -> Result<RepMatrix<S>> {
        invariant!(self.cols == rhs.rows, "label mismatch in matrix product");
        Ok(RepMatrix {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            row_index: self.row_index.clone(),
            col_index: rhs.col_index.clone(),
            matrix: self.matrix.mul(&rhs.matrix),
        })
    }

    /// Restriction to the columns of weight `source` and rows of weight
    /// `target`.
    pub fn slice(&self, source: i64, target: i64) -> Result<RepMatrix<S>> {
        let rows: Vec<WeightVector> = self.rows.iter().filter(|w| w.total() == target).cloned().collect();
        let cols: Vec<WeightVector> = self.cols.iter().filter(|w| w.total() == source).cloned().collect();
        let entries: Vec<_> = self
            .labelled_entries()
            .filter(|(r, c, _)| r.total() == target && c.total() == source)
            .map(|(r, c, v)| (r.clone(), c.clone(), v.clone()))
            .collect();
        RepMatrix::from_entries(rows, cols, entries)
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&S) -> D) -> RepMatrix<D> {
        RepMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            row_index: self.row_index.clone(),
            col_index: self.col_index.clone(),
            matrix: self.matrix.map(f),
        }
    }

    pub fn dump(&self) -> MatrixDump {
        MatrixDump {
            rows: self.rows.iter().map(|w| w.0.clone()).collect(),
            cols: self.cols.iter().map(|w| w.0.clone()).collect(),
            entries: self
                .matrix
                .iter()
                .map(|((row, col), v)| EntryDump {
                    row,
                    col,
                    value: v.to_canonical(),
                })
                .collect(),
        }
    }

    /// One line per nonzero entry: `row_label,col_label,value`, labels as
    /// space-separated weights.
    pub fn to_csv(&self) -> String {
        let label = |w: &WeightVector| w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::from("row,col,value\n");
        for (r, c, v) in self.labelled_entries() {
            out.push_str(&format!("{},{},\"{}\"\n", label(r), label(c), v.to_canonical()));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDump {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Serialisable labelled sparse matrix; values are canonical ring strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub rows: Vec<Vec<i64>>,
    pub cols: Vec<Vec<i64>>,
    pub entries: Vec<EntryDump>,
}

/// The action of a generator on all of `rep`.
pub fn tensor_action<S: Scalar>(rep: &TensorRep, gen: Generator) -> Result<RepMatrix<S>> {
    let basis = rep.basis(None);
    let mut entries = Vec::new();
    for w in &basis {
        for (t, c) in rep.apply::<S>(gen, w)? {
            entries.push((t, w.clone(), c));
        }
    }
    RepMatrix::from_entries(basis.clone(), basis, entries)
}

/// The block of `gen` from the slice of weight `source` to the slice it maps
/// into, built without forming the full matrix.
pub fn tensor_block<S: Scalar>(rep: &TensorRep, gen: Generator, source: i64) -> Result<RepMatrix<S>> {
    let target = source
        + match gen {
            Generator::H => 0,
            Generator::X => 2,
            Generator::Y => -2,
        };
    let cols = rep.basis(Some(source));
    let mut entries = Vec::new();
    for w in &cols {
        for (t, c) in rep.apply::<S>(gen, w)? {
            entries.push((t, w.clone(), c));
        }
    }
    RepMatrix::from_entries(rep.basis(Some(target)), cols, entries)
}

pub fn irrep_action<S: Scalar>(irrep: Irrep, gen: Generator) -> Result<RepMatrix<S>> {
    tensor_action(&TensorRep::new(vec![irrep.n], irrep.mode)?, gen)
}

/// The diagonal matrix `[α(H)]` of quantum brackets of the weights.
pub fn bracket_of_h<S: Scalar>(rep: &TensorRep) -> Result<RepMatrix<S>> {
    let basis = rep.basis(None);
    let entries = basis
        .iter()
        .map(|w| Ok((w.clone(), w.clone(), bracket::<S>(w.total(), rep.mode)?)))
        .collect::<Result<Vec<_>>>()?;
    RepMatrix::from_entries(basis.clone(), basis, entries)
}

/// `q^{α(H)/2}` as a diagonal matrix.
pub fn q_half_h<S: Scalar>(rep: &TensorRep) -> Result<RepMatrix<S>> {
    let basis = rep.basis(None);
    let entries = basis
        .iter()
        .map(|w| {
            Ok((
                w.clone(),
                w.clone(),
                q_quarter_power::<S>(2 * w.total(), Mode::Quantum)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    RepMatrix::from_entries(basis.clone(), basis, entries)
}
