//! The blocks `α(X)|_{−1}` on `V = V_{ĉ−1} ⊗ V_{b̂−1} ⊗ V_{â−1}` and on its
//! symmetry subspaces, each tied to the graph whose matchings it counts.
//!
//! The ranks of a weight tuple in slice `−1` (resp. `+1`) are the line
//! coordinates of a black (resp. white) triangle of `H(a,b,c)`, and raising
//! factor `p` is crossing the side of kind `p`. Every construction checks that
//! its support is exactly the edge set of its graph, and that each entry is
//! the sum of the weights of the edges it stands for.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Generator, Mode, RepMatrix, TensorRep, WeightVector};
use crate::error::{invariant, Error, Result};
use crate::exactnum::Scalar;
use crate::hexgraph::{
    build_cspp_graph, build_cstcpp_graph, build_hexagon, build_tcpp_graph, orbit_representative, TriCoord,
    WeightedGraph,
};
use crate::products::BoxDims;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    /// All plane partitions.
    Pp,
    /// Transpose-complementary.
    Tcpp,
    /// Cyclically symmetric.
    Cspp,
    /// Cyclically symmetric and transpose-complementary.
    Cstcpp,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 4] = [
        SymmetryClass::Pp,
        SymmetryClass::Tcpp,
        SymmetryClass::Cspp,
        SymmetryClass::Cstcpp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryClass::Pp => "pp",
            SymmetryClass::Tcpp => "tcpp",
            SymmetryClass::Cspp => "cspp",
            SymmetryClass::Cstcpp => "cstcpp",
        }
    }

    /// Whether the class is defined (and nonempty by construction) for the box.
    pub fn check_dims(self, dims: BoxDims) -> Result<()> {
        let BoxDims { a, b, c } = dims;
        let ok = match self {
            SymmetryClass::Pp => true,
            SymmetryClass::Tcpp => a == b && c % 2 == 0,
            SymmetryClass::Cspp => a == b && b == c,
            SymmetryClass::Cstcpp => a == b && b == c && a % 2 == 0,
        };
        if ok {
            Ok(())
        } else {
            let need = match self {
                SymmetryClass::Pp => "",
                SymmetryClass::Tcpp => "a = b and c even",
                SymmetryClass::Cspp => "a = b = c",
                SymmetryClass::Cstcpp => "a = b = c, even",
            };
            Err(Error::InvalidDims(format!("{} needs {need}; got {dims}", self.name())))
        }
    }
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SymmetryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetryClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class {s:?}; expected pp, tcpp, cspp or cstcpp")))
    }
}

/// Highest weights `(ĉ − 1, b̂ − 1, â − 1)`.
pub fn pp_factors(dims: BoxDims) -> Vec<u32> {
    vec![dims.c_hat() - 1, dims.b_hat() - 1, dims.a_hat() - 1]
}

/// A block `α(X)|_{−1}` (possibly restricted to a symmetry subspace) together
/// with its graph, weighted by the representation, and the identification of
/// basis labels with vertices.
#[derive(Clone, Debug)]
pub struct MatchingMatrix<S> {
    pub class: SymmetryClass,
    pub mode: Mode,
    pub dims: BoxDims,
    pub block: RepMatrix<S>,
    pub graph: WeightedGraph<S>,
    /// Column index → black vertex index.
    pub col_vertex: Vec<usize>,
    /// Row index → white vertex index.
    pub row_vertex: Vec<usize>,
}

impl<S: Scalar> MatchingMatrix<S> {
    pub fn triangle_of_col(&self, j: usize) -> TriCoord {
        self.graph.black()[self.col_vertex[j]]
    }

    pub fn triangle_of_row(&self, i: usize) -> TriCoord {
        self.graph.white()[self.row_vertex[i]]
    }
}

/// A symmetrised basis vector: its label and its expansion in tensor basis
/// vectors, the label itself occurring with coefficient `+1`.
struct BasisVector {
    label: WeightVector,
    terms: Vec<(WeightVector, i64)>,
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The subspace basis of one weight slice, for each class. Ranks increase as
/// weights decrease, so "ranks r2 < r3" is "weights w2 > w3".
fn subspace_basis(class: SymmetryClass, rep: &TensorRep, slice: i64) -> Vec<BasisVector> {
    let permute = |w: &WeightVector, p: &[usize]| WeightVector(p.iter().map(|&k| w.0[k]).collect());
    let mut out = Vec::new();
    for w in rep.basis(Some(slice)) {
        let v = &w.0;
        let vector = match class {
            SymmetryClass::Pp => Some(vec![(w.clone(), 1)]),
            // e_i ⊗ e_j ⊗ e_k − e_i ⊗ e_k ⊗ e_j with j < k in rank
            SymmetryClass::Tcpp => (v[1] > v[2]).then(|| vec![(w.clone(), 1), (permute(&w, &[0, 2, 1]), -1)]),
            // the sum over the cyclic orbit, labelled by its least member
            SymmetryClass::Cspp => {
                let orbit: std::collections::BTreeSet<WeightVector> = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
                    .iter()
                    .map(|p| permute(&w, p))
                    .collect();
                (orbit.iter().next() == Some(&w)).then(|| orbit.into_iter().map(|u| (u, 1)).collect())
            }
            // e_i ∧ e_j ∧ e_k with i < j < k in rank
            SymmetryClass::Cstcpp => (v[0] > v[1] && v[1] > v[2])
                .then(|| PERMS3.iter().map(|p| (permute(&w, p), permutation_sign(p))).collect()),
        };
        if let Some(terms) = vector {
            out.push(BasisVector { label: w, terms });
        }
    }
    out
}

/// `X` restricted to the subspace, in the subspace bases of slices −1 and +1.
/// Fails unless `X` maps the subspace into itself.
fn restricted_block<S: Scalar>(class: SymmetryClass, rep: &TensorRep) -> Result<RepMatrix<S>> {
    let source = subspace_basis(class, rep, -1);
    let target = subspace_basis(class, rep, 1);
    let pivot: BTreeMap<&WeightVector, usize> = target.iter().enumerate().map(|(k, b)| (&b.label, k)).collect();
    let mut entries = Vec::new();
    for f in &source {
        let mut image: BTreeMap<WeightVector, S> = BTreeMap::new();
        for (u, c) in &f.terms {
            for (t, x) in rep.apply::<S>(Generator::X, u)? {
                let acc = image.remove(&t).unwrap_or_else(S::zero) + S::from_i64(*c) * x;
                if !acc.is_zero() {
                    image.insert(t, acc);
                }
            }
        }
        // Read coordinates off the distinguished members, then check that
        // they reproduce the whole image.
        let mut rebuilt: BTreeMap<WeightVector, S> = BTreeMap::new();
        for (label, &k) in &pivot {
            if let Some(coef) = image.get(*label) {
                for (u, c) in &target[k].terms {
                    let acc = rebuilt.remove(u).unwrap_or_else(S::zero) + S::from_i64(*c) * coef.clone();
                    if !acc.is_zero() {
                        rebuilt.insert(u.clone(), acc);
                    }
                }
                entries.push(((*label).clone(), f.label.clone(), coef.clone()));
            }
        }
        invariant!(
            rebuilt == image,
            "{class} subspace is not stable under X at {}",
            f.label
        );
    }
    RepMatrix::from_entries(
        target.into_iter().map(|b| b.label).collect(),
        source.into_iter().map(|b| b.label).collect(),
        entries,
    )
}

/// The restricted block alone, for any box on which the class's symmetry acts
/// on the representation (for κτ: `a = b`, any height).
pub fn symmetric_block<S: Scalar>(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<RepMatrix<S>> {
    let acts = match class {
        SymmetryClass::Pp => true,
        SymmetryClass::Tcpp => dims.a == dims.b,
        SymmetryClass::Cspp | SymmetryClass::Cstcpp => dims.a == dims.b && dims.b == dims.c,
    };
    if !acts {
        return Err(Error::InvalidDims(format!(
            "the {class} symmetry does not act on {dims}"
        )));
    }
    restricted_block(class, &TensorRep::new(pp_factors(dims), mode)?)
}

/// Builds the block for a class on the given box (the box of the ambient
/// hexagon: `(a,a,2b)`, `(a,a,a)` or `(2a,2a,2a)` for the symmetric classes).
pub fn class_matrix<S: Scalar>(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<MatchingMatrix<S>> {
    class.check_dims(dims)?;
    if class != SymmetryClass::Pp && mode == Mode::Quantum {
        return Err(Error::Unsupported(format!(
            "the quantum coproduct does not commute with the {class} symmetry"
        )));
    }
    let rep = TensorRep::new(pp_factors(dims), mode)?;
    let block = restricted_block::<S>(class, &rep)?;
    let shape = match class {
        SymmetryClass::Pp => build_hexagon::<S>(dims),
        SymmetryClass::Tcpp => build_tcpp_graph::<S>(dims.a, dims.c / 2)?,
        SymmetryClass::Cspp => build_cspp_graph::<S>(dims.a)?,
        SymmetryClass::Cstcpp => build_cstcpp_graph::<S>(dims.a / 2)?,
    };
    // Each edge is weighted by the single term of X it carries.
    let graph = shape.reweight(|e, black, white| {
        let w = rep.from_ranks(&black.line_coords(dims));
        let (t, coef) = rep
            .move_factor::<S>(Generator::X, &w, e.kind)?
            .ok_or_else(|| Error::Invariant(format!("edge at {black:?} has no X term")))?;
        invariant!(
            TriCoord::from_line_coords(dims, rep.ranks(&t).try_into().expect("three factors"))
                == Some(black.neighbor(e.kind)),
            "X term from {black:?} does not land on its neighbour"
        );
        let _ = white;
        Ok(coef)
    })?;

    let locate = |label: &WeightVector, black: bool| -> Result<usize> {
        let ranks: [i64; 3] = rep.ranks(label).try_into().expect("three factors");
        let t = TriCoord::from_line_coords(dims, ranks)
            .filter(|t| t.up == black)
            .ok_or_else(|| Error::Invariant(format!("label {label} is not a triangle of the right colour")))?;
        let rep_t = orbit_representative(&graph, &t)
            .ok_or_else(|| Error::Invariant(format!("no vertex of the {class} graph stands for {label}")))?;
        Ok(graph.vertex_index(&rep_t).expect("representative is a vertex"))
    };
    let col_vertex = block
        .cols()
        .iter()
        .map(|l| locate(l, true))
        .collect::<Result<Vec<_>>>()?;
    let row_vertex = block
        .rows()
        .iter()
        .map(|l| locate(l, false))
        .collect::<Result<Vec<_>>>()?;

    let bijective = |v: &[usize], n: usize| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == v.len() && v.len() == n
    };
    invariant!(
        bijective(&col_vertex, graph.black().len()) && bijective(&row_vertex, graph.white().len()),
        "{class} basis of {dims} is not in bijection with the graph's vertices"
    );

    let mut from_graph: BTreeMap<(usize, usize), S> = BTreeMap::new();
    for e in graph.edges() {
        let acc = from_graph.remove(&(e.white, e.black)).unwrap_or_else(S::zero) + e.weight.clone();
        from_graph.insert((e.white, e.black), acc);
    }
    let from_matrix: BTreeMap<(usize, usize), S> = block
        .matrix()
        .iter()
        .map(|((i, j), v)| ((row_vertex[i], col_vertex[j]), v.clone()))
        .collect();
    invariant!(
        from_graph == from_matrix,
        "{class} block of {dims} does not match its graph's weighted edges"
    );

    Ok(MatchingMatrix {
        class,
        mode,
        dims,
        block,
        graph,
        col_vertex,
        row_vertex,
    })
}

pub fn pp_matrix<S: Scalar>(dims: BoxDims, mode: Mode) -> Result<MatchingMatrix<S>> {
    class_matrix(SymmetryClass::Pp, dims, mode)
}

pub fn tcpp_matrix<S: Scalar>(a: u32, b: u32) -> Result<MatchingMatrix<S>> {
    class_matrix(SymmetryClass::Tcpp, BoxDims::new(a, a, 2 * b)?, Mode::Classical)
}

pub fn cspp_matrix<S: Scalar>(a: u32) -> Result<MatchingMatrix<S>> {
    class_matrix(SymmetryClass::Cspp, BoxDims::cube(a)?, Mode::Classical)
}

/// CSTCPPs of the `2a`-cube, on `Λ³ V_{4a−1}`.
pub fn cstcpp_matrix<S: Scalar>(a: u32) -> Result<MatchingMatrix<S>> {
    class_matrix(SymmetryClass::Cstcpp, BoxDims::cube(2 * a)?, Mode::Classical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, QPoly};
    use crate::hexgraph::FaceKind;
    use num_bigint::BigInt;

    #[test]
    fn pp_support_for_all_small_boxes() {
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    let d = BoxDims::new(a, b, c).unwrap();
                    let m = pp_matrix::<BigInt>(d, Mode::Classical).unwrap();
                    assert!(m.block.is_square());
                    assert_eq!(m.block.cols().len(), d.half_triangles());
                }
            }
        }
    }

    #[test]
    fn unit_box_block() {
        let m = pp_matrix::<BigInt>(BoxDims::cube(1).unwrap(), Mode::Classical).unwrap();
        assert_eq!(m.block.cols().len(), 3);
        assert_eq!(m.block.matrix().nnz(), 6);
    }

    #[test]
    fn quantum_pp_support() {
        let m = pp_matrix::<QPoly>(BoxDims::new(2, 2, 3).unwrap(), Mode::Quantum).unwrap();
        assert_eq!(m.block.cols().len(), 16);
    }

    #[test]
    fn symmetric_blocks_build() {
        for a in 1..=4 {
            for b in 1..=2 {
                let m = tcpp_matrix::<BigInt>(a, b).unwrap();
                assert!(m.block.is_square());
            }
            let m = cspp_matrix::<BigInt>(a).unwrap();
            assert!(m.block.is_square());
            assert_eq!(3 * m.block.cols().len(), BoxDims::cube(a).unwrap().half_triangles());
        }
        for a in 1..=2 {
            let m = cstcpp_matrix::<BigInt>(a).unwrap();
            let n = 4 * a as usize;
            // strictly increasing rank triples summing to d − 1
            let expected = (0..n)
                .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
                .filter(|(i, j, k)| i + j + k == 3 * 2 * a as usize - 1)
                .count();
            assert_eq!(m.block.cols().len(), expected);
        }
    }

    #[test]
    fn cspp_digon_entry_is_aggregated() {
        let m = cspp_matrix::<BigInt>(1).unwrap();
        assert_eq!(m.block.matrix().to_dense(), vec![vec![int(2)]]);
        let digon = m.graph.faces().iter().find(|f| f.kind == FaceKind::Digon).unwrap();
        let w: Vec<BigInt> = digon.edges.iter().map(|&e| m.graph.edge(e).weight.clone()).collect();
        assert_eq!(w, vec![int(1), int(1)]);
    }

    #[test]
    fn classes_reject_bad_boxes() {
        assert!(class_matrix::<BigInt>(SymmetryClass::Cspp, BoxDims::new(2, 2, 3).unwrap(), Mode::Classical).is_err());
        assert!(class_matrix::<BigInt>(SymmetryClass::Tcpp, BoxDims::new(2, 2, 3).unwrap(), Mode::Classical).is_err());
        assert!(class_matrix::<BigInt>(SymmetryClass::Cstcpp, BoxDims::cube(3).unwrap(), Mode::Classical).is_err());
        assert!(class_matrix::<QPoly>(SymmetryClass::Cspp, BoxDims::cube(2).unwrap(), Mode::Quantum).is_err());
        assert_eq!("cspp".parse::<SymmetryClass>().unwrap(), SymmetryClass::Cspp);
    }

    fn basis_character(class: SymmetryClass, dims: BoxDims) -> crate::reptheory::Character {
        use crate::exactnum::{RatPoly, Var};
        use num_rational::BigRational;
        use num_traits::One;
        let rep = TensorRep::new(pp_factors(dims), Mode::Classical).unwrap();
        let top: i64 = rep.factors.iter().map(|&n| n as i64).sum();
        let mut p = RatPoly::zero_in(Var::T);
        for slice in (-top..=top).step_by(2) {
            for v in subspace_basis(class, &rep, slice) {
                p = p + RatPoly::monomial(Var::T, BigRational::one(), v.label.total());
            }
        }
        crate::reptheory::Character(p)
    }

    #[test]
    fn subspace_bases_have_the_closed_form_characters() {
        use crate::reptheory::{cspp_character, tcpp_character, wedge_cube_character};
        for a in 1..=3 {
            for b in 1..=2 {
                let d = BoxDims::new(a, a, 2 * b).unwrap();
                assert_eq!(basis_character(SymmetryClass::Tcpp, d), tcpp_character(a, b).unwrap());
            }
            let d = BoxDims::cube(a).unwrap();
            assert_eq!(basis_character(SymmetryClass::Cspp, d), cspp_character(a).unwrap());
        }
        for a in 1..=2 {
            let d = BoxDims::cube(2 * a).unwrap();
            assert_eq!(
                basis_character(SymmetryClass::Cstcpp, d),
                wedge_cube_character(4 * a - 1)
            );
        }
    }
}
