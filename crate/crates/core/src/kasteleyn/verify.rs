use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{count_via, determinant, exact_determinant, permutation_sign, CountResult, Route};
use crate::error::{invariant, Error, Result};
use crate::exactnum::Scalar;
use crate::hexgraph::{enumerate_matchings, FaceKind, GraphKind, WeightedGraph};
use crate::oracle::matching_to_pp;
use crate::products::{box_product, finite, BoxDims};
use crate::reptheory::{
    character, d_map, pp_factors, tensor_block, Generator, MatchingMatrix, Mode, SymmetryClass, TensorRep,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceReport {
    pub center: (i64, i64),
    pub kind: FaceKind,
    pub numerator: String,
    pub denominator: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatnessReport {
    pub dims: BoxDims,
    pub mode: Mode,
    /// `1` classically, `q` for the quantum weighting.
    pub expected: String,
    pub faces: Vec<FaceReport>,
    pub violations: usize,
}

impl FlatnessReport {
    pub fn is_flat(&self) -> bool {
        self.violations == 0
    }
}

/// Curvature of every bounded face against the value the weighting should
/// have: `1` classically, `q` quantum. Zero weights are refused.
pub fn verify_flatness<S: Scalar>(g: &WeightedGraph<S>, mode: Mode) -> Result<FlatnessReport> {
    let expected = match mode {
        Mode::Classical => S::one(),
        Mode::Quantum => S::q_power_quarters(4).ok_or_else(|| Error::Unsupported("the scalar ring has no q".into()))?,
    };
    let mut faces = Vec::new();
    for face in g.faces() {
        let (num, den) = g.kasteleyn_curvature(face)?;
        let ok = num == den.clone() * expected.clone();
        faces.push(FaceReport {
            center: face.center,
            kind: face.kind,
            numerator: num.to_canonical(),
            denominator: den.to_canonical(),
            ok,
        });
    }
    let violations = faces.iter().filter(|f| !f.ok).count();
    Ok(FlatnessReport {
        dims: g.dims(),
        mode,
        expected: expected.to_canonical(),
        faces,
        violations,
    })
}

/// Matchings sharing a signed term value (and, for the quantum weighting, a
/// cube count).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermClass {
    pub cubes: Option<u64>,
    pub value: String,
    pub matchings: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermReport {
    pub class: SymmetryClass,
    pub dims: BoxDims,
    pub mode: Mode,
    pub matchings: u64,
    pub terms: Vec<TermClass>,
    /// The terms add up to the determinant of the block.
    pub sums_to_determinant: bool,
    pub violations: Vec<String>,
}

impl TermReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.sums_to_determinant
    }
}

/// Expands the determinant over perfect matchings. Classically every term
/// must equal the same `±m`; for the quantum weighting the term of a tiling
/// with `k` cubes must be `q^k` times the term of the empty one, which is
/// `±m`.
pub fn verify_term_equality<S: Scalar>(mm: &MatchingMatrix<S>, m: &S, vertex_budget: usize) -> Result<TermReport> {
    let g = &mm.graph;
    let col_of_black: BTreeMap<usize, usize> = mm.col_vertex.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let row_of_white: BTreeMap<usize, usize> = mm.row_vertex.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let quantum = mm.mode == Mode::Quantum;
    if quantum {
        invariant!(
            g.kind() == GraphKind::Hexagon,
            "quantum terms need the full hexagon graph"
        );
    }
    let q = S::q_power_quarters(4);

    let mut classes: BTreeMap<(Option<u64>, String), (S, u64)> = BTreeMap::new();
    let mut sum = S::zero();
    let mut count = 0u64;
    for matching in enumerate_matchings(g, vertex_budget)? {
        let mut perm = vec![0; mm.col_vertex.len()];
        for &e in matching.edges() {
            let edge = g.edge(e);
            perm[col_of_black[&edge.black]] = row_of_white[&edge.white];
        }
        let w = g.matching_weight(&matching);
        let term = if permutation_sign(&perm) < 0 { -w } else { w };
        let cubes = if quantum {
            Some(matching_to_pp(&matching, g)?.cube_count())
        } else {
            None
        };
        sum = sum + term.clone();
        count += 1;
        let slot = classes.entry((cubes, term.to_canonical())).or_insert((term, 0));
        slot.1 += 1;
    }

    let mut violations = Vec::new();
    let reference = classes
        .iter()
        .find(|((c, _), _)| c.unwrap_or(0) == 0)
        .map(|(_, (t, _))| t.clone());
    match &reference {
        None => violations.push("no matching to anchor the terms".to_string()),
        Some(base) => {
            if *base != *m && *base != -m.clone() {
                violations.push(format!(
                    "reference term {} is not ±m = ±{}",
                    base.to_canonical(),
                    m.to_canonical()
                ));
            }
            for ((cubes, label), (term, _)) in &classes {
                let want = match (cubes, &q) {
                    (Some(k), Some(q)) => (0..*k).fold(base.clone(), |acc, _| acc * q.clone()),
                    _ => base.clone(),
                };
                if *term != want {
                    violations.push(format!(
                        "term {label} (cubes {cubes:?}) differs from {}",
                        want.to_canonical()
                    ));
                }
            }
        }
    }
    let det = exact_determinant(&mm.block)?;
    Ok(TermReport {
        class: mm.class,
        dims: mm.dims,
        mode: mm.mode,
        matchings: count,
        terms: classes
            .into_iter()
            .map(|((cubes, value), (_, n))| TermClass {
                cubes,
                value,
                matchings: n,
            })
            .collect(),
        sums_to_determinant: sum == det,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DmapReport {
    pub dims: BoxDims,
    /// `D(ch V)`.
    pub d_value: String,
    /// `C(ĉ,b̂,â; d−1)² / C(ĉ,b̂,â; d−2)²`.
    pub product_value: String,
    /// `det(α(Y)|_{+1} α(X)|_{−1})`.
    pub composed_determinant: String,
    /// `det α(Y)|_{+1} · det α(X)|_{−1}`.
    pub split_determinant: String,
}

/// `det(α(Y) α(X)|_{−1})` three ways: the D homomorphism on the character,
/// the box-product quotient, and exact elimination on the composed block
/// (also as a product of the two factor determinants). All must agree.
pub fn determinant_via_dmap(dims: BoxDims) -> Result<(BigRational, DmapReport)> {
    let factors = pp_factors(dims);
    let d_value = d_map(&character(&factors))?;
    let hats = finite(&[dims.c_hat(), dims.b_hat(), dims.a_hat()]);
    let d = dims.d() as i64;
    let ratio = BigRational::new(box_product(&hats, d - 1)?, box_product(&hats, d - 2)?);
    let product_value = &ratio * &ratio;
    invariant!(
        d_value == product_value,
        "D(ch V) = {d_value} but the box quotient is {product_value} for {dims}"
    );

    let rep = TensorRep::new(factors, Mode::Classical)?;
    let x = tensor_block::<BigInt>(&rep, Generator::X, -1)?;
    let y = tensor_block::<BigInt>(&rep, Generator::Y, 1)?;
    let composed = determinant(y.compose(&x)?.matrix())?;
    let split = exact_determinant(&y)? * exact_determinant(&x)?;
    invariant!(
        composed == split,
        "det(YX) = {composed} but det Y · det X = {split} for {dims}"
    );
    invariant!(
        BigRational::from_integer(composed.clone()) == d_value,
        "det(YX) = {composed} but D(ch V) = {d_value} for {dims}"
    );
    let report = DmapReport {
        dims,
        d_value: d_value.to_string(),
        product_value: product_value.to_string(),
        composed_determinant: composed.to_string(),
        split_determinant: split.to_string(),
    };
    Ok((d_value, report))
}

/// One row of the route comparison table: each requested route's value, or
/// the reason it could not be produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RouteComparison {
    pub class: SymmetryClass,
    pub dims: BoxDims,
    pub mode: Mode,
    pub results: Vec<CountResult>,
    pub skipped: Vec<(Route, String)>,
    pub agree: bool,
}

/// Runs the requested routes. Unsupported routes are skipped; every other
/// error is returned. Agreement means all produced values are equal.
pub fn compare_routes(
    class: SymmetryClass,
    dims: BoxDims,
    mode: Mode,
    routes: &[Route],
    volume_budget: u64,
) -> Result<RouteComparison> {
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for &route in routes {
        match count_via(route, class, dims, mode, volume_budget) {
            Ok(r) => results.push(r),
            Err(Error::Unsupported(why)) => skipped.push((route, why)),
            Err(e) => return Err(e),
        }
    }
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    Ok(RouteComparison {
        class,
        dims,
        mode,
        results,
        skipped,
        agree,
    })
}
