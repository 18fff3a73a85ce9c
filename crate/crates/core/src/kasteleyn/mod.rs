//! Determinant pipelines: exact determinants, the normalising term `m` shared
//! by every nonzero term of a flat determinant, and the counts `|det| / |m|`,
//! next to the formula and oracle routes they are compared against.

mod determinant;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invariant, Error, Result};
use crate::exactnum::{exact_integer_root, exact_root, QPoly, Scalar, Var};
use crate::hexgraph::{build_hexagon, restrict_matching, Matching};
use crate::oracle::{self, base_partition, SymmetryFilter, DEFAULT_VOLUME_BUDGET};
use crate::products::{self, odd_double_factorial, BoxDims};
use crate::reptheory::{class_matrix, MatchingMatrix, Mode, SymmetryClass};

pub use determinant::{determinant, exact_determinant, permutation_sign};
pub use verify::{
    compare_routes, determinant_via_dmap, verify_flatness, verify_term_equality, DmapReport, FaceReport,
    FlatnessReport, RouteComparison, TermClass, TermReport,
};

/// An exact integer or an exact polynomial in `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactValue {
    Integer(BigInt),
    Polynomial(QPoly),
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Integer(n) => write!(f, "{n}"),
            ExactValue::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormClass {
    Pp,
    PpQ,
    Tcpp,
    Cspp,
    Cstcpp,
}

impl NormClass {
    pub fn of(class: SymmetryClass, mode: Mode) -> Result<Self> {
        Ok(match (class, mode) {
            (SymmetryClass::Pp, Mode::Classical) => NormClass::Pp,
            (SymmetryClass::Pp, Mode::Quantum) => NormClass::PpQ,
            (SymmetryClass::Tcpp, Mode::Classical) => NormClass::Tcpp,
            (SymmetryClass::Cspp, Mode::Classical) => NormClass::Cspp,
            (SymmetryClass::Cstcpp, Mode::Classical) => NormClass::Cstcpp,
            (class, Mode::Quantum) => return Err(quantum_unsupported(class)),
        })
    }
}

/// The common absolute value of the nonzero determinant terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizationTerm {
    pub class: NormClass,
    pub dims: BoxDims,
    pub value: ExactValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Determinant,
    Formula,
    Oracle,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Determinant, Route::Formula, Route::Oracle];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Determinant => "det",
            Route::Formula => "formula",
            Route::Oracle => "oracle",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" | "determinant" => Ok(Route::Determinant),
            "formula" => Ok(Route::Formula),
            "oracle" => Ok(Route::Oracle),
            _ => Err(Error::Parse(format!(
                "unknown route {s:?}; expected det, formula or oracle"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub class: SymmetryClass,
    pub dims: BoxDims,
    pub mode: Mode,
    pub route: Route,
    pub value: ExactValue,
}

fn quantum_unsupported(class: SymmetryClass) -> Error {
    Error::Unsupported(format!("no quantum pipeline for {class}"))
}

pub fn oracle_filter(class: SymmetryClass) -> SymmetryFilter {
    match class {
        SymmetryClass::Pp => SymmetryFilter::Trivial,
        SymmetryClass::Tcpp => SymmetryFilter::KappaTau,
        SymmetryClass::Cspp => SymmetryFilter::Rho,
        SymmetryClass::Cstcpp => SymmetryFilter::RhoKappaTau,
    }
}

fn root_of(x: &BigRational, k: u32, what: &str) -> Result<BigInt> {
    exact_integer_root(x, k).ok_or_else(|| Error::Invariant(format!("{what}: {x} has no exact {k}-th root")))
}

/// `|m| = C(a,b;ĉ−1) C(a,c;b̂−1) C(b,c;â−1)`.
pub fn m_pp(dims: BoxDims) -> Result<BigInt> {
    products::pp_horizontal_products(dims)
}

/// `m_q = q^{−abc/2} C(a,b;ĉ−1)_q C(a,c;b̂−1)_q C(b,c;â−1)_q`, the products
/// taken over brackets `[v]` (with `(v)_q` factors the weight of the empty
/// matching is missed by a power of `q` as soon as some factor exceeds 1).
pub fn m_pp_q(dims: BoxDims) -> Result<QPoly> {
    let shift = QPoly::power_halves(Var::Q, -(dims.volume() as i64));
    Ok(shift * products::pp_horizontal_products_bracket(dims)?)
}

/// `m_κτ = √(|m| / (2a−1)!!)` on the `(a, a, 2b)` box.
pub fn m_tcpp(dims: BoxDims) -> Result<BigInt> {
    SymmetryClass::Tcpp.check_dims(dims)?;
    let fixed = odd_double_factorial(2 * dims.a as i64 - 1)?;
    root_of(&BigRational::new(m_pp(dims)?, fixed), 2, "m_kt")
}

/// `m_ρ = ∛m` on the `a`-cube.
pub fn m_cspp(dims: BoxDims) -> Result<BigInt> {
    SymmetryClass::Cspp.check_dims(dims)?;
    let m = m_pp(dims)?;
    exact_root(&m, 3).ok_or_else(|| Error::Invariant(format!("m_rho: {m} is not a perfect cube")))
}

/// `m_{ρ,κτ} = (|m| / ((2n−1)!!)³)^{1/6}` on the `n`-cube, `n` even: the full
/// term splits into six congruent pieces and three fixed rows.
pub fn m_cstcpp(dims: BoxDims) -> Result<BigInt> {
    SymmetryClass::Cstcpp.check_dims(dims)?;
    let rows = num_traits::pow(odd_double_factorial(2 * dims.a as i64 - 1)?, 3);
    root_of(&BigRational::new(m_pp(dims)?, rows), 6, "m_rho_kt")
}

fn closed_form(class: NormClass, dims: BoxDims) -> Result<ExactValue> {
    Ok(match class {
        NormClass::Pp => ExactValue::Integer(m_pp(dims)?),
        NormClass::PpQ => ExactValue::Polynomial(m_pp_q(dims)?),
        NormClass::Tcpp => ExactValue::Integer(m_tcpp(dims)?),
        NormClass::Cspp => ExactValue::Integer(m_cspp(dims)?),
        NormClass::Cstcpp => ExactValue::Integer(m_cstcpp(dims)?),
    })
}

/// The matching of the class's graph coming from a fixed symmetric plane
/// partition (the empty one where the class allows it).
pub fn base_matching<S: Scalar>(mm: &MatchingMatrix<S>) -> Result<Matching> {
    let full = build_hexagon::<BigInt>(mm.dims);
    let p = base_partition(mm.dims, oracle_filter(mm.class))?;
    restrict_matching(&full, &oracle::pp_to_matching(&p, &full)?, &mm.graph)
}

fn matches_up_to_sign<S: Scalar>(weight: &S, m: &S) -> bool {
    *weight == *m || *weight == -m.clone()
}

fn checked_normalization<S: Scalar>(mm: &MatchingMatrix<S>, value: &S) -> Result<()> {
    let weight = mm.graph.matching_weight(&base_matching(mm)?);
    invariant!(
        matches_up_to_sign(&weight, value),
        "{} normalization of {}: closed form {value:?} but the base matching weighs {weight:?}",
        mm.class,
        mm.dims
    );
    Ok(())
}

/// The closed-form normalization, cross-checked against the weight of the
/// base matching in the class's graph.
pub fn normalization(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<NormalizationTerm> {
    let norm = NormClass::of(class, mode)?;
    let value = closed_form(norm, dims)?;
    match &value {
        ExactValue::Integer(m) => checked_normalization(&class_matrix::<BigInt>(class, dims, mode)?, m)?,
        ExactValue::Polynomial(m) => checked_normalization(&class_matrix::<QPoly>(class, dims, mode)?, m)?,
    }
    Ok(NormalizationTerm {
        class: norm,
        dims,
        value,
    })
}

fn exact_quotient<S: Scalar>(det: &S, m: &S, what: &str) -> Result<S> {
    det.exact_div(m)
        .ok_or_else(|| Error::Invariant(format!("{what}: determinant {det:?} is not divisible by {m:?}")))
}

/// `|det α(X)|_{−1}| / |m|`, or for the q-count the exact quotient by `m_q`
/// with its sign fixed so that the empty plane partition counts `+1`.
pub fn count_via_determinant(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<CountResult> {
    let norm = NormClass::of(class, mode)?;
    let value = match norm {
        NormClass::PpQ => {
            let mm = class_matrix::<QPoly>(class, dims, mode)?;
            let m = m_pp_q(dims)?;
            checked_normalization(&mm, &m)?;
            let det = exact_determinant(&mm.block)?;
            let mut n = exact_quotient(&det, &m, "q-count")?;
            if n.coefficient(0).is_negative() {
                n = -n;
            }
            invariant!(
                n.is_polynomial() && n.coefficient(0).is_one() && n.degree() == Some(dims.volume() as i64),
                "det/m_q = {n} for {dims} is not a polynomial with constant term 1 and degree abc"
            );
            invariant!(
                n.terms().all(|(_, c)| !c.is_negative()),
                "det/m_q = {n} for {dims} has a negative coefficient"
            );
            ExactValue::Polynomial(n)
        }
        _ => {
            let mm = class_matrix::<BigInt>(class, dims, mode)?;
            let m = match closed_form(norm, dims)? {
                ExactValue::Integer(m) => m,
                ExactValue::Polynomial(_) => unreachable!("classical normalizations are integers"),
            };
            checked_normalization(&mm, &m)?;
            let det = exact_determinant(&mm.block)?;
            ExactValue::Integer(exact_quotient(&det.abs(), &m, &format!("{class} count of {dims}"))?)
        }
    };
    Ok(CountResult {
        class,
        dims,
        mode,
        route: Route::Determinant,
        value,
    })
}

pub fn count_via_formula(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<CountResult> {
    let value = match (class, mode) {
        (SymmetryClass::Pp, Mode::Classical) => ExactValue::Integer(products::count_pp_formula(dims)?),
        (SymmetryClass::Pp, Mode::Quantum) => ExactValue::Polynomial(products::count_pp_formula_q(dims)?),
        (SymmetryClass::Tcpp, Mode::Classical) => {
            if dims.a != dims.b {
                return Err(Error::InvalidDims(format!("tcpp needs a = b; got {dims}")));
            }
            ExactValue::Integer(products::count_tcpp_formula_for_height(dims.a, dims.c)?)
        }
        (SymmetryClass::Cspp, Mode::Classical) => {
            SymmetryClass::Cspp.check_dims(dims)?;
            ExactValue::Integer(products::count_cspp_formula(dims.a)?)
        }
        (SymmetryClass::Cstcpp, Mode::Classical) => {
            return Err(Error::Unsupported("there is no closed formula for cstcpp".into()));
        }
        (class, Mode::Quantum) => return Err(quantum_unsupported(class)),
    };
    Ok(CountResult {
        class,
        dims,
        mode,
        route: Route::Formula,
        value,
    })
}

pub fn count_via_oracle(class: SymmetryClass, dims: BoxDims, mode: Mode, volume_budget: u64) -> Result<CountResult> {
    let value = match mode {
        Mode::Classical => ExactValue::Integer(oracle::count_pp(dims, oracle_filter(class), volume_budget)?),
        Mode::Quantum if class == SymmetryClass::Pp => ExactValue::Polynomial(oracle::q_count(dims, volume_budget)?),
        Mode::Quantum => return Err(quantum_unsupported(class)),
    };
    Ok(CountResult {
        class,
        dims,
        mode,
        route: Route::Oracle,
        value,
    })
}

pub fn count_via(
    route: Route,
    class: SymmetryClass,
    dims: BoxDims,
    mode: Mode,
    volume_budget: u64,
) -> Result<CountResult> {
    match route {
        Route::Determinant => count_via_determinant(class, dims, mode),
        Route::Formula => count_via_formula(class, dims, mode),
        Route::Oracle => count_via_oracle(class, dims, mode, volume_budget),
    }
}

/// Counts by the oracle with the default budget.
pub fn count_via_default_oracle(class: SymmetryClass, dims: BoxDims, mode: Mode) -> Result<CountResult> {
    count_via_oracle(class, dims, mode, DEFAULT_VOLUME_BUDGET)
}
