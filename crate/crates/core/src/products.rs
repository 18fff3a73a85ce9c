//! Box products, simplex products, hyperfactorials and the closed counting
//! formulas built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};
use crate::exactnum::{exact_integer_root, q_integer, quantum_integer, QPoly, Scalar};

/// An `a × b × c` box. The hatted sizes are always derived, never stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxDims {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl BoxDims {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::InvalidDims(format!(
                "box {a}x{b}x{c}: all sides must be positive"
            )));
        }
        Ok(BoxDims { a, b, c })
    }

    pub fn cube(a: u32) -> Result<Self> {
        Self::new(a, a, a)
    }

    /// `b + c`
    pub fn a_hat(&self) -> u32 {
        self.b + self.c
    }

    /// `a + c`
    pub fn b_hat(&self) -> u32 {
        self.a + self.c
    }

    /// `a + b`
    pub fn c_hat(&self) -> u32 {
        self.a + self.b
    }

    pub fn d(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn volume(&self) -> u64 {
        self.a as u64 * self.b as u64 * self.c as u64
    }

    /// Number of triangles of each colour in the hexagon `H(a,b,c)`.
    pub fn half_triangles(&self) -> usize {
        (self.a * self.b + self.b * self.c + self.a * self.c) as usize
    }
}

impl std::fmt::Display for BoxDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}x{}", self.a, self.b, self.c)
    }
}

/// One side of the index box of a box product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Finite(u32),
    /// Unbounded side; the factors `max(n − Σx, 1)` are eventually 1, so the
    /// product stays finite.
    Infinite,
}

impl From<u32> for Extent {
    fn from(a: u32) -> Self {
        Extent::Finite(a)
    }
}

/// Multiplicity of each factor value `v ≥ 2` in `C(dims; n)`.
fn factor_multiplicities(dims: &[Extent], n: i64) -> Result<Vec<(i64, u64)>> {
    if let Some(bad) = dims.iter().find(|d| **d == Extent::Finite(0)) {
        return Err(Error::InvalidArgument(format!("box product side {bad:?}")));
    }
    // Only sums s ≤ n − 2 give a factor n − s ≥ 2.
    let len = (n - 1).max(0) as usize;
    if len == 0 {
        return Ok(Vec::new());
    }
    let mut counts = vec![0u64; len];
    counts[0] = 1;
    for d in dims {
        let bound = match d {
            Extent::Finite(a) => (*a as usize).min(len),
            Extent::Infinite => len,
        };
        let mut next = vec![0u64; len];
        for (s, slot) in next.iter_mut().enumerate() {
            let lo = s.saturating_sub(bound - 1);
            let mut acc = 0u64;
            for &c in &counts[lo..=s] {
                acc = acc
                    .checked_add(c)
                    .ok_or_else(|| Error::BudgetExceeded("box product multiplicity overflow".into()))?;
            }
            *slot = acc;
        }
        counts = next;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, m)| *m > 0)
        .map(|(s, m)| (n - s as i64, m))
        .collect())
}

fn product_of_powers<S: Scalar>(factors: &[(i64, u64)], value: impl Fn(i64) -> S) -> S {
    factors.iter().fold(S::one(), |acc, &(v, m)| {
        let base = value(v);
        (0..m).fold(acc, |acc, _| acc * base.clone())
    })
}

/// `C(a_1,…,a_k; n) = ∏_{0 ≤ x_i < a_i} max(n − Σx_i, 1)`.
pub fn box_product(dims: &[Extent], n: i64) -> Result<BigInt> {
    let factors = factor_multiplicities(dims, n)?;
    Ok(factors.iter().fold(BigInt::one(), |acc, &(v, m)| {
        acc * num_traits::pow(BigInt::from(v), m as usize)
    }))
}

/// The q-analogue with each factor `v` replaced by `(v)_q`.
pub fn box_product_q(dims: &[Extent], n: i64) -> Result<QPoly> {
    let factors = factor_multiplicities(dims, n)?;
    Ok(product_of_powers(&factors, |v| q_integer(v).expect("factor ≥ 2")))
}

/// The quantum analogue with each factor `v` replaced by the bracket
/// `[v] = q^{(1−v)/2} (v)_q`.
pub fn box_product_bracket(dims: &[Extent], n: i64) -> Result<QPoly> {
    let factors = factor_multiplicities(dims, n)?;
    Ok(product_of_powers(&factors, |v| quantum_integer(v).expect("factor ≥ 2")))
}

pub fn finite(dims: &[u32]) -> Vec<Extent> {
    dims.iter().map(|&a| Extent::Finite(a)).collect()
}

// T(0,n) = n, T(k,0) = 1, T(k,n) = T(k−1,n)T(k,n−1), and 1 elsewhere.
// The table lives for one evaluation only.
fn simplex_generic<S: Scalar>(k: i64, n: i64, base: impl Fn(i64) -> S) -> S {
    if k < 0 || n <= 0 {
        return S::one();
    }
    let n = n as usize;
    let mut row: Vec<S> = (0..=n)
        .map(|m| if m == 0 { S::one() } else { base(m as i64) })
        .collect();
    for _ in 0..k {
        let mut next = Vec::with_capacity(n + 1);
        next.push(S::one());
        for m in 1..=n {
            let v = row[m].clone() * next[m - 1].clone();
            next.push(v);
        }
        row = next;
    }
    row[n].clone()
}

/// `T(k, n) = C(∞,…,∞; n)` via the inductive rule.
pub fn simplex_product(k: i64, n: i64) -> BigInt {
    simplex_generic(k, n, BigInt::from)
}

pub fn simplex_product_q(k: i64, n: i64) -> QPoly {
    simplex_generic(k, n, |m| q_integer(m).expect("m ≥ 1"))
}

/// `C(a,b,c; n)` by multiplicative inclusion-exclusion over simplex products:
/// `T(3,n) T(3,n−a−b) T(3,n−a−c) T(3,n−b−c) / (T(3,n−a) T(3,n−b) T(3,n−c) T(3,n−a−b−c))`.
pub fn box_product_by_simplices(dims: BoxDims, n: i64) -> Result<BigInt> {
    let (num, den) = inclusion_exclusion(dims, n, simplex_product);
    exact_quotient(&num, &den, "simplex quotient")
}

pub fn box_product_by_simplices_q(dims: BoxDims, n: i64) -> Result<QPoly> {
    let (num, den) = inclusion_exclusion(dims, n, simplex_product_q);
    num.checked_div(&den)
        .ok_or_else(|| Error::Invariant(format!("inexact simplex q-quotient for {dims}, n = {n}")))
}

fn inclusion_exclusion<S: Scalar>(dims: BoxDims, n: i64, t: impl Fn(i64, i64) -> S) -> (S, S) {
    let (a, b, c) = (dims.a as i64, dims.b as i64, dims.c as i64);
    let t3 = |m: i64| t(3, m);
    let num = t3(n) * t3(n - a - b) * t3(n - a - c) * t3(n - b - c);
    let den = t3(n - a) * t3(n - b) * t3(n - c) * t3(n - a - b - c);
    (num, den)
}

/// `H(n) = 1!·2!·…·(n−1)!`.
pub fn hyperfactorial(n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("hyperfactorial needs n ≥ 1".into()));
    }
    let mut fact = BigInt::one();
    let mut acc = BigInt::one();
    for i in 1..n {
        fact *= i;
        acc *= &fact;
    }
    Ok(acc)
}

/// `n!! = n(n−2)…1` for odd `n ≥ 1`.
pub fn odd_double_factorial(n: i64) -> Result<BigInt> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "odd double factorial needs odd n ≥ 1, got {n}"
        )));
    }
    Ok((1..=n).step_by(2).fold(BigInt::one(), |acc, i| acc * i))
}

fn exact_quotient(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    num.exact_div(den)
        .ok_or_else(|| Error::Invariant(format!("{what}: {num} is not divisible by {den}")))
}

/// MacMahon's quotient `C(a,b,c; d−1) / C(a,b,c; d−2)`.
pub fn count_pp_macmahon(dims: BoxDims) -> Result<BigInt> {
    let ext = finite(&[dims.a, dims.b, dims.c]);
    let d = dims.d() as i64;
    exact_quotient(
        &box_product(&ext, d - 1)?,
        &box_product(&ext, d - 2)?,
        "MacMahon quotient",
    )
}

/// Hyperfactorial form `H(a+b+c)H(a)H(b)H(c) / H(a+b)H(a+c)H(b+c)`.
pub fn count_pp_hyperfactorial(dims: BoxDims) -> Result<BigInt> {
    let h = hyperfactorial;
    let num = h(dims.d())? * h(dims.a)? * h(dims.b)? * h(dims.c)?;
    let den = h(dims.c_hat())? * h(dims.b_hat())? * h(dims.a_hat())?;
    exact_quotient(&num, &den, "hyperfactorial quotient")
}

/// The form that falls out of the D-map computation:
/// `C(ĉ,b̂,â; d−1) / (C(ĉ,b̂,â; d−2) · C(a,b;ĉ−1) C(a,c;b̂−1) C(b,c;â−1))`.
pub fn count_pp_character_form(dims: BoxDims) -> Result<BigInt> {
    let hats = finite(&[dims.c_hat(), dims.b_hat(), dims.a_hat()]);
    let d = dims.d() as i64;
    let num = box_product(&hats, d - 1)?;
    let den = box_product(&hats, d - 2)? * pp_horizontal_products(dims)?;
    exact_quotient(&num, &den, "character-form quotient")
}

/// `C(a,b;ĉ−1) C(a,c;b̂−1) C(b,c;â−1)`, the magnitude of every determinant
/// term of the classical plane-partition matrix.
pub fn pp_horizontal_products(dims: BoxDims) -> Result<BigInt> {
    Ok(box_product(&finite(&[dims.a, dims.b]), dims.c_hat() as i64 - 1)?
        * box_product(&finite(&[dims.a, dims.c]), dims.b_hat() as i64 - 1)?
        * box_product(&finite(&[dims.b, dims.c]), dims.a_hat() as i64 - 1)?)
}

pub fn pp_horizontal_products_q(dims: BoxDims) -> Result<QPoly> {
    Ok(box_product_q(&finite(&[dims.a, dims.b]), dims.c_hat() as i64 - 1)?
        * box_product_q(&finite(&[dims.a, dims.c]), dims.b_hat() as i64 - 1)?
        * box_product_q(&finite(&[dims.b, dims.c]), dims.a_hat() as i64 - 1)?)
}

/// `C(a,b;ĉ−1) C(a,c;b̂−1) C(b,c;â−1)` with bracket factors.
pub fn pp_horizontal_products_bracket(dims: BoxDims) -> Result<QPoly> {
    Ok(
        box_product_bracket(&finite(&[dims.a, dims.b]), dims.c_hat() as i64 - 1)?
            * box_product_bracket(&finite(&[dims.a, dims.c]), dims.b_hat() as i64 - 1)?
            * box_product_bracket(&finite(&[dims.b, dims.c]), dims.a_hat() as i64 - 1)?,
    )
}

/// `N(a,b,c)`: MacMahon's quotient, checked against the hyperfactorial form.
pub fn count_pp_formula(dims: BoxDims) -> Result<BigInt> {
    let macmahon = count_pp_macmahon(dims)?;
    let hyper = count_pp_hyperfactorial(dims)?;
    invariant!(
        macmahon == hyper,
        "N{dims}: MacMahon quotient {macmahon} != hyperfactorial form {hyper}"
    );
    Ok(macmahon)
}

/// `N(a,b,c)_q = T(2,d−1)_q T(2,a−1)_q T(2,b−1)_q T(2,c−1)_q / (T(2,ĉ−1)_q T(2,b̂−1)_q T(2,â−1)_q)`.
pub fn count_pp_formula_q(dims: BoxDims) -> Result<QPoly> {
    let t = |n: u32| simplex_product_q(2, n as i64 - 1);
    let num = t(dims.d()) * t(dims.a) * t(dims.b) * t(dims.c);
    let den = t(dims.c_hat()) * t(dims.b_hat()) * t(dims.a_hat());
    let n = num
        .checked_div(&den)
        .ok_or_else(|| Error::Invariant(format!("N{dims}_q: inexact q-quotient")))?;
    invariant!(
        n.is_polynomial() && n.coefficient(0).is_one() && n.degree() == Some(dims.volume() as i64),
        "N{dims}_q = {n} is not a polynomial with constant term 1 and degree abc"
    );
    Ok(n)
}

/// `N_{κτ}(a,a,2b) = √( N(a,a,2b) · (2a−1)!! (2b−1)!! / (2a+2b−1)!! )`.
pub fn count_tcpp_formula(a: u32, b: u32) -> Result<BigInt> {
    let dims = BoxDims::new(a, a, 2 * b)?;
    let num =
        count_pp_formula(dims)? * odd_double_factorial(2 * b as i64 - 1)? * odd_double_factorial(2 * a as i64 - 1)?;
    let den = odd_double_factorial(2 * (a + b) as i64 - 1)?;
    let radicand = BigRational::new(num, den);
    exact_integer_root(&radicand, 2).ok_or_else(|| {
        Error::Invariant(format!(
            "N_kt({a},{a},{}): radicand {radicand} is not a perfect square",
            2 * b
        ))
    })
}

/// Transpose-complementary count for an `a × a × c` box; zero for odd `c`.
pub fn count_tcpp_formula_for_height(a: u32, c: u32) -> Result<BigInt> {
    if c == 0 {
        return Err(Error::InvalidDims("height must be positive".into()));
    }
    if c % 2 == 1 {
        return Ok(BigInt::zero());
    }
    count_tcpp_formula(a, c / 2)
}

/// `N_ρ(a,a,a) = ∛( N(a,a,a) · ∏_{i=1}^{a} (3i−1)² / (3i−2)² )`.
pub fn count_cspp_formula(a: u32) -> Result<BigInt> {
    let mut radicand = BigRational::from_integer(count_pp_formula(BoxDims::cube(a)?)?);
    for i in 1..=a as i64 {
        radicand *= BigRational::new(BigInt::from((3 * i - 1).pow(2)), BigInt::from((3 * i - 2).pow(2)));
    }
    exact_integer_root(&radicand, 3)
        .ok_or_else(|| Error::Invariant(format!("N_rho({a},{a},{a}): radicand {radicand} is not a perfect cube")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    // Direct expansion of the defining product, used as an oracle.
    fn box_product_naive(dims: &[u32], n: i64) -> BigInt {
        fn rec(dims: &[u32], n: i64, sum: i64) -> BigInt {
            match dims.split_first() {
                None => BigInt::from((n - sum).max(1)),
                Some((&a, rest)) => (0..a as i64).map(|x| rec(rest, n, sum + x)).product(),
            }
        }
        rec(dims, n, 0)
    }

    #[test]
    fn box_product_examples() {
        let fig: i64 = [7, 6, 5, 4, 3, 2, 6, 5, 4, 3, 2, 1, 5, 4, 3, 2, 1, 1, 4, 3, 2, 1, 1, 1]
            .iter()
            .product();
        assert_eq!(box_product(&finite(&[6, 4]), 7).unwrap(), int(fig));
        assert_eq!(box_product(&finite(&[1, 1]), 1).unwrap(), int(1));
        assert_eq!(box_product(&finite(&[2, 2]), 3).unwrap(), int(12));
        assert!(box_product(&finite(&[0, 2]), 3).is_err());
    }

    #[test]
    fn box_product_matches_naive() {
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=3 {
                    for n in -2..=10 {
                        assert_eq!(
                            box_product(&finite(&[a, b, c]), n).unwrap(),
                            box_product_naive(&[a, b, c], n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_product(1, 4), int(24));
        assert_eq!(simplex_product(2, 3), int(12));
        assert_eq!(simplex_product(0, 5), int(5));
        assert_eq!(simplex_product(3, 0), int(1));
        assert_eq!(simplex_product(2, -4), int(1));
    }

    #[test]
    fn simplex_equals_infinite_box() {
        for k in 0..=4usize {
            for n in -1..=9 {
                let dims = vec![Extent::Infinite; k];
                assert_eq!(
                    simplex_product(k as i64, n),
                    box_product(&dims, n).unwrap(),
                    "T({k},{n})"
                );
            }
        }
    }

    #[test]
    fn hyperfactorial_examples() {
        assert_eq!(hyperfactorial(1).unwrap(), int(1));
        assert_eq!(hyperfactorial(4).unwrap(), int(12));
        for n in 1..=20 {
            assert_eq!(hyperfactorial(n).unwrap(), simplex_product(2, n as i64 - 1));
        }
        assert!(hyperfactorial(0).is_err());
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(odd_double_factorial(1).unwrap(), int(1));
        assert_eq!(odd_double_factorial(3).unwrap(), int(3));
        assert_eq!(odd_double_factorial(5).unwrap(), int(15));
        assert!(odd_double_factorial(4).is_err());
        assert!(odd_double_factorial(-1).is_err());
    }

    #[test]
    fn inclusion_exclusion_matches_box_product() {
        for (a, b, c) in [(1, 1, 1), (2, 3, 4), (4, 4, 4)] {
            let d = BoxDims::new(a, b, c).unwrap();
            for n in 0..=12 {
                assert_eq!(
                    box_product_by_simplices(d, n).unwrap(),
                    box_product(&finite(&[a, b, c]), n).unwrap()
                );
            }
        }
        let d = BoxDims::new(2, 2, 3).unwrap();
        assert_eq!(
            box_product_by_simplices_q(d, 7).unwrap(),
            box_product_q(&finite(&[2, 2, 3]), 7).unwrap()
        );
    }

    #[test]
    fn q_products() {
        assert_eq!(box_product_q(&finite(&[1, 1]), 2).unwrap().to_string(), "1 + q");
        assert_eq!(simplex_product_q(2, 2).to_string(), "1 + q");
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    for n in 0..=9 {
                        let dims = finite(&[a, b, c]);
                        assert_eq!(
                            box_product_q(&dims, n).unwrap().eval_at_one(),
                            box_product(&dims, n).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pp_formula_examples() {
        let n = |a, b, c| count_pp_formula(BoxDims::new(a, b, c).unwrap()).unwrap();
        assert_eq!(n(1, 1, 1), int(2));
        assert_eq!(n(1, 1, 2), int(3));
        assert_eq!(n(2, 2, 2), int(20));
        let nq = |a, b, c| count_pp_formula_q(BoxDims::new(a, b, c).unwrap()).unwrap().to_string();
        assert_eq!(nq(1, 1, 1), "1 + q");
        assert_eq!(nq(1, 1, 2), "1 + q + q^2");
    }

    #[test]
    fn symmetry_class_formulas() {
        assert_eq!(count_tcpp_formula(1, 1).unwrap(), int(1));
        assert_eq!(count_tcpp_formula(2, 1).unwrap(), int(2));
        for b in 1..=6 {
            // a = 1: the column is forced to height b. a = 2: off-diagonal
            // entries are b and the corner ranges over b..=2b.
            assert_eq!(count_tcpp_formula(1, b).unwrap(), int(1));
            assert_eq!(count_tcpp_formula(2, b).unwrap(), int(b as i64 + 1));
        }
        assert_eq!(count_cspp_formula(1).unwrap(), int(2));
        assert_eq!(count_cspp_formula(2).unwrap(), int(5));
        for a in 1..=4 {
            for b in 1..=3 {
                assert!(count_tcpp_formula_for_height(a, 2 * b - 1).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn box_dims_derived_fields() {
        let d = BoxDims::new(2, 3, 5).unwrap();
        assert_eq!(d.a_hat() + d.b_hat() + d.c_hat(), 2 * d.d());
        assert_eq!((d.a_hat(), d.b_hat(), d.c_hat(), d.d()), (8, 7, 5, 10));
        assert!(BoxDims::new(0, 1, 1).is_err());
    }
}
