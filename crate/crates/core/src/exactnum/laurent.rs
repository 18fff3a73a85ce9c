//! Laurent polynomials in one formal variable with exponents in `¼ℤ`.
//!
//! The quantum tensor product multiplies by `q^{H/4}`, so quarter exponents
//! do occur in intermediate matrix entries even though every final count is
//! an honest polynomial in `q`. Exponents are stored as integers counting
//! quarters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exponent denominator: keys of a [`LaurentPoly`] are multiples of `1/4`.
pub const QUARTERS: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Var {
    #[default]
    Q,
    T,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Q => 'q',
            Var::T => 't',
        }
    }
}

/// Sparse Laurent polynomial `Σ c_e x^{e/4}` with coefficients in `C`.
///
/// No zero coefficient is ever stored. Constants are compatible with either
/// variable tag; mixing two non-constant polynomials in different variables
/// is a programming error.
#[derive(Clone)]
pub struct LaurentPoly<C> {
    var: Var,
    terms: BTreeMap<i64, C>,
}

pub type QPoly = LaurentPoly<BigInt>;
pub type RatPoly = LaurentPoly<BigRational>;

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero_in(var: Var) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial_quarters(Var::Q, c, 0)
    }

    /// `c · x^{quarters/4}`.
    pub fn monomial_quarters(var: Var, c: C, quarters: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(quarters, c);
        }
        LaurentPoly { var, terms }
    }

    /// `c · x^{e}` for an integer exponent.
    pub fn monomial(var: Var, c: C, e: i64) -> Self {
        Self::monomial_quarters(var, c, e * QUARTERS)
    }

    /// `x^{halves/2}` with unit coefficient.
    pub fn power_halves(var: Var, halves: i64) -> Self {
        Self::monomial_quarters(var, C::one(), halves * 2)
    }

    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero_in(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Terms as `(exponent in quarters, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_quarters(&self, quarters: i64) -> C {
        self.terms.get(&quarters).cloned().unwrap_or_else(C::zero)
    }

    pub fn coefficient(&self, e: i64) -> C {
        self.coefficient_quarters(e * QUARTERS)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn min_quarters(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_quarters(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is a non-negative integer.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&e| e >= 0 && e % QUARTERS == 0)
    }

    /// Degree as an integer, when the exponents are integral.
    pub fn degree(&self) -> Option<i64> {
        let max = self.max_quarters()?;
        (max % QUARTERS == 0).then_some(max / QUARTERS)
    }

    fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn joint_var(&self, other: &Self) -> Var {
        if self.is_constant() {
            other.var
        } else {
            debug_assert!(
                other.is_constant() || other.var == self.var,
                "mixing Laurent polynomials in different variables"
            );
            self.var
        }
    }

    /// Sum of coefficients: the specialization `x = 1`.
    pub fn eval_at_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Substitution `x ↦ x^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Substitution `x ↦ x^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Multiply by `x^{quarters/4}`.
    pub fn shift_quarters(&self, quarters: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + quarters, c.clone())).collect(),
        }
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.var, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one().with_var(self.var);
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Exact division in `C[x^{±1/4}]`. Returns `None` if the quotient is not
    /// a Laurent polynomial over `C`.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        let var = self.joint_var(divisor);
        let d_lo = divisor.min_quarters()?;
        if self.is_zero() {
            return Some(Self::zero_in(var));
        }
        let d_hi = divisor.max_quarters().unwrap();
        let d_lead = divisor.terms[&d_hi].clone();
        let mut rem = self.clone();
        let mut quotient = Self::zero_in(var);
        // Long division from the top; the remainder's low end must never fall
        // below what the divisor can still cancel.
        let lo_limit = self.min_quarters().unwrap();
        while let Some(r_hi) = rem.max_quarters() {
            let shift = r_hi - d_hi;
            if shift + d_lo < lo_limit {
                return None;
            }
            let coeff = rem.terms[&r_hi].exact_div(&d_lead)?;
            for (e, c) in divisor.terms.iter() {
                rem.add_term(e + shift, -(c.clone() * coeff.clone()));
            }
            debug_assert!(!rem.terms.contains_key(&r_hi));
            quotient.add_term(shift, coeff);
        }
        Some(quotient)
    }
}

impl<C: Scalar + Signed> LaurentPoly<C> {
    /// The quantum integer `[n] = (x^{n/2} − x^{−n/2}) / (x^{1/2} − x^{−1/2})`,
    /// i.e. `x^{(1−n)/2} + x^{(3−n)/2} + … + x^{(n−1)/2}`; `[−n] = −[n]`.
    pub fn quantum_integer(var: Var, n: i64) -> Self {
        let m = n.abs();
        let sign = if n < 0 { -C::one() } else { C::one() };
        Self::from_terms(var, (0..m).map(|k| ((1 - m + 2 * k) * 2, sign.clone())))
    }
}

impl LaurentPoly<BigRational> {
    /// Coefficients as integers, if they all are.
    pub fn to_integer_poly(&self) -> Option<QPoly> {
        let mut out = QPoly::zero_in(self.var);
        for (e, c) in self.terms() {
            if !c.is_integer() {
                return None;
            }
            out.add_term(e, c.to_integer());
        }
        Some(out)
    }
}

impl LaurentPoly<BigInt> {
    pub fn to_rational_poly(&self) -> RatPoly {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }
}

/// `[n]` in `q`. Rejects negative `n`.
pub fn quantum_integer(n: i64) -> Result<QPoly> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("quantum integer of negative n = {n}")));
    }
    Ok(QPoly::quantum_integer(Var::Q, n))
}

/// `(n)_q = 1 + q + … + q^{n−1}` for `n ≥ 1`.
pub fn q_integer(n: i64) -> Result<QPoly> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("q-integer of n = {n} < 1")));
    }
    Ok(QPoly::from_terms(Var::Q, (0..n).map(|k| (k * QUARTERS, BigInt::one()))))
}

pub fn poly_eval_at_one<C: Scalar>(p: &LaurentPoly<C>) -> C {
    p.eval_at_one()
}

pub fn poly_substitute_power<C: Scalar>(p: &LaurentPoly<C>, k: i64) -> Result<LaurentPoly<C>> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("substitution power {k} < 1")));
    }
    Ok(p.substitute_power(k))
}

impl<C: Scalar> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.is_constant() || other.is_constant() || self.var == other.var)
    }
}

impl<C: Scalar + Eq> Eq for LaurentPoly<C> {}

impl<C: Scalar> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self::zero_in(Var::Q)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Scalar> Add for LaurentPoly<C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self.var = self.joint_var(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Scalar> Sub for LaurentPoly<C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Scalar> Neg for LaurentPoly<C> {
    type Output = Self;

    fn neg(self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Scalar> Mul for LaurentPoly<C> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Scalar> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero_in(self.joint_var(rhs));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Scalar + Signed + fmt::Display> Scalar for LaurentPoly<C> {
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.checked_div(divisor)
    }

    fn quantum_integer(n: i64) -> Option<Self> {
        Some(LaurentPoly::quantum_integer(Var::Q, n))
    }

    fn q_power_quarters(quarters: i64) -> Option<Self> {
        Some(Self::monomial_quarters(Var::Q, C::one(), quarters))
    }

    fn to_canonical(&self) -> String {
        self.to_string()
    }
}

fn format_exponent(quarters: i64) -> String {
    let g = quarters.gcd(&QUARTERS);
    let (num, den) = (quarters / g, QUARTERS / g);
    if den == 1 {
        num.to_string()
    } else {
        format!("({num}/{den})")
    }
}

impl<C: Scalar + Signed + fmt::Display> fmt::Display for LaurentPoly<C> {
    /// Canonical form: terms in ascending exponent order, e.g.
    /// `q^-1 + 1 + q`, `2*q^(1/2) - q^3`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if *e == QUARTERS {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{}", format_exponent(*e))?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar + Signed + fmt::Display> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_exponent(s: &str) -> Option<i64> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (n, d) = inner.split_once('/')?;
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d <= 0 || QUARTERS % d != 0 {
            return None;
        }
        Some(n * (QUARTERS / d))
    } else {
        s.parse::<i64>().ok().map(|e| e * QUARTERS)
    }
}

impl<C> FromStr for LaurentPoly<C>
where
    C: Scalar + Signed + fmt::Display + FromStr,
{
    type Err = Error;

    /// Parses the canonical form produced by `Display`. The variable is
    /// whichever of `q`/`t` appears (default `q`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed Laurent polynomial: {s:?}"));
        let s = s.trim();
        let var = if s.contains('t') { Var::T } else { Var::Q };
        let x = var.symbol();
        let mut out = Self::zero_in(var);
        if s == "0" {
            return Ok(out);
        }
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let mut sign = C::one();
        let mut expect_term = true;
        for tok in tokens {
            if !expect_term {
                sign = match tok {
                    "+" => C::one(),
                    "-" => -C::one(),
                    _ => return Err(bad()),
                };
                expect_term = true;
                continue;
            }
            let (tok, s0) = match tok.strip_prefix('-') {
                Some(rest) => (rest, -sign.clone()),
                None => (tok, sign.clone()),
            };
            let (coef, mono) = match tok.split_once('*') {
                Some((c, m)) => (Some(c), Some(m)),
                None if tok.starts_with(x) => (None, Some(tok)),
                None => (Some(tok), None),
            };
            let c = match coef {
                Some(c) => c.parse::<C>().map_err(|_| bad())?,
                None => C::one(),
            };
            let e = match mono {
                None => 0,
                Some(m) => {
                    let rest = m.strip_prefix(x).ok_or_else(bad)?;
                    if rest.is_empty() {
                        QUARTERS
                    } else {
                        parse_exponent(rest.strip_prefix('^').ok_or_else(bad)?).ok_or_else(bad)?
                    }
                }
            };
            out.add_term(e, s0 * c);
            expect_term = false;
        }
        if expect_term {
            return Err(bad());
        }
        Ok(out)
    }
}

impl<C: Scalar + Signed + fmt::Display> Serialize for LaurentPoly<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de, C> Deserialize<'de> for LaurentPoly<C>
where
    C: Scalar + Signed + fmt::Display + FromStr,
{
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::{int, rat};
    use proptest::prelude::*;

    fn q(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integer_examples() {
        assert!(quantum_integer(0).unwrap().is_zero());
        assert_eq!(quantum_integer(1).unwrap(), QPoly::one());
        assert_eq!(quantum_integer(3).unwrap(), q("q^-1 + 1 + q"));
        assert_eq!(quantum_integer(2).unwrap().to_string(), "q^(-1/2) + q^(1/2)");
        assert!(quantum_integer(-1).is_err());
    }

    #[test]
    fn quantum_integer_relates_to_q_integer() {
        // [n] = q^{(1-n)/2} (n)_q
        for n in 1..12 {
            let lhs = quantum_integer(n).unwrap();
            let rhs = q_integer(n).unwrap().shift_quarters((1 - n) * 2);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(1).unwrap(), QPoly::one());
        assert_eq!(q_integer(2).unwrap(), q("1 + q"));
        assert_eq!(q_integer(3).unwrap().to_string(), "1 + q + q^2");
        assert!(q_integer(0).is_err());
        assert!(q_integer(-3).is_err());
    }

    #[test]
    fn eval_at_one() {
        assert_eq!(poly_eval_at_one(&q("1 + q + q^2")), int(3));
        assert_eq!(poly_eval_at_one(&QPoly::zero()), int(0));
        assert_eq!(poly_eval_at_one(&quantum_integer(5).unwrap()), int(5));
    }

    #[test]
    fn substitute_power() {
        let p: QPoly = "t^-1 + t".parse().unwrap();
        let cubed = poly_substitute_power(&p, 3).unwrap();
        assert_eq!(cubed.to_string(), "t^-3 + t^3");
        let five = QPoly::from_i64(5);
        assert_eq!(poly_substitute_power(&five, 7).unwrap(), five);
        assert!(poly_substitute_power(&p, 0).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "q",
            "-q^-1 + 1",
            "2*q^(1/2) - q^3",
            "q^(-3/4) + 7*q^(5/4)",
            "-3 - 2*q + q^10",
        ] {
            assert_eq!(q(s).to_string(), s, "round trip of {s}");
        }
        let r: RatPoly = "1/3*t^-1 + 2/3*t".parse().unwrap();
        assert_eq!(r.coefficient(1), rat(2, 3));
        assert_eq!(r.to_string(), "1/3*t^-1 + 2/3*t");
        assert!("q +".parse::<QPoly>().is_err());
        assert!("q^x".parse::<QPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = q("1 + q + q^2");
        let b = q("1 - q");
        let prod = &a * &b;
        assert_eq!(prod, q("1 - q^3"));
        assert_eq!(prod.checked_div(&b), Some(a.clone()));
        assert_eq!(prod.checked_div(&a), Some(b.clone()));
        assert_eq!(a.checked_div(&b), None);
        assert_eq!(a.checked_div(&QPoly::zero()), None);
        // Laurent units divide everything.
        let unit = QPoly::monomial_quarters(Var::Q, int(1), -3);
        assert_eq!(a.checked_div(&unit).unwrap(), a.shift_quarters(3));
        // integer coefficients: 1 / 2 does not exist over Z
        assert_eq!(QPoly::one().checked_div(&QPoly::from_i64(2)), None);
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-12i64..12, -5i64..6), 0..6)
            .prop_map(|ts| QPoly::from_terms(Var::Q, ts.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), r in arb_poly(), s in arb_poly()) {
            prop_assert_eq!((p.clone() + r.clone()) + s.clone(), p.clone() + (r.clone() + s.clone()));
            prop_assert_eq!(&p * &(r.clone() + s.clone()), &p * &r + &p * &s);
            prop_assert_eq!(&p * &r, &r * &p);
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        }

        #[test]
        fn division_inverts_multiplication(p in arb_poly(), r in arb_poly()) {
            prop_assume!(!r.is_zero());
            prop_assert_eq!((&p * &r).checked_div(&r), Some(p));
        }

        #[test]
        fn canonical_text_round_trips(p in arb_poly()) {
            let s = p.to_string();
            prop_assert_eq!(s.parse::<QPoly>().unwrap(), p);
        }
    }

    #[test]
    fn quantum_integers_palindromic_and_specialize() {
        for n in 0..=100 {
            let b = quantum_integer(n).unwrap();
            assert!(b.is_palindromic());
            assert_eq!(b.eval_at_one(), int(n));
        }
    }
}
