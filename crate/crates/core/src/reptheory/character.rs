use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, RatPoly, Var, QUARTERS};
use crate::products::BoxDims;

use super::classes::pp_factors;

/// The character of a representation: the Laurent polynomial in `t` whose
/// coefficient of `t^w` is the dimension of the weight-`w` space.
#[derive(Clone, Debug, PartialEq)]
pub struct Character(pub RatPoly);

impl Character {
    pub fn zero() -> Self {
        Character(RatPoly::zero_in(Var::T))
    }

    pub fn poly(&self) -> &RatPoly {
        &self.0
    }

    pub fn add(&self, rhs: &Character) -> Character {
        Character(self.0.clone() + rhs.0.clone())
    }

    pub fn mul(&self, rhs: &Character) -> Character {
        Character(&self.0 * &rhs.0)
    }

    pub fn scale(&self, k: BigRational) -> Character {
        Character(self.0.map_coefficients(|c| c * &k))
    }

    /// `ch(t) ↦ ch(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Character {
        Character(self.0.substitute_power(k))
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.is_palindromic()
    }

    /// `ch(1)`, the dimension.
    pub fn dim(&self) -> BigRational {
        self.0.eval_at_one()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `ch(V_n) = t^n + t^{n−2} + … + t^{−n}`.
pub fn irrep_character(n: u32) -> Character {
    let n = n as i64;
    Character(RatPoly::from_terms(
        Var::T,
        (0..=n).map(|r| ((n - 2 * r) * QUARTERS, BigRational::one())),
    ))
}

/// Character of `V_{n_1} ⊗ … ⊗ V_{n_k}`.
pub fn character(factors: &[u32]) -> Character {
    factors
        .iter()
        .fold(Character(RatPoly::one().with_var(Var::T)), |acc, &n| {
            acc.mul(&irrep_character(n))
        })
}

/// Character of the `−1`-eigenspace of the swap of the last two factors in
/// the representation attached to the `(a, a, 2b)` box.
pub fn tcpp_character(a: u32, b: u32) -> Result<Character> {
    let dims = BoxDims::new(a, a, 2 * b)?;
    let (a, b) = (a as i64, b as i64);
    let mut fixed = RatPoly::zero_in(Var::T);
    for i in 1..=a + 2 * b {
        for k in 1..=2 * a {
            fixed = fixed + RatPoly::monomial(Var::T, BigRational::one(), 4 * i + 2 * k - 4 * a - 4 * b - 3);
        }
    }
    let diff = character(&pp_factors(dims)).0 - fixed;
    Ok(Character(diff).scale(rat(1, 2)))
}

/// Character of the invariants of the cyclic shift on `V_{2a−1}^{⊗3}`.
pub fn cspp_character(a: u32) -> Result<Character> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be positive".into()));
    }
    let n = 2 * a - 1;
    let twisted = irrep_character(n).substitute_power(3).scale(rat(2, 1));
    Ok(character(&[n, n, n]).add(&twisted).scale(rat(1, 3)))
}

/// `ch(Λ³ V_n) = (χ(t)³ − 3 χ(t) χ(t²) + 2 χ(t³)) / 6`.
pub fn wedge_cube_character(n: u32) -> Character {
    let chi = irrep_character(n);
    let cube = chi.mul(&chi).mul(&chi);
    let mixed = chi.mul(&chi.substitute_power(2)).scale(rat(-3, 1));
    let twisted = chi.substitute_power(3).scale(rat(2, 1));
    cube.add(&mixed).add(&twisted).scale(rat(1, 6))
}

/// `V_n ⊗ V_k ≅ V_{n+k} ⊕ V_{n+k−2} ⊕ … ⊕ V_{|n−k|}`.
pub fn clebsch_gordan(n: u32, k: u32) -> Vec<u32> {
    let lo = n.abs_diff(k);
    (0..=n.min(k)).map(|s| n + k - 2 * s).filter(|&m| m >= lo).collect()
}

/// `D(t^{2n−1}) = n²/(n−1)²` for `n > 1`, and `1` for every other odd
/// exponent.
pub fn d_monomial(exponent: i64) -> Result<BigRational> {
    if exponent.rem_euclid(2) != 1 {
        return Err(Error::InvalidArgument(format!(
            "D is defined on odd exponents only, got {exponent}"
        )));
    }
    let n = (exponent + 1) / 2;
    if n > 1 {
        Ok(BigRational::new(BigInt::from(n * n), BigInt::from((n - 1) * (n - 1))))
    } else {
        Ok(BigRational::one())
    }
}

/// The multiplicative extension of `D` to integer combinations of odd
/// monomials.
pub fn d_map(ch: &Character) -> Result<BigRational> {
    let mut out = BigRational::one();
    for (quarters, coef) in ch.0.terms() {
        if quarters % QUARTERS != 0 {
            return Err(Error::InvalidArgument(format!("fractional exponent in {ch}")));
        }
        if !coef.is_integer() {
            return Err(Error::InvalidArgument(format!("non-integer coefficient in {ch}")));
        }
        let base = d_monomial(quarters / QUARTERS)?;
        let k = coef
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidArgument("multiplicity too large".into()))?;
        let factor = if k < 0 { base.recip() } else { base };
        for _ in 0..k.abs() {
            out *= &factor;
        }
    }
    debug_assert!(!out.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn sum(ns: &[u32]) -> Character {
        ns.iter()
            .fold(Character::zero(), |acc, &m| acc.add(&irrep_character(m)))
    }

    #[test]
    fn small_characters() {
        assert_eq!(irrep_character(2).to_string(), "t^-2 + 1 + t^2");
        assert_eq!(character(&[1, 1]), sum(&[2, 0]));
        assert_eq!(irrep_character(1).substitute_power(3).to_string(), "t^-3 + t^3");
        let a1 = cspp_character(1).unwrap();
        let chi = irrep_character(1);
        let expect = chi
            .mul(&chi)
            .mul(&chi)
            .add(&chi.substitute_power(3).scale(rat(2, 1)))
            .scale(rat(1, 3));
        assert_eq!(a1, expect);
        assert_eq!(a1.dim(), rat(4, 1));
    }

    #[test]
    fn clebsch_gordan_decompositions() {
        assert_eq!(clebsch_gordan(1, 1), vec![2, 0]);
        assert_eq!(clebsch_gordan(5, 0), vec![5]);
        assert_eq!(clebsch_gordan(2, 3), vec![5, 3, 1]);
        for n in 0..=10 {
            for k in 0..=10 {
                assert_eq!(character(&[n, k]), sum(&clebsch_gordan(n, k)), "{n} {k}");
            }
        }
    }

    #[test]
    fn d_map_values() {
        assert_eq!(d_map(&irrep_character(1)).unwrap(), rat(1, 1));
        let t3 = Character(RatPoly::monomial(Var::T, BigRational::one(), 3));
        assert_eq!(d_map(&t3).unwrap(), rat(4, 1));
        for n in 1..=10u32 {
            let v = d_map(&irrep_character(2 * n - 1)).unwrap();
            assert_eq!(v, rat((n * n) as i64, 1));
        }
        assert!(d_map(&irrep_character(2)).is_err());
        assert!(d_monomial(4).is_err());
    }

    #[test]
    fn subspace_characters_are_genuine() {
        for a in 1..=4 {
            for b in 1..=3 {
                let ch = tcpp_character(a, b).unwrap();
                assert!(ch.is_palindromic());
                assert!(ch.0.terms().all(|(_, c)| c.is_integer() && !c.is_negative()));
            }
            assert!(cspp_character(a).unwrap().is_palindromic());
        }
        // Λ³ V_3 is 4-dimensional with weights ±3, ±1.
        assert_eq!(wedge_cube_character(3).to_string(), "t^-3 + t^-1 + t + t^3");
    }

    proptest! {
        #[test]
        fn characters_multiply(n in 0u32..9, k in 0u32..9, m in 0u32..5) {
            prop_assert_eq!(character(&[n, k, m]), character(&[n]).mul(&character(&[k, m])));
            prop_assert!(character(&[n, k, m]).is_palindromic());
        }

        #[test]
        fn d_is_a_homomorphism(n in 0u32..6, k in 0u32..6) {
            let (x, y) = (irrep_character(2 * n + 1), irrep_character(2 * k + 1));
            prop_assert_eq!(d_map(&x.add(&y)).unwrap(), d_map(&x).unwrap() * d_map(&y).unwrap());
        }
    }
}
