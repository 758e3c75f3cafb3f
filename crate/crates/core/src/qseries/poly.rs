//! Exact polynomials in q with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A polynomial in q with exact big-integer coefficients, kept in canonical
/// form (zero coefficients are never stored). This is the currency for
/// partition functions: a finite spectrum of nonnegative integer energies
/// E_1, ..., E_d corresponds to Σ_j q^{E_j}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c.into())
    }

    pub fn monomial(exp: u64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// 1 - q^k
    pub fn one_minus_q(k: u64) -> Self {
        let mut p = Self::one();
        p.add_term(k, BigInt::from(-1));
        p
    }

    /// 1 + q^k
    pub fn one_plus_q(k: u64) -> Self {
        let mut p = Self::one();
        p.add_term(k, BigInt::one());
        p
    }

    pub fn add_term(&mut self, exp: u64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at q = 1, i.e. the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, c0) in self.terms() {
            out.add_term(e, c0 * c);
        }
        out
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: u64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e + k, c.clone());
        }
        out
    }

    /// Exact division by a divisor with leading coefficient 1. Returns `None`
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if !divisor.coeff(dd).is_one() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let lead = rem.coeff(rd);
            let shift = rd - dd;
            quot.add_term(shift, lead.clone());
            for (e, c) in divisor.terms() {
                rem.add_term(e + shift, -(c * &lead));
            }
        }
        Some(quot)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: Self) -> QPolynomial {
        QPolynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: Self) -> QPolynomial {
        QPolynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: Self) -> QPolynomial {
        QPolynomial::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(pairs: &[(u64, i64)]) -> QPolynomial {
        let mut p = QPolynomial::zero();
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let mut p = QPolynomial::monomial(3, 5);
        p.add_term(3, BigInt::from(-5));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn division_by_one_plus_q_power() {
        // (1 + q^3)(2q^6 + 4q^7 + 2q^10) expands and divides back exactly.
        let z = poly(&[(6, 2), (7, 4), (10, 2)]);
        let d = QPolynomial::one_plus_q(3);
        let prod = z.mul(&d);
        assert_eq!(prod.div_exact(&d).unwrap(), z);
        // A perturbed numerator must be rejected.
        let bad = prod.add(&QPolynomial::monomial(0, 1));
        assert!(bad.div_exact(&d).is_none());
    }

    proptest! {
        #[test]
        fn ring_laws(a in proptest::collection::vec((0u64..12, -9i64..9), 0..6),
                     b in proptest::collection::vec((0u64..12, -9i64..9), 0..6),
                     c in proptest::collection::vec((0u64..12, -9i64..9), 0..6)) {
            let (a, b, c) = (poly(&a), poly(&b), poly(&c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn exact_division_roundtrip(a in proptest::collection::vec((0u64..10, -9i64..9), 0..6),
                                    k in 1u64..8) {
            let a = poly(&a);
            let d = QPolynomial::one_plus_q(k);
            prop_assert_eq!(a.mul(&d).div_exact(&d).unwrap(), a);
        }
    }
}
