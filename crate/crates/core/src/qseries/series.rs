//! Truncated power series in q with big-integer coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::QPolynomial;

/// A power series in q truncated at a fixed cutoff: coefficients for the
/// exponents 0..=cutoff, all arithmetic closed at that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(cutoff: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, exp: usize) -> &BigInt {
        &self.coeffs[exp]
    }

    pub fn add_term(&mut self, exp: usize, c: BigInt) {
        if exp < self.coeffs.len() {
            self.coeffs[exp] += c;
        }
    }

    pub fn from_poly(p: &QPolynomial, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        for (e, c) in p.terms() {
            if e <= cutoff as u64 {
                s.coeffs[e as usize] = c.clone();
            }
        }
        s
    }

    /// Geometric series 1/(1 - q^k) = Σ_{j≥0} q^{jk}, truncated.
    pub fn geometric_inv(k: u64, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        let mut e = 0u64;
        while e <= cutoff as u64 {
            s.coeffs[e as usize] = BigInt::one();
            e += k;
        }
        s
    }

    /// Geometric tail q^k/(1 - q^k) = Σ_{j≥1} q^{jk}, truncated.
    pub fn geometric_frac(k: u64, cutoff: usize) -> Self {
        let mut s = Self::geometric_inv(k, cutoff);
        s.coeffs[0] = BigInt::zero();
        s
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff(), rhs.cutoff());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff(), rhs.cutoff());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff(), rhs.cutoff());
        let n = self.coeffs.len();
        let mut out = Self::zero(n - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; requires unit constant term.
    pub fn inverse(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        let n = self.coeffs.len();
        let mut inv = Self::zero(n - 1);
        inv.coeffs[0] = BigInt::one();
        for i in 1..n {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv.coeffs[i - j];
                }
            }
            inv.coeffs[i] = -acc;
        }
        Some(inv)
    }

    /// First exponent at which the two series differ, if any.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<usize> {
        assert_eq!(self.cutoff(), rhs.cutoff());
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .position(|(a, b)| a != b)
    }

    /// First exponent (≤ cutoff) at which the series differs from the
    /// polynomial, if any.
    pub fn first_mismatch_poly(&self, p: &QPolynomial) -> Option<usize> {
        (0..self.coeffs.len()).find(|&e| self.coeffs[e] != p.coeff(e as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_times_denominator_is_one() {
        let cutoff = 30;
        let inv = QSeries::geometric_inv(4, cutoff);
        let denom = QSeries::from_poly(&QPolynomial::one_minus_q(4), cutoff);
        assert_eq!(inv.mul(&denom), QSeries::one(cutoff));
    }

    #[test]
    fn inverse_roundtrip() {
        let cutoff = 25;
        let mut s = QSeries::one(cutoff);
        s.add_term(3, BigInt::from(2));
        s.add_term(5, BigInt::from(-7));
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), QSeries::one(cutoff));
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let mut s = QSeries::zero(5);
        s.add_term(0, BigInt::from(2));
        assert!(s.inverse().is_none());
    }
}
