//! Polynomials of degree <= 2 in the formal coupling `a` with exact rational
//! coefficients. A single Dunkl action produces degree <= 1; entries of the
//! squared-and-summed operator reach degree 2.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct APoly {
    c: [Rational64; 3],
}

impl APoly {
    pub fn zero() -> Self {
        Self {
            c: [Rational64::zero(); 3],
        }
    }

    pub fn constant(c0: impl Into<Rational64>) -> Self {
        let mut p = Self::zero();
        p.c[0] = c0.into();
        p
    }

    /// c1 * a
    pub fn linear(c1: impl Into<Rational64>) -> Self {
        let mut p = Self::zero();
        p.c[1] = c1.into();
        p
    }

    pub fn new(c0: impl Into<Rational64>, c1: impl Into<Rational64>, c2: impl Into<Rational64>) -> Self {
        Self {
            c: [c0.into(), c1.into(), c2.into()],
        }
    }

    pub fn coeffs(&self) -> &[Rational64; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational64::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            c: [
                self.c[0] + rhs.c[0],
                self.c[1] + rhs.c[1],
                self.c[2] + rhs.c[2],
            ],
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            c: [
                self.c[0] - rhs.c[0],
                self.c[1] - rhs.c[1],
                self.c[2] - rhs.c[2],
            ],
        }
    }

    /// Exact product. Panics if the result would exceed degree 2; the only
    /// products formed in this crate are (degree <= 1) x (degree <= 1).
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut full = [Rational64::zero(); 5];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        assert!(
            full[3].is_zero() && full[4].is_zero(),
            "APoly product exceeds degree 2"
        );
        Self {
            c: [full[0], full[1], full[2]],
        }
    }

    pub fn eval_rational(&self, a: Rational64) -> Rational64 {
        (self.c[2] * a + self.c[1]) * a + self.c[0]
    }

    pub fn eval_f64(&self, a: f64) -> f64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        (f(self.c[2]) * a + f(self.c[1])) * a + f(self.c[0])
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*a + {}*a^2", self.c[0], self.c[1], self.c[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = APoly::new(-2, -4, 0); // -2 - 4a
        let sq = p.mul(&p);
        assert_eq!(sq, APoly::new(4, 16, 16));
        assert_eq!(sq.eval_rational(Rational64::new(1, 2)), Rational64::from(16));
        assert!((sq.eval_f64(0.5) - 16.0).abs() < 1e-14);
    }

    #[test]
    #[should_panic(expected = "exceeds degree 2")]
    fn degree_overflow_is_rejected() {
        let q = APoly::new(0, 0, 1);
        let _ = q.mul(&APoly::linear(1));
    }
}
