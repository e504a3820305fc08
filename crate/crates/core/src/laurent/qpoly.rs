use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{ExactScalar, QtPoly, UPoly};

/// Laurent polynomial in `q` alone: `sum coeffs[i] q^(low + i)`.
///
/// The product engine returns constant terms in this form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// Trims zeros at both ends.
    pub fn new(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        QPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn from_i64s(low: i64, cs: &[i64]) -> Self {
        Self::new(low, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if e < self.low {
            return BigInt::zero();
        }
        self.coeffs.get((e - self.low) as usize).cloned().unwrap_or_default()
    }

    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QPoly {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        if self.low >= 0 {
            acc * num_traits::pow(q.clone(), self.low as usize)
        } else {
            acc / num_traits::pow(q.clone(), (-self.low) as usize)
        }
    }

    pub fn to_scalar(&self) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let body = ExactScalar::from_poly(QtPoly::from_q(UPoly::from_coeffs(self.coeffs.clone())));
        if self.low == 0 {
            body
        } else {
            &body * &ExactScalar::q_pow(self.low)
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.low - low) as usize + i] += c;
        }
        QPoly::new(low, out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(self.low + rhs.low, out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_to_scalar() {
        let p = QPoly::from_i64s(-1, &[1, 0, 2]);
        assert_eq!(p.to_scalar().to_string(), "(1 + 2*q^2)/q");
        assert_eq!((&p * &QPoly::from_i64s(1, &[1])).to_string(), "1 + 2*q^2");
    }

    #[test]
    fn trims_both_ends() {
        let p = QPoly::from_i64s(0, &[0, 0, 3, 0]);
        assert_eq!((p.low(), p.high()), (2, 2));
        assert!(QPoly::from_i64s(5, &[0, 0]).is_zero());
    }
}
