//! Dense univariate polynomials over the integers.
//!
//! These are the inner coefficients of [`QtPoly`](super::QtPoly): a bivariate
//! polynomial is stored as a polynomial in `t` whose coefficients are `UPoly`
//! values in `q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial `c[0] + c[1] x + ...` with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^e`
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Divide by `x^e`; the low coefficients must vanish.
    pub fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(e).all(|c| c.is_zero()));
        UPoly {
            coeffs: self.coeffs.iter().skip(e).cloned().collect(),
        }
    }

    /// Substitute `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        UPoly { coeffs }
    }

    /// Integer content (non-negative gcd of the coefficients).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d` over `Z[x]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        if dd == 0 {
            let c = &d.coeffs[0];
            if self.coeffs.iter().all(|a| (a % c).is_zero()) {
                return Some(self.div_scalar_exact(c));
            }
            return None;
        }
        let lc = d.lc()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &qk * dc;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(UPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("pseudo-remainder by zero");
        let lc = d.lc().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.lc().unwrap().clone();
            let scaled = rem.scale(&lc);
            let sub = d.scale(&top).shift(rd - dd);
            rem = &scaled - &sub;
        }
        rem
    }

    /// Greatest common divisor over `Z[x]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        // Common powers of x are removed up front; cheap and frequent here.
        let low = a.low_degree().unwrap().min(b.low_degree().unwrap());
        let (mut a, mut b) = (a.unshift(low), b.unshift(low));
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = UPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c).shift(low)
    }

    fn primitive_with_content(&self) -> UPoly {
        if self.lc().is_some_and(|c| c.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *a += b;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        UPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1-q^2) and (1-q^3) share (1-q)
        let a = p(&[1, 0, -1]);
        let b = p(&[1, 0, 0, -1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[6, 6]);
        let b = p(&[4, 4]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
    }

    #[test]
    fn gcd_with_power_of_x() {
        let a = p(&[0, 0, 1, 1]);
        let b = p(&[0, 1]);
        assert_eq!(a.gcd(&b), p(&[0, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 0, 0, -1]);
        let d = p(&[1, -1]);
        assert_eq!(a.div_exact(&d), Some(p(&[1, 1, 1])));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[1, 0, 1])), None);
        assert_eq!(p(&[3, 1]).div_exact(&p(&[2])), None);
    }
}
