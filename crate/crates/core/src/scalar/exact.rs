use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qtpoly::QtPoly;
use crate::error::{Error, Result};

/// Reduced rational function in `q` and `t` with integer coefficients.
///
/// Canonical form: numerator and denominator coprime in `Z[q, t]`, the
/// denominator's leading coefficient positive under [`monomial_cmp`](super::monomial_cmp). Structural equality is
/// therefore mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: QtPoly,
    den: QtPoly,
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            num: QtPoly::zero(),
            den: QtPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QtPoly::one())
    }

    pub fn from_int(c: BigInt) -> Self {
        Self::from_poly(QtPoly::from_int(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_int(BigInt::from(c))
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::new(QtPoly::from_int(r.numer().clone()), QtPoly::from_int(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    pub fn from_poly(p: QtPoly) -> Self {
        ExactScalar {
            num: p,
            den: QtPoly::one(),
        }
    }

    pub fn q() -> Self {
        Self::from_poly(QtPoly::q())
    }

    pub fn t() -> Self {
        Self::from_poly(QtPoly::t())
    }

    /// `c q^a t^b` with possibly negative exponents.
    pub fn monomial(c: i64, qe: i64, te: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let num = QtPoly::monomial(BigInt::from(c), qe.max(0) as usize, te.max(0) as usize);
        let den = QtPoly::monomial(BigInt::one(), (-qe).max(0) as usize, (-te).max(0) as usize);
        Self::new(num, den).expect("monomial denominator")
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e, 0)
    }

    pub fn t_pow(e: i64) -> Self {
        Self::monomial(1, 0, e)
    }

    /// Build and normalize `num / den`.
    pub fn new(num: QtPoly, den: QtPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_one() {
            return Ok(Self::from_poly(num));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::signed(num, den))
    }

    fn signed(num: QtPoly, den: QtPoly) -> Self {
        match den.leading_term() {
            Some((_, c)) if c.is_negative() => ExactScalar { num: -&num, den: -&den },
            _ => ExactScalar { num, den },
        }
    }

    pub fn numer(&self) -> &QtPoly {
        &self.num
    }

    pub fn denom(&self) -> &QtPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when no `t` appears.
    pub fn is_t_free(&self) -> bool {
        self.num.t_degree().unwrap_or(0) == 0 && self.den.t_degree().unwrap_or(0) == 0
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::signed(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = u32::try_from(e).map_err(|_| Error::ExponentRange(e))?;
        Ok(ExactScalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn evaluate(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q, t);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at q={q}, t={t}")));
        }
        Ok(self.num.eval(q, t) / d)
    }

    /// Substitute `q -> q^qa` and `t -> q^ta`; the result is free of `t`.
    pub fn substitute_q_powers(&self, qa: usize, ta: usize) -> Result<Self> {
        let den = self.den.substitute_q_powers(qa, ta);
        if den.is_zero() {
            return Err(Error::Pole(format!("{self} under q->q^{qa}, t->q^{ta}")));
        }
        Self::new(self.num.substitute_q_powers(qa, ta), den)
    }

    /// `t -> q^lam`, keeping `q`.
    pub fn specialize_t(&self, lam: usize) -> Result<Self> {
        self.substitute_q_powers(1, lam)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ExactScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return ExactScalar::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            if num.is_zero() {
                return ExactScalar::zero();
            }
            return ExactScalar::signed(num, den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return ExactScalar::zero();
        }
        let g2 = num.gcd(&g);
        let den = &b1 * &rhs.den;
        if g2.is_one() {
            ExactScalar::signed(num, den)
        } else {
            ExactScalar::signed(num.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ExactScalar::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &QtPoly, g: &QtPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        ExactScalar::signed(num, den)
    }
}

/// Panics on division by zero; use [`ExactScalar::checked_div`] to handle it.
impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(c: i64) -> Self {
        Self::from_i64(c)
    }
}

impl From<QtPoly> for ExactScalar {
    fn from(p: QtPoly) -> Self {
        Self::from_poly(p)
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for ExactScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

fn wrap(p: &QtPoly, bare: bool) -> String {
    let s = p.to_string();
    if bare {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = wrap(&self.num, self.num.term_count() <= 1);
        let den_text = self.den.to_string();
        let den = wrap(&self.den, !den_text.contains(['*', ' ']));
        write!(f, "{num}/{den}")
    }
}

impl std::str::FromStr for ExactScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn reduces_by_gcd() {
        let a = s("(1 - q)/(1 - q^2)");
        assert_eq!(a.to_string(), "1/(1 + q)");
        assert_eq!(&a + &ExactScalar::zero(), a);
    }

    #[test]
    fn normalize_examples() {
        let two = QtPoly::from_i64(2);
        let a = ExactScalar::new(&two - &(&two * &QtPoly::q()), two.clone()).unwrap();
        assert_eq!(a.to_string(), "1 - q");
        assert_eq!(s("(q - q^2)/q").to_string(), "1 - q");
        let b = s("(q*t - t)/(t - 1)");
        assert_eq!(b.numer(), s("t - q*t").numer());
        assert_eq!(b.to_string(), "(t - q*t)/(1 - t)");
    }

    #[test]
    fn identities() {
        assert!((&ExactScalar::q() * &ExactScalar::q_pow(-1)).is_one());
        assert!(s("(1 - q*t)/(1 - q*t)").is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            ExactScalar::one().checked_div(&ExactScalar::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            ExactScalar::new(QtPoly::one(), QtPoly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn evaluation() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(s("1 + q + q^2").evaluate(&r(2), &r(0)).unwrap(), r(7));
        assert!(matches!(s("1/(1 - q*t)").evaluate(&r(1), &r(1)), Err(Error::Pole(_))));
        assert_eq!(s("(1 - q^3)/(1 - q)").evaluate(&r(3), &r(0)).unwrap(), r(13));
    }

    #[test]
    fn specialization() {
        let p = s("(1 - t)*(1 + q)/(1 - q*t)");
        assert!(p.specialize_t(1).unwrap().is_one());
        assert_eq!(p.specialize_t(2).unwrap().to_string(), "(1 + 2*q + q^2)/(1 + q + q^2)");
    }
}
