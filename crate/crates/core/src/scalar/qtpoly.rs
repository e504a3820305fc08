//! Integer-coefficient polynomials in the two formal parameters `q` and `t`.
//!
//! Stored recursively: a dense polynomial in `t` whose coefficients are dense
//! polynomials in `q`. The monomial order used for leading coefficients and
//! for printing ranks lower total degree first and, within a degree, higher
//! powers of `q` first. The leading term of `1 - q` is therefore `1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QtPoly {
    /// `by_t[j]` is the coefficient of `t^j`; no trailing zeros.
    by_t: Vec<UPoly>,
}

/// The fixed monomial order on `q^a t^b`: `Greater` means `x` ranks first.
pub fn monomial_cmp(x: (usize, usize), y: (usize, usize)) -> Ordering {
    (y.0 + y.1).cmp(&(x.0 + x.1)).then(x.0.cmp(&y.0))
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly { by_t: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn from_int(c: BigInt) -> Self {
        Self::from_q(UPoly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_int(BigInt::from(c))
    }

    pub fn from_q(p: UPoly) -> Self {
        Self::from_t_coeffs(vec![p])
    }

    pub fn from_t_coeffs(mut by_t: Vec<UPoly>) -> Self {
        while by_t.last().is_some_and(|c| c.is_zero()) {
            by_t.pop();
        }
        QtPoly { by_t }
    }

    /// `c q^a t^b`
    pub fn monomial(c: BigInt, qe: usize, te: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut by_t = vec![UPoly::zero(); te + 1];
        by_t[te] = UPoly::monomial(c, qe);
        QtPoly { by_t }
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    pub fn t_coeffs(&self) -> &[UPoly] {
        &self.by_t
    }

    pub fn is_zero(&self) -> bool {
        self.by_t.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.by_t.len() == 1 && self.by_t[0].is_one()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.by_t.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.by_t.len() <= 1 && self.by_t.first().is_none_or(|c| c.degree() == Some(0))
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.by_t.len() {
            0 => Some(BigInt::zero()),
            1 if self.by_t[0].degree() == Some(0) => Some(self.by_t[0].coeff(0)),
            _ => None,
        }
    }

    /// All nonzero terms as `((q exponent, t exponent), coefficient)`.
    pub fn terms(&self) -> Vec<((usize, usize), BigInt)> {
        let mut out = Vec::new();
        for (te, qc) in self.by_t.iter().enumerate() {
            for (qe, c) in qc.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push(((qe, te), c.clone()));
                }
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.by_t.iter().map(UPoly::term_count).sum()
    }

    /// Leading term under [`monomial_cmp`].
    pub fn leading_term(&self) -> Option<((usize, usize), BigInt)> {
        self.terms().into_iter().max_by(|a, b| monomial_cmp(a.0, b.0))
    }

    /// Largest `(a, b)` with `q^a t^b` dividing every term.
    pub fn monomial_content(&self) -> (usize, usize) {
        let te = self.by_t.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let qe = self.by_t.iter().filter_map(UPoly::low_degree).min().unwrap_or(0);
        (qe, te)
    }

    /// Multiply by `q^a t^b`.
    pub fn shift(&self, qe: usize, te: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut by_t = vec![UPoly::zero(); te];
        by_t.extend(self.by_t.iter().map(|c| c.shift(qe)));
        QtPoly { by_t }
    }

    /// Divide by `q^a t^b`; the monomial must divide exactly.
    pub fn unshift(&self, qe: usize, te: usize) -> Self {
        QtPoly::from_t_coeffs(self.by_t.iter().skip(te).map(|c| c.unshift(qe)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QtPoly::from_t_coeffs(self.by_t.iter().map(|p| p.scale(c)).collect())
    }

    pub fn scale_q(&self, p: &UPoly) -> Self {
        QtPoly::from_t_coeffs(self.by_t.iter().map(|c| c * p).collect())
    }

    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.by_t {
            g = g.gcd(&c.content());
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        QtPoly {
            by_t: self.by_t.iter().map(|p| p.div_scalar_exact(c)).collect(),
        }
    }

    /// gcd in `Z[q]` of the `t`-coefficients.
    pub fn q_content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.by_t {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_q_exact(&self, d: &UPoly) -> Option<Self> {
        if d.is_one() {
            return Some(self.clone());
        }
        let by_t = self.by_t.iter().map(|c| c.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(QtPoly::from_t_coeffs(by_t))
    }

    /// Primitive part with respect to `t` over `Z[q]`.
    fn t_primitive(&self) -> Self {
        let c = self.q_content();
        if c.is_zero() {
            return Self::zero();
        }
        self.div_q_exact(&c).expect("content divides")
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

    /// Exact quotient over `Z[q, t]`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &QtPoly) -> Option<QtPoly> {
        let dd = d.t_degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.by_t.len() == 1 {
            return self.div_q_exact(&d.by_t[0]);
        }
        let nd = self.t_degree()?;
        if nd < dd {
            return None;
        }
        let lc = &d.by_t[dd];
        let mut rem = self.by_t.clone();
        let mut quot = vec![UPoly::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let qk = rem[k + dd].div_exact(lc)?;
            for (j, dc) in d.by_t.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&qk * dc);
                }
            }
            quot[k] = qk;
        }
        if rem.iter().all(UPoly::is_zero) {
            Some(QtPoly::from_t_coeffs(quot))
        } else {
            None
        }
    }

    fn pseudo_rem(&self, d: &QtPoly) -> QtPoly {
        let dd = d.t_degree().expect("pseudo-remainder by zero");
        let lc = d.by_t[dd].clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.t_degree() {
            if rd < dd {
                break;
            }
            let top = rem.by_t[rd].clone();
            let scaled = rem.scale_q(&lc);
            let sub = d.scale_q(&top).shift(0, rd - dd);
            rem = &scaled - &sub;
        }
        rem
    }

    /// Greatest common divisor in `Z[q, t]`.
    ///
    /// Univariate in `t` over `Z[q]`: the `q`-contents are combined with a
    /// univariate gcd and the primitive parts run a primitive remainder
    /// sequence. The result has a positive leading coefficient.
    pub fn gcd(&self, other: &QtPoly) -> QtPoly {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        if self.by_t.len() == 1 && other.by_t.len() == 1 {
            return QtPoly::from_q(self.by_t[0].gcd(&other.by_t[0])).sign_normalized();
        }
        let (ma, mb) = (self.monomial_content(), other.monomial_content());
        let mono = (ma.0.min(mb.0), ma.1.min(mb.1));
        let a = self.unshift(ma.0, ma.1);
        let b = other.unshift(mb.0, mb.1);
        let content = a.q_content().gcd(&b.q_content());
        let (mut a, mut b) = (a.t_primitive(), b.t_primitive());
        if a.t_degree() < b.t_degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.t_degree() == Some(0) {
                a = QtPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.t_primitive();
        }
        a.t_primitive()
            .scale_q(&content)
            .shift(mono.0, mono.1)
            .sign_normalized()
    }

    /// `self` or `-self`, whichever has a positive leading coefficient.
    pub fn sign_normalized(&self) -> QtPoly {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Substitute `q -> q^qa` and `t -> q^ta`.
    pub fn substitute_q_powers(&self, qa: usize, ta: usize) -> QtPoly {
        let mut acc = UPoly::zero();
        for (te, qc) in self.by_t.iter().enumerate() {
            acc = &acc + &qc.inflate(qa).shift(te * ta);
        }
        QtPoly::from_q(acc)
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.by_t.iter().rev() {
            acc = acc * t + c.eval(q);
        }
        acc
    }
}

impl Add for &QtPoly {
    type Output = QtPoly;
    fn add(self, rhs: &QtPoly) -> QtPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        let zero = UPoly::zero();
        let by_t = (0..n)
            .map(|i| {
                let a = self.by_t.get(i).unwrap_or(&zero);
                let b = rhs.by_t.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        QtPoly::from_t_coeffs(by_t)
    }
}

impl Sub for &QtPoly {
    type Output = QtPoly;
    fn sub(self, rhs: &QtPoly) -> QtPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        let zero = UPoly::zero();
        let by_t = (0..n)
            .map(|i| {
                let a = self.by_t.get(i).unwrap_or(&zero);
                let b = rhs.by_t.get(i).unwrap_or(&zero);
                a - b
            })
            .collect();
        QtPoly::from_t_coeffs(by_t)
    }
}

impl Mul for &QtPoly {
    type Output = QtPoly;
    fn mul(self, rhs: &QtPoly) -> QtPoly {
        if self.is_zero() || rhs.is_zero() {
            return QtPoly::zero();
        }
        let mut by_t = vec![UPoly::zero(); self.by_t.len() + rhs.by_t.len() - 1];
        for (i, a) in self.by_t.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.by_t.iter().enumerate() {
                if !b.is_zero() {
                    by_t[i + j] = &by_t[i + j] + &(a * b);
                }
            }
        }
        QtPoly::from_t_coeffs(by_t)
    }
}

impl Neg for &QtPoly {
    type Output = QtPoly;
    fn neg(self) -> QtPoly {
        QtPoly {
            by_t: self.by_t.iter().map(|c| -c).collect(),
        }
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, qe: usize, te: usize) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("q", qe), ("t", te)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Terms in the fixed monomial order, leading term first, e.g. `1 - q*t^2`.
impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|a, b| monomial_cmp(b.0, a.0));
        for (i, ((qe, te), c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = *qe == 0 && *te == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, *qe, *te)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(terms: &[(i64, usize, usize)]) -> QtPoly {
        terms.iter().fold(QtPoly::zero(), |acc, &(c, a, b)| {
            &acc + &QtPoly::monomial(BigInt::from(c), a, b)
        })
    }

    #[test]
    fn display_in_monomial_order() {
        let p = qt(&[(-1, 1, 2), (1, 0, 0)]);
        assert_eq!(p.to_string(), "1 - q*t^2");
        assert_eq!(qt(&[(1, 1, 0), (1, 0, 1)]).to_string(), "q + t");
        assert_eq!(qt(&[(-3, 0, 0)]).to_string(), "-3");
    }

    #[test]
    fn bivariate_gcd() {
        // (1 - q t)(1 + q) and (1 - q t)(t - 2)
        let a = qt(&[(1, 0, 0), (-1, 1, 1)]);
        let b = qt(&[(1, 0, 0), (1, 1, 0)]);
        let c = qt(&[(-2, 0, 0), (1, 0, 1)]);
        let g = (&a * &b).gcd(&(&a * &c));
        assert_eq!(g, a.sign_normalized());
    }

    #[test]
    fn gcd_with_monomial_factor() {
        let a = qt(&[(1, 1, 1), (-1, 0, 1)]); // qt - t
        let b = qt(&[(1, 0, 1), (-1, 0, 0)]); // t - 1
        assert_eq!(a.gcd(&b), QtPoly::one());
        assert_eq!(a.gcd(&QtPoly::t()), QtPoly::t());
    }

    #[test]
    fn exact_division_round_trip() {
        let a = qt(&[(1, 0, 0), (-1, 1, 1), (3, 2, 0)]);
        let b = qt(&[(2, 0, 1), (-1, 1, 0), (1, 0, 0)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&QtPoly::t()), None);
    }
}
