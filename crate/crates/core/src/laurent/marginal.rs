use std::collections::HashMap;

use super::engine::{ExpandOptions, Product};
use super::{Exps, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Coefficients of an expanded product inside a box of exponents, used to
/// take constant terms of `product * f` without expanding the product fully.
#[derive(Clone, Debug)]
pub struct Marginal {
    target: Vec<(i32, i32)>,
    coeffs: HashMap<Exps, ExactScalar>,
}

impl Marginal {
    pub fn new(product: &Product, target: &[(i32, i32)], opts: ExpandOptions) -> Result<Self> {
        let coeffs = product
            .expand(target, opts)?
            .into_iter()
            .map(|(e, c)| (e, c.to_scalar()))
            .collect();
        Ok(Marginal {
            target: target.to_vec(),
            coeffs,
        })
    }

    /// The first `n_free` variables range over `[-k, k]`, the rest are pinned to 0.
    pub fn boxed(product: &Product, n_free: usize, k: i32, opts: ExpandOptions) -> Result<Self> {
        let target: Vec<(i32, i32)> = (0..product.nvars())
            .map(|v| if v < n_free { (-k, k) } else { (0, 0) })
            .collect();
        Self::new(product, &target, opts)
    }

    pub fn nvars(&self) -> usize {
        self.target.len()
    }

    /// Coefficient of `x^e` in the product; `e` may be shorter than the
    /// variable count, in which case the remaining exponents are 0.
    pub fn at(&self, e: &[i32]) -> Result<ExactScalar> {
        if e.len() > self.target.len() {
            return Err(Error::ExponentLength {
                expected: self.target.len(),
                found: e.len(),
            });
        }
        let mut full = e.to_vec();
        full.resize(self.target.len(), 0);
        for (x, &(lo, hi)) in full.iter().zip(&self.target) {
            if *x < lo || *x > hi {
                return Err(Error::ExponentRange(*x as i64));
            }
        }
        Ok(self.coeffs.get(&full).cloned().unwrap_or_default())
    }

    /// `CT(product * h)`.
    pub fn apply(&self, h: &LaurentPoly) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for (e, c) in h.terms() {
            let neg: Vec<i32> = e.iter().map(|x| -x).collect();
            let w = self.at(&neg)?;
            if !w.is_zero() {
                acc = &acc + &(c * &w);
            }
        }
        Ok(acc)
    }

    /// `CT(product * f^* * g)`, with `f^*` inverting every variable.
    pub fn pair(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for (a, fa) in f.terms() {
            let mut inner = ExactScalar::zero();
            for (b, gb) in g.terms() {
                let d: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                let w = self.at(&d)?;
                if !w.is_zero() {
                    inner = &inner + &(gb * &w);
                }
            }
            if !inner.is_zero() {
                acc = &acc + &(fa * &inner);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarSet;

    #[test]
    fn pairing_matches_direct_expansion() {
        let mut p = Product::new(2);
        p.push_poch(&[(0, 1), (1, -1)], 1, 0, 1);
        p.push_poch(&[(1, 1), (0, -1)], 1, 1, 1);
        let m = Marginal::boxed(&p, 2, 1, ExpandOptions::default()).unwrap();
        let v = VarSet::w_only(2);
        let f = LaurentPoly::var(&v, 0);
        let g = LaurentPoly::var(&v, 1);
        let w = LaurentPoly::from_engine(&v, p.expand_all().unwrap()).unwrap();
        let direct = w.mul(&f.star()).unwrap().mul(&g).unwrap().constant_term();
        assert_eq!(m.pair(&f, &g).unwrap(), direct);
        assert!(m.at(&[2, -2]).is_err());
    }
}
