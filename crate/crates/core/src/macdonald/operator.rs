use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, VarSet};
use crate::scalar::ExactScalar;
use crate::sym::{distinct_permutations, schur, straighten_schur, Basis, Partition, SymExpansion};

/// `M^{(r)}` on `n` variables with shift base `u` (the `q` of `T_{q,w}`)
/// and parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldOp {
    pub n: usize,
    pub r: usize,
    pub shift: ExactScalar,
    pub t: ExactScalar,
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

fn linear(vars: &Arc<VarSet>, i: usize, ci: &ExactScalar, j: usize, cj: &ExactScalar) -> Result<LaurentPoly> {
    let mut ei = vec![0; vars.len()];
    ei[i] = 1;
    let mut ej = vec![0; vars.len()];
    ej[j] = 1;
    LaurentPoly::from_terms(vars, [(ei, ci.clone()), (ej, cj.clone())])
}

impl MacdonaldOp {
    pub fn new(n: usize, r: usize, shift: ExactScalar, t: ExactScalar) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidArgument(format!(
                "operator order {r} exceeds {n} variables"
            )));
        }
        Ok(MacdonaldOp { n, r, shift, t })
    }

    /// Formal `M^{(r)}(q, t)`.
    pub fn formal(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, ExactScalar::q(), ExactScalar::t())
    }

    /// Apply to a polynomial in exactly `n` variables. The sum over subsets
    /// is formed over the common denominator `∏_{i<j} (w_i - w_j)` and then
    /// divided out exactly.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let vars = f.vars().clone();
        if vars.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "operator on {} variables applied to {} variables",
                self.n,
                vars.len()
            )));
        }
        let one = ExactScalar::one();
        let minus = -&one;
        let pre = self.t.pow((self.r * self.r.saturating_sub(1) / 2) as i64)?;
        let mut total = LaurentPoly::zero(&vars);
        for set in subsets(self.n, self.r) {
            let inside = |k: usize| set.contains(&k);
            let mut factor = LaurentPoly::constant(&vars, pre.clone());
            let mut flips = 0;
            for a in 0..self.n {
                for b in a + 1..self.n {
                    match (inside(a), inside(b)) {
                        (true, false) => {
                            factor = factor.mul(&linear(&vars, a, &self.t, b, &minus)?)?;
                        }
                        (false, true) => {
                            factor = factor.mul(&linear(&vars, b, &self.t, a, &minus)?)?;
                            flips += 1;
                        }
                        _ => {
                            factor = factor.mul(&linear(&vars, a, &one, b, &minus)?)?;
                        }
                    }
                }
            }
            let mut shifted = f.clone();
            for &i in &set {
                shifted = shifted.scale_var(i, &self.shift)?;
            }
            let term = factor.mul(&shifted)?;
            total = if flips % 2 == 0 {
                total.add(&term)?
            } else {
                total.sub(&term)?
            };
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                total = total.div_by_difference(a, b)?;
            }
        }
        Ok(total)
    }

    /// `M m_κ` in the monomial basis.
    pub fn on_monomial(&self, kappa: &Partition) -> Result<SymExpansion> {
        let m = SymExpansion::from_pairs(Basis::Monomial, self.n, [(kappa.clone(), ExactScalar::one())])?;
        let idx: Vec<usize> = (0..self.n).collect();
        SymExpansion::from_symmetric(&self.apply(&m.to_laurent()?)?, &idx)
    }

    /// `e(κ) = Σ_i t^{n-i} u^{κ_i}`.
    pub fn eigenvalue(&self, kappa: &Partition) -> Result<ExactScalar> {
        if kappa.len() > self.n {
            return Err(Error::InvalidArgument(format!(
                "partition {kappa} has more than {} parts",
                self.n
            )));
        }
        let mut e = ExactScalar::zero();
        for i in 0..self.n {
            let term = &self.t.pow((self.n - 1 - i) as i64)? * &self.shift.pow(kappa.part(i) as i64)?;
            e = &e + &term;
        }
        Ok(e)
    }
}

/// `M^{(1)} m_κ` through `Σ_α Σ_i t^{n-i} u^{α_i} s_α` over distinct
/// rearrangements `α`, straightened and converted to monomials.
pub fn first_order_via_schur(op: &MacdonaldOp, kappa: &Partition) -> Result<SymExpansion> {
    if op.r != 1 {
        return Err(Error::InvalidArgument("the Schur route covers M^(1) only".into()));
    }
    let mut in_schur: Vec<(Partition, ExactScalar)> = Vec::new();
    for alpha in distinct_permutations(&kappa.padded(op.n)) {
        let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
        let Some((sign, shape)) = straighten_schur(&a) else {
            continue;
        };
        let mut c = ExactScalar::zero();
        for (i, &ai) in alpha.iter().enumerate() {
            c = &c + &(&op.t.pow((op.n - 1 - i) as i64)? * &op.shift.pow(ai as i64)?);
        }
        in_schur.push((shape, if sign < 0 { -c } else { c }));
    }
    let mut out = SymExpansion::new(Basis::Monomial, op.n);
    for (shape, c) in in_schur {
        for (mu, d) in schur(&shape, op.n)?.iter() {
            out.add(mu.clone(), &c * d)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::monomial_sym;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn on_constant() {
        let op = MacdonaldOp::formal(2, 1).unwrap();
        let one = LaurentPoly::one(&VarSet::w_only(2));
        let out = op.apply(&one).unwrap();
        assert_eq!(out.constant_term(), "1 + t".parse().unwrap());
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn elementary_is_eigenfunction() {
        for n in 1..=4 {
            let op = MacdonaldOp::formal(n, 1).unwrap();
            let m = monomial_sym(&Partition::column(n), n).unwrap();
            let e = op.eigenvalue(&Partition::column(n)).unwrap();
            assert_eq!(op.apply(&m).unwrap(), m.scale(&e));
        }
    }

    #[test]
    fn eigenvalues() {
        let op2 = MacdonaldOp::formal(2, 1).unwrap();
        assert_eq!(op2.eigenvalue(&Partition::empty()).unwrap().to_string(), "1 + t");
        assert_eq!(op2.eigenvalue(&p("1")).unwrap().to_string(), "1 + q*t");
        let op3 = MacdonaldOp::formal(3, 1).unwrap();
        assert_eq!(op3.eigenvalue(&p("2,1")).unwrap().to_string(), "1 + q*t + q^2*t^2");
    }

    #[test]
    fn schur_route_agrees() {
        for (kappa, n) in [("2", 2), ("2,1", 3), ("1,1", 3), ("3", 2), ("2,1,1", 4)] {
            let op = MacdonaldOp::formal(n, 1).unwrap();
            let k = p(kappa);
            assert_eq!(
                op.on_monomial(&k).unwrap(),
                first_order_via_schur(&op, &k).unwrap(),
                "{kappa}"
            );
        }
    }
}
