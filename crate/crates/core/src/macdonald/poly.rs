use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use log::debug;

use super::MacdonaldOp;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::sym::{Basis, Partition, SymExpansion};

/// Monic `P_κ` in `n` variables over the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldPoly {
    pub kappa: Partition,
    pub n: usize,
    pub expansion: SymExpansion,
}

type Memo = RwLock<HashMap<(Partition, usize), MacdonaldPoly>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Formal `P_κ(w_1..w_n; q, t)`.
pub fn macdonald_poly(kappa: &Partition, n: usize) -> Result<MacdonaldPoly> {
    let key = (kappa.clone(), n);
    if let Some(p) = memo().read().expect("memo lock").get(&key) {
        return Ok(p.clone());
    }
    let p = eigen_solve(kappa, &MacdonaldOp::formal(n, 1)?)?;
    memo().write().expect("memo lock").entry(key).or_insert(p.clone());
    Ok(p)
}

/// Seed the in-process memo, e.g. from a persistent cache.
pub fn remember(p: MacdonaldPoly) {
    memo()
        .write()
        .expect("memo lock")
        .entry((p.kappa.clone(), p.n))
        .or_insert(p);
}

/// The monic eigenfunction of `op` with leading monomial `m_κ`, by
/// back-substitution through all partitions below `κ` in reverse
/// lexicographic order.
pub fn eigen_solve(kappa: &Partition, op: &MacdonaldOp) -> Result<MacdonaldPoly> {
    let n = op.n;
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let below: Vec<Partition> = Partition::bounded(kappa.weight(), n)
        .into_iter()
        .filter(|mu| mu.revlex_cmp(kappa).is_le())
        .collect();
    let columns: Vec<SymExpansion> = below.iter().map(|mu| op.on_monomial(mu)).collect::<Result<_>>()?;
    let e_kappa = op.eigenvalue(kappa)?;
    let mut coeffs: BTreeMap<Partition, ExactScalar> = BTreeMap::new();
    coeffs.insert(kappa.clone(), ExactScalar::one());
    for (i, nu) in below.iter().enumerate().skip(1) {
        let mut rhs = ExactScalar::zero();
        for (mu, col) in below[..i].iter().zip(&columns) {
            if let Some(c) = coeffs.get(mu) {
                rhs = &rhs + &(c * &col.coeff(nu));
            }
        }
        if rhs.is_zero() {
            continue;
        }
        let gap = &e_kappa - &columns[i].coeff(nu);
        if gap.is_zero() {
            return Err(Error::EigenvalueCollision(kappa.to_string(), nu.to_string()));
        }
        coeffs.insert(nu.clone(), rhs.checked_div(&gap)?);
    }
    debug!("P_{kappa} in {n} variables: {} terms", coeffs.len());
    Ok(MacdonaldPoly {
        kappa: kappa.clone(),
        n,
        expansion: SymExpansion::from_pairs(Basis::Monomial, n, coeffs)?,
    })
}

impl MacdonaldPoly {
    /// Substitute `q -> q^qa`, `t -> q^ta` in every coefficient.
    pub fn specialize(&self, qa: usize, ta: usize) -> Result<SymExpansion> {
        self.expansion.map_coeffs(|c| c.substitute_q_powers(qa, ta))
    }

    /// `P_κ(·; q t^p, t)` at `t = q^λ`.
    pub fn at_shifted(&self, p: usize, lam: usize) -> Result<SymExpansion> {
        self.specialize(1 + p * lam, lam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn columns_are_monomials() {
        for k in 1..=4 {
            let m = macdonald_poly(&Partition::column(k), k + 1).unwrap();
            assert_eq!(m.expansion.len(), 1);
        }
    }

    #[test]
    fn two_variable_row() {
        let m = macdonald_poly(&p("2"), 2).unwrap();
        let want: ExactScalar = "(1 - t)*(1 + q)/(1 - q*t)".parse().unwrap();
        assert_eq!(m.expansion.coeff(&p("1,1")), want);
        assert!(m.expansion.coeff(&p("2")).is_one());
    }

    #[test]
    fn eigen_relation() {
        let op = MacdonaldOp::formal(3, 1).unwrap();
        let m = macdonald_poly(&p("2,1"), 3).unwrap();
        let f = m.expansion.to_laurent().unwrap();
        let e = op.eigenvalue(&p("2,1")).unwrap();
        assert_eq!(op.apply(&f).unwrap(), f.scale(&e));
    }
}
