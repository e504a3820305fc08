use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::Partition;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, VarSet};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Schur,
    Macdonald,
}

/// Symmetric polynomial in `n` variables as coefficients over a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymExpansion {
    basis: Basis,
    n: usize,
    coeffs: BTreeMap<Partition, ExactScalar>,
}

impl SymExpansion {
    pub fn new(basis: Basis, n: usize) -> Self {
        SymExpansion {
            basis,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I>(basis: Basis, n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, ExactScalar)>,
    {
        let mut out = Self::new(basis, n);
        for (p, c) in pairs {
            out.add(p, c)?;
        }
        Ok(out)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, p: &Partition) -> ExactScalar {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    /// Add `c` to the coefficient of `p`.
    pub fn add(&mut self, p: Partition, c: ExactScalar) -> Result<()> {
        if p.len() > self.n {
            return Err(Error::InvalidArgument(format!(
                "partition {p} has more than {} parts",
                self.n
            )));
        }
        let slot = self.coeffs.entry(p.clone()).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&p);
        }
        Ok(())
    }

    /// Terms in increasing partition order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map_coeffs(&self, f: impl Fn(&ExactScalar) -> Result<ExactScalar>) -> Result<Self> {
        let mut out = Self::new(self.basis, self.n);
        for (p, c) in &self.coeffs {
            out.add(p.clone(), f(c)?)?;
        }
        Ok(out)
    }

    /// `Σ c_κ m_κ` placed on the variables `idx` of `vars`. Monomial basis only.
    pub fn to_laurent_in(&self, vars: &Arc<VarSet>, idx: &[usize]) -> Result<LaurentPoly> {
        if self.basis != Basis::Monomial {
            return Err(Error::InvalidArgument(
                "only monomial expansions convert directly".into(),
            ));
        }
        let mut out = LaurentPoly::zero(vars);
        for (p, c) in &self.coeffs {
            out = out.add(&monomial_sym_in(p, vars, idx)?.scale(c))?;
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let vars = VarSet::w_only(self.n);
        let idx: Vec<usize> = (0..self.n).collect();
        self.to_laurent_in(&vars, &idx)
    }

    /// Read off monomial-basis coefficients of a symmetric polynomial in the
    /// variables `idx`; other variables must not appear.
    pub fn from_symmetric(f: &LaurentPoly, idx: &[usize]) -> Result<Self> {
        let mut out = Self::new(Basis::Monomial, idx.len());
        for (e, c) in f.terms() {
            let sub: Vec<i32> = idx.iter().map(|&i| e[i]).collect();
            if sub.iter().sum::<i32>() != e.iter().sum::<i32>() || sub.iter().any(|&x| x < 0) {
                return Err(Error::InvalidArgument(
                    "not a polynomial in the chosen variables".into(),
                ));
            }
            if sub.windows(2).all(|w| w[0] >= w[1]) {
                out.add(
                    Partition::from_unsorted(sub.iter().map(|&x| x as usize).collect()),
                    c.clone(),
                )?;
            }
        }
        Ok(out)
    }
}

/// Distinct permutations of `v` in lexicographic order.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m_κ` on the variables `idx` of `vars`.
pub fn monomial_sym_in(kappa: &Partition, vars: &Arc<VarSet>, idx: &[usize]) -> Result<LaurentPoly> {
    if kappa.len() > idx.len() {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {} parts",
            idx.len()
        )));
    }
    let mut out = LaurentPoly::zero(vars);
    for perm in distinct_permutations(&kappa.padded(idx.len())) {
        let mut e = vec![0; vars.len()];
        for (k, &i) in idx.iter().enumerate() {
            e[i] = perm[k] as i32;
        }
        out.add_term(e, ExactScalar::one())?;
    }
    Ok(out)
}

pub fn monomial_sym(kappa: &Partition, n: usize) -> Result<LaurentPoly> {
    let idx: Vec<usize> = (0..n).collect();
    monomial_sym_in(kappa, &VarSet::w_only(n), &idx)
}

/// `p̃_k = Σ w_i^k`.
pub fn power_sum(k: usize, n: usize) -> Result<LaurentPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("power sum index must be positive".into()));
    }
    let vars = VarSet::w_only(n);
    LaurentPoly::from_terms(
        &vars,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = k as i32;
            (e, ExactScalar::one())
        }),
    )
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((cur.clone(), odd));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, odd ^ (k % 2 == 1), out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), false, &mut out);
    out
}

type Memo = RwLock<HashMap<(Partition, usize), SymExpansion>>;

fn schur_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `s_κ` in the monomial basis, from the bialternant `a_{κ+δ} / a_δ`.
pub fn schur(kappa: &Partition, n: usize) -> Result<SymExpansion> {
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let key = (kappa.clone(), n);
    if let Some(s) = schur_memo().read().expect("memo lock").get(&key) {
        return Ok(s.clone());
    }
    let vars = VarSet::w_only(n);
    let exps: Vec<i32> = (0..n).map(|j| (kappa.part(j) + n - 1 - j) as i32).collect();
    let mut alt = LaurentPoly::zero(&vars);
    for (perm, odd) in permutations(n) {
        let e: Vec<i32> = perm.iter().map(|&j| exps[j]).collect();
        alt.add_term(e, ExactScalar::from_i64(if odd { -1 } else { 1 }))?;
    }
    for i in 0..n {
        for j in i + 1..n {
            alt = alt.div_by_difference(i, j)?;
        }
    }
    let idx: Vec<usize> = (0..n).collect();
    let mut s = SymExpansion::from_symmetric(&alt, &idx)?;
    s.basis = Basis::Monomial;
    schur_memo().write().expect("memo lock").entry(key).or_insert(s.clone());
    Ok(s)
}

/// Rewrite `s_α` for an arbitrary composition `α` as `±s_κ` by repeatedly
/// replacing `s_{..a,b..}` with `-s_{..b-1,a+1..}` where `a < b`.
/// Returns `None` when the function vanishes.
pub fn straighten_schur(alpha: &[i64]) -> Option<(i32, Partition)> {
    let mut a = alpha.to_vec();
    let mut sign = 1;
    while let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| a[i] < a[i + 1]) {
        if a[i + 1] == a[i] + 1 {
            return None;
        }
        let (x, y) = (a[i], a[i + 1]);
        a[i] = y - 1;
        a[i + 1] = x + 1;
        sign = -sign;
    }
    if a.last().is_some_and(|&x| x < 0) {
        return None;
    }
    Some((sign, Partition::from_unsorted(a.iter().map(|&x| x as usize).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_sym(&p("1,1"), 3).unwrap().len(), 3);
        assert_eq!(monomial_sym(&p("2"), 2).unwrap().to_string(), "w1^2 + w2^2");
        assert!(monomial_sym(&p("1,1,1"), 2).is_err());
        assert_eq!(power_sum(2, 2).unwrap(), monomial_sym(&p("2"), 2).unwrap());
    }

    #[test]
    fn schur_two_one() {
        let s = schur(&p("2,1"), 3).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.coeff(&p("2,1")).is_one());
        assert_eq!(s.coeff(&p("1,1,1")), ExactScalar::from_i64(2));
    }

    #[test]
    fn schur_column_is_elementary() {
        for n in 1..5 {
            let s = schur(&Partition::column(n), n).unwrap();
            assert_eq!(s.len(), 1);
            assert!(s.coeff(&Partition::column(n)).is_one());
        }
    }

    #[test]
    fn straightening() {
        assert_eq!(straighten_schur(&[1, 1]), Some((1, p("1,1"))));
        assert_eq!(straighten_schur(&[0, 2, 1]), Some((-1, p("1,1,1"))));
        assert_eq!(straighten_schur(&[1, 2]), None);
    }
}
