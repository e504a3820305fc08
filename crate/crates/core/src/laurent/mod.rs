//! Sparse multivariate Laurent polynomials over [`ExactScalar`].

pub mod engine;
mod marginal;
mod qpoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub use marginal::Marginal;
pub use qpoly::QPoly;

/// Ordered variable names split into a `w` block and `z` blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    blocks: Vec<usize>,
}

impl VarSet {
    /// `blocks[0]` is the size of the `w` block, `blocks[a]` the size of the
    /// `a`-th `z` block. Names are `w1.. `, then `z{a}_{j}`.
    pub fn new(blocks: &[usize]) -> Arc<VarSet> {
        let mut names = Vec::new();
        if let Some(&n0) = blocks.first() {
            names.extend((1..=n0).map(|j| format!("w{j}")));
        }
        for (a, &n) in blocks.iter().enumerate().skip(1) {
            names.extend((1..=n).map(|j| format!("z{a}_{j}")));
        }
        Arc::new(VarSet {
            names,
            blocks: blocks.to_vec(),
        })
    }

    pub fn w_only(n: usize) -> Arc<VarSet> {
        Self::new(&[n])
    }

    /// A single block of arbitrary, distinct names.
    pub fn named(names: &[&str]) -> Result<Arc<VarSet>> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if n.is_empty() || !seen.insert(*n) {
                return Err(Error::InvalidArgument(format!("bad or repeated variable name '{n}'")));
            }
        }
        Ok(Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            blocks: vec![names.len()],
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn n_w(&self) -> usize {
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of `z^{(a)}_j`, both 1-based.
    pub fn z_index(&self, a: usize, j: usize) -> usize {
        self.blocks[..a].iter().sum::<usize>() + j - 1
    }

    /// The variable set with variable `i` removed.
    pub fn without(&self, i: usize) -> Arc<VarSet> {
        let mut names = self.names.clone();
        names.remove(i);
        let mut blocks = self.blocks.clone();
        let mut start = 0;
        for b in blocks.iter_mut() {
            if i < start + *b {
                *b -= 1;
                break;
            }
            start += *b;
        }
        Arc::new(VarSet { names, blocks })
    }
}

/// Exponent vector of a monomial.
pub type Exps = Vec<i32>;

#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Exps, ExactScalar>,
}

/// Binary operations accepted by [`LaurentPoly::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.vars == *other.vars && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: ExactScalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, ExactScalar::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Exps, c: ExactScalar) -> Result<Self> {
        let mut p = Self::zero(vars);
        p.add_term(exps, c)?;
        Ok(p)
    }

    /// The single variable `x_i`.
    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, ExactScalar::one()).expect("length matches")
    }

    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exps, ExactScalar)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    /// Accumulate `c * x^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Exps, c: ExactScalar) -> Result<()> {
        if exps.len() != self.vars.len() {
            return Err(Error::ExponentLength {
                expected: self.vars.len(),
                found: exps.len(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, exps: &[i32]) -> ExactScalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn combine(&self, other: &Self, op: Op) -> Result<Self> {
        match op {
            Op::Add => self.add(other),
            Op::Mul => self.mul(other),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        self.map_coeffs(|a| a * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Product of many factors, multiplied in ascending order of term count.
    pub fn product(vars: &Arc<VarSet>, factors: &[LaurentPoly]) -> Result<Self> {
        let mut order: Vec<&LaurentPoly> = factors.iter().collect();
        order.sort_by_key(|f| f.len());
        let mut acc = Self::one(vars);
        for f in order {
            acc = acc.mul(f)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&ExactScalar) -> Result<ExactScalar>) -> Result<Self> {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Negate every exponent vector; coefficients are unchanged.
    pub fn star(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `x_i -> c * x_i`.
    pub fn scale_var(&self, i: usize, c: &ExactScalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("scale_var by zero".into()));
        }
        if i >= self.vars.len() {
            return Err(Error::InvalidArgument(format!("variable index {i} out of range")));
        }
        let mut out = Self::zero(&self.vars);
        let mut powers: BTreeMap<i32, ExactScalar> = BTreeMap::new();
        for (e, a) in &self.terms {
            let k = e[i];
            let f = match powers.get(&k) {
                Some(f) => f.clone(),
                None => {
                    let f = c.pow(k as i64)?;
                    powers.insert(k, f.clone());
                    f
                }
            };
            out.add_term(e.clone(), a * &f)?;
        }
        Ok(out)
    }

    /// Substitute `x_i -> 1`, dropping the variable.
    pub fn set_var_one(&self, i: usize) -> Result<Self> {
        if i >= self.vars.len() {
            return Err(Error::InvalidArgument(format!("variable index {i} out of range")));
        }
        let vars = self.vars.without(i);
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.remove(i);
            out.add_term(e, c.clone())?;
        }
        Ok(out)
    }

    /// Total degree if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let d = degs.next().unwrap_or(0);
        degs.all(|x| x == d).then_some(d)
    }

    pub fn max_abs_exponent(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Re-express over a larger variable set by placing variable `j` at `map[j]`.
    pub fn embed(&self, vars: &Arc<VarSet>, map: &[usize]) -> Result<Self> {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (j, &x) in e.iter().enumerate() {
                f[map[j]] = x;
            }
            out.add_term(f, c.clone())?;
        }
        Ok(out)
    }

    /// Permute variables: variable `j` moves to position `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        self.embed(&self.vars.clone(), perm)
    }

    /// Exact quotient by `x_i - x_j`, by synthetic division in `x_i`.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= self.vars.len() || j >= self.vars.len() {
            return Err(Error::InvalidArgument(format!("bad divisor indices ({i}, {j})")));
        }
        let Some(low) = self.terms.keys().map(|e| e[i]).min() else {
            return Ok(self.clone());
        };
        // Bucket by the x_i exponent so the top bucket is always at hand.
        let mut rest: BTreeMap<i32, BTreeMap<Exps, ExactScalar>> = BTreeMap::new();
        for (e, c) in &self.terms {
            rest.entry(e[i]).or_default().insert(e.clone(), c.clone());
        }
        let mut quot = Self::zero(&self.vars);
        while let Some((a, bucket)) = rest.pop_last() {
            if bucket.is_empty() {
                continue;
            }
            if a == low {
                return Err(Error::InexactDivision(format!(
                    "not divisible by {} - {}",
                    self.vars.names[i], self.vars.names[j]
                )));
            }
            let below = rest.entry(a - 1).or_default();
            for (mut g, c) in bucket {
                g[i] -= 1;
                let mut h = g.clone();
                h[j] += 1;
                quot.terms.insert(g, c.clone());
                let slot = below.entry(h.clone()).or_insert_with(ExactScalar::zero);
                *slot = &*slot + &c;
                if slot.is_zero() {
                    below.remove(&h);
                }
            }
        }
        Ok(quot)
    }

    /// Build from product-engine output, reading each `q`-coefficient as a scalar.
    pub fn from_engine(vars: &Arc<VarSet>, terms: Vec<(Exps, QPoly)>) -> Result<Self> {
        Self::from_terms(vars, terms.into_iter().map(|(e, c)| (e, c.to_scalar())))
    }
}

fn text_order(a: &Exps, b: &Exps) -> std::cmp::Ordering {
    let na: i32 = a.iter().map(|x| x.abs()).sum();
    let nb: i32 = b.iter().map(|x| x.abs()).sum();
    na.cmp(&nb).then_with(|| b.cmp(a))
}

fn monomial_text(names: &[String], e: &[i32]) -> String {
    let mut parts = Vec::new();
    for (n, &x) in names.iter().zip(e) {
        match x {
            0 => {}
            1 => parts.push(n.clone()),
            _ => parts.push(format!("{n}^{x}")),
        }
    }
    parts.join("*")
}

/// Terms by increasing `sum |e_i|`, ties by decreasing exponent vector,
/// e.g. `1 + q - w1*w2^-1 - q*w1^-1*w2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by(|a, b| text_order(a, b));
        for (i, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono = monomial_text(&self.vars.names, e);
            let text = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if c.is_polynomial() && c.numer().term_count() == 1 {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
            };
            if i == 0 {
                f.write_str(&text)?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}
