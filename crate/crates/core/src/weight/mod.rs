//! The multi-component weight, its Selberg-type factor, the induced inner
//! product and the closed forms tested against them.

pub mod bg_sum;
mod closed_forms;
mod gram;
mod inner;
mod kaneko;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use closed_forms::*;
pub use gram::{adjoint_hypothesis, adjoint_residual, gram_schmidt_p, gram_schmidt_with, SymbolicGram};
pub use inner::{inner_product_direct, InnerProductConfig};
pub use kaneko::{kaneko_ct_check, KanekoCheck};

use crate::error::{Error, Result};
use crate::laurent::engine::{ExpandOptions, Product};
use crate::laurent::{LaurentPoly, Marginal, VarSet};
use crate::scalar::ExactScalar;

/// Block sizes `(N_0, N_1, ..., N_p)` and the integer `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSpec {
    pub p: usize,
    pub n: Vec<usize>,
    pub lam: usize,
}

impl WeightSpec {
    /// `n[0]` is the `w` block, `n[1..]` the `z` blocks.
    pub fn new(n: Vec<usize>, lam: usize) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::InvalidArgument(
                "a weight needs at least the w block size".into(),
            ));
        }
        Ok(WeightSpec { p: n.len() - 1, n, lam })
    }

    pub fn n0(&self) -> usize {
        self.n[0]
    }

    pub fn nvars(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn vars(&self) -> Arc<VarSet> {
        VarSet::new(&self.n)
    }

    /// Index of `z^{(a)}_j`, `a ≥ 1`, `j` 0-based.
    fn z(&self, a: usize, j: usize) -> usize {
        self.n[..a].iter().sum::<usize>() + j
    }

    /// The same spec with the last block enlarged by one.
    pub fn grow_last(&self) -> Self {
        let mut n = self.n.clone();
        *n.last_mut().expect("non-empty") += 1;
        WeightSpec {
            p: self.p,
            n,
            lam: self.lam,
        }
    }
}

impl std::fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sizes: Vec<String> = self.n.iter().map(|x| x.to_string()).collect();
        write!(f, "p={} N=({}) λ={}", self.p, sizes.join(","), self.lam)
    }
}

/// `(x_i/x_j; q)_len (q x_j/x_i; q)_len`.
fn push_pair(prod: &mut Product, i: usize, j: usize, len: usize) {
    prod.push_poch(&[(i, 1), (j, -1)], 1, 0, len);
    prod.push_poch(&[(j, 1), (i, -1)], 1, 1, len);
}

/// The weight as an unexpanded product of Pochhammer lines.
pub fn weight_product(spec: &WeightSpec) -> Product {
    let lam = spec.lam;
    let mut prod = Product::new(spec.nvars());
    let n0 = spec.n0();
    for a in 1..=spec.p {
        for j in 0..spec.n[a] {
            for k in j + 1..spec.n[a] {
                push_pair(&mut prod, spec.z(a, j), spec.z(a, k), lam + 1);
            }
        }
    }
    for j in 0..n0 {
        for k in j + 1..n0 {
            push_pair(&mut prod, j, k, lam);
        }
    }
    for a in 1..=spec.p {
        for b in a + 1..=spec.p {
            for j in 0..spec.n[a] {
                for k in 0..spec.n[b] {
                    push_pair(&mut prod, spec.z(a, j), spec.z(b, k), lam);
                }
            }
        }
    }
    for a in 1..=spec.p {
        for j in 0..spec.n[a] {
            for w in 0..n0 {
                push_pair(&mut prod, spec.z(a, j), w, lam);
            }
        }
    }
    prod
}

/// The weight, fully expanded.
pub fn build_weight(spec: &WeightSpec) -> Result<LaurentPoly> {
    LaurentPoly::from_engine(&spec.vars(), weight_product(spec).expand_all()?)
}

/// How the two exponents of the one-variable factor are distributed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelbergPairing {
    /// `(x; q)_a (q/x; q)_b` on every variable.
    #[default]
    PerFactor,
    /// `(w; q)_a (q/w; q)_a` on `w` variables, `(z; q)_b (q/z; q)_b` on `z` variables.
    PerBlock,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SelbergOptions {
    pub pairing: SelbergPairing,
    /// Use `-x` in place of `x` throughout.
    pub negate: bool,
}

/// Appends the one-variable factors to `prod`.
pub fn push_selberg(prod: &mut Product, spec: &WeightSpec, a: usize, b: usize, opts: SelbergOptions) {
    let s = if opts.negate { -1 } else { 1 };
    for v in 0..spec.nvars() {
        let (e1, e2) = match opts.pairing {
            SelbergPairing::PerFactor => (a, b),
            SelbergPairing::PerBlock if v < spec.n0() => (a, a),
            SelbergPairing::PerBlock => (b, b),
        };
        prod.push_poch(&[(v, 1)], s, 0, e1);
        prod.push_poch(&[(v, -1)], s, 1, e2);
    }
}

pub fn build_selberg_factor(spec: &WeightSpec, a: usize, b: usize, opts: SelbergOptions) -> Result<LaurentPoly> {
    let mut prod = Product::new(spec.nvars());
    push_selberg(&mut prod, spec, a, b, opts);
    LaurentPoly::from_engine(&spec.vars(), prod.expand_all()?)
}

/// `CT(A · weight)`.
pub fn dp_integral_with(
    spec: &WeightSpec,
    a: usize,
    b: usize,
    sel: SelbergOptions,
    opts: ExpandOptions,
) -> Result<ExactScalar> {
    let mut prod = weight_product(spec);
    push_selberg(&mut prod, spec, a, b, sel);
    Ok(prod.constant_term(opts)?.to_scalar())
}

pub fn dp_integral(spec: &WeightSpec, a: usize, b: usize) -> Result<ExactScalar> {
    dp_integral_with(spec, a, b, SelbergOptions::default(), ExpandOptions::default())
}

/// `⟨h | A⟩ = CT(weight · h^* · A)` for a polynomial `h` in the `w` variables.
pub fn dp_functional(
    spec: &WeightSpec,
    a: usize,
    b: usize,
    h: &LaurentPoly,
    opts: ExpandOptions,
) -> Result<ExactScalar> {
    let n0 = spec.n0();
    let mut top = 0;
    for (e, _) in h.terms() {
        if e.len() > n0 || e.iter().any(|&x| x < 0) {
            return Err(Error::InvalidArgument(format!(
                "{h} is not a polynomial in the w variables"
            )));
        }
        top = top.max(e.iter().copied().max().unwrap_or(0));
    }
    let mut prod = weight_product(spec);
    push_selberg(&mut prod, spec, a, b, SelbergOptions::default());
    let target: Vec<(i32, i32)> = (0..spec.nvars())
        .map(|v| if v < n0 { (0, top) } else { (0, 0) })
        .collect();
    Marginal::new(&prod, &target, opts)?.apply(&h.star())
}

/// `CT(weight)`.
pub fn weight_ct(spec: &WeightSpec, opts: ExpandOptions) -> Result<ExactScalar> {
    Ok(weight_product(spec).constant_term(opts)?.to_scalar())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> ExactScalar {
        t.parse().unwrap()
    }

    #[test]
    fn andrews_two_variables() {
        let w = build_weight(&WeightSpec::new(vec![2], 1).unwrap()).unwrap();
        assert_eq!(w.to_string(), "1 + q - w1*w2^-1 - q*w1^-1*w2");
        assert_eq!(w.homogeneous_degree(), Some(0));
    }

    #[test]
    fn trivial_weights() {
        for n in [vec![3], vec![0, 1], vec![1]] {
            let lam = if n.len() == 1 && n[0] == 3 { 0 } else { 2 };
            let w = build_weight(&WeightSpec::new(n, lam).unwrap()).unwrap();
            assert_eq!(w.len(), 1);
            assert!(w.constant_term().is_one());
        }
    }

    #[test]
    fn selberg_one_variable() {
        let spec = WeightSpec::new(vec![1], 1).unwrap();
        let f = build_selberg_factor(&spec, 1, 1, SelbergOptions::default()).unwrap();
        assert_eq!(f.constant_term(), s("1 + q"));
        assert_eq!(f.len(), 3);
        assert!(build_selberg_factor(&spec, 0, 0, SelbergOptions::default())
            .unwrap()
            .constant_term()
            .is_one());
    }

    #[test]
    fn single_z_integral() {
        let spec = WeightSpec::new(vec![0, 1], 0).unwrap();
        assert_eq!(dp_integral(&spec, 1, 1).unwrap(), s("1 + q"));
        let spec0 = WeightSpec::new(vec![2], 0).unwrap();
        assert!(dp_integral(&spec0, 0, 0).unwrap().is_one());
    }

    #[test]
    fn sign_does_not_change_integral() {
        let spec = WeightSpec::new(vec![2, 1], 1).unwrap();
        let neg = SelbergOptions {
            negate: true,
            ..Default::default()
        };
        assert_eq!(
            dp_integral(&spec, 1, 2).unwrap(),
            dp_integral_with(&spec, 1, 2, neg, ExpandOptions::default()).unwrap()
        );
    }

    #[test]
    fn block_pairing_breaks_morris() {
        let spec = WeightSpec::new(vec![1], 1).unwrap();
        let block = SelbergOptions {
            pairing: SelbergPairing::PerBlock,
            ..Default::default()
        };
        let literal = dp_integral_with(&spec, 1, 0, block, ExpandOptions::default()).unwrap();
        assert_eq!(literal, s("1 + q"));
        assert!(dp_integral(&spec, 1, 0).unwrap().is_one());
        assert!(conj21_rhs(0, 1, 1, 0, 1).unwrap().is_one());
    }

    #[test]
    fn functional_of_one_is_the_integral() {
        let spec = WeightSpec::new(vec![2, 1], 1).unwrap();
        let one = LaurentPoly::one(&VarSet::w_only(2));
        let got = dp_functional(&spec, 1, 1, &one, ExpandOptions::default()).unwrap();
        assert_eq!(got, dp_integral(&spec, 1, 1).unwrap());
    }
}
