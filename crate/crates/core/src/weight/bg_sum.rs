//! Sums over permutations whose inversions lie in a prescribed set.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::laurent::engine::Product;
use crate::qseries::{q_bracket, q_gamma};
use crate::scalar::ExactScalar;

/// Exponents `a_1..a_n` and the allowed inversion pairs `(i, j)`, `i < j`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionConfig {
    pub a: Vec<usize>,
    pub allowed: BTreeSet<(usize, usize)>,
}

impl InversionConfig {
    /// `n = 1 + N_0 + N_1` with `a = (b, λ^{N_0}, (λ+1)^{N_1})` and inversions
    /// allowed only inside `{1..N_0+1}` and inside `{N_0+2..N_0+N_1+1}`.
    pub fn two_block(n0: usize, n1: usize, b: usize, lam: usize) -> Result<Self> {
        if b == 0 || lam == 0 {
            return Err(Error::InvalidArgument("exponents must be positive".into()));
        }
        let n = 1 + n0 + n1;
        let mut a = vec![b];
        a.extend(std::iter::repeat_n(lam, n0));
        a.extend(std::iter::repeat_n(lam + 1, n1));
        let mut allowed = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if j <= n0 + 1 || i >= n0 + 2 {
                    allowed.insert((i, j));
                }
            }
        }
        Ok(InversionConfig { a, allowed })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        f(&perm);
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// `Σ_{σ ∈ G_A} q^{Σ a_{larger}} ∏_l (1 - q) / (1 - q^{a_{σ_1} + ... + a_{σ_l}})`
/// by enumeration, where each inversion contributes the `a` of its larger entry.
pub fn s_enumerate(cfg: &InversionConfig) -> Result<ExactScalar> {
    let n = cfg.n();
    let mut total = ExactScalar::zero();
    let mut err = None;
    for_each_permutation(n, |sigma| {
        if err.is_some() {
            return;
        }
        let mut weight = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                let (hi, lo) = (sigma[i], sigma[j]);
                if hi > lo {
                    if !cfg.allowed.contains(&(lo, hi)) {
                        return;
                    }
                    weight += cfg.a[hi - 1];
                }
            }
        }
        let mut term = ExactScalar::q_pow(weight as i64);
        let mut partial = 0;
        for &s in sigma {
            partial += cfg.a[s - 1];
            match term.checked_div(&q_bracket(partial as i64)) {
                Ok(t) => term = t,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
        total = &total + &term;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Closed form of the two-block sum.
pub fn s_closed(n0: usize, n1: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let (n0, n1, b, l) = (n0 as i64, n1 as i64, b as i64, lam as i64);
    let mut den = &q_bracket(b) * &q_bracket(l).pow(n0)?;
    den = &den * &q_bracket(l + 1).pow(n1)?;
    let mut out = ExactScalar::one().checked_div(&den)?;
    for j in 1..=n1 {
        out = &out * &q_bracket((l + 1) * j).checked_div(&q_bracket((l + 1) * j + l * n0 + b))?;
    }
    Ok(out)
}

/// `bg_sum`: the enumerated two-block sum.
pub fn bg_sum(n0: usize, n1: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    s_enumerate(&InversionConfig::two_block(n0, n1, b, lam)?)
}

/// `∏_{i<j} (q x_i/x_j; q)_{a_i} (x_j/x_i; q)_{a_j - [(i,j) ∉ A]}`.
pub fn inversion_product(cfg: &InversionConfig) -> Product {
    let n = cfg.n();
    let mut prod = Product::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let drop = usize::from(!cfg.allowed.contains(&(i + 1, j + 1)));
            prod.push_poch(&[(i, 1), (j, -1)], 1, 1, cfg.a[i]);
            prod.push_poch(&[(j, 1), (i, -1)], 1, 0, cfg.a[j] - drop);
        }
    }
    prod
}

/// `Γ_q(Σ a + 1) / ∏ Γ_q(a_i) · S`, the value of the inversion product's constant term.
pub fn inversion_ct_rhs(cfg: &InversionConfig) -> Result<ExactScalar> {
    let total: usize = cfg.a.iter().sum();
    let mut out = q_gamma(total as i64 + 1, 1)?;
    for &a in &cfg.a {
        out = out.checked_div(&q_gamma(a as i64, 1)?)?;
    }
    Ok(&out * &s_enumerate(cfg)?)
}

/// The two-block integral at `a = λ` from the closed form of the sum.
pub fn d1_at_a_eq_lam(n0: usize, n1: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let (n0i, n1i, bi, l) = (n0 as i64, n1 as i64, b as i64, lam as i64);
    let num = q_gamma((l + 1) * n1i + l * n0i + bi + 1, 1)?;
    let mut den = q_gamma(bi, 1)?;
    den = &den * &q_gamma(l, 1)?.pow(n0i)?;
    den = &den * &q_gamma(l + 1, 1)?.pow(n1i)?;
    Ok(&num.checked_div(&den)? * &s_closed(n0, n1, b, lam)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::engine::ExpandOptions;
    use crate::weight::{conj21_rhs, dp_integral, WeightSpec};

    #[test]
    fn initial_condition() {
        for (n0, b, lam) in [(0, 1, 1), (1, 2, 1), (2, 1, 2), (3, 3, 1)] {
            let want = ExactScalar::one()
                .checked_div(&(&q_bracket(b as i64) * &q_bracket(lam as i64).pow(n0 as i64).unwrap()))
                .unwrap();
            assert_eq!(bg_sum(n0, 0, b, lam).unwrap(), want);
        }
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for n0 in 0..=2 {
            for n1 in 0..=2 {
                for (b, lam) in [(1, 1), (2, 1), (1, 2)] {
                    assert_eq!(bg_sum(n0, n1, b, lam).unwrap(), s_closed(n0, n1, b, lam).unwrap());
                }
            }
        }
    }

    #[test]
    fn admissible_count() {
        let cfg = InversionConfig::two_block(1, 1, 1, 1).unwrap();
        let mut count = 0;
        for_each_permutation(3, |s| {
            let ok = (0..3).all(|i| (i + 1..3).all(|j| s[i] < s[j] || cfg.allowed.contains(&(s[j], s[i]))));
            count += usize::from(ok);
        });
        assert_eq!(count, 2);
    }

    #[test]
    fn constant_term_identity() {
        for (n0, n1, b, lam) in [(1, 1, 1, 1), (1, 0, 2, 1), (0, 2, 1, 1)] {
            let cfg = InversionConfig::two_block(n0, n1, b, lam).unwrap();
            let ct = inversion_product(&cfg)
                .constant_term(ExpandOptions::default())
                .unwrap()
                .to_scalar();
            assert_eq!(ct, inversion_ct_rhs(&cfg).unwrap());
        }
    }

    #[test]
    fn integral_at_a_eq_lam() {
        for (n0, n1, b, lam) in [(1, 1, 1, 1), (2, 1, 2, 1), (1, 1, 1, 2)] {
            let d = dp_integral(&WeightSpec::new(vec![n0, n1], lam).unwrap(), lam, b).unwrap();
            assert_eq!(d, d1_at_a_eq_lam(n0, n1, b, lam).unwrap());
            assert_eq!(d, conj21_rhs(n1, n0, lam, b, lam).unwrap());
        }
    }
}
