use std::collections::BTreeMap;

use super::macdonald_poly;
use crate::error::{Error, Result};
use crate::laurent::engine::{ExpandOptions, Product};
use crate::laurent::Marginal;
use crate::qseries::{
    poch_inf_ratio, poch_qpow, poch_scalar, q_bracket, q_factorial_base, q_gamma, q_rising, shifted_factorial,
};
use crate::scalar::ExactScalar;
use crate::sym::Partition;

/// `P_κ(1, q^λ, ..., q^{(n-1)λ}; q, q^λ)` from the product formula.
pub fn principal_specialization(kappa: &Partition, n: usize, lam: i64) -> Result<ExactScalar> {
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let k = kappa.padded(n);
    let mut out = ExactScalar::q_pow(lam * kappa.n_stat() as i64);
    for i in 0..n {
        for j in i + 1..n {
            let d = k[i] as i64 - k[j] as i64;
            let gap = lam * (j - i) as i64;
            out = &out * &poch_qpow(d + gap, lam)?;
            out = out.checked_div(&poch_qpow(gap, lam)?)?;
        }
    }
    Ok(out)
}

/// `⟨P_κ | P_κ⟩'` from the telescoped product of infinite Pochhammer ratios.
pub fn norm_prime(kappa: &Partition, n: usize, lam: i64) -> Result<ExactScalar> {
    if lam < 1 {
        return Err(Error::InvalidArgument(format!("norm needs integer λ ≥ 1, got {lam}")));
    }
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let k = kappa.padded(n);
    let mut out = ExactScalar::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = k[i] as i64 - k[j] as i64;
            let g = (j - i) as i64;
            out = &out * &poch_inf_ratio(d + lam * g, d + lam * (g + 1))?;
            out = &out * &poch_inf_ratio(d + 1 + lam * g, d + 1 + lam * (g - 1))?;
        }
    }
    Ok(out)
}

/// `∏_{i<j} (w_i/w_j; q)_λ (w_j/w_i; q)_λ`.
pub fn symmetric_weight(n: usize, lam: usize) -> Product {
    let mut p = Product::new(n);
    for i in 0..n {
        for j in i + 1..n {
            p.push_poch(&[(i, 1), (j, -1)], 1, 0, lam);
            p.push_poch(&[(j, 1), (i, -1)], 1, 0, lam);
        }
    }
    p
}

/// `(1/n!) CT P_κ P_κ^* ∏_{i≠j} (w_i/w_j; q)_λ` at `t = q^λ`, computed directly.
pub fn norm_prime_ct(kappa: &Partition, n: usize, lam: usize) -> Result<ExactScalar> {
    let p = macdonald_poly(kappa, n)?.specialize(1, lam)?.to_laurent()?;
    let m = Marginal::boxed(
        &symmetric_weight(n, lam),
        n,
        kappa.first() as i32,
        ExpandOptions::default(),
    )?;
    let nfact: i64 = (1..=n as i64).product();
    m.pair(&p, &p)?.checked_div(&ExactScalar::from_i64(nfact))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSumMode {
    Oracle,
    AlphaFormula,
    AFormula,
}

/// Coefficients `c_κ` with `p̃_k = Σ_{|κ|=k} c_κ P_κ`. The oracle is formal
/// in `(q, t)` when `lam` is `None`; formula modes need `t = q^λ`.
pub fn power_sum_in_p(
    k: usize,
    n: usize,
    mode: PowerSumMode,
    lam: Option<usize>,
) -> Result<BTreeMap<Partition, ExactScalar>> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("power sums need k ≥ 1 and n ≥ 1".into()));
    }
    let shapes = Partition::bounded(k, n);
    match mode {
        PowerSumMode::Oracle => {
            let mut residual: BTreeMap<Partition, ExactScalar> = BTreeMap::new();
            residual.insert(Partition::row(k), ExactScalar::one());
            let mut out = BTreeMap::new();
            for kappa in &shapes {
                let c = residual.get(kappa).cloned().unwrap_or_default();
                if c.is_zero() {
                    continue;
                }
                for (mu, a) in macdonald_poly(kappa, n)?.expansion.iter() {
                    let slot = residual.entry(mu.clone()).or_default();
                    *slot = &*slot - &(&c * a);
                }
                out.insert(kappa.clone(), c);
            }
            if residual.values().any(|c| !c.is_zero()) {
                return Err(Error::InexactDivision("power sum not in the span of P_κ".into()));
            }
            match lam {
                None => Ok(out),
                Some(l) => out.into_iter().map(|(p, c)| Ok((p, c.specialize_t(l)?))).collect(),
            }
        }
        PowerSumMode::AlphaFormula | PowerSumMode::AFormula => {
            let lam = lam.ok_or_else(|| Error::InvalidArgument("formula modes need an integer λ".into()))?;
            shapes
                .iter()
                .map(|kappa| {
                    let c = if mode == PowerSumMode::AlphaFormula {
                        alpha(kappa, n, lam as i64)?.checked_div(&norm_prime(kappa, n, lam as i64)?)?
                    } else {
                        a_formula(kappa, lam as i64)?
                    };
                    Ok((kappa.clone(), c))
                })
                .collect()
        }
    }
}

/// `α_{κ;q}` of the power-sum expansion.
pub fn alpha(kappa: &Partition, n: usize, lam: i64) -> Result<ExactScalar> {
    let k = kappa.weight() as i64;
    let head = &q_bracket(k) * &q_gamma(kappa.first() as i64, 1)?;
    let gam = q_gamma(lam * n as i64 + 1, 1)?.checked_div(&q_gamma(lam + 1, 1)?.pow(n as i64)?)?;
    let spec = principal_specialization(kappa, n, lam)?;
    let num = shifted_factorial(0, kappa, lam, n, true)?;
    let den = shifted_factorial(1 + (n as i64 - 1) * lam, kappa, lam, n, false)?;
    let out = &(&head * &gam) * &(&spec * &num);
    out.checked_div(&(&q_factorial_base(n as i64, lam)? * &den))
}

/// The closed form for the power-sum coefficient `a_κ` at `t = q^λ`, taken literally.
pub fn a_formula(kappa: &Partition, lam: i64) -> Result<ExactScalar> {
    let r = kappa.len();
    let k = kappa.weight() as i64;
    let part = |i: usize| kappa.part(i - 1) as i64;
    let mut out = &ExactScalar::q_pow(lam * kappa.n_stat() as i64) * &q_bracket(k);
    out = &out * &q_gamma(part(1), 1)?;
    for i in 2..=r {
        out = &out * &q_rising(lam * (1 - i as i64), part(i));
    }
    for i in 1..=r {
        out = out.checked_div(&q_gamma(lam * (r - i) as i64 + part(i), 1)?)?;
    }
    for i in 1..=r {
        for j in i + 1..=r {
            let base = part(i) - part(j) + 1 + lam * (j - i - 1) as i64;
            out = &out * &q_rising(base, lam);
        }
    }
    Ok(out)
}

/// `(1 - q^k) X^κ_{(k)} / c'_κ`, formal in `(q, t)`.
pub fn book_coefficient(kappa: &Partition) -> Result<ExactScalar> {
    let k = kappa.weight() as i64;
    let (_, cp) = kappa.arm_leg_products();
    let x = kappa.x_row_coeff()?;
    (&(&ExactScalar::one() - &ExactScalar::q_pow(k)) * &x).checked_div(&cp)
}

/// Row-length form `t^{n(κ)} (q;q)_{κ_1-1} ∏_{i≥2} (t^{1-i};q)_{κ_i}`.
pub fn x_row_label_form(kappa: &Partition) -> Result<ExactScalar> {
    let mut out = &ExactScalar::t_pow(kappa.n_stat() as i64) * &poch_qpow(1, kappa.first() as i64 - 1)?;
    for i in 2..=kappa.len() {
        out = &out * &poch_scalar(&ExactScalar::t_pow(1 - i as i64), kappa.part(i - 1) as i64)?;
    }
    Ok(out)
}

/// Row-length form of `c'_κ` at `t = q^λ`, taken literally.
pub fn c_prime_label_form(kappa: &Partition, lam: i64) -> Result<ExactScalar> {
    let r = kappa.len();
    let part = |i: usize| kappa.part(i - 1) as i64;
    let mut out = ExactScalar::one();
    for i in 1..=r {
        out = out.checked_div(&poch_qpow(1, part(i) + lam * (r - i) as i64)?)?;
    }
    for i in 1..=r {
        for j in i + 1..=r {
            out = &out * &poch_qpow(part(i) - part(j) + 1 + lam * (j - i - 1) as i64, lam)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn row_form_of_c_prime_is_reciprocal() {
        for k in 1..=6 {
            for kappa in Partition::all(k) {
                for lam in 1..=3 {
                    let nodes = kappa.arm_leg_products().1.specialize_t(lam).unwrap();
                    let rows = c_prime_label_form(&kappa, lam as i64).unwrap();
                    assert!((&rows * &nodes).is_one(), "{kappa} lam={lam}");
                }
            }
        }
    }

    #[test]
    fn principal_values() {
        assert_eq!(principal_specialization(&p("1"), 2, 1).unwrap().to_string(), "1 + q");
        assert!(principal_specialization(&Partition::empty(), 3, 2).unwrap().is_one());
        assert_eq!(principal_specialization(&p("1,1"), 2, 1).unwrap().to_string(), "q");
    }

    #[test]
    fn principal_matches_evaluation() {
        for (kappa, n, lam) in [("2", 2, 1), ("2,1", 3, 1), ("2", 3, 2)] {
            let k = p(kappa);
            let poly = macdonald_poly(&k, n)
                .unwrap()
                .specialize(1, lam)
                .unwrap()
                .to_laurent()
                .unwrap();
            let mut value = ExactScalar::zero();
            for (e, c) in poly.terms() {
                let deg: i64 = e
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| i as i64 * lam as i64 * x as i64)
                    .sum();
                value = &value + &(c * &ExactScalar::q_pow(deg));
            }
            assert_eq!(value, principal_specialization(&k, n, lam as i64).unwrap(), "{kappa}");
        }
    }

    #[test]
    fn norm_values() {
        assert!(norm_prime(&Partition::empty(), 2, 1).unwrap().is_one());
        assert!(norm_prime(&p("1"), 2, 1).unwrap().is_one());
        for (kappa, n, lam) in [("1", 2, 1), ("2", 2, 1), ("1,1", 2, 2), ("2,1", 3, 1)] {
            let k = p(kappa);
            assert_eq!(
                norm_prime(&k, n, lam).unwrap(),
                norm_prime_ct(&k, n, lam as usize).unwrap(),
                "{kappa}"
            );
        }
    }

    #[test]
    fn oracle_power_sums() {
        let c = power_sum_in_p(1, 3, PowerSumMode::Oracle, None).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[&p("1")].is_one());
        let c2 = power_sum_in_p(2, 2, PowerSumMode::Oracle, None).unwrap();
        assert!(c2[&p("2")].is_one());
        for (kappa, v) in &c2 {
            assert_eq!(v, &book_coefficient(kappa).unwrap());
        }
    }
}
