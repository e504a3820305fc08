use super::{morris_rhs, push_selberg, weight_product, SelbergOptions, WeightSpec};
use crate::error::{Error, Result};
use crate::laurent::engine::ExpandOptions;
use crate::laurent::Marginal;
use crate::macdonald::appendix::principal_specialization;
use crate::macdonald::macdonald_poly;
use crate::qseries::{poch_qpow, q_factorial_base, shifted_factorial};
use crate::scalar::ExactScalar;
use crate::sym::Partition;

/// The constant term of `P_κ(·; q, q^λ)` against the one-block weight with
/// its one-variable factors, next to the two closed forms for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanekoCheck {
    pub ct: ExactScalar,
    pub product_form: ExactScalar,
    pub d0_form: ExactScalar,
}

impl KanekoCheck {
    pub fn all_equal(&self) -> bool {
        self.ct == self.product_form && self.ct == self.d0_form
    }
}

/// `1 / (q; q)_m`, zero for negative `m`.
fn inv_qfact(m: i64) -> Result<ExactScalar> {
    if m < 0 {
        Ok(ExactScalar::zero())
    } else {
        poch_qpow(1, m)?.recip()
    }
}

fn product_form(kappa: &Partition, n: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let k = kappa.padded(n);
    let (a, b, l, ni) = (a as i64, b as i64, lam as i64, n as i64);
    let sign = if kappa.weight().is_multiple_of(2) { 1 } else { -1 };
    let tri: i64 = k.iter().map(|&x| (x * (x + 1) / 2) as i64).sum();
    let mut out = &ExactScalar::monomial(sign, tri, 0) * &q_factorial_base(ni, l)?;
    for i in 0..n {
        for j in i + 1..n {
            let e = k[i] as i64 - k[j] as i64 + l * (j - i) as i64;
            out = &out * &poch_qpow(e, l)?;
        }
    }
    for i in 1..=ni {
        let ki = k[i as usize - 1] as i64;
        out = &out * &poch_qpow(1, a + b + (ni - i) * l)?;
        out = &out * &inv_qfact(a + (ni - i) * l + ki)?;
        out = &out * &inv_qfact(b + (i - 1) * l - ki)?;
    }
    Ok(out)
}

fn d0_form(kappa: &Partition, n: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let l = lam as i64;
    let pre = ExactScalar::q_pow((b as i64 + 1) * kappa.weight() as i64);
    let mut out = &pre * &morris_rhs(n, a, b, lam)?;
    out = &out * &principal_specialization(kappa, n, l)?;
    out = &out * &shifted_factorial(-(b as i64), kappa, l, n, false)?;
    out.checked_div(&shifted_factorial(
        a as i64 + 1 + (n as i64 - 1) * l,
        kappa,
        l,
        n,
        false,
    )?)
}

/// Three-way comparison for `P_κ` in `n` variables.
pub fn kaneko_ct_check(kappa: &Partition, n: usize, a: usize, b: usize, lam: usize) -> Result<KanekoCheck> {
    if lam < 1 {
        return Err(Error::InvalidArgument("the extension needs λ ≥ 1".into()));
    }
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let spec = WeightSpec::new(vec![n], lam)?;
    let mut prod = weight_product(&spec);
    push_selberg(&mut prod, &spec, a, b, SelbergOptions::default());
    let target = vec![(-(kappa.first() as i32), 0); n];
    let m = Marginal::new(&prod, &target, ExpandOptions::default())?;
    let poly = macdonald_poly(kappa, n)?.specialize(1, lam)?.to_laurent()?;
    Ok(KanekoCheck {
        ct: m.apply(&poly)?,
        product_form: product_form(kappa, n, a, b, lam)?,
        d0_form: d0_form(kappa, n, a, b, lam)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn empty_partition_is_morris() {
        let c = kaneko_ct_check(&Partition::empty(), 2, 1, 1, 1).unwrap();
        assert!(c.all_equal(), "{c:?}");
        assert_eq!(c.ct, morris_rhs(2, 1, 1, 1).unwrap());
    }

    #[test]
    fn single_box() {
        let c = kaneko_ct_check(&p("1"), 2, 1, 1, 1).unwrap();
        assert!(c.all_equal(), "{c:?}");
        assert!(!c.ct.is_zero());
    }

    #[test]
    fn forced_zero() {
        for kappa in ["1", "2", "1,1"] {
            let c = kaneko_ct_check(&p(kappa), 2, 1, 0, 1).unwrap();
            assert!(c.all_equal(), "{kappa}: {c:?}");
            assert!(c.ct.is_zero());
        }
    }
}
