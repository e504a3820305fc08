use super::WeightSpec;
use crate::error::{Error, Result};
use crate::laurent::engine::Product;
use crate::qseries::{q_bracket, q_bracket_base, q_factorial, q_factorial_base, q_gamma, q_rising};
use crate::scalar::ExactScalar;
use crate::sym::Partition;

fn g(n: i64) -> Result<ExactScalar> {
    q_gamma(n, 1)
}

/// `Γ_q(λn + 1) / Γ_q(λ + 1)^n`.
pub fn dyson_andrews(n: usize, lam: usize) -> Result<ExactScalar> {
    g((lam * n) as i64 + 1)?.checked_div(&g(lam as i64 + 1)?.pow(n as i64)?)
}

/// The conjectured value of the two-component integral with one `z` block.
pub fn conj21_rhs(n1: usize, n0: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let (n1, n0, a, b, lam) = (n1 as i64, n0 as i64, a as i64, b as i64, lam as i64);
    let mut num = q_gamma(n1 + 1, lam + 1)?;
    let mut den = g(1 + lam)?.pow(n0 + n1)?;
    for j in 0..n1 {
        let base = (lam + 1) * j + lam * n0;
        num = &num * &(&g(base + a + b + 1)? * &g((lam + 1) * (j + 1) + lam * n0)?);
        den = &den * &(&g(base + a + 1)? * &g(base + b + 1)?);
    }
    for l in 0..n0 {
        num = &num * &(&g(a + b + 1 + lam * l)? * &g(1 + lam * (l + 1))?);
        den = &den * &(&g(a + 1 + lam * l)? * &g(b + 1 + lam * l)?);
    }
    num.checked_div(&den)
}

/// The one-block value, `conj21_rhs` with no `z` variables.
pub fn morris_rhs(n0: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    conj21_rhs(0, n0, a, b, lam)
}

/// The conjectured ratio of integrals when the last block grows by one.
/// Errors when `N_p < N_j - 1` for some `1 ≤ j < p`.
pub fn conj22_ratio_rhs(spec: &WeightSpec, a: usize, b: usize) -> Result<ExactScalar> {
    if spec.p == 0 {
        return Err(Error::InvalidArgument("the ratio needs at least one z block".into()));
    }
    let np = spec.n[spec.p];
    if let Some(j) = (1..spec.p).find(|&j| np + 1 < spec.n[j]) {
        return Err(Error::InvalidArgument(format!(
            "hypothesis N_p ≥ N_j - 1 fails at j={j} for {spec}"
        )));
    }
    let lam = spec.lam as i64;
    let s = lam * spec.n[..spec.p].iter().sum::<usize>() as i64;
    let np = np as i64;
    let (a, b) = (a as i64, b as i64);
    let base = (lam + 1) * np + s;
    let pre = q_bracket_base(np + 1, lam + 1).checked_div(&g(lam + 1)?)?;
    let num = &g(base + a + b + 1)? * &g((lam + 1) * (np + 1) + s)?;
    let den = &g(base + a + 1)? * &g(base + b + 1)?;
    Ok(&pre * &num.checked_div(&den)?)
}

/// Which leading factorial the norm formula uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormForm {
    /// `[κ_1]_{q^{λ+1}}!`, matching the `Γ_{q^{λ+1}}(N_1 + 1)` of the integral.
    #[default]
    BaseShifted,
    /// `[κ_1]_q!` as printed.
    AsPrinted,
}

/// The conjectured norm at `N_1 = κ_1`, with `(x; q)_λ` read as
/// `Γ_q(x + λ) / Γ_q(x)`.
pub fn norm44_rhs(kappa: &Partition, n0: usize, lam: usize, form: NormForm) -> Result<ExactScalar> {
    if lam < 1 {
        return Err(Error::InvalidArgument("the norm formula needs λ ≥ 1".into()));
    }
    if kappa.len() > n0 {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n0} parts"
        )));
    }
    let k1 = kappa.first();
    let l = lam as i64;
    let conj = kappa.conjugate();
    let head = match form {
        NormForm::BaseShifted => q_factorial_base(k1 as i64, l + 1)?,
        NormForm::AsPrinted => q_factorial(k1 as i64)?,
    };
    let mut out = &head * &q_gamma(l * n0 as i64 + 1, l)?;
    out = out.checked_div(&g(1 + l)?.pow((n0 + k1) as i64)?)?;
    for j in 1..=k1 {
        let f = kappa.frequency(j) as i64;
        let tail = conj.part(j - 1) as i64;
        let jj = j as i64;
        out = &out * &q_rising(l * f + 1, l);
        out = &out * &q_rising((l + 1) * jj + 1 + l * tail, l);
        out = &out * &q_rising((l + 1) * (jj - 1) + 1 + l * (n0 as i64 - tail), l);
        out = out.checked_div(&q_rising((l + 1) * jj + 1 + l * f, l))?;
    }
    Ok(out)
}

/// Which version of the growth factor for `N_1 → N_1 + 1` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GrowthForm {
    /// The ratio formula for the integrals at `a = b = 0`.
    #[default]
    FromRatio,
    /// `[(λ+1)(j+1)]_q / Γ_q(1+λ) · ((λ+1)j + λN_0 + 1; q)_λ` as printed.
    AsPrinted,
}

/// Factor taking the norm from `N_1 = j` to `N_1 = j + 1`.
pub fn norm_growth_factor(j: usize, n0: usize, lam: usize, form: GrowthForm) -> Result<ExactScalar> {
    let (j, n0, l) = (j as i64, n0 as i64, lam as i64);
    let rise = q_rising((l + 1) * j + l * n0 + 1, l);
    let head = match form {
        GrowthForm::FromRatio => q_bracket_base(j + 1, l + 1),
        GrowthForm::AsPrinted => q_bracket((l + 1) * (j + 1)),
    };
    Ok(&head.checked_div(&g(1 + l)?)? * &rise)
}

/// The conjectured norm at any `N_1 ≥ κ_1`.
pub fn norm44_extended(
    kappa: &Partition,
    n0: usize,
    n1: usize,
    lam: usize,
    form: NormForm,
    growth: GrowthForm,
) -> Result<ExactScalar> {
    let k1 = kappa.first();
    if n1 < k1 {
        return Err(Error::InvalidArgument(format!("N_1 = {n1} below κ_1 = {k1}")));
    }
    let mut out = norm44_rhs(kappa, n0, lam, form)?;
    for j in k1..n1 {
        out = &out * &norm_growth_factor(j, n0, lam, growth)?;
    }
    Ok(out)
}

fn prop51_common(n0: usize, n1: usize, k: usize) -> Result<ExactScalar> {
    if n1 < 1 || k + 2 > n0 {
        return Err(Error::InvalidArgument(format!(
            "need N_1 ≥ 1 and k + 2 ≤ N_0, got N_0={n0} N_1={n1} k={k}"
        )));
    }
    let (n0, n1, k) = (n0 as i64, n1 as i64, k as i64);
    let mut out = &q_factorial(n0)? * &q_factorial_base(n1, 2)?;
    out = &out * &q_bracket(n0 - 1 - k);
    for l in 1..n1 {
        out = &out * &q_bracket(n0 + 2 * n1 + 1 - 2 * l);
    }
    Ok(out)
}

/// `⟨m_{1^{k+2}} | m_{1^{k+2}}⟩` at `p = λ = 1`.
pub fn prop51_norm(n0: usize, n1: usize, k: usize) -> Result<ExactScalar> {
    Ok(&prop51_common(n0, n1, k)? * &q_bracket(k as i64 + 3))
}

/// `⟨m_{1^{k+2}} | s_{21^k}⟩` at `p = λ = 1`.
pub fn prop51_cross(n0: usize, n1: usize, k: usize) -> Result<ExactScalar> {
    Ok(&(&ExactScalar::q() * &prop51_common(n0, n1, k)?) * &q_bracket(k as i64 + 1))
}

/// Coefficient of `s_{1^{k+2}}` in `p_{21^k}` at `p = λ = 1`.
pub fn prop51_coefficient(k: usize) -> Result<ExactScalar> {
    let k = k as i64;
    Ok(-&(&ExactScalar::q() * &q_bracket(k + 1).checked_div(&q_bracket(k + 3))?))
}

/// `∏_i (x_i; q)_a (q/x_i; q)_b ∏_{i<j} (x_j/x_i; q)_λ (q x_i/x_j; q)_{λ-1}`,
/// optionally times the extra factors turning the last two variables into a
/// `z` block.
pub fn reduced_morris_product(n: usize, a: usize, b: usize, lam: usize, two_block: bool) -> Result<Product> {
    if lam < 1 {
        return Err(Error::InvalidArgument("the reduced form needs λ ≥ 1".into()));
    }
    if two_block && n < 2 {
        return Err(Error::InvalidArgument("the two-block form needs n ≥ 2".into()));
    }
    let mut prod = Product::new(n);
    for i in 0..n {
        prod.push_poch(&[(i, 1)], 1, 0, a);
        prod.push_poch(&[(i, -1)], 1, 1, b);
        for j in i + 1..n {
            prod.push_poch(&[(j, 1), (i, -1)], 1, 0, lam);
            prod.push_poch(&[(i, 1), (j, -1)], 1, 1, lam - 1);
        }
    }
    if two_block {
        let (y1, y2) = (n - 2, n - 1);
        let t = lam as i64;
        prod.push_binomial(&[(y1, 1), (y2, -1)], -1, t);
        prod.push_binomial(&[(y2, 1), (y1, -1)], -1, t);
        for i in 0..n - 2 {
            prod.push_binomial(&[(i, 1), (y1, -1)], -1, t);
            prod.push_binomial(&[(i, 1), (y2, -1)], -1, t);
        }
    }
    Ok(prod)
}

/// Closed form of the constant term of the reduced product.
pub fn reduced_morris_rhs(n: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let (n, a, b, l) = (n as i64, a as i64, b as i64, lam as i64);
    let mut num = ExactScalar::one();
    let mut den = ExactScalar::one();
    for j in 0..n {
        num = &num * &(&g(l * j + a + b + 1)? * &g(l * (j + 1))?);
        den = &den * &(&(&g(l * j + a + 1)? * &g(l * j + b + 1)?) * &g(l)?);
    }
    num.checked_div(&den)
}

/// Ratio of the two-block reduced constant term to the one-block one with
/// `n = N_0 + 2` variables.
pub fn two_block_ratio(n0: usize, a: usize, b: usize, lam: usize) -> Result<ExactScalar> {
    let one = ExactScalar::one();
    let q = ExactScalar::q();
    let s = ExactScalar::q_pow(a as i64);
    let u = ExactScalar::q_pow(b as i64);
    let t = |e: usize| ExactScalar::q_pow((lam * e) as i64);
    let num = [
        &one - &t(n0 + 1),
        &one - &t(n0 + 2),
        &one - &(&(&q * &u) * &(&s * &t(n0 + 1))),
        &one - &(&q * &t(n0 + 2)),
    ];
    let den = [
        &one - &t(1),
        &one - &t(1),
        &one - &(&(&q * &u) * &t(n0 + 1)),
        &one - &(&(&q * &s) * &t(n0 + 1)),
    ];
    let n: ExactScalar = num.into_iter().product();
    let d: ExactScalar = den.into_iter().product();
    n.checked_div(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::engine::ExpandOptions;
    use crate::weight::{dp_integral, weight_ct};

    fn s(t: &str) -> ExactScalar {
        t.parse().unwrap()
    }

    #[test]
    fn conj21_small_values() {
        assert_eq!(conj21_rhs(1, 0, 1, 1, 0).unwrap(), s("1 + q"));
        assert_eq!(conj21_rhs(0, 2, 0, 0, 1).unwrap(), s("1 + q"));
        assert_eq!(conj21_rhs(0, 2, 0, 0, 1).unwrap(), dyson_andrews(2, 1).unwrap());
    }

    #[test]
    fn ratio_matches_quotient_for_one_block() {
        for (n0, n1, a, b, lam) in [(1, 1, 0, 1, 1), (2, 0, 1, 1, 2), (0, 2, 2, 0, 1)] {
            let spec = WeightSpec::new(vec![n0, n1], lam).unwrap();
            let want = conj21_rhs(n1 + 1, n0, a, b, lam)
                .unwrap()
                .checked_div(&conj21_rhs(n1, n0, a, b, lam).unwrap())
                .unwrap();
            assert_eq!(conj22_ratio_rhs(&spec, a, b).unwrap(), want);
        }
        let bad = WeightSpec::new(vec![1, 3, 1], 1).unwrap();
        assert!(conj22_ratio_rhs(&bad, 0, 0).is_err());
    }

    #[test]
    fn prop51_instance() {
        assert_eq!(prop51_norm(2, 1, 0).unwrap(), s("(1 + q)*(1 + q + q^2)"));
        assert!(prop51_norm(2, 1, 1).is_err());
    }

    #[test]
    fn growth_of_empty_norm() {
        // ⟨1|1⟩ at N_0 = 1, λ = 1 goes from 1 to 1 + q as N_1 goes from 0 to 1.
        let spec = WeightSpec::new(vec![1, 1], 1).unwrap();
        let direct = dp_integral(&spec, 0, 0).unwrap();
        assert_eq!(direct, s("1 + q"));
        let from_ratio = norm_growth_factor(0, 1, 1, GrowthForm::FromRatio).unwrap();
        assert_eq!(from_ratio, direct);
        let printed = norm_growth_factor(0, 1, 1, GrowthForm::AsPrinted).unwrap();
        assert_ne!(printed, direct);
    }

    #[test]
    fn reduced_forms() {
        for (n, a, b, lam) in [(2, 1, 0, 1), (3, 0, 1, 1), (2, 1, 1, 2)] {
            let ct = reduced_morris_product(n, a, b, lam, false)
                .unwrap()
                .constant_term(ExpandOptions::default())
                .unwrap()
                .to_scalar();
            assert_eq!(ct, reduced_morris_rhs(n, a, b, lam).unwrap());
        }
        assert_eq!(
            weight_ct(&WeightSpec::new(vec![3], 1).unwrap(), ExpandOptions::default()).unwrap(),
            dyson_andrews(3, 1).unwrap()
        );
    }

    #[test]
    fn two_block_identity() {
        for (n0, a, b, lam) in [(0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 2)] {
            let ct = |two| {
                reduced_morris_product(n0 + 2, a, b, lam, two)
                    .unwrap()
                    .constant_term(ExpandOptions::default())
                    .unwrap()
                    .to_scalar()
            };
            assert_eq!(ct(true), &two_block_ratio(n0, a, b, lam).unwrap() * &ct(false));
        }
    }
}
