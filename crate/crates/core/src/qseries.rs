//! q-Pochhammer symbols, q-brackets, q-factorials and q-gamma values at
//! integer arguments.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::ExactScalar;
use crate::sym::Partition;

fn one_minus(x: &ExactScalar) -> ExactScalar {
    &ExactScalar::one() - x
}

/// `(a; q)_λ = ∏_{l<λ} (1 - a q^l)`, expanded.
pub fn poch(a: &LaurentPoly, lam: i64) -> Result<LaurentPoly> {
    if lam < 0 {
        return Err(Error::InvalidArgument(format!("Pochhammer length {lam} is negative")));
    }
    let vars = a.vars().clone();
    let one = LaurentPoly::one(&vars);
    let mut out = one.clone();
    for l in 0..lam {
        let f = one.sub(&a.scale(&ExactScalar::q_pow(l)))?;
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// `(a; q)_λ` for a scalar argument.
pub fn poch_scalar(a: &ExactScalar, lam: i64) -> Result<ExactScalar> {
    if lam < 0 {
        return Err(Error::InvalidArgument(format!("Pochhammer length {lam} is negative")));
    }
    Ok((0..lam).map(|l| one_minus(&(a * &ExactScalar::q_pow(l)))).product())
}

/// `(q^e; q)_len`.
pub fn poch_qpow(e: i64, len: i64) -> Result<ExactScalar> {
    poch_scalar(&ExactScalar::q_pow(e), len)
}

/// `(q^a; q)_∞ / (q^b; q)_∞` for integers, by telescoping.
pub fn poch_inf_ratio(a: i64, b: i64) -> Result<ExactScalar> {
    if b >= a {
        poch_qpow(a, b - a)
    } else {
        poch_qpow(b, a - b)?
            .recip()
            .map_err(|_| Error::Pole(format!("(q^{b};q)_{} vanishes", a - b)))
    }
}

/// `[a]_{q^m} = (1 - q^{ma}) / (1 - q^m)`, any integer `a`.
pub fn q_bracket_base(a: i64, m: i64) -> ExactScalar {
    if m <= 0 {
        panic!("q-bracket base exponent must be positive, got {m}");
    }
    let num = one_minus(&ExactScalar::q_pow(m * a));
    &num / &one_minus(&ExactScalar::q_pow(m))
}

pub fn q_bracket(a: i64) -> ExactScalar {
    q_bracket_base(a, 1)
}

/// `[n]_{q^m}! = ∏_{j=1}^n [j]_{q^m}`.
pub fn q_factorial_base(n: i64, m: i64) -> Result<ExactScalar> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("factorial of negative {n}")));
    }
    Ok((1..=n).map(|j| q_bracket_base(j, m)).product())
}

pub fn q_factorial(n: i64) -> Result<ExactScalar> {
    q_factorial_base(n, 1)
}

/// `Γ_{q^m}(n) = [n-1]_{q^m}!` for integer `n ≥ 1`.
pub fn q_gamma(n: i64, m: i64) -> Result<ExactScalar> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("q-gamma at non-positive integer {n}")));
    }
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "q-gamma base exponent {m} must be positive"
        )));
    }
    q_factorial_base(n - 1, m)
}

/// `Γ_q(x + m) / Γ_q(x) = [x]_q [x+1]_q ... [x+m-1]_q` for any integer `x`.
pub fn q_rising(x: i64, m: i64) -> ExactScalar {
    (0..m).map(|i| q_bracket(x + i)).product()
}

/// `[x]_κ = ∏_j ∏_{i<κ_j} [x - λ(j-1) + i]_q`. With `omit_first` the `j = 1`
/// row is left out.
pub fn shifted_factorial(x: i64, kappa: &Partition, lam: i64, n: usize, omit_first: bool) -> Result<ExactScalar> {
    if lam < 1 {
        return Err(Error::InvalidArgument(format!(
            "shifted factorial needs λ ≥ 1, got {lam}"
        )));
    }
    if kappa.len() > n {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n} parts"
        )));
    }
    let mut out = ExactScalar::one();
    for (j, &k) in kappa.parts().iter().enumerate() {
        if omit_first && j == 0 {
            continue;
        }
        for i in 0..k as i64 {
            out = &out * &q_bracket(x - lam * j as i64 + i);
        }
    }
    Ok(out)
}
