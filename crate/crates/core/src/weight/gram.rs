use log::debug;

use super::{InnerProductConfig, WeightSpec};
use crate::error::{Error, Result};
use crate::laurent::engine::ExpandOptions;
use crate::macdonald::MacdonaldOp;
use crate::scalar::ExactScalar;
use crate::sym::{monomial_sym, Basis, Partition, SymExpansion};

/// `G[i][j] = ⟨m_i | m_j⟩` over the partitions of one weight that sit at or
/// below `top` in reverse lexicographic order, lowest first.
#[derive(Clone, Debug)]
pub struct SymbolicGram {
    pub shapes: Vec<Partition>,
    pub matrix: Vec<Vec<ExactScalar>>,
}

impl SymbolicGram {
    pub fn new(cfg: &InnerProductConfig, top: &Partition) -> Result<Self> {
        let n0 = cfg.weight.n0();
        let mut shapes: Vec<Partition> = Partition::bounded(top.weight(), n0)
            .into_iter()
            .filter(|mu| mu.revlex_cmp(top).is_le())
            .collect();
        shapes.sort_by(|a, b| a.revlex_cmp(b));
        let monos = shapes
            .iter()
            .map(|mu| monomial_sym(mu, n0))
            .collect::<Result<Vec<_>>>()?;
        let matrix = monos
            .iter()
            .map(|f| {
                monos
                    .iter()
                    .map(|g| cfg.inner_product(f, g))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolicGram { shapes, matrix })
    }
}

/// Solve `A x = b` exactly; `None` when `A` is singular.
fn solve(mut a: Vec<Vec<ExactScalar>>, mut b: Vec<ExactScalar>) -> Result<Option<Vec<ExactScalar>>> {
    let n = b.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(None);
        };
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].checked_div(&pivot[col])?;
            for (x, p) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                *x = &*x - &(&f * p);
            }
            let d = &f * &b[col];
            b[r] = &b[r] - &d;
        }
    }
    (0..n)
        .map(|i| b[i].checked_div(&a[i][i]))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// The monic `p_κ = m_κ + Σ_{μ<κ} x_μ m_μ` with `⟨m_μ | p_κ⟩ = 0` for every
/// `μ < κ`, from a prepared inner product.
pub fn gram_schmidt_with(cfg: &InnerProductConfig, kappa: &Partition) -> Result<SymExpansion> {
    let n0 = cfg.weight.n0();
    if kappa.len() > n0 {
        return Err(Error::InvalidArgument(format!(
            "partition {kappa} has more than {n0} parts"
        )));
    }
    let gram = SymbolicGram::new(cfg, kappa)?;
    let k = gram.shapes.len() - 1;
    let a: Vec<Vec<ExactScalar>> = (0..k).map(|i| gram.matrix[i][..k].to_vec()).collect();
    let b: Vec<ExactScalar> = (0..k).map(|i| -&gram.matrix[i][k]).collect();
    let x = solve(a, b)?.ok_or_else(|| Error::SingularGram(format!("{kappa} with {}", cfg.weight)))?;
    let mut out = SymExpansion::new(Basis::Monomial, n0);
    out.add(kappa.clone(), ExactScalar::one())?;
    for (mu, c) in gram.shapes.iter().zip(x) {
        out.add(mu.clone(), c)?;
    }
    debug!("p_{kappa} for {}: {} terms", cfg.weight, out.len());
    Ok(out)
}

/// `p_κ` for the weight `spec`. Needs `λ ≥ 1` and `N_α ≥ κ_1 - 1`.
pub fn gram_schmidt_p(kappa: &Partition, spec: &WeightSpec, opts: ExpandOptions) -> Result<SymExpansion> {
    if spec.lam < 1 {
        return Err(Error::InvalidArgument("the construction needs λ ≥ 1".into()));
    }
    if let Some(a) = (1..=spec.p).find(|&a| spec.n[a] + 1 < kappa.first()) {
        return Err(Error::InvalidArgument(format!(
            "block {a} has {} variables, fewer than κ_1 - 1 for κ = {kappa}",
            spec.n[a]
        )));
    }
    let cfg = InnerProductConfig::new(spec, kappa.first(), opts)?;
    gram_schmidt_with(&cfg, kappa)
}

/// Whether every `z` block satisfies the adjointness hypothesis for `(κ, μ)`.
pub fn adjoint_hypothesis(kappa: &Partition, mu: &Partition, spec: &WeightSpec) -> bool {
    let need = if kappa.first() == mu.first() {
        kappa.first().saturating_sub(1)
    } else {
        kappa.first().min(mu.first())
    };
    spec.n[1..].iter().all(|&n| n >= need)
}

/// `⟨M m_κ | m_μ⟩ - ⟨m_κ | M m_μ⟩` for `M = M^{(r)}(q t^p, t)`, `t = q^λ`.
pub fn adjoint_residual(cfg: &InnerProductConfig, kappa: &Partition, mu: &Partition, r: usize) -> Result<ExactScalar> {
    let spec = &cfg.weight;
    let n0 = spec.n0();
    let shift = ExactScalar::q_pow((1 + spec.p * spec.lam) as i64);
    let op = MacdonaldOp::new(n0, r, shift, ExactScalar::q_pow(spec.lam as i64))?;
    let mk = monomial_sym(kappa, n0)?;
    let mm = monomial_sym(mu, n0)?;
    let left = cfg.inner_product(&op.apply(&mk)?, &mm)?;
    let right = cfg.inner_product(&mk, &op.apply(&mm)?)?;
    Ok(&left - &right)
}
