use std::time::Instant;

use log::{error, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::context::Context;
use super::report::{Verdict, VerificationReport};
use super::spots::{point_seed, spot_check, Value};
use crate::error::{Error, Result};
use crate::laurent::engine::ExpandOptions;
use crate::macdonald::appendix::{c_prime_label_form, norm_prime, norm_prime_ct, power_sum_in_p, PowerSumMode};
use crate::macdonald::{first_order_via_schur, MacdonaldOp};
use crate::qseries::q_bracket;
use crate::scalar::ExactScalar;
use crate::sym::{monomial_sym, schur, Basis, Partition, SymExpansion};
use crate::weight::bg_sum::{bg_sum, d1_at_a_eq_lam, inversion_ct_rhs, inversion_product, s_closed, InversionConfig};
use crate::weight::{
    adjoint_hypothesis, adjoint_residual, conj21_rhs, conj22_ratio_rhs, dp_functional, dp_integral_with, dyson_andrews,
    kaneko_ct_check, morris_rhs, norm44_extended, norm44_rhs, prop51_coefficient, prop51_cross, prop51_norm,
    reduced_morris_product, reduced_morris_rhs, two_block_ratio, weight_ct, GrowthForm, NormForm, SelbergOptions,
    WeightSpec,
};

/// How a statement's failures are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Proved; a mismatch is a refutation.
    Theorem,
    /// Open; a mismatch is reported.
    Conjecture,
    /// A literal reading compared for the record.
    Reported,
}

/// Optional overrides of a suite's default grid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub p: Option<Vec<usize>>,
    pub n0: Option<Vec<usize>>,
    pub n1: Option<Vec<usize>>,
    pub n2: Option<Vec<usize>>,
    pub lam: Option<Vec<usize>>,
    pub a: Option<Vec<usize>>,
    pub b: Option<Vec<usize>>,
    /// Partition sizes, or `k` where a suite is indexed by one integer.
    pub k: Option<Vec<usize>>,
    pub r: Option<Vec<usize>>,
    pub kappa: Option<Vec<Partition>>,
}

fn pick(o: &Option<Vec<usize>>, default: impl IntoIterator<Item = usize>) -> Vec<usize> {
    o.clone().unwrap_or_else(|| default.into_iter().collect())
}

impl Grid {
    /// Nonempty partitions with sizes from `k` (default `sizes`), or the explicit list.
    fn partitions(&self, sizes: impl IntoIterator<Item = usize>) -> Vec<Partition> {
        match &self.kappa {
            Some(ps) => ps.clone(),
            None => pick(&self.k, sizes)
                .into_iter()
                .filter(|&k| k > 0)
                .flat_map(Partition::all)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSpec {
    pub id: String,
    pub grid: Grid,
    pub seed: u64,
}

impl SuiteSpec {
    pub fn new(id: &str) -> Self {
        SuiteSpec {
            id: id.to_string(),
            grid: Grid::default(),
            seed: 0,
        }
    }
}

/// One comparison produced by a grid point.
pub(crate) struct Outcome {
    label: String,
    kind: Option<Kind>,
    lhs: Value,
    rhs: Value,
}

impl Outcome {
    fn new(lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        Outcome {
            label: String::new(),
            kind: None,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn kind(mut self, kind: Kind) -> Self {
        self.kind = Some(kind);
        self
    }
}

type Task = Box<dyn Fn(&Context) -> Result<Vec<Outcome>> + Send + Sync>;

enum Work {
    Skip(String),
    Run(Task),
}

pub(crate) struct Point {
    params: String,
    kind: Kind,
    work: Work,
}

impl Point {
    fn run(params: String, kind: Kind, f: impl Fn(&Context) -> Result<Vec<Outcome>> + Send + Sync + 'static) -> Self {
        Point {
            params,
            kind,
            work: Work::Run(Box::new(f)),
        }
    }

    fn skip(params: String, reason: impl Into<String>) -> Self {
        Point {
            params,
            kind: Kind::Theorem,
            work: Work::Skip(reason.into()),
        }
    }
}

/// A registered statement.
pub struct Statement {
    pub id: &'static str,
    pub kind: Kind,
    pub title: &'static str,
    build: fn(&Grid) -> Result<Vec<Point>>,
}

const STATEMENTS: &[Statement] = &[
    Statement {
        id: "dyson",
        kind: Kind::Theorem,
        title: "one-block constant term",
        build: dyson,
    },
    Statement {
        id: "morris",
        kind: Kind::Theorem,
        title: "one-block integral with one-variable factors",
        build: morris,
    },
    Statement {
        id: "conj-2.1",
        kind: Kind::Conjecture,
        title: "two-component integral",
        build: conj21,
    },
    Statement {
        id: "conj-2.2",
        kind: Kind::Conjecture,
        title: "growth ratio of the p-component integral",
        build: conj22,
    },
    Statement {
        id: "prop-3.1",
        kind: Kind::Theorem,
        title: "constant term with restricted inversions",
        build: prop31,
    },
    Statement {
        id: "prop-3.2",
        kind: Kind::Theorem,
        title: "two-block inversion sum",
        build: prop32,
    },
    Statement {
        id: "sec-3.2",
        kind: Kind::Theorem,
        title: "reduced two-block constant term",
        build: sec32,
    },
    Statement {
        id: "prop-5.1",
        kind: Kind::Theorem,
        title: "hook norms and hook polynomial",
        build: prop51,
    },
    Statement {
        id: "sec-5.2",
        kind: Kind::Theorem,
        title: "hook Macdonald polynomial in the Schur basis",
        build: sec52,
    },
    Statement {
        id: "conj-4.1",
        kind: Kind::Conjecture,
        title: "orthogonal polynomials are shifted Macdonald",
        build: conj41,
    },
    Statement {
        id: "conj-4.2",
        kind: Kind::Conjecture,
        title: "growth ratio of the functional on m_ρ",
        build: conj42,
    },
    Statement {
        id: "conj-4.3",
        kind: Kind::Conjecture,
        title: "operators are self-adjoint",
        build: conj43,
    },
    Statement {
        id: "conj-4.4",
        kind: Kind::Conjecture,
        title: "norm of the orthogonal polynomials",
        build: conj44,
    },
    Statement {
        id: "macdonald",
        kind: Kind::Theorem,
        title: "Macdonald polynomial machinery",
        build: macdonald,
    },
    Statement {
        id: "A1",
        kind: Kind::Theorem,
        title: "constant term of P_κ against the one-block weight",
        build: a1,
    },
    Statement {
        id: "prop-A2",
        kind: Kind::Theorem,
        title: "power sums in the Macdonald basis",
        build: prop_a2,
    },
];

pub fn statements() -> &'static [Statement] {
    STATEMENTS
}

pub fn statement(id: &str) -> Result<&'static Statement> {
    STATEMENTS
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownStatement(id.to_string()))
}

fn verdict(kind: Kind, same: bool, spots_agree: bool) -> Verdict {
    match (same && spots_agree, kind) {
        (true, _) => Verdict::Verified,
        (false, Kind::Theorem) => Verdict::Refuted,
        (false, _) => Verdict::MismatchReported,
    }
}

fn evaluate(id: &str, point: &Point, ctx: &Context, seed: u64) -> Vec<VerificationReport> {
    let report = |params: String, lhs: String, rhs: String, verdict: Verdict, ms: u64| VerificationReport {
        statement: id.to_string(),
        params,
        lhs,
        rhs,
        verdict,
        ms,
        spots: vec![],
    };
    let task = match &point.work {
        Work::Skip(reason) => {
            info!("{id} {}: skipped, {reason}", point.params);
            return vec![report(
                point.params.clone(),
                format!("skipped: {reason}"),
                String::new(),
                Verdict::Skipped,
                0,
            )];
        }
        Work::Run(task) => task,
    };
    let start = Instant::now();
    let result = task(ctx);
    let ms = start.elapsed().as_millis() as u64;
    match result {
        Err(e) => {
            error!("{id} {}: {e}", point.params);
            let v = verdict(point.kind, false, false);
            vec![report(
                point.params.clone(),
                format!("error: {e}"),
                String::new(),
                v,
                ms,
            )]
        }
        Ok(outcomes) => outcomes
            .into_iter()
            .map(|o| {
                let params = if o.label.is_empty() {
                    point.params.clone()
                } else {
                    format!("{} {}", point.params, o.label)
                };
                let (lhs, rhs) = (o.lhs.text(), o.rhs.text());
                let spots = spot_check(&o.lhs, &o.rhs, point_seed(seed, id, &params));
                let v = verdict(o.kind.unwrap_or(point.kind), lhs == rhs, spots.iter().all(|s| s.agree));
                VerificationReport {
                    spots,
                    ..report(params, lhs, rhs, v, ms)
                }
            })
            .collect(),
    }
}

/// Every grid point of one statement, in a fixed order.
pub fn run_suite(spec: &SuiteSpec, ctx: &Context) -> Result<Vec<VerificationReport>> {
    let st = statement(&spec.id)?;
    let points = (st.build)(&spec.grid)?;
    info!("{}: {} grid points", st.id, points.len());
    let go = || -> Vec<VerificationReport> {
        points
            .par_iter()
            .map(|p| evaluate(st.id, p, ctx, spec.seed))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    match ctx.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(go))
        }
        None => Ok(go()),
    }
}

fn scalar_sum(f: &SymExpansion, c: &ExactScalar, g: &SymExpansion) -> Result<SymExpansion> {
    let mut out = f.clone();
    for (mu, d) in g.iter() {
        out.add(mu.clone(), c * d)?;
    }
    Ok(out)
}

fn scaled(f: &SymExpansion, c: &ExactScalar) -> Result<SymExpansion> {
    f.map_coeffs(|x| Ok(x * c))
}

fn dp(spec: &WeightSpec, a: usize, b: usize, ctx: &Context) -> Result<ExactScalar> {
    dp_integral_with(spec, a, b, SelbergOptions::default(), ctx.opts)
}

fn ct(prod: &crate::laurent::engine::Product, opts: ExpandOptions) -> Result<ExactScalar> {
    Ok(prod.constant_term(opts)?.to_scalar())
}

fn dyson(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, [2, 3, 4]) {
        for lam in pick(&g.lam, [1, 2]) {
            out.push(Point::run(format!("N0={n0} lam={lam}"), Kind::Theorem, move |ctx| {
                let spec = WeightSpec::new(vec![n0], lam)?;
                Ok(vec![Outcome::new(weight_ct(&spec, ctx.opts)?, dyson_andrews(n0, lam)?)])
            }));
        }
    }
    Ok(out)
}

fn morris(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 1..=3) {
        for lam in pick(&g.lam, 0..=2) {
            for a in pick(&g.a, 0..=2) {
                for b in pick(&g.b, 0..=2) {
                    let params = format!("N0={n0} lam={lam} a={a} b={b}");
                    out.push(Point::run(params, Kind::Theorem, move |ctx| {
                        let spec = WeightSpec::new(vec![n0], lam)?;
                        Ok(vec![Outcome::new(dp(&spec, a, b, ctx)?, morris_rhs(n0, a, b, lam)?)])
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn conj21(g: &Grid) -> Result<Vec<Point>> {
    let blocks: Vec<(usize, usize)> = if g.n0.is_none() && g.n1.is_none() {
        vec![(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]
    } else {
        let n1s = pick(&g.n1, [1, 2]);
        pick(&g.n0, [1, 2])
            .into_iter()
            .flat_map(|n0| n1s.iter().map(move |&n1| (n0, n1)))
            .collect()
    };
    let mut out = Vec::new();
    for (n0, n1) in blocks {
        for lam in pick(&g.lam, [1, 2]) {
            for a in pick(&g.a, 0..=2) {
                for b in pick(&g.b, 0..=2) {
                    let proved = a == lam || n1 <= 2;
                    let kind = if proved { Kind::Theorem } else { Kind::Conjecture };
                    let params = format!("N0={n0} N1={n1} lam={lam} a={a} b={b}");
                    out.push(Point::run(params, kind, move |ctx| {
                        let spec = WeightSpec::new(vec![n0, n1], lam)?;
                        let lhs = dp(&spec, a, b, ctx)?;
                        let mut v = vec![Outcome::new(lhs.clone(), conj21_rhs(n1, n0, a, b, lam)?)];
                        if a == lam && b > 0 && lam > 0 {
                            v.push(Outcome::new(lhs, d1_at_a_eq_lam(n0, n1, b, lam)?).labelled("form=sum"));
                        }
                        Ok(v)
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn conj22(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 0..=2) {
        for n1 in pick(&g.n1, 1..=2) {
            for n2 in pick(&g.n2, 0..=2) {
                for lam in pick(&g.lam, [1]) {
                    for a in pick(&g.a, 0..=1) {
                        for b in pick(&g.b, 0..=1) {
                            let params = format!("N0={n0} N1={n1} N2={n2} lam={lam} a={a} b={b}");
                            if n2 + 1 < n1 {
                                out.push(Point::skip(params, "needs N2 ≥ N1 - 1"));
                                continue;
                            }
                            out.push(Point::run(params, Kind::Conjecture, move |ctx| {
                                let spec = WeightSpec::new(vec![n0, n1, n2], lam)?;
                                let lhs = dp(&spec.grow_last(), a, b, ctx)?;
                                let rhs = &conj22_ratio_rhs(&spec, a, b)? * &dp(&spec, a, b, ctx)?;
                                Ok(vec![Outcome::new(lhs, rhs)])
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn prop31(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 0..=2) {
        for n1 in pick(&g.n1, 0..=2) {
            for b in pick(&g.b, 1..=2) {
                for lam in pick(&g.lam, 1..=2) {
                    let params = format!("N0={n0} N1={n1} b={b} lam={lam}");
                    if b == 0 || lam == 0 {
                        out.push(Point::skip(params, "needs b, λ ≥ 1"));
                        continue;
                    }
                    out.push(Point::run(params, Kind::Theorem, move |ctx| {
                        let cfg = InversionConfig::two_block(n0, n1, b, lam)?;
                        Ok(vec![Outcome::new(
                            ct(&inversion_product(&cfg), ctx.opts)?,
                            inversion_ct_rhs(&cfg)?,
                        )])
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn prop32(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 0..=3) {
        for n1 in pick(&g.n1, 0..=3) {
            for b in pick(&g.b, 1..=3) {
                for lam in pick(&g.lam, 1..=3) {
                    let params = format!("N0={n0} N1={n1} b={b} lam={lam}");
                    if b == 0 || lam == 0 {
                        out.push(Point::skip(params, "needs b, λ ≥ 1"));
                        continue;
                    }
                    out.push(Point::run(params, Kind::Theorem, move |_| {
                        let sum = bg_sum(n0, n1, b, lam)?;
                        let mut v = vec![Outcome::new(sum.clone(), s_closed(n0, n1, b, lam)?)];
                        if n1 == 0 {
                            let init = (&q_bracket(b as i64) * &q_bracket(lam as i64).pow(n0 as i64)?).recip()?;
                            v.push(Outcome::new(sum, init).labelled("form=initial"));
                        }
                        Ok(v)
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn sec32(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 0..=3) {
        for lam in pick(&g.lam, [1, 2]) {
            for a in pick(&g.a, 0..=1) {
                for b in pick(&g.b, 0..=1) {
                    let params = format!("N0={n0} lam={lam} a={a} b={b}");
                    if lam == 0 {
                        out.push(Point::skip(params, "needs λ ≥ 1"));
                        continue;
                    }
                    out.push(Point::run(params, Kind::Theorem, move |ctx| {
                        let n = n0 + 2;
                        let one = ct(&reduced_morris_product(n, a, b, lam, false)?, ctx.opts)?;
                        let two = ct(&reduced_morris_product(n, a, b, lam, true)?, ctx.opts)?;
                        let rhs = reduced_morris_rhs(n, a, b, lam)?;
                        Ok(vec![
                            Outcome::new(one, rhs.clone()).labelled("form=one-block"),
                            Outcome::new(two, &two_block_ratio(n0, a, b, lam)? * &rhs).labelled("form=two-block"),
                        ])
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn hook(k: usize) -> Result<Partition> {
    let mut parts = vec![2];
    parts.extend(std::iter::repeat_n(1, k));
    Partition::new(parts)
}

fn prop51(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n0 in pick(&g.n0, 2..=4) {
        for n1 in pick(&g.n1, 1..=2) {
            for k in pick(&g.k, 0..n0.saturating_sub(1)) {
                let params = format!("N0={n0} N1={n1} k={k}");
                if n1 < 1 || k + 2 > n0 {
                    out.push(Point::skip(params, "needs N1 ≥ 1 and k + 2 ≤ N0"));
                    continue;
                }
                out.push(Point::run(params, Kind::Theorem, move |ctx| {
                    let spec = WeightSpec::new(vec![n0, n1], 1)?;
                    let cfg = ctx.inner(&spec, 2)?;
                    let col = monomial_sym(&Partition::column(k + 2), n0)?;
                    let s_hook = schur(&hook(k)?, n0)?;
                    let s_col = schur(&Partition::column(k + 2), n0)?;
                    let p = crate::weight::gram_schmidt_with(&cfg, &hook(k)?)?;
                    Ok(vec![
                        Outcome::new(cfg.inner_product(&col, &col)?, prop51_norm(n0, n1, k)?).labelled("form=norm"),
                        Outcome::new(
                            cfg.inner_product(&col, &s_hook.to_laurent()?)?,
                            prop51_cross(n0, n1, k)?,
                        )
                        .labelled("form=cross"),
                        Outcome::new(p, scalar_sum(&s_hook, &prop51_coefficient(k)?, &s_col)?).labelled("form=poly"),
                    ])
                }));
            }
        }
    }
    Ok(out)
}

/// `((q - t)/(1 - q t^{n-1})) [n-1]_t`.
fn hook_gamma(n: usize) -> Result<ExactScalar> {
    let one = ExactScalar::one();
    let t = ExactScalar::t();
    let m = n as i64 - 1;
    let head = (&ExactScalar::q() - &t).checked_div(&(&one - &(&ExactScalar::q() * &t.pow(m)?)))?;
    let bracket = (&one - &t.pow(m)?).checked_div(&(&one - &t))?;
    Ok(&head * &bracket)
}

fn sec52(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for n in pick(&g.n0, 3..=5) {
        let params = format!("n={n}");
        if n < 2 {
            out.push(Point::skip(params, "needs n ≥ 2"));
            continue;
        }
        out.push(Point::run(params, Kind::Theorem, move |ctx| {
            let kappa = hook(n - 2)?;
            let p = ctx.macdonald(&kappa, n)?.expansion;
            let rhs = scalar_sum(&schur(&kappa, n)?, &hook_gamma(n)?, &schur(&Partition::column(n), n)?)?;
            Ok(vec![Outcome::new(p, rhs)])
        }));
    }
    for n in 2..=4 {
        for kappa in g.partitions(1..=3) {
            if kappa.len() > n {
                continue;
            }
            out.push(Point::run(
                format!("n={n} kappa={kappa} form=schur-route"),
                Kind::Theorem,
                move |_| {
                    let op = MacdonaldOp::formal(n, 1)?;
                    Ok(vec![Outcome::new(
                        first_order_via_schur(&op, &kappa)?,
                        op.on_monomial(&kappa)?,
                    )])
                },
            ));
        }
    }
    Ok(out)
}

fn conj41(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for lam in pick(&g.lam, [1, 2]) {
        for kappa in g.partitions(1..=4) {
            for n0 in pick(&g.n0, 1..=4) {
                if kappa.len() > n0 {
                    continue;
                }
                for n1 in pick(&g.n1, [kappa.first()]) {
                    let params = format!("p=1 N0={n0} N1={n1} lam={lam} kappa={kappa}");
                    if n1 + 1 < kappa.first() || lam == 0 {
                        out.push(Point::skip(params, "needs N1 ≥ κ1 - 1 and λ ≥ 1"));
                        continue;
                    }
                    let kappa = kappa.clone();
                    out.push(Point::run(params, Kind::Conjecture, move |ctx| {
                        let spec = WeightSpec::new(vec![n0, n1], lam)?;
                        let p = ctx.gram(&kappa, &spec)?;
                        Ok(vec![Outcome::new(p, ctx.macdonald(&kappa, n0)?.at_shifted(1, lam)?)])
                    }));
                }
            }
        }
    }
    if g.kappa.is_none() && pick(&g.lam, [1]).contains(&1) {
        out.push(Point::run(
            "p=2 N0=2 N1=2 N2=2 lam=1 kappa=2".into(),
            Kind::Conjecture,
            |ctx| {
                let kappa = Partition::row(2);
                let spec = WeightSpec::new(vec![2, 2, 2], 1)?;
                Ok(vec![Outcome::new(
                    ctx.gram(&kappa, &spec)?,
                    ctx.macdonald(&kappa, 2)?.at_shifted(2, 1)?,
                )])
            },
        ));
    }
    Ok(out)
}

fn conj42(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let rhos = match &g.kappa {
        Some(ps) => ps.clone(),
        None => ["1", "2", "1,1"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Partition>>>()?,
    };
    for n0 in pick(&g.n0, 1..=2) {
        for n1 in pick(&g.n1, 0..=2) {
            for lam in pick(&g.lam, [1]) {
                for a in pick(&g.a, 0..=1) {
                    for b in pick(&g.b, 0..=1) {
                        for rho in &rhos {
                            let params = format!("N0={n0} N1={n1} lam={lam} a={a} b={b} rho={rho} form=ratio");
                            if rho.len() > n0 {
                                out.push(Point::skip(params, "ρ has more parts than N0"));
                                continue;
                            }
                            let rho = rho.clone();
                            out.push(Point::run(params, Kind::Conjecture, move |ctx| {
                                let spec = WeightSpec::new(vec![n0, n1], lam)?;
                                let h = monomial_sym(&rho, n0)?;
                                let lhs = dp_functional(&spec.grow_last(), a, b, &h, ctx.opts)?;
                                let rhs = &conj22_ratio_rhs(&spec, a, b)? * &dp_functional(&spec, a, b, &h, ctx.opts)?;
                                Ok(vec![Outcome::new(lhs, rhs)])
                            }));
                        }
                    }
                }
            }
        }
    }
    if g.kappa.is_none() && g.n0.is_none() {
        for n2 in 0..=1 {
            let params = format!("N0=1 N1=1 N2={n2} lam=1 a=0 b=0 rho=1 form=ratio");
            out.push(Point::run(params, Kind::Conjecture, move |ctx| {
                let spec = WeightSpec::new(vec![1, 1, n2], 1)?;
                let h = monomial_sym(&Partition::row(1), 1)?;
                let lhs = dp_functional(&spec.grow_last(), 0, 0, &h, ctx.opts)?;
                let rhs = &conj22_ratio_rhs(&spec, 0, 0)? * &dp_functional(&spec, 0, 0, &h, ctx.opts)?;
                Ok(vec![Outcome::new(lhs, rhs)])
            }));
        }
    }
    for kappa in g.partitions(1..=3) {
        for n0 in pick(&g.n0, 2..=3) {
            if kappa.len() > n0 {
                continue;
            }
            let k1 = kappa.first();
            for n1 in [k1.saturating_sub(1), k1 + 1] {
                let params = format!("N0={n0} N1={n1} lam=1 kappa={kappa} form=stable");
                if n1 == 0 {
                    continue;
                }
                let kappa = kappa.clone();
                out.push(Point::run(params, Kind::Conjecture, move |ctx| {
                    let at = |n1| -> Result<SymExpansion> { ctx.gram(&kappa, &WeightSpec::new(vec![n0, n1], 1)?) };
                    Ok(vec![Outcome::new(at(n1)?, at(kappa.first())?)])
                }));
            }
        }
    }
    Ok(out)
}

fn conj43(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let shapes = g.partitions(1..=3);
    for p in pick(&g.p, [0, 1]) {
        for lam in pick(&g.lam, [1]) {
            for r in pick(&g.r, 1..=2) {
                for n0 in pick(&g.n0, 1..=3) {
                    for kappa in &shapes {
                        for mu in &shapes {
                            if kappa.weight() != mu.weight() || kappa.len() > n0 || mu.len() > n0 {
                                continue;
                            }
                            if p > 1 {
                                return Err(Error::InvalidArgument("this suite covers p ∈ {0, 1}".into()));
                            }
                            let mut n = vec![n0];
                            if p == 1 {
                                let need = (1..=4)
                                    .find(|&m| {
                                        let s = WeightSpec::new(vec![n0, m], lam).expect("non-empty");
                                        adjoint_hypothesis(kappa, mu, &s)
                                    })
                                    .unwrap_or(4);
                                n.push(need);
                            }
                            let sizes: Vec<String> = n.iter().map(|x| x.to_string()).collect();
                            let params = format!("p={p} N=({}) lam={lam} r={r} kappa={kappa} mu={mu}", sizes.join(","));
                            if r > n0 {
                                out.push(Point::skip(params, "operator order exceeds N0"));
                                continue;
                            }
                            let kind = if p == 0 { Kind::Theorem } else { Kind::Conjecture };
                            let (kappa, mu) = (kappa.clone(), mu.clone());
                            out.push(Point::run(params, kind, move |ctx| {
                                let spec = WeightSpec::new(n.clone(), lam)?;
                                let cfg = ctx.inner(&spec, kappa.first().max(mu.first()))?;
                                Ok(vec![Outcome::new(
                                    adjoint_residual(&cfg, &kappa, &mu, r)?,
                                    ExactScalar::zero(),
                                )])
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn conj44(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let shapes = match &g.kappa {
        Some(ps) => ps.clone(),
        None => ["1", "1,1", "2", "2,1"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Partition>>>()?,
    };
    for lam in pick(&g.lam, [1, 2]) {
        for kappa in &shapes {
            for n0 in pick(&g.n0, 1..=4) {
                if kappa.len() > n0 {
                    continue;
                }
                let k1 = kappa.first();
                let extra = if lam == 1 { vec![k1, k1 + 1] } else { vec![k1] };
                for n1 in pick(&g.n1, extra) {
                    let params = format!("N0={n0} N1={n1} lam={lam} kappa={kappa}");
                    if n1 < k1 || lam == 0 {
                        out.push(Point::skip(params, "needs N1 ≥ κ1 and λ ≥ 1"));
                        continue;
                    }
                    let kind = if lam == 1 { Kind::Conjecture } else { Kind::Reported };
                    let kappa = kappa.clone();
                    out.push(Point::run(params, kind, move |ctx| {
                        let spec = WeightSpec::new(vec![n0, n1], lam)?;
                        let f = ctx.gram(&kappa, &spec)?.to_laurent()?;
                        let cfg = ctx.inner(&spec, kappa.first())?;
                        let norm = cfg.inner_product(&f, &f)?;
                        let base = NormForm::BaseShifted;
                        let mut v = vec![Outcome::new(
                            norm.clone(),
                            norm44_extended(&kappa, n0, n1, lam, base, GrowthForm::FromRatio)?,
                        )];
                        if n1 == kappa.first() {
                            let printed = norm44_rhs(&kappa, n0, lam, NormForm::AsPrinted)?;
                            v.push(
                                Outcome::new(norm, printed)
                                    .labelled("form=printed")
                                    .kind(Kind::Reported),
                            );
                        } else {
                            let printed = norm44_extended(&kappa, n0, n1, lam, base, GrowthForm::AsPrinted)?;
                            v.push(
                                Outcome::new(norm, printed)
                                    .labelled("form=printed-growth")
                                    .kind(Kind::Reported),
                            );
                        }
                        Ok(v)
                    }));
                }
            }
        }
    }
    Ok(out)
}

/// `e_r(q^{κ_i} t^{n-i})`.
fn elementary_eigenvalue(kappa: &Partition, n: usize, r: usize) -> Result<ExactScalar> {
    let ys: Vec<ExactScalar> = (0..n)
        .map(|i| Ok(&ExactScalar::q_pow(kappa.part(i) as i64) * &ExactScalar::t_pow((n - 1 - i) as i64)))
        .collect::<Result<_>>()?;
    let mut e = vec![ExactScalar::zero(); r + 1];
    e[0] = ExactScalar::one();
    for y in &ys {
        for j in (1..=r).rev() {
            e[j] = &e[j] + &(&e[j - 1] * y);
        }
    }
    Ok(e[r].clone())
}

fn macdonald(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let shapes = g.partitions(1..=4);
    for n in pick(&g.n0, 1..=4) {
        for kappa in &shapes {
            if kappa.len() > n {
                continue;
            }
            let kappa = kappa.clone();
            out.push(Point::run(
                format!("n={n} kappa={kappa} form=eigen"),
                Kind::Theorem,
                move |ctx| {
                    let p = ctx.macdonald(&kappa, n)?.expansion;
                    let mut v = Vec::new();
                    for r in 1..=n.min(2) {
                        if r == 2 && n > 3 {
                            continue;
                        }
                        let op = MacdonaldOp::formal(n, r)?;
                        let idx: Vec<usize> = (0..n).collect();
                        let lhs = SymExpansion::from_symmetric(&op.apply(&p.to_laurent()?)?, &idx)?;
                        let e = elementary_eigenvalue(&kappa, n, r)?;
                        v.push(Outcome::new(lhs, scaled(&p, &e)?).labelled(format!("r={r}")));
                    }
                    let mut off = SymExpansion::new(Basis::Monomial, n);
                    for (mu, c) in p.iter() {
                        if !mu.dominated_by(&kappa) {
                            off.add(mu.clone(), c.clone())?;
                        }
                    }
                    v.push(Outcome::new(off, SymExpansion::new(Basis::Monomial, n)).labelled("triangular"));
                    Ok(v)
                },
            ));
        }
    }
    for lam in pick(&g.lam, [1, 2]) {
        for n in pick(&g.n0, 1..=4) {
            for kappa in &shapes {
                if kappa.len() > n {
                    continue;
                }
                let kappa = kappa.clone();
                out.push(Point::run(
                    format!("n={n} lam={lam} kappa={kappa} form=norm"),
                    Kind::Theorem,
                    move |_| {
                        Ok(vec![Outcome::new(
                            norm_prime(&kappa, n, lam as i64)?,
                            norm_prime_ct(&kappa, n, lam)?,
                        )])
                    },
                ));
            }
            if n > 3 {
                continue;
            }
            for kappa in shapes.iter().filter(|k| k.weight() <= 3 && k.len() <= n) {
                for mu in shapes
                    .iter()
                    .filter(|m| m.weight() == kappa.weight() && m.len() <= n && *m < kappa)
                {
                    let (kappa, mu) = (kappa.clone(), mu.clone());
                    let params = format!("n={n} lam={lam} kappa={kappa} mu={mu} form=orthogonal");
                    out.push(Point::run(params, Kind::Theorem, move |ctx| {
                        let pk = ctx.macdonald(&kappa, n)?.specialize(1, lam)?.to_laurent()?;
                        let pm = ctx.macdonald(&mu, n)?.specialize(1, lam)?.to_laurent()?;
                        let m = ctx.symmetric_weight(n, lam, kappa.first().max(mu.first()))?;
                        let nfact: i64 = (1..=n as i64).product();
                        let lhs = m.pair(&pm, &pk)?.checked_div(&ExactScalar::from_i64(nfact))?;
                        Ok(vec![Outcome::new(lhs, ExactScalar::zero())])
                    }));
                }
            }
        }
    }
    Ok(out)
}

fn a1(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let shapes = match &g.kappa {
        Some(ps) => ps.clone(),
        None => ["0", "1", "2", "1,1"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Partition>>>()?,
    };
    for n in pick(&g.n0, 1..=3) {
        for lam in pick(&g.lam, [1, 2]) {
            for a in pick(&g.a, 0..=1) {
                for b in pick(&g.b, 0..=1) {
                    for kappa in &shapes {
                        let params = format!("n={n} lam={lam} a={a} b={b} kappa={kappa}");
                        if kappa.len() > n || lam == 0 {
                            out.push(Point::skip(params, "needs ℓ(κ) ≤ n and λ ≥ 1"));
                            continue;
                        }
                        let kappa = kappa.clone();
                        out.push(Point::run(params, Kind::Theorem, move |_| {
                            let c = kaneko_ct_check(&kappa, n, a, b, lam)?;
                            Ok(vec![
                                Outcome::new(c.ct.clone(), c.product_form).labelled("form=product"),
                                Outcome::new(c.ct, c.d0_form).labelled("form=d0"),
                            ])
                        }));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn coefficients(c: &std::collections::BTreeMap<Partition, ExactScalar>, n: usize) -> Result<SymExpansion> {
    SymExpansion::from_pairs(Basis::Macdonald, n, c.clone())
}

fn prop_a2(g: &Grid) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let lams = pick(&g.lam, [1, 2]);
    for k in pick(&g.k, 1..=4) {
        let ns = pick(&g.n0, [k, k + 1, k + 2]);
        for n in ns {
            let params = format!("k={k} n={n}");
            if k == 0 || n == 0 {
                out.push(Point::skip(params, "needs k, n ≥ 1"));
                continue;
            }
            let lams = lams.clone();
            out.push(Point::run(params, Kind::Theorem, move |ctx| {
                let c = power_sum_in_p(k, n, PowerSumMode::Oracle, None)?;
                let mut sum = SymExpansion::new(Basis::Monomial, n);
                for (kappa, ck) in &c {
                    for (mu, x) in ctx.macdonald(kappa, n)?.expansion.iter() {
                        sum.add(mu.clone(), ck * x)?;
                    }
                }
                let target = SymExpansion::from_pairs(Basis::Monomial, n, [(Partition::row(k), ExactScalar::one())])?;
                let mut v = vec![Outcome::new(sum, target).labelled("form=oracle")];
                if n > k {
                    let base = power_sum_in_p(k, k, PowerSumMode::Oracle, None)?;
                    let lhs = coefficients(&c, n)?;
                    v.push(Outcome::new(lhs, coefficients(&base, n)?).labelled(format!("form=stable vs n={k}")));
                }
                for &lam in &lams {
                    let oracle = coefficients(&power_sum_in_p(k, n, PowerSumMode::Oracle, Some(lam))?, n)?;
                    for (mode, name) in [(PowerSumMode::AlphaFormula, "alpha"), (PowerSumMode::AFormula, "a8")] {
                        let f = coefficients(&power_sum_in_p(k, n, mode, Some(lam))?, n)?;
                        v.push(
                            Outcome::new(f, oracle.clone())
                                .labelled(format!("form={name} lam={lam}"))
                                .kind(Kind::Reported),
                        );
                    }
                }
                Ok(v)
            }));
        }
        if k > 0 {
            let lams = lams.clone();
            out.push(Point::run(format!("k={k} form=c-prime"), Kind::Reported, move |_| {
                let mut v = Vec::new();
                for kappa in Partition::all(k) {
                    for &lam in &lams {
                        let nodes = kappa.arm_leg_products().1.specialize_t(lam)?;
                        let rows = c_prime_label_form(&kappa, lam as i64)?;
                        let label = format!("kappa={kappa} lam={lam}");
                        v.push(Outcome::new(rows.clone(), nodes.clone()).labelled(format!("{label} literal")));
                        v.push(Outcome::new(rows, nodes.recip()?).labelled(format!("{label} reciprocal")));
                    }
                }
                Ok(v)
            }));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, grid: Grid) -> Vec<VerificationReport> {
        run_suite(
            &SuiteSpec {
                id: id.into(),
                grid,
                seed: 1,
            },
            &Context::default(),
        )
        .unwrap()
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(statement("nope"), Err(Error::UnknownStatement(_))));
    }

    #[test]
    fn conj21_small_grid() {
        let grid = Grid {
            n0: Some(vec![1, 2]),
            n1: Some(vec![1, 2]),
            lam: Some(vec![1]),
            a: Some(vec![0, 1]),
            b: Some(vec![0, 1]),
            ..Grid::default()
        };
        let rs = run("conj-2.1", grid);
        assert!(rs.len() >= 16);
        assert!(rs.iter().all(|r| r.verdict == Verdict::Verified), "{rs:?}");
    }

    #[test]
    fn prop51_example() {
        let grid = Grid {
            n0: Some(vec![2]),
            n1: Some(vec![1]),
            k: Some(vec![0]),
            ..Grid::default()
        };
        let rs = run("prop-5.1", grid);
        assert_eq!(rs.len(), 3);
        assert_eq!(
            rs[0].lhs,
            "(1 + q)*(1 + q + q^2)".parse::<ExactScalar>().unwrap().to_string()
        );
        assert!(rs.iter().all(|r| r.verdict == Verdict::Verified));
    }

    #[test]
    fn a1_empty_partition() {
        let grid = Grid {
            kappa: Some(vec![Partition::empty()]),
            n0: Some(vec![2]),
            ..Grid::default()
        };
        let rs = run("A1", grid);
        assert!(rs.iter().all(|r| r.verdict == Verdict::Verified));
    }

    #[test]
    fn skips_are_recorded() {
        let grid = Grid {
            n0: Some(vec![1]),
            n1: Some(vec![2]),
            n2: Some(vec![0]),
            a: Some(vec![0]),
            b: Some(vec![0]),
            ..Grid::default()
        };
        let rs = run("conj-2.2", grid);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].verdict, Verdict::Skipped);
    }

    #[test]
    fn eigenvalue_of_one() {
        assert_eq!(
            elementary_eigenvalue(&Partition::empty(), 2, 1).unwrap(),
            "1 + t".parse().unwrap()
        );
        assert!(elementary_eigenvalue(&Partition::empty(), 2, 2).unwrap() == ExactScalar::t());
    }
}
