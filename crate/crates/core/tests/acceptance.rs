use std::process::ExitCode;
use std::time::{Duration, Instant};

use qweight::verify::{run_suite, statements, Cache, Context, SuiteSpec, Verdict, VerificationReport, SPOT_COUNT};

struct Run {
    reports: Vec<VerificationReport>,
    elapsed: Duration,
}

fn run_all(ctx: &Context) -> Run {
    let start = Instant::now();
    let mut reports = Vec::new();
    for s in statements() {
        reports.extend(run_suite(&SuiteSpec::new(s.id), ctx).expect("suite runs"));
    }
    Run {
        reports,
        elapsed: start.elapsed(),
    }
}

fn of<'a>(run: &'a Run, id: &str) -> Vec<&'a VerificationReport> {
    run.reports.iter().filter(|r| r.statement == id).collect()
}

fn has(r: &VerificationReport, key: &str) -> bool {
    r.params.split_whitespace().any(|t| t == key)
}

fn all_verified(rs: &[&VerificationReport]) -> bool {
    !rs.is_empty()
        && rs
            .iter()
            .all(|r| r.verdict == Verdict::Verified || r.verdict == Verdict::Skipped)
}

fn count(rs: &[&VerificationReport], v: Verdict) -> usize {
    rs.iter().filter(|r| r.verdict == v).count()
}

fn detail(rs: &[&VerificationReport]) -> String {
    format!(
        "{} checks, {} verified, {} refuted, {} mismatch-reported, {} skipped",
        rs.len(),
        count(rs, Verdict::Verified),
        count(rs, Verdict::Refuted),
        count(rs, Verdict::MismatchReported),
        count(rs, Verdict::Skipped)
    )
}

fn main() -> ExitCode {
    let first = run_all(&Context::default());
    let dir = tempfile::tempdir().expect("temp dir");
    let cached = Context::new(Default::default(), Some(Cache::open(dir.path()).expect("cache")));
    let cold = run_all(&cached);
    let warm = run_all(&cached);

    let mut lines: Vec<(bool, String)> = Vec::new();

    let rs = of(&first, "dyson");
    let slow = rs.iter().filter(|r| r.ms >= 30_000).count();
    lines.push((
        all_verified(&rs) && rs.len() == 6 && slow == 0,
        format!("one-block constant term: {}", detail(&rs)),
    ));

    let rs = of(&first, "morris");
    lines.push((
        all_verified(&rs) && rs.len() == 81,
        format!("one-block integral with a, b: {}", detail(&rs)),
    ));

    let rs = of(&first, "conj-2.1");
    lines.push((
        all_verified(&rs) && rs.iter().filter(|r| !has(r, "form=sum")).count() == 90,
        format!("two-component integral: {}", detail(&rs)),
    ));

    let rs = of(&first, "conj-2.2");
    lines.push((
        all_verified(&rs) && count(&rs, Verdict::Verified) > 0,
        format!("growth ratio, three components: {}", detail(&rs)),
    ));

    let rs = of(&first, "prop-3.2");
    let init = rs.iter().filter(|r| has(r, "form=initial")).count();
    lines.push((
        all_verified(&rs) && rs.len() == 144 + init && init == 36,
        format!("inversion sum: {}", detail(&rs)),
    ));

    let rs = of(&first, "prop-5.1");
    let forms = ["form=norm", "form=cross", "form=poly"];
    let each = forms.iter().all(|f| rs.iter().filter(|r| has(r, f)).count() == 12);
    lines.push((
        all_verified(&rs) && each,
        format!("hook norms and hook polynomial: {}", detail(&rs)),
    ));

    let rs = of(&first, "sec-5.2");
    let hooks = rs.iter().filter(|r| !has(r, "form=schur-route")).count();
    lines.push((
        all_verified(&rs) && hooks == 3,
        format!("hook Macdonald polynomial, n = 3, 4, 5: {}", detail(&rs)),
    ));

    let rs = of(&first, "conj-4.1");
    let p2 = rs.iter().any(|r| has(r, "p=2") && r.verdict == Verdict::Verified);
    lines.push((
        all_verified(&rs) && p2,
        format!("orthogonal polynomials vs shifted Macdonald: {}", detail(&rs)),
    ));

    let rs = of(&first, "conj-4.3");
    let p0 = rs
        .iter()
        .filter(|r| has(r, "p=0"))
        .all(|r| r.verdict != Verdict::Refuted);
    lines.push((
        all_verified(&rs) && p0,
        format!("self-adjoint operators: {}", detail(&rs)),
    ));

    let rs = of(&first, "conj-4.4");
    let claimed: Vec<&VerificationReport> = rs
        .iter()
        .copied()
        .filter(|r| has(r, "lam=1") && !r.params.contains("form="))
        .collect();
    let lam2 = rs.iter().any(|r| has(r, "lam=2"));
    let no_refuted = count(&rs, Verdict::Refuted) == 0;
    lines.push((
        all_verified(&claimed) && claimed.len() >= 13 && lam2 && no_refuted,
        format!(
            "norm formula at p = λ = 1: {}; all forms: {}",
            detail(&claimed),
            detail(&rs)
        ),
    ));

    let rs = of(&first, "macdonald");
    let kinds = ["r=1", "r=2", "triangular", "form=norm", "form=orthogonal"];
    let covered = kinds.iter().all(|k| rs.iter().any(|r| has(r, k)));
    lines.push((
        all_verified(&rs) && covered,
        format!("Macdonald machinery: {}", detail(&rs)),
    ));

    let rs = of(&first, "A1");
    let zeros = rs
        .iter()
        .filter(|r| has(r, "b=0") && !has(r, "kappa=0") && r.lhs == "0")
        .count();
    lines.push((
        all_verified(&rs) && zeros > 0,
        format!("three-way constant term of P_κ: {}", detail(&rs)),
    ));

    let rs = of(&first, "prop-A2");
    let core: Vec<&VerificationReport> = rs
        .iter()
        .copied()
        .filter(|r| has(r, "form=oracle") || has(r, "form=stable"))
        .collect();
    let formulas = rs.iter().filter(|r| has(r, "form=alpha") || has(r, "form=a8")).count();
    lines.push((
        all_verified(&core) && core.len() == 20 && formulas == 48,
        format!(
            "power sums, oracle and n-independence: {}; formula comparisons: {}",
            detail(&core),
            detail(&rs)
        ),
    ));

    let untimed = |run: &Run| run.reports.iter().map(|r| r.untimed()).collect::<Vec<_>>();
    let identical = untimed(&first) == untimed(&cold) && untimed(&first) == untimed(&warm);
    let spots_ok = first
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::Verified)
        .all(|r| r.spots.len() == SPOT_COUNT && r.spots.iter().all(|s| s.agree));
    let fast = first.elapsed < Duration::from_secs(15 * 60);
    lines.push((
        identical && spots_ok && fast,
        format!(
            "determinism and spot checks: {} reports, identical across 3 runs (cache off, cold, warm): {identical}, spots agree: {spots_ok}, first run {:.1} s",
            first.reports.len(),
            first.elapsed.as_secs_f64()
        ),
    ));

    let mut failed = 0;
    for (i, (ok, text)) in lines.iter().enumerate() {
        println!("[{}] criterion {:>2}: {text}", if *ok { "PASS" } else { "FAIL" }, i + 1);
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria pass", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
