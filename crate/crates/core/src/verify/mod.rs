//! Parameter-grid verification suites, their reports and a persistent cache
//! of expensive expansions.

pub mod cache;
mod context;
mod report;
mod spots;
mod suites;

pub use cache::{Cache, CacheKey};
pub use context::Context;
pub use report::{emit_report, summary_line, ReportFormat, Spot, Verdict, VerificationReport};
pub use spots::{spot_check, Value, SPOT_COUNT};
pub use suites::{run_suite, statement, statements, Grid, Kind, Statement, SuiteSpec};

/// `1` when a proved statement was refuted, `2` when only conjectures or
/// recorded readings mismatched, `0` otherwise.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Refuted) {
        1
    } else if reports.iter().any(|r| r.verdict == Verdict::MismatchReported) {
        2
    } else {
        0
    }
}
