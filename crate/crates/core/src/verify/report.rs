use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Refuted,
    MismatchReported,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::MismatchReported => "mismatch-reported",
            Verdict::Skipped => "skipped",
        }
    }

    pub const ALL: [Verdict; 4] = [
        Verdict::Verified,
        Verdict::Refuted,
        Verdict::MismatchReported,
        Verdict::Skipped,
    ];
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Both sides evaluated at one rational point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spot {
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    pub lhs: String,
    pub rhs: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub ms: u64,
    pub spots: Vec<Spot>,
}

impl VerificationReport {
    /// The report with its timing zeroed, for run-to-run comparison.
    pub fn untimed(&self) -> Self {
        VerificationReport { ms: 0, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Human,
    Structured,
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let head: String = s.chars().take(width.saturating_sub(3)).collect();
        format!("{head}...")
    }
}

pub fn summary_line(reports: &[VerificationReport]) -> String {
    let mut line = format!("{} checks", reports.len());
    for v in Verdict::ALL {
        let n = reports.iter().filter(|r| r.verdict == v).count();
        if n > 0 {
            let _ = write!(line, ", {n} {v}");
        }
    }
    line
}

/// A table with a per-verdict footer, or one JSON record per line.
pub fn emit_report(reports: &[VerificationReport], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Structured => {
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("reports serialize"));
                out.push('\n');
            }
        }
        ReportFormat::Human => {
            if !reports.is_empty() {
                let _ = writeln!(
                    out,
                    "{:<10} {:<34} {:<18} {:>7}  lhs",
                    "statement", "params", "verdict", "ms"
                );
            }
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:<10} {:<34} {:<18} {:>7}  {}",
                    r.statement,
                    clip(&r.params, 34),
                    r.verdict.as_str(),
                    r.ms,
                    clip(&r.lhs, 60)
                );
            }
            out.push_str(&summary_line(reports));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(v: Verdict) -> VerificationReport {
        VerificationReport {
            statement: "dyson".into(),
            params: "N0=2 lam=1".into(),
            lhs: "1 + q".into(),
            rhs: "1 + q".into(),
            verdict: v,
            ms: 3,
            spots: vec![],
        }
    }

    #[test]
    fn empty_list() {
        assert_eq!(emit_report(&[], ReportFormat::Human), "0 checks\n");
        assert_eq!(emit_report(&[], ReportFormat::Structured), "");
    }

    #[test]
    fn structured_fields() {
        let line = emit_report(&[report(Verdict::Verified)], ReportFormat::Structured);
        assert_eq!(line.lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut want = vec!["statement", "params", "lhs", "rhs", "verdict", "ms", "spots"];
        want.sort();
        let mut got = keys.clone();
        got.sort();
        assert_eq!(got, want);
        assert_eq!(v["verdict"], "verified");
        let back: VerificationReport = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(back, report(Verdict::Verified));
    }

    #[test]
    fn mixed_counts() {
        let rs = [
            report(Verdict::Verified),
            report(Verdict::MismatchReported),
            report(Verdict::Verified),
        ];
        let text = emit_report(&rs, ReportFormat::Human);
        assert!(text.ends_with("3 checks, 2 verified, 1 mismatch-reported\n"), "{text}");
    }
}
