//! Structured results of verification runs, with deterministic text and
//! JSON renderings.

use std::fmt;

use crate::bounds::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check did not run (budget or not requested); never counts as a pass.
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub status: CheckStatus,
    pub note: String,
}

impl Check {
    pub fn pass(note: impl Into<String>) -> Self {
        Check {
            status: CheckStatus::Pass,
            note: note.into(),
        }
    }

    pub fn fail(note: impl Into<String>) -> Self {
        Check {
            status: CheckStatus::Fail,
            note: note.into(),
        }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Check {
            status: CheckStatus::Skipped,
            note: note.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    pub fn is_skipped(&self) -> bool {
        self.status == CheckStatus::Skipped
    }

    fn render(&self) -> String {
        if self.note.is_empty() {
            self.status.to_string()
        } else {
            format!("{} ({})", self.status, self.note)
        }
    }
}

/// Outcome of the structural and exhaustive checks on one storage code.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub q: u64,
    pub n: usize,
    pub k_d: usize,
    pub k_s: usize,
    pub t: usize,
    pub d: usize,
    pub r: usize,
    /// Dual distance of the secrecy rows exceeds t.
    pub secrecy_algebraic: Check,
    /// Exact coalition-distribution oracle.
    pub secrecy_exhaustive: Check,
    /// Recovery identity G * B^T = [I; 0] and row-weight bound.
    pub access: Check,
    /// Every (n - d + 1)-subset of columns has full rank.
    pub erasure: Check,
    /// Encode/retrieve round trip, when a simulation ran it.
    pub recovery_roundtrip: Option<Check>,
    pub rate: Rational,
    pub capacity: Rational,
    pub capacity_gap: Rational,
    pub balanced: bool,
    /// Per-node access counts over one retrieval of every file.
    pub load_histogram: Vec<usize>,
    pub worst_gap: usize,
}

impl VerificationReport {
    /// True when every check that actually ran passed.
    pub fn all_passed(&self) -> bool {
        let mut checks = vec![
            &self.secrecy_algebraic,
            &self.secrecy_exhaustive,
            &self.access,
            &self.erasure,
        ];
        if let Some(rt) = &self.recovery_roundtrip {
            checks.push(rt);
        }
        checks.iter().all(|c| !c.is_fail())
    }

    pub fn any_skipped(&self) -> bool {
        self.secrecy_algebraic.is_skipped()
            || self.secrecy_exhaustive.is_skipped()
            || self.access.is_skipped()
            || self.erasure.is_skipped()
            || self
                .recovery_roundtrip
                .as_ref()
                .is_some_and(|c| c.is_skipped())
    }

    /// Deterministic key: value rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("q", self.q.to_string());
        line("n", self.n.to_string());
        line("k_d", self.k_d.to_string());
        line("k_s", self.k_s.to_string());
        line("t", self.t.to_string());
        line("d", self.d.to_string());
        line("r", self.r.to_string());
        line("secrecy_algebraic", self.secrecy_algebraic.render());
        line("secrecy_exhaustive", self.secrecy_exhaustive.render());
        line("access", self.access.render());
        line("erasure", self.erasure.render());
        if let Some(rt) = &self.recovery_roundtrip {
            line("recovery_roundtrip", rt.render());
        }
        line("rate", self.rate.to_string());
        line("capacity", self.capacity.to_string());
        line("capacity_gap", self.capacity_gap.to_string());
        line("balanced", if self.balanced { "yes" } else { "no" }.to_string());
        line(
            "load_histogram",
            self.load_histogram
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        line("worst_gap", self.worst_gap.to_string());
        line("result", if self.all_passed() { "pass" } else { "fail" }.to_string());
        out
    }

    /// Machine-readable rendering with the same keys as the text report.
    pub fn to_json(&self) -> String {
        fn check(c: &Check) -> String {
            format!(
                "{{\"status\": \"{}\", \"note\": \"{}\"}}",
                c.status,
                escape(&c.note)
            )
        }
        let mut fields = vec![
            format!("\"q\": {}", self.q),
            format!("\"n\": {}", self.n),
            format!("\"k_d\": {}", self.k_d),
            format!("\"k_s\": {}", self.k_s),
            format!("\"t\": {}", self.t),
            format!("\"d\": {}", self.d),
            format!("\"r\": {}", self.r),
            format!("\"secrecy_algebraic\": {}", check(&self.secrecy_algebraic)),
            format!("\"secrecy_exhaustive\": {}", check(&self.secrecy_exhaustive)),
            format!("\"access\": {}", check(&self.access)),
            format!("\"erasure\": {}", check(&self.erasure)),
        ];
        if let Some(rt) = &self.recovery_roundtrip {
            fields.push(format!("\"recovery_roundtrip\": {}", check(rt)));
        }
        fields.push(format!("\"rate\": \"{}\"", self.rate));
        fields.push(format!("\"capacity\": \"{}\"", self.capacity));
        fields.push(format!("\"capacity_gap\": \"{}\"", self.capacity_gap));
        fields.push(format!("\"balanced\": {}", self.balanced));
        fields.push(format!(
            "\"load_histogram\": [{}]",
            self.load_histogram
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
        fields.push(format!("\"worst_gap\": {}", self.worst_gap));
        fields.push(format!("\"result\": \"{}\"", if self.all_passed() { "pass" } else { "fail" }));
        format!("{{\n  {}\n}}\n", fields.join(",\n  "))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
