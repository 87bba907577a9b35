//! Run reports.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub property: String,
    pub instance: String,
    /// Case index and case seed; together they replay the case through
    /// [`crate::suites::replay`].
    pub case: usize,
    pub seed: u64,
    pub invariant: String,
    pub detail: String,
    /// The values involved, as a workspace document.
    pub reproduction: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub property: String,
    pub instance: String,
    pub cases: usize,
    pub passed: usize,
    /// Cases whose hypothesis did not hold.
    pub vacuous: usize,
    pub failed: usize,
    /// What a passing run does and does not establish, where that is not obvious.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub instance: String,
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertySummary>,
    pub failures: Vec<Failure>,
    pub timing_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn failed_cases(&self) -> usize {
        self.properties.iter().map(|p| p.failed).sum()
    }

    /// The report without its timing, for determinism comparisons.
    pub fn body(&self) -> String {
        let mut r = self.clone();
        r.timing_ms = 0;
        serde_json::to_string(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} (seed {}, {} cases per property)",
            self.suite, self.instance, self.seed, self.cases
        )?;
        for p in &self.properties {
            let status = if p.failed == 0 { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "  {status} {:<44} {:<6} {:>5} cases {:>5} passed {:>5} vacuous {:>4} failed",
                p.property, p.instance, p.cases, p.passed, p.vacuous, p.failed
            )?;
            if let Some(n) = &p.note {
                writeln!(f, "       note: {n}")?;
            }
        }
        for x in &self.failures {
            writeln!(
                f,
                "  failure in {} on {} (case {}, seed {}): {}",
                x.property, x.instance, x.case, x.seed, x.invariant
            )?;
            if !x.detail.is_empty() {
                writeln!(f, "    {}", x.detail)?;
            }
            writeln!(f, "    reproduction: {}", x.reproduction)?;
        }
        writeln!(
            f,
            "{}: {} failed cases",
            if self.passed() { "PASS" } else { "FAIL" },
            self.failed_cases()
        )?;
        write!(f, "time: {} ms", self.timing_ms)
    }
}
