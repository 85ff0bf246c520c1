//! A small runner for acceptance criteria. Each criterion is timed, checked
//! against an optional runtime limit, and reported on one line. A panic
//! inside a check counts as a failure and does not stop the run.

use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Collects the individual checks of one criterion.
#[derive(Debug, Default)]
pub struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
    count: usize,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one check; `what` is only rendered when it fails.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Context printed with the result either way.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

pub struct Runner {
    verdicts: Vec<(String, Verdict)>,
}

impl Default for Runner {
    fn default() -> Self {
        Self::new()
    }
}

impl Runner {
    pub fn new() -> Self {
        Runner { verdicts: Vec::new() }
    }

    /// Runs one criterion and prints its line, followed by indented notes and
    /// failures.
    pub fn criterion(&mut self, id: &str, title: &str, limit: Option<Duration>, check: impl FnOnce(&mut Checks)) {
        let mut checks = Checks::new();
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&mut checks)));
        let elapsed = start.elapsed();
        if let Err(payload) = outcome {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            checks.failures.push(format!("panicked: {msg}"));
        }
        if let Some(limit) = limit {
            if elapsed > limit {
                checks
                    .failures
                    .push(format!("took {:.2} s, limit {:.0} s", elapsed.as_secs_f64(), limit.as_secs_f64()));
            }
        }
        let verdict = if checks.passed() { Verdict::Pass } else { Verdict::Fail };
        let limit_text = limit.map(|l| format!(", limit {:.0} s", l.as_secs_f64())).unwrap_or_default();
        println!(
            "{verdict} criterion {id}: {title} ({} checks, {:.2} s{limit_text})",
            checks.count,
            elapsed.as_secs_f64()
        );
        for note in &checks.notes {
            println!("    {note}");
        }
        for failure in &checks.failures {
            println!("    failed: {failure}");
        }
        self.verdicts.push((id.to_string(), verdict));
    }

    /// Prints the summary; the exit code is nonzero if anything failed.
    pub fn finish(self) -> ExitCode {
        let failed: Vec<&str> = self
            .verdicts
            .iter()
            .filter(|(_, v)| *v == Verdict::Fail)
            .map(|(id, _)| id.as_str())
            .collect();
        println!(
            "acceptance: {} of {} criteria passed",
            self.verdicts.len() - failed.len(),
            self.verdicts.len()
        );
        if failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            println!("acceptance: failed {}", failed.join(", "));
            ExitCode::FAILURE
        }
    }
}
