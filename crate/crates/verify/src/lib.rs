//! Bookkeeping for the acceptance run in `tests/acceptance.rs`.
//!
//! Each criterion collects named checks; the run prints one status line per
//! criterion followed by the failing checks, and exits non-zero if any
//! criterion failed.

use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug)]
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub budget: Duration,
    started: Instant,
    elapsed: Option<Duration>,
    pub checks: Vec<Check>,
    pub skipped: Option<String>,
}

impl Criterion {
    pub fn new(id: &'static str, title: &'static str, budget_secs: u64) -> Self {
        Criterion {
            id,
            title,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
            elapsed: None,
            checks: Vec::new(),
            skipped: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// `|value - target| <= tol`.
    pub fn near(&mut self, name: impl Into<String>, value: f64, target: f64, tol: f64) {
        let passed = (value - target).abs() <= tol;
        self.check(
            name,
            passed,
            format!("got {value:.6}, want {target} +- {tol}"),
        );
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped = Some(reason.into());
    }

    pub fn finish(&mut self) {
        self.elapsed = Some(self.started.elapsed());
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed.unwrap_or_else(|| self.started.elapsed())
    }

    pub fn status(&self) -> Status {
        if self.skipped.is_some() {
            Status::Skip
        } else if self.checks.iter().all(|c| c.passed) && self.elapsed() <= self.budget {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn render(&self) -> String {
        let tag = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let mut out = format!(
            "{} {tag}  {}  [{passed}/{} checks, {:.1}s of {}s]",
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed().as_secs_f64(),
            self.budget.as_secs()
        );
        if let Some(reason) = &self.skipped {
            out.push_str(&format!("\n    skipped: {reason}"));
        }
        if self.elapsed() > self.budget {
            out.push_str("\n    over the runtime budget");
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("\n    failed: {}: {}", c.name, c.detail));
        }
        out
    }
}
