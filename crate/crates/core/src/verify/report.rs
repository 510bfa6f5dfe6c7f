//! Check records, verdicts and the JSON report.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::exact::{DualFunctional, GradedVector, Rational, TruncatedLaurent};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE_AT_CUTOFF")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE_AT_CUTOFF",
        }
    }
}

/// The inputs of one comparison and both computed sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub checked: usize,
    pub undecided: usize,
    pub witness: Option<Witness>,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            s.total += 1;
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub engine: String,
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>, records: Vec<CheckRecord>) -> Self {
        Report {
            engine: "voakit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            summary: Summary::of(&records),
            records,
        }
    }

    /// 0 when everything passed, 1 on any failure, 2 when only undecided
    /// checks remain.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn emit(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// Values whose expected side can be negated by the failure-injection switch.
pub trait Negate {
    fn negated(&self) -> Self;
}

impl Negate for Rational {
    fn negated(&self) -> Self {
        -self
    }
}

impl Negate for GradedVector {
    fn negated(&self) -> Self {
        -self
    }
}

impl Negate for TruncatedLaurent<Rational> {
    fn negated(&self) -> Self {
        self.scaled(&-Rational::ONE)
    }
}

impl Negate for DualFunctional {
    fn negated(&self) -> Self {
        self.scaled(&-Rational::ONE)
    }
}

impl Negate for bool {
    fn negated(&self) -> Self {
        !self
    }
}

impl Negate for usize {
    fn negated(&self) -> Self {
        // only used to make an equality fail
        self.wrapping_add(1)
    }
}

/// Accumulates the comparisons of one check record.
#[derive(Debug, Default)]
pub struct Checker {
    pub checked: usize,
    pub undecided: usize,
    pub failure: Option<Witness>,
    pub first_undecided: Option<Witness>,
    inject: bool,
}

impl Checker {
    pub fn new(inject: bool) -> Self {
        Checker {
            inject,
            ..Default::default()
        }
    }

    fn take_injection(&mut self) -> bool {
        std::mem::take(&mut self.inject)
    }

    /// Records `lhs == rhs`.
    pub fn eq<T, I, F>(&mut self, inputs: I, lhs: T, rhs: T, show: F)
    where
        T: PartialEq + Negate,
        I: FnOnce() -> String,
        F: Fn(&T) -> String,
    {
        let rhs = if self.take_injection() { rhs.negated() } else { rhs };
        self.checked += 1;
        if lhs != rhs && self.failure.is_none() {
            self.failure = Some(Witness {
                inputs: inputs(),
                lhs: show(&lhs),
                rhs: show(&rhs),
            });
        }
    }

    /// Records that `holds` is true; `lhs`/`rhs` describe the two sides.
    pub fn holds<I>(&mut self, inputs: I, holds: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String)
    where
        I: FnOnce() -> String,
    {
        let holds = if self.take_injection() { !holds } else { holds };
        self.checked += 1;
        if !holds && self.failure.is_none() {
            self.failure = Some(Witness {
                inputs: inputs(),
                lhs: lhs(),
                rhs: rhs(),
            });
        }
    }

    /// A comparison that cannot be decided at the current cutoff.
    pub fn undecided<I>(&mut self, inputs: I, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String)
    where
        I: FnOnce() -> String,
    {
        self.checked += 1;
        self.undecided += 1;
        if self.first_undecided.is_none() {
            self.first_undecided = Some(Witness {
                inputs: inputs(),
                lhs: lhs(),
                rhs: rhs(),
            });
        }
    }

    /// Turns the accumulated outcome, or the error that stopped it, into a
    /// record. Truncation errors make the record undecided.
    pub fn finish(mut self, id: String, anchor: &str, outcome: Result<()>, millis: u64) -> CheckRecord {
        match outcome {
            Ok(()) => {}
            Err(e @ Error::Truncation { .. }) => {
                self.undecided += 1;
                self.first_undecided.get_or_insert(Witness {
                    inputs: id.clone(),
                    lhs: e.to_string(),
                    rhs: "outside the truncation".into(),
                });
            }
            Err(e) => {
                self.failure.get_or_insert(Witness {
                    inputs: id.clone(),
                    lhs: format!("error: {e}"),
                    rhs: "a computed value".into(),
                });
            }
        }
        let (verdict, witness) = if let Some(w) = self.failure {
            (Verdict::Fail, Some(w))
        } else if self.undecided > 0 {
            (Verdict::Inconclusive, self.first_undecided)
        } else {
            (Verdict::Pass, None)
        };
        CheckRecord {
            id,
            anchor: anchor.to_string(),
            verdict,
            checked: self.checked,
            undecided: self.undecided,
            witness,
            millis,
        }
    }
}
