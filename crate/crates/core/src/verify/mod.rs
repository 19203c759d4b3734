//! Exhaustive property checks over the corpus.
//!
//! Each check walks the corpus (or instances derived from it), counts the
//! cases where its hypotheses hold, and records every case where the
//! conclusion fails. Reports contain no timing, so identical inputs give
//! byte-identical JSON.

mod connectivity;
mod matroid;
pub mod oracle;
mod removal;
mod tangle;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::connectivity::is_3_connected;
use crate::corpus::{corpus, CorpusEntry};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::tangle::{enumerate_tangles, Tangle};

/// Subset-quantified checks skip ground sets above this size.
pub const SUBSET_CAP: usize = 10;
/// Checks that enumerate tangles skip ground sets above this size.
pub const TANGLE_CHECK_CAP: usize = 8;
/// Failure descriptions kept per check.
const EXAMPLES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Connectivity,
    Tangle,
    Removal,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Connectivity => "connectivity",
            Suite::Tangle => "tangle",
            Suite::Removal => "removal",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "core" => Suite::Core,
            "connectivity" => Suite::Connectivity,
            "tangle" => Suite::Tangle,
            "removal" => Suite::Removal,
            "all" => Suite::All,
            _ => return Err(Error::InvalidInput(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_n: usize,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub suite: Suite,
    /// Cases where the hypotheses held.
    pub cases: u64,
    pub violations: u64,
    pub passed: bool,
    /// Extra counters specific to the check.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counters: BTreeMap<&'static str, u64>,
    /// The first few failures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub max_n: usize,
    pub corpus_size: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Running counts for a check.
#[derive(Default)]
pub(crate) struct Tally {
    cases: u64,
    violations: u64,
    counters: BTreeMap<&'static str, u64>,
    examples: Vec<String>,
}

impl Tally {
    /// Record one case; `describe` runs only on failure.
    pub(crate) fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    /// A failure that is not tied to a counted case (an unexpected error).
    pub(crate) fn fail(&mut self, msg: String) {
        self.violations += 1;
        if self.examples.len() < EXAMPLES {
            self.examples.push(msg);
        }
    }

    /// Record a library result, counting errors as violations.
    pub(crate) fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    pub(crate) fn bump(&mut self, counter: &'static str) {
        *self.counters.entry(counter).or_default() += 1;
    }

    fn finish(self, name: &'static str, suite: Suite) -> CheckReport {
        CheckReport {
            name,
            suite,
            cases: self.cases,
            violations: self.violations,
            passed: self.violations == 0,
            counters: self.counters,
            examples: self.examples,
        }
    }
}

/// Shared, lazily computed data for all checks.
pub(crate) struct Ctx {
    pub cfg: VerifyConfig,
    pub corpus: Vec<CorpusEntry>,
    tangles: Vec<OnceLock<Vec<Tangle>>>,
    three: Vec<OnceLock<bool>>,
}

impl Ctx {
    fn new(cfg: VerifyConfig) -> Result<Ctx> {
        let corpus = corpus(cfg.seed, cfg.max_n)?;
        let n = corpus.len();
        Ok(Ctx {
            cfg,
            corpus,
            tangles: (0..n).map(|_| OnceLock::new()).collect(),
            three: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Corpus entries with at most `cap` elements, with their indices.
    pub fn entries(&self, cap: usize) -> impl Iterator<Item = (usize, &CorpusEntry)> {
        self.corpus.iter().enumerate().filter(move |(_, e)| e.matroid.size() <= cap)
    }

    pub fn subset_entries(&self) -> impl Iterator<Item = (usize, &CorpusEntry)> {
        self.entries(SUBSET_CAP)
    }

    pub fn tangle_entries(&self) -> impl Iterator<Item = (usize, &CorpusEntry)> {
        self.entries(TANGLE_CHECK_CAP)
    }

    pub fn is_3_connected(&self, i: usize) -> bool {
        *self.three[i].get_or_init(|| is_3_connected(&self.corpus[i].matroid))
    }

    /// Every tangle of every positive order, orders ascending. Only for
    /// entries within [`TANGLE_CHECK_CAP`].
    pub fn tangles(&self, i: usize) -> &[Tangle] {
        self.tangles[i].get_or_init(|| all_tangles(&self.corpus[i].matroid))
    }
}

fn all_tangles(m: &Matroid) -> Vec<Tangle> {
    let mut out = Vec::new();
    if m.size() == 0 || m.size() > TANGLE_CHECK_CAP {
        return out;
    }
    // a tangle of order θ + 1 truncates to one of order θ, so stop at the
    // first order with none
    for order in 1.. {
        let found = enumerate_tangles(m, order).expect("within the tangle cap");
        if found.is_empty() {
            break;
        }
        out.extend(found);
    }
    out
}

pub(crate) type CheckFn = fn(&Ctx, &mut Tally);

fn registry() -> Vec<(&'static str, Suite, CheckFn)> {
    let mut v: Vec<(&'static str, Suite, CheckFn)> = Vec::new();
    for (name, f) in matroid::CHECKS {
        v.push((name, Suite::Core, *f));
    }
    for (name, f) in connectivity::CHECKS {
        v.push((name, Suite::Connectivity, *f));
    }
    for (name, f) in tangle::CHECKS {
        v.push((name, Suite::Tangle, *f));
    }
    for (name, f) in removal::CHECKS {
        v.push((name, Suite::Removal, *f));
    }
    v
}

/// Names of all checks in a suite, in report order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    registry().into_iter().filter(|(_, s, _)| suite.includes(*s)).map(|(n, _, _)| n).collect()
}

/// Run a suite, or only the named checks when `only` is non-empty.
pub fn run_checks(suite: Suite, cfg: VerifyConfig, only: &[&str]) -> Result<Report> {
    let ctx = Ctx::new(cfg)?;
    let mut checks = Vec::new();
    for (name, s, f) in registry() {
        if !suite.includes(s) || (!only.is_empty() && !only.contains(&name)) {
            continue;
        }
        let mut tally = Tally::default();
        f(&ctx, &mut tally);
        checks.push(tally.finish(name, s));
    }
    Ok(Report {
        suite,
        seed: cfg.seed,
        max_n: cfg.max_n,
        corpus_size: ctx.corpus.len(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

pub fn run(suite: Suite, cfg: VerifyConfig) -> Result<Report> {
    run_checks(suite, cfg, &[])
}
