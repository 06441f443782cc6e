use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Counterexample,
    /// The hypothesis cannot be met, so there is nothing to check.
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random,
    /// Uniform samples from a space too large to enumerate.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub instances: u64,
    pub min_slack: Option<i64>,
    pub witness: Option<String>,
    pub millis: Option<u64>,
}

/// Outcome of checking one statement over a family of instances.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRun {
    pub theorem: String,
    pub group: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    pub verdict: Verdict,
    pub counterexamples: Vec<String>,
    pub stats: RunStats,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl VerificationRun {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("run serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("run serializes")
    }

    /// The same run with wall time dropped, for byte-level comparisons.
    pub fn without_timing(&self) -> VerificationRun {
        let mut out = self.clone();
        out.stats.millis = None;
        out
    }

    pub(crate) fn detail(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// Accumulates instance outcomes. Keys order instances, so merging partial
/// tallies in any order yields the same minimum witness and counterexample list.
#[derive(Default)]
pub(crate) struct Tally {
    instances: u64,
    min: Option<(i64, Vec<usize>, String)>,
    counterexamples: Vec<(Vec<usize>, String)>,
}

impl Tally {
    pub(crate) fn record(
        &mut self,
        slack: i64,
        holds: bool,
        key: &[usize],
        describe: impl FnOnce() -> String,
    ) {
        self.instances += 1;
        let better = match &self.min {
            None => true,
            Some((s, k, _)) => (slack, key) < (*s, k.as_slice()),
        };
        if !holds {
            let text = describe();
            if better {
                self.min = Some((slack, key.to_vec(), text.clone()));
            }
            self.counterexamples.push((key.to_vec(), text));
        } else if better {
            self.min = Some((slack, key.to_vec(), describe()));
        }
    }

    /// Counts an instance that carries no slack.
    pub(crate) fn record_plain(
        &mut self,
        holds: bool,
        key: &[usize],
        describe: impl FnOnce() -> String,
    ) {
        self.instances += 1;
        if !holds {
            self.counterexamples.push((key.to_vec(), describe()));
        }
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.counterexamples.extend(other.counterexamples);
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(if (b.0, &b.1) < (a.0, &a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    pub(crate) fn finish(mut self, header: RunHeader, started: Instant) -> VerificationRun {
        self.counterexamples.sort();
        let verdict = if self.counterexamples.is_empty() {
            Verdict::Verified
        } else {
            Verdict::Counterexample
        };
        let (min_slack, witness) = match self.min {
            Some((s, _, w)) => (Some(s), Some(w)),
            None => (None, None),
        };
        VerificationRun {
            theorem: header.theorem,
            group: header.group,
            mode: header.mode,
            seed: header.seed,
            trials: header.trials,
            verdict,
            counterexamples: self.counterexamples.into_iter().map(|(_, t)| t).collect(),
            stats: RunStats {
                instances: self.instances,
                min_slack,
                witness,
                millis: Some(started.elapsed().as_millis() as u64),
            },
            details: BTreeMap::new(),
        }
    }
}

pub(crate) struct RunHeader {
    pub theorem: String,
    pub group: String,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

impl RunHeader {
    pub(crate) fn exhaustive(theorem: &str, group: impl ToString) -> Self {
        RunHeader {
            theorem: theorem.to_string(),
            group: group.to_string(),
            mode: Mode::Exhaustive,
            seed: None,
            trials: None,
        }
    }

    pub(crate) fn random(theorem: &str, group: impl ToString, seed: u64, trials: u64) -> Self {
        RunHeader {
            theorem: theorem.to_string(),
            group: group.to_string(),
            mode: Mode::Random,
            seed: Some(seed),
            trials: Some(trials),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_is_order_independent() {
        let mut a = Tally::default();
        a.record(5, true, &[2], || "two".into());
        a.record(-1, false, &[3], || "three".into());
        let mut b = Tally::default();
        b.record(-1, false, &[1], || "one".into());
        b.record(7, true, &[0], || "zero".into());

        let h = || RunHeader::exhaustive("t", "Z1");
        let now = Instant::now();
        let ab = Tally::default()
            .merge(a)
            .merge(b)
            .finish(h(), now)
            .without_timing();

        let mut a = Tally::default();
        a.record(5, true, &[2], || "two".into());
        a.record(-1, false, &[3], || "three".into());
        let mut b = Tally::default();
        b.record(-1, false, &[1], || "one".into());
        b.record(7, true, &[0], || "zero".into());
        let ba = b.merge(a).finish(h(), now).without_timing();

        assert_eq!(ab.to_json(), ba.to_json());
        assert_eq!(ab.verdict, Verdict::Counterexample);
        assert_eq!(ab.counterexamples, vec!["one", "three"]);
        assert_eq!(ab.stats.min_slack, Some(-1));
        assert_eq!(ab.stats.witness.as_deref(), Some("one"));
        assert_eq!(ab.stats.instances, 4);
    }
}
