use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{binomial_saturating, walk_subsets, SizeRange, Walk};
use super::sample::{self, trial_rng};
use super::with_workers;
use crate::abelian::Group;
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

/// Default ceiling on `C(|G| − 1, k)` for exhaustive search.
pub const SEARCH_ENUMERATION_CAP: u128 = 10_000_000;
/// Hill-climb moves per restart before giving up on further improvement.
const MAX_CLIMB_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive { cap: u128 },
    HillClimb { seed: u64, restarts: u64 },
}

impl SearchMode {
    pub fn exhaustive() -> Self {
        SearchMode::Exhaustive {
            cap: SEARCH_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchVerdict {
    Found,
    /// No `k`-subset of `G \ {0}` has `stab(Σ(A)) = {0}`.
    EmptyFeasibleSet,
}

/// The smallest `|Σ(A)|` found over `k`-subsets `A ⊆ G \ {0}` with trivial `stab(Σ(A))`.
///
/// `ratio_numerator / ratio_denominator` is `4(|Σ(A)| − |H|) / |A \ H|²`; with
/// `H` trivial the denominator is `k²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub group: String,
    pub k: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<u64>,
    pub verdict: SearchVerdict,
    pub best_set: Option<String>,
    pub sigma_size: Option<usize>,
    pub stabilizer_order: Option<usize>,
    pub ratio_numerator: Option<i64>,
    pub ratio_denominator: Option<i64>,
    /// Candidate sets scored.
    pub evaluated: u64,
    pub millis: Option<u64>,
}

impl ExtremalRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn without_timing(&self) -> ExtremalRecord {
        ExtremalRecord {
            millis: None,
            ..self.clone()
        }
    }

    /// Recomputes `|Σ|` and the stabilizer order from `best_set`.
    pub fn reevaluate(&self, group: &Group) -> Result<Option<(usize, usize)>> {
        let Some(lit) = &self.best_set else {
            return Ok(None);
        };
        let a = GroupSet::parse(group, lit)?;
        let sigma = setcalc::subset_sums(&a);
        Ok(Some((sigma.len(), setcalc::stabilizer(&sigma).order())))
    }
}

/// Best candidate so far: `(|Σ|, sorted elements)`, compared lexicographically.
type Best = Option<(usize, Vec<usize>)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y < x { y } else { x }),
        (x, y) => x.or(y),
    }
}

fn feasible(sigma: &GroupSet) -> bool {
    setcalc::stabilizer(sigma).is_trivial()
}

pub fn extremal_search(
    group: &Group,
    k: usize,
    mode: SearchMode,
    workers: usize,
) -> Result<ExtremalRecord> {
    let started = Instant::now();
    let nonzero: Vec<usize> = (1..group.order()).collect();
    if k > nonzero.len() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the {} nonzero elements of {group}",
            nonzero.len()
        )));
    }
    let (best, evaluated, seed, restarts, label) = match mode {
        SearchMode::Exhaustive { cap } => {
            let count = binomial_saturating(nonzero.len() as u64, k as u64);
            if count > cap {
                return Err(
                    Error::capacity("k-subsets for exhaustive search", count, cap)
                        .with_hint("use hill-climb mode with a seed"),
                );
            }
            let (best, evaluated) = with_workers(workers, || exhaustive(group, &nonzero, k))?;
            (best, evaluated, None, None, "exhaustive")
        }
        SearchMode::HillClimb { seed, restarts } => {
            if restarts == 0 {
                return Err(Error::Precondition("restarts must be at least 1".into()));
            }
            let (best, evaluated) =
                with_workers(workers, || hill_climb(group, &nonzero, k, seed, restarts))?;
            (best, evaluated, Some(seed), Some(restarts), "hillclimb")
        }
    };
    let mut record = ExtremalRecord {
        group: group.to_string(),
        k,
        mode: label.to_string(),
        seed,
        restarts,
        verdict: SearchVerdict::EmptyFeasibleSet,
        best_set: None,
        sigma_size: None,
        stabilizer_order: None,
        ratio_numerator: None,
        ratio_denominator: None,
        evaluated,
        millis: None,
    };
    if let Some((size, elems)) = best {
        let a = GroupSet::from_indices(group, elems)?;
        let h = setcalc::stabilizer(&setcalc::subset_sums(&a));
        let outside = (a.len() - a.intersection_len(h.as_set())?) as i64;
        record.verdict = SearchVerdict::Found;
        record.best_set = Some(a.to_literal());
        record.sigma_size = Some(size);
        record.stabilizer_order = Some(h.order());
        record.ratio_numerator = Some(4 * (size as i64 - h.order() as i64));
        record.ratio_denominator = Some(outside * outside);
    }
    record.millis = Some(started.elapsed().as_millis() as u64);
    Ok(record)
}

fn exhaustive(group: &Group, universe: &[usize], k: usize) -> (Best, u64) {
    let sizes = SizeRange { min: k, max: k };
    let init = || (None::<(usize, Vec<usize>)>, 0u64);
    walk_subsets(
        group,
        universe,
        sizes,
        init,
        |(best, evaluated), path, sigma| {
            let bound = best.as_ref().map_or(usize::MAX, |b| b.0);
            // Σ only grows along a path, and equal sizes lose the lexicographic tie
            if sigma.len() >= bound {
                return Walk::Prune;
            }
            if path.len() == k {
                *evaluated += 1;
                if feasible(sigma) {
                    *best = Some((sigma.len(), path.to_vec()));
                }
            }
            Walk::Descend
        },
    )
    .into_iter()
    .fold((None, 0), |(b, e), (b2, e2)| (better(b, b2), e + e2))
}

/// Size of `Σ(A)` when the stabilizer is trivial, `|G| + 1` otherwise.
fn score(group: &Group, elems: &[usize]) -> usize {
    let a = GroupSet::from_indices(group, elems.iter().copied()).expect("indices in range");
    let sigma = setcalc::subset_sums(&a);
    if feasible(&sigma) {
        sigma.len()
    } else {
        group.order() + 1
    }
}

fn hill_climb(
    group: &Group,
    universe: &[usize],
    k: usize,
    seed: u64,
    restarts: u64,
) -> (Best, u64) {
    let infeasible = group.order() + 1;
    (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = trial_rng(seed, r);
            let mut current = sample::choose(&mut rng, universe, k);
            current.sort_unstable();
            let mut current_score = score(group, &current);
            let mut evaluated = 1u64;
            for _ in 0..MAX_CLIMB_STEPS {
                // steepest single-element swap; ties go to the lexicographically least set
                let mut step: Option<(usize, Vec<usize>)> = None;
                for i in 0..current.len() {
                    for &y in universe {
                        if current.binary_search(&y).is_ok() {
                            continue;
                        }
                        let mut cand = current.clone();
                        cand[i] = y;
                        cand.sort_unstable();
                        let s = score(group, &cand);
                        evaluated += 1;
                        step = better(step, Some((s, cand)));
                    }
                }
                match step {
                    Some((s, cand)) if s < current_score => {
                        current = cand;
                        current_score = s;
                    }
                    _ => break,
                }
            }
            let best = (current_score < infeasible).then_some((current_score, current));
            (best, evaluated)
        })
        .reduce(|| (None, 0), |(b, e), (b2, e2)| (better(b, b2), e + e2))
}
