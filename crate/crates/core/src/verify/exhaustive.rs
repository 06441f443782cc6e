use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::enumerate::{walk_subsets, SizeRange, Walk};
use super::run::{RunHeader, Tally, VerificationRun};
use super::with_workers;
use crate::abelian::Group;
use crate::bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

/// Largest group order enumerated subset by subset.
pub const EXHAUSTIVE_ORDER_CAP: usize = 16;
/// Largest group order for the pairwise Kneser enumeration.
pub const EXHAUSTIVE_PAIR_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExhaustiveTheorem {
    Main,
    Corollary,
    /// Kneser's inequality for every unordered pair of nonempty sets.
    KneserPairs,
}

impl ExhaustiveTheorem {
    pub fn name(self) -> &'static str {
        match self {
            ExhaustiveTheorem::Main => "main",
            ExhaustiveTheorem::Corollary => "corollary",
            ExhaustiveTheorem::KneserPairs => "kneser-pairs",
        }
    }

    pub fn default_cap(self) -> usize {
        match self {
            ExhaustiveTheorem::KneserPairs => EXHAUSTIVE_PAIR_CAP,
            _ => EXHAUSTIVE_ORDER_CAP,
        }
    }
}

impl fmt::Display for ExhaustiveTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExhaustiveTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(ExhaustiveTheorem::Main),
            "corollary" => Ok(ExhaustiveTheorem::Corollary),
            "kneser-pairs" => Ok(ExhaustiveTheorem::KneserPairs),
            other => Err(Error::Parse(format!(
                "unknown exhaustive theorem `{other}`"
            ))),
        }
    }
}

/// Checks `theorem` on every subset (or pair of subsets) of `group`.
pub fn exhaustive_theorem(
    group: &Group,
    theorem: ExhaustiveTheorem,
    workers: usize,
) -> Result<VerificationRun> {
    exhaustive_theorem_with_cap(group, theorem, theorem.default_cap(), workers)
}

pub fn exhaustive_theorem_with_cap(
    group: &Group,
    theorem: ExhaustiveTheorem,
    cap: usize,
    workers: usize,
) -> Result<VerificationRun> {
    if group.order() > cap {
        return Err(Error::capacity(
            "group order for exhaustive enumeration",
            group.order() as u128,
            cap as u128,
        )
        .with_hint("use the randomized harnesses for larger groups"));
    }
    let started = Instant::now();
    let tally = with_workers(workers, || match theorem {
        ExhaustiveTheorem::KneserPairs => kneser_pairs(group),
        _ => subsets(group, theorem),
    })?;
    Ok(tally.finish(RunHeader::exhaustive(theorem.name(), group), started))
}

fn describe(group: &Group, a: &GroupSet, r: &BoundReport) -> String {
    format!(
        "group={group} A={{{}}} lhs={} rhs={}",
        a.to_literal(),
        r.lhs,
        r.rhs
    )
}

fn subsets(group: &Group, theorem: ExhaustiveTheorem) -> Tally {
    let universe: Vec<usize> = (0..group.order()).collect();
    let sizes = SizeRange {
        min: 0,
        max: universe.len(),
    };
    walk_subsets(
        group,
        &universe,
        sizes,
        Tally::default,
        |tally, path, sigma| {
            let a = GroupSet::from_indices(group, path.iter().copied()).expect("indices in range");
            let h = setcalc::stabilizer(sigma);
            let r = match theorem {
                ExhaustiveTheorem::Main => bounds::main_from_sigma(&a, sigma, &h),
                _ => bounds::corollary_from_sigma(&a, sigma, &h),
            };
            tally.record(r.slack(), r.holds, path, || describe(group, &a, &r));
            Walk::Descend
        },
    )
    .into_iter()
    .fold(Tally::default(), Tally::merge)
}

fn kneser_pairs(group: &Group) -> Tally {
    let n = group.order();
    let sets: Vec<(Vec<usize>, GroupSet)> = (1u64..1 << n)
        .map(|mask| {
            let xs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let s = GroupSet::from_indices(group, xs.iter().copied()).expect("indices in range");
            (xs, s)
        })
        .collect();
    (0..sets.len())
        .into_par_iter()
        .map(|i| {
            let mut tally = Tally::default();
            let (ka, a) = &sets[i];
            for (kb, b) in &sets[i..] {
                let pair = [a.clone(), b.clone()];
                let total = setcalc::sumset(a, b).expect("same group");
                let r = bounds::kneser_report(&pair, &total);
                // `usize::MAX` separates the two halves of the key
                let key: Vec<usize> = ka
                    .iter()
                    .copied()
                    .chain([usize::MAX])
                    .chain(kb.iter().copied())
                    .collect();
                tally.record(r.slack(), r.holds, &key, || {
                    format!(
                        "group={group} A={{{}}} B={{{}}} lhs={} rhs={}",
                        a.to_literal(),
                        b.to_literal(),
                        r.lhs,
                        r.rhs
                    )
                });
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn trivial_group() {
        let g = Group::cyclic(1).unwrap();
        let run = exhaustive_theorem(&g, ExhaustiveTheorem::Main, 1).unwrap();
        assert_eq!(run.verdict, Verdict::Verified);
        assert_eq!(run.stats.instances, 2);
    }

    #[test]
    fn z12_counts_every_subset() {
        let g = Group::cyclic(12).unwrap();
        let run = exhaustive_theorem(&g, ExhaustiveTheorem::Main, 2).unwrap();
        assert!(run.is_verified());
        assert_eq!(run.stats.instances, 4096);
        assert!(run.stats.min_slack.unwrap() >= 0);
    }

    #[test]
    fn cap_enforced() {
        let g = Group::cyclic(17).unwrap();
        let err = exhaustive_theorem(&g, ExhaustiveTheorem::Corollary, 1).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        let g = Group::cyclic(11).unwrap();
        assert!(exhaustive_theorem(&g, ExhaustiveTheorem::KneserPairs, 1).is_err());
    }

    #[test]
    fn kneser_pairs_small() {
        let g = Group::new(&[2, 2]).unwrap();
        let run = exhaustive_theorem(&g, ExhaustiveTheorem::KneserPairs, 1).unwrap();
        assert!(run.is_verified());
        // 15 nonempty sets, unordered pairs with repetition
        assert_eq!(run.stats.instances, 15 * 16 / 2);
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let g = Group::new(&[2, 4]).unwrap();
        for theorem in [ExhaustiveTheorem::Main, ExhaustiveTheorem::KneserPairs] {
            let one = exhaustive_theorem(&g, theorem, 1).unwrap().without_timing();
            let four = exhaustive_theorem(&g, theorem, 4).unwrap().without_timing();
            assert_eq!(one.to_json(), four.to_json());
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "kneser-pairs".parse::<ExhaustiveTheorem>().unwrap(),
            ExhaustiveTheorem::KneserPairs
        );
        assert!("olson".parse::<ExhaustiveTheorem>().is_err());
    }
}
