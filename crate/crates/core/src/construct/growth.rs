use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcalc::GroupSet;

/// Largest `|A|` that [`best_half_subset`] enumerates by default.
pub const EXHAUSTIVE_HALF_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthStep {
    pub element: usize,
    pub delta: usize,
    pub sigma_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTrace {
    pub steps: Vec<GrowthStep>,
    pub final_set: GroupSet,
}

#[derive(Serialize)]
struct StepRecord {
    element: String,
    delta: usize,
    sigma_size: usize,
}

impl GrowthTrace {
    /// `|Σ(B)|` after the last step (1 for the empty trace).
    pub fn final_sigma_size(&self) -> usize {
        self.steps.last().map_or(1, |s| s.sigma_size)
    }

    /// Recomputes `|Σ|` after each step from the chosen elements alone.
    pub fn replay(&self) -> Vec<usize> {
        let group = self.final_set.group();
        let mut sigma = GroupSet::singleton(group, 0).expect("0 in range");
        let mut scratch = Vec::new();
        self.steps
            .iter()
            .map(|s| {
                sigma.fold_in(s.element, &mut scratch);
                sigma.len()
            })
            .collect()
    }

    /// JSON array of `{element, delta, sigma_size}` records.
    pub fn to_json(&self) -> String {
        let group = self.final_set.group();
        let records: Vec<StepRecord> = self
            .steps
            .iter()
            .map(|s| StepRecord {
                element: group.format_index(s.element),
                delta: s.delta,
                sigma_size: s.sigma_size,
            })
            .collect();
        serde_json::to_string(&records).expect("trace serializes")
    }
}

/// Grows `B` one element at a time, always taking the `a ∈ A \ B` with the largest Δ_{Σ(B)}(a).
///
/// Ties go to the lowest index. This is a heuristic; it carries no size guarantee.
pub fn greedy_grow(a: &GroupSet, u: usize) -> Result<GrowthTrace> {
    if u > a.len() {
        return Err(Error::Precondition(format!(
            "u = {u} exceeds |A| = {}",
            a.len()
        )));
    }
    let group = a.group();
    let mut sigma = GroupSet::singleton(group, 0)?;
    let mut chosen = GroupSet::empty(group);
    let mut steps = Vec::with_capacity(u);
    let mut scratch = Vec::new();
    for _ in 0..u {
        let (best, gain) = a
            .iter()
            .filter(|&x| !chosen.contains(x))
            .map(|x| (x, sigma.len() - sigma.overlap_with_shift(x, &mut scratch)))
            .fold((usize::MAX, 0), |acc, (x, d)| {
                if acc.0 == usize::MAX || d > acc.1 {
                    (x, d)
                } else {
                    acc
                }
            });
        chosen.insert(best);
        sigma.fold_in(best, &mut scratch);
        steps.push(GrowthStep {
            element: best,
            delta: gain,
            sigma_size: sigma.len(),
        });
    }
    Ok(GrowthTrace {
        steps,
        final_set: chosen,
    })
}

/// Exact `max_{B ⊆ A, |B| = |A|/2} |Σ(B)|`, ties broken toward the lexicographically least `B`.
pub fn best_half_subset(a: &GroupSet) -> Result<(GroupSet, usize)> {
    best_half_subset_with_cap(a, EXHAUSTIVE_HALF_CAP)
}

pub fn best_half_subset_with_cap(a: &GroupSet, cap: usize) -> Result<(GroupSet, usize)> {
    if a.len() % 2 == 1 {
        return Err(Error::Precondition(format!("|A| = {} is odd", a.len())));
    }
    if a.len() > cap {
        return Err(Error::capacity(
            "|A| for exhaustive half-subset search",
            a.len() as u128,
            cap as u128,
        )
        .with_hint("use greedy_grow for larger sets"));
    }
    let u = a.len() / 2;
    let xs = a.to_vec();
    let group = a.group();
    if u == 0 {
        return Ok((GroupSet::empty(group), 1));
    }

    // each branch fixes the smallest chosen element; branches are in lex order
    let branches: Vec<Option<(Vec<usize>, usize)>> = (0..=xs.len() - u)
        .into_par_iter()
        .map(|first| {
            let mut search = HalfSearch::new(a, &xs, u);
            let (lo, hi) = search.stack.split_at_mut(1);
            hi[0].assign_fold(&lo[0], xs[first]);
            search.path.push(xs[first]);
            search.descend(first + 1, 1);
            search.best
        })
        .collect();

    let (best, size) =
        branches
            .into_iter()
            .flatten()
            .fold((Vec::new(), 0usize), |acc, (set, size)| {
                if size > acc.1 {
                    (set, size)
                } else {
                    acc
                }
            });
    Ok((GroupSet::from_indices(group, best)?, size))
}

struct HalfSearch<'a> {
    xs: &'a [usize],
    u: usize,
    order: usize,
    stack: Vec<GroupSet>,
    path: Vec<usize>,
    best: Option<(Vec<usize>, usize)>,
}

impl<'a> HalfSearch<'a> {
    fn new(a: &GroupSet, xs: &'a [usize], u: usize) -> Self {
        let zero = GroupSet::singleton(a.group(), 0).expect("0 in range");
        HalfSearch {
            xs,
            u,
            order: a.group().order(),
            stack: vec![zero; u + 1],
            path: Vec::with_capacity(u),
            best: None,
        }
    }

    fn best_size(&self) -> usize {
        self.best.as_ref().map_or(0, |b| b.1)
    }

    fn descend(&mut self, start: usize, depth: usize) {
        let size = self.stack[depth].len();
        if depth == self.u {
            if size > self.best_size() {
                self.best = Some((self.path.clone(), size));
            }
            return;
        }
        // Σ at most doubles per added element
        let remaining = self.u - depth;
        let ceiling = size.saturating_mul(1 << remaining.min(40)).min(self.order);
        if ceiling <= self.best_size() {
            return;
        }
        let last = self.xs.len() - remaining;
        for i in start..=last {
            let (lo, hi) = self.stack.split_at_mut(depth + 1);
            hi[0].assign_fold(&lo[depth], self.xs[i]);
            self.path.push(self.xs[i]);
            self.descend(i + 1, depth + 1);
            self.path.pop();
        }
    }
}

/// Brute-force reference: every `|A|/2`-subset, Σ recomputed from scratch.
#[cfg(test)]
pub(crate) fn best_half_brute(a: &GroupSet) -> (Vec<usize>, usize) {
    let xs = a.to_vec();
    let u = xs.len() / 2;
    let mut best = (Vec::new(), 0);
    for mask in 0u32..(1 << xs.len()) {
        if mask.count_ones() as usize != u {
            continue;
        }
        let b: Vec<usize> = (0..xs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| xs[i])
            .collect();
        let size = crate::setcalc::subset_sums(
            &GroupSet::from_indices(a.group(), b.iter().copied()).unwrap(),
        )
        .len();
        if size > best.1 || (size == best.1 && b < best.0) {
            best = (b, size);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Group;
    use crate::setcalc;
    use proptest::prelude::*;

    fn set(g: &Group, xs: &[usize]) -> GroupSet {
        GroupSet::from_indices(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn greedy_zero_steps() {
        let g = Group::cyclic(100).unwrap();
        let t = greedy_grow(&set(&g, &[1, 2]), 0).unwrap();
        assert!(t.steps.is_empty());
        assert!(t.final_set.is_empty());
        assert_eq!(t.final_sigma_size(), 1);
        assert!(matches!(
            greedy_grow(&set(&g, &[1]), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn greedy_z100() {
        let g = Group::cyclic(100).unwrap();
        let t = greedy_grow(&set(&g, &[1, 2, 3, 4]), 2).unwrap();
        // step 1: every Δ_{{0}}(a) is 1, lowest index wins; step 2: Δ_{{0,1}}(a) = 2 for a = 2, 3, 4
        assert_eq!(
            t.steps,
            vec![
                GrowthStep {
                    element: 1,
                    delta: 1,
                    sigma_size: 2
                },
                GrowthStep {
                    element: 2,
                    delta: 2,
                    sigma_size: 4
                },
            ]
        );
        assert_eq!(t.replay(), vec![2, 4]);
        assert_eq!(
            t.to_json(),
            r#"[{"element":"1","delta":1,"sigma_size":2},{"element":"2","delta":2,"sigma_size":4}]"#
        );
    }

    #[test]
    fn best_half_symmetric_pair() {
        let g = Group::cyclic(11).unwrap();
        let (b, size) = best_half_subset(&set(&g, &[3, 8])).unwrap();
        assert_eq!(size, 2);
        assert_eq!(b.to_vec(), vec![3]);
    }

    #[test]
    fn best_half_z100() {
        let g = Group::cyclic(100).unwrap();
        let a = set(&g, &[1, 2, 3, 4]);
        let (b, size) = best_half_subset(&a).unwrap();
        assert_eq!(size, 4);
        // all six pairs reach 4; the lexicographically least one is returned
        assert_eq!(b.to_vec(), vec![1, 2]);
        assert_eq!(setcalc::subset_sums(&set(&g, &[3, 4])).len(), 4);
        assert_eq!(best_half_brute(&a), (vec![1, 2], 4));
    }

    #[test]
    fn best_half_limits() {
        let g = Group::cyclic(100).unwrap();
        assert!(matches!(
            best_half_subset(&set(&g, &[1, 2, 3])),
            Err(Error::Precondition(_))
        ));
        let big = set(&g, &(1..=26).collect::<Vec<_>>());
        assert!(matches!(
            best_half_subset(&big),
            Err(Error::Capacity { .. })
        ));
        assert_eq!(best_half_subset(&GroupSet::empty(&g)).unwrap().1, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn dfs_matches_brute_force_and_dominates_greedy(
            n in 5usize..40,
            picks in prop::collection::vec(any::<u32>(), 2..11),
        ) {
            let g = Group::cyclic(n).unwrap();
            let mut a = GroupSet::from_indices(&g, picks.iter().map(|&p| p as usize % n)).unwrap();
            if a.len() % 2 == 1 {
                let drop = a.min_index().unwrap();
                a.remove(drop);
            }
            let (b, size) = best_half_subset(&a).unwrap();
            let (bb, bsize) = best_half_brute(&a);
            prop_assert_eq!(size, bsize);
            prop_assert_eq!(b.to_vec(), bb);
            let greedy = greedy_grow(&a, a.len() / 2).unwrap();
            prop_assert!(size >= greedy.final_sigma_size());
            prop_assert_eq!(greedy.replay(), greedy.steps.iter().map(|s| s.sigma_size).collect::<Vec<_>>());
        }
    }
}
