//! Depth-first subset enumeration carrying a stack of Σ bitmaps.
//!
//! Σ only grows along a DFS path, so each node costs one fold instead of a
//! full recomputation. Subsets are visited in lexicographic order of their
//! sorted element lists; the top-level branches (fixed smallest element) run
//! in parallel and come back in that same order.

use rayon::prelude::*;

use crate::abelian::Group;
use crate::setcalc::GroupSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Walk {
    Descend,
    /// Skip every superset of the current node.
    Prune,
}

pub(crate) struct SizeRange {
    pub min: usize,
    pub max: usize,
}

/// Calls `visit(acc, subset, Σ(subset))` for every subset of `universe` whose
/// size can still land in `sizes`. Returns one accumulator for the empty set
/// followed by one per top-level branch.
pub(crate) fn walk_subsets<A, I, F>(
    group: &Group,
    universe: &[usize],
    sizes: SizeRange,
    init: I,
    visit: F,
) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[usize], &GroupSet) -> Walk + Sync,
{
    let n = universe.len();
    let max = sizes.max.min(n);
    if sizes.min > max {
        return Vec::new();
    }
    let zero = GroupSet::singleton(group, 0).expect("0 in range");

    let mut root = init();
    let root_walk = visit(&mut root, &[], &zero);
    let mut out = vec![root];
    if root_walk == Walk::Prune || max == 0 {
        return out;
    }

    let branches: Vec<A> = (0..n)
        .into_par_iter()
        .filter(|&i| 1 + (n - i - 1) >= sizes.min)
        .map(|i| {
            let mut acc = init();
            let mut walker = Walker {
                universe,
                min: sizes.min,
                max,
                stack: vec![zero.clone(); max + 1],
                path: Vec::with_capacity(max),
                visit: &visit,
            };
            walker.enter(&mut acc, i, 1);
            acc
        })
        .collect();
    out.extend(branches);
    out
}

struct Walker<'a, F> {
    universe: &'a [usize],
    min: usize,
    max: usize,
    stack: Vec<GroupSet>,
    path: Vec<usize>,
    visit: &'a F,
}

impl<F> Walker<'_, F> {
    /// Adds `universe[i]` at `depth` and explores from there.
    fn enter<A>(&mut self, acc: &mut A, i: usize, depth: usize)
    where
        F: Fn(&mut A, &[usize], &GroupSet) -> Walk,
    {
        let x = self.universe[i];
        let (lo, hi) = self.stack.split_at_mut(depth);
        hi[0].assign_fold(&lo[depth - 1], x);
        self.path.push(x);
        let walk = (self.visit)(acc, &self.path, &self.stack[depth]);
        if walk == Walk::Descend && depth < self.max {
            let n = self.universe.len();
            for j in i + 1..n {
                if depth + 1 + (n - j - 1) < self.min {
                    break;
                }
                self.enter(acc, j, depth + 1);
            }
        }
        self.path.pop();
    }
}

pub(crate) fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc · (n − i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
