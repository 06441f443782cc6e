use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::run::Tally;
use crate::abelian::{Group, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::setcalc::GroupSet;

/// Which group each random trial runs in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupChoice {
    Fixed(Group),
    /// A fresh group per trial: rank 1 to 3, order at most `max_order`.
    Random {
        max_order: usize,
    },
}

impl GroupChoice {
    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            GroupChoice::Fixed(_) => Ok(()),
            GroupChoice::Random { max_order: 0 } => {
                Err(Error::Precondition("max order must be at least 1".into()))
            }
            GroupChoice::Random { max_order } if max_order > DEFAULT_MAX_ORDER => {
                Err(Error::capacity(
                    "random group order",
                    max_order as u128,
                    DEFAULT_MAX_ORDER as u128,
                ))
            }
            GroupChoice::Random { .. } => Ok(()),
        }
    }

    pub(crate) fn pick(&self, rng: &mut ChaCha8Rng) -> Group {
        match self {
            GroupChoice::Fixed(g) => g.clone(),
            GroupChoice::Random { max_order } => random_group(rng, *max_order),
        }
    }
}

impl fmt::Display for GroupChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupChoice::Fixed(g) => write!(f, "{g}"),
            GroupChoice::Random { max_order } => write!(f, "random(order<={max_order})"),
        }
    }
}

/// Parameters shared by every randomized harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl RandomConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        RandomConfig {
            trials,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Trial `stream` of a run seeded with `seed`; independent of scheduling.
pub(crate) fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn derive_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `trial(rng, index, tally)` for every trial index and merges the tallies.
pub(crate) fn run_trials<F>(trials: u64, seed: u64, trial: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng, u64, &mut Tally) + Sync,
{
    (0..trials)
        .into_par_iter()
        .fold(Tally::default, |mut tally, i| {
            let mut rng = trial_rng(seed, i);
            trial(&mut rng, i, &mut tally);
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

pub(crate) fn random_group(rng: &mut ChaCha8Rng, max_order: usize) -> Group {
    let rank = rng.random_range(1..=3);
    let mut budget = max_order;
    let mut factors = Vec::with_capacity(rank);
    for _ in 0..rank {
        if budget < 2 {
            break;
        }
        let f = rng.random_range(2..=budget);
        factors.push(f);
        budget /= f;
    }
    if factors.is_empty() {
        factors.push(1);
    }
    Group::new(&factors).expect("order bounded by max_order")
}

/// Each element kept independently with a per-call random density.
pub(crate) fn random_set(rng: &mut ChaCha8Rng, group: &Group) -> GroupSet {
    let p: f64 = rng.random();
    let mut s = GroupSet::empty(group);
    for x in 0..group.order() {
        if rng.random_bool(p) {
            s.insert(x);
        }
    }
    s
}

pub(crate) fn random_nonempty_set(rng: &mut ChaCha8Rng, group: &Group) -> GroupSet {
    let mut s = random_set(rng, group);
    if s.is_empty() {
        s.insert(rng.random_range(0..group.order()));
    }
    s
}

/// `k` distinct items of `pool`, uniformly.
pub(crate) fn choose(rng: &mut ChaCha8Rng, pool: &[usize], k: usize) -> Vec<usize> {
    index::sample(rng, pool.len(), k)
        .into_iter()
        .map(|i| pool[i])
        .collect()
}
