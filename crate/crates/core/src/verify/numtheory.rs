//! Number-theoretic consequences of the set bound in cyclic groups.

use std::time::Instant;

use num_integer::{Integer, Roots};
use rand::Rng;
use serde::Serialize;

use super::enumerate::{binomial_saturating, walk_subsets, SizeRange, Walk};
use super::run::{Mode, RunHeader, Tally, Verdict, VerificationRun};
use super::sample::{self, run_trials};
use super::with_workers;
use crate::abelian::Group;
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

/// Largest prime enumerated by [`olson_check`].
pub const OLSON_PRIME_CAP: u64 = 23;
/// Qualifying subsets beyond this count are sampled rather than enumerated.
pub const VU_ENUMERATION_CAP: u128 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `⌊√(4p − 7)⌋`.
pub fn olson_threshold(p: u64) -> u64 {
    (4 * p - 7).sqrt()
}

/// The symmetric set `{−⌊√p⌋, …, −1, 1, …, ⌊√p⌋}` in `ℤ_p` and what its subset sums reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OlsonWitness {
    pub p: u64,
    pub set: String,
    pub set_size: usize,
    pub sigma_size: usize,
    /// Whether `⌊p/2⌋ ∈ Σ(A)`.
    pub half_reached: bool,
    pub complete: bool,
}

pub fn olson_witness(p: u64) -> Result<OlsonWitness> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let g = Group::cyclic(p as usize)?;
    let r = p.sqrt() as usize;
    let n = p as usize;
    let a = GroupSet::from_indices(&g, (1..=r).flat_map(|x| [x, n - x]))?;
    let sigma = setcalc::subset_sums(&a);
    Ok(OlsonWitness {
        p,
        set: a.to_literal(),
        set_size: a.len(),
        sigma_size: sigma.len(),
        half_reached: sigma.contains(n / 2),
        complete: sigma.is_full(),
    })
}

/// Every `A ⊆ ℤ_p \ {0}` with `|A| ≥ ⌊√(4p−7)⌋` has `Σ(A) = ℤ_p`.
///
/// The size condition is read as a lower bound; with `≤` the statement fails
/// already for `|A| = 1`. Details carry the threshold and [`olson_witness`].
pub fn olson_check(p: u64, workers: usize) -> Result<VerificationRun> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p > OLSON_PRIME_CAP {
        return Err(Error::capacity(
            "prime for exhaustive Olson check",
            p as u128,
            OLSON_PRIME_CAP as u128,
        ));
    }
    let started = Instant::now();
    let g = Group::cyclic(p as usize)?;
    let t = olson_threshold(p) as usize;
    let tally = with_workers(workers, || completeness_walk(&g, t))?;
    let witness = olson_witness(p)?;
    Ok(tally
        .finish(RunHeader::exhaustive("olson", &g), started)
        .detail("threshold", t)
        .detail(
            "symmetric_set",
            serde_json::to_value(&witness).expect("witness serializes"),
        ))
}

/// Every subset of `G \ {0}` with at least `t` elements must have `Σ = G`.
fn completeness_walk(g: &Group, t: usize) -> Tally {
    completeness_walk_over(g, &(1..g.order()).collect::<Vec<_>>(), t)
}

/// As [`completeness_walk`], over subsets of `universe`.
fn completeness_walk_over(g: &Group, universe: &[usize], t: usize) -> Tally {
    let sizes = SizeRange {
        min: t,
        max: universe.len(),
    };
    walk_subsets(g, universe, sizes, Tally::default, |tally, path, sigma| {
        if path.len() >= t {
            let slack = sigma.len() as i64 - g.order() as i64;
            tally.record(slack, sigma.is_full(), path, || {
                format!(
                    "group={g} A={{{}}} sigma_size={}",
                    literal(g, path),
                    sigma.len()
                )
            });
        }
        Walk::Descend
    })
    .into_iter()
    .fold(Tally::default(), Tally::merge)
}

fn literal(g: &Group, xs: &[usize]) -> String {
    xs.iter()
        .map(|&x| g.format_index(x))
        .collect::<Vec<_>>()
        .join(";")
}

/// Smallest `t` with `t² ≥ 64n`, i.e. `⌈8√n⌉`, in integers only.
pub fn vu_threshold(n: u64) -> u64 {
    let target = 64 * n;
    let r = target.sqrt();
    if r * r == target {
        r
    } else {
        r + 1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VuOptions {
    /// Enumerate when at most this many qualifying subsets exist.
    pub enumeration_cap: u128,
    /// Sample count used past the cap.
    pub samples: u64,
    pub seed: Option<u64>,
    pub workers: usize,
}

impl Default for VuOptions {
    fn default() -> Self {
        VuOptions {
            enumeration_cap: VU_ENUMERATION_CAP,
            samples: 10_000,
            seed: None,
            workers: 1,
        }
    }
}

/// Every set of at least `⌈8√n⌉` units mod `n` has `Σ(A) = ℤ_n`.
///
/// Vacuous when there are fewer than `⌈8√n⌉` units. Sampling past the
/// enumeration cap needs a seed.
pub fn vu_check(n: u64, opts: &VuOptions) -> Result<VerificationRun> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} must be at least 2")));
    }
    let started = Instant::now();
    let g = Group::cyclic(n as usize)?;
    let t = vu_threshold(n);
    let phi = euler_phi(n);
    let qualifying: u128 = (t..=phi)
        .map(|s| binomial_saturating(phi, s))
        .fold(0, u128::saturating_add);
    let base = |run: VerificationRun| {
        run.detail("threshold", t).detail("phi", phi).detail(
            "qualifying",
            serde_json::Value::String(qualifying.to_string()),
        )
    };
    if phi < t {
        let mut run = Tally::default().finish(RunHeader::exhaustive("vu", &g), started);
        run.verdict = Verdict::Vacuous;
        return Ok(base(run));
    }
    let units: Vec<usize> = (1..n)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| k as usize)
        .collect();
    if qualifying <= opts.enumeration_cap {
        let tally = with_workers(opts.workers, || {
            completeness_walk_over(&g, &units, t as usize)
        })?;
        return Ok(base(tally.finish(RunHeader::exhaustive("vu", &g), started)));
    }
    let seed = opts.seed.ok_or_else(|| {
        Error::Precondition(format!(
            "{qualifying} qualifying subsets exceed the enumeration cap; sampling needs a seed"
        ))
    })?;
    if opts.samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    let tally = with_workers(opts.workers, || {
        run_trials(opts.samples, seed, |rng, i, tally| {
            let size = rng.random_range(t as usize..=units.len());
            let mut pick = sample::choose(rng, &units, size);
            pick.sort_unstable();
            let a = GroupSet::from_indices(&g, pick.iter().copied()).expect("units in range");
            let sigma = setcalc::subset_sums(&a);
            let slack = sigma.len() as i64 - g.order() as i64;
            tally.record(slack, sigma.is_full(), &[i as usize], || {
                format!(
                    "sample={i} group={g} A={{{}}} sigma_size={}",
                    a.to_literal(),
                    sigma.len()
                )
            });
        })
    })?;
    let mut header = RunHeader::random("vu", &g, seed, opts.samples);
    header.mode = Mode::Sampled;
    Ok(base(tally.finish(header, started)))
}

/// `Σ({−n, …, −1, 1, …, n})` computed inside `ℤ_m`, `m = 2n(n+1) + 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalRecord {
    pub n: u64,
    pub m: u64,
    pub set_size: usize,
    pub sigma_size: usize,
    /// Largest subset sum as an integer, `n(n+1)/2`.
    pub max_sum: u64,
    pub stabilizer_order: usize,
    /// `n(n+1) + 1`, the size of the full integer range `[−max_sum, max_sum]`.
    pub range_size: u64,
    /// `n(n−1) + 1`, the figure printed alongside this example in the literature.
    pub printed_value: u64,
}

pub fn interval_example(n: u64) -> Result<IntervalRecord> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let m = 2 * n * (n + 1) + 3;
    let g = Group::cyclic(m as usize)?;
    let mm = m as usize;
    let a = GroupSet::from_indices(&g, (1..=n as usize).flat_map(|x| [x, mm - x]))?;
    let sigma = setcalc::subset_sums(&a);
    let h = setcalc::stabilizer(&sigma);
    Ok(IntervalRecord {
        n,
        m,
        set_size: a.len(),
        sigma_size: sigma.len(),
        max_sum: n * (n + 1) / 2,
        stabilizer_order: h.order(),
        range_size: n * (n + 1) + 1,
        printed_value: n * (n - 1) + 1,
    })
}
