//! Exhaustive and randomized verification harnesses, plus extremal search.
//!
//! Every harness takes a worker count and produces the same report for any
//! count: candidate spaces are split deterministically and partial results
//! are merged with a lexicographic tie-break.

mod enumerate;
mod exhaustive;
mod numtheory;
mod random;
mod run;
mod sample;
mod search;

pub use exhaustive::{
    exhaustive_theorem, exhaustive_theorem_with_cap, ExhaustiveTheorem, EXHAUSTIVE_ORDER_CAP,
    EXHAUSTIVE_PAIR_CAP,
};
pub use numtheory::{
    euler_phi, interval_example, is_prime, olson_check, olson_threshold, olson_witness, vu_check,
    vu_threshold, IntervalRecord, OlsonWitness, VuOptions, OLSON_PRIME_CAP, VU_ENUMERATION_CAP,
};
pub use random::{
    cauchy_schwarz_run, identity_suite, lemma_runs, random_kneser, random_sequence_theorem,
    IDENTITIES, LEMMA_RUNS,
};
pub use run::{Mode, RunStats, Verdict, VerificationRun};
pub use sample::{GroupChoice, RandomConfig};
pub use search::{
    extremal_search, ExtremalRecord, SearchMode, SearchVerdict, SEARCH_ENUMERATION_CAP,
};

use crate::error::{Error, Result};

/// Runs `f` on a dedicated pool of `workers` threads.
pub(crate) fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::Workers("worker count must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Workers(e.to_string()))?;
    Ok(pool.install(f))
}
