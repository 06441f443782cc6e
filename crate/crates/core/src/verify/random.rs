use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::run::{RunHeader, Tally, VerificationRun};
use super::sample::{self, derive_seed, run_trials, GroupChoice, RandomConfig};
use super::with_workers;
use crate::abelian::{generated_subgroup, Group, Subgroup};
use crate::bounds;
use crate::construct::{hard_diagnostic, witness_easy, witness_hard};
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet, SequenceMS};

fn run(
    theorem: &str,
    groups: &GroupChoice,
    cfg: &RandomConfig,
    trial: impl Fn(&mut ChaCha8Rng, u64, &mut Tally) + Sync + Send,
) -> Result<VerificationRun> {
    groups.validate()?;
    cfg.validate()?;
    let started = Instant::now();
    let tally = with_workers(cfg.workers, || run_trials(cfg.trials, cfg.seed, trial))?;
    Ok(tally.finish(
        RunHeader::random(theorem, groups, cfg.seed, cfg.trials),
        started,
    ))
}

fn key(i: u64) -> [usize; 1] {
    [i as usize]
}

/// Random sequences of length at most `n_max` with uniform terms.
pub fn random_sequence_theorem(
    groups: &GroupChoice,
    n_max: usize,
    cfg: &RandomConfig,
) -> Result<VerificationRun> {
    run("sequence", groups, cfg, |rng, i, tally| {
        let g = groups.pick(rng);
        let len = rng.random_range(0..=n_max);
        let terms: Vec<usize> = (0..len).map(|_| rng.random_range(0..g.order())).collect();
        let seq = SequenceMS::from_terms(&g, terms).expect("terms in range");
        let r = bounds::sequence_bound_check(&seq);
        tally.record(r.slack(), r.holds, &key(i), || {
            format!(
                "trial={i} group={g} seq={} lhs={} rhs={}",
                seq.to_literal(),
                r.lhs,
                r.rhs
            )
        });
    })
}

/// For all-distinct sequences, the sequence bound's right side dominates the set bound's.
///
/// Slack is `rhs_sequence − rhs_set`.
pub fn cauchy_schwarz_run(
    groups: &GroupChoice,
    n_max: usize,
    cfg: &RandomConfig,
) -> Result<VerificationRun> {
    run("cauchy-schwarz", groups, cfg, |rng, i, tally| {
        let g = groups.pick(rng);
        let len = rng.random_range(0..=n_max.min(g.order()));
        let all: Vec<usize> = (0..g.order()).collect();
        let a =
            GroupSet::from_indices(&g, sample::choose(rng, &all, len)).expect("indices in range");
        let seq = bounds::sequence_bound_check(&SequenceMS::from_set(&a));
        let set = bounds::main_bound_check(&a);
        let h = setcalc::stabilizer(&setcalc::subset_sums(&a));
        let cs = bounds::cauchy_schwarz_check(&a, &h).expect("same group");
        let holds = seq.rhs >= set.rhs && seq.lhs == set.lhs && cs.holds;
        tally.record(seq.rhs - set.rhs, holds, &key(i), || {
            format!(
                "trial={i} group={g} A={{{}}} sequence_rhs={} set_rhs={} weighted={}",
                a.to_literal(),
                seq.rhs,
                set.rhs,
                cs.lhs
            )
        });
    })
}

/// Kneser's inequality for random tuples of `1..=m_max` nonempty sets.
pub fn random_kneser(
    groups: &GroupChoice,
    m_max: usize,
    cfg: &RandomConfig,
) -> Result<VerificationRun> {
    if m_max == 0 {
        return Err(Error::Precondition("m_max must be at least 1".into()));
    }
    run("kneser", groups, cfg, |rng, i, tally| {
        let g = groups.pick(rng);
        let m = rng.random_range(1..=m_max);
        let sets: Vec<GroupSet> = (0..m)
            .map(|_| sample::random_nonempty_set(rng, &g))
            .collect();
        let r = bounds::kneser_bound(&sets).expect("nonempty summands");
        tally.record(r.slack(), r.holds, &key(i), || {
            let lits: Vec<String> = sets
                .iter()
                .map(|s| format!("{{{}}}", s.to_literal()))
                .collect();
            format!(
                "trial={i} group={g} sets={} lhs={} rhs={}",
                lits.join(" "),
                r.lhs,
                r.rhs
            )
        });
    })
}

/// Names of the runs returned by [`identity_suite`], in order.
pub const IDENTITIES: [&str; 6] = [
    "gamma-plus-delta",
    "delta-complement",
    "delta-subadditive",
    "stab-monotone",
    "complete-sum",
    "sigma-decomposition",
];

type Identity = fn(&mut ChaCha8Rng, &Group) -> (bool, String);

fn gamma_plus_delta(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let s = sample::random_set(rng, g);
    let x = rng.random_range(0..g.order());
    let (gm, dl) = (setcalc::gamma_idx(&s, x), setcalc::delta_idx(&s, x));
    (
        gm + dl == s.len(),
        format!(
            "S={{{}}} x={} gamma={gm} delta={dl}",
            s.to_literal(),
            g.format_index(x)
        ),
    )
}

fn delta_complement(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let s = sample::random_set(rng, g);
    let x = rng.random_range(0..g.order());
    let (d, dc) = (
        setcalc::delta_idx(&s, x),
        setcalc::delta_idx(&s.complement(), x),
    );
    (
        d == dc,
        format!(
            "S={{{}}} x={} delta={d} delta_complement={dc}",
            s.to_literal(),
            g.format_index(x)
        ),
    )
}

fn delta_subadditive(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let s = sample::random_set(rng, g);
    let x = rng.random_range(0..g.order());
    let y = rng.random_range(0..g.order());
    let lhs = setcalc::delta_idx(&s, g.add_idx(x, y));
    let rhs = setcalc::delta_idx(&s, x) + setcalc::delta_idx(&s, y);
    let text = format!(
        "S={{{}}} x={} y={} delta_sum={lhs} bound={rhs}",
        s.to_literal(),
        g.format_index(x),
        g.format_index(y)
    );
    (lhs <= rhs, text)
}

fn stab_monotone(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let s = sample::random_set(rng, g);
    let t = sample::random_set(rng, g);
    let st = setcalc::sumset(&s, &t).expect("same group");
    let small = setcalc::stabilizer(&s);
    let big = setcalc::stabilizer(&st);
    (
        small.is_subgroup_of(&big),
        format!("S={{{}}} T={{{}}}", s.to_literal(), t.to_literal()),
    )
}

fn complete_sum(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let n = g.order();
    let all: Vec<usize> = (0..n).collect();
    let ka = rng.random_range(1..=n);
    let kb = rng.random_range(n - ka + 1..=n);
    let a = GroupSet::from_indices(g, sample::choose(rng, &all, ka)).expect("indices in range");
    let b = GroupSet::from_indices(g, sample::choose(rng, &all, kb)).expect("indices in range");
    let full = setcalc::sumset(&a, &b).expect("same group").is_full();
    (
        full,
        format!("A={{{}}} B={{{}}}", a.to_literal(), b.to_literal()),
    )
}

fn sigma_decomposition(rng: &mut ChaCha8Rng, g: &Group) -> (bool, String) {
    let a = sample::random_set(rng, g);
    let pairs: Vec<GroupSet> = a
        .iter()
        .map(|x| GroupSet::from_indices(g, [0, x]).expect("indices in range"))
        .collect();
    let folded = if pairs.is_empty() {
        GroupSet::singleton(g, 0).expect("0 in range")
    } else {
        setcalc::sumset_many(&pairs).expect("same group")
    };
    (
        folded == setcalc::subset_sums(&a),
        format!("A={{{}}}", a.to_literal()),
    )
}

/// One run per entry of [`IDENTITIES`], each over `cfg.trials` random instances.
pub fn identity_suite(groups: &GroupChoice, cfg: &RandomConfig) -> Result<Vec<VerificationRun>> {
    let checks: [Identity; 6] = [
        gamma_plus_delta,
        delta_complement,
        delta_subadditive,
        stab_monotone,
        complete_sum,
        sigma_decomposition,
    ];
    IDENTITIES
        .iter()
        .zip(checks)
        .enumerate()
        .map(|(tag, (name, check))| {
            let stream_seed = derive_seed(cfg.seed, tag as u64 + 1);
            groups.validate()?;
            cfg.validate()?;
            let started = Instant::now();
            let tally = with_workers(cfg.workers, || {
                run_trials(cfg.trials, stream_seed, |rng, i, tally| {
                    let g = groups.pick(rng);
                    let (holds, text) = check(rng, &g);
                    tally.record_plain(holds, &key(i), || format!("trial={i} group={g} {text}"));
                })
            })?;
            Ok(tally.finish(
                RunHeader::random(name, groups, cfg.seed, cfg.trials),
                started,
            ))
        })
        .collect()
}

/// Names of the runs returned by [`lemma_runs`], in order.
pub const LEMMA_RUNS: [&str; 3] = ["witness-easy", "witness-hard", "hard-diagnostic"];

/// A random subgroup `K = ⟨d⟩` of `ℤ_n` with `|K| ≥ 2`, plus `d`.
fn cyclic_ambient(rng: &mut ChaCha8Rng, max_order: usize) -> (Group, Subgroup, usize) {
    let n = rng.random_range(2..=max_order);
    let g = Group::cyclic(n).expect("order within cap");
    let divisors: Vec<usize> = (1..n).filter(|d| n % d == 0).collect();
    let d = divisors[rng.random_range(0..divisors.len())];
    let k = generated_subgroup(&GroupSet::singleton(&g, d).expect("d < n"));
    (g, k, d)
}

/// `t` elements of `K`, replaced by their complement in `K` half of the time.
fn s_with_deficiency(rng: &mut ChaCha8Rng, k: &Subgroup, t: usize) -> GroupSet {
    let s = GroupSet::from_indices(k.group(), sample::choose(rng, k.members(), t))
        .expect("members in range");
    if rng.random_bool(0.5) {
        k.as_set().difference(&s).expect("same group")
    } else {
        s
    }
}

struct EasyInstance {
    c: GroupSet,
    s: GroupSet,
    k: Subgroup,
}

/// `C ⊆ K` nonempty and `S ⊆ K` with `2·df_S(K) ≤ |C|`, built directly.
fn easy_instance(rng: &mut ChaCha8Rng, max_order: usize) -> EasyInstance {
    let (_, k, _) = cyclic_ambient(rng, max_order);
    let c_size = rng.random_range(1..=k.order());
    let c = GroupSet::from_indices(k.group(), sample::choose(rng, k.members(), c_size))
        .expect("members in range");
    let t = rng.random_range(0..=(c_size / 2).min(k.order() / 2));
    let s = s_with_deficiency(rng, &k, t);
    EasyInstance { c, s, k }
}

/// `C` generating `K` and `S ⊆ K` with `2·df_S(K) ≥ |C|`, built directly.
fn hard_instance(rng: &mut ChaCha8Rng, max_order: usize) -> EasyInstance {
    let (g, k, d) = cyclic_ambient(rng, max_order);
    let order = k.order();
    let units: Vec<usize> = (1..order)
        .filter(|&u| num_integer::gcd(u, order) == 1)
        .collect();
    let unit = units[rng.random_range(0..units.len())];
    let generator = g.mul_idx(unit, d);
    let c_size = rng.random_range(1..=2 * (order / 2));
    let others: Vec<usize> = k
        .members()
        .iter()
        .copied()
        .filter(|&x| x != generator)
        .collect();
    let mut c = GroupSet::from_indices(&g, sample::choose(rng, &others, c_size - 1))
        .expect("members in range");
    c.insert(generator);
    let t = rng.random_range(c_size.div_ceil(2)..=order / 2);
    let s = s_with_deficiency(rng, &k, t);
    EasyInstance { c, s, k }
}

/// Constructed instances of the two witness lemmas in cyclic groups of order `≤ max_order`.
///
/// Slack is `2Δ − df` for the easy case, `8Δ − |C|` for the hard case and
/// `|D| − 2|S|` for the diagnostic.
pub fn lemma_runs(max_order: usize, cfg: &RandomConfig) -> Result<Vec<VerificationRun>> {
    if max_order < 2 {
        return Err(Error::Precondition(
            "lemma instances need order at least 2".into(),
        ));
    }
    let groups = GroupChoice::Random { max_order };
    let label = format!("cyclic(order<={max_order})");
    let easy = run("witness-easy", &groups, cfg, |rng, i, tally| {
        let inst = easy_instance(rng, max_order);
        let w = witness_easy(&inst.c, &inst.s, &inst.k).expect("constructed inputs are valid");
        let slack = 2 * w.delta as i64 - w.deficiency as i64;
        let averaged = 2 * w.delta_sum >= w.c_size * w.deficiency;
        tally.record(
            slack,
            w.guaranteed && slack >= 0 && averaged,
            &key(i),
            || {
                format!(
                    "trial={i} group={} k_order={} C={{{}}} S={{{}}} delta={} df={} delta_sum={}",
                    inst.c.group(),
                    inst.k.order(),
                    inst.c.to_literal(),
                    inst.s.to_literal(),
                    w.delta,
                    w.deficiency,
                    w.delta_sum
                )
            },
        );
    })?;
    let hard = run("witness-hard", &groups, cfg, |rng, i, tally| {
        let inst = hard_instance(rng, max_order);
        let w = witness_hard(&inst.c, &inst.s, &inst.k).expect("constructed inputs are valid");
        let slack = 8 * w.delta as i64 - w.c_size as i64;
        tally.record(slack, w.guaranteed && slack >= 0, &key(i), || {
            format!(
                "trial={i} group={} C={{{}}} S={{{}}} delta={} c_size={}",
                inst.c.group(),
                inst.c.to_literal(),
                inst.s.to_literal(),
                w.delta,
                w.c_size
            )
        });
    })?;
    let diag = run("hard-diagnostic", &groups, cfg, |rng, i, tally| {
        let inst = hard_instance(rng, max_order);
        let d = hard_diagnostic(&inst.c, &inst.s, &inst.k).expect("constructed inputs are valid");
        let slack = d.d_size as i64 - 2 * d.s_size as i64;
        tally.record(slack, d.holds, &key(i), || {
            format!(
                "trial={i} group={} C={{{}}} S={{{}}} r={} d_size={} s_size={}",
                inst.c.group(),
                inst.c.to_literal(),
                inst.s.to_literal(),
                d.r,
                d.d_size,
                d.s_size
            )
        });
    })?;
    Ok([easy, hard, diag]
        .into_iter()
        .map(|mut r| {
            r.group = label.clone();
            r
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::sample::trial_rng;

    fn cfg(trials: u64) -> RandomConfig {
        RandomConfig::new(trials, 2024)
    }

    #[test]
    fn zero_trials_rejected() {
        let g = GroupChoice::Fixed(Group::cyclic(5).unwrap());
        assert!(matches!(
            random_sequence_theorem(&g, 4, &cfg(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sequence_z6xz6() {
        let g = GroupChoice::Fixed(Group::new(&[6, 6]).unwrap());
        let run = random_sequence_theorem(&g, 12, &cfg(300)).unwrap();
        assert!(run.is_verified(), "{:?}", run.counterexamples);
        assert_eq!(run.stats.instances, 300);
        let again = random_sequence_theorem(&g, 12, &cfg(300).with_workers(3)).unwrap();
        assert_eq!(
            run.without_timing().to_json(),
            again.without_timing().to_json()
        );
    }

    #[test]
    fn identities_hold() {
        let g = GroupChoice::Random { max_order: 40 };
        let runs = identity_suite(&g, &cfg(200)).unwrap();
        assert_eq!(runs.len(), IDENTITIES.len());
        for (r, name) in runs.iter().zip(IDENTITIES) {
            assert_eq!(r.theorem, name);
            assert!(r.is_verified(), "{name}: {:?}", r.counterexamples);
        }
    }

    #[test]
    fn constructed_instances_meet_preconditions() {
        let mut rng = trial_rng(9, 0);
        for _ in 0..300 {
            let e = easy_instance(&mut rng, 64);
            let df = e.s.len().min(e.k.order() - e.s.len());
            assert!(2 * df <= e.c.len());
            let h = hard_instance(&mut rng, 64);
            let df = h.s.len().min(h.k.order() - h.s.len());
            assert!(2 * df >= h.c.len());
            assert_eq!(generated_subgroup(&h.c), h.k);
        }
    }

    #[test]
    fn lemmas_hold() {
        for run in lemma_runs(64, &cfg(150)).unwrap() {
            assert!(
                run.is_verified(),
                "{}: {:?}",
                run.theorem,
                run.counterexamples
            );
        }
    }

    #[test]
    fn kneser_and_cauchy_schwarz() {
        let g = GroupChoice::Random { max_order: 36 };
        assert!(random_kneser(&g, 5, &cfg(200)).unwrap().is_verified());
        assert!(cauchy_schwarz_run(&g, 12, &cfg(200)).unwrap().is_verified());
        assert!(random_kneser(&g, 0, &cfg(1)).is_err());
    }
}
