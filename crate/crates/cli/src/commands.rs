use std::fmt;
use std::process::ExitCode;

use serde_json::json;
use sigmaforge::abelian::DEFAULT_MAX_ORDER;
use sigmaforge::bounds::{self, CSV_HEADER};
use sigmaforge::construct::{best_half_subset, greedy_grow};
use sigmaforge::verify::{
    self, ExhaustiveTheorem, GroupChoice, RandomConfig, SearchMode, Verdict, VerificationRun,
    VuOptions,
};
use sigmaforge::{setcalc, Group, GroupSet, SequenceMS};

use crate::output::{self, csv_table, Format};
use crate::{
    BoundArgs, BoundKind, ConstructArgs, Input, SearchArgs, SigmaArgs, Theorem, VerifyArgs,
};

pub enum Status {
    Ok,
    Violation,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(sigmaforge::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<sigmaforge::Error> for CliError {
    fn from(e: sigmaforge::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult = Result<Status, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn max_order() -> Result<usize, CliError> {
    match std::env::var("SIGMAFORGE_MAX_ORDER") {
        Ok(v) => v.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
            usage(format!(
                "SIGMAFORGE_MAX_ORDER={v:?} is not a positive integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn parse_group(text: &str) -> Result<Group, CliError> {
    Ok(Group::parse_with_max_order(text, max_order()?)?)
}

fn print(text: String) {
    if !text.is_empty() {
        println!("{text}");
    }
}

enum Parsed {
    Set(GroupSet),
    Seq(SequenceMS),
}

fn parse_input(input: &Input) -> Result<(Group, Parsed), CliError> {
    let g = parse_group(&input.group)?;
    let parsed = match (&input.set, &input.seq) {
        (Some(s), _) => Parsed::Set(GroupSet::parse(&g, s)?),
        (None, Some(q)) => Parsed::Seq(SequenceMS::parse(&g, q)?),
        (None, None) => return Err(usage("one of --set or --seq is required")),
    };
    Ok((g, parsed))
}

pub fn sigma(args: &SigmaArgs, format: Format) -> CliResult {
    let (g, parsed) = parse_input(&args.input)?;
    let sigma = match &parsed {
        Parsed::Set(a) => setcalc::subset_sums(a),
        Parsed::Seq(s) => setcalc::subsequence_sums(s),
    };
    let stab = setcalc::stabilizer(&sigma);
    print(match format {
        Format::Json => json!({
            "group": g.to_string(),
            "sigma": sigma.literals(),
            "size": sigma.len(),
            "stabilizer": stab.as_set().literals(),
            "stabilizer_order": stab.order(),
        })
        .to_string(),
        Format::Csv => csv_table(
            &["group", "sigma", "size", "stabilizer", "stabilizer_order"],
            &[vec![
                g.to_string(),
                sigma.to_literal(),
                sigma.len().to_string(),
                stab.as_set().to_literal(),
                stab.order().to_string(),
            ]],
        ),
        Format::Human => format!(
            "Σ = {sigma}\n|Σ| = {}\nstab = {}",
            sigma.len(),
            stab.as_set()
        ),
    });
    Ok(Status::Ok)
}

fn single_set(g: &Group, args: &BoundArgs) -> Result<GroupSet, CliError> {
    match args.set.as_slice() {
        [one] => Ok(GroupSet::parse(g, one)?),
        [] => Err(usage("this bound needs --set")),
        _ => Err(usage("this bound takes a single --set")),
    }
}

pub fn bound(args: &BoundArgs, format: Format) -> CliResult {
    if args.which == BoundKind::Recursive {
        let u = args.u.ok_or_else(|| usage("recursive needs --u"))?;
        let n = bounds::recursive_bound_numerator(u);
        print(match format {
            Format::Json => json!({ "u": u, "numerator": n }).to_string(),
            Format::Csv => csv_table(&["u", "numerator"], &[vec![u.to_string(), n.to_string()]]),
            Format::Human => format!("N({u}) = {n}; the recursive bound is |Σ(A)| ≥ N(u)/16"),
        });
        return Ok(Status::Ok);
    }
    let text = args
        .group
        .as_deref()
        .ok_or_else(|| usage("--group is required"))?;
    let g = parse_group(text)?;
    let report = match args.which {
        BoundKind::Kneser => {
            if args.set.is_empty() {
                return Err(usage("kneser needs at least one --set"));
            }
            let sets = args
                .set
                .iter()
                .map(|s| GroupSet::parse(&g, s))
                .collect::<sigmaforge::Result<Vec<_>>>()?;
            bounds::kneser_bound(&sets)?
        }
        BoundKind::Corollary => bounds::corollary_bound(&single_set(&g, args)?),
        BoundKind::Main => bounds::main_bound_check(&single_set(&g, args)?),
        BoundKind::CauchySchwarz => {
            let a = single_set(&g, args)?;
            let h = setcalc::stabilizer(&setcalc::subset_sums(&a));
            bounds::cauchy_schwarz_check(&a, &h)?
        }
        BoundKind::Sequence => {
            let seq = match (&args.seq, args.set.as_slice()) {
                (Some(q), _) => SequenceMS::parse(&g, q)?,
                (None, [s]) => SequenceMS::from_set(&GroupSet::parse(&g, s)?),
                _ => return Err(usage("sequence needs --seq or a single --set")),
            };
            bounds::sequence_bound_check(&seq)
        }
        BoundKind::Recursive => unreachable!("handled above"),
    };
    print(match format {
        Format::Json => report.to_json(),
        Format::Csv => format!("{CSV_HEADER}\n{}", report.to_csv_row()),
        Format::Human => {
            let mut lines = vec![format!(
                "{}: lhs {} {} rhs {} ({})",
                report.name,
                report.lhs,
                if report.holds { "≥" } else { "<" },
                report.rhs,
                if report.holds { "holds" } else { "violated" }
            )];
            lines.extend(report.context.iter().map(|(k, v)| format!("  {k} = {v}")));
            lines.join("\n")
        }
    });
    Ok(if report.holds {
        Status::Ok
    } else {
        Status::Violation
    })
}

fn require_seed(args: &VerifyArgs) -> Result<u64, CliError> {
    args.seed
        .ok_or_else(|| usage("randomized runs need an explicit --seed"))
}

fn groups(args: &VerifyArgs, default_max: usize) -> Result<GroupChoice, CliError> {
    match (&args.group, args.max_order) {
        (Some(_), Some(_)) => Err(usage("give either --group or --max-order, not both")),
        (Some(text), None) => Ok(GroupChoice::Fixed(parse_group(text)?)),
        (None, m) => Ok(GroupChoice::Random {
            max_order: m.unwrap_or(default_max),
        }),
    }
}

pub fn verify(args: &VerifyArgs, format: Format) -> CliResult {
    let exhaustive = |theorem: ExhaustiveTheorem| -> Result<Vec<VerificationRun>, CliError> {
        let text = args
            .group
            .as_deref()
            .ok_or_else(|| usage("--group is required"))?;
        let g = parse_group(text)?;
        let cap = args.cap.unwrap_or(theorem.default_cap());
        Ok(vec![verify::exhaustive_theorem_with_cap(
            &g,
            theorem,
            cap,
            args.workers,
        )?])
    };
    let random = || -> Result<RandomConfig, CliError> {
        Ok(RandomConfig::new(args.trials, require_seed(args)?).with_workers(args.workers))
    };
    let runs = match args.theorem {
        Theorem::Main => exhaustive(ExhaustiveTheorem::Main)?,
        Theorem::Corollary => exhaustive(ExhaustiveTheorem::Corollary)?,
        Theorem::KneserPairs => exhaustive(ExhaustiveTheorem::KneserPairs)?,
        Theorem::Kneser => vec![verify::random_kneser(
            &groups(args, 64)?,
            args.m_max,
            &random()?,
        )?],
        Theorem::Sequence => vec![verify::random_sequence_theorem(
            &groups(args, 36)?,
            args.n_max,
            &random()?,
        )?],
        Theorem::CauchySchwarz => vec![verify::cauchy_schwarz_run(
            &groups(args, 36)?,
            args.n_max,
            &random()?,
        )?],
        Theorem::Identities => verify::identity_suite(&groups(args, 64)?, &random()?)?,
        Theorem::Lemmas => {
            if args.group.is_some() {
                return Err(usage("lemmas draw cyclic groups; use --max-order"));
            }
            verify::lemma_runs(args.max_order.unwrap_or(64), &random()?)?
        }
        Theorem::Olson => {
            let p = args.p.ok_or_else(|| usage("olson needs --p"))?;
            vec![verify::olson_check(p, args.workers)?]
        }
        Theorem::Vu => {
            let n = args.n.ok_or_else(|| usage("vu needs --n"))?;
            let opts = VuOptions {
                samples: args.trials,
                seed: args.seed,
                workers: args.workers,
                ..VuOptions::default()
            };
            vec![verify::vu_check(n, &opts)?]
        }
        Theorem::Interval => {
            let n = args.n.ok_or_else(|| usage("interval needs --n"))?;
            let record = verify::interval_example(n)?;
            print(output::interval(&record, format));
            return Ok(Status::Ok);
        }
    };
    let runs: Vec<VerificationRun> = if args.no_timing {
        runs.iter().map(VerificationRun::without_timing).collect()
    } else {
        runs
    };
    print(output::runs(&runs, format));
    let violated = runs.iter().any(|r| r.verdict == Verdict::Counterexample);
    Ok(if violated {
        Status::Violation
    } else {
        Status::Ok
    })
}

pub fn search(args: &SearchArgs, format: Format) -> CliResult {
    let g = parse_group(&args.group)?;
    let mode = match (args.exhaustive, args.hillclimb) {
        (true, _) => SearchMode::Exhaustive {
            cap: args.cap.unwrap_or(verify::SEARCH_ENUMERATION_CAP),
        },
        (_, true) => SearchMode::HillClimb {
            seed: args
                .seed
                .ok_or_else(|| usage("--hillclimb needs an explicit --seed"))?,
            restarts: args
                .restarts
                .ok_or_else(|| usage("--hillclimb needs --restarts"))?,
        },
        _ => return Err(usage("choose --exhaustive or --hillclimb")),
    };
    let mut record = verify::extremal_search(&g, args.k, mode, args.workers)?;
    if args.no_timing {
        record = record.without_timing();
    }
    print(output::extremal(&record, format));
    Ok(Status::Ok)
}

pub fn construct(args: &ConstructArgs, format: Format) -> CliResult {
    let g = parse_group(&args.group)?;
    let a = GroupSet::parse(&g, &args.set)?;
    if args.greedy {
        let trace = greedy_grow(&a, args.u)?;
        print(match format {
            Format::Json => {
                let steps: serde_json::Value =
                    serde_json::from_str(&trace.to_json()).expect("trace is json");
                json!({
                    "mode": "greedy",
                    "steps": steps,
                    "subset": trace.final_set.literals(),
                    "sigma_size": trace.final_sigma_size(),
                })
                .to_string()
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = trace
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        vec![
                            (i + 1).to_string(),
                            g.format_index(s.element),
                            s.delta.to_string(),
                            s.sigma_size.to_string(),
                        ]
                    })
                    .collect();
                csv_table(&["step", "element", "delta", "sigma_size"], &rows)
            }
            Format::Human => {
                let mut lines: Vec<String> = trace
                    .steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        format!(
                            "step {}: add {} (Δ = {}, |Σ| = {})",
                            i + 1,
                            g.format_index(s.element),
                            s.delta,
                            s.sigma_size
                        )
                    })
                    .collect();
                lines.push(format!("B = {}", trace.final_set));
                lines.push(format!("|Σ(B)| = {}", trace.final_sigma_size()));
                lines.join("\n")
            }
        });
        return Ok(Status::Ok);
    }
    if !args.exact {
        return Err(usage("choose --greedy or --exact"));
    }
    if 2 * args.u != a.len() {
        return Err(usage(format!(
            "--exact searches subsets of size |A|/2; |A| = {}, --u = {}",
            a.len(),
            args.u
        )));
    }
    let (b, size) = best_half_subset(&a)?;
    print(match format {
        Format::Json => {
            json!({ "mode": "exact", "subset": b.literals(), "sigma_size": size }).to_string()
        }
        Format::Csv => csv_table(
            &["subset", "sigma_size"],
            &[vec![b.to_literal(), size.to_string()]],
        ),
        Format::Human => format!("B = {b}\n|Σ(B)| = {size}"),
    });
    Ok(Status::Ok)
}
