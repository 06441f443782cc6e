use sigmaforge::verify::{ExtremalRecord, IntervalRecord, VerificationRun};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Self {
        match (json, csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Human,
        }
    }
}

/// Header plus rows, quoted as needed.
pub fn csv_table<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(header).expect("in-memory csv write");
    for row in rows {
        w.write_record(row.iter().map(AsRef::as_ref))
            .expect("in-memory csv write");
    }
    let bytes = w.into_inner().expect("in-memory csv flush");
    String::from_utf8(bytes)
        .expect("utf-8 csv")
        .trim_end()
        .to_string()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn verdict(run: &VerificationRun) -> String {
    serde_json::to_value(run.verdict)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn mode(run: &VerificationRun) -> String {
    serde_json::to_value(run.mode)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn runs(runs: &[VerificationRun], format: Format) -> String {
    match format {
        Format::Json if runs.len() == 1 => runs[0].to_json(),
        Format::Json => serde_json::to_string(runs).expect("runs serialize"),
        Format::Csv => {
            let rows: Vec<Vec<String>> = runs
                .iter()
                .map(|r| {
                    vec![
                        r.theorem.clone(),
                        r.group.clone(),
                        mode(r),
                        opt(&r.seed),
                        opt(&r.trials),
                        verdict(r),
                        r.stats.instances.to_string(),
                        opt(&r.stats.min_slack),
                        r.counterexamples.len().to_string(),
                    ]
                })
                .collect();
            csv_table(
                &[
                    "theorem",
                    "group",
                    "mode",
                    "seed",
                    "trials",
                    "verdict",
                    "instances",
                    "min_slack",
                    "counterexamples",
                ],
                &rows,
            )
        }
        Format::Human => runs.iter().map(human_run).collect::<Vec<_>>().join("\n\n"),
    }
}

fn human_run(r: &VerificationRun) -> String {
    let mut lines = vec![
        format!("theorem:   {}", r.theorem),
        format!("group:     {}", r.group),
        format!("mode:      {}", mode(r)),
    ];
    if let (Some(seed), Some(trials)) = (r.seed, r.trials) {
        lines.push(format!("seed:      {seed} ({trials} trials)"));
    }
    lines.push(format!("verdict:   {}", verdict(r)));
    lines.push(format!("instances: {}", r.stats.instances));
    if let Some(s) = r.stats.min_slack {
        lines.push(format!("min slack: {s}"));
    }
    if let Some(w) = &r.stats.witness {
        lines.push(format!("witness:   {w}"));
    }
    for (k, v) in &r.details {
        lines.push(format!("{k}: {v}"));
    }
    if let Some(ms) = r.stats.millis {
        lines.push(format!("time:      {ms} ms"));
    }
    for c in r.counterexamples.iter().take(20) {
        lines.push(format!("counterexample: {c}"));
    }
    if r.counterexamples.len() > 20 {
        lines.push(format!("... {} more", r.counterexamples.len() - 20));
    }
    lines.join("\n")
}

pub fn interval(r: &IntervalRecord, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(r).expect("record serializes"),
        Format::Csv => csv_table(
            &[
                "n",
                "m",
                "set_size",
                "sigma_size",
                "stabilizer_order",
                "range_size",
                "printed_value",
            ],
            &[vec![
                r.n.to_string(),
                r.m.to_string(),
                r.set_size.to_string(),
                r.sigma_size.to_string(),
                r.stabilizer_order.to_string(),
                r.range_size.to_string(),
                r.printed_value.to_string(),
            ]],
        ),
        Format::Human => [
            format!("A = {{-{n}..-1, 1..{n}}} in Z{}", r.m, n = r.n),
            format!("|Σ(A)|            = {}", r.sigma_size),
            format!("|stab(Σ(A))|      = {}", r.stabilizer_order),
            format!("n(n+1)+1          = {}", r.range_size),
            format!("printed value n(n-1)+1 = {}", r.printed_value),
        ]
        .join("\n"),
    }
}

pub fn extremal(r: &ExtremalRecord, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Csv => csv_table(
            &[
                "group",
                "k",
                "mode",
                "seed",
                "restarts",
                "best_set",
                "sigma_size",
                "stabilizer_order",
                "evaluated",
            ],
            &[vec![
                r.group.clone(),
                r.k.to_string(),
                r.mode.clone(),
                opt(&r.seed),
                opt(&r.restarts),
                opt(&r.best_set),
                opt(&r.sigma_size),
                opt(&r.stabilizer_order),
                r.evaluated.to_string(),
            ]],
        ),
        Format::Human => match (&r.best_set, r.sigma_size) {
            (Some(set), Some(size)) => [
                format!("group {} k = {} ({})", r.group, r.k, r.mode),
                format!("best A    = {{{set}}}"),
                format!("|Σ(A)|    = {size}"),
                format!(
                    "4(|Σ|-|H|)/|A\\H|² = {}/{}",
                    opt(&r.ratio_numerator),
                    opt(&r.ratio_denominator)
                ),
                format!("evaluated = {}", r.evaluated),
            ]
            .join("\n"),
            _ => format!(
                "group {} k = {}: no k-subset has trivial stabilizer ({} evaluated)",
                r.group, r.k, r.evaluated
            ),
        },
    }
}
