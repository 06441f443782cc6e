//! Integer-exact evaluation of the lower bounds on sumsets and subset sums.
//!
//! Fractional constants are cleared: a bound `|Σ| ≥ |H| + x/64` is reported as
//! `lhs = 64·(|Σ| − |H|)` against `rhs = x`, so every comparison is between
//! integers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{Quotient, Subgroup};
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet, SequenceMS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundName {
    /// `|ΣA_i| ≥ |H|(1−m) + Σ|A_i + H|` for `H = stab(ΣA_i)`.
    Kneser,
    /// `|Σ(A)| ≥ |H| + |H|·|A \ H|`.
    Corollary,
    /// `64·(|Σ(A)| − |H|) ≥ |A \ H|²`.
    Main,
    /// `64·(|Σ(a)| − |H|) ≥ |H|·Σ_j (ρ^j_H)²`.
    Sequence,
    /// `|H|·Σ_j (ρ^j_H)² ≥ |A \ H|²` for a set read as a sequence.
    CauchySchwarz,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundName::Kneser => "kneser",
            BoundName::Corollary => "corollary",
            BoundName::Main => "main",
            BoundName::Sequence => "sequence",
            BoundName::CauchySchwarz => "cauchy-schwarz",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub context: BTreeMap<String, i64>,
}

pub const CSV_HEADER: &str = "name,lhs,rhs,holds,context";

impl BoundReport {
    fn new(name: BoundName, lhs: i64, rhs: i64, context: &[(&str, i64)]) -> Self {
        let mut ctx: BTreeMap<String, i64> =
            context.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        ctx.insert("slack".into(), lhs - rhs);
        BoundReport {
            name,
            lhs,
            rhs,
            holds: lhs >= rhs,
            context: ctx,
        }
    }

    pub fn slack(&self) -> i64 {
        self.lhs - self.rhs
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One CSV record (no header); context is packed as `key=value` pairs joined by `;`.
    pub fn to_csv_row(&self) -> String {
        let ctx: Vec<String> = self
            .context
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(vec![]);
        w.write_record([
            self.name.to_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
            self.holds.to_string(),
            ctx.join(";"),
        ])
        .expect("in-memory csv write");
        let bytes = w.into_inner().expect("in-memory csv flush");
        String::from_utf8(bytes)
            .expect("ascii csv")
            .trim_end()
            .to_string()
    }
}

fn n(x: usize) -> i64 {
    x as i64
}

/// Kneser's inequality for `A_1 + ... + A_m`.
pub fn kneser_bound(sets: &[GroupSet]) -> Result<BoundReport> {
    if sets.is_empty() {
        return Err(Error::Precondition(
            "at least one summand is required".into(),
        ));
    }
    if let Some(i) = sets.iter().position(GroupSet::is_empty) {
        return Err(Error::Precondition(format!("summand {i} is empty")));
    }
    let total = setcalc::sumset_many(sets)?;
    Ok(kneser_report(sets, &total))
}

pub(crate) fn kneser_report(sets: &[GroupSet], total: &GroupSet) -> BoundReport {
    let h = setcalc::stabilizer(total);
    let m = n(sets.len());
    let saturated: i64 = sets
        .iter()
        .map(|a| n(h.saturate(a).expect("same group").len()))
        .sum();
    let rhs = n(h.order()) * (1 - m) + saturated;
    BoundReport::new(
        BoundName::Kneser,
        n(total.len()),
        rhs,
        &[
            ("sumset", n(total.len())),
            ("stab", n(h.order())),
            ("m", m),
            ("saturated_sum", saturated),
        ],
    )
}

fn outside(a: &GroupSet, h: &Subgroup) -> usize {
    a.len() - a.intersection_len(h.as_set()).expect("same group")
}

pub fn corollary_bound(a: &GroupSet) -> BoundReport {
    let sigma = setcalc::subset_sums(a);
    let h = setcalc::stabilizer(&sigma);
    corollary_from_sigma(a, &sigma, &h)
}

pub(crate) fn corollary_from_sigma(a: &GroupSet, sigma: &GroupSet, h: &Subgroup) -> BoundReport {
    let out = n(outside(a, h));
    let hs = n(h.order());
    BoundReport::new(
        BoundName::Corollary,
        n(sigma.len()),
        hs + hs * out,
        &[("sigma", n(sigma.len())), ("stab", hs), ("a_minus_h", out)],
    )
}

pub fn main_bound_check(a: &GroupSet) -> BoundReport {
    let sigma = setcalc::subset_sums(a);
    let h = setcalc::stabilizer(&sigma);
    main_from_sigma(a, &sigma, &h)
}

pub(crate) fn main_from_sigma(a: &GroupSet, sigma: &GroupSet, h: &Subgroup) -> BoundReport {
    let out = n(outside(a, h));
    let hs = n(h.order());
    BoundReport::new(
        BoundName::Main,
        64 * (n(sigma.len()) - hs),
        out * out,
        &[("sigma", n(sigma.len())), ("stab", hs), ("a_minus_h", out)],
    )
}

pub fn sequence_bound_check(seq: &SequenceMS) -> BoundReport {
    let sigma = setcalc::subsequence_sums(seq);
    let h = setcalc::stabilizer(&sigma);
    let q = Quotient::new(&h).expect("stabilizer is a subgroup");
    let profile = setcalc::coset_profile_in(seq, &q);
    // ρ^j vanishes past j = n, so the profile is already the truncated sum
    debug_assert!(profile.rho.len() <= seq.len());
    let hs = n(h.order());
    let sq = profile.sum_of_squares() as i64;
    BoundReport::new(
        BoundName::Sequence,
        64 * (n(sigma.len()) - hs),
        hs * sq,
        &[
            ("sigma", n(sigma.len())),
            ("stab", hs),
            ("n", n(seq.len())),
            ("rho_sq_sum", sq),
            ("rho_levels", n(profile.rho.len())),
        ],
    )
}

/// `N(u) = Σ_{i≥1} ⌊u/2^i⌋²`; the recursive bound is `|Σ(A)| ≥ N(u)/16`.
pub fn recursive_bound_numerator(u: u64) -> u64 {
    let mut total = 0u64;
    let mut x = u >> 1;
    while x > 0 {
        total += x * x;
        x >>= 1;
    }
    total
}

/// The reduction from the sequence bound to the set bound, checked on one instance.
pub fn cauchy_schwarz_check(a: &GroupSet, h: &Subgroup) -> Result<BoundReport> {
    if a.group() != h.group() {
        return Err(Error::Domain(format!(
            "set in {} checked against a subgroup of {}",
            a.group(),
            h.group()
        )));
    }
    let q = Quotient::new(h)?;
    let profile = setcalc::coset_profile_in(&SequenceMS::from_set(a), &q);
    let out = n(outside(a, h));
    let hs = n(h.order());
    let sq = profile.sum_of_squares() as i64;
    Ok(BoundReport::new(
        BoundName::CauchySchwarz,
        hs * sq,
        out * out,
        &[("stab", hs), ("a_minus_h", out), ("rho_sq_sum", sq)],
    ))
}
