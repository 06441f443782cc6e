use serde::Serialize;

use crate::abelian::{generated_subgroup, Element, Subgroup};
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

/// An element of `C` maximizing Δ_S, with the quantities its guarantee is stated in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: Element,
    pub delta: usize,
    /// df_S(H) for the ambient subgroup `H`.
    pub deficiency: usize,
    pub c_size: usize,
    /// Σ_{c ∈ C} Δ_S(c).
    pub delta_sum: usize,
    /// The lemma's hypothesis held, so the bound on `delta` is guaranteed.
    pub guaranteed: bool,
    pub violated: Option<String>,
}

fn check_inputs(c: &GroupSet, s: &GroupSet, ambient: &Subgroup) -> Result<()> {
    c.check_same_group(s)?;
    if c.group() != ambient.group() {
        return Err(Error::Domain(format!(
            "sets in {} with an ambient subgroup of {}",
            c.group(),
            ambient.group()
        )));
    }
    if c.is_empty() {
        return Err(Error::Precondition("C must be nonempty".into()));
    }
    if !c.is_subset(ambient.as_set())? || !s.is_subset(ambient.as_set())? {
        return Err(Error::Domain(
            "C and S must lie inside the ambient subgroup".into(),
        ));
    }
    Ok(())
}

fn ambient_deficiency(s: &GroupSet, ambient: &Subgroup) -> usize {
    s.len().min(ambient.order() - s.len())
}

/// Exact argmax of Δ_S over `C`; ties go to the lowest index.
fn scan(c: &GroupSet, s: &GroupSet) -> (usize, usize, usize) {
    let mut best = (usize::MAX, 0usize);
    let mut sum = 0;
    for x in c.iter() {
        let d = setcalc::delta_idx(s, x);
        sum += d;
        if best.0 == usize::MAX || d > best.1 {
            best = (x, d);
        }
    }
    (best.0, best.1, sum)
}

/// The "S is small" case: if `2·df_S(H) ≤ |C|`, the returned `c` has `2·Δ_S(c) ≥ df_S(H)`.
pub fn witness_easy(c: &GroupSet, s: &GroupSet, ambient: &Subgroup) -> Result<Witness> {
    check_inputs(c, s, ambient)?;
    let df = ambient_deficiency(s, ambient);
    let (x, delta, delta_sum) = scan(c, s);
    let guaranteed = 2 * df <= c.len();
    Ok(Witness {
        element: c.group().element_at(x)?,
        delta,
        deficiency: df,
        c_size: c.len(),
        delta_sum,
        guaranteed,
        violated: (!guaranteed).then(|| format!("2·df_S(H) = {} > |C| = {}", 2 * df, c.len())),
    })
}

/// The "S is big" case: if `2·df_S(H) ≥ |C|` and `C` generates `H`, the returned `c` has `8·Δ_S(c) ≥ |C|`.
pub fn witness_hard(c: &GroupSet, s: &GroupSet, ambient: &Subgroup) -> Result<Witness> {
    check_inputs(c, s, ambient)?;
    let generated = generated_subgroup(c);
    if &generated != ambient {
        return Err(Error::Generation(format!(
            "<C> has order {} but the ambient subgroup has order {}",
            generated.order(),
            ambient.order()
        )));
    }
    let df = ambient_deficiency(s, ambient);
    let (x, delta, delta_sum) = scan(c, s);
    let guaranteed = 2 * df >= c.len();
    Ok(Witness {
        element: c.group().element_at(x)?,
        delta,
        deficiency: df,
        c_size: c.len(),
        delta_sum,
        guaranteed,
        violated: (!guaranteed).then(|| format!("2·df_S(H) = {} < |C| = {}", 2 * df, c.len())),
    })
}

/// The r-fold sumset `D = r·(C ∪ {0})` behind the "S is big" case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardDiagnostic {
    /// `r = ⌊4|S|/|C|⌋` after `S` is replaced by its complement in `H` when larger than half.
    pub r: usize,
    pub s_size: usize,
    pub c_size: usize,
    pub d_size: usize,
    pub complemented: bool,
    /// `|D| ≥ 2|S|`.
    pub holds: bool,
}

pub fn hard_diagnostic(c: &GroupSet, s: &GroupSet, ambient: &Subgroup) -> Result<HardDiagnostic> {
    check_inputs(c, s, ambient)?;
    let complemented = 2 * s.len() > ambient.order();
    let s = if complemented {
        ambient.as_set().difference(s)?
    } else {
        s.clone()
    };
    let r = 4 * s.len() / c.len();
    let mut c_star = c.clone();
    c_star.insert(0);
    let mut d = GroupSet::singleton(c.group(), 0)?;
    for _ in 0..r {
        let next = setcalc::sumset(&d, &c_star)?;
        if next == d {
            break;
        }
        d = next;
    }
    Ok(HardDiagnostic {
        r,
        s_size: s.len(),
        c_size: c.len(),
        d_size: d.len(),
        complemented,
        holds: d.len() >= 2 * s.len(),
    })
}
