use serde::Serialize;

use crate::abelian::{generated_subgroup, Element, Quotient, Subgroup};
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetKind {
    /// `0 < |Q ∩ S|` and `4·|Q ∩ S| < u + 1`.
    Sparse,
    /// `4·|Q \ S| < u + 1`.
    Dense,
    /// Meets `S` but is neither sparse nor dense.
    Balanced,
    /// Disjoint from `S`.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetClass {
    /// Coset index in the quotient group.
    pub coset: usize,
    pub rep: usize,
    pub class: CosetKind,
    pub intersection: usize,
    pub outside: usize,
    pub deficiency: usize,
    pub sparse: bool,
    pub dense: bool,
    /// Both thresholds held; resolved as dense. Only possible when `2·|H| < u + 1`.
    pub ambiguous: bool,
}

pub fn classify_cosets(s: &GroupSet, h: &Subgroup, u: usize) -> Result<Vec<CosetClass>> {
    let q = Quotient::new(h)?;
    classify_in(s, &q, u)
}

fn classify_in(s: &GroupSet, q: &Quotient, u: usize) -> Result<Vec<CosetClass>> {
    if s.group() != q.group() {
        return Err(Error::Domain(format!(
            "set in {} classified against cosets in {}",
            s.group(),
            q.group()
        )));
    }
    let mut hits = vec![0usize; q.coset_count()];
    for x in s.iter() {
        hits[q.coset_of(x)] += 1;
    }
    let order = q.subgroup().order();
    Ok(hits
        .iter()
        .enumerate()
        .map(|(coset, &inside)| {
            let outside = order - inside;
            let sparse = inside > 0 && 4 * inside < u + 1;
            let dense = inside > 0 && 4 * outside < u + 1;
            let class = match (inside, dense, sparse) {
                (0, _, _) => CosetKind::Empty,
                (_, true, _) => CosetKind::Dense,
                (_, false, true) => CosetKind::Sparse,
                _ => CosetKind::Balanced,
            };
            CosetClass {
                coset,
                rep: q.reps()[coset],
                class,
                intersection: inside,
                outside,
                deficiency: inside.min(outside),
                sparse,
                dense,
                ambiguous: sparse && dense,
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphShape {
    /// A single directed path through every vertex (vacuously so when empty).
    Path,
    /// Every vertex lies on a directed cycle; self-loops when `b ∈ H`.
    Cycle,
    Other,
}

/// The subgraph of `Cay(G/H, b + H)` induced by the dense cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseGraph {
    /// Dense coset indices, ascending.
    pub vertices: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    pub shape: GraphShape,
    /// First and last vertex when the shape is a nonempty path.
    pub ends: Option<(usize, usize)>,
}

pub fn dense_graph(b: &Element, s: &GroupSet, h: &Subgroup, u: usize) -> Result<DenseGraph> {
    if b.group() != s.group() {
        return Err(Error::Domain(format!(
            "generator from {} with a set in {}",
            b.group(),
            s.group()
        )));
    }
    let q = Quotient::new(h)?;
    let classes = classify_in(s, &q, u)?;
    let qg = q.quotient_group();
    let step = q.coset_of(b.index());
    let vertices: Vec<usize> = classes
        .iter()
        .filter(|c| c.dense)
        .map(|c| c.coset)
        .collect();
    let in_w = |c: usize| vertices.binary_search(&c).is_ok();
    let arcs: Vec<(usize, usize)> = vertices
        .iter()
        .map(|&v| (v, qg.add_idx(v, step)))
        .filter(|&(_, w)| in_w(w))
        .collect();

    let (shape, ends) = if vertices.is_empty() {
        (GraphShape::Path, None)
    } else if arcs.len() == vertices.len() {
        (GraphShape::Cycle, None)
    } else {
        // translation is injective, so each vertex has in- and out-degree at most one
        let starts: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| !in_w(qg.sub_idx(v, step)))
            .collect();
        if starts.len() == 1 && arcs.len() + 1 == vertices.len() {
            let mut end = starts[0];
            while in_w(qg.add_idx(end, step)) {
                end = qg.add_idx(end, step);
            }
            (GraphShape::Path, Some((starts[0], end)))
        } else {
            (GraphShape::Other, None)
        }
    };
    Ok(DenseGraph {
        vertices,
        arcs,
        shape,
        ends,
    })
}

/// Outcome of the size-or-growth dichotomy for a partition `{B, C}` of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub u: usize,
    pub s_size: usize,
    pub h_order: usize,
    /// `16·|Σ(B)| ≥ (u + 1)²`.
    pub size_branch: bool,
    /// Best `c ∈ C` and Δ_{Σ(B)}(c); the growth branch holds when `8·Δ ≥ u + 1`.
    pub best_c: usize,
    pub best_delta: usize,
    pub growth_branch: bool,
    pub holds: bool,
}

/// For `|A| = 2u + 2` with `stab(Σ(A)) = {0}`, `u ≥ 16` and `|⟨C⟩| ≥ 5u²/256 + u/4`,
/// either `Σ(B)` is already large or some `c ∈ C` grows it by at least `(u + 1)/8`.
pub fn growth_dichotomy(b: &GroupSet, c: &GroupSet) -> Result<DichotomyReport> {
    b.check_same_group(c)?;
    if b.intersection_len(c)? != 0 {
        return Err(Error::Precondition("B and C must be disjoint".into()));
    }
    let u = b.len();
    if c.len() != u + 2 {
        return Err(Error::Precondition(format!(
            "|C| = {} but |B| + 2 = {}",
            c.len(),
            u + 2
        )));
    }
    if u < 16 {
        return Err(Error::Precondition(format!("u = {u} < 16")));
    }
    let a = b.union(c)?;
    if !setcalc::stabilizer(&setcalc::subset_sums(&a)).is_trivial() {
        return Err(Error::Precondition("stab(Σ(A)) is not trivial".into()));
    }
    let h = generated_subgroup(c);
    if 256 * h.order() < 5 * u * u + 64 * u {
        return Err(Error::Precondition(format!(
            "|<C>| = {} below 5u²/256 + u/4",
            h.order()
        )));
    }
    let s = setcalc::subset_sums(b);
    let (best_c, best_delta) =
        c.iter()
            .map(|x| (x, setcalc::delta_idx(&s, x)))
            .fold((usize::MAX, 0), |acc, (x, d)| {
                if acc.0 == usize::MAX || d > acc.1 {
                    (x, d)
                } else {
                    acc
                }
            });
    let size_branch = 16 * s.len() >= (u + 1) * (u + 1);
    let growth_branch = 8 * best_delta > u;
    Ok(DichotomyReport {
        u,
        s_size: s.len(),
        h_order: h.order(),
        size_branch,
        best_c,
        best_delta,
        growth_branch,
        holds: size_branch || growth_branch,
    })
}
