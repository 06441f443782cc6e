//! Exact set algebra over bit-packed subsets: sumsets, shifts, subset sums,
//! stabilizers, the overlap/growth counts Γ and Δ, deficiency, and coset profiles.

pub(crate) mod bitmap;
mod sequence;
mod set;

use serde::Serialize;

use crate::abelian::{Element, Quotient, Subgroup};
use crate::error::{Error, Result};

pub use sequence::SequenceMS;
pub use set::GroupSet;

/// `A + B`. Empty if either operand is empty.
pub fn sumset(a: &GroupSet, b: &GroupSet) -> Result<GroupSet> {
    a.check_same_group(b)?;
    let (base, by) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = GroupSet::empty(a.group());
    for x in by.iter() {
        out.or_translate_from(base, x);
        if out.is_full() {
            break;
        }
    }
    Ok(out)
}

/// Sum of several sets; the empty list sums to `{0}`.
pub fn sumset_many(sets: &[GroupSet]) -> Result<GroupSet> {
    let Some(first) = sets.first() else {
        return Err(Error::Precondition("no summands".into()));
    };
    sets[1..]
        .iter()
        .try_fold(first.clone(), |acc, s| sumset(&acc, s))
}

pub fn shift(a: &GroupSet, g: &Element) -> Result<GroupSet> {
    if g.group() != a.group() {
        return Err(Error::Domain(format!(
            "element of {} shifts a set in {}",
            g.group(),
            a.group()
        )));
    }
    Ok(a.translate_idx(g.index()))
}

/// Σ(A): every sum of a subset of `A`, including the empty sum.
pub fn subset_sums(a: &GroupSet) -> GroupSet {
    let mut sigma = GroupSet::singleton(a.group(), 0).expect("0 in range");
    let mut scratch = Vec::new();
    for x in a.iter() {
        if sigma.is_full() {
            break;
        }
        sigma.fold_in(x, &mut scratch);
    }
    sigma
}

/// Σ(a): every sum of a subsequence, each term usable up to its multiplicity.
pub fn subsequence_sums(seq: &SequenceMS) -> GroupSet {
    let mut sigma = GroupSet::singleton(seq.group(), 0).expect("0 in range");
    let mut scratch = Vec::new();
    for (x, m) in seq.entries() {
        for _ in 0..m {
            // once a fold adds nothing, further copies of x add nothing either
            if !sigma.fold_in(x, &mut scratch) {
                break;
            }
        }
    }
    sigma
}

/// `stab(S) = {g : S + g = S}`; the stabilizer of the empty set is the whole group.
pub fn stabilizer(s: &GroupSet) -> Subgroup {
    let group = s.group();
    if s.is_empty() || s.is_full() {
        return Subgroup::whole(group);
    }
    let m = s.min_index().expect("nonempty");
    let mut scratch = Vec::new();
    let mut members = GroupSet::empty(group);
    // any stabilizing g sends min(S) into S
    for x in s.iter() {
        let g = group.sub_idx(x, m);
        if s.shift_is_fixed(g, &mut scratch) {
            members.insert(g);
        }
    }
    Subgroup::from_closed_set(members)
}

fn check_element(s: &GroupSet, x: &Element) -> Result<()> {
    if x.group() != s.group() {
        return Err(Error::Domain(format!(
            "element of {} used with a set in {}",
            x.group(),
            s.group()
        )));
    }
    Ok(())
}

/// Γ_S(x) = |(S + x) ∩ S|.
pub fn gamma(s: &GroupSet, x: &Element) -> Result<usize> {
    check_element(s, x)?;
    Ok(gamma_idx(s, x.index()))
}

/// Δ_S(x) = |(S + x) \ S|.
pub fn delta(s: &GroupSet, x: &Element) -> Result<usize> {
    check_element(s, x)?;
    Ok(delta_idx(s, x.index()))
}

pub(crate) fn gamma_idx(s: &GroupSet, x: usize) -> usize {
    s.overlap_with_shift(x, &mut Vec::new())
}

pub(crate) fn delta_idx(s: &GroupSet, x: usize) -> usize {
    s.len() - gamma_idx(s, x)
}

/// df_S(Q) = min(|Q ∩ S|, |Q \ S|).
pub fn deficiency(s: &GroupSet, q: &GroupSet) -> Result<usize> {
    let inside = q.intersection_len(s)?;
    Ok(inside.min(q.len() - inside))
}

/// ρ^j_H(a) for j = 1, 2, ...: how many nontrivial `H`-cosets hold at least `j` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetProfile {
    pub subgroup_order: usize,
    /// `rho[j]` is ρ^{j+1}; trailing zeros trimmed.
    pub rho: Vec<usize>,
}

impl CosetProfile {
    /// ρ^j for any `j >= 1`.
    pub fn rho(&self, j: usize) -> usize {
        assert!(j >= 1, "ρ^j is indexed from 1");
        self.rho.get(j - 1).copied().unwrap_or(0)
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.rho.iter().map(|&r| (r as u64) * (r as u64)).sum()
    }

    /// Σ_j ρ^j, which equals the number of terms outside `H`.
    pub fn total(&self) -> usize {
        self.rho.iter().sum()
    }
}

pub fn coset_profile(seq: &SequenceMS, h: &Subgroup) -> Result<CosetProfile> {
    if seq.group() != h.group() {
        return Err(Error::Domain(format!(
            "sequence in {} profiled against a subgroup of {}",
            seq.group(),
            h.group()
        )));
    }
    let q = Quotient::new(h)?;
    Ok(coset_profile_in(seq, &q))
}

pub(crate) fn coset_profile_in(seq: &SequenceMS, q: &Quotient) -> CosetProfile {
    let mut counts = vec![0usize; q.coset_count()];
    for (x, m) in seq.entries() {
        counts[q.coset_of(x)] += m;
    }
    counts[0] = 0;
    let top = counts.iter().copied().max().unwrap_or(0);
    let mut rho = vec![0usize; top];
    for &c in &counts {
        for r in rho.iter_mut().take(c) {
            *r += 1;
        }
    }
    CosetProfile {
        subgroup_order: q.subgroup().order(),
        rho,
    }
}

/// Image of `S` in `G/H`, returned alongside the quotient it lives in.
pub fn fold_to_quotient(s: &GroupSet, h: &Subgroup) -> Result<(Quotient, GroupSet)> {
    let q = Quotient::new(h)?;
    let folded = q.fold(s)?;
    Ok((q, folded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Group;

    fn z(n: usize) -> Group {
        Group::cyclic(n).unwrap()
    }

    fn set(g: &Group, xs: &[usize]) -> GroupSet {
        GroupSet::from_indices(g, xs.iter().copied()).unwrap()
    }

    /// Brute-force subset sums: iterate every subset mask.
    fn subset_sums_oracle(g: &Group, xs: &[usize]) -> Vec<usize> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << xs.len()) {
            let mut s = 0;
            for (i, &x) in xs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s = g.add_idx(s, x);
                }
            }
            out.insert(s);
        }
        out.into_iter().collect()
    }

    #[test]
    fn sumset_examples() {
        let g = z(6);
        let a = set(&g, &[1, 2]);
        assert_eq!(sumset(&set(&g, &[0]), &a).unwrap(), a);
        assert_eq!(
            sumset(&a, &set(&g, &[0, 3])).unwrap().to_vec(),
            vec![1, 2, 4, 5]
        );
        assert!(sumset(&a, &GroupSet::empty(&g)).unwrap().is_empty());
        let z7 = z(7);
        assert!(sumset(&set(&z7, &[0, 1, 2, 3]), &set(&z7, &[2, 4, 5, 6]))
            .unwrap()
            .is_full());
    }

    #[test]
    fn shift_examples() {
        let g = z(5);
        let a = set(&g, &[0, 1]);
        assert_eq!(shift(&a, &g.zero()).unwrap(), a);
        let four = g.element_at(4).unwrap();
        let shifted = shift(&a, &four).unwrap();
        assert_eq!(shifted.to_vec(), vec![0, 4]);
        assert_eq!(shift(&shifted, &g.neg(&four).unwrap()).unwrap(), a);
        assert!(shift(&a, &z(6).zero()).is_err());
    }

    #[test]
    fn subset_sum_examples() {
        assert_eq!(subset_sums(&GroupSet::empty(&z(5))).to_vec(), vec![0]);
        let g5 = z(5);
        assert_eq!(
            subset_sums(&set(&g5, &[1, 2])).to_vec(),
            subset_sums_oracle(&g5, &[1, 2])
        );
        assert_eq!(subset_sums(&set(&g5, &[1, 2])).to_vec(), vec![0, 1, 2, 3]);
        let g8 = z(8);
        assert_eq!(
            subset_sums(&set(&g8, &[2, 4])).to_vec(),
            subset_sums_oracle(&g8, &[2, 4])
        );
        assert_eq!(subset_sums(&set(&g8, &[2, 4])).to_vec(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn subsequence_sum_examples() {
        let g = z(9);
        assert_eq!(subsequence_sums(&SequenceMS::empty(&g)).to_vec(), vec![0]);
        let s = SequenceMS::from_terms(&g, [3, 3]).unwrap();
        assert_eq!(subsequence_sums(&s).to_vec(), vec![0, 3, 6]);
        let distinct = SequenceMS::from_terms(&g, [1, 4, 7]).unwrap();
        assert_eq!(
            subsequence_sums(&distinct),
            subset_sums(&distinct.support())
        );
    }

    #[test]
    fn stabilizer_examples() {
        let g = z(6);
        assert!(stabilizer(&GroupSet::full(&g)).is_whole());
        assert!(stabilizer(&GroupSet::empty(&g)).is_whole());
        assert_eq!(stabilizer(&set(&g, &[0, 3])).members(), &[0, 3]);
        assert!(stabilizer(&set(&z(5), &[0, 1])).is_trivial());
    }

    #[test]
    fn gamma_delta_examples() {
        let g = z(5);
        let s = set(&g, &[0, 1]);
        assert_eq!(delta(&s, &g.zero()).unwrap(), 0);
        assert_eq!(delta(&s, &g.element_at(1).unwrap()).unwrap(), 1);
        assert_eq!(gamma(&s, &g.element_at(1).unwrap()).unwrap(), 1);
        assert!(gamma(&s, &z(6).zero()).is_err());
    }

    #[test]
    fn deficiency_examples() {
        let g = z(6);
        let s = set(&g, &[0, 1, 2]);
        assert_eq!(deficiency(&s, &set(&g, &[0, 1])).unwrap(), 0);
        assert_eq!(deficiency(&s, &set(&g, &[4, 5])).unwrap(), 0);
        assert_eq!(deficiency(&s, &set(&g, &[1, 2, 3, 4])).unwrap(), 2);
    }

    #[test]
    fn coset_profile_examples() {
        let g = z(6);
        let h = Subgroup::try_from_set(set(&g, &[0, 3])).unwrap();
        let inside = SequenceMS::from_terms(&g, [0, 3, 3]).unwrap();
        assert!(coset_profile(&inside, &h).unwrap().rho.is_empty());

        let a = SequenceMS::from_terms(&g, [1, 1, 2]).unwrap();
        let p = coset_profile(&a, &h).unwrap();
        assert_eq!((p.rho(1), p.rho(2), p.rho(3)), (2, 1, 0));

        let distinct = SequenceMS::from_set(&set(&g, &[0, 1, 2, 5]));
        let p = coset_profile(&distinct, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(p.rho, vec![3]);
    }

    #[test]
    fn fold_examples() {
        let g = z(6);
        let h = Subgroup::try_from_set(set(&g, &[0, 3])).unwrap();
        let (_, folded) = fold_to_quotient(h.as_set(), &h).unwrap();
        assert_eq!(folded.to_vec(), vec![0]);
        let (_, all) = fold_to_quotient(&GroupSet::full(&g), &h).unwrap();
        assert!(all.is_full());
        let (q, one) = fold_to_quotient(&set(&g, &[1, 4]), &h).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.to_vec(), vec![q.coset_of(1)]);
        assert_ne!(q.coset_of(1), 0);
    }
}
