use crate::abelian::smith::diagonalize;
use crate::abelian::{Group, Subgroup};
use crate::error::{Error, Result};
use crate::setcalc::GroupSet;

/// The quotient `G/H`, presented as a group of its own.
///
/// Coset indices are element indices of [`Quotient::quotient_group`], so coset 0
/// is `H` itself and the coset map is a homomorphism.
#[derive(Clone, Debug)]
pub struct Quotient {
    subgroup: Subgroup,
    quotient_group: Group,
    coset_of: Vec<usize>,
    reps: Vec<usize>,
}

impl Quotient {
    pub fn new(subgroup: &Subgroup) -> Result<Self> {
        let group = subgroup.group();
        let k = group.rank();
        let mut relations: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            group.factors()[i] as i128
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        for g in subgroup.generators() {
            relations.push(group.decode(g).into_iter().map(|c| c as i128).collect());
        }
        let diag = diagonalize(relations, k);

        let kept: Vec<usize> = (0..k).filter(|&j| diag.diag[j] > 1).collect();
        let factors: Vec<usize> = if kept.is_empty() {
            vec![1]
        } else {
            kept.iter().map(|&j| diag.diag[j] as usize).collect()
        };
        let quotient_group = Group::with_max_order(&factors, group.order())?;
        if quotient_group.order() * subgroup.order() != group.order() {
            return Err(Error::InvalidSubgroup(format!(
                "coset count {} does not match |G|/|H| = {}",
                quotient_group.order(),
                group.order() / subgroup.order()
            )));
        }

        let mut coset_of = Vec::with_capacity(group.order());
        let mut reps = vec![usize::MAX; quotient_group.order()];
        let mut image = vec![0usize; kept.len()];
        for g in 0..group.order() {
            let coords = group.decode(g);
            for (slot, &j) in image.iter_mut().zip(&kept) {
                let y: i128 = coords
                    .iter()
                    .zip(&diag.q)
                    .map(|(&c, row)| c as i128 * row[j])
                    .sum();
                *slot = y.rem_euclid(diag.diag[j]) as usize;
            }
            let c = if kept.is_empty() {
                0
            } else {
                quotient_group.encode(&image)
            };
            if reps[c] == usize::MAX {
                reps[c] = g;
            }
            coset_of.push(c);
        }
        Ok(Quotient {
            subgroup: subgroup.clone(),
            quotient_group,
            coset_of,
            reps,
        })
    }

    pub fn group(&self) -> &Group {
        self.subgroup.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn quotient_group(&self) -> &Group {
        &self.quotient_group
    }

    pub fn coset_count(&self) -> usize {
        self.quotient_group.order()
    }

    pub fn coset_of(&self, index: usize) -> usize {
        self.coset_of[index]
    }

    /// Smallest member of each coset, indexed by coset.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Members of coset `c` as a set in the ambient group.
    pub fn coset(&self, c: usize) -> GroupSet {
        let group = self.group();
        let rep = self.reps[c];
        GroupSet::from_indices(
            group,
            self.subgroup
                .members()
                .iter()
                .map(|&h| group.add_idx(rep, h)),
        )
        .expect("coset members stay in range")
    }

    /// Image of `set` under the quotient map.
    pub fn fold(&self, set: &GroupSet) -> Result<GroupSet> {
        if set.group() != self.group() {
            return Err(Error::Domain(format!(
                "set in {} folded by a quotient of {}",
                set.group(),
                self.group()
            )));
        }
        GroupSet::from_indices(&self.quotient_group, set.iter().map(|i| self.coset_of[i]))
    }
}

/// `G/H`, with an explicit check that `H` lives in `group`.
pub fn quotient(group: &Group, subgroup: &Subgroup) -> Result<Quotient> {
    if subgroup.group() != group {
        return Err(Error::Domain(format!(
            "subgroup of {} used with {group}",
            subgroup.group()
        )));
    }
    Quotient::new(subgroup)
}
