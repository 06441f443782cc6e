use std::collections::VecDeque;
use std::fmt;

use crate::abelian::Group;
use crate::error::{Error, Result};
use crate::setcalc::{self, GroupSet};

/// A subgroup, kept both as its sorted member list and as a membership bitmap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: GroupSet,
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Self {
        Self::from_closed_set(GroupSet::singleton(group, 0).expect("0 is always in range"))
    }

    pub fn whole(group: &Group) -> Self {
        Self::from_closed_set(GroupSet::full(group))
    }

    /// Checks that `set` is a subgroup: it holds 0 and is fixed by every one of its own shifts.
    pub fn try_from_set(set: GroupSet) -> Result<Self> {
        if !set.contains(0) {
            return Err(Error::InvalidSubgroup(format!("{set} does not contain 0")));
        }
        // 0 ∈ S gives stab(S) ⊆ S; closure is exactly S ⊆ stab(S)
        let mut scratch = Vec::new();
        if let Some(bad) = set.iter().find(|&s| !set.shift_is_fixed(s, &mut scratch)) {
            return Err(Error::InvalidSubgroup(format!(
                "{set} is not closed under adding {}",
                set.group().format_index(bad)
            )));
        }
        Ok(Self::from_closed_set(set))
    }

    pub(crate) fn from_closed_set(mask: GroupSet) -> Self {
        Subgroup {
            members: mask.to_vec(),
            mask,
        }
    }

    pub fn group(&self) -> &Group {
        self.mask.group()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group().order() / self.order()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask.contains(index)
    }

    pub fn as_set(&self) -> &GroupSet {
        &self.mask
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group().order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask).unwrap_or(false)
    }

    /// `S + H` for a set in the same group.
    pub fn saturate(&self, set: &GroupSet) -> Result<GroupSet> {
        setcalc::sumset(set, &self.mask)
    }

    /// A small generating set, chosen greedily in ascending index order.
    pub fn generators(&self) -> Vec<usize> {
        let group = self.group();
        let mut gens = Vec::new();
        let mut span = GroupSet::singleton(group, 0).expect("0 in range");
        for &h in &self.members {
            if !span.contains(h) {
                gens.push(h);
                span = closure(group, &gens);
                if span.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }
}

/// The smallest subgroup containing every element of `set`.
pub fn generated_subgroup(set: &GroupSet) -> Subgroup {
    let gens = set.to_vec();
    Subgroup::from_closed_set(closure(set.group(), &gens))
}

fn closure(group: &Group, gens: &[usize]) -> GroupSet {
    let mut seen = GroupSet::singleton(group, 0).expect("0 in range");
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.add_idx(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mask.fmt(f)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{} of {}", self.mask, self.group())
    }
}
