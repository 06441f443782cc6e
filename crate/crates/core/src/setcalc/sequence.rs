use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::Group;
use crate::error::{Error, Result};

use super::GroupSet;

/// A finite sequence of group elements, up to reordering: element index to multiplicity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SequenceMS {
    group: Group,
    mult: BTreeMap<usize, usize>,
    len: usize,
}

impl SequenceMS {
    pub fn empty(group: &Group) -> Self {
        SequenceMS {
            group: group.clone(),
            mult: BTreeMap::new(),
            len: 0,
        }
    }

    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut seq = Self::empty(group);
        for t in terms {
            seq.push(t, 1)?;
        }
        Ok(seq)
    }

    /// The all-distinct sequence listing the members of `set` once each.
    pub fn from_set(set: &GroupSet) -> Self {
        SequenceMS {
            group: set.group().clone(),
            mult: set.iter().map(|i| (i, 1)).collect(),
            len: set.len(),
        }
    }

    pub fn push(&mut self, index: usize, times: usize) -> Result<()> {
        if index >= self.group.order() {
            return Err(Error::Domain(format!(
                "index {index} outside group {} of order {}",
                self.group,
                self.group.order()
            )));
        }
        if times > 0 {
            *self.mult.entry(index).or_insert(0) += times;
            self.len += times;
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Number of terms, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn multiplicity(&self, index: usize) -> usize {
        self.mult.get(&index).copied().unwrap_or(0)
    }

    /// `(element index, multiplicity)` in ascending index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.iter().map(|(&i, &m)| (i, m))
    }

    /// Every term, repeated by multiplicity, ascending.
    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries().flat_map(|(i, m)| std::iter::repeat_n(i, m))
    }

    pub fn support(&self) -> GroupSet {
        GroupSet::from_indices(&self.group, self.mult.keys().copied()).expect("terms in range")
    }

    pub fn is_all_distinct(&self) -> bool {
        self.mult.values().all(|&m| m == 1)
    }

    /// Parses `elem:mult;elem:mult`, where `:mult` defaults to 1.
    pub fn parse(group: &Group, text: &str) -> Result<Self> {
        let mut seq = Self::empty(group);
        for part in text.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            let (elem, times) = match part.split_once(':') {
                Some((e, m)) => {
                    let m = m
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?;
                    (e, m)
                }
                None => (part, 1),
            };
            let e = group.parse_element(elem)?;
            seq.push(e.index(), times)?;
        }
        Ok(seq)
    }

    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self
            .entries()
            .map(|(i, m)| format!("{}:{m}", self.group.format_index(i)))
            .collect();
        parts.join(";")
    }
}

impl fmt::Debug for SequenceMS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SequenceMS[{}] in {}", self.to_literal(), self.group)
    }
}
