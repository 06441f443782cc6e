use std::fmt;

use crate::abelian::{Element, Group};
use crate::error::{Error, Result};

use super::bitmap::{self, words_for, WORD};

/// A subset of a finite abelian group, stored as a packed bitmap over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSet {
    group: Group,
    bits: Vec<u64>,
    card: usize,
}

impl GroupSet {
    pub fn empty(group: &Group) -> Self {
        GroupSet {
            group: group.clone(),
            bits: vec![0; words_for(group.order())],
            card: 0,
        }
    }

    pub fn full(group: &Group) -> Self {
        let mut bits = vec![u64::MAX; words_for(group.order())];
        if let Some(last) = bits.last_mut() {
            *last &= bitmap::tail_mask(group.order());
        }
        GroupSet {
            group: group.clone(),
            bits,
            card: group.order(),
        }
    }

    pub fn singleton(group: &Group, index: usize) -> Result<Self> {
        Self::from_indices(group, [index])
    }

    pub fn from_indices(group: &Group, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(group);
        for i in indices {
            if i >= group.order() {
                return Err(Error::Domain(format!(
                    "index {i} outside group {group} of order {}",
                    group.order()
                )));
            }
            set.insert(i);
        }
        Ok(set)
    }

    pub fn from_elements<'a>(
        group: &Group,
        elements: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Self> {
        let mut set = Self::empty(group);
        for e in elements {
            if e.group() != group {
                return Err(Error::Domain(format!(
                    "element of {} used in {group}",
                    e.group()
                )));
            }
            set.insert(e.index());
        }
        Ok(set)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn is_full(&self) -> bool {
        self.card == self.group.order()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.group.order() && self.bits[index / WORD] >> (index % WORD) & 1 == 1
    }

    pub fn contains_element(&self, e: &Element) -> bool {
        e.group() == &self.group && self.contains(e.index())
    }

    /// Returns true if the element was newly added.
    pub fn insert(&mut self, index: usize) -> bool {
        let (w, b) = (index / WORD, index % WORD);
        let fresh = self.bits[w] >> b & 1 == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.card += 1;
        }
        fresh
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let (w, b) = (index / WORD, index % WORD);
        let present = self.bits[w] >> b & 1 == 1;
        if present {
            self.bits[w] &= !(1 << b);
            self.card -= 1;
        }
        present
    }

    /// Ascending element indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.iter()
            .map(|i| self.group.element_at(i).expect("set bits stay in range"))
    }

    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }

    pub(crate) fn check_same_group(&self, other: &GroupSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Domain(format!(
                "sets from {} and {} combined",
                self.group, other.group
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &GroupSet, f: impl Fn(u64, u64) -> u64) -> Result<GroupSet> {
        self.check_same_group(other)?;
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let card = bitmap::popcount(&bits);
        Ok(GroupSet {
            group: self.group.clone(),
            bits,
            card,
        })
    }

    pub fn union(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersection_len(&self, other: &GroupSet) -> Result<usize> {
        self.check_same_group(other)?;
        Ok(bitmap::intersection_count(&self.bits, &other.bits))
    }

    pub fn is_subset(&self, other: &GroupSet) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .all(|(&a, &b)| a & !b == 0))
    }

    pub fn complement(&self) -> GroupSet {
        let mut out = GroupSet::full(&self.group);
        for (o, &b) in out.bits.iter_mut().zip(&self.bits) {
            *o &= !b;
        }
        out.card = self.group.order() - self.card;
        out
    }

    /// `self + g` for a raw index; callers guarantee `g < order`.
    pub(crate) fn translate_idx(&self, g: usize) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        bitmap::or_translate(&mut out.bits, &self.bits, &self.group, g);
        out.card = self.card;
        out
    }

    /// `self |= src + g`.
    pub(crate) fn or_translate_from(&mut self, src: &GroupSet, g: usize) {
        bitmap::or_translate(&mut self.bits, &src.bits, &self.group, g);
        self.card = bitmap::popcount(&self.bits);
    }

    /// `self = prev ∪ (prev + x)`, reusing this set's buffer.
    pub(crate) fn assign_fold(&mut self, prev: &GroupSet, x: usize) {
        self.bits.copy_from_slice(&prev.bits);
        self.or_translate_from(prev, x);
    }

    /// In-place `self ∪= self + x`; returns whether anything was added.
    pub(crate) fn fold_in(&mut self, x: usize, scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.resize(self.bits.len(), 0);
        bitmap::or_translate(scratch, &self.bits, &self.group, x);
        for (s, t) in self.bits.iter_mut().zip(scratch.iter()) {
            *s |= *t;
        }
        let before = self.card;
        self.card = bitmap::popcount(&self.bits);
        self.card != before
    }

    /// `|(self + g) ∩ self|`.
    pub(crate) fn overlap_with_shift(&self, g: usize, scratch: &mut Vec<u64>) -> usize {
        scratch.clear();
        scratch.resize(self.bits.len(), 0);
        bitmap::or_translate(scratch, &self.bits, &self.group, g);
        bitmap::intersection_count(scratch, &self.bits)
    }

    pub(crate) fn shift_is_fixed(&self, g: usize, scratch: &mut Vec<u64>) -> bool {
        scratch.clear();
        scratch.resize(self.bits.len(), 0);
        bitmap::or_translate(scratch, &self.bits, &self.group, g);
        scratch.as_slice() == self.bits.as_slice()
    }

    /// Parses the `;`-separated element literal form, e.g. `1;3;5` or `1,0;0,2`.
    pub fn parse(group: &Group, text: &str) -> Result<GroupSet> {
        let mut set = GroupSet::empty(group);
        for part in text.split(';') {
            if part.trim().is_empty() {
                continue;
            }
            set.insert(group.parse_element(part)?.index());
        }
        Ok(set)
    }

    /// Canonical text form: sorted element literals joined by `;`.
    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self.iter().map(|i| self.group.format_index(i)).collect();
        parts.join(";")
    }

    pub fn literals(&self) -> Vec<String> {
        self.iter().map(|i| self.group.format_index(i)).collect()
    }
}

impl fmt::Display for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|i| {
                if self.group.rank() == 1 {
                    i.to_string()
                } else {
                    format!("({})", self.group.format_index(i))
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.group)
    }
}
