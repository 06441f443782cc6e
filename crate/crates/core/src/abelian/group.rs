use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order accepted unless a caller asks for a different cap.
pub const DEFAULT_MAX_ORDER: usize = 1 << 20;

/// A finite abelian group `Z_{n1} x ... x Z_{nk}` given by its cyclic factors.
///
/// Elements are addressed by a mixed-radix index in `[0, order)`. The last
/// factor varies fastest, so for a single factor the index is the residue
/// itself. Cloning is cheap; the factor data is shared.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

struct GroupData {
    factors: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

impl Group {
    pub fn new(factors: &[usize]) -> Result<Self> {
        Self::with_max_order(factors, DEFAULT_MAX_ORDER)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn with_max_order(factors: &[usize], max_order: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpec("no factors given".into()));
        }
        if let Some(pos) = factors.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpec(format!("factor {pos} is zero")));
        }
        let mut order: u128 = 1;
        for &n in factors {
            order *= n as u128;
            if order > max_order as u128 {
                return Err(Error::capacity("group order", order, max_order as u128)
                    .with_hint("raise SIGMAFORGE_MAX_ORDER to allow larger groups"));
            }
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(Group(Arc::new(GroupData {
            factors: factors.to_vec(),
            strides,
            order: order as usize,
        })))
    }

    pub fn factors(&self) -> &[usize] {
        &self.0.factors
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.0.factors.len() == 1
    }

    /// Length of the fastest-varying factor; bitmaps are laid out as rows of this length.
    pub(crate) fn row_len(&self) -> usize {
        *self.0.factors.last().unwrap()
    }

    pub fn zero(&self) -> Element {
        Element {
            group: self.clone(),
            index: 0,
        }
    }

    pub fn element_at(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::Domain(format!(
                "index {index} outside group {self} of order {}",
                self.order()
            )));
        }
        Ok(Element {
            group: self.clone(),
            index,
        })
    }

    /// Builds an element from coordinates, reducing each one modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::Domain(format!(
                "expected {} coordinates for {self}, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let mut index = 0;
        for ((&c, &n), &s) in coords.iter().zip(self.factors()).zip(&self.0.strides) {
            index += (c.rem_euclid(n as i64) as usize) * s;
        }
        Ok(Element {
            group: self.clone(),
            index,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |index| Element {
            group: self.clone(),
            index,
        })
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.0.strides)
            .map(|(&c, &s)| c * s)
            .sum()
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        self.factors()
            .iter()
            .zip(&self.0.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element {
            group: self.clone(),
            index: self.add_idx(a.index, b.index),
        })
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(Element {
            group: self.clone(),
            index: self.neg_idx(a.index),
        })
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element {
            group: self.clone(),
            index: self.sub_idx(a.index, b.index),
        })
    }

    fn check(&self, a: &Element) -> Result<()> {
        if &a.group != self {
            return Err(Error::Domain(format!(
                "element of {} used in {self}",
                a.group
            )));
        }
        Ok(())
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let d = &*self.0;
        if d.factors.len() == 1 {
            let s = a + b;
            return if s >= d.order { s - d.order } else { s };
        }
        let mut out = 0;
        for (&n, &s) in d.factors.iter().zip(&d.strides) {
            let x = (a / s) % n + (b / s) % n;
            out += if x >= n { x - n } else { x } * s;
        }
        out
    }

    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        let d = &*self.0;
        if d.factors.len() == 1 {
            return if a == 0 { 0 } else { d.order - a };
        }
        let mut out = 0;
        for (&n, &s) in d.factors.iter().zip(&d.strides) {
            let x = (a / s) % n;
            out += if x == 0 { 0 } else { n - x } * s;
        }
        out
    }

    pub(crate) fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `k * a` by double-and-add.
    pub(crate) fn mul_idx(&self, mut k: usize, a: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_idx(acc, base);
            }
            base = self.add_idx(base, base);
            k >>= 1;
        }
        acc
    }

    /// Element literal: coordinates joined by `,`; a bare residue for one factor.
    pub fn format_index(&self, index: usize) -> String {
        if self.rank() == 1 {
            return index.to_string();
        }
        let coords: Vec<String> = self.decode(index).iter().map(|c| c.to_string()).collect();
        coords.join(",")
    }

    /// Parses `3`, `1,2` or `(1,2)`; coordinates are reduced modulo their factor.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let body = text.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let coords = body
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in element {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != self.rank() {
            return Err(Error::Parse(format!(
                "element {text:?} has {} coordinates, {self} needs {}",
                coords.len(),
                self.rank()
            )));
        }
        self.element(&coords)
    }

    /// Parses `Z6`, `z12xZ2`, ... with an explicit order cap.
    pub fn parse_with_max_order(text: &str, max_order: usize) -> Result<Self> {
        let lower = text.to_ascii_lowercase();
        if lower.is_empty() || lower.chars().any(char::is_whitespace) {
            return Err(Error::InvalidSpec(format!("bad group spec {text:?}")));
        }
        let factors = lower
            .split('x')
            .map(|part| {
                part.strip_prefix('z')
                    .and_then(|n| {
                        if n.bytes().all(|b| b.is_ascii_digit()) {
                            n.parse::<usize>().ok()
                        } else {
                            None
                        }
                    })
                    .ok_or_else(|| Error::InvalidSpec(format!("bad factor {part:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_max_order(&factors, max_order)
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_max_order(s, DEFAULT_MAX_ORDER)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.factors.hash(state);
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors().iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({self})")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: Group,
    index: usize,
}

impl Element {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> Vec<usize> {
        self.group.decode(self.index)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.rank() == 1 {
            write!(f, "{}", self.index)
        } else {
            write!(f, "({})", self.group.format_index(self.index))
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn orders() {
        assert_eq!(Group::new(&[5]).unwrap().order(), 5);
        assert_eq!(Group::new(&[2, 3]).unwrap().order(), 6);
        assert_eq!(Group::new(&[1]).unwrap().order(), 1);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(matches!(Group::new(&[]), Err(Error::InvalidSpec(_))));
        assert!(matches!(Group::new(&[3, 0]), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            Group::with_max_order(&[64, 64], 1000),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn arithmetic() {
        let z5 = Group::cyclic(5).unwrap();
        let s = z5
            .add(&z5.element(&[3]).unwrap(), &z5.element(&[4]).unwrap())
            .unwrap();
        assert_eq!(s.index(), 2);

        let g = Group::new(&[2, 3]).unwrap();
        let a = g.element(&[1, 2]).unwrap();
        assert_eq!(g.add(&a, &a).unwrap().coords(), vec![0, 1]);
        assert_eq!(g.neg(&g.zero()).unwrap(), g.zero());
        assert_eq!(g.add(&g.neg(&a).unwrap(), &a).unwrap(), g.zero());
    }

    #[test]
    fn cross_group_is_domain_error() {
        let z5 = Group::cyclic(5).unwrap();
        let z6 = Group::cyclic(6).unwrap();
        let r = z5.add(&z5.zero(), &z6.zero());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn parses_specs() {
        assert_eq!("Z6".parse::<Group>().unwrap().factors(), &[6]);
        assert_eq!("z12xZ2".parse::<Group>().unwrap().factors(), &[12, 2]);
        assert_eq!("Z12xZ2".parse::<Group>().unwrap().to_string(), "Z12xZ2");
        for bad in ["", "Z", "Z6x", "Z 6", "Y6", "Z0", "Z-3", "Z+3"] {
            assert!(bad.parse::<Group>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn element_literals() {
        let g: Group = "Z2xZ3".parse().unwrap();
        assert_eq!(
            g.parse_element("(1,2)").unwrap(),
            g.parse_element("1,2").unwrap()
        );
        let e = g.parse_element("1,2").unwrap();
        assert_eq!(e.coords(), vec![1, 2]);
        assert_eq!(g.format_index(e.index()), "1,2");
        let z9: Group = "Z9".parse().unwrap();
        assert_eq!(z9.parse_element("-1").unwrap().index(), 8);
        assert!(g.parse_element("1").is_err());
        assert!(g.parse_element("a,b").is_err());
    }

    fn group_and_coords() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        prop::collection::vec(1usize..9, 1..4).prop_flat_map(|factors| {
            let coords: Vec<_> = factors.iter().map(|&n| 0..n).collect();
            (Just(factors), coords)
        })
    }

    proptest! {
        #[test]
        fn encode_decode_roundtrip((factors, coords) in group_and_coords()) {
            let g = Group::new(&factors).unwrap();
            let idx = g.encode(&coords);
            prop_assert!(idx < g.order());
            prop_assert_eq!(g.decode(idx), coords);
        }

        #[test]
        fn index_ops_match_coordinates((factors, a) in group_and_coords(), seed in 0usize..10_000) {
            let g = Group::new(&factors).unwrap();
            let b = seed % g.order();
            let ia = g.encode(&a);
            let sum = g.add_idx(ia, b);
            let expect: Vec<usize> = g.decode(ia).iter().zip(g.decode(b)).zip(&factors)
                .map(|((x, y), n)| (x + y) % n).collect();
            prop_assert_eq!(g.decode(sum), expect);
            prop_assert_eq!(g.add_idx(g.neg_idx(ia), ia), 0);
            prop_assert_eq!(g.mul_idx(3, ia), g.add_idx(ia, g.add_idx(ia, ia)));
        }
    }
}
