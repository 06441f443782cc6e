//! Slow reference implementations that share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `ℤ_{n1} × … × ℤ_{nk}` with elements as coordinate vectors, last coordinate fastest.
pub struct Naive {
    pub factors: Vec<usize>,
}

impl Naive {
    pub fn new(factors: &[usize]) -> Self {
        Naive {
            factors: factors.to_vec(),
        }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn decode(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = i % f;
            i /= f;
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &f)| acc * f + c)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<usize> = x
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((p, q), f)| (p + q) % f)
            .collect();
        self.encode(&sum)
    }

    /// Every subset sum, by enumerating all `2^|a|` subsets.
    pub fn subset_sums(&self, a: &[usize]) -> BTreeSet<usize> {
        assert!(a.len() <= 20, "oracle is exponential");
        (0u32..1 << a.len())
            .map(|mask| {
                (0..a.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(0, |acc, i| self.add(acc, a[i]))
            })
            .collect()
    }

    pub fn sumset(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.add(x, y))
            .collect()
    }

    pub fn stabilizer(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.order())
            .filter(|&g| s.iter().all(|&x| s.contains(&self.add(x, g))))
            .collect()
    }
}

/// Number of distinct integer subset sums of `{−n, …, −1, 1, …, n}`, by a DP over integers.
pub fn interval_sum_count(n: i64) -> usize {
    let mut reach: BTreeSet<i64> = BTreeSet::from([0]);
    for x in (1..=n).flat_map(|x| [x, -x]) {
        let shifted: Vec<i64> = reach.iter().map(|s| s + x).collect();
        reach.extend(shifted);
    }
    reach.len()
}
