//! Word-level kernels over packed membership bitmaps.
//!
//! A group of order `N` is stored as `N` bits laid out in rows whose length is
//! the last cyclic factor. Translating by `g` rotates every row by the last
//! coordinate of `g` and permutes the rows by the remaining coordinates.

use crate::abelian::Group;

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Reads `len <= 64` bits starting at bit `pos`.
#[inline]
fn read_bits(src: &[u64], pos: usize, len: usize) -> u64 {
    debug_assert!(len > 0 && len <= WORD);
    let (w, b) = (pos / WORD, pos % WORD);
    let mut v = src[w] >> b;
    if b + len > WORD {
        v |= src[w + 1] << (WORD - b);
    }
    if len < WORD {
        v &= (1u64 << len) - 1;
    }
    v
}

/// ORs the low `len` bits of `v` into `dst` at bit `pos`.
#[inline]
fn or_bits(dst: &mut [u64], pos: usize, v: u64, len: usize) {
    let (w, b) = (pos / WORD, pos % WORD);
    dst[w] |= v << b;
    if b + len > WORD {
        dst[w + 1] |= v >> (WORD - b);
    }
}

fn or_copy(dst: &mut [u64], dst_pos: usize, src: &[u64], src_pos: usize, len: usize) {
    let mut off = 0;
    while off < len {
        let chunk = (len - off).min(WORD);
        let v = read_bits(src, src_pos + off, chunk);
        if v != 0 {
            or_bits(dst, dst_pos + off, v, chunk);
        }
        off += chunk;
    }
}

/// ORs the `n`-bit row of `src` at `src_row`, rotated up by `shift`, into `dst` at `dst_row`.
#[inline]
fn or_rotated_row(
    dst: &mut [u64],
    dst_row: usize,
    src: &[u64],
    src_row: usize,
    n: usize,
    shift: usize,
) {
    if shift == 0 {
        or_copy(dst, dst_row, src, src_row, n);
        return;
    }
    // bits [0, n - shift) move up by `shift`; the top `shift` bits wrap to the start
    or_copy(dst, dst_row + shift, src, src_row, n - shift);
    or_copy(dst, dst_row, src, src_row + n - shift, shift);
}

/// `dst |= src + g` for the translation by group element index `g`.
pub(crate) fn or_translate(dst: &mut [u64], src: &[u64], group: &Group, g: usize) {
    let n = group.row_len();
    let shift = g % n;
    let rows = group.order() / n;
    if rows == 1 {
        if n <= WORD {
            let x = src[0];
            let rotated = if shift == 0 {
                x
            } else {
                (x << shift) | (x >> (n - shift))
            };
            let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
            dst[0] |= rotated & mask;
        } else {
            or_rotated_row(dst, 0, src, 0, n, shift);
        }
        return;
    }
    let row_shift = g - shift;
    for r in 0..rows {
        let from = r * n;
        if read_any(src, from, n) {
            let to = group.add_idx(from, row_shift);
            or_rotated_row(dst, to, src, from, n, shift);
        }
    }
}

fn read_any(src: &[u64], pos: usize, len: usize) -> bool {
    let mut off = 0;
    while off < len {
        let chunk = (len - off).min(WORD);
        if read_bits(src, pos + off, chunk) != 0 {
            return true;
        }
        off += chunk;
    }
    false
}

pub(crate) fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_translate(group: &Group, members: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().map(|&a| group.add_idx(a, g)).collect();
        out.sort_unstable();
        out
    }

    fn pack(order: usize, members: &[usize]) -> Vec<u64> {
        let mut bits = vec![0u64; words_for(order)];
        for &m in members {
            bits[m / WORD] |= 1 << (m % WORD);
        }
        bits
    }

    fn unpack(order: usize, bits: &[u64]) -> Vec<usize> {
        (0..order)
            .filter(|&i| bits[i / WORD] >> (i % WORD) & 1 == 1)
            .collect()
    }

    #[test]
    fn rotate_across_word_boundary() {
        let g = Group::cyclic(130).unwrap();
        let src = pack(130, &[0, 63, 64, 127, 129]);
        let mut dst = vec![0; words_for(130)];
        or_translate(&mut dst, &src, &g, 5);
        assert_eq!(unpack(130, &dst), vec![2, 4, 5, 68, 69]);
    }

    proptest! {
        #[test]
        fn translate_matches_pointwise(
            factors in prop::collection::vec(1usize..40, 1..4),
            picks in prop::collection::vec(any::<u32>(), 0..40),
            gpick in any::<u32>(),
        ) {
            let g = Group::new(&factors).unwrap();
            let n = g.order();
            let mut members: Vec<usize> = picks.iter().map(|&p| p as usize % n).collect();
            members.sort_unstable();
            members.dedup();
            let shift = gpick as usize % n;
            let src = pack(n, &members);
            let mut dst = vec![0; words_for(n)];
            or_translate(&mut dst, &src, &g, shift);
            prop_assert_eq!(unpack(n, &dst), naive_translate(&g, &members, shift));
            // nothing leaks past the last valid bit
            prop_assert_eq!(dst.last().copied().unwrap_or(0) & !tail_mask(n), 0);
        }
    }
}
