//! Integer diagonalization of relation matrices.
//!
//! Only column operations are recorded: for a relation matrix `M` (one relation
//! per row) we find a unimodular `Q` with `M Q` row-equivalent to a diagonal
//! matrix `D`. Then `Z^k / rowspan(M)` is isomorphic to `⊕ Z/d_j` through
//! `x ↦ (x Q)_j mod d_j`.

pub(crate) struct Diagonal {
    pub diag: Vec<i128>,
    pub q: Vec<Vec<i128>>,
}

pub(crate) fn diagonalize(mut m: Vec<Vec<i128>>, k: usize) -> Diagonal {
    let rows = m.len();
    let mut q: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut diag = vec![0i128; k];

    for t in 0..k.min(rows) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(t, pi);
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                for row in q.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = m[t][t];
            let mut clean = true;
            let (top, below) = m.split_at_mut(t + 1);
            let pivot = &top[t];
            for row in below.iter_mut() {
                let f = row[t] / p;
                if f != 0 {
                    for (x, y) in row[t..k].iter_mut().zip(&pivot[t..k]) {
                        *x -= f * y;
                    }
                }
                clean &= row[t] == 0;
            }
            for j in t + 1..k {
                let f = m[t][j] / p;
                if f != 0 {
                    for row in m.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag[t] = m[t][t].abs();
    }
    Diagonal { diag, q }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_mod_three() {
        // Z6 / <3> = Z3
        let d = diagonalize(vec![vec![6], vec![3]], 1);
        assert_eq!(d.diag, vec![3]);
    }

    #[test]
    fn z2xz4_mod_diagonal() {
        // Z2 x Z4 / <(1,1)>: order 8 / 4 = 2
        let d = diagonalize(vec![vec![2, 0], vec![0, 4], vec![1, 1]], 2);
        let order: i128 = d.diag.iter().product();
        assert_eq!(order, 2);
    }

    #[test]
    fn column_transform_is_unimodular() {
        let d = diagonalize(
            vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10], vec![2, 3, 5]],
            3,
        );
        let q = &d.q;
        let det = q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1])
            - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0])
            + q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
        assert_eq!(det.abs(), 1);
        assert_eq!(d.diag.iter().product::<i128>(), 4 * 6 * 10 / 2);
    }
}
