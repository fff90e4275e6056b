//! Integer lattices spanned by shift vectors, via Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`: an
/// upper-triangular basis with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), dim, "row length must equal the lattice dimension");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        if pivot_row == m.len() {
            break;
        }
        // Euclid on column `col` among rows pivot_row..
        loop {
            let nonzero: Vec<usize> = (pivot_row..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            m.swap(pivot_row, best);
            if m[pivot_row][col].is_negative() {
                for x in m[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let mut done = true;
            for i in pivot_row + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[pivot_row][col]);
                for j in 0..dim {
                    let d = &q * &m[pivot_row][j];
                    m[i][j] -= d;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        for i in 0..pivot_row {
            let q = m[i][col].div_floor(&m[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            for j in 0..dim {
                let d = &q * &m[pivot_row][j];
                m[i][j] -= d;
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Whether the HNF basis spans all of `Z^dim`.
pub fn is_full_lattice(hnf: &[Vec<BigInt>], dim: usize) -> bool {
    hnf.len() == dim && (0..dim).all(|i| hnf[i][i].is_one())
}

/// Membership of `v` in the lattice with HNF basis `hnf`.
pub fn contains(hnf: &[Vec<BigInt>], v: &[i64]) -> bool {
    let mut r: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    for row in hnf {
        let col = match row.iter().position(|x| !x.is_zero()) {
            Some(c) => c,
            None => continue,
        };
        if r[..col].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = r[col].div_rem(&row[col]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in r.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    r.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Bounded brute force: is `target` an integer combination with
    /// coefficients in `[-b, b]`?
    fn brute_member(rows: &[Vec<i64>], target: &[i64], b: i64) -> bool {
        fn go(rows: &[Vec<i64>], i: usize, acc: &mut Vec<i64>, target: &[i64], b: i64) -> bool {
            if i == rows.len() {
                return acc == target;
            }
            for c in -b..=b {
                for (a, r) in acc.iter_mut().zip(&rows[i]) {
                    *a += c * r;
                }
                let hit = go(rows, i + 1, acc, target, b);
                for (a, r) in acc.iter_mut().zip(&rows[i]) {
                    *a -= c * r;
                }
                if hit {
                    return true;
                }
            }
            false
        }
        go(rows, 0, &mut vec![0; target.len()], target, b)
    }

    #[test]
    fn index_two_sublattice() {
        let h = hermite_normal_form(&[vec![2]], 1);
        assert!(!is_full_lattice(&h, 1));
        assert!(contains(&h, &[4]));
        assert!(!contains(&h, &[1]));
    }

    #[test]
    fn unit_vectors_and_mixtures() {
        let h = hermite_normal_form(&[vec![1, 0], vec![0, -1]], 2);
        assert!(is_full_lattice(&h, 2));
        let h = hermite_normal_form(&[vec![2, 1], vec![1, 1]], 2);
        assert!(is_full_lattice(&h, 2));
        let h = hermite_normal_form(&[vec![2, 0], vec![0, 1], vec![1, 1]], 2);
        assert!(is_full_lattice(&h, 2));
        let h = hermite_normal_form(&[vec![1, 1], vec![1, -1]], 2);
        assert!(!is_full_lattice(&h, 2));
        assert!(contains(&h, &[2, 0]));
        assert!(!contains(&h, &[1, 0]));
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=3),
            target in prop::collection::vec(-2i64..=2, 2),
        ) {
            let h = hermite_normal_form(&rows, 2);
            // brute force is a sound under-approximation; use a generous box
            if brute_member(&rows, &target, 12) {
                prop_assert!(contains(&h, &target));
            }
            if contains(&h, &target) && rows.len() <= 2 {
                let det = if rows.len() == 2 {
                    (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).abs()
                } else {
                    0
                };
                if det == 1 {
                    prop_assert!(brute_member(&rows, &target, 12));
                }
            }
            let full = is_full_lattice(&h, 2);
            prop_assert_eq!(full, brute_member(&rows, &[1, 0], 12) && brute_member(&rows, &[0, 1], 12));
        }
    }
}
