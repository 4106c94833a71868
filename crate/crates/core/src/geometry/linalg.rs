//! Exact rank computations on integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
/// Runs in `i128` and falls back to big integers if an intermediate value
/// would overflow.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    match rank_i128(rows) {
        Some(r) => r,
        None => rank_big(rows),
    }
}

fn rank_i128(rows: &[Vec<i64>]) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return Some(0);
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let p = m[rank][col];
        for r in rank + 1..nrows {
            let f = m[r][col];
            for c in col..ncols {
                let v = p
                    .checked_mul(m[r][c])?
                    .checked_sub(f.checked_mul(m[rank][c])?)?;
                m[r][c] = v / prev;
            }
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn rank_big(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let p = m[rank][col].clone();
        for r in rank + 1..nrows {
            let f = m[r][col].clone();
            for c in col..ncols {
                let v = &p * &m[r][c] - &f * &m[rank][c];
                m[r][c] = v / &prev;
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 2);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]), 3);
    }

    #[test]
    fn big_fallback_agrees() {
        let big = i64::MAX / 3;
        let rows = vec![vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]];
        assert_eq!(rank_i128(&rows), None);
        assert_eq!(rank(&rows), 3);
        assert_eq!(rank_big(&[vec![big, 1], vec![2 * big, 2]]), 1);
    }

    proptest::proptest! {
        #[test]
        fn both_paths_agree(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 0..7)) {
            proptest::prop_assert_eq!(rank_i128(&rows).unwrap(), rank_big(&rows));
        }
    }
}
