//! Independent checks for the index machinery.
//!
//! The Fredholm index of the singly infinite truncation `P_k` (rows and
//! columns `>= k`) is obtained by counting its zero columns (`alpha`, the
//! nullity) and zero rows (`beta`, the codimension of the range). For
//! eventual shifts the same numbers are also recovered from the exact rank
//! of a finite section, which gives a second, algebraic route.
//!
//! The module also carries the exact-rank tools used to test rank relations
//! between submatrices of an invertible matrix and of its inverse.

mod rational;

pub use rational::RationalMatrix;

use crate::error::{Error, Result};
use crate::perm::{Backend, BandedPermutation};

/// Zero-column and zero-row counts of the truncation `P_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationCounts {
    pub k: i64,
    pub alpha: usize,
    pub beta: usize,
}

impl TruncationCounts {
    pub fn index(&self) -> i64 {
        self.alpha as i64 - self.beta as i64
    }
}

/// Counts `alpha = #{j >= k : π⁻¹(j) < k}` and `beta = #{i >= k : π(i) < k}`.
/// Only `k..k + w` can contribute to either count.
pub fn truncation_counts(p: &BandedPermutation, k: i64) -> TruncationCounts {
    let w = p.bandwidth();
    let inv = p.inverse();
    let alpha = (k..k + w).filter(|&j| inv.apply(j) < k).count();
    let beta = (k..k + w).filter(|&i| p.apply(i) < k).count();
    TruncationCounts { k, alpha, beta }
}

/// `ind(P_k) = alpha - beta`.
pub fn truncation_index(p: &BandedPermutation, k: i64) -> i64 {
    truncation_counts(p, k).index()
}

/// Recovers the truncation counts of an eventual shift from the exact rank of
/// a finite section.
///
/// Past `T = max(hi, k) + w` the truncation is an identity-like tail, so
/// `P_k = diag(M, tail)` with `M` the rows `[k, T)` and columns `[k, T + s)`.
/// Then `alpha = nullity(M)` and `beta = rows(M) - rank(M)`. Returns `None`
/// for periodic input, which has no finite tail.
pub fn truncation_counts_by_rank(p: &BandedPermutation, k: i64) -> Option<TruncationCounts> {
    let Backend::EventualShift { shift, .. } = p.backend() else {
        return None;
    };
    let w = p.bandwidth();
    let hi = p.core_range().end;
    let t = hi.max(k) + w;
    let section = p.window_matrix(k..t, k..t + shift);
    let m = RationalMatrix::from_window(&section);
    let rank = m.rank();
    Some(TruncationCounts {
        k,
        alpha: m.cols() - rank,
        beta: m.rows() - rank,
    })
}

/// `nullity(M) - (rows - rank(M))`, which must vanish for square input.
pub fn finite_index(m: &RationalMatrix) -> Result<i64> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let rank = m.rank() as i64;
    let nullity = m.cols() as i64 - rank;
    let corank = m.rows() as i64 - rank;
    Ok(nullity - corank)
}

pub fn rank_exact(m: &RationalMatrix) -> usize {
    m.rank()
}

/// Outcome of the two rank conditions relating `M` and `M⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsplundVerdict {
    /// Every submatrix of `M` strictly above the `p`-th superdiagonal has rank `< k`.
    pub cond_i: bool,
    /// Every submatrix of `M⁻¹` strictly above the `p`-th subdiagonal has rank `< p + k`.
    pub cond_ii: bool,
}

impl AsplundVerdict {
    pub fn agrees(&self) -> bool {
        self.cond_i == self.cond_ii
    }
}

/// Tests both rank conditions on maximal upper-right corner blocks.
///
/// Any submatrix whose entries `(r, c)` all satisfy `c - r > p` sits inside
/// the corner block with rows `0..=max r` and columns `max r + p + 1..n`, and
/// rank can only grow when passing to a larger block. So it suffices to test
/// the `n` corner blocks of each family.
pub fn asplund_check(m: &RationalMatrix, p: usize, k: usize) -> Result<AsplundVerdict> {
    let inv = m.inverse()?;
    let n = m.rows();
    let cond_i = (0..n)
        .filter_map(|i| corner_above_superdiagonal(i, p, n))
        .all(|(rows, cols)| m.select(&rows, &cols).rank() < k);
    let cond_ii = (0..n)
        .filter_map(|i| corner_above_subdiagonal(i, p, n))
        .all(|(rows, cols)| inv.select(&rows, &cols).rank() < p + k);
    Ok(AsplundVerdict { cond_i, cond_ii })
}

// Rows 0..=i and the columns c with c - i > p.
fn corner_above_superdiagonal(i: usize, p: usize, n: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = i + p + 1;
    (first < n).then(|| ((0..=i).collect(), (first..n).collect()))
}

// Rows 0..=i and the columns c with c - i > -p.
fn corner_above_subdiagonal(i: usize, p: usize, n: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = (i + 1).saturating_sub(p);
    (first < n).then(|| ((0..=i).collect(), (first..n).collect()))
}

/// Same verdict as [`asplund_check`], but over every pair of row and column
/// subsets. Exponential; meant for `n <= 6`.
pub fn asplund_check_exhaustive(m: &RationalMatrix, p: usize, k: usize) -> Result<AsplundVerdict> {
    let inv = m.inverse()?;
    let n = m.rows() as i64;
    let p_signed = p as i64;
    let cond_i = max_rank_over_subsets(m, |max_row, min_col| min_col - max_row > p_signed) < k;
    let cond_ii = max_rank_over_subsets(&inv, |max_row, min_col| min_col - max_row > -p_signed) < p + k;
    debug_assert!(n <= 10, "exhaustive enumeration is exponential");
    Ok(AsplundVerdict { cond_i, cond_ii })
}

// Largest rank among submatrices whose (max row, min column) pass `admissible`.
fn max_rank_over_subsets(m: &RationalMatrix, admissible: impl Fn(i64, i64) -> bool) -> usize {
    let n = m.rows();
    let subsets = |mask: u32| -> Vec<usize> { (0..n).filter(|&b| mask & (1 << b) != 0).collect() };
    let mut best = 0;
    for row_mask in 1u32..(1 << n) {
        let rows = subsets(row_mask);
        let max_row = *rows.last().unwrap() as i64;
        for col_mask in 1u32..(1 << n) {
            let cols = subsets(col_mask);
            if !admissible(max_row, cols[0] as i64) {
                continue;
            }
            if rows.len().min(cols.len()) <= best {
                continue;
            }
            best = best.max(m.select(&rows, &cols).rank());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower_triangular() -> RationalMatrix {
        RationalMatrix::from_i64_rows(&[vec![2, 0, 0, 0], vec![1, 3, 0, 0], vec![-1, 4, 1, 0], vec![5, 0, 2, 1]])
    }

    fn tridiagonal() -> RationalMatrix {
        RationalMatrix::from_i64_rows(&[
            vec![2, 1, 0, 0, 0],
            vec![1, 3, -1, 0, 0],
            vec![0, 2, 2, 1, 0],
            vec![0, 0, 1, 4, 1],
            vec![0, 0, 0, 3, 5],
        ])
    }

    #[test]
    fn truncation_of_shift() {
        let s = BandedPermutation::shift_power(1);
        let c = truncation_counts(&s, 1);
        assert_eq!((c.alpha, c.beta), (0, 1));
        assert_eq!(c.index(), -1);
        assert_eq!(truncation_index(&BandedPermutation::identity(), 7), 0);
        assert_eq!(truncation_index(&s.inverse(), 0), 1);
    }

    #[test]
    fn rank_route_matches_counting_route() {
        let p = BandedPermutation::eventual_shift(1, -2, vec![0, 1, -1, 3, 2]).unwrap();
        for k in -8..8 {
            assert_eq!(
                truncation_counts_by_rank(&p, k),
                Some(truncation_counts(&p, k)),
                "k = {k}"
            );
        }
        let periodic = BandedPermutation::periodic(vec![1, -1]).unwrap();
        assert!(truncation_counts_by_rank(&periodic, 0).is_none());
    }

    #[test]
    fn finite_index_examples() {
        assert_eq!(finite_index(&RationalMatrix::identity(5)).unwrap(), 0);
        assert_eq!(finite_index(&RationalMatrix::zeros(3, 3)).unwrap(), 0);
        assert!(matches!(
            finite_index(&RationalMatrix::zeros(2, 3)),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn rank_of_permutation_window() {
        let p = BandedPermutation::periodic(vec![3, -3]).unwrap();
        let window = p.window_matrix(0..6, 0..6);
        assert_eq!(rank_exact(&RationalMatrix::from_window(&window)), window.count_ones());
    }

    #[test]
    fn lower_triangular_has_lower_triangular_inverse() {
        let v = asplund_check(&lower_triangular(), 0, 1).unwrap();
        assert_eq!(
            v,
            AsplundVerdict {
                cond_i: true,
                cond_ii: true
            }
        );
    }

    #[test]
    fn tridiagonal_inverse_has_rank_one_corners() {
        let v = asplund_check(&tridiagonal(), 1, 1).unwrap();
        assert_eq!(
            v,
            AsplundVerdict {
                cond_i: true,
                cond_ii: true
            }
        );
    }

    #[test]
    fn dense_upper_corner_fails_both() {
        let mut m = lower_triangular();
        m.set(0, 3, num_rational::BigRational::from_integer(7.into()));
        let v = asplund_check(&m, 0, 1).unwrap();
        assert_eq!(
            v,
            AsplundVerdict {
                cond_i: false,
                cond_ii: false
            }
        );
    }

    #[test]
    fn singular_input_is_rejected() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(asplund_check(&m, 0, 1), Err(Error::Singular)));
    }

    #[test]
    fn exhaustive_agrees_with_corners() {
        for (m, p, k) in [
            (lower_triangular(), 0, 1),
            (tridiagonal(), 1, 1),
            (tridiagonal(), 0, 1),
            (tridiagonal(), 0, 2),
        ] {
            assert_eq!(
                asplund_check(&m, p, k).unwrap(),
                asplund_check_exhaustive(&m, p, k).unwrap()
            );
        }
    }
}
