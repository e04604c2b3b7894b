//! Plus-index of a banded permutation from a finite window.
//!
//! For bandwidth `w` and any `j*`, take the `2w` rows `j* - w .. j* + w - 1`
//! and count the ones lying in columns `>= j*` (they all fall in the lower
//! triangular `2w x 2w` block starting at column `j*`). With `n` that count,
//! the plus-index is `κ = n - w`, whatever `j*` is. The main diagonal sits `κ`
//! diagonals above the zeroth one, and `S^κ P` is centered.

use std::ops::Range;

use crate::perm::{BandedPermutation, BinaryWindow};

/// The counting window at `jstar`: rows `[jstar - w, jstar + w)`,
/// columns `[jstar, jstar + 2w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowR {
    pub jstar: i64,
    pub w: i64,
    pub matrix: BinaryWindow,
    pub n: i64,
}

impl WindowR {
    pub fn kappa(&self) -> i64 {
        self.n - self.w
    }

    /// Entry `(jstar - w + t, jstar + u)` vanishes whenever `u > t`.
    pub fn is_lower_triangular(&self) -> bool {
        let (r0, c0) = (self.jstar - self.w, self.jstar);
        (0..2 * self.w).all(|t| (t + 1..2 * self.w).all(|u| !self.matrix.get(r0 + t, c0 + u)))
    }
}

/// A position where the permutation decouples:
/// `{π(i) : i < istar} = {j : j < jstar}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitPoint {
    pub istar: i64,
    pub jstar: i64,
}

/// Result of index cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centering {
    pub kappa: i64,
    /// `S^κ P`, with `π_c(i) = π(i - κ)`.
    pub centered: BandedPermutation,
}

/// Builds the counting window. For `w = 0` the window is empty and `n = 0`.
pub fn window_r(p: &BandedPermutation, jstar: i64) -> WindowR {
    let w = p.bandwidth();
    let matrix = p.window_matrix(jstar - w..jstar + w, jstar..jstar + 2 * w);
    let n = matrix.count_ones() as i64;
    WindowR { jstar, w, matrix, n }
}

pub fn plus_index_at(p: &BandedPermutation, jstar: i64) -> i64 {
    window_r(p, jstar).kappa()
}

/// `ind₊(P)`, read off the window at `j* = 0`.
pub fn plus_index(p: &BandedPermutation) -> i64 {
    plus_index_at(p, 0)
}

/// `ind₋(P) = -ind₊(P)`, since `ind(P) = ind₊(P) + ind₋(P)` and `P` is invertible.
pub fn minus_index(p: &BandedPermutation) -> i64 {
    -plus_index(p)
}

pub fn center(p: &BandedPermutation) -> Centering {
    let kappa = plus_index(p);
    let centered = BandedPermutation::shift_power(kappa)
        .compose(p)
        .expect("a pure shift composes with every backend");
    Centering { kappa, centered }
}

/// Checks whether `P` splits at `istar`.
///
/// Rows further than `2w` from `istar` cannot break the split, so only the
/// `2w` rows on each side are inspected.
pub fn split_at(p: &BandedPermutation, istar: i64) -> Option<SplitPoint> {
    let radius = 2 * p.bandwidth().max(1);
    let left_max = (istar - radius..istar).map(|i| p.apply(i)).max()?;
    let right_min = (istar..istar + radius).map(|i| p.apply(i)).min()?;
    (left_max < right_min).then_some(SplitPoint {
        istar,
        jstar: right_min,
    })
}

/// First split with `istar` in `search`, scanning upwards.
pub fn find_split(p: &BandedPermutation, search: Range<i64>) -> Option<SplitPoint> {
    search.into_iter().find_map(|istar| split_at(p, istar))
}

/// A search range that finds a split whenever one exists: the core range
/// widened by `2w + 1` on both sides.
///
/// Splits of a periodic permutation repeat with the period, and for an
/// eventual shift a split beyond either end of the window propagates
/// outwards, so the widened core range is exhaustive.
pub fn default_split_range(p: &BandedPermutation) -> Range<i64> {
    let core = p.core_range();
    let margin = 2 * p.bandwidth() + 1;
    core.start - margin..core.end + margin
}

/// Reorders the images of rows `jstar - w .. jstar + w - 1` increasingly.
///
/// The result splits at `(jstar + w - n, jstar)`. For an eventual shift only
/// those `2w` rows change. A periodic permutation is rewired in every
/// translate of the block by a multiple of `L`, the smallest multiple of the
/// period that is `>= 2w`, so the output stays periodic (period `L`).
pub fn rewire_split(p: &BandedPermutation, jstar: i64) -> BandedPermutation {
    let w = p.bandwidth();
    if w == 0 {
        return p.clone();
    }
    let block_start = jstar - w;
    let block_len = 2 * w;
    let mut sorted: Vec<i64> = (block_start..block_start + block_len).map(|i| p.apply(i)).collect();
    sorted.sort_unstable();

    match p.period() {
        None => {
            let core = p.core_range();
            let block = block_start..block_start + block_len;
            let hull = if core.is_empty() {
                block
            } else {
                core.start.min(block.start)..core.end.max(block.end)
            };
            let shift = p.mean_displacement();
            let rewired = |i: i64| {
                if (block_start..block_start + block_len).contains(&i) {
                    sorted[(i - block_start) as usize]
                } else {
                    p.apply(i)
                }
            };
            BandedPermutation::eventual_shift(shift, hull.start, hull.map(rewired).collect())
                .expect("rewiring permutes the images of one block")
        }
        Some(period) => {
            let period = period as i64;
            let stride = period * ((block_len + period - 1) / period);
            let displacements = (0..stride)
                .map(|r| {
                    let offset = (r - block_start).rem_euclid(stride);
                    if offset < block_len {
                        let copy = (r - block_start).div_euclid(stride);
                        sorted[offset as usize] + copy * stride - r
                    } else {
                        p.apply(r) - r
                    }
                })
                .collect();
            BandedPermutation::periodic(displacements).expect("rewiring permutes the images of each block")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::truncation_index;

    fn s() -> BandedPermutation {
        BandedPermutation::shift_power(1)
    }

    // Rows -4..3 of a w = 3 permutation with κ = 1 (shift 1 outside the window).
    fn demo() -> BandedPermutation {
        BandedPermutation::eventual_shift(1, -4, vec![-1, 0, -3, 2, -2, 4, 1, 3]).unwrap()
    }

    // Direct test of {π(i) : i < istar} = {j : j < jstar} on a wide stretch of
    // columns, trying every plausible jstar.
    fn brute_force_split(p: &BandedPermutation, istar: i64) -> Option<i64> {
        let w = p.bandwidth();
        let inv = p.inverse();
        let columns = istar - 5 * w - 5..istar + 5 * w + 5;
        (istar - 2 * w - 1..=istar + 2 * w + 1)
            .find(|&jstar| columns.clone().all(|j| (inv.apply(j) < istar) == (j < jstar)))
    }

    #[test]
    fn window_of_shift() {
        let r = window_r(&s(), 0);
        assert_eq!((r.w, r.n), (1, 0));
        assert!(r.is_lower_triangular());
    }

    #[test]
    fn centered_window_counts_w() {
        let p = BandedPermutation::periodic(vec![1, -1]).unwrap();
        for jstar in -3..3 {
            assert_eq!(window_r(&p, jstar).n, 1);
        }
    }

    #[test]
    fn demo_window_has_four_ones() {
        let r = window_r(&demo(), 0);
        assert_eq!((r.w, r.n, r.kappa()), (3, 4, 1));
        assert!(r.is_lower_triangular());
    }

    #[test]
    fn identity_window_is_empty() {
        let r = window_r(&BandedPermutation::identity(), 5);
        assert_eq!((r.w, r.n), (0, 0));
        assert_eq!(r.matrix.n_rows, 0);
    }

    #[test]
    fn plus_index_examples() {
        assert_eq!(plus_index(&s()), -1);
        assert_eq!(plus_index(&BandedPermutation::identity()), 0);
        for k in -4..=4 {
            let p = BandedPermutation::shift_power(k);
            assert_eq!(plus_index(&p), -k);
            assert_eq!(truncation_index(&p, 3), -k);
        }
        // Symmetric intertwined table and its shifted companion.
        let sym = BandedPermutation::periodic(vec![3, -3]).unwrap();
        let shifted = BandedPermutation::periodic(vec![4, -2]).unwrap();
        assert_eq!(plus_index(&sym), 0);
        assert_eq!(plus_index(&shifted), truncation_index(&shifted, 0));
        assert_eq!(plus_index(&shifted), 1);
    }

    #[test]
    fn minus_index_examples() {
        assert_eq!(minus_index(&s()), 1);
        assert_eq!(minus_index(&BandedPermutation::identity()), 0);
        assert_eq!(minus_index(&center(&demo()).centered), 0);
    }

    #[test]
    fn center_examples() {
        let c = center(&s());
        assert_eq!(c.kappa, -1);
        assert!(c.centered.is_identity());
        let c = center(&BandedPermutation::identity());
        assert_eq!(c.kappa, 0);
        assert!(c.centered.is_identity());
        let p = BandedPermutation::periodic(vec![3, 0, 0, 1, 1]).unwrap();
        let c = center(&p);
        assert_eq!(c.kappa, 1);
        assert_eq!(c.centered.mean_displacement(), 0);
        assert_eq!(plus_index(&c.centered), 0);
        for i in -10..10 {
            assert_eq!(c.centered.apply(i), p.apply(i - c.kappa));
        }
    }

    #[test]
    fn split_examples() {
        for istar in -5..5 {
            assert_eq!(
                split_at(&s(), istar),
                Some(SplitPoint {
                    istar,
                    jstar: istar - 1
                })
            );
            assert_eq!(
                split_at(&BandedPermutation::identity(), istar),
                Some(SplitPoint { istar, jstar: istar })
            );
        }
        let sym = BandedPermutation::periodic(vec![3, -3]).unwrap();
        assert_eq!(find_split(&sym, default_split_range(&sym)), None);
        let shifted = BandedPermutation::periodic(vec![4, -2]).unwrap();
        assert_eq!(find_split(&shifted, default_split_range(&shifted)), None);
    }

    #[test]
    fn split_matches_brute_force() {
        let cases = [
            demo(),
            rewire_split(&demo(), 0),
            BandedPermutation::periodic(vec![2, 0, -2]).unwrap(),
            BandedPermutation::periodic(vec![1, -1, 0]).unwrap(),
            BandedPermutation::eventual_shift(-1, 0, vec![1, -1, 0]).unwrap(),
        ];
        for p in &cases {
            for istar in -12..12 {
                let fast = split_at(p, istar).map(|sp| sp.jstar);
                assert_eq!(fast, brute_force_split(p, istar), "{p} at {istar}");
                if let Some(jstar) = fast {
                    assert_eq!(jstar - istar, plus_index(p));
                }
            }
        }
    }

    #[test]
    fn rewire_examples() {
        assert!(rewire_split(&BandedPermutation::identity(), 4).is_identity());
        assert_eq!(rewire_split(&s(), 0), s());
        let p = demo();
        for jstar in -6..6 {
            let r = window_r(&p, jstar);
            let q = rewire_split(&p, jstar);
            let istar = jstar + r.w - r.n;
            assert_eq!(split_at(&q, istar), Some(SplitPoint { istar, jstar }));
            assert_eq!(plus_index(&q), plus_index(&p));
            for i in -20..20 {
                if !(jstar - 3..jstar + 3).contains(&i) {
                    assert_eq!(q.apply(i), p.apply(i));
                }
            }
        }
        // demo has w = 3, n = 4: the rewired permutation splits one row early.
        assert_eq!(split_at(&rewire_split(&p, 0), -1).map(|sp| sp.jstar), Some(0));
    }

    #[test]
    fn rewire_periodic() {
        let p = BandedPermutation::periodic(vec![4, -2]).unwrap();
        for jstar in -4..4 {
            let r = window_r(&p, jstar);
            let q = rewire_split(&p, jstar);
            let istar = jstar + r.w - r.n;
            assert_eq!(split_at(&q, istar), Some(SplitPoint { istar, jstar }));
            assert_eq!(plus_index(&q), 1);
            assert_eq!(truncation_index(&q, 0), 1);
        }
    }
}
