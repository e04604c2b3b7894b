//! Factorizations of centered banded permutations.
//!
//! * [`factor_bc`]: `P_c = B·C` with `B`, `C` block diagonal, blocks of size
//!   `2w`, the `C` blocks offset by `w` from the `B` blocks.
//! * [`factor_layers`]: `P_c = F₁·F₂⋯F_N`, each `F` a product of disjoint
//!   neighbour exchanges, with `N < 2w` asserted.
//!
//! Block and layer positions are absolute integers. A factorization either
//! acts as the identity outside the stored blocks (`Tail::Identity`) or
//! repeats its stored pattern periodically.

use std::collections::BTreeMap;
use std::ops::Range;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::plus_index;
use crate::perm::BandedPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// Identity outside the stored blocks or positions.
    Identity,
    /// Stored data describes one period and repeats.
    Periodic,
}

/// `P_c = B·C`.
///
/// `B` block `g` occupies `[anchor + 2wg, anchor + 2w(g+1))` and `C` block `k`
/// occupies `[anchor + w + 2wk, anchor + w + 2w(k+1))`. Blocks are stored in
/// one-line notation relative to the block start. With a periodic tail the
/// keys are exactly `0..len` and block `g` repeats as block `g + len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFactorization {
    pub w: i64,
    pub anchor: i64,
    pub b_blocks: BTreeMap<i64, Vec<usize>>,
    pub c_blocks: BTreeMap<i64, Vec<usize>>,
    pub tail: Tail,
}

impl BlockFactorization {
    pub fn block_size(&self) -> i64 {
        2 * self.w
    }

    pub fn b_block_range(&self, g: i64) -> Range<i64> {
        let start = self.anchor + 2 * self.w * g;
        start..start + 2 * self.w
    }

    pub fn c_block_range(&self, k: i64) -> Range<i64> {
        let start = self.anchor + self.w + 2 * self.w * k;
        start..start + 2 * self.w
    }

    /// Checks block sizes, that every block is a permutation, and the key
    /// layout required by a periodic tail.
    pub fn validate(&self) -> Result<()> {
        let size = self.block_size() as usize;
        for (name, blocks) in [("B", &self.b_blocks), ("C", &self.c_blocks)] {
            for (key, block) in blocks {
                if !is_permutation(block, size) {
                    return Err(Error::InvalidFactorization(format!(
                        "{name} block {key} is not a permutation of {size} symbols"
                    )));
                }
            }
        }
        if self.tail == Tail::Periodic {
            let expected: Vec<i64> = (0..self.b_blocks.len() as i64).collect();
            let b_keys: Vec<i64> = self.b_blocks.keys().copied().collect();
            let c_keys: Vec<i64> = self.c_blocks.keys().copied().collect();
            if b_keys != expected || c_keys != expected || expected.is_empty() {
                return Err(Error::InvalidFactorization(
                    "periodic factorization needs B and C blocks keyed 0..n".into(),
                ));
            }
        }
        if self.w == 0 && !(self.b_blocks.is_empty() && self.c_blocks.is_empty()) {
            return Err(Error::InvalidFactorization("w = 0 admits no blocks".into()));
        }
        Ok(())
    }

    pub fn b_permutation(&self) -> Result<BandedPermutation> {
        self.validate()?;
        block_diagonal(self.anchor, self.block_size(), &self.b_blocks, self.tail)
    }

    pub fn c_permutation(&self) -> Result<BandedPermutation> {
        self.validate()?;
        block_diagonal(self.anchor + self.w, self.block_size(), &self.c_blocks, self.tail)
    }
}

/// `P_c = F₁·F₂⋯F_N`. Each layer lists positions `t` meaning "exchange `t`
/// and `t + 1`". With `period = Some(L)`, every listed position also stands
/// for its translates by multiples of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionLayers {
    pub layers: Vec<Vec<i64>>,
    pub period: Option<i64>,
}

impl TranspositionLayers {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Positions inside one layer are pairwise at distance `>= 2`, also across
    /// period boundaries.
    pub fn layers_are_disjoint(&self) -> bool {
        self.layers.iter().all(|layer| {
            let mut sorted = layer.clone();
            sorted.sort_unstable();
            let inner = sorted.windows(2).all(|pair| pair[1] - pair[0] >= 2);
            let wrap = match (self.period, sorted.first(), sorted.last()) {
                (Some(period), Some(&first), Some(&last)) if sorted.len() > 1 || period < 2 => {
                    first + period - last >= 2
                }
                _ => true,
            };
            inner && wrap
        })
    }

    /// The permutation matrix of one layer.
    pub fn layer_permutation(&self, index: usize) -> Result<BandedPermutation> {
        swap_layer(&self.layers[index], self.period)
    }
}

/// Builds `P_c = B·C`.
///
/// Each `B` block collects the rows whose ones fall left of the `C` boundary
/// bisecting it into its top `w` rows and the others into its bottom `w`
/// rows, keeping their relative order. Centering guarantees exactly `w` rows
/// in each group, and then `B⁻¹·P_c` is block diagonal on the `C` blocks.
///
/// Default anchor: `0` for periodic input; for an eventual shift the largest
/// multiple of `2w` not exceeding `lo - 2w`.
pub fn factor_bc(p_c: &BandedPermutation, anchor: Option<i64>) -> Result<BlockFactorization> {
    let kappa = plus_index(p_c);
    if kappa != 0 {
        return Err(Error::NotCentered { kappa });
    }
    let w = p_c.bandwidth();
    if w == 0 {
        return Ok(BlockFactorization {
            w: 0,
            anchor: anchor.unwrap_or(0),
            b_blocks: BTreeMap::new(),
            c_blocks: BTreeMap::new(),
            tail: Tail::Identity,
        });
    }
    let size = 2 * w;
    let core = p_c.core_range();

    let (anchor, keys, tail) = match p_c.period() {
        Some(period) => {
            let anchor = anchor.unwrap_or(0);
            let span = (period as i64).lcm(&size);
            (anchor, 0..span / size, Tail::Periodic)
        }
        None => {
            let anchor = anchor.unwrap_or_else(|| (core.start - size).div_euclid(size) * size);
            let first = (core.start - size - anchor).div_euclid(size);
            let last = (core.end + size - anchor).div_euclid(size);
            (anchor, first..last + 1, Tail::Identity)
        }
    };

    let b_block = |g: i64| -> Result<Vec<usize>> { split_block(p_c, anchor + size * g, w) };

    let mut b_blocks = BTreeMap::new();
    let mut c_blocks = BTreeMap::new();
    let mut previous = b_block(keys.start - 1)?;
    for g in keys.clone() {
        let current = b_block(g)?;
        // C block g - 1 covers the bottom half of B block g - 1 and the top half of B block g.
        let c = c_block(p_c, anchor + size * g - w, w, &previous, &current)?;
        c_blocks.insert(g - 1, c);
        b_blocks.insert(g, current.clone());
        previous = current;
    }
    let last_c = c_block(p_c, anchor + size * keys.end - w, w, &previous, &b_block(keys.end)?)?;
    c_blocks.insert(keys.end - 1, last_c);

    match tail {
        Tail::Identity => {
            b_blocks.retain(|_, block| !is_identity_block(block));
            c_blocks.retain(|_, block| !is_identity_block(block));
        }
        Tail::Periodic => {
            // C block -1 repeats as the last one of the period.
            c_blocks.remove(&(keys.start - 1));
        }
    }

    Ok(BlockFactorization {
        w,
        anchor,
        b_blocks,
        c_blocks,
        tail,
    })
}

// Stable split of rows [start, start + 2w) by whether their one lies left of start + w.
fn split_block(p_c: &BandedPermutation, start: i64, w: i64) -> Result<Vec<usize>> {
    let boundary = start + w;
    let rows = start..start + 2 * w;
    let (left, right): (Vec<i64>, Vec<i64>) = rows.clone().partition(|&i| p_c.apply(i) < boundary);
    if left.len() as i64 != w {
        return Err(Error::InvalidFactorization(format!(
            "rows {rows:?} hold {} ones left of column {boundary}, expected {w}",
            left.len()
        )));
    }
    let mut block = vec![0usize; 2 * w as usize];
    for (slot, i) in left.into_iter().chain(right).enumerate() {
        block[(i - start) as usize] = slot;
    }
    Ok(block)
}

// C block starting at `start`: positions in the bottom half of `upper` and the top half of `lower`.
fn c_block(p_c: &BandedPermutation, start: i64, w: i64, upper: &[usize], lower: &[usize]) -> Result<Vec<usize>> {
    let half = w as usize;
    let upper_inv = invert(upper);
    let lower_inv = invert(lower);
    (0..2 * half)
        .map(|t| {
            // Row of P_c that B moves to position start + t.
            let row = if t < half {
                start - w + upper_inv[half + t] as i64
            } else {
                start + w + lower_inv[t - half] as i64
            };
            let image = p_c.apply(row) - start;
            if (0..2 * w).contains(&image) {
                Ok(image as usize)
            } else {
                Err(Error::InvalidFactorization(format!(
                    "row {row} leaves C block starting at {start}"
                )))
            }
        })
        .collect()
}

fn invert(block: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; block.len()];
    for (t, &v) in block.iter().enumerate() {
        inv[v] = t;
    }
    inv
}

fn is_identity_block(block: &[usize]) -> bool {
    block.iter().enumerate().all(|(t, &v)| t == v)
}

fn is_permutation(block: &[usize], size: usize) -> bool {
    if block.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    block
        .iter()
        .all(|&v| v < size && !std::mem::replace(&mut seen[v], true))
}

// Block-diagonal permutation with blocks of `size` starting at `offset + size * key`.
fn block_diagonal(offset: i64, size: i64, blocks: &BTreeMap<i64, Vec<usize>>, tail: Tail) -> Result<BandedPermutation> {
    if blocks.is_empty() {
        return Ok(BandedPermutation::identity());
    }
    match tail {
        Tail::Identity => {
            let first = *blocks.keys().next().unwrap();
            let last = *blocks.keys().next_back().unwrap();
            let range = offset + size * first..offset + size * (last + 1);
            let images = range
                .clone()
                .map(|x| {
                    let g = (x - offset).div_euclid(size);
                    let t = (x - offset).rem_euclid(size) as usize;
                    match blocks.get(&g) {
                        Some(block) => offset + size * g + block[t] as i64,
                        None => x,
                    }
                })
                .collect();
            BandedPermutation::eventual_shift(0, range.start, images)
        }
        Tail::Periodic => {
            let count = blocks.len() as i64;
            let period = count * size;
            let displacements = (0..period)
                .map(|r| {
                    let g = (r - offset).div_euclid(size);
                    let t = (r - offset).rem_euclid(size) as usize;
                    let block = &blocks[&g.rem_euclid(count)];
                    offset + size * g + block[t] as i64 - r
                })
                .collect();
            BandedPermutation::periodic(displacements)
        }
    }
}

/// Product `B·C` of the two factors.
pub fn reconstruct_bc(f: &BlockFactorization) -> Result<BandedPermutation> {
    f.b_permutation()?.compose(&f.c_permutation()?)
}

/// Greedy layering of a centered permutation into neighbour exchanges.
///
/// Repeatedly scans the working one-line array in ascending order, exchanges
/// a maximal set of pairwise non-adjacent neighbour inversions and records
/// them as the next layer, until the array is sorted. If the ascending scan
/// needs `2w` or more layers the descending scan is tried; if that fails too
/// the result is [`Error::BoundViolation`].
pub fn factor_layers(p_c: &BandedPermutation) -> Result<TranspositionLayers> {
    let kappa = plus_index(p_c);
    if kappa != 0 {
        return Err(Error::NotCentered { kappa });
    }
    let w = p_c.bandwidth();
    let ascending = greedy_layers(p_c, Scan::Ascending);
    if w == 0 || (ascending.len() as i64) < 2 * w {
        return Ok(ascending);
    }
    let descending = greedy_layers(p_c, Scan::Descending);
    if (descending.len() as i64) < 2 * w {
        return Ok(descending);
    }
    Err(Error::BoundViolation {
        layers: ascending.len().min(descending.len()),
        w,
        instance: Box::new(p_c.clone()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scan {
    Ascending,
    Descending,
}

/// The greedy layering with a fixed scan direction and no bound check.
/// `p_c` must map its core range onto itself (true for centered input).
pub fn greedy_layers(p_c: &BandedPermutation, scan: Scan) -> TranspositionLayers {
    let core = p_c.core_range();
    let period = p_c.period();
    let len = (core.end - core.start) as usize;
    let mut values: Vec<i64> = core.clone().map(|i| p_c.apply(i)).collect();
    let cyclic = period.is_some();
    let modulus = len as i64;

    // Value one step past the end of the working array.
    let next_value = |values: &[i64], t: usize| -> i64 {
        if t + 1 < len {
            values[t + 1]
        } else {
            values[0] + modulus
        }
    };

    let mut layers = Vec::new();
    loop {
        let candidates: Vec<usize> = if cyclic { 0..len } else { 0..len.saturating_sub(1) }
            .filter(|&t| values[t] > next_value(&values, t))
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        let adjacent = |a: usize, b: usize| {
            let d = a.abs_diff(b);
            d <= 1 || (cyclic && d + 1 == len)
        };
        let order: Box<dyn Iterator<Item = &usize>> = match scan {
            Scan::Ascending => Box::new(candidates.iter()),
            Scan::Descending => Box::new(candidates.iter().rev()),
        };
        for &t in order {
            if chosen.iter().all(|&c| !adjacent(c, t)) {
                chosen.push(t);
            }
        }
        if chosen.is_empty() {
            break;
        }
        for &t in &chosen {
            if t + 1 < len {
                values.swap(t, t + 1);
            } else {
                let (last, wrapped) = (values[t], values[0] + modulus);
                values[t] = wrapped;
                values[0] = last - modulus;
            }
        }
        let mut layer: Vec<i64> = chosen.into_iter().map(|t| core.start + t as i64).collect();
        layer.sort_unstable();
        layers.push(layer);
    }
    TranspositionLayers {
        layers,
        period: period.map(|p| p as i64),
    }
}

fn swap_layer(positions: &[i64], period: Option<i64>) -> Result<BandedPermutation> {
    match period {
        None => {
            let Some(range) = positions
                .iter()
                .map(|&t| t..t + 2)
                .reduce(|a, b| a.start.min(b.start)..a.end.max(b.end))
            else {
                return Ok(BandedPermutation::identity());
            };
            let mut images: Vec<i64> = range.clone().collect();
            for &t in positions {
                images.swap((t - range.start) as usize, (t + 1 - range.start) as usize);
            }
            BandedPermutation::eventual_shift(0, range.start, images)
        }
        Some(period) => {
            let mut displacements = vec![0i64; period as usize];
            for &t in positions {
                let r = t.rem_euclid(period) as usize;
                let next = (r + 1) % period as usize;
                if displacements[r] != 0 || displacements[next] != 0 || period < 2 {
                    return Err(Error::InvalidFactorization(format!("overlapping exchanges at {t}")));
                }
                displacements[r] = 1;
                displacements[next] = -1;
            }
            BandedPermutation::periodic(displacements)
        }
    }
}

/// Product `F₁·F₂⋯F_N`.
pub fn reconstruct_layers(f: &TranspositionLayers) -> Result<BandedPermutation> {
    (0..f.len()).try_fold(BandedPermutation::identity(), |acc, l| {
        acc.compose(&f.layer_permutation(l)?)
    })
}

/// A crossing in the wiring diagram that joins `(0, i)` to `(1, π(i))` by
/// straight segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub i: i64,
    pub j: i64,
    /// Abscissa of the intersection, strictly between 0 and 1.
    pub x: Ratio<i64>,
}

/// All crossings among wires starting in `range`: every `i < j` with
/// `π(i) > π(j)`, crossing at `x = (j - i) / ((j - i) + (π(i) - π(j)))`.
pub fn crossing_diagnostics(p_c: &BandedPermutation, range: Range<i64>) -> Vec<Crossing> {
    let reach = 2 * p_c.bandwidth();
    let mut out = Vec::new();
    for i in range.clone() {
        for j in i + 1..(i + reach + 1).min(range.end) {
            let drop = p_c.apply(i) - p_c.apply(j);
            if drop > 0 {
                out.push(Crossing {
                    i,
                    j,
                    x: Ratio::new(j - i, (j - i) + drop),
                });
            }
        }
    }
    out
}

/// Number of crossings on each vertical line; more crossings than wire pairs
/// on one line signals concurrent crossings.
pub fn crossing_lines(crossings: &[Crossing]) -> BTreeMap<Ratio<i64>, usize> {
    let mut lines = BTreeMap::new();
    for c in crossings {
        *lines.entry(c.x).or_insert(0) += 1;
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> BandedPermutation {
        BandedPermutation::periodic(vec![1, -1]).unwrap()
    }

    fn reversal3() -> BandedPermutation {
        BandedPermutation::periodic(vec![2, 0, -2]).unwrap()
    }

    #[test]
    fn identity_factors_are_empty() {
        let f = factor_bc(&BandedPermutation::identity(), None).unwrap();
        assert!(f.b_blocks.is_empty() && f.c_blocks.is_empty());
        assert!(reconstruct_bc(&f).unwrap().is_identity());
        let l = factor_layers(&BandedPermutation::identity()).unwrap();
        assert_eq!(l.len(), 0);
    }

    #[test]
    fn periodic_swap_factors() {
        let f = factor_bc(&swap2(), Some(0)).unwrap();
        assert_eq!(f.w, 1);
        assert_eq!(f.b_blocks.get(&0), Some(&vec![1, 0]));
        assert_eq!(f.c_blocks.get(&0), Some(&vec![0, 1]));
        assert_eq!(reconstruct_bc(&f).unwrap(), swap2());

        let l = factor_layers(&swap2()).unwrap();
        assert_eq!(l.layers, vec![vec![0]]);
        assert_eq!(l.period, Some(2));
        assert_eq!(reconstruct_layers(&l).unwrap(), swap2());
    }

    #[test]
    fn reversal_needs_three_layers() {
        let l = factor_layers(&reversal3()).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1], vec![0]]);
        assert!(l.layers_are_disjoint());
        assert_eq!(reconstruct_layers(&l).unwrap(), reversal3());
        let f = factor_bc(&reversal3(), None).unwrap();
        assert_eq!(f.b_blocks.len(), 3);
        assert_eq!(reconstruct_bc(&f).unwrap(), reversal3());
    }

    #[test]
    fn blocks_have_size_2w_and_offset_w() {
        // w = 2, centered, eventually the identity.
        let p = BandedPermutation::eventual_shift(0, 0, vec![2, 0, 4, 1, 3, 6, 5]).unwrap();
        assert_eq!(plus_index(&p), 0);
        let f = factor_bc(&p, None).unwrap();
        assert_eq!(f.w, 2);
        assert_eq!(f.anchor % 4, 0);
        let b = f.b_permutation().unwrap();
        let c = f.c_permutation().unwrap();
        for x in -12..20 {
            let g = (x - f.anchor).div_euclid(4);
            assert!(f.b_block_range(g).contains(&b.apply(x)));
            let k = (x - f.anchor - 2).div_euclid(4);
            assert!(f.c_block_range(k).contains(&c.apply(x)));
        }
        assert_eq!(b.compose(&c).unwrap(), p);
    }

    #[test]
    fn every_anchor_works() {
        let p = BandedPermutation::eventual_shift(0, 0, vec![2, 0, 4, 1, 3, 6, 5]).unwrap();
        for anchor in -9..9 {
            let f = factor_bc(&p, Some(anchor)).unwrap();
            assert_eq!(reconstruct_bc(&f).unwrap(), p, "anchor {anchor}");
        }
        for anchor in -5..5 {
            let f = factor_bc(&reversal3(), Some(anchor)).unwrap();
            assert_eq!(reconstruct_bc(&f).unwrap(), reversal3(), "anchor {anchor}");
        }
    }

    #[test]
    fn not_centered_is_rejected() {
        let s = BandedPermutation::shift_power(1);
        assert!(matches!(factor_bc(&s, None), Err(Error::NotCentered { kappa: -1 })));
        assert!(matches!(factor_layers(&s), Err(Error::NotCentered { kappa: -1 })));
    }

    #[test]
    fn reconstruct_single_layer() {
        let l = TranspositionLayers {
            layers: vec![vec![0]],
            period: None,
        };
        let p = reconstruct_layers(&l).unwrap();
        assert_eq!((p.apply(0), p.apply(1), p.apply(2)), (1, 0, 2));
    }

    #[test]
    fn invalid_blocks_are_rejected() {
        let f = BlockFactorization {
            w: 1,
            anchor: 0,
            b_blocks: BTreeMap::from([(0, vec![0, 0])]),
            c_blocks: BTreeMap::new(),
            tail: Tail::Identity,
        };
        assert!(matches!(reconstruct_bc(&f), Err(Error::InvalidFactorization(_))));
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing_diagnostics(&BandedPermutation::identity(), -5..5).is_empty());
        let swap = BandedPermutation::eventual_shift(0, 3, vec![4, 3]).unwrap();
        let c = crossing_diagnostics(&swap, 0..8);
        assert_eq!(
            c,
            vec![Crossing {
                i: 3,
                j: 4,
                x: Ratio::new(1, 2)
            }]
        );
        let rev = BandedPermutation::eventual_shift(0, 0, vec![2, 1, 0]).unwrap();
        let c = crossing_diagnostics(&rev, 0..3);
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|c| c.x == Ratio::new(1, 2)));
        assert_eq!(crossing_lines(&c).get(&Ratio::new(1, 2)), Some(&3));
    }
}
