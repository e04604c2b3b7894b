//! Banded permutations of the integers.
//!
//! A permutation `π` of `Z` is identified with the doubly infinite 0/1 matrix
//! `P` whose row `i` has its single one in column `π(i)`. Two finite
//! descriptions are supported:
//!
//! * [`Backend::EventualShift`]: `π(i) = i + s` outside a finite window
//!   `[lo, lo + m)`, with the window images stored explicitly.
//! * [`Backend::Periodic`]: `π(i) = i + δ(i mod p)` for a displacement table
//!   of length `p`.
//!
//! Matrix products follow the row convention: row `i` of `P·Q` has its one in
//! column `π_Q(π_P(i))`, so `compose(P, Q)` evaluates `P` first.

use std::fmt;
use std::ops::Range;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum Backend {
    /// `images[t] = π(lo + t)`; every other `i` maps to `i + shift`.
    EventualShift { shift: i64, lo: i64, images: Vec<i64> },
    /// `displacements[r] = π(r) - r` for `r` in `0..period`.
    Periodic { displacements: Vec<i64> },
}

/// A validated banded permutation of `Z`.
///
/// Equality compares the underlying maps, not the representation, so a
/// periodic table of zeros equals the identity shift.
#[derive(Debug, Clone)]
pub struct BandedPermutation {
    backend: Backend,
}

impl BandedPermutation {
    /// Builds an eventual-shift permutation and trims the window to the
    /// minimal range where `π(i) != i + shift`.
    pub fn eventual_shift(shift: i64, lo: i64, images: Vec<i64>) -> Result<Self> {
        let m = images.len() as i64;
        let target = (lo + shift)..(lo + m + shift);
        let mut seen = vec![false; images.len()];
        for (t, &img) in images.iter().enumerate() {
            if !target.contains(&img) {
                return Err(Error::InvalidPermutation {
                    invariant: "window images must lie in [lo + s, lo + m + s)",
                    index: lo + t as i64,
                });
            }
            let slot = (img - target.start) as usize;
            if seen[slot] {
                return Err(Error::InvalidPermutation {
                    invariant: "window images must be distinct",
                    index: lo + t as i64,
                });
            }
            seen[slot] = true;
        }
        Ok(Self::normalized(shift, lo, images))
    }

    /// Builds a periodic permutation from one period of displacements.
    pub fn periodic(displacements: Vec<i64>) -> Result<Self> {
        let p = displacements.len() as i64;
        if p == 0 {
            return Err(Error::InvalidPermutation {
                invariant: "period must be at least 1",
                index: 0,
            });
        }
        let mut seen = vec![false; displacements.len()];
        for (r, &d) in displacements.iter().enumerate() {
            let residue = (r as i64 + d).rem_euclid(p) as usize;
            if seen[residue] {
                return Err(Error::InvalidPermutation {
                    invariant: "r + δ(r) must be a bijection of residues mod p",
                    index: r as i64,
                });
            }
            seen[residue] = true;
        }
        if displacements.iter().sum::<i64>().rem_euclid(p) != 0 {
            return Err(Error::InvalidPermutation {
                invariant: "sum of displacements must be divisible by the period",
                index: p - 1,
            });
        }
        Ok(Self {
            backend: Backend::Periodic { displacements },
        })
    }

    pub fn identity() -> Self {
        Self::shift_power(0)
    }

    /// `S^k`, i.e. `π(i) = i - k`. `S = shift_power(1)` has its ones on the
    /// first subdiagonal.
    pub fn shift_power(k: i64) -> Self {
        Self {
            backend: Backend::EventualShift {
                shift: -k,
                lo: 0,
                images: Vec::new(),
            },
        }
    }

    /// Evaluates `f` on `range` and wraps it as an eventual shift. Callers must
    /// guarantee the result is a bijection of `range + shift`; checked in debug builds.
    pub(crate) fn from_window_fn(shift: i64, range: Range<i64>, f: impl Fn(i64) -> i64) -> Self {
        let images: Vec<i64> = range.clone().map(f).collect();
        if cfg!(debug_assertions) {
            Self::eventual_shift(shift, range.start, images).expect("window function is not a bijection")
        } else {
            Self::normalized(shift, range.start, images)
        }
    }

    fn normalized(shift: i64, lo: i64, images: Vec<i64>) -> Self {
        let fixed = |t: usize| images[t] == lo + t as i64 + shift;
        let mut start = 0;
        let mut end = images.len();
        while start < end && fixed(start) {
            start += 1;
        }
        while end > start && fixed(end - 1) {
            end -= 1;
        }
        let (lo, images) = if start == end {
            (0, Vec::new())
        } else {
            (lo + start as i64, images[start..end].to_vec())
        };
        Self {
            backend: Backend::EventualShift { shift, lo, images },
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn period(&self) -> Option<usize> {
        match &self.backend {
            Backend::Periodic { displacements } => Some(displacements.len()),
            Backend::EventualShift { .. } => None,
        }
    }

    /// `Some(s)` when `π(i) = i + s` everywhere.
    pub fn as_pure_shift(&self) -> Option<i64> {
        match &self.backend {
            Backend::EventualShift { shift, images, .. } if images.is_empty() => Some(*shift),
            Backend::EventualShift { .. } => None,
            Backend::Periodic { displacements } => {
                let first = displacements[0];
                displacements.iter().all(|&d| d == first).then_some(first)
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.as_pure_shift() == Some(0)
    }

    /// The finite range carrying the non-trivial structure: the window of an
    /// eventual shift (possibly empty) or `0..p` for a periodic permutation.
    pub fn core_range(&self) -> Range<i64> {
        match &self.backend {
            Backend::EventualShift { lo, images, .. } => *lo..*lo + images.len() as i64,
            Backend::Periodic { displacements } => 0..displacements.len() as i64,
        }
    }

    /// Average displacement: `s` for an eventual shift, `Σδ / p` for a periodic table.
    pub fn mean_displacement(&self) -> i64 {
        match &self.backend {
            Backend::EventualShift { shift, .. } => *shift,
            Backend::Periodic { displacements } => displacements.iter().sum::<i64>() / displacements.len() as i64,
        }
    }

    /// `π(i)`: the column holding the one of row `i`.
    pub fn apply(&self, i: i64) -> i64 {
        match &self.backend {
            Backend::EventualShift { shift, lo, images } => {
                let t = i - lo;
                if t >= 0 && (t as usize) < images.len() {
                    images[t as usize]
                } else {
                    i + shift
                }
            }
            Backend::Periodic { displacements } => {
                let p = displacements.len() as i64;
                i + displacements[i.rem_euclid(p) as usize]
            }
        }
    }

    /// `P⁻¹ = Pᵀ`, in the same backend.
    pub fn inverse(&self) -> Self {
        match &self.backend {
            Backend::EventualShift { shift, lo, images } => {
                let new_lo = lo + shift;
                let mut inv = vec![0; images.len()];
                for (t, &img) in images.iter().enumerate() {
                    inv[(img - new_lo) as usize] = lo + t as i64;
                }
                Self::normalized(-shift, new_lo, inv)
            }
            Backend::Periodic { displacements } => {
                let p = displacements.len() as i64;
                let mut inv = vec![0; displacements.len()];
                for (r, &d) in displacements.iter().enumerate() {
                    inv[(r as i64 + d).rem_euclid(p) as usize] = -d;
                }
                Self {
                    backend: Backend::Periodic { displacements: inv },
                }
            }
        }
    }

    /// Matrix product `self · other`, i.e. `i ↦ other(self(i))`.
    ///
    /// Periodic factors compose with period `lcm(p, q)`. A periodic table with
    /// constant displacement is a pure shift and composes with anything;
    /// otherwise mixing backends fails with [`Error::IncompatibleBackends`].
    pub fn compose(&self, other: &Self) -> Result<Self> {
        use Backend::*;
        match (&self.backend, &other.backend) {
            (EventualShift { .. }, EventualShift { .. }) => Ok(self.compose_eventual(other)),
            (Periodic { displacements: a }, Periodic { displacements: b }) => {
                let period = a.len().lcm(&b.len());
                let displacements = (0..period as i64).map(|r| other.apply(self.apply(r)) - r).collect();
                Ok(Self {
                    backend: Periodic { displacements },
                })
            }
            _ => {
                if let (Some(a), Some(b)) = (self.to_eventual(), other.to_eventual()) {
                    Ok(a.compose_eventual(&b))
                } else if let (Some(a), Some(b)) = (self.to_periodic(), other.to_periodic()) {
                    a.compose(&b)
                } else {
                    Err(Error::IncompatibleBackends)
                }
            }
        }
    }

    fn to_eventual(&self) -> Option<Self> {
        match &self.backend {
            Backend::EventualShift { .. } => Some(self.clone()),
            Backend::Periodic { .. } => self.as_pure_shift().map(|s| Self::shift_power(-s)),
        }
    }

    fn to_periodic(&self) -> Option<Self> {
        match &self.backend {
            Backend::Periodic { .. } => Some(self.clone()),
            Backend::EventualShift { .. } => self.as_pure_shift().map(|s| Self {
                backend: Backend::Periodic { displacements: vec![s] },
            }),
        }
    }

    fn compose_eventual(&self, other: &Self) -> Self {
        let (Backend::EventualShift { shift: sa, .. }, Backend::EventualShift { shift: sb, .. }) =
            (&self.backend, &other.backend)
        else {
            unreachable!("compose_eventual called on periodic data");
        };
        let own = self.core_range();
        let pulled = {
            let r = other.core_range();
            (r.start - sa)..(r.end - sa)
        };
        let hull = [own, pulled]
            .into_iter()
            .filter(|r| !r.is_empty())
            .reduce(|a, b| a.start.min(b.start)..a.end.max(b.end))
            .unwrap_or(0..0);
        Self::from_window_fn(sa + sb, hull, |i| other.apply(self.apply(i)))
    }

    /// `w = sup |i - π(i)|`.
    pub fn bandwidth(&self) -> i64 {
        match &self.backend {
            Backend::EventualShift { shift, lo, images } => images
                .iter()
                .enumerate()
                .map(|(t, &img)| (img - lo - t as i64).abs())
                .fold(shift.abs(), i64::max),
            Backend::Periodic { displacements } => displacements.iter().map(|d| d.abs()).max().unwrap_or(0),
        }
    }

    /// Materializes `p_ij = [π(i) = j]` on `rows × cols`.
    pub fn window_matrix(&self, rows: Range<i64>, cols: Range<i64>) -> BinaryWindow {
        let n_rows = rows.end.saturating_sub(rows.start).max(0) as usize;
        let n_cols = cols.end.saturating_sub(cols.start).max(0) as usize;
        let mut entries = vec![false; n_rows * n_cols];
        for (r, i) in rows.clone().enumerate() {
            let j = self.apply(i);
            if cols.contains(&j) {
                entries[r * n_cols + (j - cols.start) as usize] = true;
            }
        }
        BinaryWindow {
            row_lo: rows.start,
            col_lo: cols.start,
            n_rows,
            n_cols,
            entries,
        }
    }

    /// Exact equality of the two maps on all of `Z`, decided from the backends.
    pub fn same_map(&self, other: &Self) -> bool {
        use Backend::*;
        match (&self.backend, &other.backend) {
            (
                EventualShift {
                    shift: a,
                    lo: la,
                    images: ia,
                },
                EventualShift {
                    shift: b,
                    lo: lb,
                    images: ib,
                },
            ) => a == b && ia == ib && (ia.is_empty() || la == lb),
            (Periodic { displacements: a }, Periodic { displacements: b }) => {
                let period = a.len().lcm(&b.len()) as i64;
                (0..period).all(|r| self.apply(r) == other.apply(r))
            }
            _ => match (self.as_pure_shift(), other.as_pure_shift()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }

    /// Pointwise agreement on a finite probe range.
    pub fn agrees_on(&self, other: &Self, probe: Range<i64>) -> bool {
        probe.into_iter().all(|i| self.apply(i) == other.apply(i))
    }
}

impl PartialEq for BandedPermutation {
    fn eq(&self, other: &Self) -> bool {
        self.same_map(other)
    }
}

impl Eq for BandedPermutation {}

impl fmt::Display for BandedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::EventualShift { shift, lo, images } => {
                write!(f, "EventualShift(s={shift}, lo={lo}, images={images:?})")
            }
            Backend::Periodic { displacements } => {
                write!(f, "Periodic(p={}, δ={displacements:?})", displacements.len())
            }
        }
    }
}

/// A finite window of a 0/1 matrix, indexed by absolute row and column numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryWindow {
    pub row_lo: i64,
    pub col_lo: i64,
    pub n_rows: usize,
    pub n_cols: usize,
    entries: Vec<bool>,
}

impl BinaryWindow {
    pub fn rows(&self) -> Range<i64> {
        self.row_lo..self.row_lo + self.n_rows as i64
    }

    pub fn cols(&self) -> Range<i64> {
        self.col_lo..self.col_lo + self.n_cols as i64
    }

    /// Entry at absolute position `(i, j)`; zero outside the window.
    pub fn get(&self, i: i64, j: i64) -> bool {
        if !self.rows().contains(&i) || !self.cols().contains(&j) {
            return false;
        }
        self.entries[(i - self.row_lo) as usize * self.n_cols + (j - self.col_lo) as usize]
    }

    pub fn count_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e).count()
    }

    pub fn row_counts(&self) -> Vec<usize> {
        self.entries
            .chunks(self.n_cols.max(1))
            .take(self.n_rows)
            .map(|row| row.iter().filter(|&&e| e).count())
            .collect()
    }

    pub fn col_counts(&self) -> Vec<usize> {
        (0..self.n_cols)
            .map(|c| (0..self.n_rows).filter(|&r| self.entries[r * self.n_cols + c]).count())
            .collect()
    }

    /// Rows as `0`/`1` bytes, top to bottom.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n_rows)
            .map(|r| {
                (0..self.n_cols)
                    .map(|c| self.entries[r * self.n_cols + c] as u8)
                    .collect()
            })
            .collect()
    }
}
