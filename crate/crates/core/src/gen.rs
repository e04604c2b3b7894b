//! Seeded random instances for property checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::RationalMatrix;
use crate::perm::BandedPermutation;

/// Reproducible source of banded permutations and rational matrices.
#[derive(Debug, Clone)]
pub struct InstanceGen {
    rng: ChaCha8Rng,
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Eventual shift with bandwidth at most `max_w` and window at most `max_window`.
    pub fn eventual_shift(&mut self, max_w: i64, max_window: usize) -> BandedPermutation {
        self.eventual_shift_where(max_w, max_window, -max_w..=max_w, |_, _| true)
    }

    /// Eventual shift with `π(i) <= i` everywhere (a lower triangular matrix).
    pub fn lower_triangular(&mut self, max_w: i64, max_window: usize) -> BandedPermutation {
        self.eventual_shift_where(max_w, max_window, -max_w..=0, |i, img| img <= i)
    }

    fn eventual_shift_where(
        &mut self,
        max_w: i64,
        max_window: usize,
        shifts: std::ops::RangeInclusive<i64>,
        allowed: impl Fn(i64, i64) -> bool,
    ) -> BandedPermutation {
        let w = self.rng.random_range(1..=max_w.max(1));
        let shift = self.rng.random_range(*shifts.start().max(&-w)..=*shifts.end().min(&w));
        let m = self.rng.random_range(0..=max_window);
        let lo = self.rng.random_range(-20..=20);
        let mut images: Vec<i64> = (0..m as i64).map(|t| lo + t + shift).collect();
        let ok = |t: usize, img: i64| (img - lo - t as i64).abs() <= w && allowed(lo + t as i64, img);
        for _ in 0..4 * m * w as usize {
            let t = self.rng.random_range(0..m.max(1));
            let u = t + self.rng.random_range(1..=2 * w as usize);
            if u >= m {
                continue;
            }
            if ok(t, images[u]) && ok(u, images[t]) {
                images.swap(t, u);
            }
        }
        BandedPermutation::eventual_shift(shift, lo, images).expect("swaps preserve bijectivity")
    }

    /// Periodic permutation with bandwidth at most `max_w` and period at most `max_period`.
    pub fn periodic(&mut self, max_w: i64, max_period: usize) -> BandedPermutation {
        let w = self.rng.random_range(1..=max_w.max(1));
        let p = self.rng.random_range(1..=max_period.max(1));
        let mean = self.rng.random_range(-w..=w);
        self.periodic_with(w, p, mean)
    }

    /// Periodic permutation of period `p` and mean displacement `mean`,
    /// scrambled by translate-invariant transpositions within bandwidth `w`.
    pub fn periodic_with(&mut self, w: i64, p: usize, mean: i64) -> BandedPermutation {
        let period = p as i64;
        let mut images: Vec<i64> = (0..period).map(|r| r + mean).collect();
        for _ in 0..4 * p * w as usize {
            let t = self.rng.random_range(0..period);
            let u = t + self.rng.random_range(1..=2 * w);
            if (u - t) % period == 0 {
                continue;
            }
            let (ur, uq) = (u.rem_euclid(period), u.div_euclid(period));
            // Exchange π(t) and π(u), together with all translates by the period.
            let new_t = images[ur as usize] + uq * period;
            let new_u = images[t as usize] - uq * period;
            if (new_t - t).abs() <= w && (new_u - ur).abs() <= w {
                images[t as usize] = new_t;
                images[ur as usize] = new_u;
            }
        }
        let displacements = images.iter().enumerate().map(|(r, &img)| img - r as i64).collect();
        BandedPermutation::periodic(displacements).expect("transpositions preserve bijectivity")
    }

    /// Either backend, chosen uniformly.
    pub fn permutation(&mut self, max_w: i64, max_window: usize, max_period: usize) -> BandedPermutation {
        if self.rng.random_bool(0.5) {
            self.eventual_shift(max_w, max_window)
        } else {
            self.periodic(max_w, max_period)
        }
    }

    /// Two permutations whose backends compose: both eventual shifts, or two
    /// periodic tables (periods kept small so the lcm stays manageable).
    pub fn compatible_pair(&mut self, max_w: i64) -> (BandedPermutation, BandedPermutation) {
        match self.rng.random_range(0..3) {
            0 => (self.eventual_shift(max_w, 32), self.eventual_shift(max_w, 32)),
            1 => (self.periodic(max_w, 12), self.periodic(max_w, 12)),
            _ => {
                let k = self.rng.random_range(-max_w..=max_w);
                let shift = BandedPermutation::shift_power(k);
                let other = self.permutation(max_w, 32, 12);
                if self.rng.random_bool(0.5) {
                    (shift, other)
                } else {
                    (other, shift)
                }
            }
        }
    }

    /// Random square matrix with small rational entries; may be singular.
    pub fn rational_matrix(&mut self, n: usize) -> RationalMatrix {
        RationalMatrix::from_fn(n, n, |_, _| self.small_rational(0.3))
    }

    /// Invertible `n x n` matrix drawn from a mix of structures: dense,
    /// banded plus a low-rank term, and inverses of such matrices, so that
    /// corner-rank conditions come out both true and false.
    pub fn invertible_rational_matrix(&mut self, n: usize) -> RationalMatrix {
        loop {
            let m = match self.rng.random_range(0..4) {
                0 => self.rational_matrix(n),
                1 | 2 => self.banded_plus_low_rank(n),
                _ => match self.banded_plus_low_rank(n).inverse() {
                    Ok(inv) => inv,
                    Err(_) => continue,
                },
            };
            if m.rank() == n {
                return m;
            }
        }
    }

    // Zero above superdiagonal `b`, plus a sum of `r` rank-one terms.
    fn banded_plus_low_rank(&mut self, n: usize) -> RationalMatrix {
        let b = self.rng.random_range(0..3usize);
        let r = self.rng.random_range(0..3usize);
        let mut m = RationalMatrix::from_fn(n, n, |i, j| {
            if j <= i + b {
                self.small_rational(0.2)
            } else {
                BigRational::zero()
            }
        });
        for _ in 0..r {
            let u: Vec<BigRational> = (0..n).map(|_| self.small_rational(0.3)).collect();
            let v: Vec<BigRational> = (0..n).map(|_| self.small_rational(0.3)).collect();
            for (i, ui) in u.iter().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    let value = m.get(i, j) + ui * vj;
                    m.set(i, j, value);
                }
            }
        }
        m
    }

    fn small_rational(&mut self, zero_probability: f64) -> BigRational {
        if self.rng.random_bool(zero_probability) {
            return BigRational::zero();
        }
        let num = self.rng.random_range(-5i64..=5);
        let den = self.rng.random_range(1i64..=4);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}
