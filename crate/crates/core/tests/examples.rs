//! Worked values for each operation, with hand-derived expectations.

use bandperm::factor::{
    crossing_diagnostics, crossing_lines, factor_bc, factor_layers, reconstruct_bc, reconstruct_layers,
    BlockFactorization, Tail, TranspositionLayers,
};
use bandperm::fixtures::fixture;
use bandperm::index::{
    center, default_split_range, find_split, minus_index, plus_index, rewire_split, split_at, window_r,
};
use bandperm::oracle::{rank_exact, truncation_counts, RationalMatrix};
use bandperm::{Backend, BandedPermutation, Error};
use num_rational::Ratio;

fn s() -> BandedPermutation {
    BandedPermutation::shift_power(1)
}

fn swap() -> BandedPermutation {
    BandedPermutation::periodic(vec![1, -1]).unwrap()
}

fn ones(p: &BandedPermutation, rows: std::ops::Range<i64>, cols: std::ops::Range<i64>) -> Vec<(i64, i64)> {
    let m = p.window_matrix(rows.clone(), cols.clone());
    rows.flat_map(|i| cols.clone().map(move |j| (i, j)))
        .filter(|&(i, j)| m.get(i, j))
        .collect()
}

#[test]
fn apply_values() {
    assert_eq!(s().apply(5), 4);
    assert_eq!(BandedPermutation::identity().apply(17), 17);
    assert_eq!((swap().apply(0), swap().apply(1)), (1, 0));
}

#[test]
fn inverse_values() {
    assert!(matches!(
        s().inverse().backend(),
        Backend::EventualShift { shift: 1, .. }
    ));
    assert!(BandedPermutation::identity().inverse().is_identity());
    assert_eq!(swap().inverse(), swap());
}

#[test]
fn compose_values() {
    assert!(s().compose(&s().inverse()).unwrap().is_identity());
    let s2 = s().compose(&s()).unwrap();
    assert!(matches!(s2.backend(), Backend::EventualShift { shift: -2, .. }));
    let q = fixture("rewire-demo").unwrap();
    assert_eq!(BandedPermutation::identity().compose(&q).unwrap(), q);

    // Row i of P·Q has its one in column π_Q(π_P(i)).
    let p = BandedPermutation::eventual_shift(0, 0, vec![1, 0]).unwrap();
    let q = BandedPermutation::eventual_shift(0, 1, vec![2, 1]).unwrap();
    let pq = p.compose(&q).unwrap();
    assert_eq!((pq.apply(0), pq.apply(1), pq.apply(2)), (2, 0, 1));

    let mixed = swap().compose(&fixture("rewire-demo").unwrap());
    assert!(matches!(mixed, Err(Error::IncompatibleBackends)));
}

#[test]
fn shift_power_values() {
    assert_eq!(BandedPermutation::shift_power(1), s());
    assert!(BandedPermutation::shift_power(0).is_identity());
    assert_eq!(BandedPermutation::shift_power(-2).apply(3), 5);
    assert_eq!(BandedPermutation::shift_power(-2).bandwidth(), 2);
}

#[test]
fn bandwidth_values() {
    assert_eq!(s().bandwidth(), 1);
    assert_eq!(BandedPermutation::identity().bandwidth(), 0);
    assert_eq!(fixture("rewire-demo").unwrap().bandwidth(), 3);
}

#[test]
fn window_matrix_values() {
    assert_eq!(ones(&s(), 0..3, 0..3), vec![(1, 0), (2, 1)]);
    assert_eq!(
        ones(&BandedPermutation::identity(), 2..5, 2..5),
        vec![(2, 2), (3, 3), (4, 4)]
    );
    assert_eq!(ones(&swap(), 0..4, 0..4), vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
}

#[test]
fn equality_values() {
    assert_eq!(s(), BandedPermutation::shift_power(1));
    assert_ne!(s(), BandedPermutation::identity());
    assert_eq!(
        BandedPermutation::periodic(vec![0, 0]).unwrap(),
        BandedPermutation::identity()
    );
}

#[test]
fn window_r_values() {
    let r = window_r(&s(), 0);
    assert_eq!((r.w, r.n), (1, 0));
    let centered = swap();
    for jstar in -5..5 {
        assert_eq!(window_r(&centered, jstar).n, 1);
    }
    let demo = window_r(&fixture("rewire-demo").unwrap(), 0);
    assert_eq!((demo.w, demo.n), (3, 4));
    assert!(demo.is_lower_triangular());
    let empty = window_r(&BandedPermutation::identity(), 3);
    assert_eq!((empty.w, empty.n), (0, 0));
}

#[test]
fn index_values() {
    assert_eq!(plus_index(&s()), -1);
    assert_eq!(minus_index(&s()), 1);
    assert_eq!(plus_index(&BandedPermutation::identity()), 0);
    for k in -6..=6 {
        assert_eq!(plus_index(&BandedPermutation::shift_power(k)), -k);
    }
    let shifted = fixture("intertwined-shifted").unwrap();
    assert_eq!(plus_index(&shifted), truncation_counts(&shifted, 0).index());
    assert_eq!(plus_index(&fixture("intertwined").unwrap()), 0);
    assert_eq!(minus_index(&swap()), 0);
}

#[test]
fn center_values() {
    let c = center(&s());
    assert_eq!(c.kappa, -1);
    assert!(c.centered.is_identity());
    let c = center(&BandedPermutation::identity());
    assert_eq!(c.kappa, 0);
    let p = BandedPermutation::periodic(vec![3, 1, 2]).unwrap();
    let c = center(&p);
    assert_eq!((c.kappa, c.centered.mean_displacement()), (2, 0));
}

#[test]
fn split_values() {
    for istar in -5..5 {
        assert_eq!(split_at(&s(), istar).map(|sp| sp.jstar), Some(istar - 1));
        assert_eq!(
            split_at(&BandedPermutation::identity(), istar).map(|sp| sp.jstar),
            Some(istar)
        );
    }
    let tw = fixture("intertwined").unwrap();
    assert!(find_split(&tw, default_split_range(&tw)).is_none());
}

#[test]
fn rewire_values() {
    assert!(rewire_split(&BandedPermutation::identity(), 4).is_identity());
    assert_eq!(rewire_split(&s(), 0), s());
    let demo = fixture("rewire-demo").unwrap();
    for jstar in [-2, 0, 3] {
        let r = window_r(&demo, jstar);
        let rewired = rewire_split(&demo, jstar);
        assert_eq!(split_at(&rewired, jstar + r.w - r.n).map(|sp| sp.jstar), Some(jstar));
        assert!((-30..30)
            .filter(|&i| !(jstar - 3..jstar + 3).contains(&i))
            .all(|i| rewired.apply(i) == demo.apply(i)));
    }
    assert_eq!(split_at(&rewire_split(&demo, 0), -1).map(|sp| sp.jstar), Some(0));
}

#[test]
fn truncation_and_rank_values() {
    let c = truncation_counts(&s(), 1);
    assert_eq!((c.alpha, c.beta, c.index()), (0, 1, -1));
    assert_eq!(truncation_counts(&s().inverse(), 0).index(), 1);
    assert_eq!(rank_exact(&RationalMatrix::identity(3)), 3);
    assert_eq!(rank_exact(&RationalMatrix::zeros(4, 2)), 0);
    let w = swap().window_matrix(0..5, 0..5);
    assert_eq!(rank_exact(&RationalMatrix::from_window(&w)), 4);
}

#[test]
fn bc_values() {
    let f = factor_bc(&swap(), Some(0)).unwrap();
    assert_eq!(f.b_blocks.get(&0), Some(&vec![1, 0]));
    assert_eq!(f.c_blocks.get(&0), Some(&vec![0, 1]));
    assert_eq!(reconstruct_bc(&f).unwrap(), swap());

    let trivial = BlockFactorization {
        w: 1,
        anchor: 0,
        b_blocks: Default::default(),
        c_blocks: Default::default(),
        tail: Tail::Identity,
    };
    assert!(reconstruct_bc(&trivial).unwrap().is_identity());
    assert!(matches!(factor_bc(&s(), None), Err(Error::NotCentered { kappa: -1 })));
}

// Centered, w = 2, period 4: 0 -> 2, 1 -> 0, 2 -> 3, 3 -> 1.
fn figure_like() -> BandedPermutation {
    BandedPermutation::periodic(vec![2, -1, 1, -2]).unwrap()
}

#[test]
fn every_block_square_has_w_ones() {
    let p = figure_like();
    assert_eq!((p.bandwidth(), plus_index(&p)), (2, 0));
    let f = factor_bc(&p, None).unwrap();
    for g in -3..3 {
        let rows = f.b_block_range(g);
        let left = f.c_block_range(g - 1);
        let right = f.c_block_range(g);
        assert_eq!(ones(&p, rows.clone(), left).len(), 2);
        assert_eq!(ones(&p, rows, right).len(), 2);
    }
    assert_eq!(reconstruct_bc(&f).unwrap(), p);
}

#[test]
fn layer_values() {
    assert_eq!(factor_layers(&BandedPermutation::identity()).unwrap().len(), 0);
    let f = factor_layers(&swap()).unwrap();
    assert_eq!(f.layers, vec![vec![0]]);
    assert_eq!(f.period, Some(2));
    let rev = BandedPermutation::periodic(vec![2, 0, -2]).unwrap();
    let f = factor_layers(&rev).unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(reconstruct_layers(&f).unwrap(), rev);

    let one = TranspositionLayers {
        layers: vec![vec![0]],
        period: None,
    };
    let p = reconstruct_layers(&one).unwrap();
    assert_eq!((p.apply(0), p.apply(1), p.apply(2)), (1, 0, 2));
}

#[test]
fn crossing_values() {
    assert!(crossing_diagnostics(&BandedPermutation::identity(), -5..5).is_empty());
    let single = BandedPermutation::eventual_shift(0, 3, vec![4, 3]).unwrap();
    let c = crossing_diagnostics(&single, 0..8);
    assert_eq!(c.len(), 1);
    assert_eq!((c[0].i, c[0].j, c[0].x), (3, 4, Ratio::new(1, 2)));

    let reversal = BandedPermutation::eventual_shift(0, 0, vec![2, 1, 0]).unwrap();
    let c = crossing_diagnostics(&reversal, 0..3);
    assert_eq!(c.len(), 3);
    assert!(c.iter().all(|x| x.x == Ratio::new(1, 2)));
    assert_eq!(crossing_lines(&c).get(&Ratio::new(1, 2)), Some(&3));
}
