//! Named example permutations.
//!
//! `intertwined`, `intertwined-shifted` and `rewire-demo` are reconstructions
//! with the stated properties; their exact arrow pictures are not recoverable
//! from a textual description.

use crate::doc::PermDocument;
use crate::perm::BandedPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub reconstructed: bool,
    pub description: &'static str,
}

pub const FIXTURES: [Fixture; 5] = [
    Fixture {
        name: "shift",
        reconstructed: false,
        description: "forward shift S, π(i) = i - 1, plus-index -1",
    },
    Fixture {
        name: "identity",
        reconstructed: false,
        description: "identity, bandwidth 0",
    },
    Fixture {
        name: "intertwined",
        reconstructed: true,
        description: "symmetric involution exchanging 2m and 2m + 3; w = 3, no split, plus-index 0",
    },
    Fixture {
        name: "intertwined-shifted",
        reconstructed: true,
        description: "intertwined followed by i -> i + 1; w = 4, no split, plus-index 1",
    },
    Fixture {
        name: "rewire-demo",
        reconstructed: true,
        description: "finite perturbation of S⁻¹ with w = 3 and n = 4 ones in the counting window at j* = 0",
    },
];

pub fn fixture(name: &str) -> Option<BandedPermutation> {
    let p = match name {
        "shift" => BandedPermutation::shift_power(1),
        "identity" => BandedPermutation::identity(),
        "intertwined" => BandedPermutation::periodic(vec![3, -3]).unwrap(),
        "intertwined-shifted" => BandedPermutation::periodic(vec![4, -2]).unwrap(),
        "rewire-demo" => BandedPermutation::eventual_shift(1, -4, vec![-1, 0, -3, 2, -2, 4, 1, 3]).unwrap(),
        _ => return None,
    };
    Some(p)
}

/// The fixture as a named document; reconstructed fixtures say so in the name.
pub fn fixture_document(name: &str) -> Option<PermDocument> {
    let meta = FIXTURES.iter().find(|f| f.name == name)?;
    let label = if meta.reconstructed {
        format!("{} (reconstructed)", meta.name)
    } else {
        meta.name.to_string()
    };
    Some(PermDocument::from_permutation(&fixture(name)?, Some(label)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{default_split_range, find_split, plus_index, window_r};

    #[test]
    fn every_listed_fixture_exists() {
        for f in FIXTURES {
            assert!(fixture(f.name).is_some(), "{}", f.name);
            assert!(fixture_document(f.name).is_some());
        }
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn fixture_values() {
        let s = fixture("shift").unwrap();
        assert_eq!((s.bandwidth(), plus_index(&s)), (1, -1));

        let tw = fixture("intertwined").unwrap();
        assert_eq!(tw, tw.inverse());
        assert_eq!((tw.bandwidth(), plus_index(&tw)), (3, 0));
        assert!(find_split(&tw, default_split_range(&tw)).is_none());

        let shifted = fixture("intertwined-shifted").unwrap();
        assert!((-30..30).all(|i| shifted.apply(i) == tw.apply(i) + 1));
        assert_eq!(plus_index(&shifted), 1);
        assert!(find_split(&shifted, default_split_range(&shifted)).is_none());

        let demo = fixture("rewire-demo").unwrap();
        let r = window_r(&demo, 0);
        assert_eq!((r.w, r.n, r.kappa()), (3, 4, 1));
    }
}
