//! Machine-readable summaries of the index, centering and factorization
//! pipelines. Field order of every struct is its JSON order.

use serde::{Deserialize, Serialize};

use crate::doc::{BcDocument, LayersDocument, PermDocument};
use crate::error::Result;
use crate::factor::{factor_bc, factor_layers, reconstruct_bc, reconstruct_layers};
use crate::index::{center, plus_index, plus_index_at, window_r};
use crate::perm::BandedPermutation;

/// Where the main diagonal lies and what centering produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub w: i64,
    pub jstar: i64,
    pub n: i64,
    pub kappa: i64,
    pub minus_index: i64,
    /// The main diagonal is this many diagonals above the zeroth one.
    pub main_diagonal_offset: i64,
    pub centered: PermDocument,
}

impl Report {
    pub fn new(p: &BandedPermutation, jstar: i64) -> Self {
        let r = window_r(p, jstar);
        let c = center(p);
        Self {
            w: r.w,
            jstar,
            n: r.n,
            kappa: r.kappa(),
            minus_index: -r.kappa(),
            main_diagonal_offset: r.kappa(),
            centered: PermDocument::from_permutation(&c.centered, None),
        }
    }

    /// `minus = -plus` and the centered document re-indexes to zero.
    pub fn is_consistent(&self) -> bool {
        let recentered = self.centered.to_permutation().map(|c| plus_index(&c));
        self.minus_index == -self.kappa
            && self.main_diagonal_offset == self.kappa
            && self.n - self.w == self.kappa
            && matches!(recentered, Ok(0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub jstar: i64,
    pub n: i64,
    pub kappa: i64,
}

/// The window count at every `jstar` of a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub w: i64,
    pub constant: bool,
    pub entries: Vec<SweepEntry>,
}

impl Sweep {
    pub fn new(p: &BandedPermutation, jstars: std::ops::Range<i64>) -> Self {
        let entries: Vec<SweepEntry> = jstars
            .map(|jstar| {
                let r = window_r(p, jstar);
                SweepEntry {
                    jstar,
                    n: r.n,
                    kappa: r.kappa(),
                }
            })
            .collect();
        let constant = entries.windows(2).all(|e| e[0].kappa == e[1].kappa);
        Self {
            w: p.bandwidth(),
            constant,
            entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub kappa: i64,
    pub centered: PermDocument,
    pub centered_kappa: i64,
}

impl CenterReport {
    pub fn new(p: &BandedPermutation) -> Self {
        let c = center(p);
        Self {
            kappa: c.kappa,
            centered_kappa: plus_index_at(&c.centered, 0),
            centered: PermDocument::from_permutation(&c.centered, None),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorMode {
    Bc,
    Layers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorDocument {
    Bc(BcDocument),
    Layers(LayersDocument),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reconstruction {
    Ok,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub mode: FactorMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    /// Shift applied before factoring; zero for centered input.
    pub kappa: i64,
    pub w: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_layers: Option<usize>,
    pub factorization: FactorDocument,
    pub reconstruction: Reconstruction,
}

impl FactorReport {
    /// Centers the input if needed (recording a warning), factors it and
    /// checks the product against the centered permutation.
    pub fn new(p: &BandedPermutation, mode: FactorMode) -> Result<Self> {
        let c = center(p);
        let warning = (c.kappa != 0).then(|| format!("input has plus-index {}; factoring S^{} P", c.kappa, c.kappa));
        let p_c = c.centered;
        let (factorization, product, n_layers) = match mode {
            FactorMode::Bc => {
                let f = factor_bc(&p_c, None)?;
                (FactorDocument::Bc(BcDocument::from(&f)), reconstruct_bc(&f)?, None)
            }
            FactorMode::Layers => {
                let f = factor_layers(&p_c)?;
                (
                    FactorDocument::Layers(LayersDocument::from(&f)),
                    reconstruct_layers(&f)?,
                    Some(f.len()),
                )
            }
        };
        Ok(Self {
            mode,
            warning,
            kappa: c.kappa,
            w: p_c.bandwidth(),
            n_layers,
            factorization,
            reconstruction: if product == p_c {
                Reconstruction::Ok
            } else {
                Reconstruction::Mismatch
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn shift_report() {
        let r = Report::new(&fixture("shift").unwrap(), 0);
        assert_eq!((r.w, r.n, r.kappa, r.minus_index), (1, 0, -1, 1));
        assert!(r.is_consistent());
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"w":1,"jstar":0,"n":0,"kappa":-1,"#), "{text}");
    }

    #[test]
    fn sweep_is_constant() {
        let s = Sweep::new(&fixture("rewire-demo").unwrap(), -10..10);
        assert!(s.constant);
        assert!(s.entries.iter().all(|e| e.kappa == 1));
    }

    #[test]
    fn factor_report_auto_centers() {
        let f = FactorReport::new(&fixture("intertwined-shifted").unwrap(), FactorMode::Layers).unwrap();
        assert_eq!(f.kappa, 1);
        assert!(f.warning.is_some());
        assert_eq!(f.reconstruction, Reconstruction::Ok);
        let swap = BandedPermutation::periodic(vec![1, -1]).unwrap();
        let f = FactorReport::new(&swap, FactorMode::Layers).unwrap();
        assert_eq!((f.n_layers, f.warning.as_deref()), (Some(1), None));
    }
}
