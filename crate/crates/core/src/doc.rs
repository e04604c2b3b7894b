//! JSON documents for permutations and factorizations.
//!
//! Field order is fixed by declaration order, so printing a parsed document
//! reproduces the canonical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{BlockFactorization, Tail, TranspositionLayers};
use crate::perm::{Backend, BandedPermutation};

/// A serialized [`BandedPermutation`], optionally named.
///
/// ```json
/// {"kind":"eventual_shift","s":-1,"lo":0,"images":[]}
/// {"kind":"periodic","period":2,"displacements":[1,-1],"name":"swap"}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PermDocument {
    EventualShift {
        s: i64,
        lo: i64,
        images: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Periodic {
        period: usize,
        displacements: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl PermDocument {
    pub fn from_permutation(p: &BandedPermutation, name: Option<String>) -> Self {
        match p.backend() {
            Backend::EventualShift { shift, lo, images } => PermDocument::EventualShift {
                s: *shift,
                lo: *lo,
                images: images.clone(),
                name,
            },
            Backend::Periodic { displacements } => PermDocument::Periodic {
                period: displacements.len(),
                displacements: displacements.clone(),
                name,
            },
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            PermDocument::EventualShift { name, .. } | PermDocument::Periodic { name, .. } => name.as_deref(),
        }
    }

    /// Validates and builds the permutation.
    pub fn to_permutation(&self) -> Result<BandedPermutation> {
        match self {
            PermDocument::EventualShift { s, lo, images, .. } => {
                BandedPermutation::eventual_shift(*s, *lo, images.clone())
            }
            PermDocument::Periodic {
                period, displacements, ..
            } => {
                if *period != displacements.len() {
                    return Err(Error::Schema(format!(
                        "period is {period} but {} displacements were given",
                        displacements.len()
                    )));
                }
                BandedPermutation::periodic(displacements.clone())
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

/// Serialized [`BlockFactorization`]. Block keys are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcDocument {
    pub w: i64,
    pub anchor: i64,
    pub b_blocks: BTreeMap<i64, Vec<usize>>,
    pub c_blocks: BTreeMap<i64, Vec<usize>>,
    pub tail: Tail,
}

impl From<&BlockFactorization> for BcDocument {
    fn from(f: &BlockFactorization) -> Self {
        Self {
            w: f.w,
            anchor: f.anchor,
            b_blocks: f.b_blocks.clone(),
            c_blocks: f.c_blocks.clone(),
            tail: f.tail,
        }
    }
}

impl BcDocument {
    pub fn to_factorization(&self) -> Result<BlockFactorization> {
        let f = BlockFactorization {
            w: self.w,
            anchor: self.anchor,
            b_blocks: self.b_blocks.clone(),
            c_blocks: self.c_blocks.clone(),
            tail: self.tail,
        };
        f.validate()?;
        Ok(f)
    }
}

/// Serialized [`TranspositionLayers`]; `period` is present exactly when the
/// tail is periodic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayersDocument {
    pub layers: Vec<Vec<i64>>,
    pub tail: Tail,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<i64>,
}

impl From<&TranspositionLayers> for LayersDocument {
    fn from(f: &TranspositionLayers) -> Self {
        Self {
            layers: f.layers.clone(),
            tail: if f.period.is_some() {
                Tail::Periodic
            } else {
                Tail::Identity
            },
            period: f.period,
        }
    }
}

impl LayersDocument {
    pub fn to_layers(&self) -> Result<TranspositionLayers> {
        match (self.tail, self.period) {
            (Tail::Identity, None) => {}
            (Tail::Periodic, Some(p)) if p >= 1 => {}
            _ => return Err(Error::Schema("period must be given exactly for a periodic tail".into())),
        }
        let layers = TranspositionLayers {
            layers: self.layers.clone(),
            period: self.period,
        };
        if !layers.layers_are_disjoint() {
            return Err(Error::InvalidFactorization(
                "a layer contains adjacent positions".into(),
            ));
        }
        Ok(layers)
    }
}
