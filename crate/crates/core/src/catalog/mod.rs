//! Built-in data for the spaces the engines are checked against: group
//! tables, ranks of free parts, mod-2 dimensions and ring presentations.

mod document;
mod families;
mod records;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::graded_ring::RingPresentation;

pub use document::{builtin_document, builtin_source};
pub use families::{instantiate_family, Family};
pub use records::{all_spaces, g103_presentation, g83_presentation, get_space, G103_RELATIONS, G83_RELATIONS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family '{0}' (expected lai_even, odd_g2 or w21)")]
    UnknownFamily(String),
    #[error("family {family} is not available for n = {n}")]
    Unsupported { family: &'static str, n: u32 },
    #[error("no catalog entry '{0}'")]
    UnknownSpace(String),
}

/// Integral cohomology by degree. With `dimension` set the table is complete
/// and unlisted degrees up to it are zero; otherwise only the listed degrees
/// are known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub dimension: Option<u32>,
    pub groups: BTreeMap<u32, AbelianGroup>,
    pub cite: String,
}

impl GroupTable {
    pub fn get(&self, k: u32) -> Option<AbelianGroup> {
        match (self.groups.get(&k), self.dimension) {
            (Some(g), _) => Some(g.clone()),
            (None, Some(_)) => Some(AbelianGroup::trivial()),
            (None, None) => None,
        }
    }

    /// The full list `H^0..=H^dimension`, if the table is complete.
    pub fn dense(&self) -> Option<Vec<AbelianGroup>> {
        let d = self.dimension?;
        Some((0..=d).map(|k| self.get(k).unwrap_or_default()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod2Entry {
    pub dim: usize,
    /// Named basis elements, when quoted.
    pub generators: Vec<String>,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceRecord {
    pub id: String,
    pub integral_groups: Option<GroupTable>,
    pub mod2_dims: BTreeMap<u32, Mod2Entry>,
    /// Rank of the free part by degree, zero where absent.
    pub poincare: Option<BTreeMap<u32, usize>>,
    pub presentation: Option<RingPresentation>,
    pub citation: String,
    /// Remarks on provenance, e.g. values derived here rather than quoted.
    pub note: Option<String>,
}

impl SpaceRecord {
    pub fn has_data(&self) -> bool {
        self.integral_groups.is_some()
            || !self.mod2_dims.is_empty()
            || self.poincare.is_some()
            || self.presentation.is_some()
    }

    /// `sum rank_k t^k` written out, e.g. `1 + t^4 + t^7`.
    pub fn poincare_polynomial(&self) -> Option<String> {
        let p = self.poincare.as_ref()?;
        let terms: Vec<String> = p
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&k, &r)| {
                let coeff = if r == 1 && k > 0 { String::new() } else { r.to_string() };
                match k {
                    0 => coeff,
                    1 => format!("{coeff}t"),
                    _ => format!("{coeff}t^{k}"),
                }
            })
            .collect();
        Some(if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}

#[cfg(test)]
mod tests;
