//! Spectral sequence pages for sphere bundles and `SO(3)` bundles.

mod expr;
mod gysin;
mod page;
mod so3;

pub use expr::{GroupExpr, Unknown};
pub use gysin::{gysin_total, GysinResult, SphereBundleSpec, TotalDegree};
pub use page::{render_page, BigradedEntry, BigradedPage, DifferentialRecord, PageFormat};
pub use so3::{mod2_row_entry, so3_cohomology, so3_e2_page};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("euler class must have degree {expected}, found terms in degrees {found:?}")]
    EulerDegree { expected: u32, found: Vec<u32> },
    #[error("window {from}..={to} is outside the known degrees 0..{available}")]
    Window { from: u32, to: u32, available: usize },
}

#[cfg(test)]
mod tests;
