//! Finitely presented graded rings over Z, evaluated one degree at a time.

mod poly;
mod presentation;
mod ring;

pub use poly::{IntPolynomial, Monomial};
pub use presentation::{GeneratorSpec, RingPresentation, SignRule};
pub use ring::{
    DegreeMapReport, DualityPairing, GradedComponent, GradedRing, RingClass, RingHomReport, TableRow,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegreeGenerator(String),
    #[error("monomial has the wrong number of exponents")]
    Arity,
    #[error("relation `{0}` is a nonzero constant")]
    ConstantRelation(String),
    #[error("`{poly}` is not homogeneous (term degrees {degrees:?})")]
    NotHomogeneous { poly: String, degrees: Vec<u32> },
    #[error("relation `{poly}` has degree {degree}, above twice the top degree {top}")]
    RelationDegree { poly: String, degree: u32, top: u32 },
    #[error("{0}")]
    Parse(String),
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: u32, top: u32 },
    #[error("classes belong to different rings")]
    MismatchedRings,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("image of `{generator}` must have degree {expected}, found {found:?}")]
    ImageDegree { generator: String, expected: u32, found: Vec<u32> },
    #[error("scan range {from}..={to} must start above the top degree {top} and be non-empty")]
    InvalidScanRange { from: u32, to: u32, top: u32 },
    #[error("top degree group is {0}, not Z")]
    TopNotInfiniteCyclic(String),
}
