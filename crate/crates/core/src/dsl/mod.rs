//! Text format for rings, sphere bundles, torsion problems and expectations.
//!
//! ```text
//! ring G83 { gen y3:3; gen x4:4; gen x7:7; rel 2*y3; rel y3*x4; top 15; }
//! bundle W8overG83 { base G83; fiber S2; euler y3; }
//! problem g83 { n 8; betti [1,0,0,0,1]; mod2 {6: 1}; sphere_target W8; }
//! expect G83 { 0: Z, 3: Z_2 } cite "groups";
//! ```
//!
//! Names may be used before they are declared.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::graded_ring::{IntPolynomial, RingPresentation};

pub use lexer::{tokenize, Pos, Token};
pub use parser::{parse, parse_group, parse_in, parse_polynomial_in};
pub use printer::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Unresolved,
    NotHomogeneous,
    Duplicate,
    Invalid,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lexical => "lexical error",
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Unresolved => "unresolved name",
            ErrorKind::NotHomogeneous => "non-homogeneous relation",
            ErrorKind::Duplicate => "duplicate name",
            ErrorKind::Invalid => "invalid declaration",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {kind}: {message}")]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl DslError {
    pub fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        DslError { kind, pos, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub presentation: RingPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDecl {
    pub name: String,
    pub base: String,
    pub fiber_dim: u32,
    pub euler: IntPolynomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemDecl {
    pub name: String,
    pub n: u32,
    pub betti: Vec<usize>,
    pub mod2: BTreeMap<u32, usize>,
    pub sphere_target: Option<String>,
    pub so3_vanish: Vec<u32>,
    pub candidates: Option<Vec<AbelianGroup>>,
}

/// Expected groups by degree: graded groups of a ring, total groups of a
/// bundle, or the torsion groups `T_k` of a problem's unique solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectDecl {
    pub target: String,
    pub entries: BTreeMap<u32, AbelianGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Ring(RingDecl),
    Bundle(BundleDecl),
    Problem(ProblemDecl),
    Expect(ExpectDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub kind: DeclKind,
    pub cite: Option<String>,
    pub pos: Pos,
}

impl Declaration {
    /// Declared name; expectations are named by their target.
    pub fn name(&self) -> &str {
        match &self.kind {
            DeclKind::Ring(r) => &r.presentation.name,
            DeclKind::Bundle(b) => &b.name,
            DeclKind::Problem(p) => &p.name,
            DeclKind::Expect(e) => &e.target,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DslDocument {
    pub declarations: Vec<Declaration>,
}

impl DslDocument {
    pub fn ring(&self, name: &str) -> Option<&RingPresentation> {
        self.declarations.iter().find_map(|d| match &d.kind {
            DeclKind::Ring(r) if r.presentation.name == name => Some(&r.presentation),
            _ => None,
        })
    }

    pub fn bundle(&self, name: &str) -> Option<&BundleDecl> {
        self.declarations.iter().find_map(|d| match &d.kind {
            DeclKind::Bundle(b) if b.name == name => Some(b),
            _ => None,
        })
    }

    pub fn problem(&self, name: &str) -> Option<&ProblemDecl> {
        self.declarations.iter().find_map(|d| match &d.kind {
            DeclKind::Problem(p) if p.name == name => Some(p),
            _ => None,
        })
    }

    pub fn expectations(&self) -> impl Iterator<Item = (&ExpectDecl, &Declaration)> {
        self.declarations.iter().filter_map(|d| match &d.kind {
            DeclKind::Expect(e) => Some((e, d)),
            _ => None,
        })
    }

    /// Declarations of `other` appended after ours.
    pub fn merged(&self, other: &DslDocument) -> DslDocument {
        let mut declarations = self.declarations.clone();
        declarations.extend(other.declarations.iter().cloned());
        DslDocument { declarations }
    }
}
