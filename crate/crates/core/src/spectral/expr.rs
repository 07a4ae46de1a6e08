use std::fmt;

use serde::Serialize;

use crate::abelian::AbelianGroup;

/// A summand depending on an unknown torsion group `T_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unknown {
    T(u32),
    TensorZ2(u32),
    TorZ2(u32),
}

impl Unknown {
    fn ascii(&self) -> String {
        match self {
            Unknown::T(k) => format!("T_{k}"),
            Unknown::TensorZ2(k) => format!("T_{k}⊗Z_2"),
            Unknown::TorZ2(k) => format!("Tor(T_{k}, Z_2)"),
        }
    }

    fn latex(&self) -> String {
        match self {
            Unknown::T(k) => format!("T_{{{k}}}"),
            Unknown::TensorZ2(k) => format!("T_{{{k}}}\\otimes \\mathbb Z_2"),
            Unknown::TorZ2(k) => format!("Tor(T_{{{k}}},\\mathbb Z_2)"),
        }
    }
}

/// A known group plus symbolic summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GroupExpr {
    pub known: AbelianGroup,
    pub unknowns: Vec<Unknown>,
}

impl From<AbelianGroup> for GroupExpr {
    fn from(known: AbelianGroup) -> Self {
        GroupExpr { known, unknowns: Vec::new() }
    }
}

impl GroupExpr {
    pub fn known(g: AbelianGroup) -> Self {
        g.into()
    }

    pub fn with_unknown(mut self, u: Unknown) -> Self {
        self.unknowns.push(u);
        self.unknowns.sort();
        self
    }

    pub fn is_known(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_known() && self.known.is_trivial()
    }

    /// Free part, then unknown summands, then known torsion.
    fn pieces(&self, latex: bool) -> Vec<String> {
        let free = AbelianGroup::free(self.known.rank());
        let torsion = self.known.torsion_subgroup();
        let render = |g: &AbelianGroup| if latex { g.to_latex() } else { g.to_string() };
        let mut out = Vec::new();
        if !free.is_trivial() {
            out.push(render(&free));
        }
        out.extend(self.unknowns.iter().map(|u| if latex { u.latex() } else { u.ascii() }));
        if !torsion.is_trivial() {
            out.push(render(&torsion));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let p = self.pieces(true);
        if p.is_empty() {
            "0".into()
        } else {
            p.join("\\oplus ")
        }
    }

    pub fn to_ascii(&self) -> String {
        self.to_string().replace(" ⊕ ", " + ")
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.pieces(false);
        if p.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&p.join(" ⊕ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_order() {
        let e = GroupExpr::known("Z + Z_2".parse().unwrap()).with_unknown(Unknown::TensorZ2(6));
        assert_eq!(e.to_string(), "Z ⊕ T_6⊗Z_2 ⊕ Z_2");
        assert_eq!(e.to_latex(), "\\mathbb Z\\oplus T_{6}\\otimes \\mathbb Z_2\\oplus \\mathbb Z_2");
        assert_eq!(GroupExpr::default().to_string(), "0");
        assert_eq!(GroupExpr::default().with_unknown(Unknown::TorZ2(10)).to_string(), "Tor(T_10, Z_2)");
    }
}
