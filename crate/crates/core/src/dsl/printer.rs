use std::fmt::Write as _;

use super::{DeclKind, DslDocument};
use crate::abelian::AbelianGroup;
use crate::graded_ring::SignRule;

fn group(g: &AbelianGroup) -> String {
    g.to_ascii()
}

fn quoted(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

/// Renders a document in canonical form; parsing the output gives back an
/// equal document.
pub fn print(doc: &DslDocument) -> String {
    let mut out = String::new();
    for (i, d) in doc.declarations.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match &d.kind {
            DeclKind::Ring(r) => {
                let p = &r.presentation;
                let _ = writeln!(out, "ring {} {{", p.name);
                for g in p.generators() {
                    let _ = writeln!(out, "  gen {}:{};", g.name, g.degree);
                }
                for rel in p.relations() {
                    let _ = writeln!(out, "  rel {};", p.format_polynomial(rel));
                }
                let _ = writeln!(out, "  top {};", p.top_degree());
                if p.sign_rule() == SignRule::Commutative {
                    out.push_str("  sign commutative;\n");
                }
                out.push('}');
            }
            DeclKind::Bundle(b) => {
                let names: Vec<String> = doc
                    .ring(&b.base)
                    .map(|r| r.names())
                    .unwrap_or_default();
                let _ = write!(
                    out,
                    "bundle {} {{\n  base {};\n  fiber S{};\n  euler {};\n}}",
                    b.name,
                    b.base,
                    b.fiber_dim,
                    b.euler.format(&names)
                );
            }
            DeclKind::Problem(p) => {
                let _ = writeln!(out, "problem {} {{", p.name);
                let _ = writeln!(out, "  n {};", p.n);
                let _ = writeln!(out, "  betti [{}];", join(&p.betti, usize::to_string));
                if !p.mod2.is_empty() {
                    let entries: Vec<String> = p.mod2.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                    let _ = writeln!(out, "  mod2 {{{}}};", entries.join(", "));
                }
                if let Some(t) = &p.sphere_target {
                    let _ = writeln!(out, "  sphere_target {t};");
                }
                if !p.so3_vanish.is_empty() {
                    let _ = writeln!(out, "  so3_vanish [{}];", join(&p.so3_vanish, u32::to_string));
                }
                if let Some(c) = &p.candidates {
                    let _ = writeln!(out, "  candidates [{}];", join(c, group));
                }
                out.push('}');
            }
            DeclKind::Expect(e) => {
                let entries: Vec<String> = e.entries.iter().map(|(k, g)| format!("{k}: {}", group(g))).collect();
                let _ = write!(out, "expect {} {{{}}}", e.target, entries.join(", "));
            }
        }
        if let Some(c) = &d.cite {
            let _ = write!(out, " cite {}", quoted(c));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn strip_positions(doc: &DslDocument) -> Vec<(DeclKind, Option<String>)> {
        doc.declarations.iter().map(|d| (d.kind.clone(), d.cite.clone())).collect()
    }

    #[test]
    fn round_trip() {
        let src = r#"
            ring R { gen a:1; gen b:2; rel 2*a; rel b^2 - 3*a*a*b; top 5; sign commutative; } cite "a \"quoted\" note"
            bundle B { base R; fiber S 1; euler b; }
            problem P { n 8; betti [1, 0]; mod2 {3: 1}; sphere_target R; candidates [0, Z_2 + Z_4]; }
            expect R { 0: Z, 1: Z_2 }
        "#;
        let doc = parse(src).unwrap();
        let printed = print(&doc);
        let again = parse(&printed).unwrap();
        assert_eq!(strip_positions(&doc), strip_positions(&again));
        assert_eq!(print(&again), printed);
    }
}
