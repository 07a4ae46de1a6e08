use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::records::{g103_presentation, g83_presentation};
use super::{get_space, instantiate_family, Family};
use crate::abelian::AbelianGroup;
use crate::dsl::{self, BundleDecl, DeclKind, Declaration, DslDocument, ExpectDecl, ProblemDecl, RingDecl};
use crate::graded_ring::RingPresentation;

fn decl(kind: DeclKind, cite: &str) -> Declaration {
    Declaration { kind, cite: Some(cite.to_string()), pos: Default::default() }
}

fn ring(p: RingPresentation, cite: &str) -> Declaration {
    decl(DeclKind::Ring(RingDecl { presentation: p }), cite)
}

fn bundle(name: String, base: &RingPresentation, fiber_dim: u32, euler: &str, cite: &str) -> Declaration {
    let euler = base.parse_polynomial(euler).expect("euler class parses");
    decl(DeclKind::Bundle(BundleDecl { name, base: base.name.clone(), fiber_dim, euler }), cite)
}

fn expect(target: &str, entries: BTreeMap<u32, AbelianGroup>, cite: &str) -> Declaration {
    decl(DeclKind::Expect(ExpectDecl { target: target.to_string(), entries }), cite)
}

fn dense(groups: &[AbelianGroup]) -> BTreeMap<u32, AbelianGroup> {
    groups.iter().cloned().enumerate().map(|(k, g)| (k as u32, g)).collect()
}

fn betti(id: &str) -> Vec<usize> {
    let table = get_space(id).expect("catalog entry").integral_groups.as_ref().expect("integral table");
    table.dense().expect("complete table").iter().map(AbelianGroup::rank).collect()
}

fn torsion(entries: &[(u32, &str)]) -> BTreeMap<u32, AbelianGroup> {
    entries.iter().map(|&(k, g)| (k, g.parse().expect("valid group"))).collect()
}

fn build() -> DslDocument {
    let mut ds = Vec::new();
    let g83 = g83_presentation();
    let g103 = g103_presentation();

    for n in 2..=8 {
        let base = instantiate_family(Family::OddG2, n).expect("supported");
        let name = format!("V{}_2", 2 * n + 1);
        ds.push(bundle(name.clone(), &base, 1, "x2", "circle bundle whose Euler class is x2"));
        ds.push(ring(base, "integral cohomology of the odd oriented Grassmannian of planes"));
        if n <= 6 {
            let table = get_space(&format!("V_{}_2", 2 * n + 1)).unwrap().integral_groups.as_ref().unwrap();
            ds.push(expect(&name, dense(&table.dense().unwrap()), "cohomology of the Stiefel manifold"));
        }
    }

    for n in 3..=8 {
        let base = instantiate_family(Family::LaiEven, n).expect("supported");
        let w = instantiate_family(Family::W21, n).expect("supported");
        let name = format!("W{}overG{}_2", 2 * n, 2 * n);
        ds.push(bundle(name.clone(), &base, 2 * n - 3, "Om", "sphere bundle with Euler class Om"));
        let free: BTreeMap<u32, AbelianGroup> = crate::graded_ring::GradedRing::new(w.clone())
            .hilbert_vector()
            .into_iter()
            .enumerate()
            .map(|(k, r)| (k as u32, AbelianGroup::free(r)))
            .collect();
        ds.push(ring(base, "integral cohomology of the even oriented Grassmannian of planes"));
        ds.push(ring(w.clone(), "integral cohomology of W^{2n}_{2,1}"));
        if n <= 5 {
            ds.push(expect(&name, free, "total space has the cohomology of W^{2n}_{2,1}"));
        }
    }

    ds.push(bundle("W8overG83".into(), &g83, 2, "y3", "sphere bundle of the canonical 3-plane bundle"));
    ds.push(bundle("W10overG103".into(), &g103, 2, "y3", "sphere bundle of the canonical 3-plane bundle"));

    let t83 = get_space("G~_8_3").unwrap().integral_groups.as_ref().unwrap();
    ds.push(ring(g83, "integral cohomology ring of G~_{8,3}"));
    ds.push(expect("G83", dense(&t83.dense().unwrap()), "integral cohomology groups of G~_{8,3}"));
    let t103 = get_space("G~_10_3").unwrap().integral_groups.as_ref().unwrap();
    ds.push(ring(g103, "integral cohomology ring of G~_{10,3}"));
    ds.push(expect("G103", dense(&t103.dense().unwrap()), "integral cohomology groups of G~_{10,3}"));

    ds.push(decl(
        DeclKind::Problem(ProblemDecl {
            name: "g83".into(),
            n: 8,
            betti: betti("G~_8_3"),
            mod2: [(6, 1)].into_iter().collect(),
            sphere_target: Some("W8".into()),
            so3_vanish: Vec::new(),
            candidates: None,
        }),
        "torsion of G~_{8,3}",
    ));
    ds.push(expect("g83", torsion(&[(4, "0"), (5, "Z_2"), (6, "0"), (7, "0")]), "torsion of G~_{8,3}"));
    ds.push(decl(
        DeclKind::Problem(ProblemDecl {
            name: "g103".into(),
            n: 10,
            betti: betti("G~_10_3"),
            mod2: [(8, 1), (9, 1), (10, 0)].into_iter().collect(),
            sphere_target: Some("W10".into()),
            // Checked in this order, following the argument for T_6 first.
            so3_vanish: vec![18, 19, 14],
            candidates: None,
        }),
        "torsion of G~_{10,3}",
    ));
    ds.push(expect(
        "g103",
        torsion(&[(4, "0"), (5, "Z_2"), (6, "Z_2"), (7, "0"), (8, "0"), (9, "0"), (10, "0")]),
        "torsion of G~_{10,3}",
    ));

    DslDocument { declarations: ds }
}

/// Catalog content as DSL text.
pub fn builtin_source() -> &'static str {
    static SOURCE: OnceLock<String> = OnceLock::new();
    SOURCE.get_or_init(|| dsl::print(&build()))
}

/// The parsed catalog document, with positions into [`builtin_source`].
pub fn builtin_document() -> &'static DslDocument {
    static DOC: OnceLock<DslDocument> = OnceLock::new();
    DOC.get_or_init(|| dsl::parse(builtin_source()).expect("catalog source parses"))
}
