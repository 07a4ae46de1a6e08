use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::{instantiate_family, CatalogError, Family, GroupTable, Mod2Entry, SpaceRecord};
use crate::abelian::AbelianGroup;
use crate::graded_ring::RingPresentation;

pub const G83_RELATIONS: [&str; 5] = ["2*y3", "y3*x4", "y3^3", "x4^3", "x7^2"];

pub const G103_RELATIONS: [&str; 12] = [
    "2*y3",
    "y3^3",
    "y3^2*x4",
    "y3*x4^2",
    "x4^3 - 2*x12",
    "y3*x9",
    "x4*x9 - 2*x13",
    "y3*x13 - x4*x12",
    "x9^2",
    "y3^2*x12",
    "x4^2*x12",
    "x9*x12 - x4^2*x13",
];

/// Integral cohomology ring of the oriented Grassmannian of 3-planes in `R^8`.
pub fn g83_presentation() -> RingPresentation {
    RingPresentation::parse("G83", &[("y3", 3), ("x4", 4), ("x7", 7)], &G83_RELATIONS, 15)
        .expect("well formed")
}

/// Integral cohomology ring of the oriented Grassmannian of 3-planes in `R^10`.
pub fn g103_presentation() -> RingPresentation {
    RingPresentation::parse(
        "G103",
        &[("y3", 3), ("x4", 4), ("x9", 9), ("x12", 12), ("x13", 13)],
        &G103_RELATIONS,
        21,
    )
    .expect("well formed")
}

fn table(dimension: Option<u32>, entries: &[(u32, &str)], cite: &str) -> GroupTable {
    let groups = entries.iter().map(|&(k, g)| (k, g.parse::<AbelianGroup>().expect("valid group"))).collect();
    GroupTable { dimension, groups, cite: cite.to_string() }
}

/// Table from a dense list, dropping zeros.
fn dense_table(list: &str, cite: &str) -> GroupTable {
    let groups: BTreeMap<u32, AbelianGroup> = list
        .split(',')
        .enumerate()
        .map(|(k, g)| (k as u32, g.trim().parse::<AbelianGroup>().expect("valid group")))
        .filter(|(_, g)| !g.is_trivial())
        .collect();
    let dimension = Some(list.split(',').count() as u32 - 1);
    GroupTable { dimension, groups, cite: cite.to_string() }
}

fn ranks(degrees: impl IntoIterator<Item = u32>) -> Option<BTreeMap<u32, usize>> {
    Some(degrees.into_iter().map(|k| (k, 1)).collect())
}

fn mod2(entries: &[(u32, usize, &[&str])], cite: &str) -> BTreeMap<u32, Mod2Entry> {
    entries
        .iter()
        .map(|&(k, dim, gens)| {
            let generators = gens.iter().map(|s| s.to_string()).collect();
            (k, Mod2Entry { dim, generators, cite: cite.to_string() })
        })
        .collect()
}

fn blank(id: String, citation: &str) -> SpaceRecord {
    SpaceRecord {
        id,
        integral_groups: None,
        mod2_dims: BTreeMap::new(),
        poincare: None,
        presentation: None,
        citation: citation.to_string(),
        note: None,
    }
}

fn build() -> Vec<SpaceRecord> {
    let mut out = Vec::new();

    for n in 2..=6u32 {
        let mut r = blank(format!("V_{}_2", 2 * n + 1), "Stiefel manifold of 2-frames in odd dimension");
        r.integral_groups = Some(table(
            Some(4 * n - 1),
            &[(0, "Z"), (2 * n, "Z_2"), (4 * n - 1, "Z")],
            "Stiefel manifold cohomology: Z, then Z_2 in degree 2n, then Z in the top degree",
        ));
        r.poincare = ranks([0, 4 * n - 1]);
        out.push(r);
    }

    let mut v103 = blank("V_10_3_facts".into(), "Stiefel manifold of 3-frames in R^10, vanishing degrees");
    v103.integral_groups =
        Some(table(None, &[(14, "0"), (18, "0"), (19, "0")], "vanishing of H^14, H^18 and H^19 of V_{10,3}"));
    out.push(v103);

    let mut so3 = blank("SO3".into(), "rotation group of R^3");
    so3.integral_groups = Some(table(Some(3), &[(0, "Z"), (2, "Z_2"), (3, "Z")], "integral cohomology of SO(3)"));
    so3.poincare = ranks([0, 3]);
    so3.note = Some("standard fact used for the three rows of the SO(3) pages; not quoted as data".into());
    out.push(so3);

    let mut g83 = blank("G~_8_3".into(), "oriented Grassmannian of 3-planes in R^8");
    g83.integral_groups = Some(dense_table(
        "Z,0,0,Z_2,Z,0,Z_2,Z,Z,0,Z_2,Z,0,Z_2,0,Z",
        "integral cohomology groups of the oriented Grassmannian G~_{8,3}",
    ));
    g83.poincare = ranks([0, 4, 7, 8, 11, 15]);
    g83.mod2_dims = mod2(&[(6, 1, &[])], "H^6(G~_{8,3}; Z_2) = Z_2");
    g83.presentation = Some(g83_presentation());
    out.push(g83);

    // Full mod-2 row once the torsion is known; every dimension is 1 except
    // in degrees 1 and 14.
    let mut g83_row = blank("G~_8_3_mod2_row".into(), "oriented Grassmannian of 3-planes in R^8, mod 2");
    let row: Vec<(u32, usize, &[&str])> = (0..=15).map(|k| (k, usize::from(k != 1 && k != 14), &[][..])).collect();
    g83_row.mod2_dims = mod2(&row, "derived from the integral groups by universal coefficients");
    g83_row.note = Some("derived convenience row, not solver input".into());
    out.push(g83_row);

    let mut g103 = blank("G~_10_3".into(), "oriented Grassmannian of 3-planes in R^10");
    g103.integral_groups = Some(dense_table(
        "Z,0,0,Z_2,Z,0,Z_2,Z_2,Z,Z,0,0,Z,Z,0,Z_2,Z_2,Z,0,Z_2,0,Z",
        "integral cohomology groups of the oriented Grassmannian G~_{10,3}",
    ));
    g103.poincare = ranks([0, 4, 8, 9, 12, 13, 17, 21]);
    g103.mod2_dims = mod2(
        &[
            (4, 1, &["w2^2"]),
            (8, 1, &[]),
            (9, 1, &[]),
            (10, 0, &[]),
            (12, 1, &["a12"]),
            (16, 1, &["w2^2*a12"]),
        ],
        "mod-2 cohomology of G~_{10,3} in low degrees",
    );
    g103.presentation = Some(g103_presentation());
    out.push(g103);

    for n in 3..=8u32 {
        let mut w = blank(format!("W{}_2_1", 2 * n), "sphere bundle of the canonical bundle over G~_{2n,2}");
        w.presentation = Some(instantiate_family(Family::W21, n).expect("supported"));
        // Even degrees below 4n-4 and odd degrees from 2n-1 up to the top.
        w.poincare = ranks((0..=2 * n - 3).map(|i| 2 * i).chain((n..=3 * n - 3).map(|i| 2 * i - 1)));
        out.push(w);
    }

    for n in 2..=8u32 {
        let mut even = blank(format!("G~_{}_2", 2 * n), "oriented Grassmannian of planes in even dimension");
        even.presentation = Some(instantiate_family(Family::LaiEven, n).expect("supported"));
        even.poincare = Some(
            (0..=2 * n - 2)
                .map(|i| (2 * i, if 2 * i == 2 * n - 2 { 2 } else { 1 }))
                .collect(),
        );
        out.push(even);

        let mut odd = blank(format!("G~_{}_2", 2 * n + 1), "oriented Grassmannian of planes in odd dimension");
        odd.presentation = Some(instantiate_family(Family::OddG2, n).expect("supported"));
        odd.poincare = ranks((0..2 * n).map(|i| 2 * i));
        let even_degrees: Vec<(u32, usize, &[&str])> = (0..2 * n).map(|i| (2 * i, 1, &[][..])).collect();
        odd.mod2_dims = mod2(&even_degrees, "mod-2 cohomology Z_2[w2]/(w2^n) tensor an exterior algebra on a_{2n}");
        out.push(odd);
    }

    out
}

pub fn all_spaces() -> &'static [SpaceRecord] {
    static RECORDS: OnceLock<Vec<SpaceRecord>> = OnceLock::new();
    RECORDS.get_or_init(build)
}

pub fn get_space(id: &str) -> Result<&'static SpaceRecord, CatalogError> {
    all_spaces().iter().find(|r| r.id == id).ok_or_else(|| CatalogError::UnknownSpace(id.to_string()))
}
