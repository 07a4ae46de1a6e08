use super::*;
use crate::dsl;
use crate::graded_ring::GradedRing;

fn g(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

#[test]
fn stiefel_record() {
    let v = get_space("V_7_2").unwrap();
    let t = v.integral_groups.as_ref().unwrap();
    assert_eq!(t.dense().unwrap(), vec![g("Z"), g("0"), g("0"), g("0"), g("0"), g("0"), g("Z_2"), g("0"), g("0"), g("0"), g("0"), g("Z")]);
    assert_eq!(v.poincare_polynomial().unwrap(), "1 + t^11");
}

#[test]
fn vanishing_facts_are_partial() {
    let t = get_space("V_10_3_facts").unwrap().integral_groups.clone().unwrap();
    for k in [14, 18, 19] {
        assert_eq!(t.get(k), Some(AbelianGroup::trivial()));
    }
    assert_eq!(t.get(13), None);
    assert!(t.dense().is_none());
}

#[test]
fn so3_has_a_provenance_note() {
    let s = get_space("SO3").unwrap();
    assert_eq!(s.integral_groups.as_ref().unwrap().dense().unwrap(), vec![g("Z"), g("0"), g("Z_2"), g("Z")]);
    assert!(s.note.is_some());
}

#[test]
fn unknown_id() {
    assert_eq!(get_space("V_4_4"), Err(CatalogError::UnknownSpace("V_4_4".into())));
}

#[test]
fn every_record_has_data_and_round_trips() {
    for r in all_spaces() {
        assert!(r.has_data(), "{}", r.id);
        let json = serde_json::to_string(r).unwrap();
        let back: SpaceRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, r);
    }
}

#[test]
fn stored_presentations_match_stored_tables() {
    for id in ["G~_8_3", "G~_10_3"] {
        let r = get_space(id).unwrap();
        let ring = GradedRing::new(r.presentation.clone().unwrap());
        assert_eq!(ring.groups(), r.integral_groups.as_ref().unwrap().dense().unwrap(), "{id}");
        let ranks: BTreeMap<u32, usize> =
            ring.hilbert_vector().into_iter().enumerate().filter(|(_, r)| *r > 0).map(|(k, r)| (k as u32, r)).collect();
        assert_eq!(Some(ranks), r.poincare, "{id}");
    }
}

#[test]
fn family_poincare_data_matches_rings() {
    for r in all_spaces().iter().filter(|r| r.id.starts_with('W') || r.id.ends_with("_2") && r.id.starts_with("G~")) {
        let ring = GradedRing::new(r.presentation.clone().unwrap());
        let ranks: BTreeMap<u32, usize> =
            ring.hilbert_vector().into_iter().enumerate().filter(|(_, r)| *r > 0).map(|(k, r)| (k as u32, r)).collect();
        assert_eq!(Some(ranks), r.poincare, "{}", r.id);
    }
}

#[test]
fn odd_grassmannian_mod2_dims_agree_with_universal_coefficients() {
    // dim H^k(;Z_2) = (H^k ⊗ Z_2) + Tor(H^{k+1}, Z_2) from the integral ring.
    for n in 2..=8u32 {
        let r = get_space(&format!("G~_{}_2", 2 * n + 1)).unwrap();
        let ring = GradedRing::new(r.presentation.clone().unwrap());
        let top = 4 * n - 2;
        for k in 0..=top {
            let dim = ring.group(k).tensor_z2() + ring.group(k + 1).tor_z2();
            let stored = r.mod2_dims.get(&k).map_or(0, |e| e.dim);
            assert_eq!(dim, stored, "n={n} k={k}");
        }
    }
}

#[test]
fn g83_mod2_row_agrees_with_universal_coefficients() {
    let ring = GradedRing::new(g83_presentation());
    let row = &get_space("G~_8_3_mod2_row").unwrap().mod2_dims;
    for k in 0..=15 {
        assert_eq!(row[&k].dim, ring.group(k).tensor_z2() + ring.group(k + 1).tor_z2(), "k={k}");
    }
    assert_eq!(get_space("G~_8_3").unwrap().mod2_dims[&6].dim, 1);
}

#[test]
fn g103_mod2_facts_agree_with_the_ring() {
    let ring = GradedRing::new(g103_presentation());
    let facts = &get_space("G~_10_3").unwrap().mod2_dims;
    for (k, e) in facts {
        assert_eq!(e.dim, ring.group(*k).tensor_z2() + ring.group(k + 1).tor_z2(), "k={k}");
    }
    assert_eq!(facts[&12].generators, vec!["a12"]);
}

#[test]
fn builtin_document_round_trips() {
    let doc = builtin_document();
    let printed = dsl::print(doc);
    assert_eq!(printed, builtin_source());
    let again = dsl::parse(&printed).unwrap();
    assert_eq!(dsl::print(&again), printed);
    assert!(doc.ring("G83").is_some());
    assert!(doc.ring("W10").is_some());
    assert_eq!(doc.bundle("V11_2").unwrap().fiber_dim, 1);
    assert_eq!(doc.problem("g103").unwrap().so3_vanish, vec![18, 19, 14]);
    assert!(doc.declarations.iter().all(|d| d.cite.is_some()));
}

#[test]
fn family_names_parse() {
    assert_eq!("w21".parse::<Family>().unwrap(), Family::W21);
    assert!(matches!("odd".parse::<Family>(), Err(CatalogError::UnknownFamily(_))));
}
