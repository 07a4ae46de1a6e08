use super::*;
use crate::abelian::AbelianGroup;
use crate::catalog::{g103_presentation, g83_presentation, instantiate_family, Family};
use crate::graded_ring::{GradedRing, IntPolynomial, RingPresentation};

fn g(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn spec(base: RingPresentation, m: u32, euler: &str) -> SphereBundleSpec {
    let e = base.parse_polynomial(euler).unwrap();
    SphereBundleSpec::new(base, m, e).unwrap()
}

#[test]
fn stiefel_manifolds_from_circle_bundles() {
    for n in 2..=6u32 {
        let res = gysin_total(&spec(instantiate_family(Family::OddG2, n).unwrap(), 1, "x2"));
        let groups: Vec<AbelianGroup> = res.groups().into_iter().map(Option::unwrap).collect();
        let nonzero: Vec<(usize, AbelianGroup)> =
            groups.into_iter().enumerate().filter(|(_, g)| !g.is_trivial()).collect();
        assert_eq!(
            nonzero,
            vec![(0, g("Z")), ((2 * n) as usize, g("Z_2")), ((4 * n - 1) as usize, g("Z"))],
            "n={n}"
        );
        assert!(res.ambiguous_degrees().is_empty());
    }
}

#[test]
fn table_one_has_the_times_two_arrow() {
    let res = gysin_total(&spec(instantiate_family(Family::OddG2, 3).unwrap(), 1, "x2"));
    let text = render_page(&res.e2, PageFormat::Text);
    assert!(text.contains("d_2: (4,1) -> (6,0) ·2 mono"), "{text}");
    for p in (0..=10).step_by(2) {
        assert_eq!(res.e2.get(p, 1).unwrap().group, GroupExpr::from(g("Z")));
    }
    let arrows: Vec<_> = res.e2.differentials.iter().filter(|d| d.note.starts_with("·2")).collect();
    assert_eq!(arrows.len(), 1);
}

#[test]
fn lai_bundles_agree_with_w_rings() {
    for n in 3..=5u32 {
        let res = gysin_total(&spec(instantiate_family(Family::LaiEven, n).unwrap(), 2 * n - 3, "Om"));
        assert!(res.ambiguous_degrees().is_empty(), "n={n}");
        let w = GradedRing::new(instantiate_family(Family::W21, n).unwrap());
        let expected: Vec<AbelianGroup> = w.hilbert_vector().into_iter().map(AbelianGroup::free).collect();
        let total: Vec<AbelianGroup> = res.groups().into_iter().map(Option::unwrap).collect();
        assert_eq!(total, expected, "n={n}");
    }
}

#[test]
fn w8_degrees_from_lai_ring() {
    let res = gysin_total(&spec(instantiate_family(Family::LaiEven, 4).unwrap(), 5, "Om"));
    let degrees: Vec<usize> =
        res.groups().iter().enumerate().filter(|(_, x)| x.as_ref().unwrap() == &g("Z")).map(|(k, _)| k).collect();
    assert_eq!(degrees, vec![0, 2, 4, 6, 7, 8, 9, 10, 11, 13, 15, 17]);
}

#[test]
fn zero_euler_class_splits() {
    for base in [g83_presentation(), g103_presentation(), instantiate_family(Family::OddG2, 4).unwrap()] {
        let ring = GradedRing::new(base.clone());
        let top = ring.top_degree();
        let res = gysin_total(&SphereBundleSpec::new(base, 2, IntPolynomial::default()).unwrap());
        assert!(res.ambiguous_degrees().is_empty());
        for t in &res.totals {
            let n = t.degree;
            let low = if n <= top { ring.group(n) } else { AbelianGroup::trivial() };
            let high = if n >= 2 && n - 2 <= top { ring.group(n - 2) } else { AbelianGroup::trivial() };
            assert_eq!(t.group.as_ref().unwrap(), &low.direct_sum(&high), "N={n}");
        }
    }
}

#[test]
fn rank_bookkeeping() {
    let cases = [
        spec(g83_presentation(), 2, "y3"),
        spec(g103_presentation(), 2, "y3"),
        spec(instantiate_family(Family::LaiEven, 4).unwrap(), 5, "Om"),
        spec(instantiate_family(Family::OddG2, 5).unwrap(), 1, "x2"),
    ];
    for s in cases {
        let res = gysin_total(&s);
        for t in &res.totals {
            let pieces = t.sub.rank() + t.quot.rank();
            for c in &t.candidates {
                assert_eq!(c.rank(), pieces);
            }
            if let Some(grp) = &t.group {
                assert_eq!(grp.rank(), pieces);
                assert!(t.candidates.contains(grp));
            }
        }
    }
}

#[test]
fn euler_degree_is_checked() {
    let base = g83_presentation();
    let e = base.parse_polynomial("x4").unwrap();
    assert_eq!(
        SphereBundleSpec::new(base, 2, e).unwrap_err(),
        SpectralError::EulerDegree { expected: 3, found: vec![4] }
    );
}

#[test]
fn w8_page_over_g83_has_the_table_labels() {
    let res = gysin_total(&spec(g83_presentation(), 2, "y3"));
    let expected = [
        (0, "1"),
        (3, "y3"),
        (4, "x4"),
        (6, "y3^2"),
        (7, "x7"),
        (8, "x4^2"),
        (10, "y3*x7"),
        (11, "x4*x7"),
        (13, "y3^2*x7"),
        (15, "x4^2*x7"),
    ];
    for q in [0, 2] {
        for p in 0..=15 {
            let labels = &res.e2.get(p, q).unwrap().labels;
            match expected.iter().find(|(k, _)| *k == p) {
                Some((_, l)) => assert_eq!(labels, &vec![l.to_string()], "p={p} q={q}"),
                None => assert!(labels.is_empty(), "p={p} q={q}"),
            }
        }
    }
    let text = render_page(&res.e2, PageFormat::Text);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("2 "));
    assert!(lines[1].starts_with("1 ") && lines[1][1..].chars().all(|c| c == ' ' || c == '|'));
    assert!(lines[2].starts_with("0 "));
    // d_3(1⊗s) = y3⊗1 is onto.
    assert!(text.contains("d_3: (0,2) -> (3,0) ·1 epi"), "{text}");
    let latex = render_page(&res.e2, PageFormat::Latex);
    assert!(latex.contains("x_{4}^2x_{7}"));
    assert!(latex.contains("\\cline{1-17}"));
}

fn g103_with_unknowns() -> Vec<GroupExpr> {
    let ring = GradedRing::new(g103_presentation());
    let free: Vec<usize> = ring.hilbert_vector();
    // H^k = F_k ⊕ T_{k-1}, keeping T_6 (dual to T_14) and T_10 symbolic.
    (0..=21)
        .map(|k: u32| {
            let known = AbelianGroup::free(free[k as usize]);
            match k.checked_sub(1) {
                Some(6 | 14) => GroupExpr::from(known).with_unknown(Unknown::T(6)),
                Some(10) => GroupExpr::from(known).with_unknown(Unknown::T(10)),
                Some(2 | 5 | 15 | 18) => GroupExpr::from(known.direct_sum(&g("Z_2"))),
                _ => GroupExpr::from(known),
            }
        })
        .collect()
}

#[test]
fn so3_page_symbolic_entries() {
    let base = g103_with_unknowns();
    let page = so3_e2_page(&base, 14..=20).unwrap();
    assert_eq!(page.get(15, 2).unwrap().group.to_ascii(), "T_6⊗Z_2 + Z_2");
    assert_eq!(page.get(15, 2).unwrap().group.to_string(), "T_6⊗Z_2 ⊕ Z_2");
    assert_eq!(page.get(15, 3).unwrap().group, base[15]);
    assert!(page.get(15, 1).is_none());

    let page = so3_e2_page(&base, 10..=15).unwrap();
    assert_eq!(page.get(10, 2).unwrap().group.to_string(), "Tor(T_10, Z_2)");
}

#[test]
fn so3_page_window_and_trivial_base() {
    let zeros = vec![GroupExpr::default(); 6];
    let page = so3_e2_page(&zeros, 0..=4).unwrap();
    assert!(page.entries.values().all(|e| e.group.is_trivial()));
    assert_eq!(
        so3_e2_page(&zeros, 2..=6).unwrap_err(),
        SpectralError::Window { from: 2, to: 6, available: 6 }
    );
    assert_eq!(so3_cohomology()[2], g("Z_2"));
}
