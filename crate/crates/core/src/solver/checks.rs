//! The constraint families. Each works on concrete cohomology groups, so all
//! questions reduce to existence of homomorphisms and extensions with given
//! isomorphism types.

use std::collections::BTreeSet;

use crate::abelian::{
    exists_extension, exists_injection, exists_surjection, hom_outcomes, subgroup_types, AbelianGroup,
};

fn at(groups: &[AbelianGroup], k: i64) -> AbelianGroup {
    if k < 0 {
        return AbelianGroup::trivial();
    }
    groups.get(k as usize).cloned().unwrap_or_default()
}

/// Types `P` with `0 → sub → total → P → 0` for a finite `sub`.
fn quotients_by(total: &AbelianGroup, sub: &AbelianGroup) -> Vec<AbelianGroup> {
    debug_assert!(sub.is_finite());
    let free = AbelianGroup::free(total.rank());
    subgroup_types(&total.torsion_subgroup())
        .into_iter()
        .map(|x| free.direct_sum(&x))
        .filter(|p| exists_extension(sub, total, p))
        .collect()
}

/// Kernel/cokernel pairs of maps `g → h` whose cokernel embeds in `bound`.
fn outcomes_bounded(g: &AbelianGroup, h: &AbelianGroup, bound: &AbelianGroup) -> Vec<(AbelianGroup, AbelianGroup)> {
    let cokernels: Vec<AbelianGroup> = subgroup_types(bound);
    hom_outcomes(g, h, &cokernels)
}

/// Checks that the `S^2` bundle spectral sequence over a base with groups
/// `base` can converge to `total`: there must be maps `d_p: H^p → H^{p+3}`
/// with `0 → coker d_{N-3} → total^N → ker d_{N-2} → 0` for every `N`.
///
/// Adjacent degrees share a differential, so the search runs left to right
/// keeping the set of reachable cokernel types of the last map. Returns the
/// first degree with no consistent choice.
pub fn sphere_assembly(base: &[AbelianGroup], total: &[AbelianGroup]) -> Result<(), u32> {
    let top = (total.len() as i64 - 1).max(base.len() as i64 + 1);
    // Cokernel of d_{-3}: 0 → H^0.
    let mut reachable: BTreeSet<AbelianGroup> = [at(base, 0)].into_iter().collect();
    for n in 0..=top {
        let (src, dst) = (at(base, n - 2), at(base, n + 1));
        // coker d_{n-2} lands in total^{n+1}.
        let outcomes = outcomes_bounded(&src, &dst, &at(total, n + 1));
        if outcomes.is_empty() {
            return Err(n as u32 + 1);
        }
        let here = at(total, n);
        let mut next = BTreeSet::new();
        for prev in &reachable {
            for (k, c) in &outcomes {
                if !next.contains(c) && exists_extension(prev, &here, k) {
                    next.insert(c.clone());
                }
            }
        }
        if next.is_empty() {
            return Err(n as u32);
        }
        reachable = next;
    }
    Ok(())
}

/// Row 2 of the `SO(3)` page: `(H^p ⊗ Z_2) ⊕ Tor(H^{p+1}, Z_2)`.
fn row2(base: &[AbelianGroup], p: i64) -> AbelianGroup {
    let count = at(base, p).tensor_z2() + at(base, p + 1).tor_z2();
    AbelianGroup::from_cyclic_orders(vec![2u32.into(); count])
}

/// Whether the `SO(3)` bundle page over `base` can have every `E_∞` entry of
/// total degree `n` zero. Rows are 0, 2 and 3 with `d_2: (p,3) → (p+2,2)`,
/// `d_3: (p,2) → (p+3,0)` and `d_4: (p,3) → (p+4,0)`.
pub fn so3_degree_vanishes(base: &[AbelianGroup], n: u32) -> bool {
    let n = n as i64;
    let h = |k: i64| at(base, k);
    let r = |k: i64| row2(base, k);

    // d_2 out of (n-4,3): its cokernel is E_3^{n-2,2}, its kernel E_4^{n-4,3}.
    let alpha = hom_outcomes(&h(n - 4), &r(n - 2), &subgroup_types(&r(n - 2)));
    // d_2 into (n-3,2) and out of (n-3,3).
    let gamma_cokernels: BTreeSet<AbelianGroup> =
        hom_outcomes(&h(n - 5), &r(n - 3), &subgroup_types(&r(n - 3))).into_iter().map(|(_, c)| c).collect();
    let beta_kernels: BTreeSet<AbelianGroup> =
        hom_outcomes(&h(n - 3), &r(n - 1), &subgroup_types(&r(n - 1))).into_iter().map(|(k, _)| k).collect();

    alpha.iter().any(|(ker_a, coker_a)| {
        // E_∞^{n-2,2} = 0: d_3 embeds E_3^{n-2,2} into H^{n+1}.
        if !exists_injection(coker_a, &h(n + 1)) {
            return false;
        }
        // E_∞^{n,0} = 0: d_3 from E_3^{n-3,2} has some image M, and d_4 from
        // E_4^{n-4,3} = ker alpha covers the rest.
        let bottom_dies = gamma_cokernels.iter().any(|qa| {
            subgroup_types(qa).iter().filter(|m| exists_injection(m, &h(n))).any(|m| {
                quotients_by(&h(n), m).iter().any(|p| exists_surjection(ker_a, p))
            })
        });
        // E_∞^{n-3,3} = 0: ker d_2 embeds via d_4 into H^{n+1} / im d_3.
        bottom_dies
            && quotients_by(&h(n + 1), coker_a)
                .iter()
                .any(|q| beta_kernels.iter().any(|k| exists_injection(k, q)))
    })
}
