//! Exact existence questions about homomorphisms and extensions of finitely
//! generated abelian groups.
//!
//! Everything reduces to p-primary questions about partitions. For an
//! extension `0 → A → B → C → 0` the free part of `C` always splits off, and
//! when `C` is finite the torsion of `B` meets `A` in `A_t`, so
//! `S = B_t / A_t` is a subgroup of `C` and `C / S` is the cokernel of a
//! full-rank map `Z^a → Z^a` (`a = rank A`), hence has at most `a` cyclic
//! factors. Conversely any such `S` and `C / S` are realised.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;

use super::partition::{contains, lr_nonzero, partitions_of, size, sub_partitions, Partition};
use super::AbelianGroup;

type ExtKey = (AbelianGroup, AbelianGroup, AbelianGroup);

fn ext_cache() -> &'static Mutex<HashMap<ExtKey, bool>> {
    static CACHE: OnceLock<Mutex<HashMap<ExtKey, bool>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn primes_of(groups: &[&AbelianGroup]) -> BTreeSet<BigUint> {
    groups.iter().flat_map(|g| g.torsion_primes()).collect()
}

/// Whether a short exact sequence `0 → sub → total → quot → 0` exists.
pub fn exists_extension(sub: &AbelianGroup, total: &AbelianGroup, quot: &AbelianGroup) -> bool {
    let key = (sub.clone(), total.clone(), quot.clone());
    if let Some(&hit) = ext_cache().lock().unwrap().get(&key) {
        return hit;
    }
    let answer = decide_extension(sub, total, quot);
    ext_cache().lock().unwrap().insert(key, answer);
    answer
}

fn decide_extension(sub: &AbelianGroup, total: &AbelianGroup, quot: &AbelianGroup) -> bool {
    if total.rank() != sub.rank() + quot.rank() {
        return false;
    }
    let free = sub.rank();
    primes_of(&[sub, total, quot]).iter().all(|p| {
        let (lb, la, lc) = (total.p_partition(p), sub.p_partition(p), quot.p_partition(p));
        sub_partitions(&lc).iter().any(|s| {
            lr_nonzero(&lb, &la, s)
                && sub_partitions(&lc)
                    .iter()
                    .any(|t| t.len() <= free && lr_nonzero(&lc, s, t))
        })
    })
}

/// Every isomorphism type of subgroup of `g`, sorted.
pub fn subgroup_types(g: &AbelianGroup) -> Vec<AbelianGroup> {
    let torsion = torsion_subgroup_types(g);
    let mut out: Vec<AbelianGroup> = (0..=g.rank())
        .flat_map(|r| torsion.iter().map(move |t| AbelianGroup::free(r).direct_sum(t)))
        .collect();
    out.sort();
    out
}

fn torsion_subgroup_types(g: &AbelianGroup) -> Vec<AbelianGroup> {
    let per_prime: Vec<(BigUint, Vec<Partition>)> = g
        .torsion_primes()
        .into_iter()
        .map(|p| {
            let subs = sub_partitions(&g.p_partition(&p));
            (p, subs)
        })
        .collect();
    combine(0, &per_prime)
}

/// All groups of the given free rank whose p-parts range over the given lists.
fn combine(rank: usize, per_prime: &[(BigUint, Vec<Partition>)]) -> Vec<AbelianGroup> {
    let mut acc: Vec<BTreeMap<BigUint, Vec<u32>>> = vec![BTreeMap::new()];
    for (p, options) in per_prime {
        acc = acc
            .into_iter()
            .flat_map(|m| {
                options.iter().map(move |o| {
                    let mut m = m.clone();
                    m.insert(p.clone(), o.clone());
                    m
                })
            })
            .collect();
    }
    acc.iter().map(|m| AbelianGroup::from_primary_parts(rank, m)).collect()
}

/// Whether some homomorphism `g → h` has kernel `≅ kernel` and cokernel
/// `≅ cokernel`. Searches over the possible image types `M ⊆ h`.
pub fn exists_hom_with(
    g: &AbelianGroup,
    h: &AbelianGroup,
    kernel: &AbelianGroup,
    cokernel: &AbelianGroup,
) -> bool {
    if kernel.rank() > g.rank() {
        return false;
    }
    let image_rank = g.rank() - kernel.rank();
    if image_rank > h.rank() {
        return false;
    }
    torsion_subgroup_types(h).iter().any(|t| {
        let image = AbelianGroup::free(image_rank).direct_sum(t);
        exists_extension(kernel, g, &image) && exists_extension(&image, h, cokernel)
    })
}

pub fn exists_injection(g: &AbelianGroup, h: &AbelianGroup) -> bool {
    g.rank() <= h.rank()
        && g.torsion_primes().iter().all(|p| contains(&h.p_partition(p), &g.p_partition(p)))
}

pub fn exists_surjection(g: &AbelianGroup, h: &AbelianGroup) -> bool {
    if h.rank() > g.rank() {
        return false;
    }
    let kernel_rank = g.rank() - h.rank();
    torsion_subgroup_types(g).iter().any(|t| {
        exists_extension(&AbelianGroup::free(kernel_rank).direct_sum(t), g, h)
    })
}

/// Every group `B` admitting `0 → sub → B → quot → 0`, sorted.
pub fn extension_candidates(sub: &AbelianGroup, quot: &AbelianGroup) -> Vec<AbelianGroup> {
    let rank = sub.rank() + quot.rank();
    let per_prime: Vec<(BigUint, Vec<Partition>)> = primes_of(&[sub, quot])
        .into_iter()
        .map(|p| {
            let bound = size(&sub.p_partition(&p)) + size(&quot.p_partition(&p));
            let options = (0..=bound).flat_map(partitions_of).collect();
            (p, options)
        })
        .collect();
    let mut out: Vec<AbelianGroup> = combine(rank, &per_prime)
        .into_iter()
        .filter(|b| exists_extension(sub, b, quot))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Cokernel types that can occur for a map `g → h` when the image is forced
/// to be finite (`g` or `h` finite). `None` when both are infinite, since
/// cokernels like `Z / nZ` are then unbounded.
pub fn bounded_cokernel_types(g: &AbelianGroup, h: &AbelianGroup) -> Option<Vec<AbelianGroup>> {
    if h.is_finite() {
        return Some(subgroup_types(h));
    }
    if g.is_finite() {
        let free = AbelianGroup::free(h.rank());
        let mut out: Vec<AbelianGroup> =
            torsion_subgroup_types(h).iter().map(|t| free.direct_sum(t)).collect();
        out.sort();
        return Some(out);
    }
    None
}

/// All achievable `(kernel, cokernel)` type pairs of maps `g → h` with the
/// cokernel drawn from `cokernel_types`.
pub fn hom_outcomes(
    g: &AbelianGroup,
    h: &AbelianGroup,
    cokernel_types: &[AbelianGroup],
) -> Vec<(AbelianGroup, AbelianGroup)> {
    let mut out = Vec::new();
    for k in subgroup_types(g) {
        for q in cokernel_types {
            if exists_hom_with(g, h, &k, q) {
                out.push((k.clone(), q.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn extension_examples() {
        assert!(exists_extension(&g("Z_2"), &g("Z_4"), &g("Z_2")));
        assert!(exists_extension(&g("Z"), &g("Z + Z_2"), &g("Z_2")));
        assert!(!exists_extension(&g("Z_4"), &g("Z_2 + Z_2"), &g("0")));
        // Multiplication by n on Z.
        assert!(exists_extension(&g("Z"), &g("Z"), &g("Z_6")));
        // Two cyclic factors cannot come from one free generator.
        assert!(!exists_extension(&g("Z"), &g("Z"), &g("Z_2 + Z_2")));
        assert!(exists_extension(&g("Z^2"), &g("Z^2"), &g("Z_2 + Z_2")));
        // Z_2 torsion in the total cannot vanish into a free sub.
        assert!(!exists_extension(&g("Z"), &g("Z + Z_2"), &g("0")));
        assert!(exists_extension(&g("Z + Z_2"), &g("Z + Z_2"), &g("0")));
        assert!(!exists_extension(&g("Z"), &g("Z^2"), &g("0")));
        // 0 → Z → Z ⊕ Z_2 → Z_4: Z_4 / Z_2 ≅ Z_2 comes from the free part.
        assert!(exists_extension(&g("Z"), &g("Z + Z_2"), &g("Z_4")));
        assert!(!exists_extension(&g("Z"), &g("Z + Z_3"), &g("Z_2")));
    }

    #[test]
    fn hom_examples() {
        assert!(exists_hom_with(&g("Z"), &g("Z"), &g("0"), &g("Z_2")));
        for q in ["0", "Z", "Z_2", "Z + Z_2"] {
            assert!(!exists_hom_with(&g("Z_2"), &g("Z"), &g("0"), &g(q)));
        }
        assert!(exists_hom_with(&g("Z_2"), &g("Z_2"), &g("0"), &g("0")));
        assert!(!exists_hom_with(&g("Z_2"), &g("Z_2"), &g("0"), &g("Z_2")));
        assert!(exists_hom_with(&g("Z_4"), &g("Z_2"), &g("Z_2"), &g("0")));
    }

    #[test]
    fn injections_and_surjections() {
        assert!(exists_injection(&g("Z_2"), &g("Z_4")));
        assert!(!exists_injection(&g("Z_4"), &g("Z_2 + Z_2")));
        assert!(!exists_injection(&g("Z_2"), &g("Z")));
        assert!(exists_surjection(&g("Z"), &g("Z_5")));
        assert!(!exists_surjection(&g("Z"), &g("Z_2 + Z_2")));
        assert!(exists_surjection(&g("Z_4"), &g("Z_2")));
    }

    #[test]
    fn extension_candidate_lists() {
        let c = extension_candidates(&g("Z"), &g("Z_2"));
        assert_eq!(c, vec![g("Z"), g("Z + Z_2")]);
        let c = extension_candidates(&g("Z_2"), &g("Z_2"));
        assert_eq!(c, vec![g("Z_4"), g("Z_2 + Z_2")].into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        assert_eq!(extension_candidates(&g("Z"), &g("Z")), vec![g("Z^2")]);
    }

    #[test]
    fn subgroup_type_listing() {
        let s = subgroup_types(&g("Z + Z_4"));
        assert_eq!(s.len(), 6);
        assert!(s.contains(&g("Z + Z_2")));
    }

    fn small_group() -> impl Strategy<Value = AbelianGroup> {
        (0usize..2, prop::collection::vec(prop::sample::select(vec![1u64, 2, 3, 4, 6, 9]), 0..3))
            .prop_map(|(r, ds)| {
                let free = AbelianGroup::free(r);
                ds.into_iter().fold(free, |acc, d| acc.direct_sum(&AbelianGroup::cyclic(d)))
            })
    }

    proptest! {
        #[test]
        fn split_extension_always_exists(a in small_group(), b in small_group()) {
            prop_assert!(exists_extension(&a, &a.direct_sum(&b), &b));
        }

        #[test]
        fn zero_map_always_exists(a in small_group(), b in small_group()) {
            prop_assert!(exists_hom_with(&a, &b, &a, &b));
        }

        #[test]
        fn finite_extensions_multiply_orders(a in small_group(), b in small_group(), c in small_group()) {
            if a.is_finite() && b.is_finite() && c.is_finite() && exists_extension(&a, &b, &c) {
                prop_assert_eq!(b.torsion_order(), a.torsion_order() * c.torsion_order());
            }
        }
    }
}
