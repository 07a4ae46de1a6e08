//! Decision procedures checked against brute force on small finite groups:
//! every subgroup is enumerated elementwise, and groups are compared by
//! their counts of elements of each order.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use gcoh::abelian::{exists_extension, exists_injection, exists_surjection, subgroup_types, AbelianGroup};

/// Finite group `Z_{m_1} + ... + Z_{m_k}` as explicit elements.
struct Explicit {
    moduli: Vec<u64>,
}

type Elem = Vec<u64>;
type Signature = BTreeMap<u64, usize>;

impl Explicit {
    fn new(moduli: &[u64]) -> Self {
        Explicit { moduli: moduli.to_vec() }
    }

    fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn elements(&self) -> Vec<Elem> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out.into_iter().flat_map(|e: Elem| (0..m).map(move |x| [e.clone(), vec![x]].concat())).collect();
        }
        out
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    fn scale(&self, n: u64, a: &Elem) -> Elem {
        a.iter().zip(&self.moduli).map(|(x, m)| (n % m) * x % m).collect()
    }

    fn zero(&self) -> Elem {
        vec![0; self.moduli.len()]
    }

    /// Every subgroup, built by adjoining one element at a time.
    fn subgroups(&self) -> Vec<BTreeSet<Elem>> {
        let elements = self.elements();
        let start: BTreeSet<Elem> = [self.zero()].into_iter().collect();
        let mut seen: HashSet<BTreeSet<Elem>> = [start.clone()].into_iter().collect();
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            for g in &elements {
                if h.contains(g) {
                    continue;
                }
                let mut next = h.clone();
                let mut multiple = g.clone();
                while multiple != self.zero() {
                    for x in &h {
                        next.insert(self.add(x, &multiple));
                    }
                    multiple = self.add(&multiple, g);
                }
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Smallest `n > 0` with `n·a` in `h`.
    fn order_mod(&self, a: &Elem, h: &BTreeSet<Elem>) -> u64 {
        (1..=self.order()).find(|&n| h.contains(&self.scale(n, a))).unwrap()
    }

    fn signature_of_sub(&self, h: &BTreeSet<Elem>) -> Signature {
        let trivial: BTreeSet<Elem> = [self.zero()].into_iter().collect();
        let mut sig = Signature::new();
        for a in h {
            *sig.entry(self.order_mod(a, &trivial)).or_default() += 1;
        }
        sig
    }

    fn signature_of_quotient(&self, h: &BTreeSet<Elem>) -> Signature {
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut sig = Signature::new();
        for a in self.elements() {
            if seen.contains(&a) {
                continue;
            }
            for x in h {
                seen.insert(self.add(&a, x));
            }
            *sig.entry(self.order_mod(&a, h)).or_default() += 1;
        }
        sig
    }
}

fn group(moduli: &[u64]) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(moduli.iter().map(|&m| m.into()))
}

fn signature(g: &AbelianGroup) -> Signature {
    let moduli: Vec<u64> = g.invariant_factors().iter().map(|d| u64::try_from(d).unwrap()).collect();
    let e = Explicit::new(&moduli);
    e.signature_of_sub(&e.elements().into_iter().collect())
}

/// Every finite group of order dividing `n`, as divisor chains of length at most 3.
fn groups_dividing(n: u64) -> Vec<AbelianGroup> {
    let divisors: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut out = vec![AbelianGroup::trivial()];
    for &a in &divisors {
        out.push(group(&[a]));
        for &b in divisors.iter().filter(|&&b| b % a == 0 && n.is_multiple_of(a * b)) {
            out.push(group(&[a, b]));
            for &c in divisors.iter().filter(|&&c| c % b == 0 && n.is_multiple_of(a * b * c)) {
                out.push(group(&[a, b, c]));
            }
        }
    }
    out
}

const TOTALS: [&[u64]; 10] =
    [&[8], &[2, 4], &[2, 2, 2], &[4, 4], &[2, 6], &[12], &[3, 3], &[9], &[2, 2, 4], &[2, 8]];

#[test]
fn extensions_agree_with_brute_force() {
    for moduli in TOTALS {
        let e = Explicit::new(moduli);
        let total = group(moduli);
        let pairs: HashSet<(Signature, Signature)> =
            e.subgroups().iter().map(|h| (e.signature_of_sub(h), e.signature_of_quotient(h))).collect();
        let candidates = groups_dividing(e.order());
        for a in &candidates {
            for b in &candidates {
                if a.torsion_order() * b.torsion_order() != total.torsion_order() {
                    continue;
                }
                let brute = pairs.contains(&(signature(a), signature(b)));
                assert_eq!(exists_extension(a, &total, b), brute, "0 -> {a} -> {total} -> {b} -> 0");
            }
        }
    }
}

#[test]
fn subgroup_types_agree_with_brute_force() {
    for moduli in TOTALS {
        let e = Explicit::new(moduli);
        let total = group(moduli);
        let brute: BTreeSet<Signature> = e.subgroups().iter().map(|h| e.signature_of_sub(h)).collect();
        let found: BTreeSet<Signature> = subgroup_types(&total).iter().map(signature).collect();
        assert_eq!(found, brute, "{total}");
        let quotients: BTreeSet<Signature> = e.subgroups().iter().map(|h| e.signature_of_quotient(h)).collect();
        for g in groups_dividing(e.order()) {
            assert_eq!(exists_injection(&g, &total), brute.contains(&signature(&g)), "{g} into {total}");
            assert_eq!(exists_surjection(&total, &g), quotients.contains(&signature(&g)), "{total} onto {g}");
        }
    }
}
