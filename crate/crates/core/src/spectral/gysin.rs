use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{BigradedEntry, BigradedPage, DifferentialRecord, SpectralError};
use crate::abelian::{extension_candidates, AbelianGroup, Hom, IntegerMatrix};
use crate::graded_ring::{GradedRing, IntPolynomial, RingPresentation};

/// An oriented `S^m` bundle over a space with the given cohomology ring.
#[derive(Clone, Debug)]
pub struct SphereBundleSpec {
    pub base: RingPresentation,
    pub fiber_dim: u32,
    pub euler: IntPolynomial,
}

impl SphereBundleSpec {
    pub fn new(base: RingPresentation, fiber_dim: u32, euler: IntPolynomial) -> Result<Self, SpectralError> {
        let found = euler.degrees(&base.degrees());
        if found.iter().any(|&d| d != fiber_dim + 1) {
            return Err(SpectralError::EulerDegree { expected: fiber_dim + 1, found });
        }
        Ok(SphereBundleSpec { base, fiber_dim, euler })
    }
}

/// `H^N` of the total space as an extension
/// `0 → E∞^{N,0} → H^N → E∞^{N-m,m} → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotalDegree {
    pub degree: u32,
    pub sub: AbelianGroup,
    pub quot: AbelianGroup,
    /// Every group admitting such an extension.
    pub candidates: Vec<AbelianGroup>,
    /// Set when the extension is forced.
    pub group: Option<AbelianGroup>,
    pub ambiguous: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GysinResult {
    pub e2: BigradedPage,
    pub e_inf: BigradedPage,
    pub totals: Vec<TotalDegree>,
}

impl GysinResult {
    /// Total groups, `None` where the extension is ambiguous.
    pub fn groups(&self) -> Vec<Option<AbelianGroup>> {
        self.totals.iter().map(|t| t.group.clone()).collect()
    }

    pub fn ambiguous_degrees(&self) -> Vec<u32> {
        self.totals.iter().filter(|t| t.ambiguous).map(|t| t.degree).collect()
    }
}

fn note_for(matrix: &IntegerMatrix, hom: &Hom) -> String {
    let kind = match (hom.is_injective(), hom.is_surjective()) {
        (true, true) => "iso",
        (true, false) => "mono",
        (false, true) => "epi",
        (false, false) => "",
    };
    if matrix.rows() == 1 && matrix.cols() == 1 {
        format!("·{} {kind}", matrix[(0, 0)]).trim_end().to_string()
    } else {
        kind.to_string()
    }
}

/// Runs the spectral sequence of the bundle: two rows copying the base
/// cohomology and a single differential `d_{m+1}(x ⊗ s) = x·e`.
pub fn gysin_total(spec: &SphereBundleSpec) -> GysinResult {
    let ring = GradedRing::new(spec.base.clone());
    let top = ring.top_degree();
    let m = spec.fiber_dim;
    let r = m + 1;
    let h = |p: u32| ring.group(p);

    let mut e2 = BigradedPage::new(r, m);
    for p in 0..=top {
        for q in [0, m] {
            e2.insert(BigradedEntry { p, q, group: h(p).into(), labels: ring.generator_labels(p) });
        }
    }

    // kernels[p] = ker(d: E^{p,m} → E^{p+r,0}), cokernels[t] = coker into E^{t,0}.
    let mut kernels: Vec<AbelianGroup> = (0..=top).map(h).collect();
    let mut cokernels: Vec<AbelianGroup> = (0..=top).map(h).collect();
    for p in 0..=top {
        let t = p + r;
        if t > top || h(p).is_trivial() || h(t).is_trivial() {
            continue;
        }
        let src = ring.component(p).expect("degree within range");
        let dst = ring.component(t).expect("degree within range");
        let n = src.group().num_generators();
        let cols: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(1);
                let image = ring.presentation().multiply(&src.representative(&e), &spec.euler);
                dst.coordinates(&image)
            })
            .collect();
        let matrix = IntegerMatrix::from_columns(dst.group().num_generators(), &cols);
        let hom = Hom::new(src.group().clone(), dst.group().clone(), matrix.clone())
            .expect("cup product with a class is a homomorphism");
        kernels[p as usize] = hom.kernel();
        cokernels[t as usize] = hom.cokernel();
        if !hom.is_zero() {
            let note = note_for(&matrix, &hom);
            e2.differentials.push(DifferentialRecord { r, source: (p, m), target: (t, 0), matrix, note });
        }
    }

    let mut e_inf = BigradedPage::new(r + 1, m);
    for p in 0..=top {
        e_inf.insert(BigradedEntry { p, q: 0, group: cokernels[p as usize].clone().into(), labels: Vec::new() });
        e_inf.insert(BigradedEntry { p, q: m, group: kernels[p as usize].clone().into(), labels: Vec::new() });
    }

    let euler_zero = spec.euler.is_zero();
    let totals = (0..=top + m)
        .map(|n| {
            let sub = if n <= top { cokernels[n as usize].clone() } else { AbelianGroup::trivial() };
            let quot = if n >= m && n - m <= top { kernels[(n - m) as usize].clone() } else { AbelianGroup::trivial() };
            let candidates = extension_candidates(&sub, &quot);
            let forced = if sub.is_trivial() {
                Some(quot.clone())
            } else if quot.is_trivial() {
                Some(sub.clone())
            } else if quot.is_free() || euler_zero {
                Some(sub.direct_sum(&quot))
            } else if candidates.len() == 1 {
                Some(candidates[0].clone())
            } else {
                None
            };
            TotalDegree { degree: n, ambiguous: forced.is_none(), group: forced, sub, quot, candidates }
        })
        .collect();

    GysinResult { e2, e_inf, totals }
}
