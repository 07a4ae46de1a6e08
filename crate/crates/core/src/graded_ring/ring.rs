use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{IntPolynomial, Monomial, RingError, RingPresentation};
use crate::abelian::{AbelianGroup, Hom, IntegerMatrix, Quotient};

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// One degree of a presented ring.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: u32,
    pub basis: Vec<Monomial>,
    /// One column per monomial multiple of a relation.
    pub relation_matrix: IntegerMatrix,
    pub quotient: Quotient,
}

impl GradedComponent {
    pub fn group(&self) -> &AbelianGroup {
        &self.quotient.group
    }

    fn vector_of(&self, p: &IntPolynomial) -> Vec<BigInt> {
        self.basis.iter().map(|m| p.coefficient(m)).collect()
    }

    /// Canonical coordinates of a polynomial whose terms all lie in this degree.
    pub fn coordinates(&self, p: &IntPolynomial) -> Vec<BigInt> {
        self.quotient.coordinates(&self.vector_of(p))
    }

    /// Polynomial representative of a coordinate vector.
    pub fn representative(&self, coords: &[BigInt]) -> IntPolynomial {
        let v = self.quotient.section.mul_vec(coords);
        IntPolynomial::from_terms(v.into_iter().zip(self.basis.iter().cloned()))
    }

    pub fn contains_zero(&self, p: &IntPolynomial) -> bool {
        self.coordinates(p).iter().all(Zero::is_zero)
    }
}

/// A homogeneous element of a [`GradedRing`] in canonical coordinates. Above
/// the top degree the coordinate list is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingClass {
    ring_id: u64,
    degree: u32,
    coords: Vec<BigInt>,
}

impl RingClass {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coordinates(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMapReport {
    pub degree: u32,
    pub source: AbelianGroup,
    pub target: AbelianGroup,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingHomReport {
    pub well_defined: bool,
    /// Source relations that do not map to zero.
    pub failing_relations: Vec<String>,
    pub degrees: Vec<DegreeMapReport>,
}

impl RingHomReport {
    pub fn injective_degrees(&self) -> Vec<u32> {
        self.degrees.iter().filter(|d| d.injective && !d.source.is_trivial()).map(|d| d.degree).collect()
    }

    pub fn degree(&self, k: u32) -> Option<&DegreeMapReport> {
        self.degrees.iter().find(|d| d.degree == k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityPairing {
    pub degree: u32,
    pub matrix: IntegerMatrix,
    pub unimodular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub degree: u32,
    pub group: String,
    pub generators: Vec<String>,
}

/// A presentation together with a cache of its graded components.
#[derive(Debug)]
pub struct GradedRing {
    id: u64,
    presentation: RingPresentation,
    components: Mutex<HashMap<u32, Arc<GradedComponent>>>,
}

impl Clone for GradedRing {
    fn clone(&self) -> Self {
        GradedRing::new(self.presentation.clone())
    }
}

impl GradedRing {
    pub fn new(presentation: RingPresentation) -> Self {
        GradedRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            presentation,
            components: Mutex::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn top_degree(&self) -> u32 {
        self.presentation.top_degree()
    }

    /// Degree-`k` quotient of the free module on monomials by relation
    /// multiples, ignoring the top-degree truncation.
    pub fn raw_component(&self, k: u32) -> Arc<GradedComponent> {
        if let Some(c) = self.components.lock().unwrap().get(&k) {
            return Arc::clone(c);
        }
        let c = Arc::new(self.build_component(k));
        self.components.lock().unwrap().entry(k).or_insert(c).clone()
    }

    fn build_component(&self, k: u32) -> GradedComponent {
        let p = &self.presentation;
        let basis = p.monomials_of_degree(k);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let degrees = p.degrees();
        let mut columns = Vec::new();
        for r in p.effective_relations() {
            let Some(d) = r.homogeneous_degree(&degrees) else { continue };
            if d > k {
                continue;
            }
            for m in p.monomials_of_degree(k - d) {
                let multiple = p.multiply(&IntPolynomial::monomial(1, m), &r);
                if multiple.is_zero() {
                    continue;
                }
                let mut col = vec![BigInt::zero(); basis.len()];
                for (mono, c) in multiple.terms() {
                    col[index[mono]] += c;
                }
                columns.push(col);
            }
        }
        let relation_matrix = IntegerMatrix::from_columns(basis.len(), &columns);
        let quotient = Quotient::of(&relation_matrix);
        GradedComponent { degree: k, basis, relation_matrix, quotient }
    }

    pub fn component(&self, k: u32) -> Result<Arc<GradedComponent>, RingError> {
        if k > self.top_degree() {
            return Err(RingError::DegreeOutOfRange { degree: k, top: self.top_degree() });
        }
        Ok(self.raw_component(k))
    }

    /// Group in degree `k`, trivial above the top degree.
    pub fn group(&self, k: u32) -> AbelianGroup {
        match self.component(k) {
            Ok(c) => c.group().clone(),
            Err(_) => AbelianGroup::trivial(),
        }
    }

    pub fn groups(&self) -> Vec<AbelianGroup> {
        (0..=self.top_degree()).map(|k| self.group(k)).collect()
    }

    pub fn hilbert_vector(&self) -> Vec<usize> {
        self.groups().iter().map(AbelianGroup::rank).collect()
    }

    fn check_degree(&self, p: &IntPolynomial, k: u32) -> Result<(), RingError> {
        let found = p.degrees(&self.presentation.degrees());
        if found.iter().any(|&d| d != k) {
            return Err(RingError::NotHomogeneous { poly: self.presentation.format_polynomial(p), degrees: found });
        }
        Ok(())
    }

    pub fn zero_class(&self, k: u32) -> RingClass {
        let n = if k > self.top_degree() { 0 } else { self.raw_component(k).group().num_generators() };
        RingClass { ring_id: self.id, degree: k, coords: vec![BigInt::zero(); n] }
    }

    /// Class of a polynomial all of whose terms have degree `k`.
    pub fn class_in_degree(&self, p: &IntPolynomial, k: u32) -> Result<RingClass, RingError> {
        self.check_degree(p, k)?;
        if k > self.top_degree() {
            return Ok(self.zero_class(k));
        }
        let coords = self.raw_component(k).coordinates(p);
        Ok(RingClass { ring_id: self.id, degree: k, coords })
    }

    /// Class of a nonzero homogeneous polynomial.
    pub fn class_of(&self, p: &IntPolynomial) -> Result<RingClass, RingError> {
        let degrees = p.degrees(&self.presentation.degrees());
        match degrees.as_slice() {
            [k] => self.class_in_degree(p, *k),
            _ => Err(RingError::NotHomogeneous { poly: self.presentation.format_polynomial(p), degrees }),
        }
    }

    pub fn parse_class(&self, text: &str) -> Result<RingClass, RingError> {
        self.class_of(&self.presentation.parse_polynomial(text)?)
    }

    pub fn generator_class(&self, name: &str) -> Result<RingClass, RingError> {
        let m = self
            .presentation
            .generator_monomial(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.into()))?;
        self.class_of(&IntPolynomial::monomial(1, m))
    }

    /// A polynomial representing the class.
    pub fn representative(&self, a: &RingClass) -> IntPolynomial {
        if a.degree > self.top_degree() {
            return IntPolynomial::zero();
        }
        self.raw_component(a.degree).representative(&a.coords)
    }

    pub fn format_class(&self, a: &RingClass) -> String {
        self.presentation.format_polynomial(&self.representative(a))
    }

    pub fn add(&self, a: &RingClass, b: &RingClass) -> Result<RingClass, RingError> {
        self.owns(a)?;
        self.owns(b)?;
        if a.degree != b.degree {
            return Err(RingError::NotHomogeneous { poly: "sum".into(), degrees: vec![a.degree, b.degree] });
        }
        let sum = self.representative(a).add(&self.representative(b));
        self.class_in_degree(&sum, a.degree)
    }

    fn owns(&self, a: &RingClass) -> Result<(), RingError> {
        if a.ring_id == self.id {
            Ok(())
        } else {
            Err(RingError::MismatchedRings)
        }
    }

    pub fn product(&self, a: &RingClass, b: &RingClass) -> Result<RingClass, RingError> {
        self.owns(a)?;
        self.owns(b)?;
        let k = a.degree + b.degree;
        let prod = self.presentation.multiply(&self.representative(a), &self.representative(b));
        self.class_in_degree(&prod, k)
    }

    /// Exact membership of a homogeneous polynomial in the relation ideal,
    /// ignoring the top-degree truncation.
    pub fn ideal_member(&self, f: &IntPolynomial) -> Result<bool, RingError> {
        if f.is_zero() {
            return Ok(true);
        }
        let degrees = f.degrees(&self.presentation.degrees());
        let [k] = degrees.as_slice() else {
            return Err(RingError::NotHomogeneous { poly: self.presentation.format_polynomial(f), degrees });
        };
        Ok(self.raw_component(*k).contains_zero(f))
    }

    /// Scans degrees `from..=to` and collects every monomial that is not yet
    /// in the ideal generated by the relations and the monomials collected
    /// so far.
    pub fn finite_generating_set(&self, from: u32, to: u32) -> Result<Vec<Monomial>, RingError> {
        let top = self.top_degree();
        if from <= top || to < from {
            return Err(RingError::InvalidScanRange { from, to, top });
        }
        let mut added: Vec<Monomial> = Vec::new();
        let mut current = GradedRing::new(self.presentation.clone());
        for k in from..=to {
            for m in self.presentation.monomials_of_degree(k) {
                let f = IntPolynomial::monomial(1, m.clone());
                if current.ideal_member(&f)? {
                    continue;
                }
                added.push(m);
                let extra: Vec<IntPolynomial> =
                    added.iter().map(|m| IntPolynomial::monomial(1, m.clone())).collect();
                current = GradedRing::new(self.presentation.with_extra_relations_unchecked(&extra));
            }
        }
        Ok(added)
    }

    /// Pairing of the free generators in degrees `k` and `top - k` into the
    /// generator of the top degree.
    pub fn duality_pairing(&self, k: u32) -> Result<DualityPairing, RingError> {
        let top = self.top_degree();
        if k > top {
            return Err(RingError::DegreeOutOfRange { degree: k, top });
        }
        let fundamental = self.component(top)?;
        if *fundamental.group() != AbelianGroup::free(1) {
            return Err(RingError::TopNotInfiniteCyclic(fundamental.group().to_string()));
        }
        let left = self.free_classes(k);
        let right = self.free_classes(top - k);
        let mut matrix = IntegerMatrix::zeros(left.len(), right.len());
        for (i, a) in left.iter().enumerate() {
            for (j, b) in right.iter().enumerate() {
                matrix[(i, j)] = self.product(a, b)?.coords[0].clone();
            }
        }
        let unimodular = left.len() == right.len() && matrix.determinant().abs() == BigInt::from(1);
        Ok(DualityPairing { degree: k, matrix, unimodular })
    }

    /// Classes of the free canonical generators in degree `k`.
    pub fn free_classes(&self, k: u32) -> Vec<RingClass> {
        let Ok(c) = self.component(k) else { return Vec::new() };
        let g = c.group();
        let t = g.invariant_factors().len();
        (t..g.num_generators())
            .map(|i| {
                let mut coords = vec![BigInt::zero(); g.num_generators()];
                coords[i] = BigInt::from(1);
                RingClass { ring_id: self.id, degree: k, coords }
            })
            .collect()
    }

    /// Polynomial representatives of the canonical generators in degree `k`.
    pub fn generator_labels(&self, k: u32) -> Vec<String> {
        let Ok(c) = self.component(k) else { return Vec::new() };
        let n = c.group().num_generators();
        (0..n)
            .map(|i| {
                let mut coords = vec![BigInt::zero(); n];
                coords[i] = BigInt::from(1);
                // A generator and its negative span the same subgroup.
                let text = self.presentation.format_polynomial(&c.representative(&coords));
                match text.strip_prefix('-') {
                    Some(_) => self.presentation.format_polynomial(&c.representative(&coords).neg()),
                    None => text,
                }
            })
            .collect()
    }

    pub fn graded_table(&self) -> Vec<TableRow> {
        (0..=self.top_degree())
            .map(|k| TableRow { degree: k, group: self.group(k).to_string(), generators: self.generator_labels(k) })
            .collect()
    }

    /// Checks the map sending each source generator to the given polynomial.
    pub fn ring_hom_check(
        &self,
        target: &GradedRing,
        images: &BTreeMap<String, IntPolynomial>,
    ) -> Result<RingHomReport, RingError> {
        let src = &self.presentation;
        let dst = &target.presentation;
        for name in images.keys() {
            if src.generator_index(name).is_none() {
                return Err(RingError::UnknownGenerator(name.clone()));
            }
        }
        let mut gen_images = Vec::new();
        for g in src.generators() {
            let img = images.get(&g.name).ok_or_else(|| RingError::MissingImage(g.name.clone()))?;
            let found = img.degrees(&dst.degrees());
            if found.iter().any(|&d| d != g.degree) {
                return Err(RingError::ImageDegree { generator: g.name.clone(), expected: g.degree, found });
            }
            gen_images.push(img.clone());
        }
        let substitute = |p: &IntPolynomial| -> IntPolynomial {
            let mut out = IntPolynomial::zero();
            for (m, c) in p.terms() {
                let mut term = IntPolynomial::monomial(c.clone(), Monomial::one(dst.generators().len()));
                for (i, &e) in m.exponents().iter().enumerate() {
                    term = dst.multiply(&term, &dst.power(&gen_images[i], e));
                }
                out = out.add(&term);
            }
            out
        };

        let mut failing = Vec::new();
        for r in src.effective_relations() {
            let Some(d) = r.homogeneous_degree(&src.degrees()) else { continue };
            if d > target.top_degree() {
                continue;
            }
            if !target.class_in_degree(&substitute(&r), d)?.is_zero() {
                failing.push(src.format_polynomial(&r));
            }
        }

        let mut degrees = Vec::new();
        for k in 0..=self.top_degree().min(target.top_degree()) {
            let sc = self.raw_component(k);
            let tc = target.raw_component(k);
            let n = sc.group().num_generators();
            let cols: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let mut e = vec![BigInt::zero(); n];
                    e[i] = BigInt::from(1);
                    tc.coordinates(&substitute(&sc.representative(&e)))
                })
                .collect();
            let matrix = IntegerMatrix::from_columns(tc.group().num_generators(), &cols);
            let (injective, surjective) = match Hom::new(sc.group().clone(), tc.group().clone(), matrix) {
                Ok(h) => (h.is_injective(), h.is_surjective()),
                Err(_) => (false, false),
            };
            degrees.push(DegreeMapReport {
                degree: k,
                source: sc.group().clone(),
                target: tc.group().clone(),
                injective,
                surjective,
            });
        }
        Ok(RingHomReport { well_defined: failing.is_empty(), failing_relations: failing, degrees })
    }
}
