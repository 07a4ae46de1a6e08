use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{IntPolynomial, Monomial, RingError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec { name: name.into(), degree }
    }
}

/// How generators commute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignRule {
    /// `ab = (-1)^{|a||b|} ba`; odd generators also satisfy `2x^2 = 0`.
    #[default]
    GradedCommutative,
    /// `ab = ba` with no signs.
    Commutative,
}

/// Generators with degrees and homogeneous integer relations, truncated
/// above `top_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingPresentation {
    pub name: String,
    generators: Vec<GeneratorSpec>,
    relations: Vec<IntPolynomial>,
    top_degree: u32,
    sign_rule: SignRule,
}

impl RingPresentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<GeneratorSpec>,
        relations: Vec<IntPolynomial>,
        top_degree: u32,
        sign_rule: SignRule,
    ) -> Result<Self, RingError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(RingError::ZeroDegreeGenerator(g.name.clone()));
            }
        }
        let p = RingPresentation { name: name.into(), generators, relations, top_degree, sign_rule };
        let degrees = p.degrees();
        let names = p.names();
        for r in &p.relations {
            if r.terms().any(|(m, _)| m.0.len() != degrees.len()) {
                return Err(RingError::Arity);
            }
            match r.homogeneous_degree(&degrees) {
                Some(0) => return Err(RingError::ConstantRelation(r.format(&names))),
                Some(d) if d > 2 * top_degree => {
                    return Err(RingError::RelationDegree { poly: r.format(&names), degree: d, top: top_degree })
                }
                Some(_) => {}
                None if r.is_zero() => {}
                None => {
                    return Err(RingError::NotHomogeneous {
                        poly: r.format(&names),
                        degrees: r.degrees(&degrees),
                    })
                }
            }
        }
        Ok(p)
    }

    /// Builds a presentation from relation strings in the ring DSL syntax.
    pub fn parse(
        name: &str,
        generators: &[(&str, u32)],
        relations: &[&str],
        top_degree: u32,
    ) -> Result<Self, RingError> {
        let gens: Vec<GeneratorSpec> = generators.iter().map(|(n, d)| GeneratorSpec::new(*n, *d)).collect();
        let shell = RingPresentation::new(name, gens.clone(), Vec::new(), top_degree, SignRule::default())?;
        let rels = relations
            .iter()
            .map(|r| shell.parse_polynomial(r))
            .collect::<Result<Vec<_>, _>>()?;
        RingPresentation::new(name, gens, rels, top_degree, SignRule::default())
    }

    pub fn parse_polynomial(&self, text: &str) -> Result<IntPolynomial, RingError> {
        crate::dsl::parse_polynomial_in(self, text).map_err(|e| RingError::Parse(e.to_string()))
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn relations(&self) -> &[IntPolynomial] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn sign_rule(&self) -> SignRule {
        self.sign_rule
    }

    pub fn with_sign_rule(mut self, rule: SignRule) -> Self {
        self.sign_rule = rule;
        self
    }

    /// Same generators and top degree with extra relations appended.
    pub fn with_extra_relations(&self, extra: &[IntPolynomial]) -> Result<Self, RingError> {
        let mut rels = self.relations.clone();
        rels.extend_from_slice(extra);
        RingPresentation::new(self.name.clone(), self.generators.clone(), rels, self.top_degree, self.sign_rule)
    }

    /// Appends relations without the degree bound, for scans above the top.
    pub(crate) fn with_extra_relations_unchecked(&self, extra: &[IntPolynomial]) -> Self {
        let mut p = self.clone();
        p.relations.extend_from_slice(extra);
        p
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_monomial(&self, name: &str) -> Option<Monomial> {
        self.generator_index(name).map(|i| Monomial::generator(self.generators.len(), i))
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.degree(&self.degrees())
    }

    pub fn format_polynomial(&self, p: &IntPolynomial) -> String {
        p.format(&self.names())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.format(&self.names())
    }

    /// Monomials of degree `k`, graded-lex with the first generator most
    /// significant, largest first.
    pub fn monomials_of_degree(&self, k: u32) -> Vec<Monomial> {
        fn go(degrees: &[u32], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == degrees.len() {
                if rest == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            for e in (0..=rest / degrees[i]).rev() {
                cur.push(e);
                go(degrees, i + 1, rest - e * degrees[i], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.degrees(), 0, k, &mut Vec::new(), &mut out);
        out
    }

    /// Product of two canonical monomials with the sign from reordering.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> (bool, Monomial) {
        let mut negative = false;
        if self.sign_rule == SignRule::GradedCommutative {
            // Moving generator j of b left past generator i > j of a.
            let mut swaps: u64 = 0;
            for (i, g) in self.generators.iter().enumerate() {
                if g.degree % 2 == 0 || a.0[i] == 0 {
                    continue;
                }
                for j in 0..i {
                    if self.generators[j].degree % 2 == 1 {
                        swaps += u64::from(a.0[i]) * u64::from(b.0[j]);
                    }
                }
            }
            negative = swaps % 2 == 1;
        }
        let m = Monomial(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
        (negative, m)
    }

    pub fn multiply(&self, p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ma, ca) in p.terms() {
            for (mb, cb) in q.terms() {
                let (neg, m) = self.multiply_monomials(ma, mb);
                let c: BigInt = ca * cb;
                out.add_term(if neg { -c } else { c }, m);
            }
        }
        out
    }

    pub fn power(&self, p: &IntPolynomial, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::monomial(1, Monomial::one(self.generators.len()));
        for _ in 0..e {
            acc = self.multiply(&acc, p);
        }
        acc
    }

    /// Declared relations plus `2x^2` for odd generators under the graded
    /// sign rule.
    pub fn effective_relations(&self) -> Vec<IntPolynomial> {
        let mut rels = self.relations.clone();
        if self.sign_rule == SignRule::GradedCommutative {
            let n = self.generators.len();
            for (i, g) in self.generators.iter().enumerate() {
                if g.degree % 2 == 1 {
                    let mut m = Monomial::one(n);
                    m.0[i] = 2;
                    rels.push(IntPolynomial::monomial(2, m));
                }
            }
        }
        rels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g83() -> RingPresentation {
        RingPresentation::parse(
            "G83",
            &[("y3", 3), ("x4", 4), ("x7", 7)],
            &["2*y3", "y3*x4", "y3^3", "x4^3", "x7^2"],
            15,
        )
        .unwrap()
    }

    #[test]
    fn monomial_enumeration_order() {
        let p = g83();
        let names: Vec<String> =
            p.monomials_of_degree(15).iter().map(|m| p.format_monomial(m)).collect();
        assert_eq!(names, vec!["y3^5", "y3*x4^3", "x4^2*x7"]);
        assert_eq!(p.monomials_of_degree(0).len(), 1);
        assert!(p.monomials_of_degree(1).is_empty());
    }

    #[test]
    fn graded_signs() {
        let p = RingPresentation::parse("E", &[("a", 1), ("b", 1), ("c", 2)], &[], 4).unwrap();
        let a = p.generator_monomial("a").unwrap();
        let b = p.generator_monomial("b").unwrap();
        let c = p.generator_monomial("c").unwrap();
        assert!(!p.multiply_monomials(&a, &b).0);
        assert!(p.multiply_monomials(&b, &a).0);
        assert!(!p.multiply_monomials(&c, &a).0);
        let comm = p.clone().with_sign_rule(SignRule::Commutative);
        assert!(!comm.multiply_monomials(&b, &a).0);
        assert_eq!(p.effective_relations().len(), 2);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            RingPresentation::parse("Bad", &[("a", 2)], &["a + 1"], 4),
            Err(RingError::NotHomogeneous { .. })
        ));
        assert!(matches!(
            RingPresentation::parse("Dup", &[("a", 2), ("a", 4)], &[], 4),
            Err(RingError::DuplicateGenerator(_))
        ));
    }
}
