use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exponent vector over the generators of a presentation, in declared order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Monomial(vec![0; num_generators])
    }

    pub fn generator(num_generators: usize, index: usize) -> Self {
        let mut e = vec![0; num_generators];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, degrees: &[u32]) -> u32 {
        self.0.iter().zip(degrees).map(|(e, d)| e * d).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Integer polynomial as a sparse map monomial → nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "terms_as_list")]
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(coefficient.into(), m);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (BigInt, Monomial)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, coefficient: BigInt, m: Monomial) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degrees of the terms, ascending and deduplicated.
    pub fn degrees(&self, degrees: &[u32]) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree(degrees)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Common degree of all terms; `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self, degrees: &[u32]) -> Option<u32> {
        match self.degrees(degrees).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::from_terms(self.terms.iter().map(|(m, c)| (c * k, m.clone())))
    }

    pub fn neg(&self) -> IntPolynomial {
        self.scale(&-BigInt::one())
    }

    /// Terms from the largest monomial down, which for homogeneous input is
    /// graded-lex order with the first generator most significant.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&m.format(names));
            } else {
                let _ = write!(s, "{abs}*{}", m.format(names));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["y3".into(), "x4".into()]
    }

    #[test]
    fn formatting() {
        let p = IntPolynomial::from_terms([
            (BigInt::from(1), Monomial(vec![0, 3])),
            (BigInt::from(-2), Monomial(vec![4, 0])),
        ]);
        assert_eq!(p.format(&names()), "-2*y3^4 + x4^3");
        assert_eq!(IntPolynomial::zero().format(&names()), "0");
        assert_eq!(IntPolynomial::monomial(3, Monomial(vec![0, 0])).format(&names()), "3");
    }

    #[test]
    fn homogeneity() {
        let degs = [3, 4];
        let p = IntPolynomial::from_terms([
            (BigInt::from(1), Monomial(vec![4, 0])),
            (BigInt::from(1), Monomial(vec![0, 3])),
        ]);
        assert_eq!(p.homogeneous_degree(&degs), Some(12));
        let q = p.add(&IntPolynomial::monomial(1, Monomial(vec![1, 0])));
        assert_eq!(q.homogeneous_degree(&degs), None);
        assert_eq!(p.add(&p.neg()), IntPolynomial::zero());
    }
}

/// JSON maps need string keys, so terms travel as `[monomial, coefficient]` pairs.
mod terms_as_list {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Monomial;

    pub fn serialize<S: Serializer>(terms: &BTreeMap<Monomial, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(terms.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Monomial, BigInt>, D::Error> {
        Ok(Vec::<(Monomial, BigInt)>::deserialize(d)?.into_iter().collect())
    }
}
