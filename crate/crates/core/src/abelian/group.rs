use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{smith_normal_form_left, IntegerMatrix};

/// A finitely generated abelian group `Z^rank ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_t}` in
/// invariant-factor form: every `d_i ≥ 2` and `d_i | d_{i+1}`.
///
/// Structural equality is isomorphism. Group coordinates used elsewhere in
/// the crate list the torsion generators first (in factor order), then the
/// free ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    rank: usize,
    #[serde(serialize_with = "ser_factors", deserialize_with = "de_factors")]
    torsion: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invariant factor {0} is not at least 2")]
    FactorTooSmall(BigUint),
    #[error("invariant factors {0} and {1} violate the divisibility chain")]
    NotDivisible(BigUint, BigUint),
    #[error("cannot parse group {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// `Z_d`; `cyclic(0)` is `Z` and `cyclic(1)` is trivial.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => AbelianGroup { rank: 0, torsion: vec![BigUint::from(d)] },
        }
    }

    /// Validated constructor from an invariant-factor list.
    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Result<Self, GroupError> {
        for d in &torsion {
            if *d < BigUint::from(2u32) {
                return Err(GroupError::FactorTooSmall(d.clone()));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(GroupError::NotDivisible(w[0].clone(), w[1].clone()));
            }
        }
        Ok(AbelianGroup { rank, torsion })
    }

    /// Normalises an arbitrary list of cyclic orders (0 meaning `Z`, 1 ignored)
    /// into invariant-factor form.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigUint>>(orders: I) -> Self {
        let mut rank = 0;
        let mut finite = Vec::new();
        for d in orders {
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                finite.push(d);
            }
        }
        Self::from_primary_parts(rank, &primary_parts(&finite))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Number of generators in canonical coordinates.
    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of the `i`-th canonical generator, 0 for free generators.
    pub fn generator_order(&self, i: usize) -> BigUint {
        self.torsion.get(i).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn torsion_subgroup(&self) -> AbelianGroup {
        AbelianGroup { rank: 0, torsion: self.torsion.clone() }
    }

    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .cloned()
            .chain(std::iter::repeat_n(BigUint::zero(), self.rank + other.rank));
        Self::from_cyclic_orders(orders)
    }

    /// Dimension of `G ⊗ Z_2` over `Z_2`.
    pub fn tensor_z2(&self) -> usize {
        self.rank + self.tor_z2()
    }

    /// Dimension of `Tor(G, Z_2)` over `Z_2`.
    pub fn tor_z2(&self) -> usize {
        self.torsion.iter().filter(|d| d.is_even()).count()
    }

    /// Primes dividing the torsion order, ascending.
    pub fn torsion_primes(&self) -> Vec<BigUint> {
        self.torsion.last().map(prime_factors).unwrap_or_default().into_keys().collect()
    }

    /// Type of the `p`-primary torsion part as a partition of exponents,
    /// largest part first.
    pub fn p_partition(&self, p: &BigUint) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .torsion
            .iter()
            .map(|d| valuation(d, p))
            .filter(|&e| e > 0)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Reassembles a group from free rank and per-prime exponent partitions.
    pub fn from_primary_parts(rank: usize, parts: &BTreeMap<BigUint, Vec<u32>>) -> AbelianGroup {
        let len = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigUint::one(); len];
        for (p, partition) in parts {
            let mut sorted = partition.clone();
            sorted.sort_unstable();
            // Smallest exponents go to the smallest invariant factors.
            let offset = len - sorted.len();
            for (i, &e) in sorted.iter().enumerate() {
                torsion[offset + i] *= p.pow(e);
            }
        }
        torsion.retain(|d| !d.is_one());
        AbelianGroup { rank, torsion }
    }

    /// LaTeX rendering in the `\mathbb Z` style.
    pub fn to_latex(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("\\mathbb Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("\\mathbb Z^{{{}}}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| {
            let s = d.to_string();
            if s.len() == 1 { format!("\\mathbb Z_{s}") } else { format!("\\mathbb Z_{{{s}}}") }
        }));
        parts.join("\\oplus ")
    }

    /// ASCII rendering: `Z + Z_2` instead of `Z ⊕ Z_2`.
    pub fn to_ascii(&self) -> String {
        self.to_string().replace(" ⊕ ", " + ")
    }
}

impl Default for AbelianGroup {
    fn default() -> Self {
        Self::trivial()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    /// Accepts `0`, `Z`, `Z^r`, `Z_d` joined by `⊕` or `+`. Summands may
    /// come in any order and need not be in invariant-factor form.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::Parse { text: s.to_string(), reason: reason.into() };
        let normalized = s.replace('⊕', "+");
        let mut orders = Vec::new();
        for raw in normalized.split('+') {
            let term = raw.trim();
            if term == "0" {
                continue;
            }
            if term == "Z" {
                orders.push(BigUint::zero());
            } else if let Some(exp) = term.strip_prefix("Z^") {
                let r: usize = exp.trim().parse().map_err(|_| err("bad rank exponent"))?;
                orders.extend(std::iter::repeat_n(BigUint::zero(), r));
            } else if let Some(ord) = term.strip_prefix("Z_") {
                let d: BigUint = ord.trim().parse().map_err(|_| err("bad cyclic order"))?;
                if d.is_zero() {
                    return Err(err("cyclic order must be positive"));
                }
                orders.push(d);
            } else {
                return Err(err(&format!("unrecognised summand {term:?}")));
            }
        }
        Ok(Self::from_cyclic_orders(orders))
    }
}

/// Cokernel `Z^n / colspan(relations)` where `n = relations.rows()`.
pub fn cokernel(relations: &IntegerMatrix) -> AbelianGroup {
    let snf = smith_normal_form_left(relations);
    cokernel_from_diagonal(relations.rows(), &snf.diagonal[..snf.rank])
}

pub(crate) fn cokernel_from_diagonal(n: usize, nonzero: &[BigInt]) -> AbelianGroup {
    let torsion: Vec<BigUint> = nonzero
        .iter()
        .filter_map(|d| d.to_biguint())
        .filter(|d| !d.is_one())
        .collect();
    AbelianGroup { rank: n - nonzero.len(), torsion }
}

pub(crate) fn valuation(d: &BigUint, p: &BigUint) -> u32 {
    let mut e = 0;
    let mut x = d.clone();
    while !x.is_zero() && (&x % p).is_zero() {
        x /= p;
        e += 1;
    }
    e
}

/// Prime factorisation by trial division.
pub(crate) fn prime_factors(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    if let Some(mut m) = n.to_u64() {
        let mut p = 2u64;
        while p * p <= m {
            while m % p == 0 {
                *out.entry(BigUint::from(p)).or_insert(0) += 1;
                m /= p;
            }
            p += 1;
        }
        if m > 1 {
            *out.entry(BigUint::from(m)).or_insert(0) += 1;
        }
        return out;
    }
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        while (&m % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            m /= &p;
        }
        p += 1u32;
    }
    if !m.is_one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

fn primary_parts(orders: &[BigUint]) -> BTreeMap<BigUint, Vec<u32>> {
    let mut parts: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
    for d in orders {
        for (p, e) in prime_factors(d) {
            parts.entry(p).or_default().push(e);
        }
    }
    parts
}

fn ser_factors<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match d.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn de_factors<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Factor {
        Small(u64),
        Big(String),
    }
    let raw: Vec<Factor> = Vec::deserialize(d)?;
    let factors = raw
        .into_iter()
        .map(|f| match f {
            Factor::Small(x) => Ok(BigUint::from(x)),
            Factor::Big(s) => s.parse::<BigUint>().map_err(de::Error::custom),
        })
        .collect::<Result<Vec<_>, _>>()?;
    // Route through the validating constructor.
    AbelianGroup::new(0, factors.clone()).map_err(de::Error::custom)?;
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(g("0"), AbelianGroup::trivial());
        assert_eq!(g("Z + Z_2").to_string(), "Z ⊕ Z_2");
        assert_eq!(g("Z_2 ⊕ Z").to_string(), "Z ⊕ Z_2");
        assert_eq!(g("Z_2 + Z_3").to_string(), "Z_6");
        assert_eq!(g("Z_4 + Z_2 + Z^2").to_string(), "Z^2 ⊕ Z_2 ⊕ Z_4");
        assert_eq!(g("Z_1 + Z"), AbelianGroup::free(1));
        assert!("Q".parse::<AbelianGroup>().is_err());
        assert!("Z_0".parse::<AbelianGroup>().is_err());
        assert_eq!(g("Z + Z_2").to_ascii(), "Z + Z_2");
        assert_eq!(g("Z + Z_2").to_latex(), "\\mathbb Z\\oplus \\mathbb Z_2");
    }

    #[test]
    fn constructor_rejects_bad_chains() {
        assert!(AbelianGroup::new(0, vec![BigUint::from(2u32), BigUint::from(3u32)]).is_err());
        assert!(AbelianGroup::new(0, vec![BigUint::from(1u32)]).is_err());
        assert!(AbelianGroup::new(1, vec![BigUint::from(2u32), BigUint::from(4u32)]).is_ok());
    }

    #[test]
    fn cokernel_examples() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 0]]);
        assert_eq!(cokernel(&m), g("Z + Z_2"));
        assert_eq!(cokernel(&IntegerMatrix::from_rows(&[vec![2]])), g("Z_2"));
        // Degree 12 of the W^8 ring: basis xb2^6, xb2^3 xb6, xb6^2; columns
        // are the relation multiples.
        let m = IntegerMatrix::from_rows(&[vec![1, 0, 0], vec![-2, 1, 0], vec![0, -2, 1]]);
        assert_eq!(cokernel(&m), AbelianGroup::trivial());
        assert_eq!(cokernel(&IntegerMatrix::zeros(3, 0)), AbelianGroup::free(3));
    }

    #[test]
    fn z2_functors() {
        assert_eq!((g("Z").tensor_z2(), g("Z").tor_z2()), (1, 0));
        assert_eq!((g("Z_2").tensor_z2(), g("Z_2").tor_z2()), (1, 1));
        assert_eq!((g("Z + Z_2 + Z_3").tensor_z2(), g("Z + Z_2 + Z_3").tor_z2()), (2, 1));
        assert_eq!(g("Z_3").tensor_z2(), 0);
    }

    #[test]
    fn primary_decomposition() {
        let x = g("Z_12 + Z_2");
        assert_eq!(x.to_string(), "Z_2 ⊕ Z_12");
        assert_eq!(x.p_partition(&BigUint::from(2u32)), vec![2, 1]);
        assert_eq!(x.p_partition(&BigUint::from(3u32)), vec![1]);
        assert_eq!(x.torsion_primes(), vec![BigUint::from(2u32), BigUint::from(3u32)]);
    }

    #[test]
    fn json_shape() {
        let x = g("Z + Z_2");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"rank":1,"torsion":[2]}"#);
        let back: AbelianGroup = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":[2,3]}"#).is_err());
    }
}
