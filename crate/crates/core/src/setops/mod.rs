//! Finite sets in the multiplicative and additive worlds and the quantities
//! derived from them.

mod classify;
mod multiplicity;
mod structure;

pub use classify::{
    classify, difference_set, k_special_level, product_set, quotient_set, sum_set, trivial_bounds,
    ClassificationReport, Classify, DerivedSizes, Verdict,
};
pub use multiplicity::{
    product_identity, product_multiplicity, quotient_identity, quotient_multiplicity,
    IdentitySides, PairList,
};
pub use structure::{
    adjoin_analysis, from_multiplier_sequence, geometric_plus_one_certificate, symmetry_witness,
    to_multiplier_sequence, AdjoinAnalysis, GeometricCertificate, MultiplierSequence,
};

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{ExponentVector, FactoredNonzero};

/// A finite set of nonzero rationals, kept sorted by absolute value with the
/// negative element first when two elements share an absolute value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicativeSet {
    elements: Vec<FactoredNonzero>,
}

impl MultiplicativeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_elements(elements: impl IntoIterator<Item = FactoredNonzero>) -> Self {
        let mut elements: Vec<FactoredNonzero> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        MultiplicativeSet { elements }
    }

    /// Convenience constructor from nonzero machine integers.
    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Result<Self> {
        let elements = values
            .into_iter()
            .map(FactoredNonzero::from_i64)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elements(elements))
    }

    /// Parse the JSON set literal format: an array of number literals,
    /// given as strings (`"5/2"`) or plain JSON integers.
    pub fn parse_json(text: &str) -> Result<Self> {
        let literals: Vec<Literal> = serde_json::from_str(text)?;
        let elements = literals
            .into_iter()
            .map(|l| l.0.parse())
            .collect::<Result<Vec<FactoredNonzero>>>()?;
        Ok(Self::from_elements(elements))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FactoredNonzero] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FactoredNonzero> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &FactoredNonzero) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Insert `x`, returning `false` if it was already present.
    pub fn insert(&mut self, x: FactoredNonzero) -> bool {
        match self.elements.binary_search(&x) {
            Ok(_) => false,
            Err(pos) => {
                self.elements.insert(pos, x);
                true
            }
        }
    }

    pub fn remove(&mut self, x: &FactoredNonzero) -> bool {
        match self.elements.binary_search(x) {
            Ok(pos) => {
                self.elements.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// `{c * a : a in self}`.
    pub fn scale(&self, c: &FactoredNonzero) -> Self {
        Self::from_elements(self.elements.iter().map(|a| a.multiply(c)))
    }

    /// `{c / a : a in self}`.
    pub fn reflect(&self, c: &FactoredNonzero) -> Self {
        Self::from_elements(self.elements.iter().map(|a| c.divide(a)))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_elements(self.elements.iter().chain(other.elements.iter()).cloned())
    }

    pub fn first(&self) -> Option<&FactoredNonzero> {
        self.elements.first()
    }

    pub fn last(&self) -> Option<&FactoredNonzero> {
        self.elements.last()
    }
}

impl FromIterator<FactoredNonzero> for MultiplicativeSet {
    fn from_iter<I: IntoIterator<Item = FactoredNonzero>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}

impl<'a> IntoIterator for &'a MultiplicativeSet {
    type Item = &'a FactoredNonzero;
    type IntoIter = std::slice::Iter<'a, FactoredNonzero>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl Serialize for MultiplicativeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiplicativeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let literals = Vec::<Literal>::deserialize(deserializer)?;
        literals
            .into_iter()
            .map(|l| l.0.parse::<FactoredNonzero>())
            .collect::<Result<Vec<_>>>()
            .map(Self::from_elements)
            .map_err(serde::de::Error::custom)
    }
}

/// A number literal as it appears in JSON: either a string or an integer.
struct Literal(String);

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(deserializer)? {
            serde_json::Value::String(s) => Ok(Literal(s)),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Literal(n.to_string())),
            other => Err(serde::de::Error::custom(format!(
                "expected a number literal string or integer, found {other}"
            ))),
        }
    }
}

/// Group elements that can live in an [`AdditiveSet`].
pub trait AdditiveElement: Clone + Eq + Hash + Ord + Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
}

impl AdditiveElement for BigInt {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl AdditiveElement for ExponentVector {
    fn add(&self, other: &Self) -> Self {
        ExponentVector::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ExponentVector::sub(self, other)
    }
}

/// A finite sorted set in an additive group; integers by default, or
/// exponent vectors for the lattice image of a multiplicative set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveSet<T: AdditiveElement = BigInt> {
    elements: Vec<T>,
}

/// The additive image of a set of positive rationals under the formal log.
pub type LatticeSet = AdditiveSet<ExponentVector>;

impl<T: AdditiveElement> Default for AdditiveSet<T> {
    fn default() -> Self {
        AdditiveSet {
            elements: Vec::new(),
        }
    }
}

impl<T: AdditiveElement> AdditiveSet<T> {
    pub fn from_elements(elements: impl IntoIterator<Item = T>) -> Self {
        let mut elements: Vec<T> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        AdditiveSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

impl AdditiveSet<BigInt> {
    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::from_elements(values.into_iter().map(BigInt::from))
    }

    /// Parse a JSON array of integer literals (strings or JSON integers).
    pub fn parse_json(text: &str) -> Result<Self> {
        let literals: Vec<Literal> = serde_json::from_str(text)?;
        let elements = literals
            .into_iter()
            .map(|l| parse_integer(&l.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_elements(elements))
    }

    pub fn min(&self) -> Option<&BigInt> {
        self.elements.first()
    }

    pub fn max(&self) -> Option<&BigInt> {
        self.elements.last()
    }

    /// `max - min`, or `None` for the empty set.
    pub fn diameter(&self) -> Option<BigInt> {
        Some(self.max()? - self.min()?)
    }

    pub fn translate(&self, by: &BigInt) -> Self {
        AdditiveSet {
            elements: self.elements.iter().map(|x| x + by).collect(),
        }
    }
}

fn parse_integer(text: &str) -> Result<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedNumber(text.to_string()));
    }
    text.parse()
        .map_err(|_| Error::MalformedNumber(text.to_string()))
}

impl<T: AdditiveElement> FromIterator<T> for AdditiveSet<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}

impl Serialize for AdditiveSet<BigInt> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements.iter().map(|x| x.to_string()))
    }
}

impl<'de> Deserialize<'de> for AdditiveSet<BigInt> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let literals = Vec::<Literal>::deserialize(deserializer)?;
        literals
            .into_iter()
            .map(|l| parse_integer(&l.0))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_elements)
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for LatticeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_dedup() {
        let set = MultiplicativeSet::parse_json(
            r#"["5", 1280, "-10", "-40", "40", "2560", "160", "320", "5"]"#,
        )
        .unwrap();
        let shown: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        assert_eq!(
            shown,
            ["5", "-10", "-40", "40", "160", "320", "1280", "2560"]
        );
        assert!(set.contains(&"-40".parse().unwrap()));
        assert!(!set.contains(&"10".parse().unwrap()));
    }

    #[test]
    fn insert_remove_keep_order() {
        let mut set = MultiplicativeSet::from_integers([3, -3, 1]).unwrap();
        assert!(set.insert("-1".parse().unwrap()));
        assert!(!set.insert("3".parse().unwrap()));
        assert_eq!(
            serde_json::to_string(&set).unwrap(),
            r#"["-1","1","-3","3"]"#
        );
        assert!(set.remove(&"1".parse().unwrap()));
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn parse_json_rejects_bad_literals() {
        assert!(MultiplicativeSet::parse_json(r#"["0"]"#).is_err());
        assert!(MultiplicativeSet::parse_json(r#"[1.5]"#).is_err());
        assert!(MultiplicativeSet::parse_json(r#"{"a": 1}"#).is_err());
        assert!(AdditiveSet::parse_json(r#"["1/2"]"#).is_err());
        let b = AdditiveSet::parse_json(r#"["0", 2, "-3"]"#).unwrap();
        assert_eq!(b, AdditiveSet::from_integers([-3, 0, 2]));
        assert_eq!(b.diameter(), Some(BigInt::from(5)));
    }
}
