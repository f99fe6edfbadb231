//! Structural facts about a single set: what adjoining an element adds,
//! symmetry, multiplier-sequence encoding and the geometric-progression
//! certificate.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MultiplicativeSet;
use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;

/// Products and quotients that appear only after adjoining an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjoinAnalysis {
    pub new_products: Vec<FactoredNonzero>,
    pub new_quotients: Vec<FactoredNonzero>,
}

impl AdjoinAnalysis {
    pub fn counts(&self) -> (usize, usize) {
        (self.new_products.len(), self.new_quotients.len())
    }
}

/// Elements of `(A ∪ {x})·(A ∪ {x}) \ A·A` and likewise for quotients.
pub fn adjoin_analysis(a: &MultiplicativeSet, x: &FactoredNonzero) -> Result<AdjoinAnalysis> {
    if a.contains(x) {
        return Err(Error::AlreadyMember(x.to_string()));
    }
    let elems = a.elements();
    let mut old_products = HashSet::new();
    let mut old_quotients = HashSet::new();
    for (i, u) in elems.iter().enumerate() {
        for v in &elems[i..] {
            old_products.insert(u.multiply(v));
        }
        for v in elems {
            old_quotients.insert(u.divide(v));
        }
    }
    let mut new_products: HashSet<FactoredNonzero> = elems
        .iter()
        .map(|u| u.multiply(x))
        .chain(std::iter::once(x.multiply(x)))
        .filter(|p| !old_products.contains(p))
        .collect();
    let mut new_quotients: HashSet<FactoredNonzero> = elems
        .iter()
        .flat_map(|u| [x.divide(u), u.divide(x)])
        .chain(std::iter::once(FactoredNonzero::ONE))
        .filter(|q| !old_quotients.contains(q))
        .collect();
    let sorted = |set: &mut HashSet<FactoredNonzero>| {
        let mut v: Vec<_> = set.drain().collect();
        v.sort();
        v
    };
    Ok(AdjoinAnalysis {
        new_products: sorted(&mut new_products),
        new_quotients: sorted(&mut new_quotients),
    })
}

/// Returns `c` with `c / A = A`, if one exists.
///
/// `x -> c/x` reverses the absolute-value order, so `c` must be the product
/// of a smallest element with a largest one. Only those (at most two)
/// candidates are checked.
pub fn symmetry_witness(a: &MultiplicativeSet) -> Result<Option<FactoredNonzero>> {
    let (first, last) = match (a.first(), a.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::EmptySet),
    };
    let top = a
        .iter()
        .rev()
        .take_while(|x| x.abs_compare(last) == Ordering::Equal);
    for candidate in top.map(|x| first.multiply(x)) {
        if a.iter().all(|x| a.contains(&candidate.divide(x))) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// A set written as its smallest element followed by consecutive ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierSequence {
    pub head: FactoredNonzero,
    pub ratios: Vec<FactoredNonzero>,
}

impl fmt::Display for MultiplierSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} |", self.head)?;
        for (i, r) in self.ratios.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{r}")?;
        }
        f.write_str(")")
    }
}

/// Encode in canonical order (negative first at equal absolute value).
pub fn to_multiplier_sequence(a: &MultiplicativeSet) -> Result<MultiplierSequence> {
    let head = a.first().ok_or(Error::EmptySet)?.clone();
    let ratios = a
        .elements()
        .windows(2)
        .map(|w| w[1].divide(&w[0]))
        .collect();
    Ok(MultiplierSequence { head, ratios })
}

fn check_ratio(r: &FactoredNonzero) -> Result<()> {
    if r.is_one() || r.abs_compare(&FactoredNonzero::ONE) == Ordering::Less {
        return Err(Error::InvalidRatio(r.to_string()));
    }
    Ok(())
}

pub fn from_multiplier_sequence(ms: &MultiplierSequence) -> Result<MultiplicativeSet> {
    let mut seen = HashSet::with_capacity(ms.ratios.len() + 1);
    let mut current = ms.head.clone();
    seen.insert(current.clone());
    for r in &ms.ratios {
        check_ratio(r)?;
        current = current.multiply(r);
        if !seen.insert(current.clone()) {
            return Err(Error::DuplicateElement(current.to_string()));
        }
    }
    Ok(MultiplicativeSet::from_elements(seen))
}

/// Witness that a set is `{a, ar, ..., ar^(n-1)}` plus at most one extra
/// element `b`; such a set is never MPTQ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricCertificate {
    pub a: FactoredNonzero,
    pub r: FactoredNonzero,
    pub n: usize,
    pub b: Option<FactoredNonzero>,
}

/// `(a, r)` if the canonically ordered `elems` form `a, ar, ar^2, ...` with
/// `r` not in `{0, ±1}`.
fn as_progression(elems: &[FactoredNonzero]) -> Option<(FactoredNonzero, FactoredNonzero)> {
    let a = elems.first()?.clone();
    if elems.len() == 1 {
        return Some((a, FactoredNonzero::prime(2).expect("2 is prime")));
    }
    let r = elems[1].divide(&elems[0]);
    if r.is_unit() {
        return None;
    }
    elems
        .windows(2)
        .all(|w| w[1].divide(&w[0]) == r)
        .then_some((a, r))
}

pub fn geometric_plus_one_certificate(a: &MultiplicativeSet) -> Option<GeometricCertificate> {
    let elems = a.elements();
    if let Some((start, r)) = as_progression(elems) {
        return Some(GeometricCertificate {
            a: start,
            r,
            n: elems.len(),
            b: None,
        });
    }
    if elems.len() < 2 {
        return None;
    }
    let mut rest = Vec::with_capacity(elems.len() - 1);
    for skip in 0..elems.len() {
        rest.clear();
        rest.extend(
            elems
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, x)| x.clone()),
        );
        if let Some((start, mut r)) = as_progression(&rest) {
            let b = elems[skip].clone();
            if rest.len() == 1 {
                // Any admissible ratio works for a one-term progression.
                let ratio = b.divide(&start);
                if !ratio.is_unit() {
                    r = ratio;
                }
            }
            return Some(GeometricCertificate {
                a: start,
                r,
                n: rest.len(),
                b: Some(b),
            });
        }
    }
    None
}
