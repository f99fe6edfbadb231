use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{AdditiveElement, AdditiveSet, MultiplicativeSet};
use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MPTQ")]
    Mptq,
    #[serde(rename = "quotient-dominated")]
    QuotientDominated,
    #[serde(rename = "MSTD")]
    Mstd,
    #[serde(rename = "difference-dominated")]
    DifferenceDominated,
    #[serde(rename = "balanced")]
    Balanced,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Mptq => "MPTQ",
            Verdict::QuotientDominated => "quotient-dominated",
            Verdict::Mstd => "MSTD",
            Verdict::DifferenceDominated => "difference-dominated",
            Verdict::Balanced => "balanced",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sizes of the derived sets of one set and the resulting verdict.
///
/// Multiplicative inputs fill `product_size`/`quotient_size`; additive inputs
/// fill `sum_size`/`difference_size`. The unused pair serializes as `null`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(rename = "size")]
    pub set_size: usize,
    pub product_size: Option<usize>,
    pub quotient_size: Option<usize>,
    pub sum_size: Option<usize>,
    pub difference_size: Option<usize>,
    pub verdict: Verdict,
    /// Largest k for which the set is k-special MPTQ; 0 otherwise.
    pub k_special: u64,
}

impl ClassificationReport {
    pub fn multiplicative(set_size: usize, product_size: usize, quotient_size: usize) -> Self {
        let verdict = match product_size.cmp(&quotient_size) {
            std::cmp::Ordering::Greater => Verdict::Mptq,
            std::cmp::Ordering::Less => Verdict::QuotientDominated,
            std::cmp::Ordering::Equal => Verdict::Balanced,
        };
        ClassificationReport {
            set_size,
            product_size: Some(product_size),
            quotient_size: Some(quotient_size),
            sum_size: None,
            difference_size: None,
            verdict,
            k_special: k_special_level(product_size, quotient_size, set_size),
        }
    }

    pub fn additive(set_size: usize, sum_size: usize, difference_size: usize) -> Self {
        let verdict = match sum_size.cmp(&difference_size) {
            std::cmp::Ordering::Greater => Verdict::Mstd,
            std::cmp::Ordering::Less => Verdict::DifferenceDominated,
            std::cmp::Ordering::Equal => Verdict::Balanced,
        };
        ClassificationReport {
            set_size,
            product_size: None,
            quotient_size: None,
            sum_size: Some(sum_size),
            difference_size: Some(difference_size),
            verdict,
            k_special: 0,
        }
    }

    pub fn is_mptq(&self) -> bool {
        self.verdict == Verdict::Mptq
    }

    pub fn is_mstd(&self) -> bool {
        self.verdict == Verdict::Mstd
    }
}

/// `(|A*A|, |A/A|)` or `(|B+B|, |B-B|)`, the commutative operation first.
pub type DerivedSizes = (usize, usize);

/// Sets that can be classified by comparing their two derived sets.
pub trait Classify {
    fn derived_sizes(&self) -> Result<DerivedSizes>;
    fn report(&self) -> Result<ClassificationReport>;
}

impl Classify for MultiplicativeSet {
    fn derived_sizes(&self) -> Result<DerivedSizes> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let elems = self.elements();
        let mut products = HashSet::with_capacity(elems.len() * (elems.len() + 1) / 2);
        let mut quotients = HashSet::with_capacity(elems.len() * elems.len());
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                products.insert(a.multiply(b));
            }
            for b in elems {
                quotients.insert(a.divide(b));
            }
        }
        Ok((products.len(), quotients.len()))
    }

    fn report(&self) -> Result<ClassificationReport> {
        let (p, q) = self.derived_sizes()?;
        Ok(ClassificationReport::multiplicative(self.len(), p, q))
    }
}

impl<T: AdditiveElement> Classify for AdditiveSet<T> {
    fn derived_sizes(&self) -> Result<DerivedSizes> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        let elems = self.elements();
        let mut sums = HashSet::new();
        let mut diffs = HashSet::new();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                sums.insert(a.add(b));
            }
            for b in elems {
                diffs.insert(a.sub(b));
            }
        }
        Ok((sums.len(), diffs.len()))
    }

    fn report(&self) -> Result<ClassificationReport> {
        let (s, d) = self.derived_sizes()?;
        Ok(ClassificationReport::additive(self.len(), s, d))
    }
}

/// Classify a multiplicative or additive set.
pub fn classify<S: Classify + ?Sized>(set: &S) -> Result<ClassificationReport> {
    set.report()
}

pub fn product_set(a: &MultiplicativeSet) -> Result<MultiplicativeSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = a.elements();
    let products: HashSet<FactoredNonzero> = elems
        .iter()
        .enumerate()
        .flat_map(|(i, x)| elems[i..].iter().map(move |y| x.multiply(y)))
        .collect();
    Ok(MultiplicativeSet::from_elements(products))
}

pub fn quotient_set(a: &MultiplicativeSet) -> Result<MultiplicativeSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = a.elements();
    let quotients: HashSet<FactoredNonzero> = elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| x.divide(y)))
        .collect();
    Ok(MultiplicativeSet::from_elements(quotients))
}

pub fn sum_set<T: AdditiveElement>(b: &AdditiveSet<T>) -> Result<AdditiveSet<T>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = b.elements();
    Ok(elems
        .iter()
        .enumerate()
        .flat_map(|(i, x)| elems[i..].iter().map(move |y| x.add(y)))
        .collect())
}

pub fn difference_set<T: AdditiveElement>(b: &AdditiveSet<T>) -> Result<AdditiveSet<T>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = b.elements();
    Ok(elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| x.sub(y)))
        .collect())
}

/// Largest `k >= 1` with `|A*A| - |A/A| >= k|A| + k(k-3)/2 + 1`, or 0 if
/// there is none.
pub fn k_special_level(product_size: usize, quotient_size: usize, set_size: usize) -> u64 {
    if set_size == 0 {
        return 0;
    }
    let gap = product_size as i128 - quotient_size as i128;
    let n = set_size as i128;
    // Strictly increasing in k when n >= 1.
    let threshold = |k: i128| k * n + k * (k - 3) / 2 + 1;
    let mut k: i128 = 0;
    while gap >= threshold(k + 1) {
        k += 1;
    }
    k as u64
}

/// Upper bounds `(n(n+1)/2, n(n-1)+1)` on `|A*A|` and `|A/A|` for `|A| = n`.
pub fn trivial_bounds(set_size: usize) -> (u64, u64) {
    let n = set_size as u64;
    (n * (n + 1) / 2, n * n.saturating_sub(1) + 1)
}
