//! Multiplicity maps: which unordered pairs of elements produce each product
//! or quotient, and the counting identities tying them to derived-set sizes.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::Ratio;

use super::MultiplicativeSet;
use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;

/// Unordered pairs, stored as `(a, b)` with `a / b = q` (quotients) or
/// `a * b = p` (products, `a` before `b` in set order).
pub type PairList = Vec<(FactoredNonzero, FactoredNonzero)>;

/// `q -> {{a, b} : a / b = q}` for every `q` in `A/A`.
///
/// Each unordered pair appears once: a pair `{a, -a}` yields `-1` in both
/// orders and is recorded a single time.
pub fn quotient_multiplicity(a: &MultiplicativeSet) -> Result<HashMap<FactoredNonzero, PairList>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = a.elements();
    let mut map: HashMap<FactoredNonzero, PairList> = HashMap::new();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let q = x.divide(y);
            if j < i && q == FactoredNonzero::minus_one() {
                continue;
            }
            map.entry(q).or_default().push((x.clone(), y.clone()));
        }
    }
    Ok(map)
}

/// `p -> {{a, b} : a * b = p}` for every `p` in `A*A`, including `{a, a}`.
pub fn product_multiplicity(a: &MultiplicativeSet) -> Result<HashMap<FactoredNonzero, PairList>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems = a.elements();
    let mut map: HashMap<FactoredNonzero, PairList> = HashMap::new();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i..] {
            map.entry(x.multiply(y))
                .or_default()
                .push((x.clone(), y.clone()));
        }
    }
    Ok(map)
}

/// Both sides of a counting identity, as exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentitySides {
    pub lhs: Ratio<i64>,
    pub rhs: Ratio<i64>,
}

impl IdentitySides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `(n(n-1) + 1 - |A/A|) / 2` against the excess multiplicity of the
/// quotients with `|q| >= 1, q != 1`.
///
/// For `|q| > 1` the summand is `|(A/A)_q| - 1`. The class `q = -1` is
/// closed under inversion, so its pairs are counted once per orientation
/// and halved, giving `|(A/A)_{-1}| - 1/2`; with that weighting the identity
/// holds for mixed-sign sets too.
pub fn quotient_identity(a: &MultiplicativeSet) -> Result<IdentitySides> {
    let map = quotient_multiplicity(a)?;
    let n = a.len() as i64;
    let lhs = Ratio::new(n * (n - 1) + 1 - map.len() as i64, 2);
    let mut rhs = Ratio::from_integer(0);
    for (q, pairs) in &map {
        let count = pairs.len() as i64;
        match q.abs_compare(&FactoredNonzero::ONE) {
            Ordering::Greater => rhs += Ratio::from_integer(count - 1),
            Ordering::Equal if q.is_negative() => rhs += Ratio::new(2 * count - 1, 2),
            _ => {}
        }
    }
    Ok(IdentitySides { lhs, rhs })
}

/// `n(n+1)/2 - |A*A|` against `sum_p (|(A*A)_p| - 1)`.
pub fn product_identity(a: &MultiplicativeSet) -> Result<IdentitySides> {
    let map = product_multiplicity(a)?;
    let n = a.len() as i64;
    let lhs = Ratio::from_integer(n * (n + 1) / 2 - map.len() as i64);
    let rhs = Ratio::from_integer(map.values().map(|pairs| pairs.len() as i64 - 1).sum());
    Ok(IdentitySides { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(text: &str) -> FactoredNonzero {
        text.parse().unwrap()
    }

    fn pair_strings(pairs: &PairList) -> Vec<(String, String)> {
        let mut out: Vec<_> = pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn worked_example_quotient_classes() {
        let a = MultiplicativeSet::from_integers([1, 2, 3, 6, 9]).unwrap();
        let map = quotient_multiplicity(&a).unwrap();
        assert_eq!(map.len(), 13);
        assert_eq!(
            pair_strings(&map[&n("3")]),
            [("3", "1"), ("6", "2"), ("9", "3")].map(|(x, y)| (x.to_string(), y.to_string()))
        );
        assert_eq!(map[&n("2")].len(), 2);
        assert_eq!(map[&n("3/2")].len(), 2);
        assert_eq!(map[&n("9/2")].len(), 1);
        let sides = quotient_identity(&a).unwrap();
        assert_eq!(sides.lhs, Ratio::from_integer(4));
        assert_eq!(sides.rhs, Ratio::from_integer(4));
    }

    #[test]
    fn worked_example_product_classes() {
        let a = MultiplicativeSet::from_integers([1, 2, 3, 6, 9]).unwrap();
        let map = product_multiplicity(&a).unwrap();
        assert_eq!(map.len(), 12);
        assert_eq!(map[&n("6")].len(), 2);
        assert_eq!(map[&n("9")].len(), 2);
        assert_eq!(map[&n("18")].len(), 2);
        let sides = product_identity(&a).unwrap();
        assert_eq!(sides.lhs, Ratio::from_integer(3));
        assert_eq!(sides.rhs, Ratio::from_integer(3));
    }

    #[test]
    fn distinct_products_have_multiplicity_one() {
        let a = MultiplicativeSet::from_integers([2, 4]).unwrap();
        let map = product_multiplicity(&a).unwrap();
        assert_eq!(
            pair_strings(&map[&n("8")]),
            [("2".to_string(), "4".to_string())]
        );
        assert!(map.values().all(|pairs| pairs.len() == 1));
        assert!(product_identity(&a).unwrap().holds());
    }

    #[test]
    fn minus_one_class_counts_each_pair_once() {
        let a = MultiplicativeSet::from_integers([1, -1, 2, -2]).unwrap();
        let map = quotient_multiplicity(&a).unwrap();
        assert_eq!(map[&n("-1")].len(), 2);
        let sides = quotient_identity(&a).unwrap();
        assert!(sides.holds(), "{sides:?}");
        // |A/A| = {1, -1, 2, -2, 1/2, -1/2} so the left side is a half-integer.
        assert_eq!(sides.lhs, Ratio::new(7, 2));
    }

    #[test]
    fn empty_rejected() {
        let empty = MultiplicativeSet::new();
        assert!(quotient_multiplicity(&empty).is_err());
        assert!(product_multiplicity(&empty).is_err());
    }
}
