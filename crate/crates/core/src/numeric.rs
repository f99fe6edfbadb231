//! Exact nonzero rationals held in factored form.
//!
//! A [`FactoredNonzero`] is a sign together with a sorted list of
//! `(prime, exponent)` pairs with no zero exponents. Because the
//! representation is canonical, structural equality and hashing coincide
//! with numeric equality, which is what derived-set counting relies on.
//! Multiplication and division are merges of the exponent lists.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes;

/// A nonzero rational `sign * prod(p^e)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FactoredNonzero {
    negative: bool,
    exponents: Vec<(u64, i64)>,
}

/// Formal logarithm of a [`FactoredNonzero`]: the sign becomes a bit in
/// `Z/2` and the exponents become integer coordinates indexed by prime.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    sign_bit: u8,
    coords: Vec<(u64, i64)>,
}

/// Merge two sorted exponent lists, combining equal primes with `combine`
/// (applied as `combine(lhs, rhs)`, with a missing side treated as 0) and
/// dropping zero results.
fn merge_exponents(
    lhs: &[(u64, i64)],
    rhs: &[(u64, i64)],
    combine: impl Fn(i64, i64) -> i64,
) -> Vec<(u64, i64)> {
    let mut out = Vec::with_capacity(lhs.len() + rhs.len());
    let (mut i, mut j) = (0, 0);
    while i < lhs.len() || j < rhs.len() {
        let (p, e) = match (lhs.get(i), rhs.get(j)) {
            (Some(&(p, a)), Some(&(q, b))) => match p.cmp(&q) {
                Ordering::Less => {
                    i += 1;
                    (p, combine(a, 0))
                }
                Ordering::Greater => {
                    j += 1;
                    (q, combine(0, b))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (p, combine(a, b))
                }
            },
            (Some(&(p, a)), None) => {
                i += 1;
                (p, combine(a, 0))
            }
            (None, Some(&(q, b))) => {
                j += 1;
                (q, combine(0, b))
            }
            (None, None) => unreachable!(),
        };
        if e != 0 {
            out.push((p, e));
        }
    }
    out
}

/// Sort by prime, merge repeats and drop zeros.
fn normalize(mut pairs: Vec<(u64, i64)>) -> Vec<(u64, i64)> {
    pairs.sort_unstable_by_key(|&(p, _)| p);
    let mut out: Vec<(u64, i64)> = Vec::with_capacity(pairs.len());
    for (p, e) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => out.push((p, e)),
        }
    }
    out.retain(|&(_, e)| e != 0);
    out
}

fn big_pow(p: u64, e: i64) -> BigUint {
    let e = u32::try_from(e.unsigned_abs()).expect("exponent too large to materialize");
    BigUint::from(p).pow(e)
}

impl FactoredNonzero {
    pub const ONE: FactoredNonzero = FactoredNonzero {
        negative: false,
        exponents: Vec::new(),
    };

    pub fn minus_one() -> Self {
        FactoredNonzero {
            negative: true,
            exponents: Vec::new(),
        }
    }

    /// Build from a sign and arbitrary `(prime, exponent)` pairs. Repeated
    /// primes are merged and zero exponents dropped.
    pub fn from_parts(negative: bool, pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let pairs: Vec<(u64, i64)> = pairs.into_iter().collect();
        if let Some(&(p, _)) = pairs.iter().find(|&&(p, _)| !primes::is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(FactoredNonzero {
            negative,
            exponents: normalize(pairs),
        })
    }

    /// The prime `p` itself.
    pub fn prime(p: u64) -> Result<Self> {
        Self::from_parts(false, [(p, 1)])
    }

    pub fn from_i64(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        Ok(
            Self::from_factored_magnitude(n < 0, &BigUint::from(n.unsigned_abs()))
                .expect("64-bit values always factor"),
        )
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        Ok(Self::from_factored_magnitude(false, &BigUint::from(n))
            .expect("64-bit values always factor"))
    }

    fn from_factored_magnitude(negative: bool, magnitude: &BigUint) -> Option<Self> {
        Some(FactoredNonzero {
            negative,
            exponents: primes::factorize(magnitude)?,
        })
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_positive(&self) -> bool {
        !self.negative
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponents.is_empty()
    }

    /// `true` for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Ascending `(prime, exponent)` pairs, exponents nonzero.
    pub fn exponents(&self) -> &[(u64, i64)] {
        &self.exponents
    }

    pub fn exponent_of(&self, p: u64) -> i64 {
        self.exponents
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.exponents[i].1)
            .unwrap_or(0)
    }

    /// `true` when this is a (possibly negative, possibly fractional)
    /// integer value, i.e. no negative exponent.
    pub fn is_integer(&self) -> bool {
        self.exponents.iter().all(|&(_, e)| e > 0)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        FactoredNonzero {
            negative: self.negative != other.negative,
            exponents: merge_exponents(&self.exponents, &other.exponents, |a, b| a + b),
        }
    }

    pub fn divide(&self, other: &Self) -> Self {
        FactoredNonzero {
            negative: self.negative != other.negative,
            exponents: merge_exponents(&self.exponents, &other.exponents, |a, b| a - b),
        }
    }

    pub fn recip(&self) -> Self {
        FactoredNonzero {
            negative: self.negative,
            exponents: self.exponents.iter().map(|&(p, e)| (p, -e)).collect(),
        }
    }

    pub fn negate(&self) -> Self {
        FactoredNonzero {
            negative: !self.negative,
            exponents: self.exponents.clone(),
        }
    }

    pub fn abs(&self) -> Self {
        FactoredNonzero {
            negative: false,
            exponents: self.exponents.clone(),
        }
    }

    /// Integer power; negative exponents give reciprocal powers.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let exponents = self
            .exponents
            .iter()
            .map(|&(p, e)| {
                e.checked_mul(k)
                    .map(|e| (p, e))
                    .ok_or(Error::ExponentOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FactoredNonzero {
            negative: self.negative && k.rem_euclid(2) == 1,
            exponents: exponents.into_iter().filter(|&(_, e)| e != 0).collect(),
        })
    }

    /// `|self|` as a reduced fraction `(numerator, denominator)`.
    pub fn numerator_denominator(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for &(p, e) in &self.exponents {
            if e > 0 {
                num *= big_pow(p, e);
            } else {
                den *= big_pow(p, e);
            }
        }
        (num, den)
    }

    /// Exact comparison of absolute values.
    ///
    /// A floating-point estimate of `log|self/other|` settles the common
    /// case; values it cannot separate are compared by cross-multiplying
    /// the exact numerator and denominator of the quotient.
    pub fn abs_compare(&self, other: &Self) -> Ordering {
        if self.exponents == other.exponents {
            return Ordering::Equal;
        }
        let ratio = merge_exponents(&self.exponents, &other.exponents, |a, b| a - b);
        let (mut log, mut scale) = (0.0f64, 0.0f64);
        for &(p, e) in &ratio {
            let term = e as f64 * (p as f64).ln();
            log += term;
            scale += term.abs();
        }
        if log.abs() > 1e-9 * (1.0 + scale) {
            return if log > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        let (num, den) = FactoredNonzero {
            negative: false,
            exponents: ratio,
        }
        .numerator_denominator();
        num.cmp(&den)
    }

    pub fn to_log(&self) -> ExponentVector {
        ExponentVector {
            sign_bit: self.negative as u8,
            coords: self.exponents.clone(),
        }
    }

    pub fn from_log(v: &ExponentVector) -> Self {
        FactoredNonzero {
            negative: v.sign_bit == 1,
            exponents: v.coords.clone(),
        }
    }

    /// Replace every occurrence of prime `from` by prime `to`.
    pub(crate) fn substitute_prime(&self, from: u64, to: u64) -> Self {
        let pairs = self
            .exponents
            .iter()
            .map(|&(p, e)| if p == from { (to, e) } else { (p, e) })
            .collect();
        FactoredNonzero {
            negative: self.negative,
            exponents: normalize(pairs),
        }
    }
}

/// Canonical set order: ascending absolute value, negative before positive
/// on ties. Consistent with `Eq`.
impl Ord for FactoredNonzero {
    fn cmp(&self, other: &Self) -> Ordering {
        self.abs_compare(other)
            .then_with(|| other.negative.cmp(&self.negative))
    }
}

impl PartialOrd for FactoredNonzero {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &FactoredNonzero {
    type Output = FactoredNonzero;
    fn mul(self, rhs: Self) -> FactoredNonzero {
        self.multiply(rhs)
    }
}

impl Div for &FactoredNonzero {
    type Output = FactoredNonzero;
    fn div(self, rhs: Self) -> FactoredNonzero {
        self.divide(rhs)
    }
}

impl fmt::Display for FactoredNonzero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.numerator_denominator();
        if self.negative {
            f.write_str("-")?;
        }
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

fn parse_digits(text: &str, whole: &str) -> Result<BigUint> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedNumber(whole.to_string()));
    }
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| Error::MalformedNumber(whole.to_string()))
}

/// Parses `[-]digits` or `[-]digits/digits`.
impl FromStr for FactoredNonzero {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (num_text, den_text) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let num = parse_digits(num_text, text)?;
        let den = match den_text {
            Some(d) => parse_digits(d, text)?,
            None => BigUint::one(),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        if num.is_zero() {
            return Err(Error::Zero);
        }
        let unfactorable = || Error::Unfactorable(text.to_string());
        let num = Self::from_factored_magnitude(negative, &num).ok_or_else(unfactorable)?;
        let den = Self::from_factored_magnitude(false, &den).ok_or_else(unfactorable)?;
        Ok(num.divide(&den))
    }
}

/// Parse a number literal.
pub fn parse_number(text: &str) -> Result<FactoredNonzero> {
    text.parse()
}

impl Serialize for FactoredNonzero {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FactoredNonzero {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl ExponentVector {
    pub fn zero() -> Self {
        ExponentVector {
            sign_bit: 0,
            coords: Vec::new(),
        }
    }

    pub fn sign_bit(&self) -> u8 {
        self.sign_bit
    }

    pub fn coords(&self) -> &[(u64, i64)] {
        &self.coords
    }

    pub fn coord(&self, p: u64) -> i64 {
        self.coords
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.coords[i].1)
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector {
            sign_bit: self.sign_bit ^ other.sign_bit,
            coords: merge_exponents(&self.coords, &other.coords, |a, b| a + b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector {
            sign_bit: self.sign_bit ^ other.sign_bit,
            coords: merge_exponents(&self.coords, &other.coords, |a, b| a - b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(text: &str) -> FactoredNonzero {
        text.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let twelve = n("12");
        assert!(twelve.is_positive());
        assert_eq!(twelve.exponents(), &[(2, 2), (3, 1)]);
        let m40 = n("-40");
        assert!(m40.is_negative());
        assert_eq!(m40.exponents(), &[(2, 3), (5, 1)]);
        let half5 = n("5/2");
        assert!(half5.is_positive());
        assert_eq!(half5.exponents(), &[(2, -1), (5, 1)]);
        assert_eq!(n("6/4"), n("3/2"));
        assert_eq!(n("1"), FactoredNonzero::ONE);
        assert_eq!(n("-1"), FactoredNonzero::minus_one());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("0".parse::<FactoredNonzero>(), Err(Error::Zero)));
        assert!(matches!(
            "-0/7".parse::<FactoredNonzero>(),
            Err(Error::Zero)
        ));
        assert!(matches!(
            "3/0".parse::<FactoredNonzero>(),
            Err(Error::ZeroDenominator(_))
        ));
        for bad in [
            "", "-", "+3", "1.5", "3/", "/3", "1/2/3", " 4", "4 ", "--4", "3/-4", "abc",
        ] {
            assert!(
                matches!(
                    bad.parse::<FactoredNonzero>(),
                    Err(Error::MalformedNumber(_))
                ),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn multiply_divide_examples() {
        assert_eq!(n("2").multiply(&n("3")), n("6"));
        let q = n("5").divide(&n("1280"));
        assert!(q.is_positive());
        assert_eq!(q.exponents(), &[(2, -8)]);
        assert_eq!(q.to_string(), "1/256");
        assert_eq!(n("-40").divide(&n("-40")), FactoredNonzero::ONE);
    }

    #[test]
    fn abs_compare_examples() {
        assert_eq!(n("-10").abs_compare(&n("5")), Ordering::Greater);
        assert_eq!(n("-40").abs_compare(&n("40")), Ordering::Equal);
        assert_eq!(n("5/2").abs_compare(&n("3")), Ordering::Less);
        assert!(n("-40") < n("40"));
        // Values whose logs agree to many digits still compare exactly.
        let a = n("2").pow(200).unwrap().multiply(&n("3"));
        let b = n("2")
            .pow(200)
            .unwrap()
            .multiply(&n("3"))
            .multiply(&n("1000000007/1000000006"));
        assert_eq!(a.abs_compare(&b), Ordering::Less);
    }

    #[test]
    fn log_examples() {
        let v = n("6").to_log();
        assert_eq!(v.sign_bit(), 0);
        assert_eq!(v.coords(), &[(2, 1), (3, 1)]);
        let m1 = FactoredNonzero::minus_one().to_log();
        assert_eq!(m1.sign_bit(), 1);
        assert!(m1.coords().is_empty());
        assert_eq!(FactoredNonzero::from_log(&n("5/2").to_log()), n("5/2"));
    }

    #[test]
    fn pow_and_sign() {
        assert_eq!(n("-2").pow(3).unwrap(), n("-8"));
        assert_eq!(n("-2").pow(-2).unwrap(), n("1/4"));
        assert_eq!(n("-3/2").pow(0).unwrap(), FactoredNonzero::ONE);
        assert!(matches!(
            n("2").pow(i64::MAX).unwrap().pow(2),
            Err(Error::ExponentOverflow)
        ));
    }

    #[test]
    fn display_round_trip() {
        for text in ["1", "-1", "12", "-40", "5/2", "-7/9", "1/256"] {
            assert_eq!(n(text).to_string(), text);
        }
        let json = serde_json::to_string(&n("-5/2")).unwrap();
        assert_eq!(json, "\"-5/2\"");
        assert_eq!(
            serde_json::from_str::<FactoredNonzero>(&json).unwrap(),
            n("-5/2")
        );
    }

    #[test]
    fn from_parts_validates_primes() {
        assert!(matches!(
            FactoredNonzero::from_parts(false, [(4, 1)]),
            Err(Error::NotPrime(4))
        ));
        let v = FactoredNonzero::from_parts(true, [(3, 1), (2, 2), (3, -1)]).unwrap();
        assert_eq!(v, n("-4"));
    }
}
