//! Maps between the multiplicative and additive worlds and the generators
//! built on them.
//!
//! `exp_power` and `log_power` are mutually inverse and carry products to
//! sums and quotients to differences, so they exchange MPTQ and MSTD sets.
//! `log_free` is the base-free version: every positive rational goes to its
//! prime-exponent vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;
use crate::primes;
use crate::setops::{classify, AdditiveSet, LatticeSet, MultiplicativeSet};

fn check_log_base(r: &FactoredNonzero) -> Result<()> {
    if r.is_negative() || r.is_one() {
        return Err(Error::InvalidBase(r.to_string()));
    }
    Ok(())
}

/// The integer `e` with `r^e = a`, if any.
fn exact_log(a: &FactoredNonzero, r: &FactoredNonzero) -> Option<i64> {
    if a.is_one() {
        return Some(0);
    }
    let &(p, step) = r.exponents().first()?;
    let ea = a.exponent_of(p);
    if ea % step != 0 {
        return None;
    }
    let e = ea / step;
    (r.pow(e).ok()? == *a).then_some(e)
}

/// `{log_r a : a in A}` for a set of exact powers of `r`.
pub fn log_power(a: &MultiplicativeSet, r: &FactoredNonzero) -> Result<AdditiveSet> {
    check_log_base(r)?;
    a.iter()
        .map(|x| {
            if x.is_negative() {
                return Err(Error::NonPositive(x.to_string()));
            }
            exact_log(x, r)
                .map(BigInt::from)
                .ok_or_else(|| Error::NotAPower {
                    element: x.to_string(),
                    base: r.to_string(),
                })
        })
        .collect::<Result<Vec<_>>>()
        .map(AdditiveSet::from_elements)
}

/// Exponent-vector image of a set of positive rationals.
pub fn log_free(a: &MultiplicativeSet) -> Result<LatticeSet> {
    if let Some(x) = a.iter().find(|x| x.is_negative()) {
        return Err(Error::NonPositive(x.to_string()));
    }
    Ok(a.iter().map(FactoredNonzero::to_log).collect())
}

/// `{r^b : b in B}`.
pub fn exp_power(b: &AdditiveSet, r: &FactoredNonzero) -> Result<MultiplicativeSet> {
    check_log_base(r)?;
    b.iter()
        .map(|e| r.pow(e.to_i64().ok_or(Error::ExponentOverflow)?))
        .collect::<Result<Vec<_>>>()
        .map(MultiplicativeSet::from_elements)
}

/// Rewrite every power of prime `p` as the same power of prime `q`.
pub fn prime_switch(a: &MultiplicativeSet, p: u64, q: u64) -> Result<MultiplicativeSet> {
    for prime in [p, q] {
        if !primes::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
    }
    if p == q {
        return Err(Error::InvalidArgument(format!(
            "switch primes must differ, got {p} twice"
        )));
    }
    if a.iter().any(|x| x.exponent_of(q) != 0) {
        return Err(Error::PrimePresent(q));
    }
    Ok(a.iter().map(|x| x.substitute_prime(p, q)).collect())
}

/// `{1, r, r^2, ..., r^(n-1)}`.
pub fn geometric_set(n: usize, r: &FactoredNonzero) -> Result<MultiplicativeSet> {
    if r.is_unit() {
        return Err(Error::InvalidBase(r.to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a geometric set needs at least one term".into(),
        ));
    }
    (0..n as i64)
        .map(|i| r.pow(i))
        .collect::<Result<Vec<_>>>()
        .map(MultiplicativeSet::from_elements)
}

/// Exponent-indexed form of `G_{n,r}` for a base with no exact
/// representation (e.g. irrational `r`): the set `{0, 1, ..., n-1}`, which
/// has the same derived-set sizes for every admissible `r`.
pub fn geometric_exponent_set(n: usize) -> AdditiveSet {
    AdditiveSet::from_elements((0..n as u64).map(BigInt::from))
}

/// `2 * diameter + 1`: large enough that digit sums and digit differences
/// decode uniquely, so the base-expansion size laws hold exactly.
pub fn safe_base(a: &AdditiveSet) -> BigInt {
    let d = a.diameter().unwrap_or_else(BigInt::zero);
    d * 2 + 1
}

/// `{sum_i a_i m^(i-1) : a_i in A}` over `k` digits, after translating `A`
/// so its minimum is 0.
pub fn base_expansion(a: &AdditiveSet, k: usize, m: &BigInt) -> Result<AdditiveSet> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "expansion length k must be at least 1".into(),
        ));
    }
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "base m must be positive, got {m}"
        )));
    }
    let min = a.min().ok_or(Error::EmptySet)?.clone();
    let digits: Vec<BigInt> = a.iter().map(|x| x - &min).collect();
    let mut current: Vec<BigInt> = digits.clone();
    let mut place = BigInt::one();
    for _ in 1..k {
        place *= m;
        let place = &place;
        current = current
            .iter()
            .flat_map(|s| digits.iter().map(move |d| s + d * place))
            .collect();
    }
    Ok(AdditiveSet::from_elements(current))
}

/// MPTQ sets from a positive MPTQ set of powers of 2:
/// `2^(base_expansion(log_2 A, k, safe_base))` for each `k`, in input order.
pub fn mptq_family(a: &MultiplicativeSet, k_values: &[usize]) -> Result<Vec<MultiplicativeSet>> {
    let two = FactoredNonzero::prime(2)?;
    let exponents = log_power(a, &two)?;
    if !classify(a)?.is_mptq() {
        return Err(Error::NotMptq);
    }
    let m = safe_base(&exponents);
    k_values
        .par_iter()
        .map(|&k| exp_power(&base_expansion(&exponents, k, &m)?, &two))
        .collect()
}
