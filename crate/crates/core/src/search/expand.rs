use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;
use crate::primes::is_prime;
use crate::setops::{classify, MultiplicativeSet};

/// Every `S ∪ T` with `T` a subset of `primes` of size at most `level`, in
/// order of increasing `|T|` then lexicographic order of `T`.
///
/// Each output is re-classified as MPTQ, and every `S ∪ T` with
/// `|T| = level + 1` is checked not to be MPTQ.
pub fn expand_with_primes(
    s: &MultiplicativeSet,
    level: u64,
    primes: &[u64],
) -> Result<Vec<MultiplicativeSet>> {
    let report = classify(s)?;
    if !report.is_mptq() {
        return Err(Error::NotMptq);
    }
    if report.k_special != level {
        return Err(Error::LevelMismatch {
            supplied: level,
            actual: report.k_special,
        });
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("repeated prime".into()));
    }
    for &p in &sorted {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s.iter().any(|x| x.exponent_of(p) != 0) {
            return Err(Error::PrimePresent(p));
        }
    }
    let as_elements: Vec<FactoredNonzero> = sorted
        .iter()
        .map(|&p| FactoredNonzero::prime(p))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let top = (level as usize).min(sorted.len());
    for t in 0..=top {
        for combo in combinations(sorted.len(), t) {
            let set = s.union(&combo.iter().map(|&i| as_elements[i].clone()).collect());
            if !classify(&set)?.is_mptq() {
                return Err(Error::InvalidArgument(format!(
                    "expansion by {t} primes is not MPTQ"
                )));
            }
            out.push(set);
        }
    }
    if let Some(probe) = combinations(sorted.len(), top + 1).next() {
        if top == level as usize {
            let set = s.union(&probe.iter().map(|&i| as_elements[i].clone()).collect());
            if classify(&set)?.is_mptq() {
                return Err(Error::InvalidArgument(format!(
                    "expansion by {} primes is still MPTQ",
                    top + 1
                )));
            }
        }
    }
    Ok(out)
}

/// Index combinations of `k` out of `n`, lexicographic.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let current = state.take()?;
        let mut next = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                state = Some(next);
                break;
            }
        }
        Some(current)
    })
}
