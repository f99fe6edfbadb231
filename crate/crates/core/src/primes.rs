//! Prime generation and trial-division factoring.
//!
//! A process-wide cache holds the primes found so far; it grows by sieving
//! successive segments and is shared behind a read/write lock.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// The cache never sieves past this bound.
const CACHE_LIMIT: u64 = 1 << 24;
/// Multi-word cofactors are only trial-divided by primes below this bound.
const WIDE_TRIAL_LIMIT: u64 = 1 << 20;

struct PrimeCache {
    primes: Vec<u64>,
    /// Every prime `< sieved_to` is in `primes`.
    sieved_to: u64,
}

impl PrimeCache {
    /// Segmented sieve of `[sieved_to, limit)`.
    fn extend_to(&mut self, limit: u64) {
        if limit <= self.sieved_to {
            return;
        }
        let root = limit.isqrt() + 1;
        if root > self.sieved_to {
            self.extend_to(root);
        }
        let lo = self.sieved_to;
        let mut composite = vec![false; (limit - lo) as usize];
        for &p in &self.primes {
            if p * p >= limit {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < limit {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        self.primes.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(off, _)| lo + off as u64),
        );
        self.sieved_to = limit;
    }
}

fn cache() -> &'static RwLock<PrimeCache> {
    static CACHE: OnceLock<RwLock<PrimeCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        RwLock::new(PrimeCache {
            primes: Vec::new(),
            sieved_to: 2,
        })
    })
}

fn ensure_sieved(limit: u64) {
    if cache().read().expect("prime cache poisoned").sieved_to >= limit {
        return;
    }
    let mut guard = cache().write().expect("prime cache poisoned");
    let mut target = guard.sieved_to.max(1 << 12);
    while target < limit {
        target = target.saturating_mul(2);
    }
    guard.extend_to(target);
}

/// Copies of cached primes starting at index `from`, growing the cache if
/// needed. Returns an empty vector once primes would exceed `CACHE_LIMIT`.
fn prime_chunk(from: usize) -> Vec<u64> {
    loop {
        {
            let guard = cache().read().expect("prime cache poisoned");
            if from < guard.primes.len() {
                let end = guard.primes.len().min(from + 4096);
                return guard.primes[from..end].to_vec();
            }
            if guard.sieved_to >= CACHE_LIMIT {
                return Vec::new();
            }
        }
        let current = cache().read().expect("prime cache poisoned").sieved_to;
        ensure_sieved(current.saturating_mul(2).min(CACHE_LIMIT));
    }
}

/// Ascending primes below `CACHE_LIMIT`, fetched from the cache in chunks.
fn trial_primes() -> impl Iterator<Item = u64> {
    let mut idx = 0usize;
    let mut buf = Vec::new().into_iter();
    std::iter::from_fn(move || {
        if let Some(p) = buf.next() {
            return Some(p);
        }
        let chunk = prime_chunk(idx);
        idx += chunk.len();
        buf = chunk.into_iter();
        buf.next()
    })
}

/// All primes `p` with `lo <= p <= hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    ensure_sieved(hi + 1);
    let guard = cache().read().expect("prime cache poisoned");
    let start = guard.primes.partition_point(|&p| p < lo);
    let end = guard.primes.partition_point(|&p| p <= hi);
    guard.primes[start..end].to_vec()
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    trial_primes().take(count).collect()
}

/// Deterministic primality test: trial division against the cache, with
/// Miller-Rabin for values whose square root lies beyond it.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n >= CACHE_LIMIT * CACHE_LIMIT {
        return miller_rabin(n);
    }
    for p in trial_primes() {
        if p * p > n {
            return true;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all 64-bit inputs with the first twelve prime bases.
fn miller_rabin(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Factor a positive integer into ascending `(prime, exponent)` pairs.
///
/// Returns `None` when the cofactor left after trial division by small primes
/// still exceeds 64 bits.
pub fn factorize(n: &BigUint) -> Option<Vec<(u64, i64)>> {
    debug_assert!(!n.is_zero());
    let mut factors = Vec::new();
    let mut primes = trial_primes();
    let mut rem = n.clone();
    // Multi-word phase.
    let mut word = loop {
        if let Some(w) = rem.to_u64() {
            break w;
        }
        let p = primes.next().filter(|&p| p < WIDE_TRIAL_LIMIT)?;
        let bp = BigUint::from(p);
        let mut e = 0i64;
        loop {
            let (q, r) = rem.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rem = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    // Single-word phase; `primes` resumes where the multi-word phase stopped.
    let mut next_candidate = 3u64;
    for p in primes {
        if word == 1 || p.saturating_mul(p) > word {
            break;
        }
        divide_out(&mut word, p, &mut factors);
        next_candidate = p + 2;
    }
    // Past the cache: plain odd trial division, short-circuited by a primality check.
    if word > 1 && next_candidate.saturating_mul(next_candidate) <= word && !is_prime(word) {
        let mut p = next_candidate.max(CACHE_LIMIT + 1) | 1;
        while p.saturating_mul(p) <= word {
            divide_out(&mut word, p, &mut factors);
            p += 2;
        }
    }
    if word > 1 {
        factors.push((word, 1));
    }
    Some(factors)
}

fn divide_out(word: &mut u64, p: u64, factors: &mut Vec<(u64, i64)>) {
    if (*word).is_multiple_of(p) {
        let mut e = 0;
        while (*word).is_multiple_of(p) {
            *word /= p;
            e += 1;
        }
        factors.push((p, e));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2
            && (2..n)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn sieve_matches_naive() {
        let primes = primes_in(0, 5000);
        let expected: Vec<u64> = (0..=5000).filter(|&n| naive_is_prime(n)).collect();
        assert_eq!(primes, expected);
        for n in 0..3000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "{n}");
        }
    }

    #[test]
    fn cache_grows_past_initial_segment() {
        let primes = primes_in(100_000, 100_200);
        let expected: Vec<u64> = (100_000..=100_200).filter(|&n| naive_is_prime(n)).collect();
        assert_eq!(primes, expected);
        assert_eq!(
            first_primes(12),
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(18_446_744_073_709_551_557 - 2));
    }

    #[test]
    fn factorize_small_and_large() {
        assert_eq!(factorize(&BigUint::from(1u32)), Some(vec![]));
        assert_eq!(factorize(&BigUint::from(12u32)), Some(vec![(2, 2), (3, 1)]));
        assert_eq!(
            factorize(&BigUint::from(1_000_000_007u64 * 2)),
            Some(vec![(2, 1), (1_000_000_007, 1)])
        );
        let big = BigUint::from(2u32).pow(144) * BigUint::from(3u32).pow(5);
        assert_eq!(factorize(&big), Some(vec![(2, 144), (3, 5)]));
        let p = 4_294_967_311u64; // prime just above 2^32
        assert_eq!(factorize(&BigUint::from(p)), Some(vec![(p, 1)]));
        // Semiprime with both factors past the cache.
        let (a, b) = (16_777_259u64, 16_777_289u64);
        assert!(is_prime(a) && is_prime(b));
        assert_eq!(factorize(&BigUint::from(a * b)), Some(vec![(a, 1), (b, 1)]));
        // The square of the largest 64-bit prime has no small factor to strip.
        let p64 = BigUint::from(u64::MAX - 58);
        assert!(factorize(&(&p64 * &p64)).is_none());
        let mixed = BigUint::from(2u32).pow(70) * &p64;
        assert_eq!(factorize(&mixed), Some(vec![(2, 70), (u64::MAX - 58, 1)]));
        // 6700417 divides u64::MAX and lies past the wide trial range.
        assert!(factorize(&(BigUint::from(u64::MAX) * &p64)).is_none());
    }
}
