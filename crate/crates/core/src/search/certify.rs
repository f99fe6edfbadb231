//! Certificates that a sequence prefix contains no MPTQ subset.
//!
//! A sequence with `|a_k| > |a_{k-1} a_{k-r}|` for all `k >= r + 1` and no
//! MPTQ subset of size at most `2r - 1` has no MPTQ subset at all. Both
//! hypotheses are checked directly on the prefix, and certified prefixes
//! are additionally brute-forced up to size `min(K, 2r + 3)`.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::counter::{for_each_subset, PairTables};
use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;
use crate::setops::{ClassificationReport, MultiplicativeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `|a_index| <= |a_{index-1} a_{index-r}|` (1-based).
    Growth { index: usize },
    MptqSubset {
        subset: MultiplicativeSet,
        report: ClassificationReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateVerdict {
    Certified,
    Violated { witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCertificate {
    pub prefix: Vec<FactoredNonzero>,
    pub r: usize,
    pub growth_checked_up_to: usize,
    pub small_subset_bound: usize,
    pub sanity_bound: usize,
    pub subsets_checked: u64,
    pub verdict: CertificateVerdict,
}

impl SequenceCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CertificateVerdict::Certified
    }
}

pub fn certify_sequence(prefix: &[FactoredNonzero], r: usize) -> Result<SequenceCertificate> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if prefix.is_empty() {
        return Err(Error::EmptySet);
    }
    for (i, w) in prefix.windows(2).enumerate() {
        if w[0].abs_compare(&w[1]).is_ge() {
            return Err(Error::NotIncreasing(i + 2));
        }
    }
    let k_max = prefix.len();
    let mut cert = SequenceCertificate {
        prefix: prefix.to_vec(),
        r,
        growth_checked_up_to: k_max,
        small_subset_bound: 2 * r - 1,
        sanity_bound: k_max.min(2 * r + 3),
        subsets_checked: 0,
        verdict: CertificateVerdict::Certified,
    };

    // a[k - 1] is a_k.
    for k in r + 1..=k_max {
        let bound = prefix[k - 2].multiply(&prefix[k - 1 - r]);
        if prefix[k - 1].abs_compare(&bound).is_le() {
            cert.growth_checked_up_to = k;
            cert.verdict = CertificateVerdict::Violated {
                witness: Witness::Growth { index: k },
            };
            return Ok(cert);
        }
    }

    let tables = PairTables::multiplicative(prefix);
    let mut witness = None;
    let depth = cert.small_subset_bound.max(cert.sanity_bound);
    let _ = for_each_subset(&tables, depth, |c| {
        cert.subsets_checked += 1;
        if c.sym_size() > c.dir_size() {
            witness = Some((c.members().to_vec(), c.sym_size(), c.dir_size()));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if let Some((members, p, q)) = witness {
        let subset = MultiplicativeSet::from_elements(members.iter().map(|&i| prefix[i].clone()));
        let report = ClassificationReport::multiplicative(subset.len(), p, q);
        cert.verdict = CertificateVerdict::Violated {
            witness: Witness::MptqSubset { subset, report },
        };
    }
    Ok(cert)
}

/// `F_1 = 1, F_2 = 2, F_k = F_{k-1} + F_{k-2}`.
fn shifted_fibonacci(terms: usize) -> Vec<i64> {
    let mut f = Vec::with_capacity(terms);
    let (mut a, mut b) = (1i64, 2i64);
    for _ in 0..terms {
        f.push(a);
        (a, b) = (b, a.saturating_add(b));
    }
    f
}

/// `a_k = 2^{F_k}` for `k = 1..=terms`.
pub fn fibonacci_powers_of_two(terms: usize) -> Result<Vec<FactoredNonzero>> {
    let two = FactoredNonzero::prime(2)?;
    shifted_fibonacci(terms)
        .into_iter()
        .map(|f| two.pow(f))
        .collect()
}

/// `a_k = ±k^{F_k}` with signs drawn from `seed`.
pub fn signed_fibonacci_powers(terms: usize, seed: u64) -> Result<Vec<FactoredNonzero>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shifted_fibonacci(terms)
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            let base = FactoredNonzero::from_u64(i as u64 + 1)?;
            let term = base.pow(f)?;
            Ok(if rng.gen_bool(0.5) {
                term.negate()
            } else {
                term
            })
        })
        .collect()
}
