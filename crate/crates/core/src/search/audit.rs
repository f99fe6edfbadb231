use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::counter::{for_each_subset, PairTables};
use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;
use crate::primes::first_primes;
use crate::setops::{classify, MultiplicativeSet};
use crate::transforms::log_free;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCheck {
    pub n: usize,
    pub sum_size: usize,
    pub difference_size: usize,
    pub mstd: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeAudit {
    pub primes: Vec<u64>,
    pub max_size: usize,
    pub subsets_examined: u64,
    pub mptq_found: Vec<MultiplicativeSet>,
    /// Subsets of size at least 2 whose largest prime was checked.
    pub step_checks: u64,
    /// Subsets where adjoining the largest prime gave fewer than `2(n-1)`
    /// new quotients or more than `n` new products.
    pub step_violations: Vec<MultiplicativeSet>,
    pub lattice: Vec<LatticeCheck>,
}

impl PrimeAudit {
    pub fn is_clean(&self) -> bool {
        self.mptq_found.is_empty()
            && self.step_violations.is_empty()
            && self.lattice.iter().all(|c| !c.mstd)
    }
}

/// Classify every subset (of size at most `max_size`) of the first `count`
/// primes and check the adjoin step for each one's largest prime; also
/// classify the exponent-vector images of the first `n` primes for every
/// `n <= count`.
pub fn prime_subset_audit(count: usize, max_size: Option<usize>) -> Result<PrimeAudit> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let primes = first_primes(count);
    let universe: Vec<FactoredNonzero> = primes
        .iter()
        .map(|&p| FactoredNonzero::prime(p))
        .collect::<Result<_>>()?;
    let tables = PairTables::multiplicative(&universe);
    let max_size = max_size.unwrap_or(count).min(count);
    let mut audit = PrimeAudit {
        primes: primes.clone(),
        max_size,
        subsets_examined: 0,
        mptq_found: Vec::new(),
        step_checks: 0,
        step_violations: Vec::new(),
        lattice: Vec::new(),
    };
    let subset_of = |members: &[usize]| {
        MultiplicativeSet::from_elements(members.iter().map(|&i| universe[i].clone()))
    };
    let _ = for_each_subset(&tables, max_size, |c| {
        audit.subsets_examined += 1;
        if c.sym_size() > c.dir_size() {
            audit.mptq_found.push(subset_of(c.members()));
        }
        // The walk adds elements in increasing order, so the last insert
        // is the largest prime of this subset.
        let n = c.len();
        if n >= 2 {
            audit.step_checks += 1;
            let (new_products, new_quotients) = c.last_delta();
            if new_quotients < 2 * (n - 1) || new_products > n {
                audit.step_violations.push(subset_of(c.members()));
            }
        }
        ControlFlow::Continue(())
    });
    audit.subsets_examined += 1; // the empty set
    for n in 1..=count {
        let set = MultiplicativeSet::from_elements(universe[..n].iter().cloned());
        let report = classify(&log_free(&set)?)?;
        audit.lattice.push(LatticeCheck {
            n,
            sum_size: report.sum_size.unwrap_or_default(),
            difference_size: report.difference_size.unwrap_or_default(),
            mstd: report.is_mstd(),
        });
    }
    Ok(audit)
}
