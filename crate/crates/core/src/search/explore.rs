use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::FactoredNonzero;
use crate::setops::{classify, from_multiplier_sequence, MultiplicativeSet, MultiplierSequence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub size: usize,
    pub sequences_examined: u64,
    /// Sequences whose decoding repeats an element.
    pub sequences_skipped: u64,
    pub found: Vec<MultiplicativeSet>,
}

/// Decode and classify every multiplier sequence `(head | r_1, ..., r_{size-1})`
/// with each `r_i` drawn from `candidates`. Distinct MPTQ sets come back in
/// order of first appearance.
pub fn explore_multiplier_space(
    size: usize,
    candidates: &[FactoredNonzero],
    head: &FactoredNonzero,
) -> Result<ExplorationReport> {
    if size == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    for r in candidates {
        if r.is_one() || r.abs_compare(&FactoredNonzero::ONE).is_lt() {
            return Err(Error::InvalidRatio(r.to_string()));
        }
    }
    let len = size - 1;
    let base = candidates.len() as u64;
    let total = base
        .checked_pow(len as u32)
        .ok_or_else(|| Error::InvalidArgument("search space too large".into()))?;
    if len > 0 && base == 0 {
        return Ok(ExplorationReport {
            size,
            sequences_examined: 0,
            sequences_skipped: 0,
            found: Vec::new(),
        });
    }

    let outcomes: Vec<Option<Option<MultiplicativeSet>>> = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let ratios = (0..len)
                .map(|_| {
                    let r = candidates[(code % base) as usize].clone();
                    code /= base;
                    r
                })
                .collect();
            let seq = MultiplierSequence {
                head: head.clone(),
                ratios,
            };
            match from_multiplier_sequence(&seq) {
                Ok(set) => Ok(Some(classify(&set)?.is_mptq().then_some(set))),
                Err(Error::DuplicateElement(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;

    let mut report = ExplorationReport {
        size,
        sequences_examined: total,
        sequences_skipped: 0,
        found: Vec::new(),
    };
    let mut seen = HashSet::new();
    for outcome in outcomes {
        match outcome {
            None => report.sequences_skipped += 1,
            Some(Some(set)) => {
                if seen.insert(set.clone()) {
                    report.found.push(set);
                }
            }
            Some(None) => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn nums(texts: &[&str]) -> Vec<FactoredNonzero> {
        texts.iter().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn rejects_bad_ratios() {
        let one = FactoredNonzero::ONE;
        assert!(matches!(
            explore_multiplier_space(3, &nums(&["1"]), &one),
            Err(Error::InvalidRatio(_))
        ));
        assert!(matches!(
            explore_multiplier_space(3, &nums(&["1/2"]), &one),
            Err(Error::InvalidRatio(_))
        ));
        assert!(explore_multiplier_space(3, &nums(&["-1", "-1/2"]), &one).is_err());
    }

    #[test]
    fn finds_s4_from_its_ratios() {
        let report =
            explore_multiplier_space(8, &nums(&["2", "4", "8", "16"]), &FactoredNonzero::ONE)
                .unwrap();
        assert_eq!(report.sequences_examined, 4u64.pow(7));
        assert!(report.found.contains(&fixtures::s4()));
    }

    #[test]
    fn small_sizes_find_nothing() {
        let report =
            explore_multiplier_space(3, &nums(&["2", "3", "3/2", "5/2"]), &FactoredNonzero::ONE)
                .unwrap();
        assert!(report.found.is_empty());
    }
}
