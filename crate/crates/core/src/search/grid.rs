//! Randomized search for MPTQ subsets of `{2^a 3^b : a <= max_e2, b <= max_e3}`.
//!
//! The objective is the signed gap `|A*A| - |A/A|`, evaluated incrementally
//! with a [`PairCounter`]. Moves flip one element in or out or swap a member
//! for a non-member; moves that do not lower the gap are accepted. Set sizes
//! stay within `[MIN_SIZE, MAX_SIZE]` since small sets are never MPTQ and
//! would otherwise soak up the sideways moves.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::counter::{PairCounter, PairTables};
use crate::error::{Error, Result};
use crate::setops::{classify, ClassificationReport, MultiplicativeSet};

const MIN_SIZE: usize = 8;
const MAX_SIZE: usize = 16;
const PATIENCE: u64 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridStrategy {
    /// Start over from a fresh random set whenever progress stalls.
    RandomRestart,
    /// Keep the current set and kick it with a few random flips on a stall.
    HillClimb,
}

/// `2^a 3^b` for `a <= max_e2`, `b <= max_e3`, in increasing order.
pub fn grid_universe(max_e2: u32, max_e3: u32) -> Result<Vec<u64>> {
    let mut values = Vec::new();
    for a in 0..=max_e2 {
        for b in 0..=max_e3 {
            let v = 2u64
                .checked_pow(a)
                .and_then(|x| 3u64.checked_pow(b).and_then(|y| x.checked_mul(y)))
                .ok_or(Error::ExponentOverflow)?;
            values.push(v);
        }
    }
    values.sort_unstable();
    Ok(values)
}

struct Walker<'t> {
    counter: PairCounter<'t>,
    member: Vec<bool>,
    rng: ChaCha8Rng,
}

impl Walker<'_> {
    fn gap(&self) -> i64 {
        self.counter.sym_size() as i64 - self.counter.dir_size() as i64
    }

    fn flip(&mut self, i: usize) {
        if self.member[i] {
            self.counter.remove(i);
        } else {
            self.counter.insert(i);
        }
        self.member[i] = !self.member[i];
    }

    fn randomize(&mut self) {
        self.counter.clear();
        self.member.iter_mut().for_each(|m| *m = false);
        let n = self.member.len();
        let size = self.rng.gen_range(MIN_SIZE.min(n)..=MAX_SIZE.min(n));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        for &i in &order[..size] {
            self.flip(i);
        }
    }

    /// Propose a move; returns the flipped indices so it can be undone.
    fn propose(&mut self) -> Vec<usize> {
        let n = self.member.len();
        let size = self.counter.len();
        let i = self.rng.gen_range(0..n);
        let grows = !self.member[i];
        let allowed = if grows {
            size < MAX_SIZE
        } else {
            size > MIN_SIZE
        };
        if allowed && self.rng.gen_bool(0.5) {
            self.flip(i);
            return vec![i];
        }
        // Swap: pair `i` with an element on the other side.
        let others: Vec<usize> = (0..n)
            .filter(|&j| self.member[j] != self.member[i])
            .collect();
        match others.choose(&mut self.rng) {
            Some(&j) => {
                self.flip(i);
                self.flip(j);
                vec![i, j]
            }
            None => Vec::new(),
        }
    }
}

/// Sets found by the search, each verified MPTQ by direct classification,
/// in discovery order. `budget` is the number of candidate evaluations.
pub fn grid_search(
    max_e2: u32,
    max_e3: u32,
    strategy: GridStrategy,
    seed: u64,
    budget: u64,
) -> Result<Vec<(MultiplicativeSet, ClassificationReport)>> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let values = grid_universe(max_e2, max_e3)?;
    let tables = PairTables::integer_products(&values);
    let n = values.len();
    let mut walker = Walker {
        counter: PairCounter::new(&tables),
        member: vec![false; n],
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found = Vec::new();
    let mut record = |walker: &Walker<'_>| -> Result<()> {
        let mut members = walker.counter.members().to_vec();
        members.sort_unstable();
        if seen.insert(members.clone()) {
            let set = MultiplicativeSet::from_integers(members.iter().map(|&i| values[i] as i64))?;
            let report = classify(&set)?;
            if report.is_mptq() {
                found.push((set, report));
            }
        }
        Ok(())
    };

    walker.randomize();
    let mut current = walker.gap();
    let mut stale = 0u64;
    for _ in 0..budget {
        let moved = walker.propose();
        let gap = walker.gap();
        if gap >= current {
            if gap > current {
                stale = 0;
            } else {
                stale += 1;
            }
            current = gap;
            if gap > 0 {
                record(&walker)?;
            }
        } else {
            for &i in moved.iter().rev() {
                walker.flip(i);
            }
            stale += 1;
        }
        if stale >= PATIENCE {
            match strategy {
                GridStrategy::RandomRestart => walker.randomize(),
                GridStrategy::HillClimb => {
                    for _ in 0..3 {
                        walker.propose();
                    }
                }
            }
            current = walker.gap();
            stale = 0;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_49_values() {
        let u = grid_universe(6, 6).unwrap();
        assert_eq!(u.len(), 49);
        assert_eq!(u[0], 1);
        assert_eq!(u[48], 46656);
        assert!(grid_universe(64, 0).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = grid_search(6, 6, GridStrategy::HillClimb, 7, 20_000).unwrap();
        let b = grid_search(6, 6, GridStrategy::HillClimb, 7, 20_000).unwrap();
        assert_eq!(a, b);
        for (set, report) in &a {
            assert!(report.is_mptq());
            assert_eq!(report.set_size, set.len());
        }
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(grid_search(6, 6, GridStrategy::RandomRestart, 1, 0).is_err());
    }
}
