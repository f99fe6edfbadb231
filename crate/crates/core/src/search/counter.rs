//! Incremental derived-set counting over a fixed universe.
//!
//! Every pairwise product (or sum) and directed quotient (or difference) of
//! the universe is interned once into a dense class id. A [`PairCounter`]
//! then tracks, for the current subset, how many pairs land in each class;
//! the derived-set sizes are the numbers of nonzero counters. Adding or
//! removing an element touches `O(|S|)` counters.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::ControlFlow;

use crate::numeric::FactoredNonzero;
use crate::setops::AdditiveElement;

/// Dense class ids for every ordered pair of universe elements.
#[derive(Clone, Debug)]
pub struct PairTables {
    len: usize,
    /// `sym[i * len + j]`: class of `x_i * x_j` (or `x_i + x_j`).
    sym: Vec<u32>,
    /// `dir[i * len + j]`: class of `x_i / x_j` (or `x_i - x_j`).
    dir: Vec<u32>,
    /// `dir_t[i * len + j] = dir[j * len + i]`, so row scans stay contiguous.
    dir_t: Vec<u32>,
    sym_classes: usize,
    dir_classes: usize,
}

fn intern<K: Hash + Eq>(ids: &mut HashMap<K, u32>, key: K) -> u32 {
    let next = ids.len() as u32;
    *ids.entry(key).or_insert(next)
}

impl PairTables {
    pub fn build<KS: Hash + Eq, KD: Hash + Eq>(
        len: usize,
        sym_of: impl Fn(usize, usize) -> KS,
        dir_of: impl Fn(usize, usize) -> KD,
    ) -> Self {
        let mut sym = vec![0u32; len * len];
        let mut dir = vec![0u32; len * len];
        let mut sym_ids = HashMap::new();
        let mut dir_ids = HashMap::new();
        for i in 0..len {
            for j in i..len {
                let id = intern(&mut sym_ids, sym_of(i, j));
                sym[i * len + j] = id;
                sym[j * len + i] = id;
            }
            for j in 0..len {
                dir[i * len + j] = intern(&mut dir_ids, dir_of(i, j));
            }
        }
        let mut dir_t = vec![0u32; len * len];
        for i in 0..len {
            for j in 0..len {
                dir_t[i * len + j] = dir[j * len + i];
            }
        }
        PairTables {
            len,
            sym,
            dir,
            dir_t,
            sym_classes: sym_ids.len(),
            dir_classes: dir_ids.len(),
        }
    }

    /// Products and quotients of a multiplicative universe.
    pub fn multiplicative(universe: &[FactoredNonzero]) -> Self {
        Self::build(
            universe.len(),
            |i, j| universe[i].multiply(&universe[j]),
            |i, j| universe[i].divide(&universe[j]),
        )
    }

    /// Sums and differences of an additive universe.
    pub fn additive<T: AdditiveElement>(universe: &[T]) -> Self {
        Self::build(
            universe.len(),
            |i, j| universe[i].add(&universe[j]),
            |i, j| universe[i].sub(&universe[j]),
        )
    }

    /// Products and reduced quotients of positive integers, without going
    /// through factored values.
    pub fn integer_products(values: &[u64]) -> Self {
        fn gcd(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        Self::build(
            values.len(),
            |i, j| values[i] as u128 * values[j] as u128,
            |i, j| {
                let g = gcd(values[i], values[j]);
                (values[i] / g, values[j] / g)
            },
        )
    }

    /// Sums and differences of integers.
    pub fn integer_sums(values: &[i64]) -> Self {
        Self::build(
            values.len(),
            |i, j| values[i] as i128 + values[j] as i128,
            |i, j| values[i] as i128 - values[j] as i128,
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sym_class(&self, i: usize, j: usize) -> u32 {
        self.sym[i * self.len + j]
    }

    pub fn dir_class(&self, i: usize, j: usize) -> u32 {
        self.dir[i * self.len + j]
    }
}

/// Pair multiplicities for a subset of a [`PairTables`] universe.
#[derive(Clone, Debug)]
pub struct PairCounter<'t> {
    tables: &'t PairTables,
    sym_count: Vec<u32>,
    dir_count: Vec<u32>,
    sym_distinct: usize,
    dir_distinct: usize,
    members: Vec<usize>,
    last_delta: (usize, usize),
}

#[inline(always)]
fn bump(counts: &mut [u32], id: u32, distinct: &mut usize) {
    let c = &mut counts[id as usize];
    *distinct += (*c == 0) as usize;
    *c += 1;
}

#[inline(always)]
fn drop_one(counts: &mut [u32], id: u32, distinct: &mut usize) {
    let c = &mut counts[id as usize];
    *c -= 1;
    *distinct -= (*c == 0) as usize;
}

impl<'t> PairCounter<'t> {
    pub fn new(tables: &'t PairTables) -> Self {
        PairCounter {
            tables,
            sym_count: vec![0; tables.sym_classes],
            dir_count: vec![0; tables.dir_classes],
            sym_distinct: 0,
            dir_distinct: 0,
            members: Vec::with_capacity(tables.len),
            last_delta: (0, 0),
        }
    }

    /// `|S*S|` (or `|S+S|`).
    #[inline]
    pub fn sym_size(&self) -> usize {
        self.sym_distinct
    }

    /// `|S/S|` (or `|S-S|`).
    #[inline]
    pub fn dir_size(&self) -> usize {
        self.dir_distinct
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in insertion order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// New derived-set elements contributed by the most recent `insert`.
    pub fn last_delta(&self) -> (usize, usize) {
        self.last_delta
    }

    /// Add universe element `i`; it must not already be a member.
    pub fn insert(&mut self, i: usize) {
        debug_assert!(!self.members.contains(&i));
        let (sym0, dir0) = (self.sym_distinct, self.dir_distinct);
        let len = self.tables.len;
        let row = i * len;
        let sym_row = &self.tables.sym[row..row + len];
        let dir_row = &self.tables.dir[row..row + len];
        let dir_col = &self.tables.dir_t[row..row + len];
        for &j in &self.members {
            bump(&mut self.sym_count, sym_row[j], &mut self.sym_distinct);
            bump(&mut self.dir_count, dir_row[j], &mut self.dir_distinct);
            bump(&mut self.dir_count, dir_col[j], &mut self.dir_distinct);
        }
        bump(&mut self.sym_count, sym_row[i], &mut self.sym_distinct);
        bump(&mut self.dir_count, dir_row[i], &mut self.dir_distinct);
        self.members.push(i);
        self.last_delta = (self.sym_distinct - sym0, self.dir_distinct - dir0);
    }

    fn retract(&mut self, i: usize) {
        let len = self.tables.len;
        let row = i * len;
        let sym_row = &self.tables.sym[row..row + len];
        let dir_row = &self.tables.dir[row..row + len];
        let dir_col = &self.tables.dir_t[row..row + len];
        drop_one(&mut self.sym_count, sym_row[i], &mut self.sym_distinct);
        drop_one(&mut self.dir_count, dir_row[i], &mut self.dir_distinct);
        for &j in &self.members {
            drop_one(&mut self.sym_count, sym_row[j], &mut self.sym_distinct);
            drop_one(&mut self.dir_count, dir_row[j], &mut self.dir_distinct);
            drop_one(&mut self.dir_count, dir_col[j], &mut self.dir_distinct);
        }
    }

    /// Remove the most recently inserted member.
    pub fn pop(&mut self) -> Option<usize> {
        let i = self.members.pop()?;
        self.retract(i);
        Some(i)
    }

    /// Remove member `i` wherever it sits; returns `false` if absent.
    pub fn remove(&mut self, i: usize) -> bool {
        match self.members.iter().position(|&m| m == i) {
            Some(pos) => {
                self.members.swap_remove(pos);
                self.retract(i);
                true
            }
            None => false,
        }
    }

    pub fn clear(&mut self) {
        while self.pop().is_some() {}
    }
}

/// Depth-first enumeration of every subset reachable by adding elements
/// `start..end` (in increasing order) to the counter's current members, up
/// to `max_size` members. `visit` sees each new subset once, right after its
/// largest element was inserted; returning `Break` aborts the walk (the
/// counter is then left mid-walk).
pub fn for_each_extension<F>(
    counter: &mut PairCounter<'_>,
    start: usize,
    end: usize,
    max_size: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&PairCounter<'_>) -> ControlFlow<()>,
{
    for next in start..end {
        counter.insert(next);
        visit(counter)?;
        if counter.len() < max_size {
            for_each_extension(counter, next + 1, end, max_size, visit)?;
        }
        counter.pop();
    }
    ControlFlow::Continue(())
}

/// Visit every nonempty subset of the universe with at most `max_size`
/// elements.
pub fn for_each_subset<F>(tables: &PairTables, max_size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&PairCounter<'_>) -> ControlFlow<()>,
{
    let mut counter = PairCounter::new(tables);
    if max_size == 0 {
        return ControlFlow::Continue(());
    }
    for_each_extension(&mut counter, 0, tables.len(), max_size, &mut visit)
}
