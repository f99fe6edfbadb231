//! Exhaustive interval search.
//!
//! The universe `{1..N}` minus the excluded primes (MPTQ mode) or all of
//! `{1..N}` (MSTD mode) is enumerated depth-first with a [`PairCounter`].
//! The membership of the first `w` universe elements is fixed per task,
//! giving `2^w` independent tasks that run on a worker pool and merge in
//! task order, so the output does not depend on scheduling.

use std::collections::BTreeMap;
use std::fs;
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{mpsc, Arc};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counter::{for_each_extension, PairCounter, PairTables};
use crate::error::{Error, Result};
use crate::primes::primes_in;
use crate::setops::ClassificationReport;

pub const CHECKPOINT_VERSION: u32 = 1;

/// Upper bound on stored found sets unless `report_all` is set.
pub const FOUND_LIMIT: usize = 1000;

const CHECK_INTERVAL: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Products against quotients, over `{1..N}` minus the excluded primes.
    Mptq,
    /// Sums against differences, over all of `{1..N}`.
    Mstd,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Smallest subset size that is recorded.
    pub min_size: usize,
    /// Largest subset size that is enumerated.
    pub max_size: Option<usize>,
    /// Number of leading universe elements whose membership is fixed per
    /// task; the search runs `2^w` tasks.
    pub parallel_width: usize,
    /// Worker threads; `None` uses all available cores.
    pub workers: Option<usize>,
    /// Store every found set instead of the first [`FOUND_LIMIT`].
    pub report_all: bool,
    /// Stop once this many subsets have been examined.
    pub budget: Option<u64>,
    /// External stop request (e.g. Ctrl-C).
    pub stop: Option<Arc<AtomicBool>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Mptq,
            min_size: 1,
            max_size: None,
            parallel_width: 8,
            workers: None,
            report_all: false,
            budget: None,
            stop: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundSet {
    pub elements: Vec<u64>,
    pub report: ClassificationReport,
}

/// Outcome of one prefix task.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskResult {
    pub task: u64,
    pub subsets: u64,
    pub found_count: u64,
    pub expanded: u64,
    pub found: Vec<FoundSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
    Interrupted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub universe_max: u64,
    pub excluded_primes: Vec<u64>,
    pub reduced_universe_size: usize,
    pub subsets_examined: u64,
    pub found_count: u64,
    pub found: Vec<FoundSet>,
    pub found_truncated: bool,
    /// Sets obtained from `found` by re-inserting up to `k_special`
    /// excluded primes, counting each found set itself.
    pub expanded_total: u64,
    pub status: SearchStatus,
    pub tasks_total: u64,
    pub tasks_completed: u64,
    pub wall_time_secs: f64,
}

impl SearchReport {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

/// Completed tasks of a (possibly interrupted) search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub mode: SearchMode,
    pub universe_max: u64,
    pub split_width: usize,
    pub min_size: usize,
    pub max_size: Option<usize>,
    pub report_all: bool,
    pub completed: Vec<TaskResult>,
}

impl Checkpoint {
    pub fn new(universe_max: u64, options: &SearchOptions) -> Self {
        let universe_len = universe(universe_max, options.mode).0.len();
        Checkpoint {
            version: CHECKPOINT_VERSION,
            mode: options.mode,
            universe_max,
            split_width: options.parallel_width.min(universe_len),
            min_size: options.min_size,
            max_size: options.max_size,
            report_all: options.report_all,
            completed: Vec::new(),
        }
    }

    pub fn record(&mut self, result: TaskResult) {
        self.completed.push(result);
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cp: Checkpoint = serde_json::from_str(&text)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::CheckpointMismatch(format!(
                "unsupported version {}",
                cp.version
            )));
        }
        Ok(cp)
    }

    /// Write atomically: a temporary sibling file is renamed into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, serde_json::to_vec(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn check_matches(&self, universe_max: u64, options: &SearchOptions) -> Result<()> {
        let mismatch = |what: &str| Err(Error::CheckpointMismatch(what.to_string()));
        if self.mode != options.mode {
            return mismatch("mode differs");
        }
        if self.universe_max != universe_max {
            return mismatch("universe bound differs");
        }
        if self.min_size != options.min_size || self.max_size != options.max_size {
            return mismatch("size limits differ");
        }
        if self.report_all != options.report_all {
            return mismatch("report_all differs");
        }
        let universe_len = universe(universe_max, options.mode).0.len();
        if self.split_width > universe_len || self.split_width > 40 {
            return mismatch("split width out of range");
        }
        if self
            .completed
            .iter()
            .any(|t| t.task >> self.split_width != 0)
        {
            return mismatch("task index out of range");
        }
        Ok(())
    }
}

/// Primes `p` with `N/2 < p <= N`, i.e. the primes that occur in `{1..N}`
/// only as themselves.
pub fn excluded_primes(universe_max: u64) -> Vec<u64> {
    if universe_max < 2 {
        return Vec::new();
    }
    primes_in(universe_max / 2 + 1, universe_max)
}

fn universe(universe_max: u64, mode: SearchMode) -> (Vec<u64>, Vec<u64>) {
    match mode {
        SearchMode::Mptq => {
            let excluded = excluded_primes(universe_max);
            let values = (1..=universe_max)
                .filter(|v| excluded.binary_search(v).is_err())
                .collect();
            (values, excluded)
        }
        SearchMode::Mstd => ((1..=universe_max).collect(), Vec::new()),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `sum_{t=0}^{level} C(excluded, t)`.
pub fn expansion_count(excluded: usize, level: u64) -> u64 {
    let e = excluded as u64;
    (0..=level.min(e))
        .map(|t| binomial(e, t))
        .fold(0u64, u64::saturating_add)
}

struct Context {
    tables: PairTables,
    values: Vec<u64>,
    mode: SearchMode,
    excluded: usize,
    width: usize,
    min_size: usize,
    max_size: usize,
    keep: usize,
    budget: Option<u64>,
    work: AtomicU64,
    halt: AtomicBool,
    external: Option<Arc<AtomicBool>>,
}

impl Context {
    fn should_stop(&self, total: u64) -> bool {
        let external = self
            .external
            .as_ref()
            .is_some_and(|s| s.load(Ordering::Relaxed));
        let over_budget = self.budget.is_some_and(|b| total > b);
        if external || over_budget {
            self.halt.store(true, Ordering::Relaxed);
        }
        self.halt.load(Ordering::Relaxed)
    }

    fn run_task(&self, task: u64) -> Option<TaskResult> {
        let mut result = TaskResult {
            task,
            subsets: 0,
            found_count: 0,
            expanded: 0,
            found: Vec::new(),
        };
        if self.halt.load(Ordering::Relaxed) {
            return None;
        }
        let mut counter = PairCounter::new(&self.tables);
        for b in 0..self.width {
            if task >> b & 1 == 1 {
                counter.insert(b);
            }
        }
        if counter.len() > self.max_size {
            return Some(result);
        }
        let mut pending = 0u64;
        let mut visit = |c: &PairCounter<'_>| {
            result.subsets += 1;
            if c.len() >= self.min_size && c.sym_size() > c.dir_size() {
                let report = match self.mode {
                    SearchMode::Mptq => {
                        ClassificationReport::multiplicative(c.len(), c.sym_size(), c.dir_size())
                    }
                    SearchMode::Mstd => {
                        ClassificationReport::additive(c.len(), c.sym_size(), c.dir_size())
                    }
                };
                result.found_count += 1;
                result.expanded = result
                    .expanded
                    .saturating_add(expansion_count(self.excluded, report.k_special));
                if result.found.len() < self.keep {
                    let mut elements: Vec<u64> =
                        c.members().iter().map(|&i| self.values[i]).collect();
                    elements.sort_unstable();
                    result.found.push(FoundSet { elements, report });
                }
            }
            pending += 1;
            if pending == CHECK_INTERVAL {
                let total = self.work.fetch_add(pending, Ordering::Relaxed) + pending;
                pending = 0;
                if self.should_stop(total) {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        };
        let mut flow = visit(&counter);
        if flow.is_continue() && counter.len() < self.max_size {
            flow = for_each_extension(
                &mut counter,
                self.width,
                self.values.len(),
                self.max_size,
                &mut visit,
            );
        }
        let total = self.work.fetch_add(pending, Ordering::Relaxed) + pending;
        if flow.is_break() {
            return None;
        }
        self.should_stop(total);
        Some(result)
    }
}

/// Run the search from scratch.
pub fn exhaustive_search(universe_max: u64, options: &SearchOptions) -> Result<SearchReport> {
    exhaustive_search_with(universe_max, options, None, |_| {})
}

/// Run the search, optionally resuming from `checkpoint`, and hand every
/// newly completed task to `on_task` in task order.
pub fn exhaustive_search_with(
    universe_max: u64,
    options: &SearchOptions,
    checkpoint: Option<&Checkpoint>,
    mut on_task: impl FnMut(&TaskResult),
) -> Result<SearchReport> {
    if universe_max < 1 {
        return Err(Error::InvalidArgument(
            "universe bound must be at least 1".into(),
        ));
    }
    if options.workers == Some(0) {
        return Err(Error::InvalidArgument(
            "worker count must be positive".into(),
        ));
    }
    let start = Instant::now();
    let (values, excluded) = universe(universe_max, options.mode);
    let width = match checkpoint {
        Some(cp) => {
            cp.check_matches(universe_max, options)?;
            cp.split_width
        }
        None => options.parallel_width.min(values.len()).min(40),
    };
    let tables = match options.mode {
        SearchMode::Mptq => PairTables::integer_products(&values),
        SearchMode::Mstd => {
            let signed: Vec<i64> = values.iter().map(|&v| v as i64).collect();
            PairTables::integer_sums(&signed)
        }
    };
    let ctx = Context {
        tables,
        mode: options.mode,
        excluded: excluded.len(),
        width,
        min_size: options.min_size.max(1),
        max_size: options.max_size.unwrap_or(usize::MAX),
        keep: if options.report_all {
            usize::MAX
        } else {
            FOUND_LIMIT
        },
        budget: options.budget,
        work: AtomicU64::new(0),
        halt: AtomicBool::new(false),
        external: options.stop.clone(),
        values,
    };

    let tasks_total = 1u64 << width;
    let mut done: BTreeMap<u64, TaskResult> = BTreeMap::new();
    if let Some(cp) = checkpoint {
        for t in &cp.completed {
            done.insert(t.task, t.clone());
        }
        let resumed: u64 = done.values().map(|t| t.subsets).sum();
        ctx.work.store(resumed, Ordering::Relaxed);
        if ctx.should_stop(resumed) {
            ctx.halt.store(true, Ordering::Relaxed);
        }
    }
    let todo: Vec<u64> = (0..tasks_total).filter(|t| !done.contains_key(t)).collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = options.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let mut fresh: BTreeMap<u64, TaskResult> = BTreeMap::new();
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        let ctx = &ctx;
        let todo = &todo;
        let pool = &pool;
        scope.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, &task| {
                    if let Some(r) = ctx.run_task(task) {
                        let _ = tx.send(r);
                    }
                });
            });
        });
        // Emit in task order: hold results until every earlier pending task
        // has reported.
        let mut cursor = 0usize;
        for r in rx {
            fresh.insert(r.task, r);
            while cursor < todo.len() {
                match fresh.get(&todo[cursor]) {
                    Some(r) => {
                        on_task(r);
                        cursor += 1;
                    }
                    None => break,
                }
            }
        }
        for t in &todo[cursor..] {
            if let Some(r) = fresh.get(t) {
                on_task(r);
            }
        }
    });

    let tasks_completed = (done.len() + fresh.len()) as u64;
    done.extend(fresh);
    let mut report = SearchReport {
        mode: options.mode,
        universe_max,
        excluded_primes: excluded,
        reduced_universe_size: ctx.values.len(),
        subsets_examined: 0,
        found_count: 0,
        found: Vec::new(),
        found_truncated: false,
        expanded_total: 0,
        status: SearchStatus::Complete,
        tasks_total,
        tasks_completed,
        wall_time_secs: 0.0,
    };
    for t in done.into_values() {
        report.subsets_examined += t.subsets;
        report.found_count += t.found_count;
        report.expanded_total = report.expanded_total.saturating_add(t.expanded);
        report.found_truncated |= (t.found.len() as u64) < t.found_count;
        for f in t.found {
            if report.found.len() < ctx.keep {
                report.found.push(f);
            } else {
                report.found_truncated = true;
            }
        }
    }
    if tasks_completed < tasks_total {
        let interrupted = options
            .stop
            .as_ref()
            .is_some_and(|s| s.load(Ordering::Relaxed));
        report.status = if interrupted {
            SearchStatus::Interrupted
        } else {
            SearchStatus::BudgetExhausted
        };
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_prime_examples() {
        assert_eq!(excluded_primes(36), vec![19, 23, 29, 31]);
        assert_eq!(excluded_primes(8), vec![5, 7]);
        assert_eq!(excluded_primes(2), vec![2]);
        assert_eq!(excluded_primes(30), vec![17, 19, 23, 29]);
        assert!(excluded_primes(1).is_empty());
    }

    #[test]
    fn expansion_counts() {
        assert_eq!(expansion_count(4, 0), 1);
        assert_eq!(expansion_count(4, 1), 5);
        assert_eq!(expansion_count(4, 2), 11);
        assert_eq!(expansion_count(2, 7), 4);
    }

    #[test]
    fn visits_every_subset() {
        for width in [0, 1, 3, 8] {
            let options = SearchOptions {
                parallel_width: width,
                workers: Some(2),
                ..Default::default()
            };
            let report = exhaustive_search(12, &options).unwrap();
            assert_eq!(report.reduced_universe_size, 10);
            assert_eq!(report.subsets_examined, 1 << 10);
            assert_eq!(report.expanded_total, 0);
            assert!(report.is_complete());
        }
    }

    #[test]
    fn max_size_bounds_enumeration() {
        let options = SearchOptions {
            max_size: Some(2),
            parallel_width: 3,
            ..Default::default()
        };
        let report = exhaustive_search(10, &options).unwrap();
        let m = report.reduced_universe_size as u64;
        assert_eq!(report.subsets_examined, 1 + m + m * (m - 1) / 2);
    }

    #[test]
    fn budget_stops_early() {
        let options = SearchOptions {
            budget: Some(100),
            parallel_width: 4,
            workers: Some(1),
            ..Default::default()
        };
        let report = exhaustive_search(26, &options).unwrap();
        assert_eq!(report.status, SearchStatus::BudgetExhausted);
        assert!(report.tasks_completed < report.tasks_total);
    }
}
