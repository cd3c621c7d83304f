//! Backtracking search for free halves `alpha` of valid canonical clusters.
//!
//! The tree is cut at a fixed depth into work units (prefixes of `alpha`).
//! Units are explored independently by a pool of threads, smallest value
//! first; results are merged into a sorted set, so the final output does not
//! depend on scheduling. A checkpoint records finished units and the results
//! found so far, which makes interrupted runs resumable.
//!
//! By default one representative is emitted per diagram: the free half must
//! be the least of its commutation class and not exceed the class of its
//! polar partner. [`SearchConfig::dedup`] switches this off.

pub mod checkpoint;
mod engine;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::k_point_table;
use crate::order::{DiagramOrder, OrderError};
use crate::sequence::CrossingSequence;

use checkpoint::{Checkpoint, ConfigEcho, FORMAT_VERSION};
use engine::{Stopper, Tree, Walker};
pub use engine::{PruneCounts, Prunes};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Restricts a run to units whose index `u` satisfies `u % of == index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UnitSelector {
    pub index: usize,
    pub of: usize,
}

impl UnitSelector {
    pub fn selects(&self, unit: usize) -> bool {
        unit % self.of == self.index
    }
}

impl FromStr for UnitSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, j) = s.split_once('/').ok_or_else(|| format!("unit selector {s:?} is not of the form I/J"))?;
        let index: usize = i.trim().parse().map_err(|_| format!("bad unit index in {s:?}"))?;
        let of: usize = j.trim().parse().map_err(|_| format!("bad unit count in {s:?}"))?;
        if of == 0 || index >= of {
            return Err(format!("unit selector {s:?} needs 0 <= I < J"));
        }
        Ok(UnitSelector { index, of })
    }
}

impl TryFrom<String> for UnitSelector {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<UnitSelector> for String {
    fn from(u: UnitSelector) -> String {
        u.to_string()
    }
}

impl fmt::Display for UnitSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.of)
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub order: DiagramOrder,
    pub limit: Option<usize>,
    pub budget: Option<Duration>,
    pub prefix: CrossingSequence,
    /// Depth at which the tree is cut into units; defaults to `min(|alpha|, 8)`.
    pub split_depth: Option<usize>,
    pub unit_selector: Option<UnitSelector>,
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
    pub checkpoint_path: Option<PathBuf>,
    /// Emit one representative per diagram instead of every free half.
    pub dedup: bool,
    pub prunes: Prunes,
    /// Stop after this many units in this run (the run stays resumable).
    pub max_units: Option<usize>,
}

pub const DEFAULT_SPLIT_DEPTH: usize = 8;

impl SearchConfig {
    pub fn new(order: DiagramOrder) -> SearchConfig {
        SearchConfig {
            order,
            limit: None,
            budget: None,
            prefix: CrossingSequence::default(),
            split_depth: None,
            unit_selector: None,
            threads: 1,
            checkpoint_path: None,
            dedup: true,
            prunes: Prunes::ALL,
            max_units: None,
        }
    }

    pub fn split_depth(&self) -> usize {
        self.split_depth
            .unwrap_or(DEFAULT_SPLIT_DEPTH)
            .min(self.order.alpha_length())
    }

    fn threads(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |p| p.get())
        } else {
            self.threads
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.order.get(),
            prefix: self.prefix.clone(),
            split_depth: self.split_depth(),
            unit_selector: self.unit_selector,
            dedup: self.dedup,
            prunes: self.prunes,
        }
    }

    /// Checks the prefix against the value range and the multiset bound.
    pub fn check(&self) -> Result<(), SearchError> {
        self.order.check_sweepable()?;
        let alpha_len = self.order.alpha_length();
        if self.prefix.len() > alpha_len {
            return Err(SearchError::Config(format!(
                "prefix has {} values but alpha has length {alpha_len}",
                self.prefix.len()
            )));
        }
        let top = self.order.get() as u8 - 2;
        if let Some(p) = self.prefix.iter().position(|&v| v == 0 || v > top) {
            return Err(SearchError::Config(format!(
                "prefix value {} at position {p} is outside 1..={top}",
                self.prefix[p]
            )));
        }
        if self.prunes.multiset {
            let quota = k_point_table(self.order).alpha_multiset();
            let mut used = vec![0u32; quota.len()];
            for &v in self.prefix.iter() {
                used[v as usize] += 1;
                if used[v as usize] > quota[v as usize] {
                    return Err(SearchError::Config(format!(
                        "prefix uses value {v} more than the {} times allowed",
                        quota[v as usize]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub valid_count: u64,
    pub elapsed_ms: u64,
    pub complete: bool,
    pub units_total: usize,
    pub units_done: usize,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Sorted lexicographically.
    pub results: Vec<CrossingSequence>,
    pub stats: SearchStats,
}

/// The prefixes of length `depth` allowed by the value multiset alone. Their
/// subtrees partition the unpruned search tree.
pub fn split_work(order: DiagramOrder, depth: usize) -> Vec<CrossingSequence> {
    let prunes = Prunes {
        multiset: true,
        ..Prunes::NONE
    };
    let tree = Tree::new(order, prunes, false);
    let mut walker = Walker::new(&tree);
    let mut out = Vec::new();
    walker.collect(depth.min(tree.alpha_len()), &mut out);
    out.into_iter().map(CrossingSequence::from).collect()
}

/// The work units of a configuration: extensions of its prefix to the split
/// depth that survive the active rules, in search order.
pub fn plan_units(config: &SearchConfig) -> Result<Vec<CrossingSequence>, SearchError> {
    config.check()?;
    let tree = Tree::new(config.order, config.prunes, config.dedup);
    Ok(units_of(&tree, config))
}

fn units_of(tree: &Tree, config: &SearchConfig) -> Vec<CrossingSequence> {
    let mut walker = Walker::new(tree);
    if !walker.enter(&config.prefix) {
        return Vec::new();
    }
    let mut out = Vec::new();
    walker.collect(config.split_depth().max(config.prefix.len()), &mut out);
    out.into_iter().map(CrossingSequence::from).collect()
}

pub fn search(config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    search_with(config, &mut |_| {})
}

/// Runs the search, calling `on_result` for each new result as it is found.
///
/// If `config.checkpoint_path` names an existing checkpoint, the run
/// continues from it; its configuration must match.
pub fn search_with(
    config: &SearchConfig,
    on_result: &mut dyn FnMut(&CrossingSequence),
) -> Result<SearchOutcome, SearchError> {
    config.check()?;
    let prior = match &config.checkpoint_path {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            let echo = config.echo();
            if cp.config != echo {
                return Err(SearchError::Checkpoint(format!(
                    "{} was written for a different configuration ({}), this run is ({})",
                    path.display(),
                    serde_json::to_string(&cp.config).unwrap_or_default(),
                    serde_json::to_string(&echo).unwrap_or_default()
                )));
            }
            Some(cp)
        }
        _ => None,
    };
    run(config, prior, on_result)
}

/// Continues the run recorded in the checkpoint at `path`.
pub fn resume(
    path: &Path,
    threads: usize,
    on_result: &mut dyn FnMut(&CrossingSequence),
) -> Result<SearchOutcome, SearchError> {
    let cp = Checkpoint::load(path)?;
    let order = DiagramOrder::new(cp.config.n)?;
    let config = SearchConfig {
        prefix: cp.config.prefix.clone(),
        split_depth: Some(cp.config.split_depth),
        unit_selector: cp.config.unit_selector,
        dedup: cp.config.dedup,
        prunes: cp.config.prunes,
        threads,
        checkpoint_path: Some(path.to_path_buf()),
        ..SearchConfig::new(order)
    };
    config.check()?;
    run(&config, Some(cp), on_result)
}

enum Message {
    Found(Vec<u8>),
    Done {
        unit: usize,
        nodes: u64,
        prunes: PruneCounts,
        finished: bool,
    },
}

fn run(
    config: &SearchConfig,
    prior: Option<Checkpoint>,
    on_result: &mut dyn FnMut(&CrossingSequence),
) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let tree = Tree::new(config.order, config.prunes, config.dedup);
    let units = units_of(&tree, config);
    let selected: Vec<CrossingSequence> = units
        .into_iter()
        .enumerate()
        .filter(|(i, _)| config.unit_selector.is_none_or(|s| s.selects(*i)))
        .map(|(_, u)| u)
        .collect();

    let mut done: HashSet<CrossingSequence> = HashSet::new();
    let mut results: BTreeSet<CrossingSequence> = BTreeSet::new();
    let mut stats = SearchStats::default();
    let mut previous_ms = 0;
    if let Some(cp) = prior {
        done.extend(cp.completed_units);
        results.extend(cp.results);
        stats = cp.stats;
        previous_ms = cp.elapsed_ms;
    }
    let mut pending: Vec<CrossingSequence> = selected.iter().filter(|u| !done.contains(*u)).cloned().collect();
    if let Some(max) = config.max_units {
        pending.truncate(max);
    }

    let limit_hit = |results: &BTreeSet<CrossingSequence>| config.limit.is_some_and(|l| results.len() >= l);
    let flag = AtomicBool::new(limit_hit(&results));
    let stopper = Stopper {
        flag: &flag,
        deadline: config.budget.map(|b| started + b),
    };
    let next = AtomicUsize::new(0);
    let mut last_write = Instant::now();

    let snapshot = |done: &HashSet<CrossingSequence>,
                    results: &BTreeSet<CrossingSequence>,
                    stats: &mut SearchStats,
                    now_ms: u64| {
        stats.units_total = selected.len();
        stats.units_done = selected.iter().filter(|u| done.contains(*u)).count();
        stats.complete = stats.units_done == stats.units_total;
        stats.valid_count = results.len() as u64;
        stats.elapsed_ms = now_ms;
        let mut completed: Vec<CrossingSequence> = done.iter().cloned().collect();
        completed.sort();
        Checkpoint {
            version: FORMAT_VERSION,
            n: config.order.get(),
            valid_count: stats.valid_count,
            nodes: stats.nodes,
            elapsed_ms: now_ms,
            complete: stats.complete,
            config: config.echo(),
            completed_units: completed,
            stats: stats.clone(),
            results: results.iter().cloned().collect(),
        }
    };

    let mut io_error = None;
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<Message>();
        for _ in 0..config.threads().min(pending.len().max(1)) {
            let tx = tx.clone();
            let (tree, pending, next, stopper) = (&tree, &pending, &next, &stopper);
            scope.spawn(move || loop {
                if stopper.flag.load(Ordering::Relaxed) {
                    break;
                }
                let unit = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = pending.get(unit) else {
                    break;
                };
                let mut walker = Walker::new(tree);
                if walker.enter(prefix) {
                    walker.explore(stopper, &mut |alpha| {
                        let _ = tx.send(Message::Found(alpha.to_vec()));
                    });
                }
                let _ = tx.send(Message::Done {
                    unit,
                    nodes: walker.nodes,
                    prunes: walker.prunes,
                    finished: !walker.aborted,
                });
            });
        }
        drop(tx);
        for message in rx {
            match message {
                Message::Found(alpha) => {
                    if limit_hit(&results) {
                        continue;
                    }
                    let alpha = CrossingSequence::from(alpha);
                    if results.insert(alpha.clone()) {
                        on_result(&alpha);
                    }
                    if limit_hit(&results) {
                        flag.store(true, Ordering::Relaxed);
                    }
                }
                Message::Done {
                    unit,
                    nodes,
                    prunes,
                    finished,
                } => {
                    stats.nodes += nodes;
                    stats.prunes.add(&prunes);
                    if finished {
                        done.insert(pending[unit].clone());
                    }
                    if let Some(path) = &config.checkpoint_path {
                        if last_write.elapsed() >= Duration::from_secs(1) {
                            let now_ms = previous_ms + started.elapsed().as_millis() as u64;
                            if let Err(e) = snapshot(&done, &results, &mut stats, now_ms).store(path) {
                                io_error.get_or_insert(e);
                                flag.store(true, Ordering::Relaxed);
                            }
                            last_write = Instant::now();
                        }
                    }
                }
            }
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    let now_ms = previous_ms + started.elapsed().as_millis() as u64;
    let cp = snapshot(&done, &results, &mut stats, now_ms);
    if let Some(path) = &config.checkpoint_path {
        cp.store(path)?;
    }
    Ok(SearchOutcome {
        results: results.into_iter().collect(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: u32) -> DiagramOrder {
        DiagramOrder::new(n).unwrap()
    }

    #[test]
    fn split_examples() {
        let units: Vec<Vec<u8>> = split_work(order(7), 1).into_iter().map(|u| u.into_vec()).collect();
        assert_eq!(units, vec![vec![2], vec![3], vec![4]]);
        assert_eq!(split_work(order(7), 4).len(), 12);
        assert_eq!(split_work(order(11), 0).len(), 1);
    }

    #[test]
    fn selector_parsing() {
        let s: UnitSelector = "1/3".parse().unwrap();
        assert!(s.selects(4) && !s.selects(3));
        assert!("3/3".parse::<UnitSelector>().is_err());
        assert!("x".parse::<UnitSelector>().is_err());
    }

    #[test]
    fn prefix_checks() {
        let mut config = SearchConfig::new(order(7));
        config.prefix = vec![4, 4].into();
        assert!(matches!(config.check(), Err(SearchError::Config(_))));
        config.prefix = vec![6].into();
        assert!(matches!(config.check(), Err(SearchError::Config(_))));
        config.prefix = vec![3, 2, 3, 4, 3].into();
        assert!(matches!(config.check(), Err(SearchError::Config(_))));
    }

    #[test]
    fn seven_curve_search() {
        let outcome = search(&SearchConfig::new(order(7))).unwrap();
        let found: Vec<Vec<u8>> = outcome.results.into_iter().map(|a| a.into_vec()).collect();
        assert_eq!(found, vec![vec![3, 2, 3, 4], vec![3, 2, 4, 3]]);
        assert!(outcome.stats.complete);
        assert_eq!(outcome.stats.valid_count, 2);
    }
}
