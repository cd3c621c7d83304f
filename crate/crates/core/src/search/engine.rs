//! Depth-first walk over free halves with incremental pruning.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::counting::k_point_table;
use crate::form::{canonical_parts, mirror_alpha, canonical_start, polar_partner, ClusterForm};
use crate::order::DiagramOrder;
use crate::trace::{extends_normal_form, lexmin_normal_form};
use crate::validate::region::{OrbitCensus, RegionSet};
use crate::validate::sweep::SweepState;
use crate::validate::validate_symmetric;

/// Which pruning rules are active. Final validation always runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prunes {
    /// Each value `k` used at most `R_k - 1` times.
    pub multiset: bool,
    /// No two equal consecutive crossings, including across the junctions.
    pub adjacent: bool,
    /// No repeated rotation orbit among the closures seen so far.
    pub orbit: bool,
}

impl Prunes {
    pub const ALL: Prunes = Prunes {
        multiset: true,
        adjacent: true,
        orbit: true,
    };
    pub const NONE: Prunes = Prunes {
        multiset: false,
        adjacent: false,
        orbit: false,
    };
}

impl Default for Prunes {
    fn default() -> Self {
        Prunes::ALL
    }
}

/// Prune tallies; one count per rejected child or leaf.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub multiset: u64,
    pub adjacent: u64,
    pub orbit: u64,
    pub non_canonical: u64,
    pub final_validation: u64,
}

impl PruneCounts {
    pub fn add(&mut self, other: &PruneCounts) {
        self.multiset += other.multiset;
        self.adjacent += other.adjacent;
        self.orbit += other.orbit;
        self.non_canonical += other.non_canonical;
        self.final_validation += other.final_validation;
    }
}

#[derive(Debug, Clone, Copy)]
enum Rejection {
    Multiset,
    Adjacent,
    NonCanonical,
    Orbit,
}

/// Everything shared by all walkers of one search.
pub(crate) struct Tree {
    order: DiagramOrder,
    alpha_len: usize,
    top: u8,
    rho_last: Option<u8>,
    delta: Vec<u8>,
    quota: Vec<u32>,
    prunes: Prunes,
    dedup: bool,
    root_state: SweepState,
    root_census: OrbitCensus,
    root_ok: bool,
}

impl Tree {
    pub(crate) fn new(order: DiagramOrder, prunes: Prunes, dedup: bool) -> Tree {
        let n = order.n();
        let (rho, delta) = canonical_parts(order);
        let quota = if prunes.multiset {
            k_point_table(order).alpha_multiset()
        } else {
            vec![u32::MAX; n]
        };
        let mut root_state = SweepState::new(&canonical_start(order));
        let mut root_census = OrbitCensus::new(n);
        let mut root_ok = true;
        for &g in rho.iter() {
            let closed = root_state.step(g).set;
            root_ok &= root_census.insert(closed) || !prunes.orbit;
        }
        Tree {
            order,
            alpha_len: order.alpha_length(),
            top: n as u8 - 2,
            rho_last: rho.last().copied(),
            delta: delta.into_vec(),
            quota,
            prunes,
            dedup,
            root_state,
            root_census,
            root_ok,
        }
    }

    pub(crate) fn alpha_len(&self) -> usize {
        self.alpha_len
    }
}

/// Cooperative cancellation: a shared flag plus an optional deadline.
pub(crate) struct Stopper<'a> {
    pub flag: &'a AtomicBool,
    pub deadline: Option<Instant>,
}

impl Stopper<'_> {
    fn should_stop(&self) -> bool {
        if self.flag.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.flag.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

pub(crate) struct Walker<'t> {
    tree: &'t Tree,
    alpha: Vec<u8>,
    used: Vec<u32>,
    states: Vec<SweepState>,
    inserted: Vec<RegionSet>,
    census: OrbitCensus,
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub aborted: bool,
    tick: u32,
}

impl<'t> Walker<'t> {
    pub(crate) fn new(tree: &'t Tree) -> Walker<'t> {
        let mut states = Vec::with_capacity(tree.alpha_len + 1);
        states.push(tree.root_state);
        Walker {
            tree,
            alpha: Vec::with_capacity(tree.alpha_len),
            used: vec![0; tree.order.n()],
            states,
            inserted: Vec::with_capacity(tree.alpha_len),
            census: tree.root_census.clone(),
            nodes: 0,
            prunes: PruneCounts::default(),
            aborted: false,
            tick: 0,
        }
    }

    fn check(&self, v: u8) -> Result<(), Rejection> {
        let tree = self.tree;
        if self.used[v as usize] >= tree.quota[v as usize] {
            return Err(Rejection::Multiset);
        }
        if tree.prunes.adjacent {
            let prev = self.alpha.last().copied().or(tree.rho_last);
            // The mirror half starts with last + 1 right after the final 2 of delta.
            let closes_on_two = self.alpha.len() + 1 == tree.alpha_len && v + 1 == *tree.delta.last().unwrap_or(&0);
            if prev == Some(v) || closes_on_two {
                return Err(Rejection::Adjacent);
            }
        }
        if tree.dedup && !extends_normal_form(&self.alpha, v) {
            return Err(Rejection::NonCanonical);
        }
        Ok(())
    }

    /// Appends `v` if it survives every active rule.
    fn push(&mut self, v: u8) -> bool {
        if let Err(rule) = self.check(v) {
            self.count(rule);
            return false;
        }
        let mut state = *self.states.last().expect("root state");
        let closed = state.step(v).set;
        if self.tree.prunes.orbit && !self.census.insert(closed) {
            self.count(Rejection::Orbit);
            return false;
        }
        self.inserted.push(closed);
        self.states.push(state);
        self.alpha.push(v);
        self.used[v as usize] += 1;
        self.nodes += 1;
        true
    }

    fn pop(&mut self) {
        let v = self.alpha.pop().expect("non-empty prefix");
        self.used[v as usize] -= 1;
        self.states.pop();
        let closed = self.inserted.pop().expect("matching closure");
        if self.tree.prunes.orbit {
            self.census.remove(closed);
        }
    }

    fn count(&mut self, rule: Rejection) {
        match rule {
            Rejection::Multiset => self.prunes.multiset += 1,
            Rejection::Adjacent => self.prunes.adjacent += 1,
            Rejection::NonCanonical => self.prunes.non_canonical += 1,
            Rejection::Orbit => self.prunes.orbit += 1,
        }
    }

    /// Positions the walker at `prefix`; `false` if some rule rejects it.
    pub(crate) fn enter(&mut self, prefix: &[u8]) -> bool {
        if !self.tree.root_ok {
            return false;
        }
        for (i, &v) in prefix.iter().enumerate() {
            if v == 0 || v > self.tree.top || !self.push(v) {
                for _ in 0..i {
                    self.pop();
                }
                return false;
            }
        }
        true
    }

    /// Every surviving extension of the current prefix to length `depth`.
    pub(crate) fn collect(&mut self, depth: usize, out: &mut Vec<Vec<u8>>) {
        if self.alpha.len() >= depth {
            out.push(self.alpha.clone());
            return;
        }
        for v in 1..=self.tree.top {
            if self.push(v) {
                self.collect(depth, out);
                self.pop();
            }
        }
    }

    /// Explores the subtree under the current prefix, calling `emit` on
    /// every valid free half. Returns early once `stop` fires.
    pub(crate) fn explore(&mut self, stop: &Stopper<'_>, emit: &mut dyn FnMut(&[u8])) {
        self.tick = self.tick.wrapping_add(1);
        if self.tick.is_multiple_of(1024) && stop.should_stop() {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        if self.alpha.len() == self.tree.alpha_len {
            if self.leaf() {
                emit(&self.alpha);
            }
            return;
        }
        for v in 1..=self.tree.top {
            if self.push(v) {
                self.explore(stop, emit);
                self.pop();
                if self.aborted {
                    return;
                }
            }
        }
    }

    fn leaf(&mut self) -> bool {
        let tree = self.tree;
        if tree.dedup {
            let partner = lexmin_normal_form(&polar_partner(tree.order, &self.alpha));
            if partner.as_slice() < self.alpha.as_slice() {
                self.prunes.non_canonical += 1;
                return false;
            }
        }
        let mirror = mirror_alpha(&self.alpha);
        if tree.prunes.orbit {
            let mut state = *self.states.last().expect("state");
            let mut added = Vec::with_capacity(tree.delta.len() + mirror.len());
            let mut clean = true;
            for &g in tree.delta.iter().chain(mirror.iter()) {
                let closed = state.step(g).set;
                if !self.census.insert(closed) {
                    clean = false;
                    break;
                }
                added.push(closed);
            }
            for closed in added {
                self.census.remove(closed);
            }
            if !clean {
                self.prunes.orbit += 1;
                return false;
            }
        }
        let form = ClusterForm::new(tree.order, self.alpha.clone()).expect("values stay in range");
        if !validate_symmetric(tree.order, &form.sigma()).is_valid() {
            self.prunes.final_validation += 1;
            return false;
        }
        true
    }
}
