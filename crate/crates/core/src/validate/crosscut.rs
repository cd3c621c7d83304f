//! Crosscuts, per-cluster crossing lists and the mirror structure around the crosscut.

use serde::Serialize;

use super::region::{all_distinct, RegionSet};
use super::sweep::SweepState;
use super::ValidDiagram;
use crate::form::{canonical_parts, mirror_alpha, canonical_start, ClusterForm};

/// A run of `n - 1` consecutive crossings along one curve that meets every
/// other curve once, moving monotonically across all ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosscut {
    pub curve: u8,
    /// Global crossing indices in the full sequence, in the order met.
    pub positions: Vec<usize>,
    pub partners: Vec<u8>,
}

/// Finds every crosscut of the diagram, sweeping the full sequence from the
/// identity start and following each curve cyclically.
///
/// A window qualifies when the gaps it crosses are `1, 2, ..., n-1` or
/// `n-1, ..., 1`: the curve travels from the outer face to the inner one (or
/// back) passing each other curve exactly once. Merely requiring `n - 1`
/// distinct partners would also accept shifted windows that leave and
/// re-enter the crosscut.
pub fn find_crosscuts(diagram: &ValidDiagram) -> Vec<Crosscut> {
    let n = diagram.order().n();
    let mut state = SweepState::identity(n);
    // Per curve: (global index, partner, gap).
    let mut along: Vec<Vec<(usize, u8, u8)>> = vec![Vec::new(); n];
    for (t, &gap) in diagram.full_sequence().iter().enumerate() {
        let (a, b) = state.pair(gap);
        along[a as usize].push((t, b, gap));
        along[b as usize].push((t, a, gap));
        state.step(gap);
    }
    let span = n - 1;
    let mut found = Vec::new();
    for (curve, list) in along.iter().enumerate() {
        let len = list.len();
        if len < span {
            continue;
        }
        for s in 0..len {
            let window = (0..span).map(|j| list[(s + j) % len]);
            let ascending = window.clone().enumerate().all(|(j, (_, _, g))| g as usize == j + 1);
            let descending = window.clone().enumerate().all(|(j, (_, _, g))| g as usize == span - j);
            if ascending || descending {
                found.push(Crosscut {
                    curve: curve as u8,
                    positions: window.clone().map(|(t, _, _)| t).collect(),
                    partners: window.map(|(_, p, _)| p).collect(),
                });
            }
        }
    }
    found
}

/// Partners met by one curve in one cluster, in sweep order (labels zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingList {
    pub curve: u8,
    pub cluster: usize,
    pub partners: Vec<u8>,
}

impl CrossingList {
    pub fn is_palindrome(&self) -> bool {
        self.partners.iter().eq(self.partners.iter().rev())
    }

    fn is_crosscut(&self, n: usize) -> bool {
        self.partners.len() == n - 1 && all_distinct(&self.partners)
    }
}

/// Crossing lists of cluster `k` (one-based) under the labeling of the
/// canonical form: curve 0 is the cluster's crosscut, and the cluster runs
/// from the start of the border `rho` through the next `rho` and the first
/// crossing of the next descent, which closes the crosscut of the next
/// cluster. `None` when the diagram has no canonical form or `k == 0`.
pub fn curve_crossing_lists(diagram: &ValidDiagram, k: usize) -> Option<Vec<CrossingList>> {
    let form = diagram.form()?;
    if k == 0 {
        return None;
    }
    Some(lists_for_form(form, k))
}

fn lists_for_form(form: &ClusterForm, k: usize) -> Vec<CrossingList> {
    let order = form.order();
    let n = order.n();
    let sigma = form.sigma();
    let (rho, _) = canonical_parts(order);
    let mut state = SweepState::new(&canonical_start(order));
    for _ in 1..k {
        for &g in sigma.iter() {
            state.step(g);
        }
    }
    let mut partners: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut record = |state: &mut SweepState, g: u8| {
        let (a, b) = state.pair(g);
        partners[a as usize].push(b);
        partners[b as usize].push(a);
        state.step(g);
    };
    for &g in sigma.iter().chain(rho.iter()) {
        record(&mut state, g);
    }
    // The next free half commutes with the top crossing and is skipped.
    record(&mut state, n as u8 - 1);
    partners
        .into_iter()
        .enumerate()
        .map(|(curve, partners)| CrossingList {
            curve: curve as u8,
            cluster: k,
            partners,
        })
        .collect()
}

/// Whether every curve except the crosscut reads its cluster-one crossing
/// list as a palindrome. One cluster suffices by rotation. Sequences with no
/// recognizable canonical form report `false`.
pub fn check_crosscut_symmetry(diagram: &ValidDiagram) -> bool {
    let Some(lists) = curve_crossing_lists(diagram, 1) else {
        return false;
    };
    let n = diagram.order().n();
    let cuts: Vec<&CrossingList> = lists.iter().filter(|l| l.is_crosscut(n)).collect();
    if cuts.len() != 1 {
        return false;
    }
    let cut = cuts[0].curve;
    lists.iter().filter(|l| l.curve != cut).all(CrossingList::is_palindrome)
}

/// Regions on the two sides of the crosscut of one cluster, under the
/// canonical labeling (the crosscut is curve 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorRegions {
    pub crosscut_curve: u8,
    /// Sets closed while sweeping `rho . alpha`.
    pub left: Vec<RegionSet>,
    /// Sets opened while sweeping the mirror half, the next border after its
    /// first crossing, and the next top crossing.
    pub right: Vec<RegionSet>,
}

impl MirrorRegions {
    /// Whether adding the crosscut curve to each left set gives exactly the
    /// right sets, as multisets.
    pub fn holds(&self) -> bool {
        let mut lifted: Vec<RegionSet> = self.left.iter().map(|s| s.with(self.crosscut_curve)).collect();
        let mut right = self.right.clone();
        lifted.sort_unstable();
        right.sort_unstable();
        lifted == right
    }
}

pub fn mirror_regions(diagram: &ValidDiagram) -> Option<MirrorRegions> {
    let form = diagram.form()?;
    let order = form.order();
    let n = order.n();
    let (rho, delta) = canonical_parts(order);
    let mut state = SweepState::new(&canonical_start(order));
    let mut left = Vec::new();
    for &g in rho.iter().chain(form.alpha().iter()) {
        left.push(state.step(g).set);
    }
    for &g in delta.iter() {
        state.step(g);
    }
    let mut right = Vec::new();
    for &g in mirror_alpha(form.alpha()).iter() {
        state.step(g);
        right.push(state.open_region(g));
    }
    state.step(rho[0]);
    for &g in rho[1..].iter().chain([n as u8 - 1].iter()) {
        state.step(g);
        right.push(state.open_region(g));
    }
    Some(MirrorRegions {
        crosscut_curve: 0,
        left,
        right,
    })
}

/// Number of crossings at gap `k` for `k = 1..n-1` (index `k - 1`) left of
/// the crosscut, counted from the cardinality of the regions they close.
pub fn left_k_points(diagram: &ValidDiagram) -> Option<Vec<u64>> {
    let form = diagram.form()?;
    let n = form.order().n();
    let (rho, _) = canonical_parts(form.order());
    let mut state = SweepState::new(&canonical_start(form.order()));
    let mut counts = vec![0u64; n - 1];
    for &g in rho.iter().chain(form.alpha().iter()) {
        counts[state.step(g).set.cardinality() as usize - 1] += 1;
    }
    Some(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::DiagramOrder;

    fn diagram(n: u32, alpha: &[u8]) -> ValidDiagram {
        let form = ClusterForm::new(DiagramOrder::new(n).unwrap(), alpha.to_vec()).unwrap();
        ValidDiagram::from_form(form).unwrap()
    }

    fn one_based(list: &CrossingList) -> Vec<u8> {
        list.partners.iter().map(|p| p + 1).collect()
    }

    #[test]
    fn m4_lists_match_hand_trace() {
        let m4 = diagram(7, &[3, 2, 3, 4]);
        let lists = curve_crossing_lists(&m4, 1).unwrap();
        assert_eq!(one_based(&lists[0]), vec![2, 5, 4, 6, 3, 7]);
        assert_eq!(one_based(&lists[1]), vec![3, 1, 3]);
        assert_eq!(one_based(&lists[3]), vec![5, 3, 5, 1, 5, 3, 5]);
        assert!(check_crosscut_symmetry(&m4));
    }

    #[test]
    fn crosscut_counts() {
        assert_eq!(find_crosscuts(&diagram(3, &[])).len(), 6);
        assert_eq!(find_crosscuts(&diagram(5, &[])).len(), 5);
        let cuts = find_crosscuts(&diagram(7, &[3, 2, 3, 4]));
        assert_eq!(cuts.len(), 7);
        for cut in &cuts {
            let mut p = cut.partners.clone();
            p.sort_unstable();
            p.dedup();
            assert_eq!(p.len(), 6);
            assert!(!p.contains(&cut.curve));
        }
    }

    #[test]
    fn mirror_and_left_counts() {
        for (n, alpha) in [(5u32, vec![]), (7, vec![3, 2, 3, 4]), (7, vec![3, 2, 4, 3])] {
            let d = diagram(n, &alpha);
            assert!(mirror_regions(&d).unwrap().holds());
            let table = crate::counting::k_point_table(d.order());
            let expected: Vec<u64> = table.rows.iter().map(|r| r.left_points).collect();
            assert_eq!(left_k_points(&d).unwrap(), expected);
        }
    }
}
