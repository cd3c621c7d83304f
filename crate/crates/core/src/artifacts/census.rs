//! Region and crossing tallies of a validated diagram.

use std::fmt;

use serde::Serialize;

use crate::validate::sweep::SweepState;
use crate::validate::{check_crosscut_symmetry, check_polar_symmetry, find_crosscuts, left_k_points, ValidDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    /// Regions inside exactly `k` curves in one cluster, index `k - 1`.
    pub cluster_k_regions: Vec<u64>,
    /// Crossings at gap `k` left of the crosscut, index `k - 1`; absent
    /// without a canonical form.
    pub left_k_points: Option<Vec<u64>>,
    pub crosscuts: usize,
    pub crosscut_symmetric: bool,
    pub polar_symmetric: bool,
}

pub fn census_report(diagram: &ValidDiagram) -> CensusReport {
    let n = diagram.order().n();
    let mut state = SweepState::identity(n);
    let mut cluster_k_regions = vec![0u64; n - 1];
    for &g in diagram.sigma().iter() {
        cluster_k_regions[state.step(g).set.cardinality() as usize - 1] += 1;
    }
    CensusReport {
        n,
        cluster_k_regions,
        left_k_points: left_k_points(diagram),
        crosscuts: find_crosscuts(diagram).len(),
        crosscut_symmetric: check_crosscut_symmetry(diagram),
        polar_symmetric: check_polar_symmetry(diagram),
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "k-regions per cluster (k=1..{}): {}", self.n - 1, join(&self.cluster_k_regions))?;
        match &self.left_k_points {
            Some(points) => writeln!(f, "k-points left of crosscut: {}", join(points))?,
            None => writeln!(f, "k-points left of crosscut: n/a (no canonical form)")?,
        }
        writeln!(f, "crosscuts: {}", self.crosscuts)?;
        writeln!(f, "crosscut symmetry: {}", self.crosscut_symmetric)?;
        write!(f, "polar symmetry: {}", self.polar_symmetric)
    }
}
