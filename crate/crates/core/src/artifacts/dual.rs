//! The dual graph: one vertex per region, one edge per curve segment.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use thiserror::Error;

use crate::validate::region::RegionSet;
use crate::validate::sweep::SweepState;
use crate::validate::ValidDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("curve segment between {0} and {1} recorded twice")]
    DuplicateEdge(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub n: usize,
    /// Every subset of the curves; all are regions of a Venn diagram.
    pub vertices: Vec<RegionSet>,
    /// Each pair has the smaller mask first; sorted.
    pub edges: Vec<(RegionSet, RegionSet)>,
}

fn ordered(a: RegionSet, b: RegionSet) -> (RegionSet, RegionSet) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    /// Collects the two segments that start at every crossing of the full
    /// sequence: after the swap at gap `g`, the curve at rank `g` separates
    /// gaps `g-1` and `g`, and the curve at rank `g+1` separates `g` and `g+1`.
    /// Every segment starts at exactly one crossing, so a repeated edge
    /// means two faces share more than one segment, which a Venn diagram
    /// from a valid sequence cannot produce.
    pub fn from_diagram(diagram: &ValidDiagram) -> Result<DualGraph, DualError> {
        let n = diagram.order().n();
        let mut state = SweepState::identity(n);
        let mut edges = BTreeSet::new();
        for &g in diagram.full_sequence().iter() {
            state.step(g);
            let inner = state.open_region(g);
            for edge in [ordered(state.open_region(g - 1), inner), ordered(inner, state.open_region(g + 1))] {
                if !edges.insert(edge) {
                    return Err(DualError::DuplicateEdge(edge.0.bitstring(n), edge.1.bitstring(n)));
                }
            }
        }
        Ok(DualGraph {
            n,
            vertices: (0..1u32 << n).map(RegionSet).collect(),
            edges: edges.into_iter().collect(),
        })
    }

    pub fn degree(&self, v: RegionSet) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut degree = vec![0usize; self.vertices.len()];
        for (a, b) in &self.edges {
            degree[a.mask() as usize] += 1;
            degree[b.mask() as usize] += 1;
        }
        degree.into_iter().max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let size = self.vertices.len();
        let mut adjacency = vec![Vec::new(); size];
        for (a, b) in &self.edges {
            adjacency[a.mask() as usize].push(b.mask() as usize);
            adjacency[b.mask() as usize].push(a.mask() as usize);
        }
        let mut seen = vec![false; size];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == size
    }

    /// One `BITSTRING BITSTRING` line per edge, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .map(|(a, b)| {
                let (x, y) = (a.bitstring(self.n), b.bitstring(self.n));
                if x <= y {
                    format!("{x} {y}\n")
                } else {
                    format!("{y} {x}\n")
                }
            })
            .collect();
        lines.sort();
        lines.concat()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", v.bitstring(self.n));
        }
        for line in self.to_edge_list().lines() {
            let (a, b) = line.split_once(' ').expect("two labels");
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}
