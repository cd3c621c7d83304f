#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use crosscut::{ClusterForm, DiagramOrder, ValidDiagram};

/// Free half of the first simple symmetric 11-Venn diagram.
pub const NEWROZ: [u8; 84] = [
    3, 2, 3, 4, 3, 4, 5, 4, 3, 2, 3, 4, 3, 4, 5, 4, 3, 4, 5, 4, 5, 6, 5, 4, 5, 6, 5, 6, 7, 6, 5, 4, 3, 2, 5, 4, 3, 4,
    6, 5, 4, 5, 6, 7, 6, 7, 8, 7, 6, 5, 6, 5, 4, 3, 4, 5, 7, 6, 5, 4, 6, 5, 8, 7, 6, 5, 4, 5, 7, 6, 5, 6, 8, 7, 6, 5,
    4, 6, 5, 7, 6, 5, 6, 7,
];

pub const M4: [u8; 4] = [3, 2, 3, 4];
pub const HAMILTON: [u8; 4] = [3, 2, 4, 3];

pub fn order(n: u32) -> DiagramOrder {
    DiagramOrder::new(n).unwrap()
}

pub fn form(n: u32, alpha: &[u8]) -> ClusterForm {
    ClusterForm::new(order(n), alpha.to_vec()).unwrap()
}

pub fn diagram(n: u32, alpha: &[u8]) -> ValidDiagram {
    ValidDiagram::from_form(form(n, alpha)).unwrap()
}

/// Every distinct arrangement of `values`, in lexicographic order.
pub fn arrangements(values: &[u8]) -> Vec<Vec<u8>> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Next lexicographic permutation until exhausted.
    loop {
        let Some(i) = (0..sorted.len().saturating_sub(1)).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            return out;
        };
        let j = (i + 1..sorted.len()).rev().find(|&j| sorted[j] > sorted[i]).unwrap();
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
}

/// The valid diagrams used throughout the suites.
pub fn known_valid() -> Vec<ValidDiagram> {
    vec![
        diagram(3, &[]),
        diagram(5, &[]),
        diagram(7, &M4),
        diagram(7, &HAMILTON),
        diagram(7, &[3, 4, 2, 3]),
        diagram(7, &[3, 4, 3, 2]),
        diagram(11, &NEWROZ),
    ]
}

/// Venn check with explicit sets: all `2^n - 2` closed regions distinct and
/// the strands back in place after `n` passes.
pub fn brute_venn(n: usize, sigma: &[u8]) -> bool {
    if sigma.iter().any(|&v| v == 0 || v as usize >= n) {
        return false;
    }
    let mut ranks: Vec<u8> = (0..n as u8).collect();
    let mut closed: HashSet<BTreeSet<u8>> = HashSet::new();
    for _ in 0..n {
        for &g in sigma {
            let g = g as usize;
            let set: BTreeSet<u8> = ranks[..g].iter().copied().collect();
            if !closed.insert(set) {
                return false;
            }
            ranks.swap(g - 1, g);
        }
    }
    closed.len() == (1 << n) - 2 && ranks.iter().enumerate().all(|(r, &c)| r == c as usize)
}
