//! Polar symmetry: invariance under turning the cylindrical drawing upside down.

use std::collections::HashSet;

use super::ValidDiagram;
use crate::trace::lexmin_normal_form;

/// Normal forms of the rotations of `seq` by `0..period`.
fn rotation_classes(seq: &[u8], period: usize) -> HashSet<Vec<u8>> {
    let mut window = Vec::with_capacity(seq.len());
    (0..period.min(seq.len().max(1)))
        .map(|cut| {
            window.clear();
            window.extend_from_slice(&seq[cut..]);
            window.extend_from_slice(&seq[..cut]);
            lexmin_normal_form(&window)
        })
        .collect()
}

/// Whether some rotation of `a` and some rotation of `b` lie in the same
/// commutation class. Only rotations by `0..period` are tried, which covers
/// all of them when both sequences have that period.
pub fn cyclic_trace_equivalent(a: &[u8], b: &[u8], period: usize) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let left = rotation_classes(a, period);
    rotation_classes(b, period).iter().any(|c| left.contains(c))
}

/// Whether the diagram equals its polar image: the full sequence reversed
/// with every gap `i` replaced by `n - i`.
///
/// Conservative: `true` is definitive, while equivalences reachable only by
/// commuting across every cut position would be missed.
pub fn check_polar_symmetry(diagram: &ValidDiagram) -> bool {
    let n = diagram.order().n() as u8;
    let full = diagram.full_sequence();
    let flipped: Vec<u8> = full.iter().rev().map(|&v| n - v).collect();
    cyclic_trace_equivalent(&full, &flipped, diagram.sigma().len())
}
