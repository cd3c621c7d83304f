//! Commutation classes of crossing sequences.
//!
//! Two adjacent crossings whose gaps differ by more than one involve four
//! distinct curves, so exchanging them describes the same diagram. The
//! equivalence classes are traces over the independence relation
//! `|a - b| > 1`; this module computes their lexicographically least
//! representative.

use crate::sequence::CrossingSequence;

/// Whether crossings at gaps `a` and `b` may be exchanged.
#[inline]
pub fn commute(a: u8, b: u8) -> bool {
    a.abs_diff(b) > 1
}

/// Lexicographically smallest sequence reachable by exchanging adjacent
/// commuting entries.
///
/// Greedy: at each step emit the smallest value whose next occurrence is not
/// preceded by a pending occurrence of a dependent value.
pub fn foata_normal_form(seq: &[u8]) -> CrossingSequence {
    lexmin_normal_form(seq).into()
}

pub(crate) fn lexmin_normal_form(seq: &[u8]) -> Vec<u8> {
    let Some(&max) = seq.iter().max() else {
        return Vec::new();
    };
    let width = max as usize + 2;
    // queues[v] holds the positions of value v, consumed front to back.
    let mut queues: Vec<Vec<usize>> = vec![Vec::new(); width];
    for (i, &v) in seq.iter().enumerate() {
        queues[v as usize].push(i);
    }
    let mut heads = vec![0usize; width];
    let next = |queues: &[Vec<usize>], heads: &[usize], v: usize| -> usize {
        queues[v].get(heads[v]).copied().unwrap_or(usize::MAX)
    };
    let mut out = Vec::with_capacity(seq.len());
    while out.len() < seq.len() {
        let mut chosen = None;
        for v in 0..width - 1 {
            let p = next(&queues, &heads, v);
            if p == usize::MAX {
                continue;
            }
            let below = if v == 0 { usize::MAX } else { next(&queues, &heads, v - 1) };
            let above = next(&queues, &heads, v + 1);
            if below > p && above > p {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("some pending occurrence is always minimal");
        heads[v] += 1;
        out.push(v as u8);
    }
    out
}

/// Whether two sequences describe the same commutation class.
pub fn trace_equivalent(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len() && lexmin_normal_form(a) == lexmin_normal_form(b)
}

/// Given that `prefix` is in normal form, whether `prefix + [next]` still is.
///
/// A word is the least of its class iff it has no factor `b u a` with
/// `a < b` where `a` commutes with `b` and with every letter of `u`.
pub fn extends_normal_form(prefix: &[u8], next: u8) -> bool {
    for &x in prefix.iter().rev() {
        if !commute(x, next) {
            return true;
        }
        if x > next {
            return false;
        }
    }
    true
}

pub fn is_normal_form(seq: &[u8]) -> bool {
    (0..seq.len()).all(|i| extends_normal_form(&seq[..i], seq[i]))
}
