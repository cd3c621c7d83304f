//! The crosscut-symmetric canonical form `rho . alpha . delta . mirror(alpha)`.
//!
//! `rho = 1,3,2,5,4,...,n-2,n-3` is the zig-zag border, `delta = n-1,...,2`
//! the descent of the crosscut, and the free half `alpha` determines the
//! rest: its mirror is `alpha` reversed with every value raised by one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::DiagramOrder;
use crate::sequence::CrossingSequence;
use crate::trace::{commute, lexmin_normal_form};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("alpha has length {found}, expected {expected} for n = {n}")]
    MalformedAlpha { n: u32, expected: usize, found: usize },
    #[error("alpha value {value} at position {position} is outside 1..={max}")]
    ValueOutOfRange { position: usize, value: u8, max: u8 },
}

/// The zig-zag border `1,3,2,5,4,...,n-2,n-3` and the crosscut descent
/// `n-1,n-2,...,2`, both of length `n - 2`.
pub fn canonical_parts(order: DiagramOrder) -> (CrossingSequence, CrossingSequence) {
    let n = order.get() as u8;
    let mut rho = vec![1u8];
    let mut k = 3u8;
    while k < n - 1 {
        rho.push(k);
        rho.push(k - 1);
        k += 2;
    }
    let delta: Vec<u8> = (2..n).rev().collect();
    (rho.into(), delta.into())
}

/// `alpha` reversed with one added to every entry.
pub fn mirror_alpha(alpha: &[u8]) -> CrossingSequence {
    alpha.iter().rev().map(|&v| v + 1).collect()
}

/// Inverse of [`mirror_alpha`].
pub fn unmirror_alpha(mirrored: &[u8]) -> CrossingSequence {
    mirrored.iter().rev().map(|&v| v - 1).collect()
}

/// The free half of the polar (upside-down) image: every value `v` becomes `n - 1 - v`.
pub fn polar_partner(order: DiagramOrder, alpha: &[u8]) -> CrossingSequence {
    let top = order.get() as u8 - 1;
    alpha.iter().map(|&v| top - v).collect()
}

/// Curve labels on the sweep ray just before `rho`, outermost first:
/// `C_{n-1}, C_n, C_{n-3}, C_{n-2}, ..., C_2, C_3, C_1`, zero-based.
///
/// With this start one cluster pass relabels every curve `c` as `c + 1 (mod n)`.
pub fn canonical_start(order: DiagramOrder) -> Vec<u8> {
    let n = order.get() as u8;
    let mut start = Vec::with_capacity(n as usize);
    let mut k = n - 1;
    while k >= 2 {
        start.push(k - 1);
        start.push(k);
        k -= 2;
    }
    start.push(0);
    start
}

/// An order together with the free half of its canonical crossing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusterForm {
    order: DiagramOrder,
    alpha: CrossingSequence,
}

impl ClusterForm {
    /// Checks the length of `alpha` and that its values lie in `1..=n-2`,
    /// so that every entry of the assembled sequence stays within `1..=n-1`.
    pub fn new(order: DiagramOrder, alpha: impl Into<CrossingSequence>) -> Result<Self, FormError> {
        let alpha = alpha.into();
        let expected = order.alpha_length();
        if alpha.len() != expected {
            return Err(FormError::MalformedAlpha {
                n: order.get(),
                expected,
                found: alpha.len(),
            });
        }
        let max = order.get() as u8 - 2;
        if let Some(position) = alpha.iter().position(|&v| v == 0 || v > max) {
            return Err(FormError::ValueOutOfRange {
                position,
                value: alpha[position],
                max,
            });
        }
        Ok(ClusterForm { order, alpha })
    }

    pub fn order(&self) -> DiagramOrder {
        self.order
    }

    pub fn alpha(&self) -> &CrossingSequence {
        &self.alpha
    }

    pub fn sigma(&self) -> CrossingSequence {
        build_sigma(self)
    }

    /// Recognizes `sigma` as a canonical form.
    ///
    /// Tries every cyclic cut of the periodic sequence; for each cut the
    /// window is divided by `rho` on the left, the unique occurrences of
    /// `delta` are located, and the remainder is split into the free half and
    /// its mirror. Equivalence is checked on commutation classes, so
    /// rearranged inputs are recognized too. Rearrangements that only exist
    /// across the cut are not found.
    pub fn recognize(order: DiagramOrder, sigma: &[u8]) -> Option<ClusterForm> {
        if sigma.len() != order.cluster_length() {
            return None;
        }
        let (rho, delta) = canonical_parts(order);
        let n_alpha = order.alpha_length();
        let literal_alpha = &sigma[rho.len()..rho.len() + n_alpha];
        if let Ok(form) = ClusterForm::new(order, literal_alpha.to_vec()) {
            if form.sigma().as_slice() == sigma {
                return Some(form);
            }
        }
        let mut window = Vec::with_capacity(sigma.len());
        for cut in 0..sigma.len() {
            window.clear();
            window.extend_from_slice(&sigma[cut..]);
            window.extend_from_slice(&sigma[..cut]);
            if let Some(alpha) = split_canonical(&window, &rho, &delta, n_alpha) {
                if let Ok(form) = ClusterForm::new(order, alpha) {
                    return Some(form);
                }
            }
        }
        None
    }
}

impl fmt::Display for ClusterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} alpha=[{}]", self.order, self.alpha)
    }
}

/// `rho . alpha . delta . mirror(alpha)`, of length `(2^n - 2)/n`.
pub fn build_sigma(form: &ClusterForm) -> CrossingSequence {
    let (rho, delta) = canonical_parts(form.order);
    let mut sigma = Vec::with_capacity(form.order.cluster_length());
    sigma.extend_from_slice(&rho);
    sigma.extend_from_slice(&form.alpha);
    sigma.extend_from_slice(&delta);
    sigma.extend_from_slice(&mirror_alpha(&form.alpha));
    sigma.into()
}

/// Removes a trace prefix `head` from `word`, or `None` if it is not one.
fn left_divide(word: &[u8], head: &[u8]) -> Option<Vec<u8>> {
    let mut rest = word.to_vec();
    for &x in head {
        let j = rest.iter().position(|&y| y == x)?;
        if rest[..j].iter().any(|&y| !commute(x, y)) {
            return None;
        }
        rest.remove(j);
    }
    Some(rest)
}

fn split_canonical(window: &[u8], rho: &[u8], delta: &[u8], n_alpha: usize) -> Option<Vec<u8>> {
    let rest = left_divide(window, rho)?;
    if rest.len() != delta.len() + 2 * n_alpha {
        return None;
    }
    // delta[0] = n-1 is the first n-1; each later delta value is the first
    // occurrence of that value after the previous one.
    let mut delta_pos = vec![usize::MAX; delta.len()];
    let mut from = 0;
    for (i, &d) in delta.iter().enumerate() {
        let p = from + rest[from..].iter().position(|&y| y == d)?;
        delta_pos[i] = p;
        from = p + 1;
    }
    let top = delta[0];
    let position_of = |v: u8| -> Option<usize> {
        if v < 2 || v > top {
            None
        } else {
            Some(delta_pos[(top - v) as usize])
        }
    };
    let mut alpha = Vec::with_capacity(n_alpha);
    for (i, &v) in rest.iter().enumerate() {
        if delta_pos.contains(&i) {
            continue;
        }
        // Every value of the free half depends on the delta entry of the
        // same value, so it must precede it; the mirror half follows it.
        if !matches!(position_of(v), Some(p) if i > p) {
            alpha.push(v);
        }
    }
    if alpha.len() != n_alpha || alpha.iter().any(|&v| v + 1 > top) {
        return None;
    }
    let mirrored = mirror_alpha(&alpha);
    let mut rebuilt = alpha.clone();
    rebuilt.extend_from_slice(delta);
    rebuilt.extend_from_slice(&mirrored);
    if lexmin_normal_form(&rebuilt) != lexmin_normal_form(&rest) {
        return None;
    }
    Some(lexmin_normal_form(&alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: u32) -> DiagramOrder {
        DiagramOrder::new(n).unwrap()
    }

    #[test]
    fn parts() {
        let (rho, delta) = canonical_parts(order(7));
        assert_eq!(rho.as_slice(), &[1, 3, 2, 5, 4]);
        assert_eq!(delta.as_slice(), &[6, 5, 4, 3, 2]);
        let (rho, delta) = canonical_parts(order(3));
        assert_eq!((rho.as_slice(), delta.as_slice()), (&[1u8][..], &[2u8][..]));
        let (rho, delta) = canonical_parts(order(11));
        assert_eq!(rho.as_slice(), &[1, 3, 2, 5, 4, 7, 6, 9, 8]);
        assert_eq!(delta.as_slice(), &[10, 9, 8, 7, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn mirror() {
        assert_eq!(mirror_alpha(&[3, 2, 3, 4]).as_slice(), &[5, 4, 3, 4]);
        assert_eq!(mirror_alpha(&[3, 2, 4, 3]).as_slice(), &[4, 5, 3, 4]);
        assert!(mirror_alpha(&[]).is_empty());
        assert_eq!(unmirror_alpha(&mirror_alpha(&[3, 2, 4, 3])).as_slice(), &[3, 2, 4, 3]);
    }

    #[test]
    fn sigma_examples() {
        let m4 = ClusterForm::new(order(7), vec![3, 2, 3, 4]).unwrap();
        assert_eq!(
            m4.sigma().as_slice(),
            &[1, 3, 2, 5, 4, 3, 2, 3, 4, 6, 5, 4, 3, 2, 5, 4, 3, 4]
        );
        let five = ClusterForm::new(order(5), vec![]).unwrap();
        assert_eq!(five.sigma().as_slice(), &[1, 3, 2, 4, 3, 2]);
        let three = ClusterForm::new(order(3), vec![]).unwrap();
        assert_eq!(three.sigma().as_slice(), &[1, 2]);
    }

    #[test]
    fn form_errors() {
        assert!(matches!(
            ClusterForm::new(order(7), vec![3, 2, 3]),
            Err(FormError::MalformedAlpha { expected: 4, found: 3, .. })
        ));
        assert!(matches!(
            ClusterForm::new(order(7), vec![3, 2, 3, 6]),
            Err(FormError::ValueOutOfRange { position: 3, value: 6, .. })
        ));
    }

    #[test]
    fn canonical_start_vectors() {
        assert_eq!(canonical_start(order(7)), vec![5, 6, 3, 4, 1, 2, 0]);
        assert_eq!(canonical_start(order(3)), vec![1, 2, 0]);
    }

    #[test]
    fn recognition() {
        let n7 = order(7);
        let m4 = ClusterForm::new(n7, vec![3, 2, 3, 4]).unwrap();
        assert_eq!(ClusterForm::recognize(n7, &m4.sigma()), Some(m4.clone()));

        // Rotate the cut and exchange a commuting pair; still recognized.
        let mut sigma = m4.sigma().into_vec();
        sigma.rotate_left(7);
        let swap_at = (0..sigma.len() - 1).find(|&i| commute(sigma[i], sigma[i + 1])).unwrap();
        sigma.swap(swap_at, swap_at + 1);
        let found = ClusterForm::recognize(n7, &sigma).expect("recognized");
        assert!(crate::trace::trace_equivalent(found.alpha(), m4.alpha()));

        assert_eq!(ClusterForm::recognize(n7, &[1; 18]), None);
    }
}
