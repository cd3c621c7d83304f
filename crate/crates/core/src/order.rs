//! Diagram orders and the lengths they induce.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order accepted for counting formulas.
pub const MAX_ORDER: u32 = 61;

/// Largest order whose region sets fit the `u32` masks used by the sweep.
pub const MAX_SWEEP_ORDER: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order must be at least 3 (got {0})")]
    TooSmall(u32),
    #[error("order must be an odd prime (got even n = {0})")]
    Even(u32),
    #[error("order must be an odd prime (alpha length non-integral for n = {0})")]
    NonIntegral(u32),
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u32),
    #[error("order {0} exceeds the largest order supported by the sweep ({MAX_SWEEP_ORDER})")]
    TooLargeForSweep(u32),
}

/// Number of curves of a rotationally symmetric diagram.
///
/// Construction only succeeds when both the cluster length `(2^n - 2)/n` and
/// the free-half length `(2^(n-1) - (n-1)^2)/n` are integers. Below
/// [`MAX_ORDER`] that is exactly the set of odd primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct DiagramOrder(u32);

impl DiagramOrder {
    pub fn new(n: u32) -> Result<Self, OrderError> {
        if n < 3 {
            return Err(OrderError::TooSmall(n));
        }
        if n > MAX_ORDER {
            return Err(OrderError::TooLarge(n));
        }
        if n.is_multiple_of(2) {
            return Err(OrderError::Even(n));
        }
        let nb = BigUint::from(n);
        let cluster = (BigUint::from(1u8) << n as usize) - 2u8;
        if !(cluster % &nb).is_zero() {
            return Err(OrderError::NonIntegral(n));
        }
        let half = BigUint::from(1u8) << (n as usize - 1);
        let square = BigUint::from(n - 1).pow(2);
        if half < square || !((half - square) % &nb).is_zero() {
            return Err(OrderError::NonIntegral(n));
        }
        Ok(DiagramOrder(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// `(2^n - 2)/n`, the number of crossings in one cluster.
    pub fn cluster_length(self) -> usize {
        sequence_lengths(self).0
    }

    /// `(2^(n-1) - (n-1)^2)/n`, the length of the free half of the canonical form.
    pub fn alpha_length(self) -> usize {
        sequence_lengths(self).1
    }

    /// `2^n - 2`, the number of crossings of the whole diagram.
    pub fn total_crossings(self) -> usize {
        self.cluster_length() * self.n()
    }

    /// Fails for orders whose region sets do not fit in a `u32` mask.
    pub fn check_sweepable(self) -> Result<(), OrderError> {
        if self.0 > MAX_SWEEP_ORDER {
            Err(OrderError::TooLargeForSweep(self.0))
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u32> for DiagramOrder {
    type Error = OrderError;

    fn try_from(n: u32) -> Result<Self, Self::Error> {
        DiagramOrder::new(n)
    }
}

impl From<DiagramOrder> for u32 {
    fn from(order: DiagramOrder) -> u32 {
        order.0
    }
}

impl fmt::Display for DiagramOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns `(cluster_length, alpha_length)` for a validated order.
pub fn sequence_lengths(order: DiagramOrder) -> (usize, usize) {
    let n = order.get();
    let nb = BigUint::from(n);
    let cluster = ((BigUint::from(1u8) << n as usize) - 2u8) / &nb;
    let half = BigUint::from(1u8) << (n as usize - 1);
    let alpha = (half - BigUint::from(n - 1).pow(2)) / &nb;
    (
        cluster.to_usize().expect("cluster length fits usize"),
        alpha.to_usize().expect("alpha length fits usize"),
    )
}
