//! Exact counting formulas for crosscut-symmetric clusters.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::order::{DiagramOrder, OrderError};

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n * R_k = C(n-1, k) + (-1)^(k+1)`, exact for any `k >= 0`.
fn scaled_left_count(n: u32, k: u32) -> BigInt {
    let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    BigInt::from(binomial(n - 1, k)) + sign
}

/// Number of `k`-points (equivalently `k`-regions) left of the crosscut.
pub fn left_count(order: DiagramOrder, k: u32) -> u64 {
    let n = order.get();
    let scaled = scaled_left_count(n, k);
    let (q, r) = (&scaled / n, &scaled % n);
    debug_assert!(r.is_zero(), "C({}, {k}) + (-1)^(k+1) not divisible by n", n - 1);
    q.to_u64().expect("left count fits u64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPointRow {
    pub k: u32,
    /// `R_k`.
    pub left_points: u64,
    /// Copies of `k` in the free half: `R_k - 1` for `k <= n-2` (the border
    /// holds the remaining one), none for `k = n-1`.
    pub alpha_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPointTable {
    pub n: u32,
    pub rows: Vec<KPointRow>,
}

impl KPointTable {
    pub fn row(&self, k: u32) -> Option<&KPointRow> {
        self.rows.get((k as usize).checked_sub(1)?)
    }

    /// Copies of `k` required in the free half, zero outside `1..n`.
    pub fn alpha_count(&self, k: u32) -> u64 {
        self.row(k).map_or(0, |r| r.alpha_count)
    }

    pub fn total_left(&self) -> u64 {
        self.rows.iter().map(|r| r.left_points).sum()
    }

    pub fn total_alpha(&self) -> u64 {
        self.rows.iter().map(|r| r.alpha_count).sum()
    }

    /// Required multiplicities indexed by value, length `n`.
    pub fn alpha_multiset(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n as usize];
        for row in &self.rows {
            counts[row.k as usize] = row.alpha_count as u32;
        }
        counts
    }
}

pub fn k_point_table(order: DiagramOrder) -> KPointTable {
    let n = order.get();
    let rows = (1..n)
        .map(|k| {
            let left_points = left_count(order, k);
            let alpha_count = if k <= n - 2 { left_points.saturating_sub(1) } else { 0 };
            KPointRow {
                k,
                left_points,
                alpha_count,
            }
        })
        .collect();
    KPointTable { n, rows }
}

/// Catalan number `C(2m, m) / (m + 1)`.
pub fn catalan(m: u32) -> BigUint {
    binomial(2 * m, m) / (m + 1)
}

/// `n * (R_m - R_{m-1})` with `m = (n-1)/2`, from the two left counts.
pub fn middle_gap_scaled(order: DiagramOrder) -> BigInt {
    let n = order.get();
    let m = (n - 1) / 2;
    scaled_left_count(n, m) - scaled_left_count(n, m - 1)
}

/// The same quantity through the Catalan route: `c_m + 2(-1)^(m+1)`.
pub fn middle_gap_catalan(order: DiagramOrder) -> BigInt {
    let m = (order.get() - 1) / 2;
    let two = BigInt::from(2);
    let sign = if m % 2 == 1 { two } else { -two };
    BigInt::from(catalan(m)) + sign
}

/// Whether a diagram of this order can have both crosscut and polar symmetry
/// by the middle-layer counting argument: `R_m <= R_{m-1} + 1`.
///
/// `n = 2` is accepted as a constant `true`; any other input must be a valid
/// [`DiagramOrder`].
pub fn polar_crosscut_possible(n: u32) -> Result<bool, OrderError> {
    if n == 2 {
        return Ok(true);
    }
    let order = DiagramOrder::new(n)?;
    let scaled = middle_gap_scaled(order);
    debug_assert_eq!(scaled, middle_gap_catalan(order));
    Ok(scaled <= BigInt::from(n))
}
