//! The angular sweep: a ray from the centre carrying the curves in rank order.

use super::region::{all_distinct, RegionSet};
use crate::order::MAX_SWEEP_ORDER;

const CAP: usize = MAX_SWEEP_ORDER as usize + 1;

/// Curves along the ray plus the region open in every gap.
///
/// Rank `r` (zero-based here) holds `ranks[r]`; rank 0 is the outermost
/// curve. Gap `i` lies between ranks `i-1` and `i`, inside exactly the `i`
/// outermost curves.
#[derive(Debug, Clone, Copy)]
pub struct SweepState {
    n: u8,
    ranks: [u8; CAP],
    /// `prefix[i]` is the set of curves at ranks `0..i`, the region open at gap `i`.
    prefix: [u32; CAP + 1],
    opened_at: [isize; CAP + 1],
    position: usize,
}

/// A region closed by a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Closure {
    pub gap: u8,
    pub set: RegionSet,
}

impl SweepState {
    /// `start` lists curve labels outermost first and must be a permutation of `0..n`.
    pub fn new(start: &[u8]) -> SweepState {
        let n = start.len();
        assert!((2..CAP).contains(&n), "unsupported number of curves {n}");
        debug_assert!(start.iter().all(|&c| (c as usize) < n) && all_distinct(start));
        let mut ranks = [0u8; CAP];
        ranks[..n].copy_from_slice(start);
        let mut prefix = [0u32; CAP + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] | 1 << start[i];
        }
        SweepState {
            n: n as u8,
            ranks,
            prefix,
            opened_at: [0; CAP + 1],
            position: 0,
        }
    }

    pub fn identity(n: usize) -> SweepState {
        let start: Vec<u8> = (0..n as u8).collect();
        SweepState::new(&start)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Labels by rank, outermost first.
    #[inline]
    pub fn ranks(&self) -> &[u8] {
        &self.ranks[..self.n as usize]
    }

    /// Crossings processed so far.
    #[inline]
    pub fn position(&self) -> usize {
        self.position
    }

    /// Region currently open at `gap` (`0..=n`).
    #[inline]
    pub fn open_region(&self, gap: u8) -> RegionSet {
        RegionSet(self.prefix[gap as usize])
    }

    /// Position at which the region open at `gap` was opened; zero for
    /// regions open since the start.
    #[inline]
    pub fn opened_at(&self, gap: u8) -> isize {
        self.opened_at[gap as usize]
    }

    /// The two curves about to cross at `gap`, outer one first.
    #[inline]
    pub fn pair(&self, gap: u8) -> (u8, u8) {
        let g = gap as usize;
        (self.ranks[g - 1], self.ranks[g])
    }

    /// Applies a crossing at `gap` (`1..=n-1`) and returns the region it closes.
    #[inline]
    pub fn step(&mut self, gap: u8) -> Closure {
        let g = gap as usize;
        debug_assert!(g >= 1 && g < self.n as usize);
        let closed = RegionSet(self.prefix[g]);
        self.ranks.swap(g - 1, g);
        self.prefix[g] = self.prefix[g - 1] | 1 << self.ranks[g - 1];
        self.position += 1;
        self.opened_at[g] = self.position as isize;
        Closure { gap, set: closed }
    }
}

/// Runs `seq` from `start` and returns every closure in order plus the final
/// rank vector. Stops at the first value outside `1..=n-1` and reports its
/// position.
pub fn sweep(start: &[u8], seq: &[u8]) -> Result<(Vec<Closure>, Vec<u8>), usize> {
    let n = start.len();
    let mut state = SweepState::new(start);
    let mut closures = Vec::with_capacity(seq.len());
    for (i, &gap) in seq.iter().enumerate() {
        if gap == 0 || gap as usize >= n {
            return Err(i);
        }
        closures.push(state.step(gap));
    }
    Ok((closures, state.ranks().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_curves_by_hand() {
        // Labels 1,2,3 written zero-based as 0,1,2.
        let (closures, end) = sweep(&[0, 1, 2], &[1, 2]).unwrap();
        assert_eq!(
            closures,
            vec![
                Closure { gap: 1, set: RegionSet::from_curves([0]) },
                Closure { gap: 2, set: RegionSet::from_curves([1, 0]) },
            ]
        );
        assert_eq!(end, vec![1, 2, 0]);
    }

    #[test]
    fn repeated_gap_reopens_previous_set() {
        let mut state = SweepState::identity(5);
        assert_eq!(state.step(1).set, RegionSet::from_curves([0]));
        assert_eq!(state.open_region(1), RegionSet::from_curves([1]));
        assert_eq!(state.step(1).set, RegionSet::from_curves([1]));
        assert_eq!(state.open_region(1), RegionSet::from_curves([0]));
    }

    #[test]
    fn out_of_range_reports_position() {
        assert_eq!(sweep(&[0, 1, 2], &[1, 3]).unwrap_err(), 1);
        assert_eq!(sweep(&[0, 1, 2], &[0]).unwrap_err(), 0);
    }
}
