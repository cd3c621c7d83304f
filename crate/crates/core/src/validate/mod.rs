//! Venn-condition checks on crossing sequences.
//!
//! Two validators are provided. [`validate_full`] sweeps the whole diagram
//! (`n` cluster passes) and demands that every closed region carries a
//! distinct interior set and that the strands close up; it is the reference.
//! [`validate_symmetric`] sweeps one cluster, derives the relabeling the
//! rotation induces, and checks rotation orbits instead; it agrees with the
//! full check for every input because `n` is prime.

pub mod crosscut;
pub mod polar;
pub mod region;
pub mod sweep;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::form::{ClusterForm, FormError};
use crate::order::{DiagramOrder, OrderError};
use crate::sequence::CrossingSequence;

use region::{MaskSet, OrbitCensus, RegionSet};
use sweep::SweepState;

pub use crosscut::{
    check_crosscut_symmetry, curve_crossing_lists, find_crosscuts, left_k_points, mirror_regions, CrossingList,
    Crosscut, MirrorRegions,
};
pub use polar::{check_polar_symmetry, cyclic_trace_equivalent};
pub use region::RegionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    DuplicateRegion,
    DuplicateOrbit,
    ShiftNotFullCycle,
    StrandClosureFailure,
    LengthMismatch,
    ValueOutOfRange,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::DuplicateRegion => "duplicate-region",
            FailureReason::DuplicateOrbit => "duplicate-orbit",
            FailureReason::ShiftNotFullCycle => "shift-not-full-cycle",
            FailureReason::StrandClosureFailure => "strand-closure-failure",
            FailureReason::LengthMismatch => "length-mismatch",
            FailureReason::ValueOutOfRange => "value-out-of-range",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub reason: Option<FailureReason>,
    /// Index of the crossing at which the failure was detected.
    pub failing_position: Option<usize>,
    /// Distinct region sets (full check) or orbits (symmetric check) recorded.
    pub census_size: usize,
    /// Label map of one cluster pass: curve `c` takes the place of `shift_cycle[c]`.
    pub shift_cycle: Option<Vec<u8>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }

    fn valid(census_size: usize, shift_cycle: Option<Vec<u8>>) -> Self {
        ValidationReport {
            verdict: Verdict::Valid,
            reason: None,
            failing_position: None,
            census_size,
            shift_cycle,
        }
    }

    fn invalid(reason: FailureReason, failing_position: Option<usize>, census_size: usize) -> Self {
        ValidationReport {
            verdict: Verdict::Invalid,
            reason: Some(reason),
            failing_position,
            census_size,
            shift_cycle: None,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.verdict, self.reason) {
            (Verdict::Valid, _) => write!(f, "valid (census {})", self.census_size),
            (Verdict::Invalid, reason) => {
                write!(f, "invalid: {}", reason.map_or("unknown".into(), |r| r.to_string()))?;
                if let Some(p) = self.failing_position {
                    write!(f, " at position {p}")?;
                }
                write!(f, " (census {})", self.census_size)
            }
        }
    }
}

/// Length and range checks shared by both validators.
fn precheck(order: DiagramOrder, sigma: &[u8]) -> Option<ValidationReport> {
    if sigma.len() != order.cluster_length() {
        return Some(ValidationReport::invalid(FailureReason::LengthMismatch, None, 0));
    }
    let n = order.n();
    sigma
        .iter()
        .position(|&v| v == 0 || v as usize >= n)
        .map(|p| ValidationReport::invalid(FailureReason::ValueOutOfRange, Some(p), 0))
}

/// Sweeps `sigma` repeated `n` times from the identity start.
///
/// # Panics
/// If `order` exceeds [`crate::order::MAX_SWEEP_ORDER`].
pub fn validate_full(order: DiagramOrder, sigma: &[u8]) -> ValidationReport {
    order.check_sweepable().expect("order too large for the sweep");
    if let Some(report) = precheck(order, sigma) {
        return report;
    }
    let n = order.n();
    let mut state = SweepState::identity(n);
    let mut seen = MaskSet::new(n);
    let mut position = 0;
    for _ in 0..n {
        for &gap in sigma {
            let closed = state.step(gap);
            if !seen.insert(closed.set.mask()) {
                return ValidationReport::invalid(FailureReason::DuplicateRegion, Some(position), seen.len());
            }
            position += 1;
        }
    }
    if state.ranks().iter().enumerate().any(|(r, &c)| r != c as usize) {
        return ValidationReport::invalid(FailureReason::StrandClosureFailure, Some(position), seen.len());
    }
    ValidationReport::valid(seen.len(), None)
}

/// Relabeling that makes one cluster pass act as `c -> c + 1`, given the
/// label map `g` of a pass. `None` unless `g` is a single `n`-cycle.
pub(crate) fn cycle_relabeling(g: &[u8]) -> Option<Vec<u8>> {
    let n = g.len();
    let mut label = vec![u8::MAX; n];
    let mut c = 0usize;
    for k in 0..n {
        if label[c] != u8::MAX {
            return None;
        }
        label[c] = k as u8;
        c = g[c] as usize;
    }
    (c == 0).then_some(label)
}

/// Sweeps one cluster from the identity start and checks rotation orbits.
///
/// # Panics
/// If `order` exceeds [`crate::order::MAX_SWEEP_ORDER`].
pub fn validate_symmetric(order: DiagramOrder, sigma: &[u8]) -> ValidationReport {
    order.check_sweepable().expect("order too large for the sweep");
    if let Some(report) = precheck(order, sigma) {
        return report;
    }
    let n = order.n();
    let mut state = SweepState::identity(n);
    let mut closures = Vec::with_capacity(sigma.len());
    for &gap in sigma {
        closures.push(state.step(gap).set);
    }
    // From the identity start, the curve now at rank r plays the role curve r had.
    let g: Vec<u8> = state.ranks().to_vec();
    let Some(label) = cycle_relabeling(&g) else {
        return ValidationReport::invalid(FailureReason::ShiftNotFullCycle, Some(sigma.len()), 0);
    };
    let mut census = OrbitCensus::new(n);
    for (position, set) in closures.iter().enumerate() {
        let relabeled = RegionSet::from_curves(set.curves().map(|c| label[c as usize]));
        if !census.insert(relabeled) {
            return ValidationReport::invalid(FailureReason::DuplicateOrbit, Some(position), census.len());
        }
    }
    ValidationReport::valid(census.len(), Some(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("not a Venn diagram: {0}")]
    Invalid(ValidationReport),
}

/// A cluster sequence that passed [`validate_symmetric`]; operations that
/// need a real diagram take this type so they cannot be handed garbage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidDiagram {
    order: DiagramOrder,
    sigma: CrossingSequence,
    form: Option<ClusterForm>,
}

impl ValidDiagram {
    pub fn new(order: DiagramOrder, sigma: impl Into<CrossingSequence>) -> Result<Self, DiagramError> {
        order.check_sweepable()?;
        let sigma = sigma.into();
        let report = validate_symmetric(order, &sigma);
        if !report.is_valid() {
            return Err(DiagramError::Invalid(report));
        }
        let form = ClusterForm::recognize(order, &sigma);
        Ok(ValidDiagram { order, sigma, form })
    }

    pub fn from_form(form: ClusterForm) -> Result<Self, DiagramError> {
        let order = form.order();
        order.check_sweepable()?;
        let sigma = form.sigma();
        let report = validate_symmetric(order, &sigma);
        if !report.is_valid() {
            return Err(DiagramError::Invalid(report));
        }
        Ok(ValidDiagram {
            order,
            sigma,
            form: Some(form),
        })
    }

    pub fn order(&self) -> DiagramOrder {
        self.order
    }

    pub fn sigma(&self) -> &CrossingSequence {
        &self.sigma
    }

    /// The canonical form, when the sequence has one.
    pub fn form(&self) -> Option<&ClusterForm> {
        self.form.as_ref()
    }

    /// `sigma` repeated `n` times.
    pub fn full_sequence(&self) -> CrossingSequence {
        self.sigma.repeat(self.order.n())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: u32) -> DiagramOrder {
        DiagramOrder::new(n).unwrap()
    }

    fn sigma(n: u32, alpha: &[u8]) -> CrossingSequence {
        ClusterForm::new(order(n), alpha.to_vec()).unwrap().sigma()
    }

    #[test]
    fn small_orders_valid() {
        for n in [3, 5] {
            let s = sigma(n, &[]);
            let full = validate_full(order(n), &s);
            assert!(full.is_valid(), "{full}");
            assert_eq!(full.census_size, (1 << n) - 2);
            let sym = validate_symmetric(order(n), &s);
            assert!(sym.is_valid(), "{sym}");
            assert_eq!(sym.census_size, s.len());
        }
        let three = validate_symmetric(order(3), &[1, 2]);
        assert_eq!(three.shift_cycle, Some(vec![1, 2, 0]));
    }

    #[test]
    fn m4_valid_and_bad_arrangement_rejected() {
        let good = sigma(7, &[3, 2, 3, 4]);
        assert!(validate_full(order(7), &good).is_valid());
        let sym = validate_symmetric(order(7), &good);
        assert!(sym.is_valid());
        assert_eq!(sym.census_size, 18);
        let bad = sigma(7, &[4, 3, 2, 3]);
        assert!(!validate_full(order(7), &bad).is_valid());
        assert!(!validate_symmetric(order(7), &bad).is_valid());
    }

    #[test]
    fn error_reasons() {
        let r = validate_full(order(7), &[1, 2, 3]);
        assert_eq!(r.reason, Some(FailureReason::LengthMismatch));
        let mut s = sigma(7, &[3, 2, 3, 4]).into_vec();
        s[4] = 7;
        let r = validate_symmetric(order(7), &s);
        assert_eq!((r.reason, r.failing_position), (Some(FailureReason::ValueOutOfRange), Some(4)));
        let r = validate_full(order(5), &[1, 1, 2, 3, 4, 3]);
        // The doubled 1 reopens {0}, which closes again at the next pass.
        assert_eq!((r.reason, r.failing_position), (Some(FailureReason::DuplicateRegion), Some(6)));
        // Two swaps at the same gap undo each other: the pass is the identity.
        let r = validate_symmetric(order(3), &[1, 1]);
        assert_eq!(r.reason, Some(FailureReason::ShiftNotFullCycle));
    }

    #[test]
    fn relabeling_follows_cycle() {
        assert_eq!(cycle_relabeling(&[2, 0, 1]), Some(vec![0, 2, 1]));
        assert_eq!(cycle_relabeling(&[1, 0, 2]), None);
    }

    #[test]
    fn valid_diagram_guards() {
        assert!(ValidDiagram::new(order(7), sigma(7, &[4, 3, 2, 3])).is_err());
        let d = ValidDiagram::new(order(7), sigma(7, &[3, 2, 3, 4])).unwrap();
        assert_eq!(d.form().unwrap().alpha().as_slice(), &[3, 2, 3, 4]);
        assert_eq!(d.full_sequence().len(), 126);
    }
}
