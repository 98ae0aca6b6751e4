//! Closed-form negative inertia indices for cycles, paths and canonical
//! unicyclic graphs. Kept separate from the decision procedures so that tests
//! can use them as an independent oracle against exact elimination.

use thiserror::Error;

use crate::invariants::StarDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("a path needs at least 1 vertex")]
    EmptyPath,
    #[error("pure cycle has no attached stars; use the cycle formula")]
    PureCycle,
}

/// `i₋` of a signed cycle of order `n`.
pub fn cycle_inertia(n: usize, balanced: bool) -> Result<usize, ClosedFormError> {
    if n < 3 {
        return Err(ClosedFormError::CycleTooShort(n));
    }
    let half = n.div_ceil(2);
    let full_when_balanced = matches!(n % 4, 2 | 3);
    Ok(if balanced == full_when_balanced { half } else { half - 1 })
}

/// `i₋` of a signed path of order `n`, whatever its signs.
pub fn path_inertia(n: usize) -> Result<usize, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::EmptyPath);
    }
    Ok(n / 2)
}

/// `k + Σ ⌊lᵢ/2⌋` for a canonical unicyclic graph with `k >= 1` stars.
pub fn canonical_unicyclic_inertia(d: &StarDecomposition) -> Result<usize, ClosedFormError> {
    if d.is_pure_cycle() {
        return Err(ClosedFormError::PureCycle);
    }
    Ok(d.k() + d.segments.iter().map(|l| l / 2).sum::<usize>())
}

/// The target value `⌈g/2⌉ + 1`.
pub fn target_index(girth: usize) -> usize {
    girth.div_ceil(2) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgraph::Sign;

    fn decomposition(girth: usize, segments: &[usize]) -> StarDecomposition {
        StarDecomposition {
            girth,
            cycle: (0..girth).collect(),
            cycle_sign: Sign::Pos,
            stars: segments.iter().map(|_| (0, vec![0])).collect(),
            segments: segments.to_vec(),
        }
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_inertia(6, true), Ok(3));
        assert_eq!(cycle_inertia(4, false), Ok(2));
        assert_eq!(cycle_inertia(5, true), Ok(2));
        assert_eq!(cycle_inertia(4, true), Ok(1));
        assert_eq!(cycle_inertia(7, false), Ok(3));
        assert!(cycle_inertia(2, true).is_err());
    }

    #[test]
    fn paths() {
        assert_eq!(path_inertia(1), Ok(0));
        assert_eq!(path_inertia(5), Ok(2));
        assert_eq!(path_inertia(8), Ok(4));
        assert!(path_inertia(0).is_err());
    }

    #[test]
    fn unicyclic() {
        assert_eq!(canonical_unicyclic_inertia(&decomposition(6, &[2, 2])), Ok(4));
        assert_eq!(canonical_unicyclic_inertia(&decomposition(6, &[1, 3])), Ok(3));
        assert_eq!(canonical_unicyclic_inertia(&decomposition(9, &[2, 2, 2])), Ok(6));
        assert_eq!(
            canonical_unicyclic_inertia(&decomposition(6, &[])),
            Err(ClosedFormError::PureCycle)
        );
        assert_eq!(target_index(9), 6);
        assert_eq!(target_index(6), 4);
    }
}
