//! Integer pipeline: reach an integer matrix with an off-diagonal 1 using
//! unimodular Bezout blocks, then reuse the two-step reductions, whose
//! conjugators are integer with determinant 1 at a unit pivot.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bezout::{extended_gcd, BezoutTriple};
use crate::error::{Error, Result};
use crate::matrix::{DiagonalSpec, Matrix};
use crate::scalar::{RingSpec, Scalar};
use crate::trace::{Recorder, Solution, StepKind, TraceStep};
use crate::two_step::{bump_column, check_instance, choose_pivot, diagonal_bump, finish_two_step, PivotChoice};

/// Result of [`find_unit_entry`]: `solution.result()` is integer with a 1 at
/// `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitEntry {
    pub solution: Solution,
    pub position: PivotChoice,
}

/// Identity except `(2,2) = p`, `(2,k) = q`, `(k,2) = r`, `(k,k) = s`
/// (0-based: row/column 1 and `k`). Determinant `ps - qr = 1`.
pub fn bezout_block(order: usize, k: usize, t: &BezoutTriple) -> Matrix {
    let z = RingSpec::Integer;
    let int = |v: &BigInt| Scalar::Integer(v.clone());
    Matrix::identity(order, z)
        .with_entry(1, 1, int(&t.p))
        .with_entry(1, k, int(&t.q))
        .with_entry(k, 1, int(&t.r))
        .with_entry(k, k, int(&t.s))
}

fn require_integer(a: &Matrix) -> Result<()> {
    if a.ring() == RingSpec::Integer {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(a.ring()))
    }
}

fn assert_integer(m: &Matrix, what: &str) -> Result<()> {
    if m.ring() == RingSpec::Integer {
        Ok(())
    } else {
        Err(Error::InvariantViolated(format!("{what} produced a non-integer matrix")))
    }
}

fn entry(m: &Matrix, i: usize, j: usize) -> BigInt {
    m.get(i, j).as_integer().expect("integer matrix")
}

/// Permutation putting `(i, j)` at `(0, 1)`; other indices keep their order.
fn lead_permutation(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut sigma = vec![usize::MAX; n];
    sigma[i] = 0;
    sigma[j] = 1;
    for (next, slot) in (2..).zip(sigma.iter_mut().filter(|t| **t == usize::MAX)) {
        *slot = next;
    }
    sigma
}

/// Finds an integer matrix similar to `a` with an off-diagonal 1.
///
/// Existing unit entries are used as-is; a diagonal `a` gets a bump (rational
/// conjugator, integer result). Otherwise the smallest nonzero off-diagonal
/// entry is permuted to `(1, 2)` and the first row's tail is cleared with
/// Bezout blocks, each replacing `a_12` by `gcd(a_12, a_1k)` and zeroing
/// `a_1k`. A gcd of 1 ends the loop early; otherwise the row is scaled by
/// `1/a_12`, which keeps the matrix integer because the tail is zero.
pub fn find_unit_entry(a: &Matrix) -> Result<UnitEntry> {
    require_integer(a)?;
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    let n = a.order();
    let mut rec = Recorder::new(a);

    if a.is_diagonal() {
        let s = bump_column(a).ok_or(Error::ScalarMatrix)?;
        let bump = diagonal_bump(a, s)?;
        assert_integer(&bump.result, "bump")?;
        rec.record(TraceStep::new(StepKind::Bump, &bump).with_indices(Some(0), Some(s), None), &bump)?;
        return Ok(UnitEntry { solution: rec.finish(), position: PivotChoice::new(0, s) });
    }

    let first = choose_pivot(a)?;
    if a.get(first.row, first.col).is_one() {
        return Ok(UnitEntry { solution: rec.finish(), position: first });
    }

    if (first.row, first.col) != (0, 1) {
        let sigma = lead_permutation(n, first.row, first.col);
        let perm = a.permutation_similarity(&sigma)?;
        let step = TraceStep::new(StepKind::Permute, &perm).with_indices(Some(first.row), Some(first.col), None);
        rec.record(step, &perm)?;
    }

    let tail_nonzero = |m: &Matrix| (2..n).filter(|&k| !m.get(0, k).is_zero()).count();
    let initial_lead = entry(rec.current(), 0, 1).abs();
    let bound = (n - 2) as u64 + initial_lead.bits().saturating_sub(1);
    let mut iterations = 0u64;

    while let Some(k) = (2..n).find(|&k| !rec.current().get(0, k).is_zero()) {
        let before = rec.current().clone();
        let triple = extended_gcd(&entry(&before, 0, 1), &entry(&before, 0, k))?;
        let block = bezout_block(n, k, &triple);
        let step_witness = before.conjugate(&block)?;
        assert_integer(&step_witness.result, "Bezout step")?;
        let after = &step_witness.result;
        if entry(after, 0, 1) != triple.m || !after.get(0, k).is_zero() {
            return Err(Error::InvariantViolated("Bezout step left the first row unreduced".into()));
        }
        let progressed = tail_nonzero(after) < tail_nonzero(&before)
            || entry(after, 0, 1).abs() < entry(&before, 0, 1).abs();
        iterations += 1;
        if !progressed || iterations > bound {
            return Err(Error::InvariantViolated("Bezout loop failed to make progress".into()));
        }
        let done = triple.m.is_one();
        let mut step = TraceStep::new(StepKind::BezoutStep2, &step_witness).with_indices(Some(0), Some(1), Some(k));
        step.bezout = Some(triple);
        rec.record(step, &step_witness)?;
        if done {
            return Ok(UnitEntry { solution: rec.finish(), position: PivotChoice::new(0, 1) });
        }
    }

    let lead = rec.current().get(0, 1).to_ring(RingSpec::Rational)?;
    if !lead.is_one() {
        let scale = Matrix::identity(n, RingSpec::Rational).with_entry(0, 0, lead.inverse()?);
        let scaled = rec.current().conjugate(&scale)?;
        assert_integer(&scaled.result, "Step-3 scaling")?;
        let step = TraceStep::new(StepKind::ScaleStep3, &scaled).with_indices(Some(0), Some(1), None);
        rec.record(step, &scaled)?;
    }
    Ok(UnitEntry { solution: rec.finish(), position: PivotChoice::new(0, 1) })
}

/// Integer matrix similar to `a` with diagonal `gamma`.
pub fn solve_integer(a: &Matrix, gamma: &DiagonalSpec) -> Result<Solution> {
    require_integer(a)?;
    if let Some(index) = gamma.targets().iter().position(|t| !t.is_integral()) {
        return Err(Error::NonIntegerTarget { index });
    }
    let gamma = check_instance(a, gamma)?;
    let unit = find_unit_entry(a)?;
    let mut rec = Recorder::resume(unit.solution);
    finish_two_step(&mut rec, unit.position, &gamma)?;
    let solution = rec.finish();
    for step in &solution.trace.steps {
        assert_integer(&step.result, step.kind.tag())?;
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::ConjugatorRing;

    const Z: RingSpec = RingSpec::Integer;

    #[test]
    fn existing_unit_is_reused() {
        let a = Matrix::from_i64(Z, &[&[2, 3], &[1, 5]]).unwrap();
        let u = find_unit_entry(&a).unwrap();
        assert_eq!(u.position, PivotChoice::new(1, 0));
        assert!(u.solution.trace.is_empty());
        assert_eq!(u.solution.result(), &a);
    }

    #[test]
    fn diagonal_branch() {
        let a = Matrix::from_i64(Z, &[&[3, 0], &[0, 7]]).unwrap();
        let u = find_unit_entry(&a).unwrap();
        assert_eq!(u.solution.result(), &Matrix::from_i64(Z, &[&[3, 1], &[0, 7]]).unwrap());
        assert_eq!(u.solution.trace.steps[0].conjugator_ring, ConjugatorRing::Rational);
        assert_eq!(u.solution.witness.conjugator.get(0, 1), &Scalar::fraction(1, 4).unwrap());
    }

    #[test]
    fn gcd_two_then_scaling() {
        let a = Matrix::from_i64(Z, &[&[0, 6, 10, 0], &[2, 0, 0, 3], &[0, 4, 1, 0], &[5, 0, 2, 2]]).unwrap();
        let u = find_unit_entry(&a).unwrap();
        let kinds: Vec<_> = u.solution.trace.steps.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [StepKind::BezoutStep2, StepKind::ScaleStep3]);
        let after_bezout = &u.solution.trace.steps[0].result;
        assert_eq!(after_bezout.row(0).iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["0", "2", "0", "0"]);
        let result = u.solution.result();
        assert_eq!(result.ring(), Z);
        assert_eq!(result.row(0).iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["0", "1", "0", "0"]);
        assert_eq!(result.char_poly(), a.char_poly());
        assert_eq!(u.solution.trace.steps[0].conjugator_ring, ConjugatorRing::IntegerUnimodular);
    }

    #[test]
    fn permutation_brings_entry_to_lead() {
        assert_eq!(lead_permutation(5, 3, 1), vec![2, 1, 3, 0, 4]);
        assert_eq!(lead_permutation(3, 2, 0), vec![1, 2, 0]);
        let a = Matrix::from_i64(Z, &[&[1, 0, 0], &[0, 2, 0], &[4, 0, 3]]).unwrap();
        let u = find_unit_entry(&a).unwrap();
        assert_eq!(u.solution.trace.steps[0].kind, StepKind::Permute);
        assert!(u.solution.result().get(0, 1).is_one());
    }

    #[test]
    fn small_solves() {
        let a = Matrix::from_i64(Z, &[&[1, 0], &[0, 3]]).unwrap();
        let sol = solve_integer(&a, &DiagonalSpec::from_i64(Z, &[0, 4])).unwrap();
        assert_eq!(sol.result().ring(), Z);
        assert_eq!(sol.result().diagonal(), DiagonalSpec::from_i64(Z, &[0, 4]).targets());
        assert_eq!(sol.result().char_poly(), a.char_poly());

        let n = Matrix::from_i64(Z, &[&[0, 1], &[0, 0]]).unwrap();
        let sol = solve_integer(&n, &DiagonalSpec::from_i64(Z, &[5, -5])).unwrap();
        assert_eq!(sol.result().diagonal(), DiagonalSpec::from_i64(Z, &[5, -5]).targets());
        assert_eq!(sol.result().char_poly(), n.char_poly());
    }

    #[test]
    fn rejects_bad_targets() {
        let a = Matrix::from_i64(Z, &[&[1, 2], &[0, 3]]).unwrap();
        let half = DiagonalSpec::new(vec![Scalar::fraction(1, 2).unwrap(), Scalar::fraction(7, 2).unwrap()]).unwrap();
        assert_eq!(solve_integer(&a, &half), Err(Error::NonIntegerTarget { index: 0 }));
        let scalar = Matrix::from_i64(Z, &[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(solve_integer(&scalar, &DiagonalSpec::from_i64(Z, &[1, 3])), Err(Error::ScalarMatrix));
        assert!(matches!(solve_integer(&a, &DiagonalSpec::from_i64(Z, &[1, 4])), Err(Error::TraceMismatch { .. })));
        let q = a.to_ring(RingSpec::Rational).unwrap();
        assert_eq!(find_unit_entry(&q), Err(Error::UnsupportedRing(RingSpec::Rational)));
    }
}
