//! The two-similarity construction: an optional bump for diagonal inputs,
//! then one conjugation that makes a row's off-diagonal entries all 1 and
//! one that writes the target diagonal.

use crate::error::{Error, Result};
use crate::matrix::{DiagonalSpec, Matrix, SimilarityWitness};
use crate::scalar::{RingSpec, Scalar};
use crate::trace::{Recorder, Solution, StepKind, TraceStep};

/// An off-diagonal position `(row, col)`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PivotChoice {
    pub row: usize,
    pub col: usize,
}

impl PivotChoice {
    pub fn new(row: usize, col: usize) -> PivotChoice {
        PivotChoice { row, col }
    }

    fn validate(self, a: &Matrix) -> Result<()> {
        let n = a.order();
        if self.row >= n || self.col >= n || self.row == self.col {
            return Err(Error::InvalidPivot { row: self.row, col: self.col });
        }
        if a.get(self.row, self.col).is_zero() {
            return Err(Error::ZeroPivot { row: self.row, col: self.col });
        }
        Ok(())
    }
}

fn unit_with_entry(order: usize, ring: RingSpec, i: usize, j: usize, value: Scalar) -> Matrix {
    Matrix::identity(order, ring).with_entry(i, j, value)
}

/// For a nonscalar diagonal `a`, conjugates by `I + E_{1s}/(a_ss - a_11)`,
/// which leaves `a` unchanged except for a 1 at `(1, s)`. Over ℤ the
/// conjugator is rational while the result stays integer.
pub fn diagonal_bump(a: &Matrix, s: usize) -> Result<SimilarityWitness> {
    if !a.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if s == 0 || s >= a.order() {
        return Err(Error::InvalidPivot { row: 0, col: s });
    }
    let lifted = a.lift();
    let gap = lifted.get(s, s) - lifted.get(0, 0);
    if gap.is_zero() {
        return Err(Error::EqualDiagonalEntries { column: s });
    }
    let conjugator = unit_with_entry(a.order(), lifted.ring(), 0, s, gap.inverse()?);
    a.conjugate(&conjugator)
}

/// Smallest column `s` whose diagonal entry differs from `a_11`.
pub fn bump_column(a: &Matrix) -> Option<usize> {
    (1..a.order()).find(|&s| a.get(s, s) != a.get(0, 0))
}

/// Lexicographically smallest off-diagonal entry equal to 1, else the
/// lexicographically smallest nonzero one.
pub fn choose_pivot(a: &Matrix) -> Result<PivotChoice> {
    let n = a.order();
    let off_diagonal = || (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    off_diagonal()
        .find(|&(i, j)| a.get(i, j).is_one())
        .or_else(|| off_diagonal().find(|&(i, j)| !a.get(i, j).is_zero()))
        .map(|(row, col)| PivotChoice { row, col })
        .ok_or(Error::Diagonal)
}

/// Conjugates by the matrix equal to the identity except on row `s`, where
/// `b_sr = 0`, `b_ss = a_rs` and `b_sk = a_rk - 1`. Afterwards every
/// off-diagonal entry of row `r` is 1. The conjugator has determinant `a_rs`.
pub fn unify_row(a: &Matrix, pivot: PivotChoice) -> Result<SimilarityWitness> {
    pivot.validate(a)?;
    let (r, s) = (pivot.row, pivot.col);
    let ring = a.ring();
    let one = Scalar::one(ring);
    let conjugator = Matrix::from_fn(a.order(), ring, |i, k| {
        if i != s {
            Scalar::from_i64((i == k) as i64, ring)
        } else if k == r {
            Scalar::zero(ring)
        } else if k == s {
            a.get(r, s).clone()
        } else {
            a.get(r, k) - &one
        }
    });
    let witness = a.conjugate(&conjugator)?;
    if let Some(k) = (0..a.order()).find(|&k| k != r && !witness.result.get(r, k).is_one()) {
        return Err(Error::InvariantViolated(format!("row {} entry {} not unified", r + 1, k + 1)));
    }
    Ok(witness)
}

/// For `a` whose row `r` has every off-diagonal entry equal to 1, conjugates
/// by the identity with column `r` replaced by `(γ_k - a_kk)_k` (1 at `r`).
/// The result has diagonal exactly `gamma`; the conjugator has determinant 1.
pub fn set_diagonal(a: &Matrix, r: usize, gamma: &DiagonalSpec) -> Result<SimilarityWitness> {
    let n = a.order();
    if r >= n {
        return Err(Error::InvalidPivot { row: r, col: r });
    }
    if let Some(k) = (0..n).find(|&k| k != r && !a.get(r, k).is_one()) {
        return Err(Error::RowNotUnit { row: r, col: k });
    }
    let gamma = gamma.check_against(a)?;
    let ring = a.ring();
    let targets = gamma.targets();
    let conjugator = Matrix::from_fn(n, ring, |i, j| {
        if j != r || i == r {
            Scalar::from_i64((i == j) as i64, ring)
        } else {
            &targets[i] - a.get(i, i)
        }
    });
    let witness = a.conjugate(&conjugator)?;
    if witness.result.diagonal() != targets {
        return Err(Error::InvariantViolated("diagonal differs from targets".into()));
    }
    Ok(witness)
}

pub(crate) fn check_instance(a: &Matrix, gamma: &DiagonalSpec) -> Result<DiagonalSpec> {
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    gamma.check_against(a)
}

/// The unify-row and set-diagonal steps from the recorder's current matrix.
pub(crate) fn finish_two_step(rec: &mut Recorder, pivot: PivotChoice, gamma: &DiagonalSpec) -> Result<()> {
    let unify = unify_row(rec.current(), pivot)?;
    let step = TraceStep::new(StepKind::UnifyRow, &unify).with_indices(Some(pivot.row), Some(pivot.col), None);
    rec.record(step, &unify)?;

    let set = set_diagonal(rec.current(), pivot.row, gamma)?;
    let step = TraceStep::new(StepKind::SetDiagonal, &set).with_indices(Some(pivot.row), None, None);
    rec.record(step, &set)
}

pub fn solve_two_step(a: &Matrix, gamma: &DiagonalSpec) -> Result<Solution> {
    solve_two_step_with_pivot(a, gamma, None)
}

/// Like [`solve_two_step`], but `pivot` (when given) overrides the
/// automatic choice for a non-diagonal `a`.
pub fn solve_two_step_with_pivot(a: &Matrix, gamma: &DiagonalSpec, pivot: Option<PivotChoice>) -> Result<Solution> {
    if !a.ring().is_field() {
        return Err(Error::UnsupportedRing(a.ring()));
    }
    let gamma = check_instance(a, gamma)?;
    let mut rec = Recorder::new(a);
    let pivot = match pivot {
        Some(p) => p,
        None if a.is_diagonal() => {
            let s = bump_column(a).ok_or(Error::ScalarMatrix)?;
            let bump = diagonal_bump(a, s)?;
            let step = TraceStep::new(StepKind::Bump, &bump).with_indices(Some(0), Some(s), None);
            rec.record(step, &bump)?;
            PivotChoice { row: 0, col: s }
        }
        None => choose_pivot(a)?,
    };
    finish_two_step(&mut rec, pivot, &gamma)?;
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rational;

    #[test]
    fn bump_examples() {
        let a = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]).unwrap();
        let w = diagonal_bump(&a, 1).unwrap();
        assert_eq!(w.conjugator, Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]).unwrap());
        assert_eq!(w.result, Matrix::from_i64(Q, &[&[1, 1], &[0, 2]]).unwrap());

        let a = Matrix::from_i64(Q, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]).unwrap();
        assert_eq!(bump_column(&a), Some(2));
        let w = diagonal_bump(&a, 2).unwrap();
        assert_eq!(w.result, a.with_entry(0, 2, Scalar::one(Q)));
        assert_eq!(diagonal_bump(&a, 1), Err(Error::EqualDiagonalEntries { column: 1 }));

        let gf7 = RingSpec::prime_field(7).unwrap();
        let a = Matrix::from_i64(gf7, &[&[0, 0], &[0, 5]]).unwrap();
        let w = diagonal_bump(&a, 1).unwrap();
        assert_eq!(w.conjugator.get(0, 1), &Scalar::from_i64(3, gf7));
        assert_eq!(w.result, Matrix::from_i64(gf7, &[&[0, 1], &[0, 5]]).unwrap());

        let nd = Matrix::from_i64(Q, &[&[1, 1], &[0, 2]]).unwrap();
        assert_eq!(diagonal_bump(&nd, 1), Err(Error::NotDiagonal));
    }

    #[test]
    fn integer_bump_has_rational_conjugator() {
        let z = RingSpec::Integer;
        let a = Matrix::from_i64(z, &[&[3, 0], &[0, 7]]).unwrap();
        let w = diagonal_bump(&a, 1).unwrap();
        assert_eq!(w.result, Matrix::from_i64(z, &[&[3, 1], &[0, 7]]).unwrap());
        assert_eq!(w.conjugator.get(0, 1), &Scalar::fraction(1, 4).unwrap());
    }

    #[test]
    fn pivot_rules() {
        let a = Matrix::from_i64(Q, &[&[0, 7], &[0, 0]]).unwrap();
        assert_eq!(choose_pivot(&a).unwrap(), PivotChoice::new(0, 1));
        let b = Matrix::from_i64(Q, &[&[0, 2, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap();
        assert_eq!(choose_pivot(&b).unwrap(), PivotChoice::new(1, 2));
        assert_eq!(choose_pivot(&Matrix::identity(3, Q)), Err(Error::Diagonal));
    }

    #[test]
    fn unify_two_by_two() {
        let a = Matrix::from_i64(Q, &[&[0, 3], &[5, 0]]).unwrap();
        let w = unify_row(&a, PivotChoice::new(0, 1)).unwrap();
        assert_eq!(w.conjugator, Matrix::from_i64(Q, &[&[1, 0], &[0, 3]]).unwrap());
        assert_eq!(w.result, Matrix::from_i64(Q, &[&[0, 1], &[15, 0]]).unwrap());
        assert_eq!(unify_row(&a, PivotChoice::new(0, 0)), Err(Error::InvalidPivot { row: 0, col: 0 }));
        let z = Matrix::from_i64(Q, &[&[0, 0], &[5, 0]]).unwrap();
        assert_eq!(unify_row(&z, PivotChoice::new(0, 1)), Err(Error::ZeroPivot { row: 0, col: 1 }));
    }

    #[test]
    fn set_diagonal_preconditions() {
        let a = Matrix::from_i64(Q, &[&[1, 1, 1], &[4, 2, 0], &[0, 3, 3]]).unwrap();
        let gamma = DiagonalSpec::from_i64(Q, &[1, 2, 3]);
        let w = set_diagonal(&a, 0, &gamma).unwrap();
        assert_eq!(w.conjugator, Matrix::identity(3, Q));
        assert_eq!(set_diagonal(&a, 1, &gamma), Err(Error::RowNotUnit { row: 1, col: 0 }));
        let bad = DiagonalSpec::from_i64(Q, &[1, 2, 4]);
        assert!(matches!(set_diagonal(&a, 0, &bad), Err(Error::TraceMismatch { .. })));
    }

    #[test]
    fn solve_diagonal_input_takes_three_steps() {
        let a = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]).unwrap();
        let gamma = DiagonalSpec::from_i64(Q, &[0, 3]);
        let sol = solve_two_step(&a, &gamma).unwrap();
        assert_eq!(sol.conjugations(), 3);
        assert_eq!(sol.result().diagonal(), gamma.targets());
        let w = &sol.witness;
        assert_eq!(w.conjugator.multiply(&a).unwrap(), w.result.multiply(&w.conjugator).unwrap());
    }

    #[test]
    fn solve_rejects_bad_instances() {
        let two = Matrix::from_i64(Q, &[&[2, 0], &[0, 2]]).unwrap();
        let gamma = DiagonalSpec::from_i64(Q, &[1, 3]);
        assert_eq!(solve_two_step(&two, &gamma), Err(Error::ScalarMatrix));
        let a = Matrix::from_i64(Q, &[&[1, 1], &[0, 2]]).unwrap();
        let err = solve_two_step(&a, &DiagonalSpec::from_i64(Q, &[1, 3])).unwrap_err();
        assert_eq!(err, Error::TraceMismatch { targets: "4".into(), trace: "3".into() });
        let z = a.to_ring(RingSpec::Integer).unwrap();
        assert_eq!(
            solve_two_step(&z, &DiagonalSpec::from_i64(RingSpec::Integer, &[0, 3])),
            Err(Error::UnsupportedRing(RingSpec::Integer))
        );
    }
}
