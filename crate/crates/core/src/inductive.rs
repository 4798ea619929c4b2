//! The inductive construction: repeatedly change basis so that one more
//! diagonal entry is fixed and the trailing block stays nonscalar, finishing
//! with a 2×2 base case.
//!
//! The corner fix after the basis change conjugates by `I + c·E_13`. Direct
//! expansion gives entry `(2, 3)` of the result as `α_23 - c·α_21` with
//! `α_21 = 1`, so `c = α_23 - 1` is the value that puts a 1 there. The
//! opposite sign, `1 - α_23`, is kept available as
//! [`CornerFormula::OneMinusAlpha`] so the difference can be demonstrated; it
//! only agrees with the working formula in characteristic 2.

use crate::error::{Error, Result};
use crate::matrix::{DiagonalSpec, Matrix, SimilarityWitness};
use crate::scalar::{RingSpec, Scalar};
use crate::trace::{Recorder, Solution, StepKind, TraceStep};
use crate::two_step::check_instance;

/// Which value the corner fix writes into entry `(1, 3)` of its conjugator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerFormula {
    /// `α_23 - 1`; makes entry `(2, 3)` equal to 1.
    AlphaMinusOne,
    /// `1 - α_23`; does not in general.
    OneMinusAlpha,
}

impl CornerFormula {
    fn describe(self) -> &'static str {
        match self {
            CornerFormula::AlphaMinusOne => "corner entry (1,3) = alpha23 - 1",
            CornerFormula::OneMinusAlpha => "corner entry (1,3) = 1 - alpha23",
        }
    }
}

/// The basis `{x, Ax - γx, e_j, …}` and the matrix `S` with those columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub x: Vec<Scalar>,
    pub basis: Vec<Vec<Scalar>>,
    pub basis_matrix: Matrix,
}

/// One deflation: the witness for the full-size conjugation and the basis
/// used for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deflation {
    pub witness: SimilarityWitness,
    pub basis: BasisChange,
}

fn unit_vector(n: usize, i: usize, ring: RingSpec) -> Vec<Scalar> {
    (0..n).map(|k| Scalar::from_i64((k == i) as i64, ring)).collect()
}

/// Rank of a list of vectors by Gaussian elimination over the field.
fn rank(vectors: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vectors.to_vec();
    let Some(width) = rows.first().map(Vec::len) else { return 0 };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().expect("nonzero pivot over a field");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = &*x - &(&factor * y);
            }
        }
        rank += 1;
    }
    rank
}

fn require_field(a: &Matrix) -> Result<()> {
    if a.ring().is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(a.ring()))
    }
}

/// A vector `x` with `x`, `Ax` independent: `e_j` for the smallest column
/// with a nonzero off-diagonal entry, or `e_i + e_j` for the smallest pair
/// with `a_ii ≠ a_jj` when `a` is diagonal.
pub fn find_independent_vector(a: &Matrix) -> Result<Vec<Scalar>> {
    if a.is_scalar() {
        return Err(Error::ScalarMatrix);
    }
    let n = a.order();
    let ring = a.ring();
    if let Some(j) = (0..n).find(|&j| (0..n).any(|i| i != j && !a.get(i, j).is_zero())) {
        return Ok(unit_vector(n, j, ring));
    }
    let (i, j) = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, i) != a.get(j, j))
        .ok_or(Error::ScalarMatrix)?;
    let mut x = unit_vector(n, i, ring);
    x[j] = Scalar::one(ring);
    Ok(x)
}

/// Completes `{x, Ax - γx}` greedily with standard basis vectors.
pub fn build_basis_change(a: &Matrix, x: &[Scalar], gamma: &Scalar) -> Result<BasisChange> {
    require_field(a)?;
    let n = a.order();
    let ring = a.ring();
    let ax = a.apply(x);
    let second: Vec<Scalar> = ax.iter().zip(x).map(|(v, xi)| v - &(gamma * xi)).collect();
    let mut basis = vec![x.to_vec(), second];
    if rank(&basis) < 2 {
        return Err(Error::DependentVectors);
    }
    for j in 0..n {
        if basis.len() == n {
            break;
        }
        basis.push(unit_vector(n, j, ring));
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    let basis_matrix = Matrix::from_columns(ring, &basis)?;
    Ok(BasisChange { x: x.to_vec(), basis, basis_matrix })
}

/// `a` expressed in the basis: `S^-1 A S`, as a witness with conjugator `S^-1`.
fn represent(a: &Matrix, change: &BasisChange) -> Result<SimilarityWitness> {
    let s_inv = change.basis_matrix.invert()?;
    a.conjugate(&s_inv)
}

pub fn deflate(a: &Matrix, gamma: &Scalar) -> Result<Deflation> {
    deflate_with(a, gamma, CornerFormula::AlphaMinusOne)
}

/// One deflation stage for `n ≥ 3`. With [`CornerFormula::AlphaMinusOne`]
/// the postconditions (`(1,1) = γ`, `(2,3) = 1`, nonscalar trailing block)
/// are checked; with the other formula the raw outcome is returned.
pub fn deflate_with(a: &Matrix, gamma: &Scalar, formula: CornerFormula) -> Result<Deflation> {
    require_field(a)?;
    if a.order() < 3 {
        return Err(Error::OrderTooSmall { needed: 3, found: a.order() });
    }
    let x = find_independent_vector(a)?;
    let change = build_basis_change(a, &x, gamma)?;
    let represented = represent(a, &change)?;
    let alpha = &represented.result;
    let ring = a.ring();
    let one = Scalar::one(ring);
    let corner = match formula {
        CornerFormula::AlphaMinusOne => alpha.get(1, 2) - &one,
        CornerFormula::OneMinusAlpha => &one - alpha.get(1, 2),
    };
    let fix = Matrix::identity(a.order(), ring).with_entry(0, 2, corner);
    let fixed = alpha.conjugate(&fix)?;
    let witness = represented.then(&fixed)?;

    if formula == CornerFormula::AlphaMinusOne {
        let m = &witness.result;
        if m.get(0, 0) != gamma || !m.get(1, 2).is_one() || m.trailing_block(1).is_scalar() {
            return Err(Error::InvariantViolated("deflation postcondition".into()));
        }
    }
    Ok(Deflation { witness, basis: change })
}

/// The 2×2 base case: in the basis `{x, Ax - γx}` the diagonal is
/// `(γ, tr A - γ)`.
pub fn base_case(a: &Matrix, gamma: &Scalar) -> Result<Deflation> {
    require_field(a)?;
    if a.order() != 2 {
        return Err(Error::OrderMismatch(2, a.order()));
    }
    let x = find_independent_vector(a)?;
    let change = build_basis_change(a, &x, gamma)?;
    let witness = represent(a, &change)?;
    Ok(Deflation { witness, basis: change })
}

/// Runs the `n - 1` stages iteratively. Stage `k` works on the trailing
/// block of order `n - k`; its conjugator `Q` is applied as `diag(I_k, Q)`,
/// which leaves the leading `k×k` block untouched.
pub fn solve_inductive(a: &Matrix, gamma: &DiagonalSpec) -> Result<Solution> {
    require_field(a)?;
    let gamma = check_instance(a, gamma)?;
    let n = a.order();
    let targets = gamma.targets();
    let mut rec = Recorder::new(a);

    for stage in 0..n - 1 {
        let block = rec.current().trailing_block(stage);
        let (kind, deflation) = if block.order() >= 3 {
            (StepKind::Deflate, deflate(&block, &targets[stage])?)
        } else {
            (StepKind::BaseCase, base_case(&block, &targets[stage])?)
        };
        let lifted = rec.current().conjugate(&deflation.witness.conjugator.embed_after_identity(stage))?;

        let current = &lifted.result;
        if (0..=stage).any(|i| current.get(i, i) != &targets[i]) {
            return Err(Error::InvariantViolated(format!("stage {} leading diagonal", stage + 1)));
        }
        if stage + 1 < n - 1 && current.trailing_block(stage + 1).is_scalar() {
            return Err(Error::InvariantViolated(format!("stage {} trailing block is scalar", stage + 1)));
        }

        let mut step = TraceStep::new(kind, &lifted).with_indices(Some(stage), None, None);
        step.basis = Some(deflation.basis.basis_matrix.clone());
        if kind == StepKind::Deflate {
            step.note = Some(CornerFormula::AlphaMinusOne.describe().to_string());
        }
        rec.record(step, &lifted)?;
    }
    Ok(rec.finish())
}
