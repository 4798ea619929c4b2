//! Dense exact square matrices and similarity witnesses.
//!
//! Matrices are immutable values: every transform returns a new matrix.
//! Integer matrices are lifted to ℚ whenever an inverse is needed and the
//! outcome is demoted back to ℤ only when every entry has denominator 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{RingSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    order: usize,
    ring: RingSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(Error::NotSquare);
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(bad.ring(), ring));
        }
        Ok(Matrix { order, ring, entries })
    }

    /// Convenience constructor from small integers, reduced into `ring`.
    pub fn from_i64(ring: RingSpec, rows: &[&[i64]]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(v, ring)).collect())
            .collect();
        Matrix::from_rows(ring, rows)
    }

    pub fn from_fn(order: usize, ring: RingSpec, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        assert!(order >= 1, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let v = f(i, j);
                assert_eq!(v.ring(), ring, "entry ({i}, {j}) outside the matrix ring");
                entries.push(v);
            }
        }
        Matrix { order, ring, entries }
    }

    /// Matrix whose columns are `columns`.
    pub fn from_columns(ring: RingSpec, columns: &[Vec<Scalar>]) -> Result<Matrix> {
        let n = columns.len();
        if n == 0 || columns.iter().any(|c| c.len() != n) {
            return Err(Error::NotSquare);
        }
        let rows = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        Matrix::from_rows(ring, rows)
    }

    pub fn identity(order: usize, ring: RingSpec) -> Matrix {
        Matrix::from_fn(order, ring, |i, j| Scalar::from_i64((i == j) as i64, ring))
    }

    pub fn zero(order: usize, ring: RingSpec) -> Matrix {
        Matrix::from_fn(order, ring, |_, _| Scalar::zero(ring))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.order).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.order)
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.order).map(|i| self.get(i, i).clone()).collect()
    }

    /// Copy of `self` with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Scalar) -> Matrix {
        assert_eq!(value.ring(), self.ring);
        let mut m = self.clone();
        m.entries[i * self.order + j] = value;
        m
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.order, self.ring, |i, j| self.get(j, i).clone())
    }

    /// Converts every entry to `ring` (ℤ → ℚ, or integral ℚ → ℤ).
    pub fn to_ring(&self, ring: RingSpec) -> Result<Matrix> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let entries = self.entries.iter().map(|e| e.to_ring(ring)).collect::<Result<_>>()?;
        Ok(Matrix { order: self.order, ring, entries })
    }

    /// ℤ matrices become ℚ matrices; field matrices are returned unchanged.
    pub fn lift(&self) -> Matrix {
        match self.ring {
            RingSpec::Integer => self.to_ring(RingSpec::Rational).expect("Z embeds in Q"),
            _ => self.clone(),
        }
    }

    /// Every entry is an integer (denominator 1). Always false over GF(p).
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Scalar::is_integral)
    }

    /// Rational matrices with only integral entries become ℤ matrices.
    pub fn demote_if_integral(self) -> Matrix {
        if self.ring == RingSpec::Rational && self.is_integral() {
            self.to_ring(RingSpec::Integer).expect("checked integral")
        } else {
            self
        }
    }

    /// Entry-wise equality of values, treating ℤ as a subring of ℚ.
    pub fn same_values(&self, other: &Matrix) -> bool {
        self.first_difference(other).is_none()
    }

    /// First `(i, j)` where the values differ; `Some((0, 0))` for
    /// incompatible orders or rings.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.order != other.order || self.ring.common(other.ring).is_err() {
            return Some((0, 0));
        }
        let ring = self.ring.common(other.ring).ok()?;
        for i in 0..self.order {
            for j in 0..self.order {
                let a = self.get(i, j).to_ring(ring).ok()?;
                let b = other.get(i, j).to_ring(ring).ok()?;
                if a != b {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn multiply(&self, other: &Matrix) -> Result<Matrix> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let n = self.order;
        Ok(Matrix::from_fn(n, self.ring, |i, j| {
            let mut acc = Scalar::zero(self.ring);
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a * other.get(k, j);
                }
            }
            acc
        }))
    }

    /// Product after embedding both factors in their common ring.
    pub fn multiply_lifted(&self, other: &Matrix) -> Result<Matrix> {
        let ring = self.ring.common(other.ring)?;
        self.to_ring(ring)?.multiply(&other.to_ring(ring)?)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.ring), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Gauss–Jordan inverse with exact arithmetic. The pivot is the first
    /// nonzero entry scanning down the column. Integer inputs are inverted
    /// over ℚ and demoted back to ℤ when the inverse is integral.
    pub fn invert(&self) -> Result<Matrix> {
        let integer_input = self.ring == RingSpec::Integer;
        let work = self.lift();
        let ring = work.ring;
        let n = self.order;
        let mut a: Vec<Vec<Scalar>> = work.rows().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = Matrix::identity(n, ring).rows().map(|r| r.to_vec()).collect();

        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Singular { column: col })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = a[col][col].inverse()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &scale;
                inv[col][j] = &inv[col][j] * &scale;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                for j in 0..n {
                    let da = &factor * &a[col][j];
                    a[i][j] = &a[i][j] - &da;
                    let di = &factor * &inv[col][j];
                    inv[i][j] = &inv[i][j] - &di;
                }
            }
        }
        let result = Matrix::from_rows(ring, inv)?;
        Ok(if integer_input { result.demote_if_integral() } else { result })
    }

    /// `P A P^-1` together with `P` and `P^-1`.
    ///
    /// `P` may be rational while `A` is integer; the result is integer
    /// whenever `A` is integer and the product happens to be integral.
    pub fn conjugate(&self, p: &Matrix) -> Result<SimilarityWitness> {
        if self.order != p.order {
            return Err(Error::OrderMismatch(self.order, p.order));
        }
        let ring = self.ring.common(p.ring)?;
        let work_ring = if ring == RingSpec::Integer { RingSpec::Rational } else { ring };
        let p_work = p.to_ring(work_ring)?;
        let p_inv = p_work.invert()?;
        let result = p_work.multiply(&self.to_ring(work_ring)?)?.multiply(&p_inv)?;
        let result = if self.ring == RingSpec::Integer { result.demote_if_integral() } else { result };
        let p_inv = if p.ring == RingSpec::Integer { p_inv.demote_if_integral() } else { p_inv };
        Ok(SimilarityWitness { conjugator: p.clone(), conjugator_inverse: p_inv, result })
    }

    /// Conjugation by the permutation matrix of `sigma` (0-based images):
    /// entry `(i, j)` of `self` lands at `(sigma[i], sigma[j])`.
    pub fn permutation_similarity(&self, sigma: &[usize]) -> Result<SimilarityWitness> {
        let n = self.order;
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(Error::NotPermutation(n));
        }
        for &t in sigma {
            if t >= n || seen[t] {
                return Err(Error::NotPermutation(n));
            }
            seen[t] = true;
        }
        let mut preimage = vec![0; n];
        for (i, &t) in sigma.iter().enumerate() {
            preimage[t] = i;
        }
        let ring = self.ring;
        let p = Matrix::from_fn(n, ring, |i, j| Scalar::from_i64((preimage[i] == j) as i64, ring));
        let result = Matrix::from_fn(n, ring, |i, j| self.get(preimage[i], preimage[j]).clone());
        Ok(SimilarityWitness { conjugator_inverse: p.transpose(), conjugator: p, result })
    }

    pub fn trace(&self) -> Scalar {
        (0..self.order).fold(Scalar::zero(self.ring), |acc, i| acc + self.get(i, i))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.diagonal().iter().all(|d| d == self.get(0, 0))
    }

    /// Trailing principal block starting at row/column `start`.
    pub fn trailing_block(&self, start: usize) -> Matrix {
        let m = self.order - start;
        Matrix::from_fn(m, self.ring, |i, j| self.get(start + i, start + j).clone())
    }

    /// `diag(I_k, self)` of order `k + self.order()`.
    pub fn embed_after_identity(&self, k: usize) -> Matrix {
        let ring = self.ring;
        Matrix::from_fn(k + self.order, ring, |i, j| match (i < k, j < k) {
            (true, true) => Scalar::from_i64((i == j) as i64, ring),
            (false, false) => self.get(i - k, j - k).clone(),
            _ => Scalar::zero(ring),
        })
    }

    pub fn determinant(&self) -> Scalar {
        let poly = self.char_poly();
        let c0 = poly.coefficients()[0].clone();
        if self.order.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }

    pub fn from_strings(ring: RingSpec, rows: &[Vec<String>]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Scalar::parse(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(ring, rows)
    }
}

/// Right-aligned columns, one bracketed row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let widths: Vec<usize> = (0..self.order)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        for row in &cells {
            f.write_str("[")?;
            for (j, cell) in row.iter().enumerate() {
                write!(f, " {:>w$}", cell, w = widths[j])?;
            }
            f.write_str(" ]\n")?;
        }
        Ok(())
    }
}

/// The target diagonal `(γ_1, …, γ_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpec {
    targets: Vec<Scalar>,
}

impl DiagonalSpec {
    pub fn new(targets: Vec<Scalar>) -> Result<DiagonalSpec> {
        if let Some(first) = targets.first() {
            let ring = first.ring();
            if let Some(bad) = targets.iter().find(|t| t.ring() != ring) {
                return Err(Error::RingMismatch(bad.ring(), ring));
            }
        }
        Ok(DiagonalSpec { targets })
    }

    pub fn from_i64(ring: RingSpec, targets: &[i64]) -> DiagonalSpec {
        DiagonalSpec { targets: targets.iter().map(|&v| Scalar::from_i64(v, ring)).collect() }
    }

    pub fn targets(&self) -> &[Scalar] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn to_ring(&self, ring: RingSpec) -> Result<DiagonalSpec> {
        let targets = self.targets.iter().map(|t| t.to_ring(ring)).collect::<Result<_>>()?;
        Ok(DiagonalSpec { targets })
    }

    pub fn sum(&self, ring: RingSpec) -> Result<Scalar> {
        self.targets
            .iter()
            .try_fold(Scalar::zero(ring), |acc, t| Ok(acc + t.to_ring(ring)?))
    }

    /// Checks the length and the trace condition `Σγ = tr A`, returning the
    /// targets expressed in the ring of `a`.
    pub fn check_against(&self, a: &Matrix) -> Result<DiagonalSpec> {
        if self.len() != a.order() {
            return Err(Error::OrderMismatch(a.order(), self.len()));
        }
        let gamma = self.to_ring(a.ring())?;
        let sum = gamma.sum(a.ring())?;
        let trace = a.trace();
        if sum != trace {
            return Err(Error::TraceMismatch { targets: sum.to_string(), trace: trace.to_string() });
        }
        Ok(gamma)
    }
}

/// `conjugator · A · conjugator_inverse = result` for the `A` it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub conjugator: Matrix,
    pub conjugator_inverse: Matrix,
    pub result: Matrix,
}

impl SimilarityWitness {
    pub fn identity(a: &Matrix) -> SimilarityWitness {
        let id = Matrix::identity(a.order(), a.ring());
        SimilarityWitness { conjugator: id.clone(), conjugator_inverse: id, result: a.clone() }
    }

    /// The witness for `next ∘ self`: conjugate by `self`, then by `next`.
    pub fn then(&self, next: &SimilarityWitness) -> Result<SimilarityWitness> {
        Ok(SimilarityWitness {
            conjugator: next.conjugator.multiply_lifted(&self.conjugator)?,
            conjugator_inverse: self.conjugator_inverse.multiply_lifted(&next.conjugator_inverse)?,
            result: next.result.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rational;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::fraction(n, d).unwrap()
    }

    #[test]
    fn unit_products() {
        let e12 = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]).unwrap();
        let e21 = Matrix::from_i64(Q, &[&[0, 0], &[1, 0]]).unwrap();
        let e11 = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(e12.multiply(&e21).unwrap(), e11);
        let a = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(Matrix::identity(2, Q).multiply(&a).unwrap(), a);
    }

    #[test]
    fn multiply_rejects_mismatches() {
        let a = Matrix::identity(2, Q);
        assert_eq!(a.multiply(&Matrix::identity(3, Q)), Err(Error::OrderMismatch(2, 3)));
        assert!(matches!(
            a.multiply(&Matrix::identity(2, RingSpec::Integer)),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn invert_examples() {
        let id = Matrix::identity(4, Q);
        assert_eq!(id.invert().unwrap(), id);
        assert_eq!(Matrix::zero(3, Q).invert(), Err(Error::Singular { column: 0 }));
        let singular = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.invert(), Err(Error::Singular { column: 1 }));

        let col = [q(-2, 5), q(4, 5), q(1, 1), q(13, 5), q(1, 1)];
        let b2 = Matrix::from_fn(5, Q, |i, j| if j == 2 { col[i].clone() } else { Scalar::from_i64((i == j) as i64, Q) });
        let inv_col = [q(2, 5), q(-4, 5), q(1, 1), q(-13, 5), q(-1, 1)];
        let expected = Matrix::from_fn(5, Q, |i, j| if j == 2 { inv_col[i].clone() } else { Scalar::from_i64((i == j) as i64, Q) });
        let inv = b2.invert().unwrap();
        assert_eq!(inv, expected);
        assert_eq!(b2.multiply(&inv).unwrap(), Matrix::identity(5, Q));
    }

    #[test]
    fn integer_inverse_demotes_when_unimodular() {
        let z = RingSpec::Integer;
        let u = Matrix::from_i64(z, &[&[2, 1], &[1, 1]]).unwrap();
        let inv = u.invert().unwrap();
        assert_eq!(inv.ring(), z);
        assert_eq!(inv, Matrix::from_i64(z, &[&[1, -1], &[-1, 2]]).unwrap());
        let half = Matrix::from_i64(z, &[&[2, 0], &[0, 1]]).unwrap().invert().unwrap();
        assert_eq!(half.ring(), Q);
    }

    #[test]
    fn permutation_swap() {
        let a = Matrix::from_i64(RingSpec::Integer, &[&[1, 2], &[3, 4]]).unwrap();
        let w = a.permutation_similarity(&[1, 0]).unwrap();
        assert_eq!(w.result, Matrix::from_i64(RingSpec::Integer, &[&[4, 3], &[2, 1]]).unwrap());
        assert_eq!(a.conjugate(&w.conjugator).unwrap().result, w.result);
        assert_eq!(a.permutation_similarity(&[0, 1]).unwrap().result, a);
        assert_eq!(a.permutation_similarity(&[0, 0]), Err(Error::NotPermutation(2)));
        assert_eq!(a.permutation_similarity(&[0, 2]), Err(Error::NotPermutation(2)));
    }

    #[test]
    fn predicates_and_trace() {
        let three = Matrix::from_i64(Q, &[&[3, 0], &[0, 3]]).unwrap();
        assert!(three.is_scalar() && three.is_diagonal());
        let d = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]).unwrap();
        assert!(!d.is_scalar() && d.is_diagonal());
        assert_eq!(Matrix::identity(4, Q).trace(), Scalar::from_i64(4, Q));
        assert_eq!(Matrix::zero(3, Q).trace(), Scalar::zero(Q));
        assert!(Matrix::identity(1, Q).is_scalar());
    }

    #[test]
    fn from_rows_validates_shape() {
        assert_eq!(Matrix::from_rows(Q, vec![]), Err(Error::NotSquare));
        assert_eq!(
            Matrix::from_rows(Q, vec![vec![q(1, 1)], vec![q(1, 1)]]),
            Err(Error::NotSquare)
        );
    }

    #[test]
    fn display_aligns_columns() {
        let a = Matrix::from_rows(Q, vec![vec![q(17, 5), q(-1, 1)], vec![q(2, 1), q(10, 1)]]).unwrap();
        assert_eq!(a.to_string(), "[ 17/5 -1 ]\n[    2 10 ]\n");
    }
}
