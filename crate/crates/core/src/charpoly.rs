//! Division-free characteristic polynomial (Berkowitz).

use crate::matrix::Matrix;
use crate::scalar::{RingSpec, Scalar};

/// Coefficients `c_0, …, c_n` of `det(xI - A)`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    ring: RingSpec,
    coefficients: Vec<Scalar>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Same polynomial with coefficients re-expressed in `ring` (ℤ → ℚ).
    pub fn to_ring(&self, ring: RingSpec) -> Option<CharPoly> {
        let coefficients = self.coefficients.iter().map(|c| c.to_ring(ring).ok()).collect::<Option<_>>()?;
        Some(CharPoly { ring, coefficients })
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coefficients.iter().rev().fold(Scalar::zero(self.ring), |acc, c| acc * x + c)
    }
}

impl Matrix {
    /// Berkowitz: with `A_k` the leading `k×k` block, `R`/`C` the row and
    /// column bordering it and `a` the new corner, the coefficient vector of
    /// `A_{k+1}` is a lower-triangular Toeplitz matrix with first column
    /// `(1, -a, -R·C, -R·A_k·C, …, -R·A_k^{k-1}·C)` applied to that of `A_k`.
    /// Uses ring operations only, so it is valid over ℤ and every GF(p).
    pub fn char_poly(&self) -> CharPoly {
        let ring = self.ring();
        let n = self.order();
        // Highest degree first while iterating.
        let mut poly = vec![Scalar::one(ring)];
        for k in 0..n {
            let corner = self.get(k, k);
            let row: Vec<Scalar> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let mut column: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();

            let mut toeplitz = Vec::with_capacity(k + 2);
            toeplitz.push(Scalar::one(ring));
            toeplitz.push(-corner);
            for _ in 0..k {
                let dot = row.iter().zip(&column).fold(Scalar::zero(ring), |acc, (r, c)| acc + r * c);
                toeplitz.push(-dot);
                column = (0..k)
                    .map(|i| (0..k).fold(Scalar::zero(ring), |acc, j| acc + self.get(i, j) * &column[j]))
                    .collect();
            }

            poly = (0..k + 2)
                .map(|i| {
                    (0..=i.min(k)).fold(Scalar::zero(ring), |acc, j| acc + &toeplitz[i - j] * &poly[j])
                })
                .collect();
        }
        poly.reverse();
        CharPoly { ring, coefficients: poly }
    }
}
