//! Independent exact checks of solver output.
//!
//! Nothing here calls into the solvers. The witness relation is checked as
//! `P·A = B·P` together with `P·P⁻¹ = P⁻¹·P = I` for the supplied inverse,
//! so no inverse computed by the solver is trusted, and characteristic
//! polynomials are recomputed from scratch.

use crate::error::{Error, Result};
use crate::matrix::{DiagonalSpec, Matrix, SimilarityWitness};
use crate::scalar::RingSpec;
use crate::trace::{ConjugatorRing, ReductionTrace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub witness_ok: bool,
    /// `None` when no target diagonal was checked (trace replay).
    pub diagonal_ok: Option<bool>,
    pub trace_ok: bool,
    pub charpoly_ok: bool,
    /// `Some` only when the input is an integer matrix.
    pub integrality_ok: Option<bool>,
    /// `Some` only for trace replay.
    pub labels_ok: Option<bool>,
    pub first_failure: Option<String>,
}

impl VerificationReport {
    fn new() -> VerificationReport {
        VerificationReport {
            witness_ok: true,
            diagonal_ok: None,
            trace_ok: true,
            charpoly_ok: true,
            integrality_ok: None,
            labels_ok: None,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.witness_ok
            && self.trace_ok
            && self.charpoly_ok
            && self.diagonal_ok.unwrap_or(true)
            && self.integrality_ok.unwrap_or(true)
            && self.labels_ok.unwrap_or(true)
    }

    fn fail(&mut self, what: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }
}

fn at(i: usize, j: usize) -> String {
    format!("({}, {})", i + 1, j + 1)
}

/// Working ring for comparisons: ℤ and ℚ are compared in ℚ.
fn working(m: &Matrix) -> Matrix {
    m.lift()
}

/// Checks `p·a = b·p`, returning the first differing entry.
fn intertwines(a: &Matrix, p: &Matrix, b: &Matrix) -> Result<Option<(usize, usize)>> {
    let (a, p, b) = (working(a), working(p), working(b));
    let left = p.multiply_lifted(&a)?;
    let right = b.multiply_lifted(&p)?;
    Ok(left.first_difference(&right))
}

fn inverse_pair(p: &Matrix, p_inv: &Matrix) -> Result<Option<(usize, usize)>> {
    let (p, p_inv) = (working(p), working(p_inv));
    let id = Matrix::identity(p.order(), p.ring());
    if let Some(d) = p.multiply_lifted(&p_inv)?.first_difference(&id) {
        return Ok(Some(d));
    }
    Ok(p_inv.multiply_lifted(&p)?.first_difference(&id))
}

fn check_compatible(a: &Matrix, m: &Matrix) -> Result<()> {
    if a.order() != m.order() {
        return Err(Error::OrderMismatch(a.order(), m.order()));
    }
    a.ring().common(m.ring()).map(|_| ())
}

/// Checks the full conclusion for `(a, gamma)`: `w` is a genuine similarity
/// onto a matrix with diagonal `gamma`.
pub fn verify(a: &Matrix, gamma: &DiagonalSpec, w: &SimilarityWitness) -> Result<VerificationReport> {
    check_compatible(a, &w.result)?;
    check_compatible(a, &w.conjugator)?;
    check_compatible(a, &w.conjugator_inverse)?;
    if gamma.len() != a.order() {
        return Err(Error::OrderMismatch(a.order(), gamma.len()));
    }
    let mut report = VerificationReport::new();
    let b = &w.result;

    match inverse_pair(&w.conjugator, &w.conjugator_inverse)? {
        Some((i, j)) => {
            report.witness_ok = false;
            report.fail(format!("witness: P·P^-1 differs from I at {}", at(i, j)));
        }
        None => {
            if let Some((i, j)) = intertwines(a, &w.conjugator, b)? {
                report.witness_ok = false;
                report.fail(format!("witness: P·A·P^-1 differs from B at {}", at(i, j)));
            }
        }
    }

    let ring = working(a).ring();
    let diag_ok = b.diagonal().iter().zip(gamma.targets()).enumerate().all(|(i, (d, t))| {
        let same = match (d.to_ring(ring), t.to_ring(ring)) {
            (Ok(d), Ok(t)) => d == t,
            _ => false,
        };
        if !same {
            report.fail(format!("diagonal: entry {} is {} but the target is {}", i + 1, d, t));
        }
        same
    });
    report.diagonal_ok = Some(diag_ok);

    let tr_a = working(a).trace();
    let tr_b = working(b).trace();
    let sum = gamma.sum(ring);
    report.trace_ok = sum.as_ref().map(|s| *s == tr_a).unwrap_or(false) && tr_a == tr_b;
    if !report.trace_ok {
        report.fail(format!("trace: tr A = {tr_a}, tr B = {tr_b}"));
    }

    report.charpoly_ok = working(a).char_poly() == working(b).char_poly();
    if !report.charpoly_ok {
        report.fail("charpoly: det(xI - A) and det(xI - B) differ".into());
    }

    if a.ring() == RingSpec::Integer {
        let bad = (0..b.order()).flat_map(|i| (0..b.order()).map(move |j| (i, j))).find(|&(i, j)| !b.get(i, j).is_integral());
        report.integrality_ok = Some(bad.is_none());
        if let Some((i, j)) = bad {
            report.fail(format!("integrality: entry {} = {} is not an integer", at(i, j), b.get(i, j)));
        }
    }
    Ok(report)
}

/// Replays each step from `a` and checks its recorded result and ring label.
pub fn verify_trace(a: &Matrix, trace: &ReductionTrace) -> VerificationReport {
    let mut report = VerificationReport::new();
    report.labels_ok = Some(true);
    let integer_mode = a.ring() == RingSpec::Integer;
    if integer_mode {
        report.integrality_ok = Some(true);
    }
    let mut current = a.clone();
    for (index, step) in trace.steps.iter().enumerate() {
        let label = format!("step {} ({})", index + 1, step.kind);
        let compatible = check_compatible(&current, &step.conjugator).is_ok() && check_compatible(&current, &step.result).is_ok();
        if !compatible {
            report.witness_ok = false;
            report.fail(format!("{label}: incompatible order or ring"));
            return report;
        }
        let singular = working(&step.conjugator).determinant().is_zero();
        let mismatch = if singular { Some((0, 0)) } else { intertwines(&current, &step.conjugator, &step.result).ok().flatten() };
        if let Some((i, j)) = mismatch {
            report.witness_ok = false;
            let why = if singular { "conjugator is singular".to_string() } else { format!("replay differs at {}", at(i, j)) };
            report.fail(format!("{label}: {why}"));
            return report;
        }
        if ConjugatorRing::classify(&step.conjugator) != step.conjugator_ring {
            report.labels_ok = Some(false);
            report.fail(format!(
                "{label}: conjugator labelled {} is {}",
                step.conjugator_ring.tag(),
                ConjugatorRing::classify(&step.conjugator).tag()
            ));
        }
        if integer_mode && !step.result.is_integral() {
            report.integrality_ok = Some(false);
            report.fail(format!("{label}: result is not an integer matrix"));
        }
        if working(&step.result).trace() != working(&current).trace() {
            report.trace_ok = false;
            report.fail(format!("{label}: trace changed"));
        }
        current = step.result.clone();
    }
    report.charpoly_ok = working(a).char_poly() == working(&current).char_poly();
    if !report.charpoly_ok {
        report.fail("charpoly: final matrix not similar to the input".into());
    }
    report
}
