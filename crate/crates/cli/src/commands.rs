//! The subcommands, as pure functions from input text to output values.

use fillmore_core::{
    gen::gen_diagonal_spec_bounded, gen_matrix, solve_inductive, solve_integer, solve_two_step_with_pivot, verify, verify_trace,
    GenSpec, Matrix, PivotChoice, RingSpec, Shape, VerificationReport,
};
use serde::Serialize;

use crate::document::{Algorithm, Problem, ProblemDocument, ReportDocument, SolutionDocument};
use crate::error::CliError;

fn failure(report: &VerificationReport) -> String {
    report.first_failure.clone().unwrap_or_else(|| "unspecified".into())
}

/// Solves `problem_text`. `pivot` is 1-based and only meaningful for the
/// two-step algorithm.
pub fn solve(problem_text: &str, algorithm: Algorithm, pivot: Option<(usize, usize)>) -> Result<SolutionDocument, CliError> {
    let problem = Problem::parse(problem_text)?;
    if pivot.is_some() && algorithm != Algorithm::TwoStep {
        return Err(CliError::Precondition("--pivot applies only to the two-step algorithm".into()));
    }
    let pivot = match pivot {
        Some((0, _)) | Some((_, 0)) => return Err(CliError::Precondition("pivot indices are 1-based".into())),
        Some((r, s)) => Some(PivotChoice::new(r - 1, s - 1)),
        None => None,
    };
    let (a, gamma) = match (algorithm, problem.ring) {
        (Algorithm::Integer, RingSpec::Integer) => (problem.matrix, problem.diagonal),
        (Algorithm::Integer, ring) => {
            return Err(CliError::Precondition(format!("the integer algorithm needs an integer matrix, not {ring}")))
        }
        (_, RingSpec::Integer) => (problem.matrix.to_ring(RingSpec::Rational)?, problem.diagonal.to_ring(RingSpec::Rational)?),
        _ => (problem.matrix, problem.diagonal),
    };
    let solution = match algorithm {
        Algorithm::TwoStep => solve_two_step_with_pivot(&a, &gamma, pivot)?,
        Algorithm::Inductive => solve_inductive(&a, &gamma)?,
        Algorithm::Integer => solve_integer(&a, &gamma)?,
    };
    let report = verify(&a, &gamma, &solution.witness)?;
    if !report.passed() {
        return Err(CliError::Verification(failure(&report)));
    }
    let replay = verify_trace(&a, &solution.trace);
    if !replay.passed() {
        return Err(CliError::Verification(failure(&replay)));
    }
    Ok(SolutionDocument::from_solution(algorithm, &solution, a.ring(), &report, &replay))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub passed: bool,
    pub verification: ReportDocument,
    pub trace_verification: ReportDocument,
    /// Disagreement between the solution's summary fields and its trace.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency_failure: Option<String>,
}

/// Re-checks a solution document against its problem from scratch.
pub fn verify_solution(problem_text: &str, solution_text: &str) -> Result<VerifyOutcome, CliError> {
    let problem = Problem::parse(problem_text)?;
    let decoded = SolutionDocument::parse(solution_text)?;
    let a = match (problem.ring, decoded.ring) {
        (p, s) if p == s => problem.matrix,
        (RingSpec::Integer, RingSpec::Rational) => problem.matrix.to_ring(RingSpec::Rational)?,
        (p, s) => return Err(CliError::Precondition(format!("problem is over {p} but the solution is over {s}"))),
    };
    let gamma = problem.diagonal.to_ring(a.ring())?;
    let sol = &decoded.solution;
    for m in [&sol.witness.result, &sol.witness.conjugator, &sol.witness.conjugator_inverse] {
        if m.order() != a.order() {
            return Err(CliError::Precondition(format!(
                "order mismatch: problem has order {}, solution has order {}",
                a.order(),
                m.order()
            )));
        }
    }
    let report = verify(&a, &gamma, &sol.witness)?;
    let replay = verify_trace(&a, &sol.trace);
    let consistency_failure = consistency(&a, &decoded.solution, decoded.conjugations);
    Ok(VerifyOutcome {
        passed: report.passed() && replay.passed() && consistency_failure.is_none(),
        verification: (&report).into(),
        trace_verification: (&replay).into(),
        consistency_failure,
    })
}

fn consistency(a: &Matrix, sol: &fillmore_core::Solution, conjugations: usize) -> Option<String> {
    if conjugations != sol.trace.len() {
        return Some(format!("conjugations is {conjugations} but the trace has {} steps", sol.trace.len()));
    }
    let last = sol.trace.steps.last().map_or(a, |s| &s.result);
    if !last.lift().same_values(&sol.witness.result.lift()) {
        return Some("result differs from the last trace step".into());
    }
    let mut product = Matrix::identity(a.order(), a.ring()).lift();
    for step in &sol.trace.steps {
        product = match step.conjugator.lift().multiply_lifted(&product) {
            Ok(p) => p,
            Err(e) => return Some(e.to_string()),
        };
    }
    if !product.same_values(&sol.witness.conjugator.lift()) {
        return Some("conjugator is not the product of the trace conjugators".into());
    }
    None
}

/// Ring selector for `gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenRing {
    Int,
    Rat,
    Gf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenShape {
    Dense,
    Diagonal,
    SparseOneOffdiag,
}

impl From<GenShape> for Shape {
    fn from(s: GenShape) -> Shape {
        match s {
            GenShape::Dense => Shape::Dense,
            GenShape::Diagonal => Shape::Diagonal,
            GenShape::SparseOneOffdiag => Shape::SparseOneOffdiag,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    pub ring: GenRing,
    pub modulus: Option<u64>,
    pub n: usize,
    pub seed: u64,
    pub shape: GenShape,
    pub count: usize,
    pub bound: u64,
}

pub fn gen_ring(ring: GenRing, modulus: Option<u64>) -> Result<RingSpec, CliError> {
    match (ring, modulus) {
        (GenRing::Gf, Some(p)) => Ok(RingSpec::prime_field(p)?),
        (GenRing::Gf, None) => Err(CliError::Precondition("--ring gf requires --p".into())),
        (_, Some(_)) => Err(CliError::Precondition("--p is only allowed with --ring gf".into())),
        (GenRing::Int, None) => Ok(RingSpec::Integer),
        (GenRing::Rat, None) => Ok(RingSpec::Rational),
    }
}

/// Instance `i` draws its matrix from seed `seed + i` and its diagonal from
/// the bitwise complement of that seed, so batches are reproducible and
/// extending `count` keeps the earlier documents.
pub fn generate(opts: &GenOptions) -> Result<Vec<ProblemDocument>, CliError> {
    let ring = gen_ring(opts.ring, opts.modulus)?;
    if opts.bound == 0 {
        return Err(CliError::Precondition("--bound must be at least 1".into()));
    }
    (0..opts.count as u64)
        .map(|i| {
            let seed = opts.seed.wrapping_add(i);
            let spec = GenSpec::new(ring, opts.n, seed).with_shape(opts.shape.into()).with_bound(opts.bound);
            let a = gen_matrix(&spec)?;
            let gamma = gen_diagonal_spec_bounded(&a, !seed, opts.bound);
            Ok(ProblemDocument::from_problem(&a, &gamma))
        })
        .collect()
}
