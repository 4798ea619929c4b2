//! Printed walkthroughs of the two worked 5×5 examples.

use std::fmt::Write;

use fillmore_core::{
    solve_integer, solve_two_step_with_pivot, verify, DiagonalSpec, Matrix, PivotChoice, RingSpec, Solution,
    VerificationReport,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoName {
    #[value(name = "paper-example-1")]
    WorkedExample1,
    #[value(name = "paper-example-2")]
    WorkedExample2,
}

const A: [[i64; 5]; 5] = [[4, 0, 4, -3, 5], [2, 3, 0, 2, 3], [0, -2, 2, 5, 4], [7, 1, 3, 4, 0], [2, 5, 3, 0, -2]];
const GAMMA: [i64; 5] = [3, 5, -2, 6, -1];

fn input(ring: RingSpec) -> (Matrix, DiagonalSpec) {
    let rows: Vec<&[i64]> = A.iter().map(|r| &r[..]).collect();
    (Matrix::from_i64(ring, &rows).unwrap(), DiagonalSpec::from_i64(ring, &GAMMA))
}

fn block(out: &mut String, label: &str, m: &Matrix) {
    writeln!(out, "{label} =").unwrap();
    write!(out, "{m}").unwrap();
    writeln!(out).unwrap();
}

fn summary(out: &mut String, report: &VerificationReport) {
    let flag = |b: bool| if b { "ok" } else { "FAILED" };
    write!(
        out,
        "verification: witness {}, diagonal {}, trace {}, char poly {}",
        flag(report.witness_ok),
        flag(report.diagonal_ok.unwrap_or(false)),
        flag(report.trace_ok),
        flag(report.charpoly_ok)
    )
    .unwrap();
    if let Some(i) = report.integrality_ok {
        write!(out, ", integrality {}", flag(i)).unwrap();
    }
    writeln!(out).unwrap();
}

fn header(out: &mut String, title: &str, a: &Matrix, gamma: &DiagonalSpec) {
    writeln!(out, "{title}").unwrap();
    writeln!(out).unwrap();
    block(out, "A", a);
    let targets: Vec<String> = gamma.targets().iter().map(|t| t.to_string()).collect();
    writeln!(out, "target diagonal: ({})", targets.join(", ")).unwrap();
    writeln!(out, "trace A = {}", a.trace()).unwrap();
    writeln!(out).unwrap();
}

fn steps(out: &mut String, a: &Matrix, sol: &Solution, names: [&str; 2]) {
    let (unify, set) = (&sol.trace.steps[0], &sol.trace.steps[1]);
    let (r, s) = (unify.r.unwrap(), unify.s.unwrap());
    writeln!(out, "step 1 ({}): pivot ({}, {}), entry {}", unify.kind, r + 1, s + 1, a.get(r, s)).unwrap();
    block(out, "B1", &unify.conjugator);
    block(out, names[0], &unify.result);
    writeln!(out, "step 2 ({}): row {}", set.kind, set.r.unwrap() + 1).unwrap();
    block(out, "B2", &set.conjugator);
    block(out, names[1], &set.result);
}

fn example_one() -> Result<String, CliError> {
    let (a, gamma) = input(RingSpec::Rational);
    let mut out = String::new();
    header(&mut out, "Worked example 1: two-step reduction over Q", &a, &gamma);
    let sol = solve_two_step_with_pivot(&a, &gamma, Some(PivotChoice::new(2, 3)))?;
    steps(&mut out, &a, &sol, ["B1 A B1^-1", "B2 B1 A B1^-1 B2^-1"]);
    summary(&mut out, &verify(&a, &gamma, &sol.witness)?);
    Ok(out)
}

fn example_two() -> Result<String, CliError> {
    let (a, gamma) = input(RingSpec::Integer);
    let mut out = String::new();
    header(&mut out, "Worked example 2: reduction over Z", &a, &gamma);
    let sol = solve_integer(&a, &gamma)?;
    steps(&mut out, &a, &sol, ["B1 A B1^-1", "B2 B1 A B1^-1 B2^-1"]);
    writeln!(out, "entry (2, 4) = {}", sol.result().get(1, 3)).unwrap();
    let rings: Vec<&str> = sol.trace.steps.iter().map(|s| s.conjugator_ring.tag()).collect();
    writeln!(out, "conjugator rings: {}", rings.join(", ")).unwrap();
    summary(&mut out, &verify(&a, &gamma, &sol.witness)?);
    Ok(out)
}

pub fn transcript(name: DemoName) -> Result<String, CliError> {
    match name {
        DemoName::WorkedExample1 => example_one(),
        DemoName::WorkedExample2 => example_two(),
    }
}
