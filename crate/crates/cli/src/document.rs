//! JSON documents exchanged by the CLI. Every scalar travels as its
//! canonical string (`"-3"`, `"17/5"`, least residue mod p) and all
//! indices are 1-based.

use fillmore_core::{
    BezoutTriple, ConjugatorRing, DiagonalSpec, Matrix, RingSpec, Scalar, Solution, SimilarityWitness, StepKind,
    TraceStep, ReductionTrace, VerificationReport,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::locate::{self, key, Path, Seg};

pub type Rows = Vec<Vec<String>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingName {
    Integer,
    Rational,
    PrimeField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    TwoStep,
    Inductive,
    Integer,
}

/// A semantic problem found after the JSON itself parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invalid {
    pub path: Path,
    pub message: String,
}

impl Invalid {
    fn new(path: Path, message: impl Into<String>) -> Invalid {
        Invalid { path, message: message.into() }
    }

    /// Attaches the source position of the offending value, falling back
    /// to the nearest enclosing key that can be found.
    pub fn located(self, text: &str) -> CliError {
        let mut path = self.path.clone();
        let (line, column) = loop {
            if let Some(pos) = locate::position(text, &path) {
                break pos;
            }
            if path.pop().is_none() {
                break (1, 1);
            }
        };
        CliError::Parse { line, column, message: self.message }
    }
}

fn child(path: &[Seg], seg: Seg) -> Path {
    let mut p = path.to_vec();
    p.push(seg);
    p
}

fn ring_spec(ring: RingName, modulus: Option<u64>) -> Result<RingSpec, Invalid> {
    match (ring, modulus) {
        (RingName::PrimeField, Some(p)) => {
            RingSpec::prime_field(p).map_err(|e| Invalid::new(vec![key("modulus")], e.to_string()))
        }
        (RingName::PrimeField, None) => Err(Invalid::new(vec![key("ring")], "prime-field requires a modulus")),
        (_, Some(_)) => Err(Invalid::new(vec![key("modulus")], "modulus is only allowed with prime-field")),
        (RingName::Integer, None) => Ok(RingSpec::Integer),
        (RingName::Rational, None) => Ok(RingSpec::Rational),
    }
}

pub fn ring_name(ring: RingSpec) -> (RingName, Option<u64>) {
    match ring {
        RingSpec::Integer => (RingName::Integer, None),
        RingSpec::Rational => (RingName::Rational, None),
        RingSpec::PrimeField(m) => (RingName::PrimeField, Some(m.get())),
    }
}

fn parse_scalar(text: &str, ring: RingSpec, path: &[Seg]) -> Result<Scalar, Invalid> {
    Scalar::parse(text, ring).map_err(|e| Invalid::new(path.to_vec(), e.to_string()))
}

fn parse_rows(rows: &Rows, ring: RingSpec, path: &[Seg]) -> Result<Matrix, Invalid> {
    let n = rows.len();
    if n == 0 {
        return Err(Invalid::new(path.to_vec(), "matrix has no rows"));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row_path = child(path, Seg::Index(i));
        if row.len() != n {
            return Err(Invalid::new(row_path, format!("row {} has {} entries; a square matrix needs {n}", i + 1, row.len())));
        }
        let entries = row
            .iter()
            .enumerate()
            .map(|(j, t)| parse_scalar(t, ring, &child(&row_path, Seg::Index(j))))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(entries);
    }
    Matrix::from_rows(ring, parsed).map_err(|e| Invalid::new(path.to_vec(), e.to_string()))
}

/// Integer documents may carry rational conjugators (the diagonal-input
/// bump), so their matrices are read over ℚ and demoted when integral.
fn parse_rows_loose(rows: &Rows, ring: RingSpec, path: &[Seg]) -> Result<Matrix, Invalid> {
    if ring == RingSpec::Integer {
        Ok(parse_rows(rows, RingSpec::Rational, path)?.demote_if_integral())
    } else {
        parse_rows(rows, ring, path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub ring: RingName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub matrix: Rows,
    pub diagonal: Vec<String>,
}

/// A problem in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub ring: RingSpec,
    pub matrix: Matrix,
    pub diagonal: DiagonalSpec,
}

impl ProblemDocument {
    pub fn from_problem(matrix: &Matrix, diagonal: &DiagonalSpec) -> ProblemDocument {
        let (ring, modulus) = ring_name(matrix.ring());
        ProblemDocument {
            ring,
            modulus,
            matrix: matrix.to_strings(),
            diagonal: diagonal.targets().iter().map(|t| t.to_string()).collect(),
        }
    }

    pub fn decode(&self) -> Result<Problem, Invalid> {
        let ring = ring_spec(self.ring, self.modulus)?;
        let matrix = parse_rows(&self.matrix, ring, &[key("matrix")])?;
        if self.diagonal.len() != matrix.order() {
            return Err(Invalid::new(
                vec![key("diagonal")],
                format!("diagonal has {} entries; the matrix has order {}", self.diagonal.len(), matrix.order()),
            ));
        }
        let targets = self
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, t)| parse_scalar(t, ring, &[key("diagonal"), Seg::Index(i)]))
            .collect::<Result<Vec<_>, _>>()?;
        let diagonal = DiagonalSpec::new(targets).map_err(|e| Invalid::new(vec![key("diagonal")], e.to_string()))?;
        Ok(Problem { ring, matrix, diagonal })
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, CliError> {
        let doc: ProblemDocument = serde_json::from_str(text)?;
        doc.decode().map_err(|e| e.located(text))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BezoutDocument {
    pub m: String,
    pub p: String,
    pub q: String,
    pub r: String,
    pub s: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bezout: Option<BezoutDocument>,
    pub conjugator: Rows,
    pub conjugator_ring: String,
    pub result: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub passed: bool,
    pub witness_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal_ok: Option<bool>,
    pub trace_ok: bool,
    pub charpoly_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrality_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl From<&VerificationReport> for ReportDocument {
    fn from(r: &VerificationReport) -> ReportDocument {
        ReportDocument {
            passed: r.passed(),
            witness_ok: r.witness_ok,
            diagonal_ok: r.diagonal_ok,
            trace_ok: r.trace_ok,
            charpoly_ok: r.charpoly_ok,
            integrality_ok: r.integrality_ok,
            labels_ok: r.labels_ok,
            first_failure: r.first_failure.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub algorithm: Algorithm,
    /// The ring the solver worked in; an integer problem solved by a field
    /// algorithm is recorded as rational.
    pub ring: RingName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub conjugations: usize,
    pub result: Rows,
    pub conjugator: Rows,
    pub conjugator_inverse: Rows,
    pub trace: Vec<StepDocument>,
    pub verification: ReportDocument,
    pub trace_verification: ReportDocument,
}

fn one_based(i: Option<usize>) -> Option<usize> {
    i.map(|i| i + 1)
}

fn zero_based(i: Option<usize>, path: Path) -> Result<Option<usize>, Invalid> {
    match i {
        Some(0) => Err(Invalid::new(path, "indices are 1-based")),
        other => Ok(other.map(|i| i - 1)),
    }
}

fn step_document(step: &TraceStep) -> StepDocument {
    StepDocument {
        kind: step.kind.tag().to_string(),
        r: one_based(step.r),
        s: one_based(step.s),
        k: one_based(step.k),
        bezout: step.bezout.as_ref().map(|b| BezoutDocument {
            m: b.m.to_string(),
            p: b.p.to_string(),
            q: b.q.to_string(),
            r: b.r.to_string(),
            s: b.s.to_string(),
        }),
        conjugator: step.conjugator.to_strings(),
        conjugator_ring: step.conjugator_ring.tag().to_string(),
        result: step.result.to_strings(),
        basis: step.basis.as_ref().map(Matrix::to_strings),
        note: step.note.clone(),
    }
}

fn parse_bigint(text: &str, path: Path) -> Result<BigInt, Invalid> {
    text.parse().map_err(|_| Invalid::new(path, format!("{text:?} is not an integer")))
}

fn decode_step(doc: &StepDocument, ring: RingSpec, path: &[Seg]) -> Result<TraceStep, Invalid> {
    let at = |k: &str| child(path, key(k));
    let kind = StepKind::from_tag(&doc.kind).ok_or_else(|| Invalid::new(at("kind"), format!("unknown step kind {:?}", doc.kind)))?;
    let conjugator_ring = ConjugatorRing::from_tag(&doc.conjugator_ring)
        .ok_or_else(|| Invalid::new(at("conjugator_ring"), format!("unknown conjugator ring {:?}", doc.conjugator_ring)))?;
    let bezout = match &doc.bezout {
        None => None,
        Some(b) => {
            let f = |name: &str, v: &str| parse_bigint(v, child(&at("bezout"), key(name)));
            Some(BezoutTriple { m: f("m", &b.m)?, p: f("p", &b.p)?, q: f("q", &b.q)?, r: f("r", &b.r)?, s: f("s", &b.s)? })
        }
    };
    Ok(TraceStep {
        kind,
        r: zero_based(doc.r, at("r"))?,
        s: zero_based(doc.s, at("s"))?,
        k: zero_based(doc.k, at("k"))?,
        bezout,
        conjugator: parse_rows_loose(&doc.conjugator, ring, &at("conjugator"))?,
        conjugator_ring,
        result: parse_rows_loose(&doc.result, ring, &at("result"))?,
        basis: doc.basis.as_ref().map(|b| parse_rows_loose(b, ring, &at("basis"))).transpose()?,
        note: doc.note.clone(),
    })
}

/// A decoded solution: the working ring plus everything needed to
/// re-verify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedSolution {
    pub algorithm: Algorithm,
    pub ring: RingSpec,
    pub conjugations: usize,
    pub solution: Solution,
}

impl SolutionDocument {
    pub fn from_solution(
        algorithm: Algorithm,
        solution: &Solution,
        ring: RingSpec,
        report: &VerificationReport,
        replay: &VerificationReport,
    ) -> SolutionDocument {
        let (ring, modulus) = ring_name(ring);
        let w = &solution.witness;
        SolutionDocument {
            algorithm,
            ring,
            modulus,
            conjugations: solution.conjugations(),
            result: w.result.to_strings(),
            conjugator: w.conjugator.to_strings(),
            conjugator_inverse: w.conjugator_inverse.to_strings(),
            trace: solution.trace.steps.iter().map(step_document).collect(),
            verification: report.into(),
            trace_verification: replay.into(),
        }
    }

    pub fn decode(&self) -> Result<DecodedSolution, Invalid> {
        let ring = ring_spec(self.ring, self.modulus)?;
        // The result of an integer solution that is not integral is kept
        // as rational so that verification, not parsing, rejects it.
        let witness = SimilarityWitness {
            conjugator: parse_rows_loose(&self.conjugator, ring, &[key("conjugator")])?,
            conjugator_inverse: parse_rows_loose(&self.conjugator_inverse, ring, &[key("conjugator_inverse")])?,
            result: parse_rows_loose(&self.result, ring, &[key("result")])?,
        };
        let steps = self
            .trace
            .iter()
            .enumerate()
            .map(|(i, s)| decode_step(s, ring, &[key("trace"), Seg::Index(i)]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DecodedSolution {
            algorithm: self.algorithm,
            ring,
            conjugations: self.conjugations,
            solution: Solution { witness, trace: ReductionTrace { steps } },
        })
    }

    pub fn parse(text: &str) -> Result<DecodedSolution, CliError> {
        let doc: SolutionDocument = serde_json::from_str(text)?;
        doc.decode().map_err(|e| e.located(text))
    }
}
