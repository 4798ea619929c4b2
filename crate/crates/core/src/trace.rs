//! Step-by-step record of a reduction, replayable by the verifier.

use std::fmt;

use crate::bezout::BezoutTriple;
use crate::matrix::{Matrix, SimilarityWitness};
use crate::scalar::RingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Bump,
    Permute,
    BezoutStep2,
    ScaleStep3,
    UnifyRow,
    SetDiagonal,
    Deflate,
    BaseCase,
}

impl StepKind {
    pub const ALL: [StepKind; 8] = [
        StepKind::Bump,
        StepKind::Permute,
        StepKind::BezoutStep2,
        StepKind::ScaleStep3,
        StepKind::UnifyRow,
        StepKind::SetDiagonal,
        StepKind::Deflate,
        StepKind::BaseCase,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StepKind::Bump => "bump",
            StepKind::Permute => "permute",
            StepKind::BezoutStep2 => "bezout-step2",
            StepKind::ScaleStep3 => "scale-step3",
            StepKind::UnifyRow => "unify-row",
            StepKind::SetDiagonal => "set-diagonal",
            StepKind::Deflate => "deflate",
            StepKind::BaseCase => "base-case",
        }
    }

    pub fn from_tag(tag: &str) -> Option<StepKind> {
        StepKind::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Which ring a step's conjugator actually lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjugatorRing {
    /// Integer entries and determinant ±1, so the inverse is integer too.
    IntegerUnimodular,
    Rational,
    PrimeField,
}

impl ConjugatorRing {
    pub fn classify(conjugator: &Matrix) -> ConjugatorRing {
        if let RingSpec::PrimeField(_) = conjugator.ring() {
            return ConjugatorRing::PrimeField;
        }
        if conjugator.is_integral() {
            let det = conjugator.determinant();
            let unit = det.is_one() || (-det).is_one();
            if unit {
                return ConjugatorRing::IntegerUnimodular;
            }
        }
        ConjugatorRing::Rational
    }

    pub fn tag(self) -> &'static str {
        match self {
            ConjugatorRing::IntegerUnimodular => "integer-unimodular",
            ConjugatorRing::Rational => "rational",
            ConjugatorRing::PrimeField => "prime-field",
        }
    }

    pub fn from_tag(tag: &str) -> Option<ConjugatorRing> {
        [ConjugatorRing::IntegerUnimodular, ConjugatorRing::Rational, ConjugatorRing::PrimeField]
            .into_iter()
            .find(|r| r.tag() == tag)
    }
}

/// One elementary similarity. `conjugator` is full-size: applying it to
/// the previous step's result (or the input) yields `result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    /// 0-based indices; which ones are set depends on `kind`.
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub bezout: Option<BezoutTriple>,
    pub conjugator: Matrix,
    pub conjugator_ring: ConjugatorRing,
    pub result: Matrix,
    /// Basis matrix `S` of an inductive stage (block-sized).
    pub basis: Option<Matrix>,
    pub note: Option<String>,
}

impl TraceStep {
    pub fn new(kind: StepKind, witness: &SimilarityWitness) -> TraceStep {
        TraceStep {
            kind,
            r: None,
            s: None,
            k: None,
            bezout: None,
            conjugator_ring: ConjugatorRing::classify(&witness.conjugator),
            conjugator: witness.conjugator.clone(),
            result: witness.result.clone(),
            basis: None,
            note: None,
        }
    }

    pub fn with_indices(mut self, r: Option<usize>, s: Option<usize>, k: Option<usize>) -> TraceStep {
        self.r = r;
        self.s = s;
        self.k = k;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }
}

/// A solver's output: the overall witness and the steps that built it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub witness: SimilarityWitness,
    pub trace: ReductionTrace,
}

impl Solution {
    pub fn result(&self) -> &Matrix {
        &self.witness.result
    }

    /// Number of conjugations performed.
    pub fn conjugations(&self) -> usize {
        self.trace.len()
    }
}

/// Accumulates step witnesses into an overall witness while recording them.
pub(crate) struct Recorder {
    witness: SimilarityWitness,
    trace: ReductionTrace,
}

impl Recorder {
    pub(crate) fn new(input: &Matrix) -> Recorder {
        Recorder { witness: SimilarityWitness::identity(input), trace: ReductionTrace::default() }
    }

    pub(crate) fn resume(solution: Solution) -> Recorder {
        Recorder { witness: solution.witness, trace: solution.trace }
    }

    pub(crate) fn current(&self) -> &Matrix {
        &self.witness.result
    }

    pub(crate) fn record(&mut self, step: TraceStep, witness: &SimilarityWitness) -> crate::Result<()> {
        self.witness = self.witness.then(witness)?;
        self.trace.push(step);
        Ok(())
    }

    pub(crate) fn finish(self) -> Solution {
        Solution { witness: self.witness, trace: self.trace }
    }
}
