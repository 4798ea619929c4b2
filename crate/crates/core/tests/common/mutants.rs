//! Deliberately broken solver variants, assembled from public building
//! blocks. Each returns the witness it would report plus whether the
//! mutation changed anything (an equivalent mutant is not a detectable bug).

use fillmore_core::*;
use fillmore_core::gen;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// Row `s` of the unify-row conjugator uses `1 - a_rk` instead of `a_rk - 1`.
    UnifyRowSignFlip,
    /// The set-diagonal correction is written into column `r + 1` instead of `r`.
    SetDiagonalOffByOne,
    /// The integer pipeline skips the Step-3 scaling by `1/a_12`.
    DroppedStep3,
}

pub const ALL: [Mutant; 3] = [Mutant::UnifyRowSignFlip, Mutant::SetDiagonalOffByOne, Mutant::DroppedStep3];

pub struct MutantRun {
    pub witness: SimilarityWitness,
    /// What the mutant would record, labelled honestly.
    pub trace: ReductionTrace,
    pub effective: bool,
}

fn unify_conjugator(a: &Matrix, r: usize, s: usize, flip: bool) -> Matrix {
    let ring = a.ring();
    let one = Scalar::one(ring);
    Matrix::from_fn(a.order(), ring, |i, k| {
        if i != s {
            Scalar::from_i64((i == k) as i64, ring)
        } else if k == r {
            Scalar::zero(ring)
        } else if k == s {
            a.get(r, s).clone()
        } else if flip {
            &one - a.get(r, k)
        } else {
            a.get(r, k) - &one
        }
    })
}

fn set_conjugator(a: &Matrix, column: usize, gamma: &DiagonalSpec) -> Matrix {
    let ring = a.ring();
    let targets = gamma.to_ring(ring).unwrap();
    Matrix::from_fn(a.order(), ring, |i, j| {
        if j != column || i == column {
            Scalar::from_i64((i == j) as i64, ring)
        } else {
            &targets.targets()[i] - a.get(i, i)
        }
    })
}

fn replay(a: &Matrix, steps: &[(StepKind, Matrix)]) -> (SimilarityWitness, ReductionTrace) {
    let mut w = SimilarityWitness::identity(a);
    let mut trace = ReductionTrace::default();
    for (kind, p) in steps {
        let step = w.result.conjugate(p).unwrap();
        trace.push(TraceStep::new(*kind, &step));
        w = w.then(&step).unwrap();
    }
    (w, trace)
}

/// Runs `mutant` on a non-diagonal field (or integer, for the two-step
/// mutants) instance.
pub fn run(mutant: Mutant, a: &Matrix, gamma: &DiagonalSpec) -> Option<MutantRun> {
    match mutant {
        Mutant::UnifyRowSignFlip | Mutant::SetDiagonalOffByOne => {
            let pivot = choose_pivot(a).ok()?;
            let (r, s) = (pivot.row, pivot.col);
            let flip = mutant == Mutant::UnifyRowSignFlip;
            let b1 = unify_conjugator(a, r, s, flip);
            let effective_unify = b1 != unify_conjugator(a, r, s, false);
            let mid = a.conjugate(&b1).unwrap().result;
            let column = if mutant == Mutant::SetDiagonalOffByOne { (r + 1) % a.order() } else { r };
            let b2 = set_conjugator(&mid, column, gamma);
            let effective_set = b2 != set_conjugator(&mid, r, gamma);
            let (witness, trace) = replay(a, &[(StepKind::UnifyRow, b1), (StepKind::SetDiagonal, b2)]);
            Some(MutantRun { witness, trace, effective: if flip { effective_unify } else { effective_set } })
        }
        Mutant::DroppedStep3 => {
            let unit = find_unit_entry(a).ok()?;
            let mut steps: Vec<(StepKind, Matrix)> = unit
                .solution
                .trace
                .steps
                .iter()
                .filter(|s| s.kind != StepKind::ScaleStep3)
                .map(|s| (s.kind, s.conjugator.clone()))
                .collect();
            let effective = steps.len() != unit.solution.trace.len();
            let reached = replay(a, &steps).0.result;
            // Without the scaling the lead entry stays at `(1, 2)` holding the gcd.
            let pivot = if effective { PivotChoice::new(0, 1) } else { unit.position };
            let b1 = unify_conjugator(&reached, pivot.row, pivot.col, false);
            let mid = reached.conjugate(&b1).unwrap().result;
            let b2 = set_conjugator(&mid, pivot.row, gamma);
            steps.push((StepKind::UnifyRow, b1));
            steps.push((StepKind::SetDiagonal, b2));
            let (witness, trace) = replay(a, &steps);
            Some(MutantRun { witness, trace, effective })
        }
    }
}

/// The same mutant, but reporting the target diagonal it was asked for
/// regardless of what the conjugations produced. The last trace step is
/// doctored to agree with the claim.
pub fn run_claiming_targets(mutant: Mutant, a: &Matrix, gamma: &DiagonalSpec) -> Option<MutantRun> {
    let mut out = run(mutant, a, gamma)?;
    let mut claimed = out.witness.result.clone();
    for (i, t) in gamma.targets().iter().enumerate() {
        claimed = claimed.with_entry(i, i, t.to_ring(claimed.ring()).ok()?);
    }
    if mutant == Mutant::DroppedStep3 {
        claimed = Matrix::from_fn(claimed.order(), RingSpec::Integer, |i, j| {
            let v = claimed.get(i, j).as_rational().unwrap();
            Scalar::Integer(v.floor().to_integer())
        });
    }
    if let Some(last) = out.trace.steps.last_mut() {
        last.result = claimed.clone();
    }
    out.witness.result = claimed;
    Some(out)
}

/// Instances on which `mutant` is exercised. The two-step mutants use
/// non-diagonal field instances of order at least 3 (for order 2 the sign
/// flip touches no entry); the Step-3 mutant uses integer matrices with
/// even off-diagonal entries, so no unit is available and the gcd chain
/// always ends above 1.
pub fn corpus(mutant: Mutant) -> Vec<(Matrix, DiagonalSpec)> {
    let mut out = Vec::new();
    match mutant {
        Mutant::UnifyRowSignFlip | Mutant::SetDiagonalOffByOne => {
            out.push((super::worked_a(super::Q), DiagonalSpec::from_i64(super::Q, &super::WORKED_GAMMA)));
            for ring in [super::Q, super::gf(5), super::gf(7)] {
                for seed in 0..100u64 {
                    let shape = if seed % 4 == 0 { Shape::SparseOneOffdiag } else { Shape::Dense };
                    let spec = GenSpec::new(ring, 3 + seed as usize % 4, 7000 + seed).with_shape(shape);
                    let a = gen_matrix(&spec).unwrap();
                    let gamma = gen_diagonal_spec(&a, seed);
                    out.push((a, gamma));
                }
            }
        }
        Mutant::DroppedStep3 => {
            let mut rng = SplitMix64::new(0x5EED);
            while out.len() < 200 {
                let n = 2 + out.len() % 5;
                let a = Matrix::from_fn(n, super::Z, |i, j| {
                    let v = gen::draw_scalar(&mut rng, super::Z, 4);
                    if i == j { v } else { &v + &v }
                });
                if a.is_diagonal() {
                    continue;
                }
                let gamma = gen::gen_diagonal_spec(&a, out.len() as u64);
                out.push((a, gamma));
            }
        }
    }
    out
}

#[derive(Debug, Default)]
pub struct Detection {
    pub runs: usize,
    pub effective: usize,
    pub caught: usize,
    /// Effective runs the verifier accepted whose output is nevertheless
    /// a correct answer by an independent check (coincidence, not a miss).
    pub coincidental: usize,
    /// Effective runs accepted although the output is wrong.
    pub missed: usize,
}

impl Detection {
    /// The mutant is killed and no wrong output slipped through.
    pub fn complete(&self) -> bool {
        self.caught > 0 && self.missed == 0
    }
}

/// Runs both the honest and the target-claiming variant of `mutant` over
/// its corpus and counts how many effective runs the verifier rejects,
/// through either the final witness or the replayed trace.
pub fn detection(mutant: Mutant) -> Detection {
    let mut d = Detection::default();
    for (a, gamma) in corpus(mutant) {
        for claiming in [false, true] {
            let run = if claiming { run_claiming_targets(mutant, &a, &gamma) } else { run(mutant, &a, &gamma) };
            let Some(run) = run else { continue };
            d.runs += 1;
            if !run.effective {
                continue;
            }
            d.effective += 1;
            let passed = verify(&a, &gamma, &run.witness).map(|r| r.passed()).unwrap_or(false)
                && verify_trace(&a, &run.trace).passed();
            if !passed {
                d.caught += 1;
            } else if genuinely_correct(&a, &gamma, &run.witness) {
                d.coincidental += 1;
            } else {
                d.missed += 1;
            }
        }
    }
    d
}

/// Independent of the verifier: `P·A = B·P`, `P` nonsingular, diagonal of
/// `B` equal to `gamma`, and `B` integral when `A` is.
fn genuinely_correct(a: &Matrix, gamma: &DiagonalSpec, w: &SimilarityWitness) -> bool {
    let b = w.result.lift();
    let targets = gamma.to_ring(b.ring()).unwrap();
    super::is_similarity(a, &w.conjugator, &w.result)
        && b.diagonal() == targets.targets()
        && (a.ring() != super::Z || w.result.is_integral())
}
