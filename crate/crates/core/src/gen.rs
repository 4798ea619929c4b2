//! Seeded instance generation.
//!
//! The generator is SplitMix64: the state advances by `0x9E3779B97F4A7C15`
//! and each output is mixed as
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
//! `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`,
//! `z ^ (z >> 31)` (wrapping arithmetic). A draw from `lo..=hi` is
//! `lo + next() % (hi - lo + 1)`. Integer and rational draws are made from
//! `[-bound, bound]`, rational denominators from `[1, bound]`, residues
//! from `[0, p)`. Entries are drawn in row-major order.

use crate::error::{Error, Result};
use crate::matrix::{DiagonalSpec, Matrix};
use crate::scalar::{normalize, RingSpec, Scalar};

/// Bound used by [`gen_diagonal_spec`] for the free targets.
pub const DEFAULT_TARGET_BOUND: u64 = 9;

const MAX_DRAWS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Dense,
    Diagonal,
    /// Random diagonal plus exactly one nonzero off-diagonal entry.
    SparseOneOffdiag,
}

impl Shape {
    pub fn tag(self) -> &'static str {
        match self {
            Shape::Dense => "dense",
            Shape::Diagonal => "diagonal",
            Shape::SparseOneOffdiag => "sparse-one-offdiag",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Shape> {
        [Shape::Dense, Shape::Diagonal, Shape::SparseOneOffdiag].into_iter().find(|s| s.tag() == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub ring: RingSpec,
    pub n: usize,
    pub entry_bound: u64,
    pub seed: u64,
    pub shape: Shape,
}

impl GenSpec {
    pub fn new(ring: RingSpec, n: usize, seed: u64) -> GenSpec {
        GenSpec { ring, n, entry_bound: 9, seed, shape: Shape::Dense }
    }

    pub fn with_shape(mut self, shape: Shape) -> GenSpec {
        self.shape = shape;
        self
    }

    pub fn with_bound(mut self, bound: u64) -> GenSpec {
        self.entry_bound = bound;
        self
    }
}

pub fn draw_scalar(rng: &mut SplitMix64, ring: RingSpec, bound: u64) -> Scalar {
    let b = bound.min(i64::MAX as u64 / 2) as i64;
    match ring {
        RingSpec::Integer => Scalar::from_i64(rng.range(-b, b), ring),
        RingSpec::Rational => {
            let num = rng.range(-b, b);
            let den = rng.range(1, b.max(1));
            Scalar::Rational(normalize(num.into(), den.into()).expect("positive denominator"))
        }
        RingSpec::PrimeField(m) => {
            let v = rng.next_u64() % m.get();
            Scalar::from_bigint(v.into(), ring)
        }
    }
}

fn draw_nonzero(rng: &mut SplitMix64, ring: RingSpec, bound: u64) -> Result<Scalar> {
    for _ in 0..MAX_DRAWS {
        let v = draw_scalar(rng, ring, bound);
        if !v.is_zero() {
            return Ok(v);
        }
    }
    Err(Error::RetriesExhausted(MAX_DRAWS))
}

/// A nonscalar matrix of the requested shape; scalar draws are redrawn.
pub fn gen_matrix(spec: &GenSpec) -> Result<Matrix> {
    if spec.n < 2 {
        return Err(Error::OrderTooSmall { needed: 2, found: spec.n });
    }
    if spec.entry_bound == 0 {
        return Err(Error::InvariantViolated("entry bound must be at least 1".into()));
    }
    let (n, ring, bound) = (spec.n, spec.ring, spec.entry_bound);
    let mut rng = SplitMix64::new(spec.seed);
    for _ in 0..MAX_DRAWS {
        let m = match spec.shape {
            Shape::Dense => Matrix::from_fn(n, ring, |_, _| draw_scalar(&mut rng, ring, bound)),
            Shape::Diagonal => {
                let d: Vec<Scalar> = (0..n).map(|_| draw_scalar(&mut rng, ring, bound)).collect();
                Matrix::from_fn(n, ring, |i, j| if i == j { d[i].clone() } else { Scalar::zero(ring) })
            }
            Shape::SparseOneOffdiag => {
                let d: Vec<Scalar> = (0..n).map(|_| draw_scalar(&mut rng, ring, bound)).collect();
                let row = rng.index(n);
                let col = (row + 1 + rng.index(n - 1)) % n;
                let v = draw_nonzero(&mut rng, ring, bound)?;
                Matrix::from_fn(n, ring, |i, j| match (i == j, (i, j) == (row, col)) {
                    (true, _) => d[i].clone(),
                    (false, true) => v.clone(),
                    _ => Scalar::zero(ring),
                })
            }
        };
        if !m.is_scalar() {
            return Ok(m);
        }
    }
    Err(Error::RetriesExhausted(MAX_DRAWS))
}

pub fn gen_diagonal_spec(a: &Matrix, seed: u64) -> DiagonalSpec {
    gen_diagonal_spec_bounded(a, seed, DEFAULT_TARGET_BOUND)
}

/// `γ_1..γ_{n-1}` drawn at random in the ring of `a`, and
/// `γ_n = tr A - Σ_{k<n} γ_k`.
pub fn gen_diagonal_spec_bounded(a: &Matrix, seed: u64, bound: u64) -> DiagonalSpec {
    let ring = a.ring();
    let mut rng = SplitMix64::new(seed);
    let mut targets: Vec<Scalar> = (1..a.order()).map(|_| draw_scalar(&mut rng, ring, bound.max(1))).collect();
    let partial = targets.iter().fold(Scalar::zero(ring), |acc, t| acc + t);
    targets.push(a.trace() - partial);
    DiagonalSpec::new(targets).expect("single ring")
}
