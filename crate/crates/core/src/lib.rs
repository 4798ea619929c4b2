//! Exact construction of a matrix similar to a given nonscalar matrix with
//! any prescribed diagonal whose sum equals the trace.
//!
//! Three solvers are provided:
//!
//! * [`solve_two_step`] over ℚ and GF(p): at most one bump for diagonal
//!   inputs, then two elementary similarities.
//! * [`solve_inductive`] over ℚ and GF(p): `n - 1` basis-change stages,
//!   useful as an independent cross-check.
//! * [`solve_integer`] over ℤ: the result is an integer matrix.
//!
//! Every solver returns a [`Solution`] holding a [`SimilarityWitness`] and a
//! [`ReductionTrace`]; [`verify`] and [`verify_trace`] re-check them without
//! using any solver code.

pub mod bezout;
pub mod charpoly;
pub mod error;
pub mod gen;
pub mod inductive;
pub mod integer;
pub mod matrix;
pub mod scalar;
pub mod trace;
pub mod two_step;
pub mod verify;

pub use bezout::{extended_gcd, gcd, BezoutTriple};
pub use charpoly::CharPoly;
pub use error::{Error, Result};
pub use gen::{gen_diagonal_spec, gen_matrix, GenSpec, Shape, SplitMix64};
pub use inductive::{deflate, deflate_with, solve_inductive, CornerFormula};
pub use integer::{find_unit_entry, solve_integer, UnitEntry};
pub use matrix::{DiagonalSpec, Matrix, SimilarityWitness};
pub use scalar::{Modulus, RingSpec, Scalar};
pub use trace::{ConjugatorRing, ReductionTrace, Solution, StepKind, TraceStep};
pub use two_step::{choose_pivot, diagonal_bump, set_diagonal, solve_two_step, solve_two_step_with_pivot, unify_row, PivotChoice};
pub use verify::{verify, verify_trace, VerificationReport};
