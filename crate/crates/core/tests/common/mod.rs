#![allow(dead_code)]

pub mod mutants;

use fillmore_core::{Matrix, RingSpec, Scalar, SplitMix64};
use fillmore_core::gen::draw_scalar;

pub const Q: RingSpec = RingSpec::Rational;
pub const Z: RingSpec = RingSpec::Integer;

pub fn gf(p: u64) -> RingSpec {
    RingSpec::prime_field(p).unwrap()
}

/// ℚ plus GF(2), GF(3), GF(5), GF(7).
pub fn fields() -> Vec<RingSpec> {
    vec![Q, gf(2), gf(3), gf(5), gf(7)]
}

/// Matrix from canonical strings, e.g. `"17/5"`.
pub fn parse(ring: RingSpec, rows: &[&[&str]]) -> Matrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    Matrix::from_strings(ring, &rows).unwrap()
}

pub fn table(ring: RingSpec, rows: &[[&str; 5]]) -> Matrix {
    let rows: Vec<&[&str]> = rows.iter().map(|r| &r[..]).collect();
    parse(ring, &rows)
}

/// Canonical text of every entry, row by row.
pub fn texts(rows: &[[&str; 5]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

/// The 5×5 matrix of the worked examples.
pub fn worked_a(ring: RingSpec) -> Matrix {
    Matrix::from_i64(
        ring,
        &[
            &[4, 0, 4, -3, 5],
            &[2, 3, 0, 2, 3],
            &[0, -2, 2, 5, 4],
            &[7, 1, 3, 4, 0],
            &[2, 5, 3, 0, -2],
        ],
    )
    .unwrap()
}

pub const WORKED_GAMMA: [i64; 5] = [3, 5, -2, 6, -1];

pub fn worked_b1() -> Matrix {
    Matrix::from_i64(
        Q,
        &[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[-1, -3, 0, 5, 3],
            &[0, 0, 0, 0, 1],
        ],
    )
    .unwrap()
}

pub const B1_A_B1INV: [[&str; 5]; 5] = [
    ["17/5", "-9/5", "4", "-3/5", "34/5"],
    ["12/5", "21/5", "0", "2/5", "9/5"],
    ["1", "1", "2", "1", "1"],
    ["172/5", "106/5", "20", "17/5", "-151/5"],
    ["2", "5", "3", "0", "-2"],
];

pub fn worked_b1_a_b1inv() -> Matrix {
    table(Q, &B1_A_B1INV)
}

pub const B2: [[&str; 5]; 5] = [
    ["1", "0", "-2/5", "0", "0"],
    ["0", "1", "4/5", "0", "0"],
    ["0", "0", "1", "0", "0"],
    ["0", "0", "13/5", "1", "0"],
    ["0", "0", "1", "0", "1"],
];

pub fn worked_b2() -> Matrix {
    table(Q, &B2)
}

pub const FINAL: [[&str; 5]; 5] = [
    ["3", "-11/5", "59/25", "-1", "32/5"],
    ["16/5", "5", "-171/25", "6/5", "13/5"],
    ["1", "1", "-2", "1", "1"],
    ["37", "119/5", "824/25", "6", "-138/5"],
    ["3", "6", "-1/5", "1", "-1"],
];

pub fn worked_final() -> Matrix {
    table(Q, &FINAL)
}

pub fn integer_intermediate() -> Matrix {
    Matrix::from_i64(
        Z,
        &[
            &[4, 0, 4, -3, 5],
            &[60, -6, 37, -6, 37],
            &[12, -2, 6, 5, 2],
            &[1, 1, 1, 4, 1],
            &[-28, 5, -7, 0, 3],
        ],
    )
    .unwrap()
}

pub fn integer_final() -> Matrix {
    Matrix::from_i64(
        Z,
        &[
            &[3, -1, 3, 47, 4],
            &[71, 5, 48, 630, 48],
            &[4, -10, -2, 47, -6],
            &[1, 1, 1, 6, 1],
            &[-32, 1, -11, -151, -1],
        ],
    )
    .unwrap()
}

/// Polynomial with coefficients lowest degree first.
type Poly = Vec<Scalar>;

fn poly_mul(a: &Poly, b: &Poly, ring: RingSpec) -> Poly {
    let mut out = vec![Scalar::zero(ring); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// `det(xI - A)` by Leibniz expansion over polynomial entries.
pub fn leibniz_char_poly(a: &Matrix) -> Vec<Scalar> {
    let ring = a.ring();
    let n = a.order();
    let entry = |i: usize, j: usize| -> Poly {
        let c = -a.get(i, j);
        if i == j {
            vec![c, Scalar::one(ring)]
        } else {
            vec![c]
        }
    };
    let mut total = vec![Scalar::zero(ring); n + 1];
    for p in permutations(n) {
        let mut term = vec![Scalar::one(ring)];
        for (i, &j) in p.iter().enumerate() {
            term = poly_mul(&term, &entry(i, j), ring);
        }
        for (k, c) in term.into_iter().enumerate() {
            total[k] = if parity(&p) { &total[k] - &c } else { &total[k] + &c };
        }
    }
    total
}

pub fn random_matrix(rng: &mut SplitMix64, n: usize, ring: RingSpec, bound: u64) -> Matrix {
    Matrix::from_fn(n, ring, |_, _| draw_scalar(rng, ring, bound))
}

/// Random nonsingular matrix by rejection on the determinant.
pub fn random_invertible(rng: &mut SplitMix64, n: usize, ring: RingSpec, bound: u64) -> Matrix {
    loop {
        let m = random_matrix(rng, n, ring, bound);
        if !m.lift().determinant().is_zero() {
            return m;
        }
    }
}

/// `P·A = B·P` with `P` nonsingular, checked without inverting anything.
pub fn is_similarity(a: &Matrix, p: &Matrix, b: &Matrix) -> bool {
    let (a, p, b) = (a.lift(), p.lift(), b.lift());
    !p.determinant().is_zero() && p.multiply_lifted(&a).unwrap().same_values(&b.multiply_lifted(&p).unwrap())
}
