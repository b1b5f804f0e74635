//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use jordan_core::{FieldSpec, JordanAlgebra, LinearMap, Matrix, Scalar};
use rand::Rng;

/// Small rationals `a/b` with `|a| <= 4`, `1 <= b <= 3`, zero about a third
/// of the time so that rank deficiency is common.
pub fn scalar(rng: &mut impl Rng, field: FieldSpec) -> Scalar {
    if rng.gen_ratio(1, 3) {
        return field.zero();
    }
    match field.modulus() {
        Some(p) => field.from_i64(rng.gen_range(0..p as i64)),
        None => field.from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap(),
    }
}

pub fn matrix(rng: &mut impl Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| scalar(rng, field)).collect())
        .collect();
    Matrix::from_rows(field, cols, data).unwrap()
}

pub fn vector(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| scalar(rng, field)).collect()
}

pub fn linear_map(rng: &mut impl Rng, field: FieldSpec, n: usize, m: usize) -> LinearMap {
    LinearMap::from_images(field, n, m, (0..n).map(|_| vector(rng, field, m)).collect()).unwrap()
}

/// Row `i` of `m` times `v`, computed entry by entry.
pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(m.field().zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `x o y` straight from the structure constants.
pub fn multiply(j: &JordanAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = j.dim();
    let mut out = j.field().vector_zero(n);
    for (a, xa) in x.iter().enumerate() {
        for (b, yb) in y.iter().enumerate() {
            let c = xa * yb;
            if c.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o = &*o + &(&c * j.constant(a, b, k));
            }
        }
    }
    out
}
