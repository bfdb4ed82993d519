//! Named arrays, rules and printed reference tables used by the self-test,
//! the acceptance suite and the benchmarks.

use crate::compress::{CompressedDouble, CompressedSpec};
use crate::double::{DarSpec, DoubleSpec};
use crate::eco::SuccessionRule;
use crate::error::Result;
use crate::expr::series_of;
use crate::riordan::RiordanSpec;
use crate::series::Series;

/// `(1/(1-t^4) | 1/(1-t^2); t, t/(1-t^2))`.
pub fn example_dar(trunc: usize) -> Result<DarSpec> {
    DarSpec::from_exprs("1/(1-t^4)", "1/(1-t^2)", "t", "t/(1-t^2)", trunc)
}

/// First ten rows of [`example_dar`] as printed.
pub const EXAMPLE_DAR_ROWS: [[i64; 10]; 10] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 2, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 2, 0, 1, 0, 0, 0],
    [0, 1, 0, 3, 0, 3, 0, 1, 0, 0],
    [1, 0, 1, 0, 3, 0, 3, 0, 1, 0],
    [0, 1, 0, 4, 0, 6, 0, 4, 0, 1],
];

/// Production matrix of [`example_dar`] as printed, ten rows by eleven columns.
pub const EXAMPLE_DAR_PRODUCTION: [[i64; 11]; 10] = [
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
    [-1, 0, -1, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [2, 0, 2, 0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0],
    [-4, 0, -4, 0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
];

/// Coefficients of `Z2` and `W` through degree 10.
pub const EXAMPLE_Z2: [i64; 11] = [1, 0, 1, 0, -1, 0, 2, 0, -4, 0, 8];
pub const EXAMPLE_W: [i64; 11] = [0, 0, 1, 0, -1, 0, 2, 0, -4, 0, 8];

/// `(1/(1-t^2); t, t/(1-t^2))`.
pub fn fibonacci_stanley_double(trunc: usize) -> Result<DoubleSpec> {
    DoubleSpec::from_exprs("1/(1-t^2)", "t", "t/(1-t^2)", trunc)
}

/// Its compression `(1/(1-t); t, t/(1-t))`.
pub fn fibonacci_stanley_core(trunc: usize) -> Result<CompressedDouble> {
    CompressedDouble::from_exprs("1/(1-t)", "t", "t/(1-t)", trunc)
}

pub fn example_hat(trunc: usize) -> Result<CompressedSpec> {
    CompressedSpec::from_exprs("1/(1-t^2)", "1/(1-t)", "t", "t/(1-t)", trunc)
}

pub const FIBONACCI_STANLEY_ROWS: [&[i64]; 6] = [
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 2, 1],
    &[1, 1, 3, 2, 1],
    &[1, 1, 4, 3, 3, 1],
];

pub fn pascal(trunc: usize) -> Result<RiordanSpec> {
    RiordanSpec::new(series_of("1/(1-t)", trunc)?, series_of("t/(1-t)", trunc)?)
}

pub const PASCAL_ROWS: [&[i64]; 5] = [&[1], &[1, 1], &[1, 2, 1], &[1, 3, 3, 1], &[1, 4, 6, 4, 1]];

/// The Pascal production matrix as printed; it does not generate Pascal.
pub const PASCAL_PRODUCTION_PRINTED: [[i64; 5]; 4] = [
    [1, 1, 0, 0, 0],
    [1, 1, 1, 0, 0],
    [0, 0, 1, 1, 0],
    [0, 0, 0, 1, 1],
];

/// Catalan triangle `(c, t c)` with `c = 1 + t c^2`.
pub fn catalan(trunc: usize) -> Result<RiordanSpec> {
    let mut c = Series::one(trunc);
    for _ in 0..=trunc {
        c = &Series::one(trunc) + &(&c * &c).shift_up(1).truncate(trunc);
    }
    let f = c.shift_up(1).truncate(trunc);
    RiordanSpec::new(c, f)
}

/// `((1+t)^2 | 1/(1-t); t, t)`, whose compressed double part is TP but
/// which has a negative minor of order three.
pub fn not_tp_spec(trunc: usize) -> Result<CompressedSpec> {
    CompressedSpec::from_exprs("(1+t)^2", "1/(1-t)", "t", "t", trunc)
}

pub const NOT_TP_WITNESS_ROWS: [usize; 3] = [1, 2, 3];
pub const NOT_TP_WITNESS_COLS: [usize; 3] = [0, 1, 2];
pub const NOT_TP_WITNESS_DET: i64 = -1;

/// `(k) -> (k)(k+1)`, which yields Pascal's triangle.
pub fn pascal_rule(window: usize) -> Result<SuccessionRule> {
    SuccessionRule::from_fn(0, window, |k| vec![k, k + 1])
}

/// `(2l) -> (2l)(2l+1)`, `(2l+1) -> (2l+2)`, which yields the
/// Fibonacci–Stanley array when started at label 0.
pub fn fibonacci_stanley_rule(axiom: usize, window: usize) -> Result<SuccessionRule> {
    SuccessionRule::from_fn(axiom, window, |k| {
        if k % 2 == 0 {
            vec![k, k + 1]
        } else {
            vec![k + 1]
        }
    })
}

pub const FIBONACCI: [u64; 12] = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144];
