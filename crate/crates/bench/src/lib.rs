//! Benchmark workloads for riordan-core.
//!
//! Each workload is a plain function so the benches and any ad hoc
//! profiling run exactly the same code.

use riordan_core::compress::{build_compressed, hat_spec};
use riordan_core::double::{build_dar, dar_inverse, dar_mul, dar_seqchar, DarSpec, SeqCharBundle};
use riordan_core::tp::{is_tp, TpReport};
use riordan_core::{Matrix, Result};

/// The four-component example used throughout the test suites.
pub fn example(trunc: usize) -> DarSpec {
    DarSpec::from_exprs("1/(1-t^4)", "1/(1-t^2)", "t", "t/(1-t^2)", trunc).expect("valid example")
}

pub fn build(spec: &DarSpec, n: usize) -> Result<Matrix> {
    build_dar(spec, n)
}

pub fn square_and_invert(spec: &DarSpec) -> Result<DarSpec> {
    dar_inverse(&dar_mul(spec, spec)?)
}

pub fn sequences(spec: &DarSpec) -> Result<SeqCharBundle> {
    dar_seqchar(spec)
}

pub fn compressed(spec: &DarSpec, n: usize) -> Result<Matrix> {
    build_compressed(&hat_spec(spec)?, n)
}

pub fn minor_search(m: &Matrix, n: usize, order: usize) -> TpReport {
    is_tp(m, n, order)
}
