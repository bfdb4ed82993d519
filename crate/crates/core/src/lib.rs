//! Exact Riordan, quasi-, almost-, double and double almost-Riordan arrays
//! over the rationals, with compression, succession rules and total
//! positivity checks.

pub mod compress;
pub mod double;
pub mod eco;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod matrix;
pub mod rational;
pub mod riordan;
pub mod sample;
pub mod series;
pub mod tp;

pub use compress::{
    build_compressed, build_compressed_double, compress_matrix, compress_matrix_to,
    compressed_recurrence_check, compressed_seqchar, hat_spec, CompressedDouble, CompressedSpec,
    CompressedSpecText,
};
pub use double::{
    build_dar, build_double, dar_inverse, dar_mul, dar_production, dar_seqchar, dar_seqchar_oracle,
    split_parity, DarSpec, DarSpecText, DoubleSpec, SeqCharBundle,
};
pub use eco::{generate_from_production, rule_levels, rule_production, SuccessionRule};
pub use error::{Error, Result};
pub use expr::{eval_series, parse, series_of, Expr};
pub use matrix::Matrix;
pub use rational::Rational;
pub use riordan::{build_riordan, riordan_seqchar, AlmostSpec, QuasiSpec, RiordanSpec, AZ};
pub use series::{Parity, QBundle, Series};
pub use tp::{is_pf, is_tp, pf_series, PfGenerator, TpReport, Verdict};
