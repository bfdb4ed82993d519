//! Total positivity by exhaustive minor enumeration, Pólya frequency
//! sequences, and the constructive results for compressed arrays.
//!
//! A `tp` verdict is a finite certificate: no negative minor of order at
//! most `r` in the leading `n x n` block.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compress::{
    build_compressed, build_compressed_double, CompressedDouble, CompressedSpec,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::series::Series;

/// Determinant by fraction-free elimination. Rows are first scaled by
/// the positive least common multiple of their denominators.
pub fn det_bareiss(m: &Matrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    Rational::new(bareiss_int(&mut a), scale)
}

fn bareiss_int(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Textbook Laplace expansion along the first row.
pub fn det_cofactor(m: &Matrix) -> Rational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        let a = m.get(0, j);
        if a.is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = a * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| {
        m.get(rows[i], cols[j]).clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Tp,
    NotTp,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Tp => "tp",
            Verdict::NotTp => "not_tp",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReportJson", into = "ReportJson")]
pub struct TpReport {
    pub verdict: Verdict,
    pub n: usize,
    pub max_order: usize,
    pub witness: Option<Witness>,
}

impl TpReport {
    pub fn is_tp(&self) -> bool {
        self.verdict == Verdict::Tp
    }
}

/// Integer matrix whose minors have the signs of those of `m`.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let l = m
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

const FAST_ORDER: usize = 8;

/// Fraction-free elimination in `i128`; `None` on overflow or when the
/// minor is too large for the fixed buffer.
fn bareiss_small(s: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Option<i128> {
    let k = rows.len();
    if k > FAST_ORDER {
        return None;
    }
    let mut a = [[0i128; FAST_ORDER]; FAST_ORDER];
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            a[r][c] = i128::from(s[i][j]);
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..k - 1 {
        if a[p][p] == 0 {
            match (p + 1..k).find(|&i| a[i][p] != 0) {
                Some(i) => {
                    a.swap(i, p);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = a[i][j]
                    .checked_mul(a[p][p])?
                    .checked_sub(a[i][p].checked_mul(a[p][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[p][p];
    }
    Some(sign * a[k - 1][k - 1])
}

fn negative_minor(
    ints: &[Vec<BigInt>],
    small: Option<&[Vec<i64>]>,
    rows: &[usize],
    cols: &[usize],
) -> bool {
    if let Some(d) = small.and_then(|s| bareiss_small(s, rows, cols)) {
        return d < 0;
    }
    let mut sub: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| ints[i][j].clone()).collect())
        .collect();
    bareiss_int(&mut sub).is_negative()
}

/// Visits increasing column sets with `cols[m] <= bound[m]` in
/// lexicographic order and returns the first one accepted by `hit`.
fn first_col_set(
    bound: &[usize],
    start: usize,
    cols: &mut Vec<usize>,
    hit: &mut impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let m = cols.len();
    if m == bound.len() {
        return hit(cols).then(|| cols.clone());
    }
    let remaining = bound.len() - m - 1;
    let last = bound[m].min(bound[bound.len() - 1].saturating_sub(remaining));
    for j in start..=last {
        cols.push(j);
        if let Some(found) = first_col_set(bound, j + 1, cols, hit) {
            return Some(found);
        }
        cols.pop();
    }
    None
}

/// Searches every minor of order `1..=r` of the leading `n x n` block, in
/// the order (order, row subset, column subset), and reports the first
/// negative one. Row subsets of each order are searched in parallel; the
/// reported witness is still the first in that order.
pub fn is_tp(m: &Matrix, n: usize, r: usize) -> TpReport {
    let size = n.min(m.rows()).min(m.cols());
    let block = m.block(size, size).expect("size within bounds");
    let lower = block.is_lower_triangular();
    let ints = integer_rows(&block);
    let small: Option<Vec<Vec<i64>>> = ints
        .iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).ok()).collect())
        .collect();
    for k in 1..=r.min(size) {
        let row_sets: Vec<Vec<usize>> = (0..size).combinations(k).collect();
        let hit = row_sets.par_iter().find_map_first(|rows| {
            // In a lower-triangular block a minor with some j_m > i_m has a
            // zero block too large to leave room for a nonzero term.
            let bound: Vec<usize> = if lower {
                rows.clone()
            } else {
                vec![size - 1; k]
            };
            let mut cols = Vec::with_capacity(k);
            first_col_set(&bound, 0, &mut cols, &mut |cols| {
                negative_minor(&ints, small.as_deref(), rows, cols)
            })
            .map(|cols| (rows.clone(), cols))
        });
        if let Some((rows, cols)) = hit {
            let det = det_bareiss(&submatrix(&block, &rows, &cols));
            return TpReport {
                verdict: Verdict::NotTp,
                n: size,
                max_order: r,
                witness: Some(Witness { rows, cols, det }),
            };
        }
    }
    TpReport {
        verdict: if size < n {
            Verdict::Inconclusive
        } else {
            Verdict::Tp
        },
        n: size,
        max_order: r,
        witness: None,
    }
}

/// Recomputes a witness determinant by cofactor expansion.
pub fn recheck_witness(m: &Matrix, w: &Witness) -> bool {
    let d = det_cofactor(&submatrix(m, &w.rows, &w.cols));
    d == w.det && d.is_negative()
}

/// Lower-triangular Toeplitz matrix `[a_{i-j}]`.
pub fn toeplitz(seq: &[Rational], n: usize) -> Result<Matrix> {
    if seq.len() < n {
        return Err(Error::Shape(format!("need {n} terms, found {}", seq.len())));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if j <= i {
            seq[i - j].clone()
        } else {
            Rational::zero()
        }
    }))
}

pub fn is_pf(seq: &[Rational], n: usize, r: usize) -> Result<TpReport> {
    Ok(is_tp(&toeplitz(seq, n)?, n, r))
}

/// `C t^k e^(gamma t) prod(1 + alpha_j t) / prod(1 - beta_j t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfGenerator {
    pub c: Rational,
    pub k: usize,
    pub gamma: Rational,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

impl PfGenerator {
    pub fn new(
        c: Rational,
        k: usize,
        gamma: Rational,
        alphas: Vec<Rational>,
        betas: Vec<Rational>,
    ) -> Result<PfGenerator> {
        if !c.is_positive() {
            return Err(Error::InvalidSpec("C must be positive".into()));
        }
        if gamma.is_negative() || alphas.iter().chain(&betas).any(Signed::is_negative) {
            return Err(Error::InvalidSpec(
                "PF parameters must be nonnegative".into(),
            ));
        }
        Ok(PfGenerator {
            c,
            k,
            gamma,
            alphas,
            betas,
        })
    }
}

pub fn pf_series(gen: &PfGenerator, trunc: usize) -> Series {
    let mut exp = Vec::with_capacity(trunc + 1);
    let mut term = Rational::one();
    for m in 0..=trunc {
        if m > 0 {
            term = term * &gen.gamma / Rational::from_integer(m.into());
        }
        exp.push(term.clone());
    }
    let mut acc = Series::from_coeffs(exp);
    for a in &gen.alphas {
        let lin = Series::from_coeffs(
            (0..=trunc)
                .map(|i| match i {
                    0 => Rational::one(),
                    1 => a.clone(),
                    _ => Rational::zero(),
                })
                .collect(),
        );
        acc = &acc * &lin;
    }
    for b in &gen.betas {
        let geo = Series::from_coeffs((0..=trunc).map(|i| num_traits::pow(b.clone(), i)).collect());
        acc = &acc * &geo;
    }
    let scaled = acc.scale(&gen.c).shift_up(gen.k);
    scaled.truncate(trunc).unrestricted()
}

/// Which exact identities of the factorization ladder held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ladder {
    /// `M = (ghat; t, t)(1; f1hat, f2hat)`.
    pub factorization: bool,
    /// `H1 = T1 ([1] (+) H2)`.
    pub h1: bool,
    /// `H2 = T2 ([1] (+) H1)`.
    pub h2: bool,
}

impl Ladder {
    pub fn holds(&self) -> bool {
        self.factorization && self.h1 && self.h2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm61Report {
    pub report: TpReport,
    pub ladder: Ladder,
}

fn drop_first(m: &Matrix) -> Matrix {
    Matrix::from_fn(m.rows() - 1, m.cols() - 1, |i, j| {
        m.get(i + 1, j + 1).clone()
    })
}

fn series_toeplitz(s: &Series, n: usize) -> Result<Matrix> {
    let seq: Vec<Rational> = (0..n)
        .map(|i| {
            s.get(i).cloned().ok_or(Error::Trunc {
                needed: i,
                available: s.trunc(),
            })
        })
        .collect::<Result<_>>()?;
    toeplitz(&seq, n)
}

/// Builds `(ghat; f1hat, f2hat)` at size `n`, tests it for total
/// positivity and checks the factorization through Toeplitz blocks
/// `T_i = [f_i/t]` that underlies the positivity argument.
pub fn tp_check_thm61(core: &CompressedDouble, n: usize, r: usize) -> Result<Thm61Report> {
    if n < 2 {
        return Err(Error::Shape("need n >= 2".into()));
    }
    let m = build_compressed_double(core, n - 1)?;
    let report = is_tp(&m, n, r);

    let t_g = series_toeplitz(&core.g, n)?;
    let trunc = core.f1.trunc().min(core.f2.trunc());
    let m1 = build_compressed_double(
        &CompressedDouble::new(Series::one(trunc), core.f1.clone(), core.f2.clone())?,
        n - 1,
    )?;
    let factorization = t_g.mul(&m1)? == m;

    let swapped = build_compressed_double(
        &CompressedDouble::new(Series::one(trunc), core.f2.clone(), core.f1.clone())?,
        n - 1,
    )?;
    let h1 = drop_first(&m1);
    let h2 = drop_first(&swapped);
    let t1 = series_toeplitz(&core.f1.shift_down(1)?, n - 1)?;
    let t2 = series_toeplitz(&core.f2.shift_down(1)?, n - 1)?;
    let h2_small = h2.truncate(n - 2)?.one_plus();
    let h1_small = h1.truncate(n - 2)?.one_plus();
    let ladder = Ladder {
        factorization,
        h1: t1.mul(&h2_small)? == h1,
        h2: t2.mul(&h1_small)? == h2,
    };
    Ok(Thm61Report { report, ladder })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpConstruction {
    pub spec: CompressedSpec,
    pub report: TpReport,
}

fn require_tp_base(core: &CompressedDouble, n: usize, r: usize) -> Result<()> {
    let base = is_tp(&build_compressed_double(core, n - 1)?, n, r);
    match base.witness {
        None if base.is_tp() => Ok(()),
        Some(w) => Err(Error::NonTpBase(format!(
            "minor rows {:?} cols {:?} has determinant {}",
            w.rows,
            w.cols,
            format_rational(&w.det)
        ))),
        None => Err(Error::NonTpBase(
            "base could not be certified at this size".into(),
        )),
    }
}

fn construct(b: Series, core: &CompressedDouble, n: usize, r: usize) -> Result<TpConstruction> {
    if n < 2 {
        return Err(Error::Shape("need n >= 2".into()));
    }
    require_tp_base(core, n, r)?;
    let spec = CompressedSpec::new(b, core.clone())?;
    let report = is_tp(&build_compressed(&spec, n - 1)?, n, r);
    Ok(TpConstruction { spec, report })
}

/// `(b0 + b1 t | ghat; f1hat, f2hat)` over a base certified TP at `(n, r)`.
pub fn tp_build_linear_b(
    b0: &Rational,
    b1: &Rational,
    core: &CompressedDouble,
    n: usize,
    r: usize,
) -> Result<TpConstruction> {
    if b0.is_negative() || b1.is_negative() {
        return Err(Error::InvalidSpec("b0 and b1 must be nonnegative".into()));
    }
    let trunc = core.g.trunc();
    let b = Series::from_coeffs(
        (0..=trunc)
            .map(|i| match i {
                0 => b0.clone(),
                1 => b1.clone(),
                _ => Rational::zero(),
            })
            .collect(),
    );
    construct(b, core, n, r)
}

/// `(t ghat + alpha | ghat; f1hat, f2hat)` over a base certified TP at `(n, r)`.
pub fn tp_build_tg_alpha(
    alpha: &Rational,
    core: &CompressedDouble,
    n: usize,
    r: usize,
) -> Result<TpConstruction> {
    if !alpha.is_positive() {
        return Err(Error::InvalidSpec("alpha must be positive".into()));
    }
    let tg = core.g.shift_up(1);
    let b = &tg + &Series::constant(alpha.clone(), tg.trunc());
    construct(b, core, n, r)
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    rows: Vec<usize>,
    cols: Vec<usize>,
    det: String,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    verdict: String,
    n: usize,
    max_order: usize,
    witness: Option<WitnessJson>,
}

impl From<TpReport> for ReportJson {
    fn from(r: TpReport) -> Self {
        ReportJson {
            verdict: r.verdict.as_str().into(),
            n: r.n,
            max_order: r.max_order,
            witness: r.witness.map(|w| WitnessJson {
                rows: w.rows,
                cols: w.cols,
                det: format_rational(&w.det),
            }),
        }
    }
}

impl TryFrom<ReportJson> for TpReport {
    type Error = Error;

    fn try_from(j: ReportJson) -> Result<TpReport> {
        let verdict = match j.verdict.as_str() {
            "tp" => Verdict::Tp,
            "not_tp" => Verdict::NotTp,
            "inconclusive" => Verdict::Inconclusive,
            other => return Err(Error::Format(format!("unknown verdict {other:?}"))),
        };
        let witness = match j.witness {
            Some(w) => Some(Witness {
                rows: w.rows,
                cols: w.cols,
                det: parse_rational(&w.det)?,
            }),
            None => None,
        };
        if witness.is_some() != (verdict == Verdict::NotTp) {
            return Err(Error::Format(
                "a witness accompanies exactly the not_tp verdict".into(),
            ));
        }
        Ok(TpReport {
            verdict,
            n: j.n,
            max_order: j.max_order,
            witness,
        })
    }
}
