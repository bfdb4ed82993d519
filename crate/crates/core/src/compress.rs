//! Compression `dhat[n][k] = d[2n-k][k]` of double (almost-)Riordan arrays
//! and the compressed-array description of their sequences.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::double::{DarSpec, SeqCharBundle};
use crate::error::{Error, Result};
use crate::expr::series_of;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::riordan::{coeff_at, power_array};
use crate::series::{Parity, Series};

/// Largest `n` with `dhat[n][*]` available from a matrix with `rows` rows.
fn compressed_max(rows: usize) -> Option<usize> {
    rows.checked_sub(1).map(|r| r / 2)
}

/// Compresses to `(n + 1) x (n + 1)`; needs at least `2n + 1` source rows.
pub fn compress_matrix_to(m: &Matrix, n: usize) -> Result<Matrix> {
    if compressed_max(m.rows()).is_none_or(|max| n > max) || m.cols() < m.rows().min(n + 1) {
        return Err(Error::Shape(format!(
            "compressing to {} rows needs {} source rows, found {}",
            n + 1,
            2 * n + 1,
            m.rows()
        )));
    }
    Ok(Matrix::from_fn(n + 1, n + 1, |i, k| {
        if k > i {
            Rational::zero()
        } else {
            m.get(2 * i - k, k).clone()
        }
    }))
}

/// Compresses as far as the source allows.
pub fn compress_matrix(m: &Matrix) -> Result<Matrix> {
    match compressed_max(m.rows()) {
        Some(n) => compress_matrix_to(m, n),
        None => Err(Error::Shape("cannot compress an empty matrix".into())),
    }
}

/// The compressed double Riordan part `(ghat; f1hat, f2hat)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedDouble {
    pub g: Series,
    pub f1: Series,
    pub f2: Series,
}

impl CompressedDouble {
    pub fn new(g: Series, f1: Series, f2: Series) -> Result<CompressedDouble> {
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "ghat must have a nonzero constant term".into(),
            ));
        }
        if f1.order() != 1 || f2.order() != 1 {
            return Err(Error::InvalidSpec(
                "f1hat and f2hat must have order exactly 1".into(),
            ));
        }
        Ok(CompressedDouble {
            g: g.unrestricted(),
            f1: f1.unrestricted(),
            f2: f2.unrestricted(),
        })
    }

    pub fn from_exprs(g: &str, f1: &str, f2: &str, trunc: usize) -> Result<CompressedDouble> {
        CompressedDouble::new(
            series_of(g, trunc)?,
            series_of(f1, trunc)?,
            series_of(f2, trunc)?,
        )
    }

    pub fn identity(trunc: usize) -> CompressedDouble {
        CompressedDouble::new(Series::one(trunc), Series::t(trunc), Series::t(trunc))
            .expect("valid")
    }

    /// `f1hat f2hat`, of order 2.
    pub fn p(&self) -> Series {
        &self.f1 * &self.f2
    }
}

/// Columns `ghat, ghat f1hat, ghat f1hat f2hat, ghat f1hat^2 f2hat, ...`.
pub fn build_compressed_double(cd: &CompressedDouble, n: usize) -> Result<Matrix> {
    let p = cd.p();
    let even = power_array(&cd.g, &p, n + 1, n / 2 + 1)?;
    let odd = power_array(&(&cd.g * &cd.f1), &p, n + 1, n.div_ceil(2))?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, k| {
        if k % 2 == 0 {
            even.get(i, k / 2).clone()
        } else {
            odd.get(i, k / 2).clone()
        }
    }))
}

/// Compressed double almost-Riordan array `(bhat | ghat; f1hat, f2hat)`.
///
/// `bhat` may vanish at the origin, which the total-positivity
/// constructions need; sequence extraction rejects that case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedSpec {
    pub b: Series,
    pub core: CompressedDouble,
}

/// Expression-string form of a [`CompressedSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedSpecText {
    pub b: String,
    pub g: String,
    pub f1: String,
    pub f2: String,
    pub compressed: bool,
}

impl CompressedSpecText {
    pub fn to_spec(&self, trunc: usize) -> Result<CompressedSpec> {
        if !self.compressed {
            return Err(Error::Format("expected \"compressed\": true".into()));
        }
        CompressedSpec::new(
            series_of(&self.b, trunc)?,
            CompressedDouble::from_exprs(&self.g, &self.f1, &self.f2, trunc)?,
        )
    }
}

impl CompressedSpec {
    pub fn new(b: Series, core: CompressedDouble) -> Result<CompressedSpec> {
        Ok(CompressedSpec {
            b: b.unrestricted(),
            core,
        })
    }

    pub fn from_exprs(
        b: &str,
        g: &str,
        f1: &str,
        f2: &str,
        trunc: usize,
    ) -> Result<CompressedSpec> {
        CompressedSpec::new(
            series_of(b, trunc)?,
            CompressedDouble::from_exprs(g, f1, f2, trunc)?,
        )
    }

    /// The uncompressed spec whose compression this is.
    pub fn unhat(&self) -> Result<DarSpec> {
        DarSpec::new(
            self.b.unhat(Parity::Even)?,
            self.core.g.unhat(Parity::Even)?,
            self.core.f1.unhat(Parity::Odd)?,
            self.core.f2.unhat(Parity::Odd)?,
        )
    }

    pub fn agrees_with(&self, other: &CompressedSpec) -> bool {
        self.b.agrees_with(&other.b)
            && self.core.g.agrees_with(&other.core.g)
            && self.core.f1.agrees_with(&other.core.f1)
            && self.core.f2.agrees_with(&other.core.f2)
    }
}

pub fn hat_spec(spec: &DarSpec) -> Result<CompressedSpec> {
    CompressedSpec::new(
        spec.b.hat()?,
        CompressedDouble::new(spec.g.hat()?, spec.f1.hat()?, spec.f2.hat()?)?,
    )
}

/// Column 0 is `bhat`; odd column `k` is `t ghat p^((k-1)/2)` and even
/// column `k >= 2` is `t ghat f1hat p^((k-2)/2)`, with `p = f1hat f2hat`.
pub fn build_compressed(cs: &CompressedSpec, n: usize) -> Result<Matrix> {
    let p = cs.core.p();
    let tg = cs.core.g.shift_up(1);
    let odd = power_array(&tg, &p, n + 1, n.div_ceil(2))?;
    let even = power_array(&(&tg * &cs.core.f1), &p, n + 1, n / 2)?;
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m.set(i, 0, coeff_at(&cs.b, i)?);
        for k in 1..=n {
            let v = if k % 2 == 1 {
                odd.get(i, k / 2)
            } else {
                even.get(i, k / 2 - 1)
            };
            m.set(i, k, v.clone());
        }
    }
    Ok(m)
}

/// Sequences of the uncompressed array, computed from the compressed spec
/// by solving `X(sigma) = rhs` with `sigma = f1hat f2hat / t`.
pub fn compressed_seqchar(cs: &CompressedSpec) -> Result<SeqCharBundle> {
    let b = &cs.b;
    let CompressedDouble { g, f1, f2 } = &cs.core;
    let b0 = b.coeff(0).clone();
    if b0.is_zero() {
        return Err(Error::InvalidSpec(
            "bhat must have a nonzero constant term".into(),
        ));
    }
    let g0 = g.coeff(0).clone();
    let b2 = b.get(1).cloned().unwrap_or_default();
    let z20 = &g0 * f1.coeff(1) / &b0;
    let w0 = &b2 / &b0;

    let p = cs.core.p();
    let sigma = p.shift_down(1)?;
    let n = sigma.trunc();
    let u = Series::t(n + 1);
    let u2g = &(&u * &u) * g;

    let a_rhs = sigma.shift_down(1)?;
    let z1_rhs = (&Series::one(n) - &Series::constant(g0, n).div(g)?).shift_down(1)?;
    let inner = &(g * f1) - &(&u * b).scale(&z20);
    let z2_rhs = &(f2 * &inner).div(&u2g)? + &Series::constant(z20, n);
    let one_minus = &Series::one(n) - &u.scale(&w0);
    let inner = &(b * &one_minus) - &Series::constant(b0, n);
    let w_rhs = &(f2 * &inner).div(&u2g)? + &Series::constant(w0, n);

    let solve =
        |rhs: &Series| -> Result<Series> { rhs.solve_composed(&sigma)?.unhat(Parity::Even) };
    Ok(SeqCharBundle {
        a: solve(&a_rhs)?,
        z1: solve(&z1_rhs)?,
        z2: solve(&z2_rhs)?,
        w: solve(&w_rhs)?,
    })
}

/// Which compressed recurrence an index tuple belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// Columns `k >= 3`, driven by `A`.
    A,
    /// Column 2, driven by `Z2`.
    Z2,
    /// Column 1, driven by `Z1`.
    Z1,
    /// Column 0, driven by `W`.
    W,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceViolation {
    pub recurrence: Recurrence,
    pub row: usize,
    pub col: usize,
    pub expected: Rational,
    pub found: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub checked: usize,
    pub skipped: usize,
    pub violation: Option<RecurrenceViolation>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Coefficient `j` of the hatted form of an even series.
fn hat_coeff(s: &Series, j: usize) -> Option<&Rational> {
    s.get(2 * j)
}

/// Checks the skewed recurrences of a compressed matrix against `bundle`:
///
/// ```text
/// dhat[n][k] = sum_j a_j  dhat[n+j-2][k+2j-2]   (k >= 3)
/// dhat[n][2] = sum_j z2_j dhat[n+j-2][2j]
/// dhat[n][1] = sum_j z1_j dhat[n+j-1][2j+1]
/// dhat[n][0] = sum_j w_j  dhat[n+j-1][2j]
/// ```
///
/// A tuple is checked only when its uncompressed row is at least 2 and
/// every referenced entry on or below the diagonal lies inside `m`, with
/// the needed bundle coefficients available. Rows are scanned in order and
/// the first failure is reported.
pub fn compressed_recurrence_check(m: &Matrix, bundle: &SeqCharBundle) -> RecurrenceReport {
    let size = m.rows().min(m.cols());
    let mut report = RecurrenceReport {
        checked: 0,
        skipped: 0,
        violation: None,
    };
    for n in 0..size {
        for k in 0..=n {
            if 2 * n - k < 2 {
                continue;
            }
            let (rec, seq, row_off, col_base): (Recurrence, &Series, isize, isize) = match k {
                0 => (Recurrence::W, &bundle.w, -1, 0),
                1 => (Recurrence::Z1, &bundle.z1, -1, 1),
                2 => (Recurrence::Z2, &bundle.z2, -2, 0),
                _ => (Recurrence::A, &bundle.a, -2, k as isize - 2),
            };
            let mut sum = Rational::zero();
            let mut complete = true;
            for j in 0.. {
                let row = n as isize + j as isize + row_off;
                let col = col_base + 2 * j as isize;
                if col > row {
                    break;
                }
                let (row, col) = (row as usize, col as usize);
                match hat_coeff(seq, j) {
                    Some(c) if row < size => {
                        if !c.is_zero() {
                            sum += c * m.get(row, col);
                        }
                    }
                    _ => {
                        complete = false;
                        break;
                    }
                }
            }
            if !complete {
                report.skipped += 1;
                continue;
            }
            report.checked += 1;
            if &sum != m.get(n, k) {
                report.violation = Some(RecurrenceViolation {
                    recurrence: rec,
                    row: n,
                    col: k,
                    expected: sum,
                    found: m.get(n, k).clone(),
                });
                return report;
            }
        }
    }
    report
}
