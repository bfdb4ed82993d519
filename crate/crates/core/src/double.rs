//! Double Riordan arrays `(g; f1, f2)` and double almost-Riordan arrays
//! `(b | g; f1, f2)`.
//!
//! Throughout, `s = f1 f2` is even of order 2 and `r` is the compositional
//! inverse of `hat(f1) hat(f2) / t` (see [`qbar`]). Formulas that would
//! evaluate a series at the compositional inverse of `sqrt(s)` are carried
//! out on hatted series evaluated at `r` and then unhatted.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::series_of;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::riordan::{coeff_at, power_array, verify_shift};
use crate::series::{qbar, subst_sqrt_even, twisted_odd_subst, Parity, Series};

fn tag(s: &Series, parity: Parity, name: &str) -> Result<Series> {
    s.clone()
        .with_parity(parity)
        .map_err(|_| Error::Parity(format!("{name} must be {}", parity.as_str())))
}

fn check_multipliers(f1: &Series, f2: &Series) -> Result<(Series, Series)> {
    let f1 = tag(f1, Parity::Odd, "f1")?;
    let f2 = tag(f2, Parity::Odd, "f2")?;
    if f1.order() != 1 || f2.order() != 1 {
        return Err(Error::InvalidSpec(
            "f1 and f2 must have order exactly 1".into(),
        ));
    }
    Ok((f1, f2))
}

/// Double Riordan array with columns `g, g f1, g f1 f2, g f1^2 f2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSpec {
    pub g: Series,
    pub f1: Series,
    pub f2: Series,
}

impl DoubleSpec {
    pub fn new(g: Series, f1: Series, f2: Series) -> Result<DoubleSpec> {
        let g = tag(&g, Parity::Even, "g")?;
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "g must have a nonzero constant term".into(),
            ));
        }
        let (f1, f2) = check_multipliers(&f1, &f2)?;
        Ok(DoubleSpec { g, f1, f2 })
    }

    pub fn identity(trunc: usize) -> DoubleSpec {
        DoubleSpec::new(Series::one(trunc), Series::t(trunc), Series::t(trunc))
            .expect("identity is valid")
    }

    pub fn from_exprs(g: &str, f1: &str, f2: &str, trunc: usize) -> Result<DoubleSpec> {
        DoubleSpec::new(
            series_of(g, trunc)?,
            series_of(f1, trunc)?,
            series_of(f2, trunc)?,
        )
    }

    pub fn s(&self) -> Series {
        &self.f1 * &self.f2
    }

    pub fn agrees_with(&self, other: &DoubleSpec) -> bool {
        self.g.agrees_with(&other.g)
            && self.f1.agrees_with(&other.f1)
            && self.f2.agrees_with(&other.f2)
    }
}

/// Interleaves two power arrays: even columns from `even`, odd from `odd`.
fn interleave(even: &Matrix, odd: &Matrix, rows: usize) -> Matrix {
    Matrix::from_fn(rows, rows, |i, k| {
        if k % 2 == 0 {
            even.get(i, k / 2).clone()
        } else {
            odd.get(i, k / 2).clone()
        }
    })
}

pub fn build_double(spec: &DoubleSpec, n: usize) -> Result<Matrix> {
    let s = spec.s();
    let even = power_array(&spec.g, &s, n + 1, n / 2 + 1)?;
    let odd = power_array(&(&spec.g * &spec.f1), &s, n + 1, n.div_ceil(2))?;
    Ok(interleave(&even, &odd, n + 1))
}

/// Image of the column vector with generating function `u`.
pub fn double_apply(spec: &DoubleSpec, u: &Series) -> Result<Series> {
    let s = spec.s();
    match u.clone().infer_parity().parity() {
        Parity::Even => Ok(&spec.g * &subst_sqrt_even(&u.clone().infer_parity(), &s)?),
        Parity::Odd => Ok(&spec.g * &twisted_odd_subst(&u.clone().infer_parity(), &spec.f1, &s)?),
        Parity::Unrestricted => Err(Error::Parity("argument mixes even and odd terms".into())),
    }
}

/// `(g; f1, f2)(d; h1, h2) = (g d(sqrt s); f1 H1(s), f2 H2(s))` with
/// `h_i = t H_i(t^2)`.
pub fn double_mul(a: &DoubleSpec, b: &DoubleSpec) -> Result<DoubleSpec> {
    let s = a.s();
    DoubleSpec::new(
        &a.g * &subst_sqrt_even(&b.g, &s)?,
        twisted_odd_subst(&b.f1, &a.f1, &s)?,
        twisted_odd_subst(&b.f2, &a.f2, &s)?,
    )
}

/// Inverse multipliers in hatted form: `u r / hat(f_i)(r)`, unhatted.
fn inverse_multipliers(f1: &Series, f2: &Series, r: &Series) -> Result<(Series, Series)> {
    let u = Series::t(r.trunc() + 1);
    let ur = &u * r;
    let g1 = ur.div(&f1.hat()?.compose(r)?)?;
    let g2 = ur.div(&f2.hat()?.compose(r)?)?;
    Ok((g1.unhat(Parity::Odd)?, g2.unhat(Parity::Odd)?))
}

pub fn double_inverse(a: &DoubleSpec) -> Result<DoubleSpec> {
    let qb = qbar(&a.f1, &a.f2)?;
    let g = a.g.hat()?.compose(&qb.r)?.recip()?.unhat(Parity::Even)?;
    let (f1, f2) = inverse_multipliers(&a.f1, &a.f2, &qb.r)?;
    DoubleSpec::new(g, f1, f2)
}

/// Sequences `A1, A2, Z` of a double Riordan array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSeqChar {
    pub a1: Series,
    pub a2: Series,
    pub z: Series,
}

pub fn double_seqchar(spec: &DoubleSpec) -> Result<DoubleSeqChar> {
    let r = qbar(&spec.f1, &spec.f2)?.r;
    let u = Series::t(r.trunc() + 1);
    let a1 = spec.f1.hat()?.compose(&r)?.div(&r)?;
    let a2 = u.div(&r)?;
    let g_r = spec.g.hat()?.compose(&r)?;
    let g0 = Series::constant(spec.g.coeff(0).clone(), g_r.trunc());
    let z = (&Series::one(g_r.trunc()) - &g0.div(&g_r)?).div(&r)?;
    let bundle = DoubleSeqChar {
        a1: a1.unhat(Parity::Even)?,
        a2: a2.unhat(Parity::Even)?,
        z: z.unhat(Parity::Even)?,
    };
    check_double_seqchar(spec, &bundle)?;
    Ok(bundle)
}

fn check_double_seqchar(spec: &DoubleSpec, b: &DoubleSeqChar) -> Result<()> {
    let s = spec.s();
    let t = Series::t(s.trunc());
    let lhs = &t * &subst_sqrt_even(&b.a1, &s)?;
    if !lhs.agrees_with(&spec.f1) {
        return Err(Error::Verification("f1 != t A1(sqrt(f1 f2))".into()));
    }
    let lhs = &(&t * &t) * &subst_sqrt_even(&b.a2, &s)?;
    if !lhs.agrees_with(&s) {
        return Err(Error::Verification("f1 f2 != t^2 A2(sqrt(f1 f2))".into()));
    }
    let tz = &(&t * &t) * &subst_sqrt_even(&b.z, &s)?;
    let lhs = &spec.g * &(&Series::one(tz.trunc()) - &tz);
    if !lhs.agrees_with(&Series::constant(spec.g.coeff(0).clone(), lhs.trunc())) {
        return Err(Error::Verification(
            "g (1 - t^2 Z(sqrt(f1 f2))) != g(0)".into(),
        ));
    }
    Ok(())
}

/// Double almost-Riordan array with columns `b, t g, t g f1, t g f1 f2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarSpec {
    pub b: Series,
    pub g: Series,
    pub f1: Series,
    pub f2: Series,
}

/// Expression-string form of a [`DarSpec`], as read from JSON files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DarSpecText {
    pub b: String,
    pub g: String,
    pub f1: String,
    pub f2: String,
}

impl DarSpecText {
    pub fn to_spec(&self, trunc: usize) -> Result<DarSpec> {
        DarSpec::from_exprs(&self.b, &self.g, &self.f1, &self.f2, trunc)
    }
}

impl DarSpec {
    pub fn new(b: Series, g: Series, f1: Series, f2: Series) -> Result<DarSpec> {
        let b = tag(&b, Parity::Even, "b")?;
        let g = tag(&g, Parity::Even, "g")?;
        if b.coeff(0).is_zero() || g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "b and g must have nonzero constant terms".into(),
            ));
        }
        let (f1, f2) = check_multipliers(&f1, &f2)?;
        Ok(DarSpec { b, g, f1, f2 })
    }

    pub fn identity(trunc: usize) -> DarSpec {
        DarSpec::new(
            Series::one(trunc),
            Series::one(trunc),
            Series::t(trunc),
            Series::t(trunc),
        )
        .expect("identity is valid")
    }

    pub fn from_exprs(b: &str, g: &str, f1: &str, f2: &str, trunc: usize) -> Result<DarSpec> {
        DarSpec::new(
            series_of(b, trunc)?,
            series_of(g, trunc)?,
            series_of(f1, trunc)?,
            series_of(f2, trunc)?,
        )
    }

    pub fn s(&self) -> Series {
        &self.f1 * &self.f2
    }

    pub fn trunc(&self) -> usize {
        [&self.b, &self.g, &self.f1, &self.f2]
            .iter()
            .map(|s| s.trunc())
            .min()
            .unwrap_or(0)
    }

    pub fn truncate(&self, trunc: usize) -> DarSpec {
        DarSpec {
            b: self.b.truncate(trunc),
            g: self.g.truncate(trunc),
            f1: self.f1.truncate(trunc),
            f2: self.f2.truncate(trunc),
        }
    }

    /// `w0 = b2 / b0`.
    pub fn w0(&self) -> Rational {
        self.b.get(2).cloned().unwrap_or_default() / self.b.coeff(0)
    }

    /// `z_{2,0} = g0 f_{1,1} / b0`.
    pub fn z20(&self) -> Rational {
        self.g.coeff(0) * self.f1.coeff(1) / self.b.coeff(0)
    }

    /// The embedded double Riordan part `(g; f1, f2)`.
    pub fn double_part(&self) -> DoubleSpec {
        DoubleSpec {
            g: self.g.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
        }
    }

    pub fn agrees_with(&self, other: &DarSpec) -> bool {
        self.b.agrees_with(&other.b)
            && self.g.agrees_with(&other.g)
            && self.f1.agrees_with(&other.f1)
            && self.f2.agrees_with(&other.f2)
    }
}

pub fn build_dar(spec: &DarSpec, n: usize) -> Result<Matrix> {
    let s = spec.s();
    let tg = spec.g.shift_up(1);
    let odd = power_array(&tg, &s, n + 1, n.div_ceil(2))?;
    let even = power_array(&(&tg * &spec.f1), &s, n + 1, n / 2)?;
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m.set(i, 0, coeff_at(&spec.b, i)?);
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

/// Image of the column vector with generating function `u`:
/// `u0 b + t g f1 V(s)` for even `u` with `hat(u) = u0 + x V(x)`, and
/// `t g U(s)` for odd `u` with `hat(u) = x U(x)`.
pub fn dar_apply(spec: &DarSpec, u: &Series) -> Result<Series> {
    let u = u.clone().infer_parity();
    let s = spec.s();
    let tg = spec.g.shift_up(1);
    match u.parity() {
        Parity::Even => {
            let u0 = u.coeff(0).clone();
            let hat = u.hat()?;
            let v = (&hat - &Series::constant(u0.clone(), hat.trunc())).shift_down(1)?;
            let tail = &(&tg * &spec.f1) * &v.compose(&s)?;
            Ok(&spec.b.scale(&u0) + &tail)
        }
        Parity::Odd => {
            let big_u = u.hat()?.shift_down(1)?;
            Ok(&tg * &big_u.compose(&s)?)
        }
        Parity::Unrestricted => Err(Error::Parity("argument mixes even and odd terms".into())),
    }
}

/// `(b | g; f1, f2)(c | d; h1, h2)
///   = ((b | g; f1, f2) c | g d(sqrt s); f1 H1(s), f2 H2(s))`.
pub fn dar_mul(a: &DarSpec, c: &DarSpec) -> Result<DarSpec> {
    let s = a.s();
    DarSpec::new(
        dar_apply(a, &c.b)?,
        &a.g * &subst_sqrt_even(&c.g, &s)?,
        twisted_odd_subst(&c.f1, &a.f1, &s)?,
        twisted_odd_subst(&c.f2, &a.f2, &s)?,
    )
}

pub fn dar_inverse(a: &DarSpec) -> Result<DarSpec> {
    let r = qbar(&a.f1, &a.f2)?.r;
    let g_r = a.g.hat()?.compose(&r)?;
    let g = g_r.recip()?.unhat(Parity::Even)?;
    let (f1, f2) = inverse_multipliers(&a.f1, &a.f2, &r)?;

    let b0 = a.b.coeff(0).clone();
    let big_f2 = a.f2.hat()?.compose(&r)?.div(&r)?;
    let b_r = a.b.hat()?.compose(&r)?;
    let diff = &Series::constant(b0.clone(), b_r.trunc()) - &b_r;
    let corr = (&big_f2 * &diff).div(&g_r.scale(&b0))?;
    let b_hat = &Series::constant(b0.recip(), corr.trunc()) + &corr;
    DarSpec::new(b_hat.unhat(Parity::Even)?, g, f1, f2)
}

/// Sequences `A, Z1, Z2, W` of a double almost-Riordan array (all even).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqCharBundle {
    pub a: Series,
    pub z1: Series,
    pub z2: Series,
    pub w: Series,
}

impl SeqCharBundle {
    pub fn w0(&self) -> &Rational {
        self.w.coeff(0)
    }

    pub fn z20(&self) -> &Rational {
        self.z2.coeff(0)
    }

    /// True when every sequence agrees with `other` on the common prefix.
    pub fn agrees_with(&self, other: &SeqCharBundle) -> bool {
        self.a.agrees_with(&other.a)
            && self.z1.agrees_with(&other.z1)
            && self.z2.agrees_with(&other.z2)
            && self.w.agrees_with(&other.w)
    }

    /// Length of the shortest certified sequence, in coefficients.
    pub fn certified(&self) -> usize {
        [&self.a, &self.z1, &self.z2, &self.w]
            .iter()
            .map(|s| s.trunc() + 1)
            .min()
            .unwrap_or(0)
    }
}

/// Hatted `b`, `g` and `f2`.
struct HattedParts<'a> {
    b: &'a Series,
    g: &'a Series,
    f2: &'a Series,
}

/// Both closed forms of `hat(W)`: the direct one and the one read off the
/// production matrix. They agree identically.
pub fn w_forms(spec: &DarSpec) -> Result<(Series, Series)> {
    let r = qbar(&spec.f1, &spec.f2)?.r;
    let parts = HattedParts {
        b: &spec.b.hat()?,
        g: &spec.g.hat()?,
        f2: &spec.f2.hat()?,
    };
    hatted_w_forms(&parts, &r)
}

fn hatted_w_forms(p: &HattedParts<'_>, r: &Series) -> Result<(Series, Series)> {
    let b0 = p.b.coeff(0).clone();
    let b2 = p.b.get(1).cloned().unwrap_or_default();
    let w0 = &b2 / &b0;
    let b_r = p.b.compose(r)?;
    let g_r = p.g.compose(r)?;
    let f2_r = p.f2.compose(r)?;
    let r2g = &(r * r) * &g_r;
    let n = b_r.trunc();

    let one_minus = &Series::one(n) - &r.scale(&w0);
    let num = &f2_r * &(&(&one_minus * &b_r) - &Series::constant(b0.clone(), n));
    let direct = &num.div(&r2g)? + &Series::constant(w0.clone(), n);

    let lin = &Series::constant(b0.clone(), n) - &r.scale(&b2);
    let inner = &(&b_r * &lin) - &Series::constant(&b0 * &b0, n);
    let num = &f2_r * &inner;
    let production = &num.div(&r2g.scale(&b0))? + &Series::constant(w0, n);
    Ok((direct, production))
}

pub fn dar_seqchar(spec: &DarSpec) -> Result<SeqCharBundle> {
    let r = qbar(&spec.f1, &spec.f2)?.r;
    let (b, g, f2) = (spec.b.hat()?, spec.g.hat()?, spec.f2.hat()?);
    let u = Series::t(r.trunc() + 1);
    let g0 = spec.g.coeff(0).clone();
    let c = spec.z20();

    let a = u.div(&r)?;
    let g_r = g.compose(&r)?;
    let n = g_r.trunc();
    let z1 = (&Series::one(n) - &Series::constant(g0, n).div(&g_r)?).div(&r)?;

    let b_r = b.compose(&r)?;
    let f2_r = f2.compose(&r)?;
    let frac = (&b_r * &f2_r).div(&(&r * &g_r))?.scale(&c);
    let z2 = &(&Series::constant(c, n) + &a) - &frac;

    let parts = HattedParts {
        b: &b,
        g: &g,
        f2: &f2,
    };
    let (w, w_alt) = hatted_w_forms(&parts, &r)?;
    if !w.agrees_with(&w_alt) {
        return Err(Error::Verification(
            "the two closed forms of W disagree".into(),
        ));
    }
    Ok(SeqCharBundle {
        a: a.unhat(Parity::Even)?,
        z1: z1.unhat(Parity::Even)?,
        z2: z2.unhat(Parity::Even)?,
        w: w.unhat(Parity::Even)?,
    })
}

/// Solves `target_m = sum_{j<=m} x_j coeff(m, j)` for `x` by forward substitution.
fn forward_solve(
    count: usize,
    what: &str,
    target: impl Fn(usize) -> Rational,
    coeff: impl Fn(usize, usize) -> Rational,
) -> Result<Vec<Rational>> {
    let mut x: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        let diag = coeff(m, m);
        if diag.is_zero() {
            return Err(Error::SingularSystem(format!(
                "zero pivot solving for {what}_{m}"
            )));
        }
        let mut acc = target(m);
        for (j, xj) in x.iter().enumerate() {
            acc -= xj * coeff(m, j);
        }
        x.push(acc / diag);
    }
    Ok(x)
}

fn even_series(hatted: Vec<Rational>) -> Result<Series> {
    Series::from_coeffs(hatted).unhat(Parity::Even)
}

/// Reads `A, Z1, Z2, W` off the entries of a built double almost-Riordan
/// matrix by solving the triangular systems its rows satisfy.
pub fn dar_seqchar_oracle(m: &Matrix) -> Result<SeqCharBundle> {
    let rows = m.rows();
    if rows < 4 || !m.is_square() {
        return Err(Error::Shape(
            "need a square matrix with at least 4 rows".into(),
        ));
    }
    let d = |i: usize, j: usize| m.get(i, j).clone();
    let odd_count = (rows - 2) / 2;
    let even_count = (rows - 1) / 2;
    let a = forward_solve(
        odd_count,
        "a",
        |k| d(2 * k + 3, 3),
        |k, j| d(2 * k + 1, 2 * j + 1),
    )?;
    let z1 = forward_solve(
        odd_count,
        "z1",
        |k| d(2 * k + 3, 1),
        |k, j| d(2 * k + 1, 2 * j + 1),
    )?;
    let z2 = forward_solve(
        even_count,
        "z2",
        |k| d(2 * k + 2, 2),
        |k, j| d(2 * k, 2 * j),
    )?;
    let w = forward_solve(even_count, "w", |k| d(2 * k + 2, 0), |k, j| d(2 * k, 2 * j))?;
    Ok(SeqCharBundle {
        a: even_series(a)?,
        z1: even_series(z1)?,
        z2: even_series(z2)?,
        w: even_series(w)?,
    })
}

/// Production matrix `(W, t Z1, Z2, t A, t^2 A, ...)` of size `size`.
pub fn production_from_bundle(b: &SeqCharBundle, size: usize) -> Result<Matrix> {
    let mut p = Matrix::zeros(size, size);
    for i in 0..size {
        p.set(i, 0, coeff_at(&b.w, i)?);
        if size > 1 && i >= 1 {
            p.set(i, 1, coeff_at(&b.z1, i - 1)?);
        }
        if size > 2 {
            p.set(i, 2, coeff_at(&b.z2, i)?);
        }
        for k in 3..size.min(i + 3) {
            p.set(i, k, coeff_at(&b.a, i + 2 - k)?);
        }
    }
    Ok(p)
}

/// Production matrix of `spec` at size `n + 1`, verified against
/// `(D P)_{i,j} = D_{i+2,j}`.
pub fn dar_production(spec: &DarSpec, n: usize) -> Result<Matrix> {
    let bundle = dar_seqchar(spec)?;
    let p = production_from_bundle(&bundle, n + 1)?;
    verify_shift(&build_dar(spec, n)?, &p, 2)?;
    Ok(p)
}

/// Splits a built double almost-Riordan matrix into its two embedded
/// Riordan arrays, with zero rows and columns removed:
/// `D1*[m][l] = d[2m+1][2l+1]` and `D2*[m][l] = d[2m+2][2l+2]`.
///
/// In the variable `x = t^2` these are `(g, f1 f2)` and `(g f1 / t, f1 f2)`.
pub fn split_parity(m: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = m.rows();
    if !m.is_square() || n < 3 {
        return Err(Error::Shape(
            "need a square matrix with at least 3 rows".into(),
        ));
    }
    for i in 0..n {
        for k in 0..n {
            if (i + k) % 2 == 1 && !m.get(i, k).is_zero() {
                return Err(Error::Shape(format!(
                    "entry ({i}, {k}) breaks the checkerboard pattern"
                )));
            }
        }
    }
    let d1 = Matrix::from_fn(n / 2, n / 2, |i, l| m.get(2 * i + 1, 2 * l + 1).clone());
    let d2 = Matrix::from_fn((n - 1) / 2, (n - 1) / 2, |i, l| {
        m.get(2 * i + 2, 2 * l + 2).clone()
    });
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn example(trunc: usize) -> DarSpec {
        DarSpec::from_exprs("1/(1-t^4)", "1/(1-t^2)", "t", "t/(1-t^2)", trunc).unwrap()
    }

    fn even_ints(c: &[i64]) -> Series {
        Series::from_ints(c).unhat(Parity::Even).unwrap()
    }

    #[test]
    fn example_matrix_rows() {
        let m = build_dar(&example(12), 9).unwrap();
        assert_eq!(m.row(0)[..1], [int(1)]);
        assert_eq!(m.row(3)[..4], [int(0), int(1), int(0), int(1)]);
        assert_eq!(m.row(4)[..5], [int(1), int(0), int(1), int(0), int(1)]);
        assert!(m.is_lower_triangular());
        assert_eq!(
            build_dar(&DarSpec::identity(8), 8).unwrap(),
            Matrix::identity(9)
        );
    }

    #[test]
    fn example_sequences() {
        let bundle = dar_seqchar(&example(24)).unwrap();
        assert!(bundle.a.agrees_with(&even_ints(&[1, 1, 0, 0, 0, 0])));
        assert!(bundle.z1.agrees_with(&even_ints(&[1, 0, 0, 0, 0, 0])));
        assert!(bundle.z2.agrees_with(&even_ints(&[1, 1, -1, 2, -4, 8])));
        assert!(bundle.w.agrees_with(&even_ints(&[0, 1, -1, 2, -4, 8])));
        assert!(bundle.certified() > 10);
        let id = dar_seqchar(&DarSpec::identity(12)).unwrap();
        assert!(id.a.agrees_with(&Series::one(12)));
        assert!(id.z1.is_zero() && id.w.is_zero());
        assert!(id.z2.agrees_with(&Series::one(12)));
    }

    #[test]
    fn oracle_matches_closed_form_on_example() {
        let spec = example(40);
        let oracle = dar_seqchar_oracle(&build_dar(&spec, 16).unwrap()).unwrap();
        let closed = dar_seqchar(&spec).unwrap();
        assert!(oracle.agrees_with(&closed));
        assert!(oracle.certified() >= 7);
        let id = dar_seqchar_oracle(&Matrix::identity(10)).unwrap();
        assert!(id.a.agrees_with(&Series::one(8)));
        assert!(id.z1.is_zero());
    }

    #[test]
    fn oracle_detects_singular_systems() {
        let mut m = Matrix::identity(8);
        m.set(3, 3, int(0));
        assert!(matches!(
            dar_seqchar_oracle(&m),
            Err(Error::SingularSystem(_))
        ));
    }

    #[test]
    fn production_shift_by_two() {
        let spec = example(40);
        let p = dar_production(&spec, 15).unwrap();
        let col0: Vec<_> = (0..9).map(|i| p.get(i, 0).clone()).collect();
        let want: Vec<_> = [0, 0, 1, 0, -1, 0, 2, 0, -4]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(col0, want);
        let col2: Vec<_> = (0..9).map(|i| p.get(i, 2).clone()).collect();
        let want: Vec<_> = [1, 0, 1, 0, -1, 0, 2, 0, -4]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(col2, want);
        let d = build_dar(&spec, 15).unwrap();
        assert!(crate::riordan::shift_violation(&d, &p, 1)
            .unwrap()
            .is_some());
    }

    #[test]
    fn identity_products() {
        let a = example(14);
        let id = DarSpec::identity(14);
        assert!(dar_mul(&a, &id).unwrap().agrees_with(&a));
        assert!(dar_mul(&id, &a).unwrap().agrees_with(&a));
        let inv = dar_inverse(&id).unwrap();
        assert!(inv.agrees_with(&id));
    }

    #[test]
    fn inverse_of_example() {
        let a = example(16);
        let inv = dar_inverse(&a).unwrap();
        let id = DarSpec::identity(16);
        let left = dar_mul(&a, &inv).unwrap();
        let right = dar_mul(&inv, &a).unwrap();
        assert!(left.agrees_with(&id) && right.agrees_with(&id));
        assert!(left.trunc() >= 12);
        let twice = dar_inverse(&inv).unwrap();
        assert!(twice.agrees_with(&a));
    }

    #[test]
    fn apply_matches_columns() {
        let spec = example(14);
        assert!(dar_apply(&spec, &Series::one(14))
            .unwrap()
            .agrees_with(&spec.b));
        let tg = spec.g.shift_up(1);
        assert!(dar_apply(&spec, &Series::t(14)).unwrap().agrees_with(&tg));
        let mixed = Series::from_ints(&[1, 1, 0]);
        assert!(matches!(dar_apply(&spec, &mixed), Err(Error::Parity(_))));
    }

    #[test]
    fn double_basics() {
        let spec = DoubleSpec::from_exprs("1/(1-t^2)", "t", "t/(1-t^2)", 20).unwrap();
        let m = build_double(&spec, 12).unwrap();
        for i in 0..13 {
            for k in 0..13 {
                if (i + k) % 2 == 1 {
                    assert!(m.get(i, k).is_zero());
                }
            }
        }
        assert_eq!(
            build_double(&DoubleSpec::identity(6), 6).unwrap(),
            Matrix::identity(7)
        );
        let id = DoubleSpec::identity(20);
        assert!(double_mul(&spec, &id).unwrap().agrees_with(&spec));
        let inv = double_inverse(&spec).unwrap();
        assert!(double_mul(&spec, &inv).unwrap().agrees_with(&id));
        let sc = double_seqchar(&spec).unwrap();
        assert!(sc.z.agrees_with(&Series::one(sc.z.trunc())));
        let sc = double_seqchar(&id).unwrap();
        assert!(sc.a1.agrees_with(&Series::one(8)) && sc.a2.agrees_with(&Series::one(8)));
        assert!(sc.z.is_zero());
        assert!(double_apply(&spec, &Series::one(20))
            .unwrap()
            .agrees_with(&spec.g));
        let gf1 = &spec.g * &spec.f1;
        assert!(double_apply(&spec, &Series::t(20))
            .unwrap()
            .agrees_with(&gf1));
    }

    #[test]
    fn split_example() {
        use crate::riordan::{build_riordan, RiordanSpec};
        let spec = example(30);
        let (d1, d2) = split_parity(&build_dar(&spec, 13).unwrap()).unwrap();
        let s_hat = spec.s().hat().unwrap();
        let r1 = RiordanSpec::new(spec.g.hat().unwrap(), s_hat.clone()).unwrap();
        assert_eq!(d1, build_riordan(&r1, 6).unwrap());
        let gf1 = (&spec.g * &spec.f1).shift_down(1).unwrap().hat().unwrap();
        let r2 = RiordanSpec::new(gf1, s_hat).unwrap();
        assert_eq!(d2, build_riordan(&r2, 5).unwrap());
        let (i1, i2) = split_parity(&Matrix::identity(9)).unwrap();
        assert_eq!((i1, i2), (Matrix::identity(4), Matrix::identity(4)));
        let mut bad = Matrix::identity(5);
        bad.set(2, 1, int(1));
        assert!(matches!(split_parity(&bad), Err(Error::Shape(_))));
    }
}
