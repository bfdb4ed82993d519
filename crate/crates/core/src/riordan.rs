//! Riordan arrays `(g, f)` together with the quasi-Riordan `[g, f]` and
//! almost-Riordan `(d | g, f)` variants.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::series::Series;

pub(crate) fn coeff_at(s: &Series, i: usize) -> Result<Rational> {
    s.get(i).cloned().ok_or(Error::Trunc {
        needed: i,
        available: s.trunc(),
    })
}

/// Matrix with entry `(i, k)` the coefficient of `t^i` in `g f^k`.
pub fn power_array(g: &Series, f: &Series, rows: usize, cols: usize) -> Result<Matrix> {
    if f.order() < 1 {
        return Err(Error::Order(
            "multiplier series must have order >= 1".into(),
        ));
    }
    let mut m = Matrix::zeros(rows, cols);
    let mut col = g.clone();
    for k in 0..cols {
        if k > 0 {
            col = &col * f;
        }
        for i in 0..rows {
            if i < col.order().min(col.trunc() + 1) {
                continue;
            }
            m.set(i, k, coeff_at(&col, i)?);
        }
    }
    Ok(m)
}

/// The pair `(g, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanSpec {
    pub g: Series,
    pub f: Series,
}

impl RiordanSpec {
    pub fn new(g: Series, f: Series) -> Result<RiordanSpec> {
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "g must have a nonzero constant term".into(),
            ));
        }
        if f.order() != 1 {
            return Err(Error::InvalidSpec("f must have order exactly 1".into()));
        }
        Ok(RiordanSpec { g, f })
    }

    pub fn identity(trunc: usize) -> RiordanSpec {
        RiordanSpec {
            g: Series::one(trunc),
            f: Series::t(trunc),
        }
    }

    pub fn trunc(&self) -> usize {
        self.g.trunc().min(self.f.trunc())
    }

    /// True when both components agree on their common prefix.
    pub fn agrees_with(&self, other: &RiordanSpec) -> bool {
        self.g.agrees_with(&other.g) && self.f.agrees_with(&other.f)
    }
}

/// The `(n + 1) x (n + 1)` truncation of `(g, f)`.
pub fn build_riordan(spec: &RiordanSpec, n: usize) -> Result<Matrix> {
    power_array(&spec.g, &spec.f, n + 1, n + 1)
}

/// `(g1, f1) (g2, f2) = (g1 g2(f1), f2(f1))`.
pub fn riordan_mul(a: &RiordanSpec, b: &RiordanSpec) -> Result<RiordanSpec> {
    let g = &a.g * &b.g.compose(&a.f)?;
    let f = b.f.compose(&a.f)?;
    RiordanSpec::new(g, f)
}

/// `(g, f)^-1 = (1 / g(fbar), fbar)`.
pub fn riordan_inverse(a: &RiordanSpec) -> Result<RiordanSpec> {
    let fbar = a.f.comp_inverse()?;
    let g = a.g.compose(&fbar)?.recip()?;
    RiordanSpec::new(g, fbar)
}

/// A- and Z-sequences of a Riordan array, as series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AZ {
    pub a: Series,
    pub z: Series,
}

/// `A = t / fbar` and `Z = (1 - d00 / g(fbar)) / fbar`.
pub fn riordan_seqchar(spec: &RiordanSpec, d00: &Rational) -> Result<AZ> {
    let fbar = spec.f.comp_inverse()?;
    let a = Series::t(fbar.trunc()).div(&fbar)?;
    let g_bar = spec.g.compose(&fbar)?;
    let inner =
        &Series::one(g_bar.trunc()) - &Series::constant(d00.clone(), g_bar.trunc()).div(&g_bar)?;
    let z = inner.div(&fbar)?;
    Ok(AZ { a, z })
}

/// Inverts [`riordan_seqchar`]: `f = t A(f)` and `g = d00 / (1 - t Z(f))`.
pub fn riordan_from_az(az: &AZ, d00: &Rational) -> Result<RiordanSpec> {
    let fbar = Series::t(az.a.trunc() + 1).div(&az.a)?;
    let f = fbar.comp_inverse()?;
    let tz = &Series::t(f.trunc()) * &az.z.compose(&f)?;
    let g = Series::constant(d00.clone(), tz.trunc()).div(&(&Series::one(tz.trunc()) - &tz))?;
    RiordanSpec::new(g, f)
}

/// Production matrix `(Z, A, tA, t^2 A, ...)` truncated to `size x size`.
pub fn production_from_az(az: &AZ, size: usize) -> Result<Matrix> {
    let mut p = Matrix::zeros(size, size);
    for i in 0..size {
        p.set(i, 0, coeff_at(&az.z, i)?);
        for k in 1..=(i + 1).min(size - 1) {
            p.set(i, k, coeff_at(&az.a, i + 1 - k)?);
        }
    }
    Ok(p)
}

/// First `(i, j)` where `(D P)_{i,j} != D_{i+shift,j}`, scanning the rows
/// for which the truncated product is exact.
pub fn shift_violation(d: &Matrix, p: &Matrix, shift: usize) -> Result<Option<(usize, usize)>> {
    let dp = d.mul(p)?;
    let rows = d.rows().saturating_sub(shift);
    for i in 0..rows {
        for j in 0..d.cols().min(dp.cols()) {
            if dp.get(i, j) != d.get(i + shift, j) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub(crate) fn verify_shift(d: &Matrix, p: &Matrix, shift: usize) -> Result<()> {
    match shift_violation(d, p, shift)? {
        None => Ok(()),
        Some((i, j)) => Err(Error::Verification(format!(
            "(D P)[{i}][{j}] differs from D[{}][{j}]",
            i + shift
        ))),
    }
}

/// Production matrix of `spec` at size `n + 1`, checked against the built array.
pub fn riordan_production(spec: &RiordanSpec, n: usize) -> Result<Matrix> {
    let az = riordan_seqchar(spec, spec.g.coeff(0))?;
    let p = production_from_az(&az, n + 1)?;
    verify_shift(&build_riordan(spec, n)?, &p, 1)?;
    Ok(p)
}

/// Quasi-Riordan array `[g, f]` with columns `g, f, t f, t^2 f, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiSpec {
    pub g: Series,
    pub f: Series,
}

impl QuasiSpec {
    pub fn new(g: Series, f: Series) -> Result<QuasiSpec> {
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "g must have a nonzero constant term".into(),
            ));
        }
        if f.order() < 1 {
            return Err(Error::InvalidSpec("f must have order >= 1".into()));
        }
        Ok(QuasiSpec { g, f })
    }

    /// Whether `g(0) = 1`, the normalization used for the quasi-Riordan group.
    pub fn is_normalized(&self) -> bool {
        self.g.coeff(0).is_one()
    }

    pub fn agrees_with(&self, other: &QuasiSpec) -> bool {
        self.g.agrees_with(&other.g) && self.f.agrees_with(&other.f)
    }
}

pub fn build_quasi(spec: &QuasiSpec, n: usize) -> Result<Matrix> {
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m.set(i, 0, coeff_at(&spec.g, i)?);
        for k in 1..=i {
            m.set(i, k, coeff_at(&spec.f, i + 1 - k)?);
        }
    }
    Ok(m)
}

/// `[g, f] u = g u(0) + (f / t)(u - u(0))`.
pub fn quasi_apply(spec: &QuasiSpec, u: &Series) -> Result<Series> {
    let u0 = u.coeff(0).clone();
    let tail = (u - &Series::constant(u0.clone(), u.trunc())).shift_down(1)?;
    Ok(&spec.g.scale(&u0) + &(&spec.f * &tail))
}

/// `[g, f][d, h] = [g d(0) + (f / t)(d - d(0)), f h / t]`.
pub fn quasi_mul(a: &QuasiSpec, b: &QuasiSpec) -> Result<QuasiSpec> {
    let g = quasi_apply(a, &b.g)?;
    let f = (&a.f * &b.f).shift_down(1)?;
    QuasiSpec::new(g, f)
}

/// Almost-Riordan array `(d | g, f)` with columns `d, t g, t g f, t g f^2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostSpec {
    pub d: Series,
    pub g: Series,
    pub f: Series,
}

impl AlmostSpec {
    pub fn new(d: Series, g: Series, f: Series) -> Result<AlmostSpec> {
        if d.coeff(0).is_zero() || g.coeff(0).is_zero() {
            return Err(Error::InvalidSpec(
                "d and g must have nonzero constant terms".into(),
            ));
        }
        if f.order() != 1 {
            return Err(Error::InvalidSpec("f must have order exactly 1".into()));
        }
        Ok(AlmostSpec { d, g, f })
    }

    pub fn identity(trunc: usize) -> AlmostSpec {
        AlmostSpec {
            d: Series::one(trunc),
            g: Series::one(trunc),
            f: Series::t(trunc),
        }
    }

    pub fn agrees_with(&self, other: &AlmostSpec) -> bool {
        self.d.agrees_with(&other.d) && self.g.agrees_with(&other.g) && self.f.agrees_with(&other.f)
    }
}

pub fn build_almost(spec: &AlmostSpec, n: usize) -> Result<Matrix> {
    let tg = spec.g.shift_up(1);
    let tail = power_array(&tg, &spec.f, n + 1, n)?;
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        m.set(i, 0, coeff_at(&spec.d, i)?);
        for k in 1..=i {
            m.set(i, k, tail.get(i, k - 1).clone());
        }
    }
    Ok(m)
}

/// `(d | g, f) u = u(0) d + t g U(f)` where `u = u(0) + t U(t)`.
pub fn almost_apply(spec: &AlmostSpec, u: &Series) -> Result<Series> {
    let u0 = u.coeff(0).clone();
    let tail = (u - &Series::constant(u0.clone(), u.trunc())).shift_down(1)?;
    let tg = spec.g.shift_up(1);
    Ok(&spec.d.scale(&u0) + &(&tg * &tail.compose(&spec.f)?))
}

/// `(d | g, f)(c | h, k) = ((d | g, f) c | g h(f), k(f))`.
pub fn almost_mul(a: &AlmostSpec, b: &AlmostSpec) -> Result<AlmostSpec> {
    let d = almost_apply(a, &b.d)?;
    let g = &a.g * &b.g.compose(&a.f)?;
    let f = b.f.compose(&a.f)?;
    AlmostSpec::new(d, g, f)
}

/// `(d | g, f) = [d, t g] (1 | 1, f)`.
pub fn almost_factorize(spec: &AlmostSpec) -> Result<(QuasiSpec, AlmostSpec)> {
    let quasi = QuasiSpec::new(spec.d.clone(), spec.g.shift_up(1))?;
    let trunc = spec.f.trunc();
    let riordan_part = AlmostSpec::new(Series::one(trunc), Series::one(trunc), spec.f.clone())?;
    Ok((quasi, riordan_part))
}
