//! Truncated formal power series over the rationals.
//!
//! A [`Series`] stores the coefficients of degrees `0..=trunc` and nothing
//! beyond: every operation returns the longest prefix it can certify from the
//! prefixes of its operands. Series also carry a parity tag (even, odd or
//! unrestricted) that is validated when the series is constructed.
//!
//! Besides ring arithmetic this module supplies the rational substitution
//! kernels used by the double arrays. For even `a`, odd `h` and `s = f1*f2`
//! with odd `f1`, `f2`, the quantities `a(sqrt(s))` and
//! `sqrt(f1/f2) * h(sqrt(s))` are power series with rational coefficients even
//! though `sqrt(s)` is not; [`subst_sqrt_even`] and [`twisted_odd_subst`]
//! compute them without ever forming a square root. The compositional inverse
//! of `sqrt(f1*f2)` is handled the same way through its rational square, see
//! [`qbar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Parity tag of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Unrestricted,
}

impl Parity {
    fn of_product(a: Parity, b: Parity) -> Parity {
        use Parity::*;
        match (a, b) {
            (Even, Even) | (Odd, Odd) => Even,
            (Even, Odd) | (Odd, Even) => Odd,
            _ => Unrestricted,
        }
    }

    fn of_sum(a: Parity, b: Parity) -> Parity {
        if a == b {
            a
        } else {
            Parity::Unrestricted
        }
    }

    fn shifted(self, k: usize) -> Parity {
        match (self, k % 2) {
            (p, 0) => p,
            (Parity::Even, _) => Parity::Odd,
            (Parity::Odd, _) => Parity::Even,
            (p, _) => p,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Unrestricted => "none",
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "none" => Ok(Parity::Unrestricted),
            other => Err(Error::Format(format!("unknown parity {other:?}"))),
        }
    }
}

/// A power series known through degree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct Series {
    coeffs: Vec<Rational>,
    parity: Parity,
}

impl Series {
    /// Builds a series and checks the parity tag against the coefficients.
    pub fn new(coeffs: Vec<Rational>, parity: Parity) -> Result<Series> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec(
                "a series needs at least one coefficient".into(),
            ));
        }
        let bad = match parity {
            Parity::Even => coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()),
            Parity::Odd => coeffs.iter().step_by(2).any(|c| !c.is_zero()),
            Parity::Unrestricted => false,
        };
        if bad {
            return Err(Error::Parity(format!(
                "coefficients are not {}",
                parity.as_str()
            )));
        }
        Ok(Series { coeffs, parity })
    }

    /// Unrestricted series from raw coefficients; `coeffs` must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Series {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series {
            coeffs,
            parity: Parity::Unrestricted,
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Series {
        Series::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    fn tagged(coeffs: Vec<Rational>, parity: Parity) -> Series {
        debug_assert!(
            Series::new(coeffs.clone(), parity).is_ok(),
            "parity tag drifted"
        );
        Series { coeffs, parity }
    }

    pub fn zero(trunc: usize) -> Series {
        Series::tagged(vec![Rational::zero(); trunc + 1], Parity::Even)
    }

    pub fn constant(c: Rational, trunc: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); trunc + 1];
        coeffs[0] = c;
        Series::tagged(coeffs, Parity::Even)
    }

    pub fn one(trunc: usize) -> Series {
        Series::constant(Rational::one(), trunc)
    }

    /// `c * t^k`, known through `trunc`.
    pub fn monomial(c: Rational, k: usize, trunc: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); trunc + 1];
        if k <= trunc {
            coeffs[k] = c;
        }
        let parity = if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        };
        Series::tagged(coeffs, parity)
    }

    /// The series `t`.
    pub fn t(trunc: usize) -> Series {
        Series::monomial(Rational::one(), 1, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; panics past the truncation.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Least degree with a nonzero coefficient, or `trunc + 1` if none is known.
    pub fn order(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Replaces the tag after checking it against the coefficients.
    pub fn with_parity(self, parity: Parity) -> Result<Series> {
        Series::new(self.coeffs, parity)
    }

    /// Tags the series with the parity its coefficients exhibit.
    pub fn infer_parity(mut self) -> Series {
        let odd_zero = self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero);
        let even_zero = self.coeffs.iter().step_by(2).all(Zero::is_zero);
        self.parity = if odd_zero {
            Parity::Even
        } else if even_zero {
            Parity::Odd
        } else {
            Parity::Unrestricted
        };
        self
    }

    /// Drops the parity tag.
    pub fn unrestricted(mut self) -> Series {
        self.parity = Parity::Unrestricted;
        self
    }

    pub fn truncate(&self, trunc: usize) -> Series {
        let n = trunc.min(self.trunc());
        Series::tagged(self.coeffs[..=n].to_vec(), self.parity)
    }

    /// True when both series agree on every degree both of them know.
    pub fn agrees_with(&self, other: &Series) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::tagged(self.coeffs.iter().map(|x| x * c).collect(), self.parity)
    }

    /// Multiplies by `t^k`; the result is known `k` degrees further.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series::tagged(coeffs, self.parity.shifted(k))
    }

    /// Divides by `t^k`.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k > self.trunc() {
            return Err(Error::Trunc {
                needed: k,
                available: self.trunc(),
            });
        }
        if self.order() < k {
            return Err(Error::Order(format!(
                "cannot divide a series of order {} by t^{k}",
                self.order()
            )));
        }
        Ok(Series::tagged(
            self.coeffs[k..].to_vec(),
            self.parity.shifted(k),
        ))
    }

    /// Product known through degree `n`, assuming both operands are known
    /// through `n` (callers guarantee it).
    fn mul_upto(&self, rhs: &Series, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Reciprocal of an order-0 series.
    pub fn recip(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            if self.is_zero() {
                return Err(Error::ZeroDivisor {
                    trunc: self.trunc(),
                });
            }
            return Err(Error::Order(
                "reciprocal of a series of positive order".into(),
            ));
        }
        let n = self.trunc();
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[m - k];
                }
            }
            out.push(-acc * &inv0);
        }
        let parity = match self.parity {
            Parity::Even => Parity::Even,
            _ => Parity::Unrestricted,
        };
        Ok(Series::tagged(out, parity))
    }

    /// Quotient `self / rhs`. Requires `order(rhs) <= order(self)`.
    pub fn div(&self, rhs: &Series) -> Result<Series> {
        if rhs.is_zero() {
            return Err(Error::ZeroDivisor { trunc: rhs.trunc() });
        }
        let k = rhs.order();
        let num_order = self.order();
        if num_order < k {
            return Err(Error::Order(format!(
                "numerator has order {num_order} but denominator has order {k}"
            )));
        }
        let num = self.shift_down(k)?;
        let den = rhs.shift_down(k)?;
        let parity = Parity::of_product(self.parity, rhs.parity);
        let mut q = &num * &den.recip()?;
        q.parity = parity;
        debug_assert!(Series::new(q.coeffs.clone(), parity).is_ok());
        Ok(q)
    }

    pub fn pow(&self, e: u32) -> Series {
        if e == 0 {
            return Series::one(self.trunc());
        }
        let mut acc: Option<Series> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &base,
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.expect("positive exponent")
    }

    /// `outer(inner(t))`, for `order(inner) >= 1`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Order(
                "inner series of a composition must have order >= 1".into(),
            ));
        }
        let d = inner.order();
        let n = inner.trunc().min((self.trunc() + 1) * d - 1);
        let parity = match (self.parity, inner.parity) {
            (p, Parity::Odd) => p,
            (_, Parity::Even) => Parity::Even,
            _ => Parity::Unrestricted,
        };
        let top = match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(top) => top,
            None => return Ok(Series::tagged(vec![Rational::zero(); n + 1], Parity::Even)),
        };
        let inner_n = inner.truncate(n);
        let mut acc = Series::from_coeffs(vec![Rational::zero(); n + 1]);
        for j in (0..=top).rev() {
            let mut next = acc.mul_upto(&inner_n, n);
            next[0] += &self.coeffs[j];
            acc = Series::from_coeffs(next);
        }
        acc.parity = parity;
        debug_assert!(Series::new(acc.coeffs.clone(), parity).is_ok());
        Ok(acc)
    }

    /// Powers `inner^0 ..= inner^n`, each known through degree `n`.
    fn powers_upto(inner: &Series, n: usize) -> Vec<Vec<Rational>> {
        let base = inner.truncate(n);
        let mut out = Vec::with_capacity(n + 1);
        let mut cur = Series::one(n);
        for _ in 0..=n {
            let next = Series::from_coeffs(cur.mul_upto(&base, n));
            out.push(std::mem::replace(&mut cur, next).coeffs);
        }
        out
    }

    /// Solves `x(inner(t)) = self` for `x`, with `inner` of order exactly 1.
    pub fn solve_composed(&self, inner: &Series) -> Result<Series> {
        if inner.order() != 1 {
            return Err(Error::Order(format!(
                "inner series must have order 1, found {}",
                inner.order()
            )));
        }
        let n = self.trunc().min(inner.trunc());
        let pows = Series::powers_upto(inner, n);
        let lead = inner.coeffs[1].clone();
        let mut x: Vec<Rational> = Vec::with_capacity(n + 1);
        let mut lead_pow = Rational::one();
        for (m, c) in self.coeffs.iter().enumerate().take(n + 1) {
            let mut acc = c.clone();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    acc -= xj * &pows[j][m];
                }
            }
            x.push(acc / &lead_pow);
            lead_pow *= &lead;
        }
        let parity = match (self.parity, inner.parity) {
            (p, Parity::Odd) => p,
            _ => Parity::Unrestricted,
        };
        let x = Series::from_coeffs(x);
        Ok(match Series::new(x.coeffs.clone(), parity) {
            Ok(tagged) => tagged,
            Err(_) => x,
        })
    }

    /// Compositional inverse of an order-1 series.
    pub fn comp_inverse(&self) -> Result<Series> {
        if self.order() != 1 {
            return Err(Error::Order(format!(
                "compositional inverse needs order 1, found {}",
                self.order()
            )));
        }
        let id = Series::t(self.trunc());
        let inv = id.solve_composed(self)?;
        Ok(if self.parity == Parity::Odd {
            Series::tagged(inv.coeffs, Parity::Odd)
        } else {
            inv.unrestricted()
        })
    }

    fn effective_parity(&self) -> Result<Parity> {
        match self.parity {
            Parity::Unrestricted => {
                let p = self.clone().infer_parity().parity;
                if p == Parity::Unrestricted {
                    Err(Error::Parity(
                        "series has both even- and odd-degree terms".into(),
                    ))
                } else {
                    Ok(p)
                }
            }
            p => Ok(p),
        }
    }

    /// Halves degrees: `sum s_2k t^2k -> sum s_2k t^k` and
    /// `sum s_2k+1 t^2k+1 -> sum s_2k+1 t^k+1`.
    pub fn hat(&self) -> Result<Series> {
        let coeffs = match self.effective_parity()? {
            Parity::Even => self.coeffs.iter().step_by(2).cloned().collect(),
            _ => {
                let mut c = vec![Rational::zero()];
                c.extend(self.coeffs.iter().skip(1).step_by(2).cloned());
                c
            }
        };
        Ok(Series::from_coeffs(coeffs))
    }

    /// Inverse of [`Series::hat`] for the requested target parity.
    pub fn unhat(&self, target: Parity) -> Result<Series> {
        let m = self.trunc();
        let mut coeffs = vec![Rational::zero(); 2 * m + 1];
        match target {
            Parity::Even => {
                for (k, c) in self.coeffs.iter().enumerate() {
                    coeffs[2 * k] = c.clone();
                }
            }
            Parity::Odd => {
                if !self.coeffs[0].is_zero() {
                    return Err(Error::Order(
                        "odd unhat needs a series of order >= 1".into(),
                    ));
                }
                for (k, c) in self.coeffs.iter().enumerate().skip(1) {
                    coeffs[2 * k - 1] = c.clone();
                }
            }
            Parity::Unrestricted => {
                return Err(Error::Parity("unhat needs an even or odd target".into()))
            }
        }
        Ok(Series::tagged(coeffs, target))
    }

    /// Floating-point evaluation of the known polynomial part.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }
}

/// `a(sqrt(s)) = sum a_2k s^k` for even `a`.
pub fn subst_sqrt_even(a_even: &Series, s: &Series) -> Result<Series> {
    if a_even.parity() != Parity::Even {
        return Err(Error::Parity("subst_sqrt_even needs an even series".into()));
    }
    if s.order() < 1 {
        return Err(Error::Order(
            "substituted series must have order >= 1".into(),
        ));
    }
    a_even.hat()?.compose(s)
}

/// `f_keep * H(s)` where `h = t H(t^2)` is odd. With `s = f1 f2` and
/// `f_keep = f1` this equals `sqrt(f1/f2) h(sqrt(f1 f2))`.
pub fn twisted_odd_subst(h_odd: &Series, f_keep: &Series, s: &Series) -> Result<Series> {
    if h_odd.parity() != Parity::Odd {
        return Err(Error::Parity(
            "twisted_odd_subst needs an odd series".into(),
        ));
    }
    if s.order() < 2 {
        return Err(Error::Order(
            "substituted series must have order >= 2".into(),
        ));
    }
    if f_keep.order() < 1 {
        return Err(Error::Order("multiplier must have order >= 1".into()));
    }
    let big_h = h_odd.hat()?.shift_down(1)?;
    Ok(f_keep * &big_h.compose(s)?)
}

/// Rational data for the compositional inverse of `sqrt(f1 f2)`.
///
/// With `phi` that inverse, `q = phi^2` is even and `q(t) = r(t^2)` where
/// `r` is the compositional inverse of `s_hat = hat(f1) hat(f2) / t`. An
/// even `e` evaluated at `phi` has hat `hat(e) o r`, and `phi f(phi)` for odd
/// `f` has hat `hat(f) o r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBundle {
    pub s_hat: Series,
    pub r: Series,
    pub q: Series,
}

pub fn qbar(f1: &Series, f2: &Series) -> Result<QBundle> {
    for (name, f) in [("f1", f1), ("f2", f2)] {
        if f.parity() != Parity::Odd {
            return Err(Error::Parity(format!("{name} must be odd")));
        }
        if f.order() != 1 {
            return Err(Error::Order(format!("{name} must have order 1")));
        }
    }
    let s_hat = (&f1.hat()? * &f2.hat()?).shift_down(1)?;
    let r = s_hat.comp_inverse()?;
    let q = r.unhat(Parity::Even)?;
    let back = s_hat.compose(&r)?;
    if !back.agrees_with(&Series::t(back.trunc())) {
        return Err(Error::Verification("s_hat(r(u)) != u".into()));
    }
    let s_of_q = s_hat.compose(&q)?;
    if !s_of_q.agrees_with(&Series::monomial(Rational::one(), 2, s_of_q.trunc())) {
        return Err(Error::Verification("q S(q) != t^2".into()));
    }
    Ok(QBundle { s_hat, r, q })
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let n = self.trunc().min(rhs.trunc());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect();
        Series::tagged(coeffs, Parity::of_sum(self.parity, rhs.parity))
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let n = self.trunc().min(rhs.trunc());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect();
        Series::tagged(coeffs, Parity::of_sum(self.parity, rhs.parity))
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series::tagged(self.coeffs.iter().map(|c| -c).collect(), self.parity)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;

    /// Cauchy product, known through
    /// `min(trunc(a) + order(b), trunc(b) + order(a))`.
    fn mul(self, rhs: &Series) -> Series {
        let n = (self.trunc() + rhs.order()).min(rhs.trunc() + self.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series::tagged(out, Parity::of_product(self.parity, rhs.parity))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    trunc: usize,
    parity: String,
    coeffs: Vec<String>,
}

impl From<Series> for SeriesJson {
    fn from(s: Series) -> Self {
        SeriesJson {
            trunc: s.trunc(),
            parity: s.parity.as_str().to_string(),
            coeffs: s.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for Series {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Series> {
        if j.coeffs.len() != j.trunc + 1 {
            return Err(Error::Format(format!(
                "trunc {} does not match {} coefficients",
                j.trunc,
                j.coeffs.len()
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Series::new(coeffs, j.parity.parse()?)
    }
}
