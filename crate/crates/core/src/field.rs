//! The scalar field underneath every tensor.
//!
//! Two modes exist: exact rationals ([`Rational`], the default) and `f64`.
//! Everything above this module is generic over [`Scalar`], so the same code
//! path runs in both modes. In exact mode a residual is "zero" only when it is
//! literally zero; in float mode it is compared against
//! `FLOAT_REL_TOL * (1 + scale)`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Relative tolerance for float-mode residuals.
pub const FLOAT_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Rational,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => f.write_str("rational"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown scalar mode `{other}` (expected rational|float)")),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const MODE: Mode;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn magnitude(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether `residual` counts as zero for quantities of size `scale`.
    fn negligible(residual: &Self, scale: &Self) -> bool;

    /// Exact rendering in rational mode, scientific decimal in float mode.
    fn render(&self) -> String;

    fn is_finite_value(&self) -> bool {
        true
    }

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Rational;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible(residual: &Self, _scale: &Self) -> bool {
        residual.is_zero()
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(residual: &Self, scale: &Self) -> bool {
        residual.abs() <= FLOAT_REL_TOL * (1.0 + scale.abs())
    }

    fn render(&self) -> String {
        if *self == 0.0 {
            "0".to_string()
        } else {
            format!("{self:.6e}")
        }
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// `p/q` in lowest terms, or a bare integer when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses an optionally signed integer, a `p/q` rational, or (when
/// `allow_decimal`) a plain decimal literal such as `-0.125`. Decimals are
/// converted exactly.
pub fn parse_rational(text: &str, allow_decimal: bool) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some(v) = parse_int(text) {
        return Some(Rational::from_integer(v));
    }
    if !allow_decimal {
        return None;
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.')?;
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let denom = num::pow(BigInt::from(10), frac.len());
    let value = Rational::new(digits, denom);
    Some(if neg { -value } else { value })
}

fn parse_int(text: &str) -> Option<BigInt> {
    let t = text.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    t.strip_prefix('+').unwrap_or(t).parse().ok()
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
