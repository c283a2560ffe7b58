//! Scalar field elements.
//!
//! A [`Scalar`] is one of three closed variants: an exact rational, an exact
//! Gaussian rational (rationals adjoined with the complex unit), or a complex
//! double with an attached tolerance. Binary operations promote along
//! `Rational -> Gaussian -> Complex`; only the last step loses exactness.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerance used for complex floating point scalars unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Exact element of the Gaussian rationals `Q(i)` with nonzero imaginary part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

/// Complex double together with the tolerance used for zero tests and equality.
#[derive(Clone, Copy, Debug)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl ComplexFloat {
    fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_value(z: Complex64, tol: f64) -> Self {
        ComplexFloat { re: z.re, im: z.im, tol }
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(GaussianRational),
    Complex(ComplexFloat),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as an exact rational. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// Exact Gaussian rational `re + im*i`; demotes to a rational when `im == 0`.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Scalar::Rational(re)
        } else {
            Scalar::Gaussian(GaussianRational { re, im })
        }
    }

    /// Small-integer Gaussian `re + im*i`.
    pub fn gauss_int(re: i64, im: i64) -> Self {
        Scalar::gaussian(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// The complex unit.
    pub fn i() -> Self {
        Scalar::gauss_int(0, 1)
    }

    pub fn complex(re: f64, im: f64, tol: f64) -> Self {
        Scalar::Complex(ComplexFloat { re, im, tol })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Complex(_))
    }

    /// Real and imaginary parts when exact.
    pub fn exact_parts(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Scalar::Rational(r) => Some((r.clone(), BigRational::zero())),
            Scalar::Gaussian(g) => Some((g.re.clone(), g.im.clone())),
            Scalar::Complex(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Tolerance carried by a float scalar, zero for exact ones.
    pub fn tolerance(&self) -> f64 {
        match self {
            Scalar::Complex(c) => c.tol,
            _ => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(_) => false,
            Scalar::Complex(c) => c.value().norm() <= c.tol,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian(_) => false,
            Scalar::Complex(c) => (c.value() - Complex64::new(1.0, 0.0)).norm() <= c.tol,
        }
    }

    /// Whether the value is real (literally for exact, within tolerance for floats).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::Gaussian(_) => false,
            Scalar::Complex(c) => c.im.abs() <= c.tol,
        }
    }

    /// Sign of a real scalar; `None` for non-real values.
    pub fn real_sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Rational(r) => Some(r.cmp(&BigRational::zero())),
            Scalar::Gaussian(_) => None,
            Scalar::Complex(c) => {
                if c.im.abs() > c.tol {
                    None
                } else if c.re.abs() <= c.tol {
                    Some(Ordering::Equal)
                } else if c.re > 0.0 {
                    Some(Ordering::Greater)
                } else {
                    Some(Ordering::Less)
                }
            }
        }
    }

    /// Floating point approximation of the value.
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(rat_to_f64(r), 0.0),
            Scalar::Gaussian(g) => Complex64::new(rat_to_f64(&g.re), rat_to_f64(&g.im)),
            Scalar::Complex(c) => c.value(),
        }
    }

    /// Modulus as a double.
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Promotes to a complex float. Exact inputs take `tol`; floats keep theirs.
    pub fn to_complex(&self, tol: f64) -> Scalar {
        match self {
            Scalar::Complex(_) => self.clone(),
            _ => Scalar::Complex(ComplexFloat::from_value(self.to_c64(), tol)),
        }
    }

    /// Complex conjugation (the field involution).
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Gaussian(g) => Scalar::Gaussian(GaussianRational {
                re: g.re.clone(),
                im: -g.im.clone(),
            }),
            Scalar::Complex(c) => Scalar::complex(c.re, -c.im, c.tol),
        }
    }

    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian(g) => {
                let n = &g.re * &g.re + &g.im * &g.im;
                Scalar::gaussian(&g.re / &n, -&g.im / &n)
            }
            Scalar::Complex(c) => Scalar::Complex(ComplexFloat::from_value(c.value().inv(), c.tol)),
        })
    }

    /// Multiplicative inverse. Panics on zero, like integer division.
    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero scalar")
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// A square root inside the scalar's own field, when one exists.
    ///
    /// Rationals and Gaussian rationals return `None` when the root is not a
    /// Gaussian rational; complex floats always succeed with the principal root.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    let s = rational_sqrt(&-r.clone())?;
                    Some(Scalar::gaussian(BigRational::zero(), s))
                } else {
                    rational_sqrt(r).map(Scalar::Rational)
                }
            }
            Scalar::Gaussian(g) => {
                // (x + iy)^2 = a + ib  =>  x^2 = (a + |w|)/2, y = b / 2x
                let modulus = rational_sqrt(&(&g.re * &g.re + &g.im * &g.im))?;
                let two = BigRational::from_integer(2.into());
                let x2 = (&g.re + &modulus) / &two;
                let x = rational_sqrt(&x2)?;
                if x.is_zero() {
                    return None;
                }
                let y = &g.im / (&two * &x);
                Some(Scalar::gaussian(x, y))
            }
            Scalar::Complex(c) => Some(Scalar::Complex(ComplexFloat::from_value(c.value().sqrt(), c.tol))),
        }
    }

    /// Formats exact values as `a/b` or `a/b+c/d*i`; floats via their debug form.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rational(r) => fmt_rat(r),
            Scalar::Gaussian(g) => {
                if g.im.is_negative() {
                    format!("{}-{}*i", fmt_rat(&g.re), fmt_rat(&-g.im.clone()))
                } else {
                    format!("{}+{}*i", fmt_rat(&g.re), fmt_rat(&g.im))
                }
            }
            Scalar::Complex(c) => {
                if c.im < 0.0 {
                    format!("{:?}-{:?}*i", c.re, -c.im)
                } else {
                    format!("{:?}+{:?}*i", c.re, c.im)
                }
            }
        }
    }

    /// Parses the textual encoding, with float components promoted to complex
    /// floats carrying `tol`.
    pub fn parse_with_tolerance(s: &str, tol: f64) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let (re_txt, im_txt) = split_complex(s)?;
        let is_float = |t: &str| {
            t.contains('.') || t.contains('e') || t.contains('E') || t.contains("inf") || t.contains("NaN")
        };
        let floaty = re_txt.map_or(false, is_float) || im_txt.as_deref().map_or(false, is_float);
        if floaty {
            let re = match re_txt {
                Some(t) => parse_float(t)?,
                None => 0.0,
            };
            let im = match im_txt.as_deref() {
                Some(t) => parse_float(t)?,
                None => 0.0,
            };
            return Ok(Scalar::complex(re, im, tol));
        }
        let re = match re_txt {
            Some(t) => parse_rat(t)?,
            None => BigRational::zero(),
        };
        let im = match im_txt.as_deref() {
            Some(t) => parse_rat(t)?,
            None => BigRational::zero(),
        };
        Ok(Scalar::gaussian(re, im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            r / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(t: &str) -> Result<BigRational> {
    let t = t.trim();
    let bad = || Error::Parse(format!("malformed rational '{t}'"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{t}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

fn parse_float(t: &str) -> Result<f64> {
    t.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("malformed float '{t}'")))
}

/// Splits `re(+|-)im*i`, `im*i`, `i` or `re` into textual parts.
fn split_complex(s: &str) -> Result<(Option<&str>, Option<String>)> {
    let Some(body) = s.strip_suffix('i') else {
        return Ok((Some(s), None));
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    // find the sign separating real and imaginary parts, skipping a leading
    // sign and exponent signs
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/' | b'+' | b'-') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (Some(&body[..k]), &body[k..]),
        None => (None, body),
    };
    let im = im.strip_prefix('+').unwrap_or(im);
    let im = match im {
        "" => "1".to_string(),
        "-" => "-1".to_string(),
        other => {
            // "+-3/4" style
            other.replacen("+-", "-", 1)
        }
    };
    if im.is_empty() {
        return Err(Error::Parse(format!("malformed complex scalar '{s}'")));
    }
    Ok((re, Some(im)))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse_with_tolerance(s, DEFAULT_TOLERANCE)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => a == b,
            (Scalar::Rational(_), Scalar::Gaussian(_)) | (Scalar::Gaussian(_), Scalar::Rational(_)) => false,
            _ => {
                let tol = self.tolerance().max(other.tolerance());
                (self.to_c64() - other.to_c64()).norm() <= tol
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

enum Promoted {
    Rat(BigRational, BigRational),
    Gauss(GaussianRational, GaussianRational),
    Float(Complex64, Complex64, f64),
}

fn as_gauss(s: &Scalar) -> GaussianRational {
    match s {
        Scalar::Rational(r) => GaussianRational {
            re: r.clone(),
            im: BigRational::zero(),
        },
        Scalar::Gaussian(g) => g.clone(),
        Scalar::Complex(_) => unreachable!("float scalars are promoted separately"),
    }
}

fn promote(a: &Scalar, b: &Scalar) -> Promoted {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Promoted::Rat(x.clone(), y.clone()),
        (Scalar::Complex(_), _) | (_, Scalar::Complex(_)) => {
            Promoted::Float(a.to_c64(), b.to_c64(), a.tolerance().max(b.tolerance()))
        }
        _ => Promoted::Gauss(as_gauss(a), as_gauss(b)),
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => return Scalar::Rational(x + y),
        _ => {}
    }
    match promote(a, b) {
        Promoted::Rat(x, y) => Scalar::Rational(x + y),
        Promoted::Gauss(x, y) => Scalar::gaussian(x.re + y.re, x.im + y.im),
        Promoted::Float(x, y, tol) => Scalar::Complex(ComplexFloat::from_value(x + y, tol)),
    }
}

fn sub_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => return Scalar::Rational(x - y),
        _ => {}
    }
    match promote(a, b) {
        Promoted::Rat(x, y) => Scalar::Rational(x - y),
        Promoted::Gauss(x, y) => Scalar::gaussian(x.re - y.re, x.im - y.im),
        Promoted::Float(x, y, tol) => Scalar::Complex(ComplexFloat::from_value(x - y, tol)),
    }
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => return Scalar::Rational(x * y),
        (Scalar::Rational(x), _) | (_, Scalar::Rational(x)) if x.is_zero() => return Scalar::zero(),
        _ => {}
    }
    match promote(a, b) {
        Promoted::Rat(x, y) => Scalar::Rational(x * y),
        Promoted::Gauss(x, y) => Scalar::gaussian(
            &x.re * &y.re - &x.im * &y.im,
            &x.re * &y.im + &x.im * &y.re,
        ),
        Promoted::Float(x, y, tol) => Scalar::Complex(ComplexFloat::from_value(x * y, tol)),
    }
}

fn neg_ref(a: &Scalar) -> Scalar {
    match a {
        Scalar::Rational(r) => Scalar::Rational(-r.clone()),
        Scalar::Gaussian(g) => Scalar::Gaussian(GaussianRational {
            re: -g.re.clone(),
            im: -g.im.clone(),
        }),
        Scalar::Complex(c) => Scalar::complex(-c.re, -c.im, c.tol),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| mul_ref(a, &b.inv()));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(self)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
