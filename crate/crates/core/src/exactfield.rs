//! Exact arithmetic over ℚ and the Gaussian rationals ℚ(i).
//!
//! Every value is kept in canonical form (reduced fractions with positive
//! denominators), so equality is component-wise. Conjugation is the real
//! structure used throughout the crate: a subspace is "real" when it is
//! stable under entry-wise conjugation.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// Arbitrary-precision rational number, always gcd-reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(Rational::from_integer(n.into()), Rational::zero())
    }

    /// `a/b + (c/d)i`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational::new(rational(a, b), rational(c, d))
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|x|²`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Nearest double-precision complex number; errors instead of returning
    /// an infinite component.
    pub fn to_complex_float(&self) -> Result<Complex64> {
        Ok(Complex64::new(rational_to_f64(&self.re)?, rational_to_f64(&self.im)?))
    }

    /// JSON form `[a, b, c, d]` meaning `a/b + (c/d)i`.
    pub fn to_parts(&self) -> [BigInt; 4] {
        [
            self.re.numer().clone(),
            self.re.denom().clone(),
            self.im.numer().clone(),
            self.im.denom().clone(),
        ]
    }
}

fn rational_to_f64(r: &Rational) -> Result<f64> {
    match r.to_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(CoreError::FloatOverflow(r.to_string())),
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the integer types.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero in ℚ(i)");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussianRational {
    /// Text form `a/b+c/di`; zero components are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.strip_prefix('+').unwrap_or(s);
    if t.is_empty() || t.starts_with(['+', '-']) && t.len() == 1 {
        return Err(CoreError::parse("rational", s));
    }
    t.parse().map_err(|_| CoreError::parse("rational", s.to_string()))
}

impl FromStr for GaussianRational {
    type Err = CoreError;

    /// Accepts `a/b+c/di`, `a/b`, `c/di`, `i`, `-i`, `2-i` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(CoreError::parse("gaussian rational", s));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianRational::from_rational(parse_rational(&t)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_text)?
        };
        let im = match im_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Ok(GaussianRational::new(re, im))
    }
}

/// Integers are emitted as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise.
fn serialize_bigint<S: SerializeTuple>(seq: &mut S, n: &BigInt) -> std::result::Result<(), S::Error> {
    match n.to_i64() {
        Some(v) => seq.serialize_element(&v),
        None => seq.serialize_element(&n.to_string()),
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_tuple(4)?;
        for part in self.to_parts().iter() {
            serialize_bigint(&mut seq, part)?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntLike {
    Int(i64),
    Text(String),
}

impl IntLike {
    fn to_bigint<E: de::Error>(&self) -> std::result::Result<BigInt, E> {
        match self {
            IntLike::Int(v) => Ok(BigInt::from(*v)),
            IntLike::Text(s) => s.parse().map_err(|_| E::custom(format!("not an integer: {s}"))),
        }
    }
}

struct GaussianVisitor;

impl<'de> Visitor<'de> for GaussianVisitor {
    type Value = GaussianRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a string \"a/b+c/di\", an integer, or an array [a, b, c, d]")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<GaussianRational, E> {
        Ok(GaussianRational::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<GaussianRational, E> {
        Ok(GaussianRational::from_rational(Rational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<GaussianRational, E> {
        v.parse().map_err(|e: CoreError| E::custom(e.to_string()))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<GaussianRational, A::Error> {
        let mut parts = Vec::with_capacity(4);
        while let Some(p) = seq.next_element::<IntLike>()? {
            parts.push(p.to_bigint::<A::Error>()?);
        }
        if parts.len() != 4 {
            return Err(de::Error::invalid_length(parts.len(), &self));
        }
        if parts[1].is_zero() || parts[3].is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        let re = Rational::new(parts[0].clone(), parts[1].clone());
        let im = Rational::new(parts[2].clone(), parts[3].clone());
        Ok(GaussianRational::new(re, im))
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(GaussianVisitor)
    }
}
