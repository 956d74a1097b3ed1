//! Exact rational scalars and 3-vectors.
//!
//! Everything geometric in this crate is decided over `Q`. Rationals are
//! `num_rational::BigRational`, which is always kept reduced with a positive
//! denominator, and serializes as `"p/q"` (or `"p"` when `q = 1`).

pub mod lattice;
pub mod matrix;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use lattice::{coset_reps, dual_lattice, subspace_dual, CosetEnumeration, Lattice};
pub use matrix::{smith_normal_form, IntMatrix, Snf};

pub type Rational = BigRational;

/// `n / d` as a rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a plain decimal such as `"-0.125"` or `"1e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::Parse(format!("bad rational {s:?}")));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad rational {s:?}")));
    }
    let digits = format!("{whole}{frac}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    if neg {
        num = -num;
    }
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Renders a rational as a decimal with `digits` fractional digits (truncated
/// toward zero after rounding half away from zero).
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let (whole, frac) = abs.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub mod rational_seq {
    //! serde adapter: a sequence of rationals as `"p/q"` strings.
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<rational_str::RawScalar>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod rational_str {
    //! serde adapter: rationals as `"p/q"` strings.
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RawScalar::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawScalar {
        Str(String),
        Int(i64),
        Float(f64),
    }

    impl RawScalar {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RawScalar::Str(s) => parse_rational(&s),
                RawScalar::Int(i) => Ok(int(i)),
                RawScalar::Float(f) => parse_rational(&format!("{f}")),
            }
        }
    }
}

/// Exact vector in `Q^3`. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3(pub [Rational; 3]);

impl Vec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Vec3([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3([int(x), int(y), int(z)])
    }

    pub fn zero() -> Self {
        Vec3([Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn unit(axis: usize) -> Self {
        let mut v = Self::zero();
        v.0[axis] = Rational::one();
        v
    }

    pub fn x(&self) -> &Rational {
        &self.0[0]
    }
    pub fn y(&self) -> &Rational {
        &self.0[1]
    }
    pub fn z(&self) -> &Rational {
        &self.0[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vec3) -> Rational {
        &self.0[0] * &other.0[0] + &self.0[1] * &other.0[1] + &self.0[2] * &other.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, s: &Rational) -> Vec3 {
        Vec3([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s])
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn is_parallel(&self, other: &Vec3) -> bool {
        self.cross(other).is_zero()
    }

    /// Smallest integer vector that is a positive multiple of `self`.
    pub fn primitive(&self) -> Vec3 {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_of_denominators(self.0.iter());
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        Vec3(std::array::from_fn(|i| Rational::from_integer(&ints[i] / &g)))
    }

    /// Primitive integer representative of the line through `self`, signed so
    /// that the first nonzero coordinate is positive.
    pub fn direction(&self) -> Vec3 {
        let p = self.primitive();
        match p.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -p,
            _ => p,
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        std::array::from_fn(|i| to_f64(&self.0[i]))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Index<usize> for Vec3 {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

macro_rules! vec_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Vec3> for &Vec3 {
            type Output = Vec3;
            fn $m(self, o: &Vec3) -> Vec3 {
                Vec3([&self.0[0] $op &o.0[0], &self.0[1] $op &o.0[1], &self.0[2] $op &o.0[2]])
            }
        }
        impl $tr<Vec3> for Vec3 {
            type Output = Vec3;
            fn $m(self, o: Vec3) -> Vec3 {
                &self $op &o
            }
        }
        impl $tr<&Vec3> for Vec3 {
            type Output = Vec3;
            fn $m(self, o: &Vec3) -> Vec3 {
                &self $op o
            }
        }
        impl $tr<Vec3> for &Vec3 {
            type Output = Vec3;
            fn $m(self, o: Vec3) -> Vec3 {
                self $op &o
            }
        }
    };
}

vec_binop!(Add, add, +);
vec_binop!(Sub, sub, -);

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        let [a, b, c] = self.0;
        Vec3([-a, -b, -c])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        -(self.clone())
    }
}

impl Mul<&Rational> for &Vec3 {
    type Output = Vec3;
    fn mul(self, s: &Rational) -> Vec3 {
        self.scale(s)
    }
}

impl std::iter::Sum for Vec3 {
    fn sum<I: Iterator<Item = Vec3>>(iter: I) -> Vec3 {
        iter.fold(Vec3::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Vec3> for Vec3 {
    fn sum<I: Iterator<Item = &'a Vec3>>(iter: I) -> Vec3 {
        iter.fold(Vec3::zero(), |a, b| a + b)
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: [String; 3] = std::array::from_fn(|i| self.0[i].to_string());
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Vec3, D::Error> {
        let raw = Vec::<rational_str::RawScalar>::deserialize(d)?;
        if raw.len() != 3 {
            return Err(serde::de::Error::custom(format!("expected 3 coordinates, got {}", raw.len())));
        }
        let mut out = Vec::with_capacity(3);
        for r in raw {
            out.push(r.into_rational().map_err(serde::de::Error::custom)?);
        }
        let [a, b, c]: [Rational; 3] = out.try_into().unwrap();
        Ok(Vec3([a, b, c]))
    }
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational {
    a.dot(&b.cross(c))
}

/// Rank of a family of vectors in `Q^3`.
pub fn rank(vectors: &[Vec3]) -> usize {
    let mut rows: Vec<[Rational; 3]> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for k in col..3 {
                row[k] = &row[k] - &f * &pivot[k];
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Solves the 3x3 system `[a b c] t = x`; `None` when singular.
pub fn solve3(cols: [&Vec3; 3], x: &Vec3) -> Option<[Rational; 3]> {
    let d = det3(cols[0], cols[1], cols[2]);
    if d.is_zero() {
        return None;
    }
    let t0 = det3(x, cols[1], cols[2]) / &d;
    let t1 = det3(cols[0], x, cols[2]) / &d;
    let t2 = det3(cols[0], cols[1], x) / &d;
    Some([t0, t1, t2])
}

/// A closed axis-aligned box with rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Vec3,
    pub hi: Vec3,
}

impl Window {
    pub fn new(lo: Vec3, hi: Vec3) -> Result<Self> {
        if (0..3).any(|i| lo[i] >= hi[i]) {
            return Err(Error::Invalid("window must be nonempty in every axis".into()));
        }
        Ok(Window { lo, hi })
    }

    pub fn cube(half_side: i64) -> Self {
        Window { lo: Vec3::from_ints(-half_side, -half_side, -half_side), hi: Vec3::from_ints(half_side, half_side, half_side) }
    }

    /// Parses `"x0 x1 y0 y1 z0 z1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<Rational> = s.split_whitespace().map(parse_rational).collect::<Result<_>>()?;
        if parts.len() != 6 {
            return Err(Error::Parse(format!("window needs 6 numbers, got {}", parts.len())));
        }
        let lo = Vec3([parts[0].clone(), parts[2].clone(), parts[4].clone()]);
        let hi = Vec3([parts[1].clone(), parts[3].clone(), parts[5].clone()]);
        Window::new(lo, hi)
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }
}
