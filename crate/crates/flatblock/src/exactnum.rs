//! Exact arithmetic over Q and real quadratic fields Q(sqrt(d)).
//!
//! Every geometric predicate in the crate reduces to sign tests on [`Scalar`]
//! values `a + b*sqrt(d)` with `a`, `b` rational and `d` a square-free positive
//! integer, embedded into R with `sqrt(d) > 0`. No floating point is used
//! anywhere in the logic; `to_f64` exists for display only.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Element `a + b*sqrt(d)` of Q(sqrt(d)) under the positive real embedding.
///
/// Canonical form: `b == 0` implies `d == 1`, so plain rationals compare and
/// hash identically no matter which field they were produced in. Two scalars
/// with nonzero irrational parts interoperate only when their `d` agree.
#[derive(Clone, Debug)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, d: u64) -> Scalar {
        let d = if b.is_zero() { 1 } else { d };
        debug_assert!(d >= 1 && is_square_free(d), "d must be square-free >= 1");
        debug_assert!(!(d == 1 && !b.is_zero()), "sqrt(1) coefficient must be folded");
        Scalar { a, b, d }
    }

    pub fn from_rational(a: Rational) -> Scalar {
        Scalar { a, b: Rational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(rat_int(n))
    }

    pub fn zero() -> Scalar {
        Scalar::from_int(0)
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    /// sqrt(d) itself, as an element of Q(sqrt(d)).
    pub fn sqrt_d(d: u64) -> Scalar {
        if d == 1 {
            Scalar::one()
        } else {
            Scalar::new(Rational::zero(), Rational::one(), d)
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational value if the sqrt part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// The shared field of two scalars, or an error if they genuinely differ.
    fn join_field(&self, rhs: &Scalar) -> Result<u64> {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, _) => Ok(rhs.d),
            (_, true) => Ok(self.d),
            _ if self.d == rhs.d => Ok(self.d),
            _ => Err(Error::FieldMismatch(self.d, rhs.d)),
        }
    }

    fn join(&self, rhs: &Scalar) -> u64 {
        self.join_field(rhs)
            .unwrap_or_else(|e| panic!("{e}"))
    }

    /// Exact sign of `a + b*sqrt(d)` as a real number.
    ///
    /// If the parts agree in sign the answer is immediate; otherwise compare
    /// `a^2` against `b^2*d` and attach the sign of the dominating part.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.join_field(rhs)?;
        // 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - b^2 d)
        let denom = &rhs.a * &rhs.a - &rhs.b * &rhs.b * Rational::from(BigInt::from(d));
        debug_assert!(!denom.is_zero(), "nonzero scalar has nonzero norm");
        let inv = Scalar::new(&rhs.a / &denom, -(&rhs.b) / &denom, d);
        Ok(self * &inv)
    }

    /// Exact square root within Q(sqrt(field_d)), if one exists.
    pub fn sqrt_in(&self, field_d: u64) -> Option<Scalar> {
        match self.signum() {
            0 => return Some(Scalar::zero()),
            -1 => return None,
            _ => {}
        }
        if !self.b.is_zero() && self.d != field_d {
            return None;
        }
        let d_big = Rational::from(BigInt::from(field_d));
        if self.b.is_zero() {
            // sqrt of a rational: either rational, or q*sqrt(d) with q^2*d = a.
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Scalar::from_rational(r));
            }
            if field_d > 1 {
                if let Some(q) = rational_sqrt(&(&self.a / &d_big)) {
                    return Some(Scalar::new(Rational::zero(), q, field_d));
                }
            }
            return None;
        }
        // (p + q*sqrt(d))^2 = p^2 + q^2 d + 2pq sqrt(d): solve p^2+q^2 d = a, 2pq = b.
        // Substituting p = b/(2q) gives q^2 = (a +- sqrt(a^2 - d b^2)) / (2d).
        let disc = &self.a * &self.a - &self.b * &self.b * &d_big;
        let disc_root = rational_sqrt(&disc)?;
        let two_d = &d_big * Rational::from(BigInt::from(2));
        for root in [&disc_root, &(-&disc_root)] {
            let q2 = (&self.a + root) / &two_d;
            if q2.is_negative() {
                continue;
            }
            if let Some(q) = rational_sqrt(&q2) {
                if q.is_zero() {
                    continue;
                }
                let p = &self.b / (&q * Rational::from(BigInt::from(2)));
                let cand = Scalar::new(p, q, field_d);
                let cand = if cand.is_negative() { -&cand } else { cand };
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Exact square root within the scalar's own field.
    pub fn sqrt(&self) -> Option<Scalar> {
        self.sqrt_in(self.d)
    }

    /// Exact floor of the embedded real value.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // Bracket b*sqrt(d) between rational bounds and tighten until the
        // floor is pinned. a + b*sqrt(d) is irrational here, so this ends.
        let mut prec: u64 = 16;
        loop {
            let (lo, hi) = sqrt_d_bounds(self.d, prec);
            let (blo, bhi) = if self.b.is_positive() {
                (&self.b * &lo, &self.b * &hi)
            } else {
                (&self.b * &hi, &self.b * &lo)
            };
            let flo = (&self.a + blo).floor().to_integer();
            let fhi = (&self.a + bhi).floor().to_integer();
            if flo == fhi {
                return flo;
            }
            prec *= 2;
        }
    }

    /// Approximate value for display and SVG layout only.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Re-field a scalar into Q(sqrt(d)); only rational values may move.
    pub fn with_field(&self, d: u64) -> Result<Scalar> {
        if self.b.is_zero() || self.d == d {
            Ok(self.clone())
        } else {
            Err(Error::FieldMismatch(self.d, d))
        }
    }

    /// Smallest field containing both scalars.
    pub fn common_field(&self, other: &Scalar) -> Result<u64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Ok(1),
            (true, false) => Ok(other.d),
            (false, true) => Ok(self.d),
            (false, false) if self.d == other.d => Ok(self.d),
            _ => Err(Error::FieldMismatch(self.d, other.d)),
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact rational square root, if the value is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rational bounds lo <= sqrt(d) <= hi with hi - lo = 1/2^prec.
fn sqrt_d_bounds(d: u64, prec: u64) -> (Rational, Rational) {
    let scale = BigInt::one() << prec;
    let lo_num = (BigInt::from(d) * (&scale * &scale)).sqrt();
    let lo = Rational::new(lo_num.clone(), scale.clone());
    let hi = Rational::new(lo_num + 1, scale);
    (lo, hi)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, |$l:ident, $r:ident, $d:ident| $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let $d = self.join(rhs);
                let ($l, $r) = (self, rhs);
                $body
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |l, r, d| Scalar::new(&l.a + &r.a, &l.b + &r.b, d));
scalar_binop!(Sub, sub, |l, r, d| Scalar::new(&l.a - &r.a, &l.b - &r.b, d));
scalar_binop!(Mul, mul, |l, r, d| {
    let db = Rational::from(BigInt::from(d));
    Scalar::new(&l.a * &r.a + &l.b * &r.b * db, &l.a * &r.b + &l.b * &r.a, d)
});
scalar_binop!(Div, div, |l, r, d| {
    let _ = d;
    l.checked_div(r).unwrap_or_else(|e| panic!("{e}"))
});

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, self.d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: "0", "1/2", "3*sqrt(2)", "1/2+1/2*sqrt(5)", "-3/2+sqrt(2)".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&self.a.to_string());
            if self.b.is_positive() {
                out.push('+');
            }
        }
        if self.b == -Rational::one() {
            out.push('-');
        } else if self.b != Rational::one() {
            out.push_str(&self.b.to_string());
            out.push('*');
        }
        out.push_str(&format!("sqrt({})", self.d));
        write!(f, "{out}")
    }
}

/// Parse the canonical scalar grammar. `ambient_d` fixes the field a sqrt
/// term must be compatible with (`0` places no constraint).
pub fn parse_scalar(text: &str, ambient_d: u64) -> Result<Scalar> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut seen_d: Option<u64> = None;
    for term in split_terms(&s)? {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i32, rest),
            None => (1i32, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("bad scalar `{text}`")));
        }
        if let Some(idx) = body.find("sqrt(") {
            let inner = body[idx + 5..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad sqrt term in `{text}`")))?;
            let d: u64 = inner
                .parse()
                .map_err(|_| Error::Parse(format!("bad radicand in `{text}`")))?;
            if d == 0 || !is_square_free(d) {
                return Err(Error::Parse(format!("radicand {d} is not square-free positive")));
            }
            let coef_text = &body[..idx];
            let coef = if coef_text.is_empty() {
                Rational::one()
            } else {
                let coef_text = coef_text
                    .strip_suffix('*')
                    .ok_or_else(|| Error::Parse(format!("expected `*sqrt` in `{text}`")))?;
                parse_rational(coef_text)?
            };
            let coef = if sign < 0 { -coef } else { coef };
            if d == 1 {
                a += coef;
            } else if coef.is_zero() {
                // drop
            } else {
                if let Some(prev) = seen_d {
                    if prev != d {
                        return Err(Error::FieldMismatch(prev, d));
                    }
                }
                seen_d = Some(d);
                b += coef;
            }
        } else {
            let v = parse_rational(body)?;
            a += if sign < 0 { -v } else { v };
        }
    }
    let d = match seen_d {
        None => 1,
        Some(d) => {
            if ambient_d > 1 && d != ambient_d && !b.is_zero() {
                return Err(Error::FieldMismatch(d, ambient_d));
            }
            d
        }
    };
    Ok(Scalar::new(a, b, d))
}

/// Split "a+b-c" into signed terms at top level (no nesting besides sqrt()).
fn split_terms(s: &str) -> Result<Vec<String>> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for (i, c) in s.chars().enumerate() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parens in `{s}`")))?;
                cur.push(c);
            }
            '+' | '-' if depth == 0 && i > 0 => {
                terms.push(std::mem::take(&mut cur));
                if c == '-' {
                    cur.push('-');
                }
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parens in `{s}`")));
    }
    terms.push(cur);
    Ok(terms)
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("`{text}` is not an exact rational (floats are rejected)"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Planar vector with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl PartialOrd for Vec2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vec2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Vec2 {
        Vec2::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn from_rats(x: Rational, y: Rational) -> Vec2 {
        Vec2::new(Scalar::from_rational(x), Scalar::from_rational(y))
    }

    pub fn zero() -> Vec2 {
        Vec2::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Vec2 {
        Vec2::new(&self.x * s, &self.y * s)
    }
}

pub fn cross(u: &Vec2, v: &Vec2) -> Scalar {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &Vec2, v: &Vec2) -> Scalar {
    &u.x * &v.x + &u.y * &v.y
}

pub fn norm_sq(u: &Vec2) -> Scalar {
    dot(u, u)
}

/// True when `u` and `v` point the same way (parallel with positive dot).
pub fn same_direction(u: &Vec2, v: &Vec2) -> bool {
    cross(u, v).is_zero() && dot(u, v).is_positive()
}

impl Add<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Parse "(x,y)" with scalar components, splitting at the top-level comma.
pub fn parse_vec2(text: &str, ambient_d: u64) -> Result<Vec2> {
    let s = text.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(x,y)`, got `{text}`")))?;
    let mut depth = 0usize;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(|| Error::Parse(format!("expected two components in `{text}`")))?;
    Ok(Vec2::new(
        parse_scalar(&inner[..i], ambient_d)?,
        parse_scalar(&inner[i + 1..], ambient_d)?,
    ))
}

/// 2x2 matrix of scalars, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn neg_identity() -> Mat2 {
        Mat2::new(
            Scalar::from_int(-1),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::from_int(-1),
        )
    }

    pub fn det(&self) -> Scalar {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::NonPositiveDeterminant);
        }
        Ok(Mat2::new(
            (&self.d).checked_div(&det)?,
            (-&self.b).checked_div(&det)?,
            (-&self.c).checked_div(&det)?,
            (&self.a).checked_div(&det)?,
        ))
    }

    /// Solve M * w = v.
    pub fn solve(&self, v: &Vec2) -> Result<Vec2> {
        Ok(self.inverse()?.apply(v))
    }

    /// Reflection across the line through the origin with direction `v`.
    pub fn reflection_across(v: &Vec2) -> Result<Mat2> {
        let n = norm_sq(v);
        if n.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let xx = &v.x * &v.x;
        let yy = &v.y * &v.y;
        let xy2 = Scalar::from_int(2) * &v.x * &v.y;
        Ok(Mat2::new(
            (&xx - &yy).checked_div(&n)?,
            (&xy2).checked_div(&n)?,
            xy2.checked_div(&n)?,
            (yy - xx).checked_div(&n)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, d: u64) -> Scalar {
        parse_scalar(text, d).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(s("1+sqrt(2)", 2).signum(), 1);
        assert_eq!(Scalar::zero().signum(), 0);
        // -3/2 + sqrt(2) ~ -0.085
        assert_eq!(s("-3/2+sqrt(2)", 2).signum(), -1);
        assert_eq!(s("3/2-sqrt(2)", 2).signum(), 1);
        assert_eq!(s("-1-sqrt(5)", 5).signum(), -1);
    }

    #[test]
    fn conjugate_product() {
        let p = s("1+sqrt(2)", 2) * s("1-sqrt(2)", 2);
        assert_eq!(p, Scalar::from_int(-1));
    }

    #[test]
    fn golden_slope_sum() {
        let sum = s("1/2", 5) + s("1/2*sqrt(5)", 5);
        assert_eq!(sum, s("1/2+1/2*sqrt(5)", 5));
    }

    #[test]
    fn division_multiplies_back() {
        let x = s("1+sqrt(2)", 2);
        let inv = Scalar::one() / x.clone();
        assert_eq!(inv, s("-1+sqrt(2)", 2));
        assert_eq!(inv * x, Scalar::one());
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn vec_ops() {
        let u = Vec2::from_ints(1, 0);
        let v = Vec2::from_ints(0, 1);
        assert_eq!(cross(&u, &v), Scalar::one());
        let w = Vec2::new(s("1/2", 1), s("1/2", 1));
        assert_eq!(norm_sq(&w), s("1/2", 1));
        // (1, sqrt(2)) x (sqrt(2), 2) = 2 - 2 = 0
        let p = Vec2::new(Scalar::one(), Scalar::sqrt_d(2));
        let q = Vec2::new(Scalar::sqrt_d(2), Scalar::from_int(2));
        assert!(cross(&p, &q).is_zero());
    }

    #[test]
    fn display_roundtrip() {
        for (text, d) in [
            ("0", 1),
            ("1/2", 1),
            ("3*sqrt(2)", 2),
            ("1/2+1/2*sqrt(5)", 5),
            ("-3/2+sqrt(2)", 2),
            ("-7", 1),
            ("-sqrt(3)", 3),
        ] {
            assert_eq!(s(text, d).to_string(), *text);
        }
        assert!(parse_scalar("0.5", 1).is_err());
        assert!(parse_scalar("1/2+sqrt(8)", 2).is_err());
    }

    #[test]
    fn floor_exact() {
        assert_eq!(s("sqrt(2)", 2).floor(), BigInt::from(1));
        assert_eq!(s("-sqrt(2)", 2).floor(), BigInt::from(-2));
        assert_eq!(s("1/2+1/2*sqrt(5)", 5).floor(), BigInt::from(1));
        assert_eq!(s("-7/2", 1).floor(), BigInt::from(-4));
    }

    #[test]
    fn sqrt_in_field() {
        assert_eq!(s("9/4", 1).sqrt(), Some(s("3/2", 1)));
        assert_eq!(s("2", 2).sqrt_in(2), Some(s("sqrt(2)", 2)));
        assert_eq!(s("2", 1).sqrt(), None);
        // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        assert_eq!(s("3+2*sqrt(2)", 2).sqrt(), Some(s("1+sqrt(2)", 2)));
        // golden ratio: phi^2 = phi + 1
        let phi = s("1/2+1/2*sqrt(5)", 5);
        assert_eq!((&phi * &phi).sqrt(), Some(phi));
        assert_eq!(s("-1", 1).sqrt(), None);
    }

    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn random_scalar(state: &mut u64, d: u64) -> Scalar {
        let pick = |st: &mut u64| {
            let n = (splitmix(st) % 41) as i64 - 20;
            let den = (splitmix(st) % 12) as i64 + 1;
            rat(n, den)
        };
        Scalar::new(pick(state), pick(state), d)
    }

    #[test]
    fn field_axioms_randomized() {
        let mut st = 42u64;
        for _ in 0..300 {
            let x = random_scalar(&mut st, 2);
            let y = random_scalar(&mut st, 2);
            let z = random_scalar(&mut st, 2);
            assert_eq!((&x + &y) + &z, &x + &(&y + &z));
            assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
            if !x.is_zero() {
                assert_eq!(&x * &(Scalar::one() / &x), Scalar::one());
            }
            if x.is_positive() && y.is_positive() {
                assert!((&x * &y).is_positive());
                assert!((&x + &y).is_positive());
            }
        }
    }

    /// Interval oracle: bracket sqrt(d) to 128 fractional bits and compare.
    #[test]
    fn sign_matches_interval_oracle() {
        let mut st = 7u64;
        for i in 0..10_000 {
            let d = [2, 3, 5][i % 3];
            let x = random_scalar(&mut st, d);
            let (lo, hi) = super::sqrt_d_bounds(d, 128);
            let (blo, bhi) = if x.b.is_negative() {
                (&x.b * &hi, &x.b * &lo)
            } else {
                (&x.b * &lo, &x.b * &hi)
            };
            let vlo = &x.a + blo;
            let vhi = &x.a + bhi;
            if vlo.is_positive() {
                assert_eq!(x.signum(), 1);
            } else if vhi.is_negative() {
                assert_eq!(x.signum(), -1);
            }
            // interval straddles zero: only exact zero is permitted
            else if x.signum() == 0 {
                assert!(x.a.is_zero() && x.b.is_zero());
            }
        }
    }
}
