//! Exact arithmetic: arbitrary-precision rationals and the field Q(√3).
//!
//! Every predicate in the crate is decided with these types. Floating point
//! only shows up in [`to_f64`] / [`QuadNum::to_f64`], which are used for
//! rendering and for coarse candidate bucketing that is always followed by
//! an exact check.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` with optional sign. Returns `None` on malformed input
/// or a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let valid_int = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match text.split_once('/') {
        Some((p, q)) => {
            if !valid_int(p) || !valid_int(q) {
                return None;
            }
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            if !valid_int(text) {
                return None;
            }
            BigInt::from_str(text).ok().map(Rational::from_integer)
        }
    }
}

/// Reduces `x` into `[0, period)`.
pub fn mod_period(x: &Rational, period: &Rational) -> Rational {
    debug_assert!(period.is_positive());
    let q = (x / period).floor();
    x - q * period
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// A number `a + b√3` with rational `a`, `b`.
///
/// √3 is irrational, so the pair `(a, b)` is a unique representation and
/// structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadNum {
    pub a: Rational,
    pub b: Rational,
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadNum { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        QuadNum { a, b: Rational::zero() }
    }

    pub fn sqrt3() -> Self {
        QuadNum { a: Rational::zero(), b: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Sign of `a + b√3`: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa >= 0 && sb >= 0 {
            return if sa == 0 && sb == 0 { 0 } else { 1 };
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // Opposite signs: the term with the larger square wins. a² = 3b²
        // cannot hold for nonzero rationals.
        let a2 = &self.a * &self.a;
        let b2x3 = &self.b * &self.b * int(3);
        if a2 > b2x3 {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// `a - b√3`.
    pub fn conjugate(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -&self.b }
    }

    /// `a² - 3b²`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(3) * &self.b * &self.b
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadNum { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadNum { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * 3f64.sqrt()
    }

    /// Largest integer not exceeding the value, decided exactly.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64();
        let mut n = if approx.is_finite() {
            BigInt::from(approx.floor() as i64)
        } else {
            // Far outside f64 range: bound by the rational parts instead.
            let bound = self.b.abs().ceil().to_integer() * 2 + BigInt::one();
            self.a.floor().to_integer() - bound
        };
        let value_ge = |n: &BigInt| {
            let diff = self - &QuadNum::rational(Rational::from_integer(n.clone()));
            diff.sign()
        };
        while value_ge(&n) < 0 {
            n -= 1;
        }
        loop {
            let next = &n + 1;
            if value_ge(&next) >= 0 {
                n = next;
            } else {
                break;
            }
        }
        n
    }
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn quad_sign(x: &QuadNum) -> i8 {
    x.sign()
}

pub fn quad_cmp(x: &QuadNum, y: &QuadNum) -> Ordering {
    match (x - y).sign() {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_cmp(self, other)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for QuadNum {
    fn from(a: Rational) -> Self {
        QuadNum::rational(a)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        QuadNum {
            a: &self.a * &rhs.a + int(3) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Panics on division by zero, like the rational type it wraps.
impl Div<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn div(self, rhs: &QuadNum) -> QuadNum {
        self.checked_div(rhs).expect("division by zero in Q(sqrt3)")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt3", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt3", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed quadratic number `{0}`")]
pub struct ParseQuadError(pub String);

impl FromStr for QuadNum {
    type Err = ParseQuadError;

    /// Accepts `a`, `b*sqrt3`, `a+b*sqrt3`, `a-b*sqrt3` (and `sqrt3` alone).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQuadError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = compact.strip_suffix("sqrt3") else {
            return parse_rational(&compact).map(QuadNum::rational).ok_or_else(err);
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_text, b_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_text).ok_or_else(err)?
        };
        let b = match b_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t).ok_or_else(err)?,
        };
        Ok(QuadNum { a, b })
    }
}

/// Integer part helper used by the lattice code.
pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Rational, b: Rational) -> QuadNum {
        QuadNum::new(a, b)
    }

    // Oracle: sign of a + b√3 by comparing a² with 3b² in plain integers.
    fn oracle_sign(a: i64, b: i64) -> i8 {
        let (a2, b2) = ((a as i128) * (a as i128), 3 * (b as i128) * (b as i128));
        match (a.signum(), b.signum()) {
            (0, 0) => 0,
            (sa, sb) if sa >= 0 && sb >= 0 => 1,
            (sa, sb) if sa <= 0 && sb <= 0 => -1,
            (sa, _) if a2 > b2 => sa as i8,
            (_, sb) => sb as i8,
        }
    }

    #[test]
    fn sign_examples() {
        assert_eq!(quad_sign(&q(int(1), int(0))), 1);
        assert_eq!(oracle_sign(7, -4), 1);
        assert_eq!(quad_sign(&q(int(7), int(-4))), 1);
        assert_eq!(oracle_sign(26, -15), 1);
        assert_eq!(quad_sign(&q(int(26), int(-15))), 1);
        assert_eq!(quad_sign(&q(int(-26), int(15))), -1);
        assert_eq!(quad_sign(&QuadNum::zero()), 0);
    }

    #[test]
    fn sign_matches_integer_oracle() {
        for a in -30..=30 {
            for b in -20..=20 {
                assert_eq!(quad_sign(&q(int(a), int(b))), oracle_sign(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(quad_cmp(&QuadNum::zero(), &QuadNum::zero()), Ordering::Equal);
        assert_eq!(quad_cmp(&q(int(2), int(0)), &QuadNum::sqrt3()), Ordering::Greater);
        assert_eq!(quad_cmp(&QuadNum::sqrt3(), &q(rat(12, 7), int(0))), Ordering::Greater);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-3"), Some(int(-3)));
        assert_eq!(parse_rational("3/-6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("-"), None);
        assert_eq!(rat(2, 4).to_string(), "1/2");
        assert_eq!(int(-2).to_string(), "-2");
    }

    #[test]
    fn mod_period_reduces() {
        assert_eq!(mod_period(&int(-2), &int(6)), int(4));
        assert_eq!(mod_period(&int(6), &int(6)), int(0));
        assert_eq!(mod_period(&rat(13, 2), &int(6)), rat(1, 2));
    }

    #[test]
    fn quad_text_round_trip() {
        for text in ["1/2+3*sqrt3", "-2-1/3*sqrt3", "5", "-1*sqrt3", "0"] {
            let x: QuadNum = text.parse().unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert_eq!("sqrt3".parse::<QuadNum>().unwrap(), QuadNum::sqrt3());
        assert_eq!("2-sqrt3".parse::<QuadNum>().unwrap(), q(int(2), int(-1)));
        assert!("1+x*sqrt3".parse::<QuadNum>().is_err());
    }

    #[test]
    fn floor_is_exact() {
        // 26 - 15√3 ≈ 0.0192
        assert_eq!(q(int(26), int(-15)).floor(), BigInt::from(0));
        assert_eq!(q(int(-26), int(15)).floor(), BigInt::from(-1));
        assert_eq!(QuadNum::sqrt3().floor(), BigInt::from(1));
        assert_eq!(q(int(3), int(0)).floor(), BigInt::from(3));
    }

    #[test]
    fn inverse_and_division() {
        let x = q(int(7), int(-4));
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, QuadNum::one());
        assert!(QuadNum::zero().recip().is_none());
    }
}
