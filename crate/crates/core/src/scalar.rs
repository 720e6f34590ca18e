//! Exact numbers `a + b·√D` over the rationals, and a float fallback.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance for float comparisons coming out of linear algebra.
pub const FLOAT_TOL: f64 = 1e-9;

/// An element `a + b·√D` with `D` squarefree; `D = 1` encodes a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: BigRational,
    b: BigRational,
    radicand: u64,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest `s` and squarefree `r` with `n = s²·r`.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, n)
}

impl Quadratic {
    pub fn rational(a: BigRational) -> Self {
        Quadratic { a, b: BigRational::zero(), radicand: 1 }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(ratio(n, d))
    }

    pub fn int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// `a + b·√radicand`; the radicand is reduced to its squarefree part.
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        let (s, r) = squarefree_split(radicand);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if r == 1 {
            Quadratic::rational(a + b)
        } else {
            Quadratic { a, b, radicand: r }.normalized()
        }
    }

    /// `√radicand` itself.
    pub fn sqrt(radicand: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), radicand)
    }

    /// The golden-ratio conjugate `(√5 − 1)/2`.
    pub fn lambda() -> Self {
        Self::new(ratio(-1, 2), ratio(1, 2), 5)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.radicand = 1;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (1, r) | (r, 1) => r,
            (r, s) if r == s => r,
            (r, s) => panic!("mixing Q(sqrt {r}) and Q(sqrt {s})"),
        }
    }

    pub fn conjugate(&self) -> Self {
        Quadratic { a: self.a.clone(), b: -self.b.clone(), radicand: self.radicand }
    }

    /// `a² − D·b²`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        &self.a * &self.a - d * &self.b * &self.b
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with D·b²
        match self.norm().cmp(&BigRational::zero()) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        let c = self.conjugate();
        Quadratic { a: c.a / &n, b: c.b / &n, radicand: self.radicand }.normalized()
    }

    /// Writes `self = p + q·λ` for `λ = (√5 − 1)/2`; `None` outside `Q(√5)`.
    pub fn lambda_form(&self) -> Option<(BigRational, BigRational)> {
        if self.radicand != 1 && self.radicand != 5 {
            return None;
        }
        let q = &self.b * BigRational::from_integer(BigInt::from(2));
        let p = &self.a + &self.b;
        Some((p, q))
    }

    /// Text such as `2-3*lambda`.
    pub fn lambda_string(&self) -> Option<String> {
        let (p, q) = self.lambda_form()?;
        Some(linear_string(&p, &q, "lambda"))
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn linear_string(a: &BigRational, b: &BigRational, name: &str) -> String {
    if b.is_zero() {
        return a.to_string();
    }
    let coef = |b: &BigRational| -> String {
        if b.is_one() {
            String::new()
        } else {
            format!("{b}*")
        }
    };
    let mut s = String::new();
    if !a.is_zero() {
        s.push_str(&a.to_string());
        if b.is_positive() {
            s.push('+');
        } else {
            s.push('-');
        }
        s.push_str(&coef(&b.abs()));
    } else if b.is_negative() {
        s.push('-');
        s.push_str(&coef(&b.abs()));
    } else {
        s.push_str(&coef(b));
    }
    s.push_str(name);
    s
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = format!("sqrt{}", self.radicand);
        write!(f, "{}", linear_string(&self.a, &self.b, &name))
    }
}

impl FromStr for Quadratic {
    type Err = Error;

    /// Parses `a`, `a+b*sqrtD`, `a-sqrtD`, `b*sqrtD` with rational `a`, `b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad exact number {s:?}"));
        let parse_rat = |t: &str| -> Result<BigRational> { t.parse::<BigRational>().map_err(|_| bad()) };
        let Some(pos) = s.find("sqrt") else {
            return Ok(Quadratic::rational(parse_rat(s)?));
        };
        let radicand: u64 = s[pos + 4..].parse().map_err(|_| bad())?;
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // the last sign after position 0 separates the rational part
        let (a_txt, b_txt) = match head.rfind(['+', '-']).filter(|&i| i > 0) {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = match b_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rat(t.strip_prefix('+').unwrap_or(t))?,
        };
        Ok(Quadratic::new(parse_rat(a_txt)?, b, radicand))
    }
}

impl Add for &Quadratic {
    type Output = Quadratic;
    fn add(self, o: &Quadratic) -> Quadratic {
        let r = self.common(o);
        Quadratic { a: &self.a + &o.a, b: &self.b + &o.b, radicand: r }.normalized()
    }
}

impl Sub for &Quadratic {
    type Output = Quadratic;
    fn sub(self, o: &Quadratic) -> Quadratic {
        let r = self.common(o);
        Quadratic { a: &self.a - &o.a, b: &self.b - &o.b, radicand: r }.normalized()
    }
}

impl Mul for &Quadratic {
    type Output = Quadratic;
    fn mul(self, o: &Quadratic) -> Quadratic {
        let r = self.common(o);
        let d = BigRational::from_integer(BigInt::from(r));
        Quadratic {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            radicand: r,
        }
        .normalized()
    }
}

impl Div for &Quadratic {
    type Output = Quadratic;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Quadratic) -> Quadratic {
        self * &o.inverse()
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic { a: -self.a.clone(), b: -self.b.clone(), radicand: self.radicand }
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).signum().cmp(&0))
    }
}

/// A probability or weight: exact when possible, float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Quadratic),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Quadratic::int(0))
    }

    pub fn one() -> Self {
        Scalar::Exact(Quadratic::int(1))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Exact(Quadratic::from_ratio(n, d))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn exact(&self) -> Option<&Quadratic> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    /// Exact equality for exact pairs, `FLOAT_TOL` otherwise.
    pub fn approx_eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= FLOAT_TOL,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.signum() >= 0,
            Scalar::Float(x) => *x >= -FLOAT_TOL,
        }
    }

    pub fn scale(&self, n: i64) -> Scalar {
        self * &Scalar::from_ratio(n, 1)
    }

    fn lift(&self, other: &Scalar, exact: impl Fn(&Quadratic, &Quadratic) -> Quadratic, float: impl Fn(f64, f64) -> f64) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Float(float(self.to_f64(), other.to_f64())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => match q.lambda_string() {
                Some(s) if !q.is_rational() => write!(f, "{s}"),
                _ => write!(f, "{q}"),
            },
            Scalar::Float(x) => write!(f, "{x:.10}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.lift(o, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.lift(o, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.lift(o, |a, b| a * b, |a, b| a * b)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.lift(o, |a, b| a / b, |a, b| a / b)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ScalarRepr {
    Exact(String),
    Float(f64),
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(q) => ScalarRepr::Exact(q.to_string()),
            Scalar::Float(x) => ScalarRepr::Float(*x),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Exact(s) => s.parse().map(Scalar::Exact).map_err(serde::de::Error::custom),
            ScalarRepr::Float(x) => Ok(Scalar::Float(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lambda_identities() {
        let l = Quadratic::lambda();
        // λ² + λ − 1 = 0
        let e = &(&(&l * &l) + &l) - &Quadratic::int(1);
        assert!(e.is_zero());
        assert_eq!(l.lambda_string().unwrap(), "lambda");
        let x = &Quadratic::int(2) - &(&Quadratic::int(3) * &l);
        assert_eq!(x.lambda_string().unwrap(), "2-3*lambda");
        assert!((x.to_f64() - (2.0 - 3.0 * 0.6180339887498949)).abs() < 1e-12);
    }

    #[test]
    fn sign_and_order() {
        let l = Quadratic::lambda();
        assert_eq!(l.signum(), 1);
        assert!(Quadratic::from_ratio(1, 2) < l);
        assert!(l < Quadratic::from_ratio(2, 3));
        assert_eq!((&l - &l).signum(), 0);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_split(20), (2, 5));
        assert_eq!(squarefree_split(5), (1, 5));
        assert_eq!(squarefree_split(16), (4, 1));
        assert!(Quadratic::sqrt(16).is_rational());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "3/2", "sqrt5", "-sqrt5", "1/2+3/2*sqrt5", "-1/2-sqrt5", "7/2-3/2*sqrt5"] {
            let q: Quadratic = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
    }

    #[test]
    fn json_round_trip() {
        let v = vec![Scalar::Exact(Quadratic::lambda()), Scalar::Float(0.25), Scalar::from_ratio(1, 6)];
        let s = serde_json::to_string(&v).unwrap();
        let back: Vec<Scalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in 1i64..20) {
            let x = Quadratic::new(ratio(a, d), ratio(b, 1), 5);
            let y = Quadratic::new(ratio(c, 1), ratio(a, d), 5);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&(&x + &y) - &y) == x);
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            let f = x.to_f64();
            prop_assert_eq!(x.signum(), if f > 1e-12 { 1 } else if f < -1e-12 { -1 } else { 0 });
        }
    }
}
