//! Exact arithmetic in real quadratic fields.
//!
//! A [`QuadReal`] stores a value `a + b*sqrt(d)` with rational `a`, `b` and a
//! squarefree radicand `d`. All operations are exact; equality and order are
//! decidable. Values with `b = 0` are canonicalized to `d = 1`, so a plain
//! rational is representation-unique and mixes freely with any radicand.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Errors from quadratic-field arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("continued fraction of a rational has no moving average")]
    RationalInput,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Splits `d` into `(s, r)` with `d = s^2 * r` and `r` squarefree.
///
/// Trial division stops at 2^20; a remaining perfect-square cofactor is still
/// extracted, so reduction is complete for every radicand below 2^40.
fn extract_square(d: u64) -> (u64, u64) {
    let mut rest = d;
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= rest && p < (1 << 20) {
        while rest % (p * p) == 0 {
            rest /= p * p;
            root *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.isqrt();
    if s * s == rest {
        root *= s;
        rest = 1;
    }
    (root, rest)
}

/// An exact element `a + b*sqrt(d)` of a real quadratic field.
///
/// Canonical form: `d` is squarefree, and `d == 1` exactly when `b == 0`.
/// Derived equality and hashing are therefore value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadReal {
    /// Builds `a + b*sqrt(d)`, reducing square factors out of the radicand.
    ///
    /// `d` must be positive. A perfect-square `d` (or `b == 0`) collapses to
    /// a rational value with `d = 1`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, QuadError> {
        if d == 0 {
            return Err(QuadError::InvalidParams("radicand must be positive".into()));
        }
        let (root, rest) = extract_square(d);
        let b = b * Rational::from_integer(BigInt::from(root));
        Ok(if rest == 1 {
            Self::from_rational(a + b)
        } else if b.is_zero() {
            Self::from_rational(a)
        } else {
            QuadReal { a, b, d: rest }
        })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadReal { a, b: Rational::zero(), d: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as an exact value. `q` must be nonzero.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self, QuadError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient `b` of `sqrt(d)`.
    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    /// The squarefree radicand (1 for rational values).
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact rational value, if `self` is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn unified_radicand(&self, other: &Self) -> Result<u64, QuadError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(QuadError::RadicandMismatch(d1, d2)),
        }
    }

    /// `d` is already squarefree here; only the `b == 0` collapse is needed.
    fn make(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            QuadReal { a, b, d }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.unified_radicand(other)?;
        Ok(Self::make(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.unified_radicand(other)?;
        Ok(Self::make(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.unified_radicand(other)?;
        let rad = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * &rad;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::make(a, b, d))
    }

    /// Multiplicative inverse via the conjugate: `1/(a+b√d) = (a-b√d)/(a²-b²d)`.
    pub fn checked_recip(&self) -> Result<Self, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let rad = Rational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * &rad;
        debug_assert!(!norm.is_zero(), "zero norm implies zero value for squarefree d");
        Ok(Self::make(&self.a / &norm, -(&self.b) / &norm, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QuadError> {
        self.checked_mul(&other.checked_recip()?)
    }

    /// Sign of the value, decided exactly.
    pub fn sign(&self) -> Ordering {
        let zero = Rational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: |a| vs |b|*sqrt(d)  <=>  a^2 vs b^2*d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a^2 = b^2 d with b != 0 contradicts d squarefree > 1"),
        }
    }

    /// Exact total order on a common radicand.
    pub fn compare(&self, other: &Self) -> Result<Ordering, QuadError> {
        Ok(self.checked_sub(other)?.sign())
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// The unique integer `n` with `n <= self < n+1`.
    ///
    /// Rational values floor directly. Otherwise rational bounds on `sqrt(d)`
    /// seeded from a scaled integer square root (tight enough to cover the
    /// magnitude of `b`) are bisected until both ends agree on the floor; the
    /// loop terminates because the value is irrational.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let bits = self.b.numer().bits().saturating_sub(self.b.denom().bits()) + 16;
        let root = (BigInt::from(self.d) << (2 * bits)).sqrt();
        let scale = BigInt::one() << bits;
        let mut lo = Rational::new(root.clone(), scale.clone());
        let mut hi = Rational::new(root + BigInt::one(), scale);
        let d_rat = Rational::from_integer(BigInt::from(self.d));
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        loop {
            let at_lo = (&self.a + &self.b * &lo).floor();
            let at_hi = (&self.a + &self.b * &hi).floor();
            if at_lo == at_hi {
                return at_lo.to_integer();
            }
            let mid = (&lo + &hi) * &half;
            if &mid * &mid < d_rat {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Fractional part `self - floor(self)`, always in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let n = Self::from_rational(Rational::from_integer(self.floor()));
        self.checked_sub(&n).expect("integer shares any radicand")
    }

    /// Scales by an exact rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Self::make(&self.a * r, &self.b * r, self.d)
    }

    /// `f64` approximation (display and statistics only; never feeds back
    /// into exact computations).
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Decimal rendering with `digits` fractional digits, correctly rounded
    /// (ties, which only arise for rational values, round half up).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.scale(&Rational::from_integer(scale.clone()));
        let shifted = scaled
            .checked_add(&QuadReal::from_ratio(1, 2))
            .expect("rational shift");
        let rounded = shifted.floor();
        let negative = rounded.is_negative();
        let abs = rounded.abs();
        let int = &abs / &scale;
        let frac = &abs % &scale;
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac:0>width$}", width = digits)
        }
    }
}

/// Positive root of `L*beta + S*beta^2 = 1`, i.e. `(-L + sqrt(L^2+4S)) / (2S)`.
///
/// Requires `L >= 1` and `S >= 1`; the radicand is reduced, so e.g.
/// `beta(2,2)` is stored over `sqrt(3)`.
pub fn beta(l: u32, s: u32) -> Result<QuadReal, QuadError> {
    if l < 1 || s < 1 {
        return Err(QuadError::InvalidParams(format!(
            "beta requires L >= 1 and S >= 1, got L={l}, S={s}"
        )));
    }
    let two_s = BigInt::from(2u64 * s as u64);
    let a = Rational::new(BigInt::from(-(l as i64)), two_s.clone());
    let b = Rational::new(BigInt::one(), two_s);
    let d = (l as u64) * (l as u64) + 4 * (s as u64);
    QuadReal::new(a, b, d)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: &QuadReal) -> QuadReal {
                self.$checked(rhs).expect("quadratic arithmetic")
            }
        }
        impl std::ops::$trait for QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: QuadReal) -> QuadReal {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&QuadReal> for QuadReal {
            type Output = QuadReal;
            fn $method(self, rhs: &QuadReal) -> QuadReal {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl std::ops::Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal::make(-(&self.a), -(&self.b), self.d)
    }
}

impl std::ops::Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -(&self)
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

impl fmt::Display for QuadReal {
    /// Exact round-trippable form: `a_num/a_den + b_num/b_den*sqrt(D)`,
    /// abbreviated to the nonzero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a);
        }
        let b_abs = self.b.abs();
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write_rational(f, &self.a)?;
            write!(f, "{}", if self.b.is_negative() { " - " } else { " + " })?;
        }
        write_rational(f, &b_abs)?;
        write!(f, "*sqrt({})", self.d)
    }
}

fn parse_rational(s: &str) -> Result<Rational, QuadError> {
    let err = || QuadError::Parse(format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if !den.is_positive() {
        return Err(QuadError::Parse(format!("denominator must be positive in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

impl FromStr for QuadReal {
    type Err = QuadError;

    /// Accepts `p/q`, `p`, `p/q + r/s*sqrt(D)`, `r/s*sqrt(D)`, `sqrt(D)` and
    /// the `-`-sign variants, with arbitrary whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(QuadError::Parse("empty input".into()));
        }
        let Some(pos) = t.find("sqrt(") else {
            return Ok(QuadReal::from_rational(parse_rational(&t)?));
        };
        if !t.ends_with(')') {
            return Err(QuadError::Parse(format!("unterminated sqrt in `{s}`")));
        }
        let d: u64 = t[pos + 5..t.len() - 1]
            .parse()
            .map_err(|_| QuadError::Parse(format!("invalid radicand in `{s}`")))?;
        let head = t[..pos].strip_suffix('*').unwrap_or(&t[..pos]);
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() {
            Rational::zero()
        } else {
            parse_rational(a_str)?
        };
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => {
                let (sign, rest) = match other.strip_prefix('-') {
                    Some(r) => (-1, r),
                    None => (1, other.strip_prefix('+').unwrap_or(other)),
                };
                parse_rational(rest)? * Rational::from_integer(BigInt::from(sign))
            }
        };
        QuadReal::new(a, b, d)
    }
}

impl serde::Serialize for QuadReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QuadReal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
