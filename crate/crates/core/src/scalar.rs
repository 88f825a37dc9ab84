//! Exact scalars: arbitrary-precision rationals, real quadratic surds
//! `(p + q*sqrt(d))/r` in a single radical, and an `f64` fallback tier.
//!
//! Arithmetic between a rational and a surd stays exact. Arithmetic between
//! surds in different radicals, or with a float, falls back to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest radicand whose squarefree part we are willing to compute.
const SQUAREFREE_LIMIT: u128 = 1 << 80;

/// `(p + q*sqrt(d)) / r` with `r > 0`, `d > 1` squarefree, `q != 0`,
/// and `gcd(p, q, r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: u64,
}

impl QuadSurd {
    /// Builds `(p + q*sqrt(d))/r`; returns a rational [`Scalar`] when the
    /// radical part vanishes or `d` is a perfect square.
    pub fn new_scalar(p: BigInt, q: BigInt, r: BigInt, d: u64) -> Result<Scalar> {
        if r.is_zero() {
            return Err(Error::Domain("surd with zero denominator".into()));
        }
        if d == 0 {
            return Ok(Scalar::Rational(BigRational::new(p, r)));
        }
        let (outer, inner) = squarefree_split(d as u128)?;
        let q = q * BigInt::from(outer);
        if q.is_zero() || inner == 1 {
            return Ok(Scalar::Rational(BigRational::new(p + q, r)));
        }
        Ok(Scalar::Surd(Self::normalized(p, q, r, inner as u64)))
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut r: BigInt, d: u64) -> Self {
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadSurd { p, q, r, d }
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.r.clone())
    }

    pub fn radical_coefficient(&self) -> BigRational {
        BigRational::new(self.q.clone(), self.r.clone())
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, u64) {
        (&self.p, &self.q, &self.r, self.d)
    }

    /// Galois conjugate `(p - q*sqrt(d))/r`.
    pub fn conjugate(&self) -> QuadSurd {
        QuadSurd {
            p: self.p.clone(),
            q: -self.q.clone(),
            r: self.r.clone(),
            d: self.d,
        }
    }

    /// Sign of `p + q*sqrt(d)` computed exactly.
    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * BigInt::from(self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let sqrt_d = (self.d as f64).sqrt();
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp != 0 && sp != sq {
            // p + q√d = (p² - q²d) / (p - q√d) avoids cancellation.
            let num = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
            let den = big_ratio_f64(&self.p, &self.r) - big_ratio_f64(&self.q, &self.r) * sqrt_d;
            return big_ratio_f64(&num, &(&self.r * &self.r)) / den;
        }
        big_ratio_f64(&self.p, &self.r) + big_ratio_f64(&self.q, &self.r) * sqrt_d
    }

    fn add_ref(&self, o: &QuadSurd) -> Scalar {
        debug_assert_eq!(self.d, o.d);
        let p = &self.p * &o.r + &o.p * &self.r;
        let q = &self.q * &o.r + &o.q * &self.r;
        let r = &self.r * &o.r;
        finish(p, q, r, self.d)
    }

    fn mul_ref(&self, o: &QuadSurd) -> Scalar {
        debug_assert_eq!(self.d, o.d);
        let d = BigInt::from(self.d);
        let p = &self.p * &o.p + &self.q * &o.q * d;
        let q = &self.p * &o.q + &o.p * &self.q;
        let r = &self.r * &o.r;
        finish(p, q, r, self.d)
    }

    fn add_rational(&self, x: &BigRational) -> Scalar {
        let p = &self.p * x.denom() + x.numer() * &self.r;
        let q = &self.q * x.denom();
        let r = &self.r * x.denom();
        finish(p, q, r, self.d)
    }

    fn mul_rational(&self, x: &BigRational) -> Scalar {
        let p = &self.p * x.numer();
        let q = &self.q * x.numer();
        let r = &self.r * x.denom();
        finish(p, q, r, self.d)
    }

    fn recip(&self) -> QuadSurd {
        let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        QuadSurd::normalized(&self.r * &self.p, -(&self.r * &self.q), norm, self.d)
    }
}

impl QuadSurd {
    fn ln_abs(&self) -> f64 {
        let d = BigInt::from(self.d);
        let ln_r = ln_big(&self.r);
        if sign_of(&self.p) * sign_of(&self.q) >= 0 {
            return ln_sum(&self.p, &self.q, self.d) - ln_r;
        }
        // |p + q√d| = |p² - q²d| / (|p| + |q|√d)
        let norm = &self.p * &self.p - &self.q * &self.q * d;
        ln_big(&norm) - ln_sum(&self.p, &self.q, self.d) - ln_r
    }
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    let m = n.magnitude();
    if bits < 1000 {
        return m.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 900;
    (m >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(|p| + |q|·√d)`.
fn ln_sum(p: &BigInt, q: &BigInt, d: u64) -> f64 {
    let bits = p.bits().max(q.bits());
    let shift = bits.saturating_sub(900);
    let pa = (p.magnitude() >> shift).to_f64().unwrap_or(f64::NAN);
    let qa = (q.magnitude() >> shift).to_f64().unwrap_or(f64::NAN);
    (pa + qa * (d as f64).sqrt()).ln() + shift as f64 * std::f64::consts::LN_2
}

fn finish(p: BigInt, q: BigInt, r: BigInt, d: u64) -> Scalar {
    if q.is_zero() {
        Scalar::Rational(BigRational::new(p, r))
    } else {
        Scalar::Surd(QuadSurd::normalized(p, q, r, d))
    }
}

fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `num / den` as `f64` without overflowing on huge operands.
pub(crate) fn big_ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    if let (Some(a), Some(b)) = (num.to_f64(), den.to_f64()) {
        if a.is_finite() && b.is_finite() && b != 0.0 {
            return a / b;
        }
    }
    let shift = num.bits().max(den.bits()).saturating_sub(1000) as usize;
    let a = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let b = (den >> shift).to_f64().unwrap_or(f64::NAN);
    a / b
}

/// Splits `n = outer² · inner` with `inner` squarefree.
pub(crate) fn squarefree_split(n: u128) -> Result<(u128, u128)> {
    if n > SQUAREFREE_LIMIT {
        return Err(Error::Domain(format!("radicand {n} too large to factor")));
    }
    let mut outer = 1u128;
    let mut inner = 1u128;
    let mut rest = n;
    let mut f = 2u128;
    while f * f <= rest {
        let mut e = 0;
        while rest.is_multiple_of(f) {
            rest /= f;
            e += 1;
        }
        for _ in 0..e / 2 {
            outer *= f;
        }
        if e % 2 == 1 {
            inner *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    inner *= rest;
    Ok((outer, inner))
}

/// Exact scalar tower used throughout the crate.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Surd(QuadSurd),
    Float(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn big(n: BigInt) -> Scalar {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Scalar {
        Scalar::int(0)
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    /// `(p + q*sqrt(d))/r` from machine integers.
    pub fn surd(p: i64, q: i64, r: i64, d: u64) -> Result<Scalar> {
        QuadSurd::new_scalar(BigInt::from(p), BigInt::from(q), BigInt::from(r), d)
    }

    /// Exact square root of a nonnegative rational (a surd or rational),
    /// or `f64::sqrt` for floats.
    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Float(x) if *x >= 0.0 => Ok(Scalar::Float(x.sqrt())),
            Scalar::Rational(x) if !x.is_negative() => {
                // sqrt(n/m) = sqrt(n*m)/m
                let nm = (x.numer() * x.denom())
                    .to_u128()
                    .ok_or_else(|| Error::Domain("radicand out of range".into()))?;
                let root = nm.sqrt();
                if root * root == nm {
                    return Ok(Scalar::Rational(BigRational::new(
                        BigInt::from(root),
                        x.denom().clone(),
                    )));
                }
                let (outer, inner) = squarefree_split(nm)?;
                QuadSurd::new_scalar(
                    BigInt::zero(),
                    BigInt::from(outer),
                    x.denom().clone(),
                    inner as u64,
                )
            }
            Scalar::Surd(_) => Err(Error::Domain(
                "square root of a surd leaves the quadratic tier".into(),
            )),
            _ => Err(Error::Domain("square root of a negative scalar".into())),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(x) => sign_of(x.numer()),
            Scalar::Surd(s) => s.signum(),
            Scalar::Float(x) => {
                if *x > 0.0 {
                    1
                } else if *x < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(x) => big_ratio_f64(x.numer(), x.denom()),
            Scalar::Surd(s) => s.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadSurd> {
        match self {
            Scalar::Surd(s) => Some(s),
            _ => None,
        }
    }

    /// Radicand of the surd tier, if any.
    pub fn radicand(&self) -> Option<u64> {
        self.as_surd().map(QuadSurd::radicand)
    }

    /// Name of the tier as used in serialized output.
    pub fn field_name(&self) -> String {
        match self {
            Scalar::Rational(_) => "rational".into(),
            Scalar::Surd(s) => format!("surd({})", s.d),
            Scalar::Float(_) => "float".into(),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Surd(s) => Scalar::Surd(s.recip()),
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.recip()?)
    }

    /// Exact comparison when both sides are exact; `f64` otherwise.
    pub fn cmp_value(&self, other: &Scalar) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            let diff = self - other;
            if diff.is_exact() {
                return Some(diff.signum().cmp(&0));
            }
        }
        self.to_f64().partial_cmp(&other.to_f64())
    }

    /// Largest integer not exceeding the value (exact for exact tiers).
    pub fn floor(&self) -> Result<BigInt> {
        match self {
            Scalar::Rational(x) => Ok(x.floor().to_integer()),
            Scalar::Float(x) if x.is_finite() => Ok(BigInt::from(x.floor() as i128)),
            Scalar::Float(_) => Err(Error::Domain("floor of a non-finite float".into())),
            Scalar::Surd(s) => {
                // Start from the float estimate and correct exactly.
                let est = s.to_f64().floor();
                let mut n = if est.is_finite() && est.abs() < 1e30 {
                    BigInt::from(est as i128)
                } else {
                    return Err(Error::Domain("surd too large to floor".into()));
                };
                loop {
                    let lo = self - &Scalar::big(n.clone());
                    if lo.signum() < 0 {
                        n -= 1;
                        continue;
                    }
                    let hi = self - &Scalar::big(&n + 1);
                    if hi.signum() >= 0 {
                        n += 1;
                        continue;
                    }
                    return Ok(n);
                }
            }
        }
    }

    /// `ln |x|`, finite for exact values far beyond the `f64` range.
    pub fn ln_abs(&self) -> f64 {
        match self {
            Scalar::Rational(x) => ln_big(x.numer()) - ln_big(x.denom()),
            Scalar::Surd(s) => s.ln_abs(),
            Scalar::Float(x) => x.abs().ln(),
        }
    }

    /// Human/JSON form, e.g. `3/2`, `3+2*sqrt(2)`, `(3+sqrt(5))/2`.
    pub fn exact_string(&self) -> String {
        self.to_string()
    }
}

fn float_of(a: &Scalar, b: &Scalar, f: impl Fn(f64, f64) -> f64) -> Scalar {
    Scalar::Float(f(a.to_f64(), b.to_f64()))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, o) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Surd(a), Surd(b)) if a.d == b.d => a.add_ref(b),
            (Surd(a), Rational(b)) | (Rational(b), Surd(a)) => a.add_rational(b),
            _ => float_of(self, o, |x, y| x + y),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, o) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Surd(a), Surd(b)) if a.d == b.d => a.mul_ref(b),
            (Surd(a), Rational(b)) | (Rational(b), Surd(a)) => a.mul_rational(b),
            _ => float_of(self, o, |x, y| x * y),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Surd(s) => Scalar::Surd(QuadSurd {
                p: -s.p.clone(),
                q: -s.q.clone(),
                r: s.r.clone(),
                d: s.d,
            }),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

/// Panics on division by zero, like the integer types; use
/// [`Scalar::checked_div`] when the divisor may vanish.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    /// Exact equality across exact tiers; floats compare bitwise by value.
    fn eq(&self, other: &Scalar) -> bool {
        use Scalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a == b,
            (Surd(a), Surd(b)) => a == b,
            (Rational(_), Surd(_)) | (Surd(_), Rational(_)) => false,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(x: BigRational) -> Scalar {
        Scalar::Rational(x)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Scalar {
        Scalar::Float(x)
    }
}

fn fmt_coef_sqrt(q: &BigInt, d: u64) -> String {
    if q.is_one() {
        format!("sqrt({d})")
    } else if *q == -BigInt::one() {
        format!("-sqrt({d})")
    } else {
        format!("{q}*sqrt({d})")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Surd(s) => {
                let rad = fmt_coef_sqrt(&s.q, s.d);
                let num = if s.p.is_zero() {
                    rad
                } else if s.q.is_positive() {
                    format!("{}+{}", s.p, rad)
                } else {
                    format!("{}{}", s.p, rad)
                };
                if s.r.is_one() {
                    write!(f, "{num}")
                } else if s.p.is_zero() {
                    write!(f, "{num}/{}", s.r)
                } else {
                    write!(f, "({num})/{}", s.r)
                }
            }
            Scalar::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses the forms produced by `Display`: integers, `p/q`,
    /// `[(]p±q*sqrt(d)[)][/r]`, and floats containing `.`, `e` or `inf`.
    fn from_str(text: &str) -> Result<Scalar> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse {
            offset: 0,
            message: format!("not a scalar: {text:?}"),
        };
        if t.is_empty() {
            return Err(bad());
        }
        if !t.contains("sqrt") {
            if let Some((n, d)) = t.split_once('/') {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                return Ok(Scalar::Rational(BigRational::new(n, d)));
            }
            if let Ok(n) = t.parse::<BigInt>() {
                return Ok(Scalar::big(n));
            }
            return t.parse::<f64>().map(Scalar::Float).map_err(|_| bad());
        }
        // Split off a trailing "/r" that is outside any parentheses.
        let (body, den) = match t.rfind('/') {
            Some(i) if !t[i..].contains("sqrt") => {
                let r: BigInt = t[i + 1..].parse().map_err(|_| bad())?;
                (&t[..i], r)
            }
            _ => (t.as_str(), BigInt::one()),
        };
        let body = match body.strip_prefix('(') {
            Some(inner) => inner.strip_suffix(')').ok_or_else(bad)?,
            None => body,
        };
        let s = body.find("sqrt(").ok_or_else(bad)?;
        let close = body[s..].find(')').ok_or_else(bad)? + s;
        let d: u64 = body[s + 5..close].parse().map_err(|_| bad())?;
        let head = &body[..s];
        // head is "[p]{+,-}[q*]" ; locate the sign that starts the radical term.
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0)
            .map(|(i, _)| i);
        let (p_str, q_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let p: BigInt = p_str.parse().map_err(|_| bad())?;
        let q: BigInt = match q_str {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            other => other.trim_start_matches('+').parse().map_err(|_| bad())?,
        };
        QuadSurd::new_scalar(p, q, den, d)
    }
}
