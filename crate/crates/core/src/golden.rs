//! Exact arithmetic in `Z[tau]`, in the dyadic golden numbers `Z[1/2, tau]`,
//! and in the residue field `Z[tau] / 2 Z[tau]`.
//!
//! `tau` is the golden ratio `(1 + sqrt 5) / 2`, so `tau^2 = tau + 1`. Its Galois
//! conjugate is `tau' = 1 - tau = -1 / tau`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_int::ops::{BitTest, UnsignedAbs};
use dashu_int::IBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The golden ratio as a float, for reporting only.
pub const TAU_F64: f64 = 1.618_033_988_749_895;

/// An element `a + b tau` of `Z[tau]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    a: IBig,
    b: IBig,
}

impl GoldenInt {
    pub fn new(a: impl Into<IBig>, b: impl Into<IBig>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<IBig>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn tau() -> Self {
        Self::new(0, 1)
    }

    /// `tau' = 1 - tau`.
    pub fn tau_conj() -> Self {
        Self::new(1, -1)
    }

    /// `sqrt 5 = 2 tau - 1`.
    pub fn sqrt5() -> Self {
        Self::new(-1, 2)
    }

    /// Coefficient of 1.
    pub fn a(&self) -> &IBig {
        &self.a
    }

    /// Coefficient of `tau`.
    pub fn b(&self) -> &IBig {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugation `a + b tau -> a + b tau' = (a + b) - b tau`.
    pub fn conj(&self) -> Self {
        Self {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// The field norm `(a + b tau)(a + b tau') = a^2 + ab - b^2`.
    pub fn norm(&self) -> IBig {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Exact sign of the real number `a + b tau`.
    ///
    /// Twice the value is `s + b sqrt5` with `s = 2a + b`. When `s` and `b` do
    /// not disagree in sign the answer is immediate; otherwise the larger of
    /// `s^2` and `5 b^2` decides. The two squares are never equal unless both
    /// vanish, since `sqrt 5` is irrational.
    pub fn sign(&self) -> i8 {
        let s: IBig = IBig::from(2) * &self.a + &self.b;
        let ss = ibig_sign(&s);
        let sb = ibig_sign(&self.b);
        if ss == 0 {
            return sb;
        }
        if sb == 0 || ss == sb {
            return ss;
        }
        let lhs = &s * &s;
        let rhs = IBig::from(5) * &self.b * &self.b;
        if lhs > rhs {
            ss
        } else {
            sb
        }
    }

    /// Image in `F4 = Z[tau] / 2 Z[tau]`.
    pub fn reduce_mod2(&self) -> F4 {
        F4::from_bits(is_odd(&self.a), is_odd(&self.b))
    }

    /// `2` divides `a + b tau` in `Z[tau]` exactly when both coordinates are even.
    pub fn is_even(&self) -> bool {
        !is_odd(&self.a) && !is_odd(&self.b)
    }

    /// Largest `e` such that `2^e` divides this element; `None` for zero.
    pub fn two_adic_valuation(&self) -> Option<usize> {
        match (self.a.trailing_zeros(), self.b.trailing_zeros()) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    /// Exact division by `2^e`. The caller guarantees divisibility.
    pub(crate) fn shr_exact(&self, e: usize) -> Self {
        debug_assert!(self.two_adic_valuation().map_or(true, |v| v >= e));
        Self {
            a: self.a.clone() >> e,
            b: self.b.clone() >> e,
        }
    }

    pub(crate) fn shl(&self, e: usize) -> Self {
        Self {
            a: self.a.clone() << e,
            b: self.b.clone() << e,
        }
    }

    /// Best-effort float value. Cancellation between `a` and `b tau` is
    /// avoided by dividing the norm by the conjugate when the signs differ.
    pub fn to_f64(&self) -> Result<f64> {
        to_f64_scaled(&self.a, &self.b, 0)
    }
}

fn ibig_sign(x: &IBig) -> i8 {
    if x.is_zero() {
        0
    } else if *x < IBig::ZERO {
        -1
    } else {
        1
    }
}

fn is_odd(x: &IBig) -> bool {
    x.trailing_zeros() == Some(0)
}

fn ibig_bits(x: &IBig) -> usize {
    x.trailing_zeros().map_or(0, |_| x.unsigned_abs().bit_len())
}

fn ibig_to_f64(x: &IBig) -> f64 {
    x.to_f64().value()
}

/// Multiply by `2^e` without intermediate overflow in the scale factor.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Value of `(a + b tau) / 2^k` as f64.
fn to_f64_scaled(a: &IBig, b: &IBig, k: u32) -> Result<f64> {
    let bits = ibig_bits(a).max(ibig_bits(b));
    // keep both coordinates well inside f64 range; the shift is folded into the exponent
    let shift = bits.saturating_sub(500);
    let (a, b) = if shift > 0 {
        (a.clone() >> shift, b.clone() >> shift)
    } else {
        (a.clone(), b.clone())
    };
    let af = ibig_to_f64(&a);
    let bf = ibig_to_f64(&b);
    let mantissa = if ibig_sign(&a) * ibig_sign(&b) < 0 {
        // a + b tau = norm / (a + b tau'), and a + b tau' has no cancellation here
        let norm = &a * &a + &a * &b - &b * &b;
        let denom = af + bf * (1.0 - TAU_F64);
        let nbits = ibig_bits(&norm);
        let nshift = nbits.saturating_sub(1000);
        let nf = ibig_to_f64(&(norm >> nshift));
        ldexp(nf, nshift as i64) / denom
    } else {
        af + bf * TAU_F64
    };
    let value = ldexp(mantissa, shift as i64 - k as i64);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::FloatOverflow)
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < IBig::ZERO {
            write!(f, "{}-{}*tau", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*tau", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a GoldenInt> for &'a GoldenInt {
    type Output = GoldenInt;
    /// `(a1 + b1 tau)(a2 + b2 tau) = (a1 a2 + b1 b2) + (a1 b2 + a2 b1 + b1 b2) tau`.
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        let bb = &self.b * &rhs.b;
        GoldenInt {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bb,
        }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(GoldenInt, Add, add);
forward_owned_binop!(GoldenInt, Sub, sub);
forward_owned_binop!(GoldenInt, Mul, mul);

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        -&self
    }
}

/// An element `num / 2^k` of the dyadic golden numbers `R = Z[1/2, tau]`.
///
/// Always canonical: either `k = 0` or `num` is not divisible by 2, so the
/// derived equality and hash are value equality and value hash.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DyadicGolden {
    num: GoldenInt,
    k: u32,
}

impl DyadicGolden {
    /// Builds `num / 2^k` and brings it into canonical form.
    pub fn new(num: GoldenInt, k: u32) -> Self {
        Self { num, k }.normalize()
    }

    pub fn from_golden(num: GoldenInt) -> Self {
        Self { num, k: 0 }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_golden(GoldenInt::from_int(a))
    }

    /// `(a + b tau) / 2^k`.
    pub fn from_parts(a: i64, b: i64, k: u32) -> Self {
        Self::new(GoldenInt::new(a, b), k)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn half() -> Self {
        Self::from_parts(1, 0, 1)
    }

    pub fn tau() -> Self {
        Self::from_golden(GoldenInt::tau())
    }

    pub fn tau_conj() -> Self {
        Self::from_golden(GoldenInt::tau_conj())
    }

    pub fn numerator(&self) -> &GoldenInt {
        &self.num
    }

    /// Denominator exponent `k` in `num / 2^k`.
    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.num == GoldenInt::one()
    }

    /// Strips common factors of two between numerator and denominator.
    pub fn normalize(self) -> Self {
        if self.k == 0 {
            return self;
        }
        match self.num.two_adic_valuation() {
            None => Self::zero(),
            Some(0) => self,
            Some(v) => {
                let e = v.min(self.k as usize);
                Self {
                    num: self.num.shr_exact(e),
                    k: self.k - e as u32,
                }
            }
        }
    }

    /// `2^e x`, exact.
    pub fn mul_pow2(&self, e: u32) -> Self {
        if e <= self.k {
            Self::new(self.num.clone(), self.k - e)
        } else {
            Self {
                num: self.num.shl((e - self.k) as usize),
                k: 0,
            }
        }
    }

    /// `x / 2^e`, exact.
    pub fn div_pow2(&self, e: u32) -> Self {
        Self::new(self.num.clone(), self.k + e)
    }

    /// The numerator of `2^e x` when it lies in `Z[tau]`.
    pub fn scaled_numerator(&self, e: u32) -> Option<GoldenInt> {
        if e >= self.k {
            Some(self.num.shl((e - self.k) as usize))
        } else if self.is_zero() {
            Some(GoldenInt::zero())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj(),
            k: self.k,
        }
    }

    pub fn sign(&self) -> i8 {
        self.num.sign()
    }

    pub fn to_f64(&self) -> Result<f64> {
        to_f64_scaled(&self.num.a, &self.num.b, self.k)
    }

    fn aligned(&self, other: &Self) -> (GoldenInt, GoldenInt, u32) {
        let k = self.k.max(other.k);
        (
            self.num.shl((k - self.k) as usize),
            other.num.shl((k - other.k) as usize),
            k,
        )
    }
}

impl PartialOrd for DyadicGolden {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact order of the real values.
impl Ord for DyadicGolden {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl fmt::Display for DyadicGolden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/2^{}", self.num, self.k)
        }
    }
}

/// One summand of `a + b tau`: an optional integer factor and `tau` or `tau'`.
fn parse_term(t: &str) -> Option<(IBig, IBig)> {
    let (neg, t) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (coef, unit) = if let Some(c) = t.strip_suffix("tau'") {
        (c, Some(true))
    } else if let Some(c) = t.strip_suffix("tau") {
        (c, Some(false))
    } else {
        (t, None)
    };
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let n = match (coef, unit) {
        ("", Some(_)) => IBig::ONE,
        ("", None) => return None,
        (c, _) => IBig::from_str(c).ok()?,
    };
    let n = if neg { -n } else { n };
    Some(match unit {
        None => (n, IBig::ZERO),
        Some(false) => (IBig::ZERO, n),
        Some(true) => (n.clone(), -n),
    })
}

impl FromStr for DyadicGolden {
    type Err = Error;

    /// Parses `a+b*tau`, `(a+b*tau)/2^k` and looser forms such as `1/2`,
    /// `tau/4`, `-tau'` or `(1-3tau)/8`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse dyadic golden number {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, k) = match s.rsplit_once('/') {
            Some((body, den)) => {
                let k = match den.strip_prefix("2^") {
                    Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                    None => {
                        let d = den.parse::<u64>().map_err(|_| bad())?;
                        if !d.is_power_of_two() {
                            return Err(bad());
                        }
                        d.trailing_zeros()
                    }
                };
                (body, k)
            }
            None => (s.as_str(), 0),
        };
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let mut cuts: Vec<usize> = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['*', '+', '-']))
            .map(|(i, _)| i)
            .collect();
        cuts.insert(0, 0);
        cuts.push(body.len());
        let (mut a, mut b) = (IBig::ZERO, IBig::ZERO);
        for w in cuts.windows(2) {
            let (x, y) = parse_term(&body[w[0]..w[1]]).ok_or_else(bad)?;
            a += x;
            b += y;
        }
        Ok(Self::new(GoldenInt::new(a, b), k))
    }
}

impl<'a> Add<&'a DyadicGolden> for &'a DyadicGolden {
    type Output = DyadicGolden;
    fn add(self, rhs: &DyadicGolden) -> DyadicGolden {
        if self.k == rhs.k {
            return DyadicGolden::new(&self.num + &rhs.num, self.k);
        }
        let (x, y, k) = self.aligned(rhs);
        DyadicGolden::new(x + y, k)
    }
}

impl<'a> Sub<&'a DyadicGolden> for &'a DyadicGolden {
    type Output = DyadicGolden;
    fn sub(self, rhs: &DyadicGolden) -> DyadicGolden {
        if self.k == rhs.k {
            return DyadicGolden::new(&self.num - &rhs.num, self.k);
        }
        let (x, y, k) = self.aligned(rhs);
        DyadicGolden::new(x - y, k)
    }
}

impl<'a> Mul<&'a DyadicGolden> for &'a DyadicGolden {
    type Output = DyadicGolden;
    fn mul(self, rhs: &DyadicGolden) -> DyadicGolden {
        // a product of two odd numerators can still be even (e.g. tau * tau' = -1 is odd,
        // but (1+tau)(1+tau') = 1), so renormalize
        DyadicGolden::new(&self.num * &rhs.num, self.k + rhs.k)
    }
}

impl Neg for &DyadicGolden {
    type Output = DyadicGolden;
    fn neg(self) -> DyadicGolden {
        DyadicGolden {
            num: -&self.num,
            k: self.k,
        }
    }
}

forward_owned_binop!(DyadicGolden, Add, add);
forward_owned_binop!(DyadicGolden, Sub, sub);
forward_owned_binop!(DyadicGolden, Mul, mul);

impl Neg for DyadicGolden {
    type Output = DyadicGolden;
    fn neg(self) -> DyadicGolden {
        -&self
    }
}

impl AddAssign<&DyadicGolden> for DyadicGolden {
    fn add_assign(&mut self, rhs: &DyadicGolden) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for DyadicGolden {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicGoldenRepr {
    a: String,
    b: String,
    k: u32,
}

impl Serialize for DyadicGolden {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DyadicGoldenRepr {
            a: self.num.a.to_string(),
            b: self.num.b.to_string(),
            k: self.k,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyadicGolden {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DyadicGoldenRepr::deserialize(deserializer)?;
        let a = IBig::from_str(&repr.a).map_err(D::Error::custom)?;
        let b = IBig::from_str(&repr.b).map_err(D::Error::custom)?;
        Ok(Self::new(GoldenInt::new(a, b), repr.k))
    }
}

/// The field with four elements, realized as `Z[tau] / 2 Z[tau]`.
///
/// Elements are the residues of `0, 1, tau, tau'`. As a vector space over
/// `F2` with basis `(1, tau)`, `tau' = 1 - tau` reduces to `1 + tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum F4 {
    O,
    I,
    T,
    Tp,
}

impl F4 {
    pub const ALL: [F4; 4] = [F4::O, F4::I, F4::T, F4::Tp];

    /// `c0 + c1 tau` with `c0, c1` in `F2`.
    pub fn from_bits(c0: bool, c1: bool) -> Self {
        match (c0, c1) {
            (false, false) => F4::O,
            (true, false) => F4::I,
            (false, true) => F4::T,
            (true, true) => F4::Tp,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            F4::O => (false, false),
            F4::I => (true, false),
            F4::T => (false, true),
            F4::Tp => (true, true),
        }
    }

    pub fn is_zero(self) -> bool {
        self == F4::O
    }

    /// The canonical lift in `{0, 1, tau, tau'}`.
    pub fn lift(self) -> GoldenInt {
        match self {
            F4::O => GoldenInt::zero(),
            F4::I => GoldenInt::one(),
            F4::T => GoldenInt::tau(),
            F4::Tp => GoldenInt::tau_conj(),
        }
    }
}

impl Add for F4 {
    type Output = F4;
    fn add(self, rhs: F4) -> F4 {
        let (x0, x1) = self.bits();
        let (y0, y1) = rhs.bits();
        F4::from_bits(x0 ^ y0, x1 ^ y1)
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, rhs: F4) -> F4 {
        let (x0, x1) = self.bits();
        let (y0, y1) = rhs.bits();
        // tau^2 = tau + 1
        F4::from_bits((x0 & y0) ^ (x1 & y1), (x0 & y1) ^ (x1 & y0) ^ (x1 & y1))
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            F4::O => "0",
            F4::I => "1",
            F4::T => "t",
            F4::Tp => "t'",
        })
    }
}
