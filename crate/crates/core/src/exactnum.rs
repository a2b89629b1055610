//! Exact arithmetic in the golden-ratio field Q(φ) and its quartic extension Q(φ, √2).
//!
//! Every number is stored in the fixed basis `{1, φ, √2, φ√2}` as four integer
//! numerators over one positive common denominator, kept in lowest terms. Since
//! the basis is linearly independent over Q, the representation is unique and a
//! number is zero exactly when all four numerators are zero.
//!
//! Signs of irrational numbers are decided by certified dyadic enclosures of the
//! basis elements, doubling the precision until the enclosure excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Smallest subfield known to contain a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Subfield {
    Rational,
    Golden,
    Quartic,
}

impl Subfield {
    fn join(self, other: Subfield) -> Subfield {
        self.max(other)
    }
}

/// An element `(n0 + n1·φ + n2·√2 + n3·φ√2) / den` of Q(φ, √2).
#[derive(Clone)]
pub struct FieldNumber {
    num: [BigInt; 4],
    den: BigInt,
    tag: Subfield,
}

impl PartialEq for FieldNumber {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldNumber {}

impl std::hash::Hash for FieldNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldNumber({self})")
    }
}

fn tag_of(num: &[BigInt; 4]) -> Subfield {
    if !num[2].is_zero() || !num[3].is_zero() {
        Subfield::Quartic
    } else if !num[1].is_zero() {
        Subfield::Golden
    } else {
        Subfield::Rational
    }
}

impl FieldNumber {
    fn from_parts(mut num: [BigInt; 4], mut den: BigInt, tag: Subfield) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in num.iter() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        let tag = tag.max(tag_of(&num));
        FieldNumber { num, den, tag }
    }

    /// Builds `c0 + c1·φ + c2·√2 + c3·φ√2`.
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        let coeffs = [c0, c1, c2, c3];
        let mut den = BigInt::one();
        for c in &coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .each_ref()
            .map(|c| c.numer() * (&den / c.denom()));
        let tag = tag_of(&num);
        Self::from_parts(num, den, tag)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_big_integer(BigInt::from(n))
    }

    pub fn from_big_integer(n: BigInt) -> Self {
        FieldNumber {
            num: [n, BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
            tag: Subfield::Rational,
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_parts(
            [r.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            r.denom().clone(),
            Subfield::Rational,
        )
    }

    /// `a + b·φ` with integer coefficients.
    pub fn golden(a: i64, b: i64) -> Self {
        Self::from_parts(
            [a.into(), b.into(), BigInt::zero(), BigInt::zero()],
            BigInt::one(),
            Subfield::Golden,
        )
    }

    /// The golden mean φ = (1 + √5)/2.
    pub fn phi() -> Self {
        Self::golden(0, 1)
    }

    pub fn sqrt2() -> Self {
        Self::from_parts(
            [BigInt::zero(), BigInt::zero(), BigInt::one(), BigInt::zero()],
            BigInt::one(),
            Subfield::Quartic,
        )
    }

    pub fn phi_sqrt2() -> Self {
        Self::from_parts(
            [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()],
            BigInt::one(),
            Subfield::Quartic,
        )
    }

    /// Coefficient of basis element `i` (`1, φ, √2, φ√2`).
    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coefficients(&self) -> [Rational; 4] {
        [self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3)]
    }

    pub fn numerators(&self) -> &[BigInt; 4] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn tag(&self) -> Subfield {
        self.tag
    }

    /// The smallest subfield that actually contains the value.
    pub fn exact_subfield(&self) -> Subfield {
        tag_of(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }

    pub fn checked_div(&self, rhs: &FieldNumber) -> Result<FieldNumber, NumError> {
        let inv = rhs.inverse()?;
        Ok(self * &inv)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<FieldNumber, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let [b0, b1, b2, b3] = &self.num;
        // x = C + D√2 with C, D in Q(φ); x·(C − D√2) = C² − 2D² =: N in Q(φ).
        let c = (b0.clone(), b1.clone());
        let d = (b2.clone(), b3.clone());
        let cc = golden_mul(&c, &c);
        let dd = golden_mul(&d, &d);
        let n: (BigInt, BigInt) = (&cc.0 - &dd.0 * 2, &cc.1 - &dd.1 * 2);
        // N·conj(N) = n0² + n0·n1 − n1² is a nonzero integer.
        let norm = &n.0 * &n.0 + &n.0 * &n.1 - &n.1 * &n.1;
        let conj_n = (&n.0 + &n.1, -n.1.clone());
        // 1/x = den · (C − D√2) · conj(N) / norm
        let p = golden_mul(&c, &conj_n);
        let q = golden_mul(&d, &conj_n);
        let num = [
            &p.0 * &self.den,
            &p.1 * &self.den,
            -(&q.0 * &self.den),
            -(&q.1 * &self.den),
        ];
        Ok(Self::from_parts(num, norm, self.tag))
    }

    pub fn abs(&self) -> FieldNumber {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact sign: −1, 0 or +1.
    pub fn sign(&self) -> i32 {
        if self.is_rational() {
            return match self.num[0].sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            };
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = scaled_bounds(&self.num, bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn cmp_exact(&self, other: &FieldNumber) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.num[0].div_floor(&self.den);
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = scaled_bounds(&self.num, bits);
            let scale = &self.den << bits;
            let f_lo = lo.div_floor(&scale);
            let f_hi = hi.div_floor(&scale);
            if f_lo == f_hi {
                return f_lo;
            }
            bits *= 2;
        }
    }

    /// The representative of the value modulo 1 in `[0, 1)`.
    pub fn reduce_mod1(&self) -> FieldNumber {
        let f = self.floor();
        if f.is_zero() {
            return self.clone();
        }
        self - &FieldNumber::from_big_integer(f)
    }

    /// Decimal approximation, truncated towards −∞ at `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten_pow = BigInt::from(10u32).pow(digits as u32);
        let scaled = self * &FieldNumber::from_big_integer(ten_pow.clone());
        let v = scaled.floor();
        let neg = v.is_negative();
        let (int, frac) = v.abs().div_rem(&ten_pow);
        let frac_part = if digits == 0 {
            String::new()
        } else {
            format!(".{:0>width$}", frac.to_string(), width = digits)
        };
        // floor of a negative value rounds away from zero, so the printed string is
        // a lower bound as well.
        format!("{}{}{}", if neg { "-" } else { "" }, int, frac_part)
    }

    /// Nearest `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let (lo, _) = scaled_bounds(&self.num, 64);
        let v = Rational::new(lo, &self.den << 64);
        v.to_f64().unwrap_or(f64::NAN)
    }

    /// Certified enclosure of the value scaled by 2^96, if it fits in `i128`.
    pub fn enclosure(&self) -> Option<Enclosure> {
        let (lo, hi) = scaled_bounds(&self.num, Enclosure::SCALE_BITS);
        let lo = lo.div_floor(&self.den);
        let hi = Integer::div_ceil(&hi, &self.den);
        Some(Enclosure {
            lo: lo.to_i128()?,
            hi: hi.to_i128()?,
        })
    }
}

fn golden_mul(p: &(BigInt, BigInt), q: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let t = &p.1 * &q.1;
    (&p.0 * &q.0 + &t, &p.0 * &q.1 + &p.1 * &q.0 + t)
}

/// Integer bounds `(lo, hi)` for `2^bits · φ`, `2^bits · √2`, `2^bits · φ√2`.
struct BasisBounds {
    lo: [BigInt; 3],
    hi: [BigInt; 3],
}

impl BasisBounds {
    fn compute(bits: u64) -> Self {
        let one = BigInt::one() << bits;
        let four_k = BigInt::one() << (2 * bits);
        let r5 = (&four_k * 5u32).sqrt();
        let r2 = (&four_k * 2u32).sqrt();
        let r10 = (&four_k * 10u32).sqrt();
        // φ·2^k = (2^k + √(5·4^k))/2 ; φ√2·2^k = (√(2·4^k) + √(10·4^k))/2
        let phi_lo: BigInt = (&one + &r5) >> 1u32;
        let pr_lo: BigInt = (&r2 + &r10) >> 1u32;
        BasisBounds {
            hi: [&phi_lo + 1, &r2 + 1, &pr_lo + 2],
            lo: [phi_lo, r2, pr_lo],
        }
    }
}

const CACHED_LEVELS: usize = 8;

fn basis_bounds(bits: u64) -> std::borrow::Cow<'static, BasisBounds> {
    static CACHE: OnceLock<Vec<BasisBounds>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        (0..CACHED_LEVELS)
            .map(|j| BasisBounds::compute(64u64 << j))
            .collect()
    });
    if bits == Enclosure::SCALE_BITS {
        static ENC: OnceLock<BasisBounds> = OnceLock::new();
        return std::borrow::Cow::Borrowed(ENC.get_or_init(|| BasisBounds::compute(bits)));
    }
    if bits >= 64 && (bits / 64).is_power_of_two() {
        let j = (bits / 64).trailing_zeros() as usize;
        if j < CACHED_LEVELS {
            return std::borrow::Cow::Borrowed(&cache[j]);
        }
    }
    std::borrow::Cow::Owned(BasisBounds::compute(bits))
}

impl Clone for BasisBounds {
    fn clone(&self) -> Self {
        BasisBounds {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }
}

/// Bounds `lo ≤ 2^bits · (n0 + n1φ + n2√2 + n3φ√2) ≤ hi`.
fn scaled_bounds(num: &[BigInt; 4], bits: u64) -> (BigInt, BigInt) {
    let b = basis_bounds(bits);
    let mut lo = &num[0] << bits;
    let mut hi = lo.clone();
    for i in 0..3 {
        let c = &num[i + 1];
        match c.sign() {
            Sign::NoSign => {}
            Sign::Plus => {
                lo += c * &b.lo[i];
                hi += c * &b.hi[i];
            }
            Sign::Minus => {
                lo += c * &b.hi[i];
                hi += c * &b.lo[i];
            }
        }
    }
    (lo, hi)
}

/// A certified interval `[lo, hi] · 2^-96` in fixed point.
///
/// Used as the first refinement level of exact comparisons in hot loops; when two
/// enclosures overlap, callers fall back to [`FieldNumber::sign`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: i128,
    pub hi: i128,
}

impl Enclosure {
    pub const SCALE_BITS: u64 = 96;

    pub fn exact_integer(n: i64) -> Option<Enclosure> {
        let v = (n as i128).checked_mul(1i128 << Self::SCALE_BITS)?;
        Some(Enclosure { lo: v, hi: v })
    }

    pub fn checked_add(self, o: Enclosure) -> Option<Enclosure> {
        Some(Enclosure {
            lo: self.lo.checked_add(o.lo)?,
            hi: self.hi.checked_add(o.hi)?,
        })
    }

    pub fn checked_sub(self, o: Enclosure) -> Option<Enclosure> {
        Some(Enclosure {
            lo: self.lo.checked_sub(o.hi)?,
            hi: self.hi.checked_sub(o.lo)?,
        })
    }

    pub fn checked_mul_int(self, k: i64) -> Option<Enclosure> {
        let k = k as i128;
        let a = self.lo.checked_mul(k)?;
        let b = self.hi.checked_mul(k)?;
        Some(Enclosure {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    /// Certified sign, or `None` when the interval contains zero.
    pub fn sign(self) -> Option<i32> {
        if self.lo > 0 {
            Some(1)
        } else if self.hi < 0 {
            Some(-1)
        } else if self.lo == 0 && self.hi == 0 {
            Some(0)
        } else {
            None
        }
    }

    /// Certified ordering of two enclosed values, if the intervals are disjoint.
    pub fn compare(self, o: Enclosure) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Floor of the enclosed value, if certain.
    pub fn floor(self) -> Option<i64> {
        let lo = self.lo >> Self::SCALE_BITS;
        let hi = self.hi >> Self::SCALE_BITS;
        (lo == hi).then_some(lo as i64)
    }
}

impl PartialOrd for FieldNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

fn add_impl(x: &FieldNumber, y: &FieldNumber, negate_y: bool) -> FieldNumber {
    let tag = x.tag.join(y.tag);
    if x.den == y.den {
        let num = std::array::from_fn(|i| {
            if negate_y {
                &x.num[i] - &y.num[i]
            } else {
                &x.num[i] + &y.num[i]
            }
        });
        return FieldNumber::from_parts(num, x.den.clone(), tag);
    }
    let num = std::array::from_fn(|i| {
        let a = &x.num[i] * &y.den;
        let b = &y.num[i] * &x.den;
        if negate_y {
            a - b
        } else {
            a + b
        }
    });
    FieldNumber::from_parts(num, &x.den * &y.den, tag)
}

fn mul_impl(x: &FieldNumber, y: &FieldNumber) -> FieldNumber {
    let tag = x.tag.join(y.tag);
    let [a0, a1, a2, a3] = &x.num;
    let [b0, b1, b2, b3] = &y.num;
    let quartic = !(a2.is_zero() && a3.is_zero() && b2.is_zero() && b3.is_zero());
    let ac = golden_mul(&(a0.clone(), a1.clone()), &(b0.clone(), b1.clone()));
    let num = if quartic {
        // (A + B√2)(C + D√2) = (AC + 2BD) + (AD + BC)√2
        let bd = golden_mul(&(a2.clone(), a3.clone()), &(b2.clone(), b3.clone()));
        let ad = golden_mul(&(a0.clone(), a1.clone()), &(b2.clone(), b3.clone()));
        let bc = golden_mul(&(a2.clone(), a3.clone()), &(b0.clone(), b1.clone()));
        [
            ac.0 + bd.0 * 2,
            ac.1 + bd.1 * 2,
            ad.0 + bc.0,
            ad.1 + bc.1,
        ]
    } else {
        [ac.0, ac.1, BigInt::zero(), BigInt::zero()]
    };
    FieldNumber::from_parts(num, &x.den * &y.den, tag)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FieldNumber> for &FieldNumber {
            type Output = FieldNumber;
            fn $method(self, rhs: &FieldNumber) -> FieldNumber {
                $body(self, rhs)
            }
        }
        impl $tr<FieldNumber> for FieldNumber {
            type Output = FieldNumber;
            fn $method(self, rhs: FieldNumber) -> FieldNumber {
                $body(&self, &rhs)
            }
        }
        impl $tr<&FieldNumber> for FieldNumber {
            type Output = FieldNumber;
            fn $method(self, rhs: &FieldNumber) -> FieldNumber {
                $body(&self, rhs)
            }
        }
        impl $tr<FieldNumber> for &FieldNumber {
            type Output = FieldNumber;
            fn $method(self, rhs: FieldNumber) -> FieldNumber {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| add_impl(x, y, false));
forward_binop!(Sub, sub, |x, y| add_impl(x, y, true));
forward_binop!(Mul, mul, mul_impl);

impl Neg for &FieldNumber {
    type Output = FieldNumber;
    fn neg(self) -> FieldNumber {
        FieldNumber {
            num: self.num.each_ref().map(|c| -c),
            den: self.den.clone(),
            tag: self.tag,
        }
    }
}

impl Neg for FieldNumber {
    type Output = FieldNumber;
    fn neg(self) -> FieldNumber {
        -&self
    }
}

/// Binary operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Applies `op` to `x` and `y` (`y` is ignored for `Neg`).
pub fn field_arith(x: &FieldNumber, y: &FieldNumber, op: ArithOp) -> Result<FieldNumber, NumError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
        ArithOp::Neg => -x,
    })
}

impl From<i64> for FieldNumber {
    fn from(n: i64) -> Self {
        FieldNumber::from_integer(n)
    }
}

impl From<Rational> for FieldNumber {
    fn from(r: Rational) -> Self {
        FieldNumber::from_rational(r)
    }
}

// ---------------------------------------------------------------------------
// Text grammar: signed terms `coef`, `coef*phi`, `coef*sqrt2`, `coef*phi*sqrt2`,
// where `coef` is `p` or `p/q` and may be omitted in front of a basis symbol.

const BASIS_NAMES: [&str; 4] = ["", "phi", "sqrt2", "phi*sqrt2"];

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, name) in BASIS_NAMES.iter().enumerate() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if i == 0 {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(name);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
                out.push_str(name);
            }
        }
        f.write_str(&out)
    }
}

impl FromStr for FieldNumber {
    type Err = NumError;

    fn from_str(input: &str) -> Result<Self, NumError> {
        parse_field_number(input)
    }
}

pub fn parse_field_number(input: &str) -> Result<FieldNumber, NumError> {
    let err = |reason: &str| NumError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut coeffs: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i32;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(err("expected '+' or '-' between terms"));
        }
        let end = s[pos..]
            .find(['+', '-'])
            .map(|i| pos + i)
            .unwrap_or(bytes.len());
        let term = &s[pos..end];
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let (coef, basis) = parse_term(term).ok_or_else(|| err(&format!("bad term {term:?}")))?;
        let coef = if sign < 0 { -coef } else { coef };
        coeffs[basis] += coef;
        pos = end;
    }
    let [c0, c1, c2, c3] = coeffs;
    Ok(FieldNumber::new(c0, c1, c2, c3))
}

fn parse_term(term: &str) -> Option<(Rational, usize)> {
    let parts: Vec<&str> = term.split('*').collect();
    let mut coef = Rational::one();
    let mut has_phi = false;
    let mut has_sqrt2 = false;
    let mut saw_number = false;
    for (i, p) in parts.iter().enumerate() {
        match *p {
            "phi" if !has_phi => has_phi = true,
            "sqrt2" if !has_sqrt2 => has_sqrt2 = true,
            _ if i == 0 && !saw_number => {
                coef = parse_rational(p)?;
                saw_number = true;
            }
            _ => return None,
        }
    }
    let basis = match (has_phi, has_sqrt2) {
        (false, false) => {
            if !saw_number {
                return None;
            }
            0
        }
        (true, false) => 1,
        (false, true) => 2,
        (true, true) => 3,
    };
    Some((coef, basis))
}

fn parse_rational(s: &str) -> Option<Rational> {
    let mut it = s.splitn(2, '/');
    let p: BigInt = it.next()?.parse().ok()?;
    if !s.chars().next()?.is_ascii_digit() {
        return None;
    }
    match it.next() {
        None => Some(Rational::from_integer(p)),
        Some(q) => {
            if !q.chars().all(|c| c.is_ascii_digit()) || q.is_empty() {
                return None;
            }
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

/// Frequently used constants of the golden-ratio field.
pub mod consts {
    use super::FieldNumber;

    pub fn phi() -> FieldNumber {
        FieldNumber::phi()
    }

    /// 1/φ = φ − 1
    pub fn inv_phi() -> FieldNumber {
        FieldNumber::golden(-1, 1)
    }

    /// 1/φ² = 2 − φ
    pub fn inv_phi_sq() -> FieldNumber {
        FieldNumber::golden(2, -1)
    }
}
