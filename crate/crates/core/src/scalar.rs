//! Exact scalars: rationals and elements of cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycScalar`] of conductor `N` is a vector of `phi(N)` rational
//! coordinates in the power basis `1, zeta, ..., zeta^(phi(N)-1)` of
//! `Q[x]/Phi_N(x)`. Binary operations lift both operands to the lcm of their
//! conductors; conductors are never lowered again.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Euler's totient.
pub fn phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// `Phi_N` as integer coefficients, lowest degree first.
///
/// Computed by exact division `(x^N - 1) / prod_{d | N, d < N} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// Reduces a rational polynomial modulo `Phi_N`, returning `phi(N)` coordinates.
fn reduce_mod_phi(mut p: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    for i in (deg..p.len()).rev() {
        let c = std::mem::replace(&mut p[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for (j, pc) in phi_poly.iter().enumerate().take(deg) {
            if !pc.is_zero() {
                let t = &c * Rational::from_integer(pc.clone());
                p[i - deg + j] -= t;
            }
        }
    }
    p.resize(deg, Rational::zero());
    p
}

#[derive(Clone, Debug)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// The primitive root `zeta_N = exp(2 pi i / N)`.
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        CycScalar {
            conductor: n,
            coeffs: reduce_mod_phi(p, n),
        }
    }

    /// Builds a scalar from power-basis coordinates.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 || coeffs.len() != phi(conductor) {
            return Err(Error::DimensionMismatch(format!(
                "conductor {conductor} needs {} coordinates",
                phi(conductor.max(1))
            )));
        }
        Ok(CycScalar { conductor, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_minus_one(&self) -> bool {
        self.coeffs[0] == -Rational::one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(zeta_n)`; `n` must be a multiple of the conductor.
    pub fn lift(&self, n: u32) -> CycScalar {
        assert!(n % self.conductor == 0, "lift target must be a multiple of the conductor");
        if n == self.conductor {
            return self.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[i * step] = c.clone();
            }
        }
        CycScalar {
            conductor: n,
            coeffs: reduce_mod_phi(p, n),
        }
    }

    fn common(a: &CycScalar, b: &CycScalar) -> (CycScalar, CycScalar) {
        let n = a.conductor.lcm(&b.conductor);
        (a.lift(n), b.lift(n))
    }

    pub fn add_ref(&self, other: &CycScalar) -> CycScalar {
        if self.conductor == other.conductor {
            return CycScalar {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(x, y)| x + y)
                    .collect(),
            };
        }
        let (a, b) = Self::common(self, other);
        a.add_ref(&b)
    }

    pub fn sub_ref(&self, other: &CycScalar) -> CycScalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_ref(&self, other: &CycScalar) -> CycScalar {
        if self.conductor == 1 && other.conductor == 1 {
            return CycScalar {
                conductor: 1,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if self.conductor != other.conductor {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        if self.is_zero() || other.is_zero() {
            return CycScalar {
                conductor: self.conductor,
                coeffs: vec![Rational::zero(); self.coeffs.len()],
            };
        }
        let mut p = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        CycScalar {
            conductor: self.conductor,
            coeffs: reduce_mod_phi(p, self.conductor),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm with `Phi_N`.
    pub fn inverse(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycScalar {
                conductor: self.conductor,
                coeffs: {
                    let mut c = vec![Rational::zero(); self.coeffs.len()];
                    c[0] = r.recip();
                    c
                },
            });
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a = qpoly::trim(self.coeffs.clone());
        // invariant: s * a == r  (mod modulus)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = qpoly::divrem(&r0, &r1);
            let s2 = qpoly::sub(&s0, &qpoly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return Err(Error::Inconsistent("non-invertible cyclotomic element".into()));
            }
        }
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(CycScalar {
            conductor: self.conductor,
            coeffs: reduce_mod_phi(inv, self.conductor),
        })
    }

    pub fn div_ref(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    pub fn pow(&self, k: i64) -> Result<CycScalar> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        Ok(acc)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_int(n)
    }
}

impl From<Rational> for CycScalar {
    fn from(r: Rational) -> Self {
        CycScalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$impl_fn(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text in the scalar literal grammar, e.g. `2*zeta(3)^2 - 1/2`.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if k == 0 {
                fmt_rational(&mag)
            } else {
                let z = if k == 1 {
                    format!("zeta({})", self.conductor)
                } else {
                    format!("zeta({})^{k}", self.conductor)
                };
                if mag.is_one() {
                    z
                } else {
                    format!("{}*{z}", fmt_rational(&mag))
                }
            };
            terms.push((neg, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for CycScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = LiteralParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "trailing input in scalar literal"));
        }
        Ok(v)
    }
}

impl Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent evaluator for scalar literals:
/// `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
/// `unary := '-' unary | power`, `power := atom ('^' int)?`,
/// `atom := int | 'zeta(' int ')' | '(' expr ')'`.
struct LiteralParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LiteralParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }

    fn expr(&mut self) -> Result<CycScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add_ref(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycScalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul_ref(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc
                        .div_ref(&d)
                        .map_err(|_| Error::parse(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CycScalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg_ref());
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycScalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let e = self
                .int()?
                .to_i64()
                .ok_or_else(|| Error::parse(at, "exponent too large"))?;
            return base
                .pow(if neg { -e } else { e })
                .map_err(|_| Error::parse(at, "zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(CycScalar::from_rational(Rational::from_integer(
                self.int()?,
            ))),
            Some(b'z') if self.src[self.pos..].starts_with(b"zeta") => {
                self.pos += 4;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self
                    .int()?
                    .to_u32()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse(at, "conductor must be a positive integer"))?;
                self.expect(b')')?;
                Ok(CycScalar::zeta(n))
            }
            _ => Err(Error::parse(self.pos, "expected number, zeta(N) or '('")),
        }
    }
}

/// Dense polynomials over `Q`, lowest degree first, trimmed of trailing zeros.
mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = trim(a.to_vec());
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut q = vec![Rational::zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().expect("nonempty") / &lead;
            for (j, bc) in b.iter().enumerate() {
                rem[shift + j] -= &c * bc;
            }
            q[shift] = c;
            rem.pop();
            rem = trim(rem);
        }
        (trim(q), rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, phi(n));
        }
    }

    #[test]
    fn phi12_vanishes_at_primitive_roots() {
        let p = cyclotomic_polynomial(12);
        for k in [1, 5, 7, 11] {
            let z = CycScalar::zeta_pow(12, k);
            let mut acc = CycScalar::zero();
            for (i, c) in p.iter().enumerate() {
                let term = z.pow(i as i64).unwrap().mul_ref(&CycScalar::from_int(c.to_i64().unwrap()));
                acc = acc.add_ref(&term);
            }
            assert!(acc.is_zero(), "Phi_12(zeta_12^{k}) != 0");
        }
    }

    #[test]
    fn multiplication_examples() {
        let i = CycScalar::zeta(4);
        assert_eq!(i.mul_ref(&i), CycScalar::from_int(-1));
        let a: CycScalar = "3/2 + zeta(5)^3".parse().unwrap();
        assert_eq!(a.mul_ref(&CycScalar::one()), a);
        // zeta_3 = zeta_12^4, zeta_4 = zeta_12^3
        assert_eq!(CycScalar::zeta(3).mul_ref(&CycScalar::zeta(4)), CycScalar::zeta_pow(12, 7));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycScalar::from_int(2).inverse().unwrap(), CycScalar::ratio(1, 2));
        for n in 1..=12u32 {
            assert_eq!(CycScalar::zeta(n).inverse().unwrap(), CycScalar::zeta_pow(n, n as i64 - 1));
        }
        let a: CycScalar = "1 + zeta(4)".parse().unwrap();
        let expected: CycScalar = "(1 - zeta(4))/2".parse().unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv, expected);
        assert!(a.mul_ref(&inv).is_one());
        assert_eq!(CycScalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for n in 1..=12u32 {
            let z = CycScalar::zeta(n);
            assert!(z.pow(n as i64).unwrap().is_one());
            for k in 1..n {
                assert!(!z.pow(k as i64).unwrap().is_one(), "zeta_{n}^{k} == 1");
            }
        }
    }

    #[test]
    fn equality_across_conductors() {
        assert_eq!(CycScalar::zeta(2), CycScalar::from_int(-1));
        assert_eq!(CycScalar::zeta(3).lift(6), CycScalar::zeta_pow(6, 2));
        assert_eq!(CycScalar::zeta(4).pow(2).unwrap(), CycScalar::zeta(2).lift(12));
        assert_ne!(CycScalar::zeta(3), CycScalar::zeta(6));
    }

    #[test]
    fn literal_roundtrip() {
        for text in ["0", "3/2", "-1", "zeta(4)", "2*zeta(3)^2 - 1", "zeta(12)^3 - 1/7*zeta(12) + 5"] {
            let v: CycScalar = text.parse().unwrap();
            let back: CycScalar = v.to_string().parse().unwrap();
            assert_eq!(v, back, "{text} -> {v}");
        }
        assert_eq!("zeta(4)^2".parse::<CycScalar>().unwrap().to_string(), "-1");
        assert_eq!(CycScalar::zeta(4).to_string(), "zeta(4)");
        assert!(matches!("1/0".parse::<CycScalar>(), Err(Error::Parse { .. })));
        assert!(matches!("zeta(0)".parse::<CycScalar>(), Err(Error::Parse { .. })));
        assert!(matches!("2 +".parse::<CycScalar>(), Err(Error::Parse { .. })));
    }
}
