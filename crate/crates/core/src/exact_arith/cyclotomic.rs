//! Elements of the cyclotomic field Q(ζ_N).
//!
//! An element is stored as an integer vector of length φ(N) over a common
//! positive denominator, i.e. as a rational polynomial in ζ_N reduced modulo
//! Φ_N. The representation is kept primitive (gcd of all numerators and the
//! denominator is 1), which makes it canonical.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modinv;
use super::poly::{self, content};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

/// ζ_order^exponent in canonical form. Panics if `order` is zero.
pub fn zeta(order: u32, exponent: i64) -> CyclotomicNumber {
    CyclotomicNumber::zeta(order, exponent)
}

impl CyclotomicNumber {
    fn from_parts(order: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CyclotomicNumber { order, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let g = content(&self.num);
        if g.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = g.gcd(&self.den);
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(order: u32) -> Self {
        let d = poly::tables(order).degree;
        CyclotomicNumber {
            order,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, &BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(order: u32, value: &BigRational) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = value.numer().clone();
        x.den = value.denom().clone();
        x.normalize();
        x
    }

    pub fn zeta(order: u32, exponent: i64) -> Self {
        let t = poly::tables(order);
        CyclotomicNumber {
            order,
            num: t.power(exponent).to_vec(),
            den: BigInt::one(),
        }
    }

    /// Build from rational coefficients of 1, ζ, ζ², … (any length; reduced).
    pub fn from_coefficients(order: u32, coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let t = poly::tables(order);
        let mut acc = vec![BigInt::zero(); t.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (a, p) in acc.iter_mut().zip(t.power(k as i64)) {
                if !p.is_zero() {
                    *a += &scaled * p;
                }
            }
        }
        Self::from_parts(order, acc, den)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(N), the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-express in Q(ζ_target); `target` must be a multiple of the order.
    pub fn promote(&self, target: u32) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: target,
            });
        }
        let step = i64::from(target / self.order);
        Ok(self.substitute(target, |j| j as i64 * step))
    }

    /// Σ c_j ζ_target^{f(j)}, reduced.
    fn substitute(&self, target: u32, f: impl Fn(usize) -> i64) -> Self {
        let t = poly::tables(target);
        let mut acc = vec![BigInt::zero(); t.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, p) in acc.iter_mut().zip(t.power(f(j))) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        Self::from_parts(target, acc, self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.substitute(self.order, |j| -(j as i64))
    }

    /// The Galois automorphism ζ ↦ ζ^k; `k` must be coprime to the order.
    pub fn galois(&self, k: i64) -> Result<Self> {
        if k.gcd(&i64::from(self.order)) != 1 {
            return Err(Error::IndexOutOfRange(format!(
                "Galois exponent {k} is not a unit modulo {}",
                self.order
            )));
        }
        Ok(self.substitute(self.order, |j| j as i64 * k))
    }

    /// Both operands promoted to the lcm of their orders.
    fn unify(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (
            self.promote(l).expect("lcm is a multiple"),
            other.promote(l).expect("lcm is a multiple"),
        )
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.order, other.order);
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let rhs = b * &fb;
                if negate {
                    a * &fa - rhs
                } else {
                    a * &fa + rhs
                }
            })
            .collect();
        Self::from_parts(self.order, num, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let t = poly::tables(self.order);
        let num = t.mul(&self.num, &other.num);
        Self::from_parts(self.order, num, &self.den * &other.den)
    }

    fn combine(&self, other: &Self, op: impl Fn(&Self, &Self) -> Self) -> Self {
        if self.order == other.order {
            op(self, other)
        } else {
            let (a, b) = self.unify(other);
            op(&a, &b)
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.order, num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &r.recip()));
        }
        let t = poly::tables(self.order);
        let numerator = CyclotomicNumber {
            order: self.order,
            num: self.num.clone(),
            den: BigInt::one(),
        };
        let s = modinv::inverse_candidates(&self.num, &t.modulus(), |cand| {
            numerator
                .mul_same(&Self::from_coefficients(self.order, cand))
                .is_one()
        })
        .ok_or(Error::DivisionByZero)?;
        // s inverts the numerator polynomial; restore the denominator.
        let x = Self::from_coefficients(self.order, &s);
        Ok(x.scale(&BigRational::from_integer(self.den.clone())))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

#[cfg(test)]
fn make_monic(r: &mut [BigRational], s: &mut [BigRational]) {
    let lc = r.last().expect("nonzero polynomial").clone();
    if lc.is_one() {
        return;
    }
    for c in r.iter_mut().chain(s.iter_mut()) {
        *c /= &lc;
    }
}

/// Inverse of `a` modulo the monic irreducible `m` by extended Euclid over Q;
/// slow, kept as a reference for the modular algorithm.
#[cfg(test)]
fn rat_poly_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1 = vec![BigRational::one()];
    if r1.is_empty() {
        return None;
    }
    make_monic(&mut r1, &mut s1);
    while r1.len() > 1 {
        // r0 = q·r1 + rem, with r1 monic.
        let dr = r1.len() - 1;
        let mut rem = r0;
        let mut q = vec![BigRational::zero(); rem.len().saturating_sub(dr)];
        for i in (0..q.len()).rev() {
            let c = std::mem::take(&mut rem[i + dr]);
            if c.is_zero() {
                continue;
            }
            for (j, rc) in r1[..dr].iter().enumerate() {
                if !rc.is_zero() {
                    rem[i + j] -= &c * rc;
                }
            }
            q[i] = c;
        }
        trim(&mut rem);
        if rem.is_empty() {
            return None;
        }
        // s_new = s0 − q·s1
        let mut s_new = vec![BigRational::zero(); (q.len() + s1.len()).max(s0.len())];
        for (i, c) in s0.iter().enumerate() {
            s_new[i] += c;
        }
        for (i, qc) in q.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            for (j, sc) in s1.iter().enumerate() {
                s_new[i + j] -= qc * sc;
            }
        }
        trim(&mut s_new);
        make_monic(&mut rem, &mut s_new);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    // r1 is the constant 1 after normalization.
    Some(s1)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = self.unify(other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CyclotomicNumber {}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $body:expr) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.combine(rhs, $body)
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
        impl $tr<CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                self.$m(&rhs)
            }
        }
        impl $atr<&CyclotomicNumber> for CyclotomicNumber {
            fn $am(&mut self, rhs: &CyclotomicNumber) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $atr<CyclotomicNumber> for CyclotomicNumber {
            fn $am(&mut self, rhs: CyclotomicNumber) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a.add_same(b, false));
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.add_same(b, true));
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a.mul_same(b));

impl fmt::Display for CyclotomicNumber {
    /// `z<N>: c0 + c1*z + c2*z^2 ...`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}: ", self.order)?;
        let mut first = true;
        for (j, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mon = match j {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{j}"),
            };
            if j == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mon)?;
            } else {
                write!(f, "{a}*{mon}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for CyclotomicNumber {
    type Err = Error;

    /// Parses the `Display` format. Terms may repeat and exponents may exceed
    /// φ(N); the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let (head, body) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let order: u32 = head
            .trim()
            .strip_prefix('z')
            .and_then(|o| o.parse().ok())
            .filter(|&o| o > 0)
            .ok_or_else(|| bad("bad order prefix"))?;
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty body"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in terms {
            let (sign, rest) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef_str, mono) = match rest.find('z') {
                Some(pos) => (rest[..pos].trim_end_matches('*'), Some(&rest[pos + 1..])),
                None => (rest, None),
            };
            let coef = if coef_str.is_empty() {
                if mono.is_none() {
                    return Err(bad("empty term"));
                }
                BigRational::one()
            } else {
                parse_rational(coef_str).ok_or_else(|| bad("bad coefficient"))?
            };
            let exp: usize = match mono {
                None => 0,
                Some("") => 1,
                Some(e) => e
                    .strip_prefix('^')
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| bad("bad exponent"))?,
            };
            let exp = exp % order as usize;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigRational::zero());
            }
            coeffs[exp] += coef * BigRational::from_integer(BigInt::from(sign));
        }
        Ok(Self::from_coefficients(order, &coeffs))
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
