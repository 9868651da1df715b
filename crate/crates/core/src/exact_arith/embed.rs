//! Complex embedding ζ_N ↦ exp(2πi/N) with an error bound.
//!
//! Precisions up to 64 bits use `f64` trigonometry. Larger requests evaluate
//! the powers of ζ_N in fixed-point big-integer arithmetic (π by Machin's
//! formula, sine and cosine by Taylor series) and round once at the end.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::CyclotomicNumber;

/// A complex number with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub error_bound: f64,
}

impl ComplexApprox {
    pub fn new(re: f64, im: f64, error_bound: f64) -> Self {
        ComplexApprox {
            re,
            im,
            error_bound: error_bound.max(0.0),
        }
    }

    pub fn exact(re: f64, im: f64) -> Self {
        Self::new(re, im, 0.0)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im, self.error_bound)
    }

    /// Distance between the centres of two approximations.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    /// True if the centres lie within `tol` plus both error bounds.
    pub fn agrees_with(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol + self.error_bound + other.error_bound
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(12);
        // Values that round to zero print unsigned.
        let tiny = 0.5 * 10f64.powi(-(prec.min(300) as i32));
        let im = if self.im.abs() < tiny { 0.0 } else { self.im };
        let re = if self.re.abs() < tiny { 0.0 } else { self.re };
        let sign = if im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{:.*} {} {:.*}i", prec, re, sign, prec, im.abs())
    }
}

const ROUNDING: f64 = f64::EPSILON;

impl Add for ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, o: ComplexApprox) -> ComplexApprox {
        let re = self.re + o.re;
        let im = self.im + o.im;
        let round = ROUNDING * re.hypot(im);
        ComplexApprox::new(re, im, self.error_bound + o.error_bound + round)
    }
}

impl Sub for ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, o: ComplexApprox) -> ComplexApprox {
        self + (-o)
    }
}

impl Neg for ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> ComplexApprox {
        ComplexApprox::new(-self.re, -self.im, self.error_bound)
    }
}

impl Mul for ComplexApprox {
    type Output = ComplexApprox;
    fn mul(self, o: ComplexApprox) -> ComplexApprox {
        let re = self.re * o.re - self.im * o.im;
        let im = self.re * o.im + self.im * o.re;
        let bound = self.abs() * o.error_bound
            + o.abs() * self.error_bound
            + self.error_bound * o.error_bound
            + 4.0 * ROUNDING * self.abs() * o.abs();
        ComplexApprox::new(re, im, bound)
    }
}

fn rational_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            // Scale both down to keep the quotient representable.
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let a = (n >> shift).to_f64().unwrap_or(0.0);
            let b = (d >> shift).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}

impl CyclotomicNumber {
    /// See [`embed`].
    pub fn embed(&self, precision: u32) -> ComplexApprox {
        embed(self, precision)
    }

    /// Embedding at the default 53-bit precision.
    pub fn approx(&self) -> ComplexApprox {
        embed(self, 53)
    }
}

/// Embed with the requested number of bits of working precision (≥ 53).
pub fn embed(x: &CyclotomicNumber, precision: u32) -> ComplexApprox {
    if precision <= 64 {
        embed_f64(x)
    } else {
        embed_fixed(x, precision)
    }
}

fn embed_f64(x: &CyclotomicNumber) -> ComplexApprox {
    let n = f64::from(x.order());
    let den = x.denominator();
    let mut re = 0.0;
    let mut im = 0.0;
    let mut mass = 0.0;
    for (j, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = rational_to_f64(c, den);
        let theta = std::f64::consts::TAU * j as f64 / n;
        re += v * theta.cos();
        im += v * theta.sin();
        mass += v.abs();
    }
    ComplexApprox::new(re, im, (1.0 + mass) * 2f64.powi(-40))
}

/// Fixed-point value with `bits` fractional bits.
struct Fixed {
    bits: u32,
}

impl Fixed {
    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    /// atan(1/k) by its alternating series.
    fn atan_inv(&self, k: u32) -> BigInt {
        let k = BigInt::from(k);
        let k2 = &k * &k;
        let mut term = self.one() / &k;
        let mut sum = BigInt::zero();
        let mut n = 0u32;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * n + 1);
            if n.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &k2;
            n += 1;
        }
        sum
    }

    fn pi(&self) -> BigInt {
        BigInt::from(16) * self.atan_inv(5) - BigInt::from(4) * self.atan_inv(239)
    }

    /// (cos θ, sin θ) by Taylor series; |θ| ≤ 2π keeps the series short.
    fn cos_sin(&self, theta: &BigInt) -> (BigInt, BigInt) {
        let mut cos = BigInt::zero();
        let mut sin = BigInt::zero();
        let mut term = self.one();
        let mut k = 0u32;
        while !term.is_zero() {
            match k % 4 {
                0 => cos += &term,
                1 => sin += &term,
                2 => cos -= &term,
                _ => sin -= &term,
            }
            k += 1;
            term = self.mul(&term, theta) / BigInt::from(k);
        }
        (cos, sin)
    }
}

fn embed_fixed(x: &CyclotomicNumber, precision: u32) -> ComplexApprox {
    let guard = 32 + 2 * (32 - x.order().leading_zeros());
    let fx = Fixed {
        bits: precision + guard,
    };
    let n = x.order();
    let theta = (BigInt::from(2) * fx.pi()) / BigInt::from(n);
    let (c1, s1) = fx.cos_sin(&theta);
    let den = x.denominator();
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut pc = fx.one();
    let mut ps = BigInt::zero();
    let mut mass = 0.0;
    for c in x.numerators() {
        if !c.is_zero() {
            re += c * &pc;
            im += c * &ps;
            mass += rational_to_f64(&c.abs(), den);
        }
        let nc = fx.mul(&pc, &c1) - fx.mul(&ps, &s1);
        let ns = fx.mul(&pc, &s1) + fx.mul(&ps, &c1);
        pc = nc;
        ps = ns;
    }
    let scale = den << fx.bits;
    let re = rational_to_f64(&re, &scale);
    let im = rational_to_f64(&im, &scale);
    let truncation = (1.0 + mass) * 2f64.powi(-(precision.min(1000) as i32));
    let rounding = ROUNDING * re.hypot(im);
    ComplexApprox::new(re, im, truncation + rounding)
}
