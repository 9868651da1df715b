//! Cyclotomic polynomials over the integers and per-order reduction tables.
//!
//! Tables are built once per order and shared behind an `Arc`; the global
//! cache is an `RwLock`, so concurrent readers never block each other once a
//! table exists.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduction data for `Q(ζ_N)`.
#[derive(Debug)]
pub(crate) struct FieldTables {
    pub order: u32,
    /// φ(N), the degree of Φ_N.
    pub degree: usize,
    /// Φ_N without its leading 1, as sparse `(index, coefficient)` pairs.
    tail: Vec<(usize, i64)>,
    /// `powers[k]` is X^k mod Φ_N for 0 ≤ k < N.
    powers: Vec<Vec<BigInt>>,
}

impl FieldTables {
    fn build(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let tail = phi[..degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = c.to_i64().expect("cyclotomic coefficient exceeds i64");
                (i, c)
            })
            .collect();
        let mut tables = FieldTables {
            order,
            degree,
            tail,
            powers: Vec::with_capacity(order as usize),
        };
        let mut current = vec![BigInt::zero(); degree];
        current[0] = BigInt::one();
        for _ in 0..order {
            tables.powers.push(current.clone());
            current = tables.times_x(&current);
        }
        tables
    }

    /// Multiply a reduced vector by X and reduce again.
    fn times_x(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree];
        let top = v[self.degree - 1].clone();
        for i in (1..self.degree).rev() {
            out[i] = v[i - 1].clone();
        }
        if !top.is_zero() {
            for &(i, c) in &self.tail {
                out[i] -= &top * c;
            }
        }
        out
    }

    /// Reduced coefficients of X^k, `k` taken modulo N.
    pub fn power(&self, k: i64) -> &[BigInt] {
        let k = k.rem_euclid(i64::from(self.order)) as usize;
        &self.powers[k]
    }

    /// Reduce an arbitrary-length polynomial modulo Φ_N in place and return
    /// the first φ(N) coefficients.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if c.is_zero() {
                    continue;
                }
                let base = i - d;
                for &(j, pc) in &self.tail {
                    match pc {
                        1 => v[base + j] -= &c,
                        -1 => v[base + j] += &c,
                        _ => v[base + j] -= &c * pc,
                    }
                }
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    /// Product of two reduced integer vectors, reduced.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        let mut out = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Φ_N as a dense integer vector (leading coefficient last).
    pub fn modulus(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.degree + 1];
        for &(i, c) in &self.tail {
            m[i] = BigInt::from(c);
        }
        m[self.degree] = BigInt::one();
        m
    }
}

fn table_cache() -> &'static RwLock<HashMap<u32, Arc<FieldTables>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn tables(order: u32) -> Arc<FieldTables> {
    assert!(order > 0, "cyclotomic order must be positive");
    if let Some(t) = table_cache().read().expect("poisoned cache").get(&order) {
        return Arc::clone(t);
    }
    let built = Arc::new(FieldTables::build(order));
    let mut w = table_cache().write().expect("poisoned cache");
    Arc::clone(w.entry(order).or_insert(built))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Φ_N with coefficients in increasing degree, obtained by dividing
/// X^N − 1 by Φ_d for every proper divisor d of N.
pub fn cyclotomic_polynomial(order: u32) -> Vec<BigInt> {
    assert!(order > 0, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().read().expect("poisoned cache").get(&order) {
        return p.as_ref().clone();
    }
    let mut num = vec![BigInt::zero(); order as usize + 1];
    num[0] = -BigInt::one();
    num[order as usize] = BigInt::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    poly_cache()
        .write()
        .expect("poisoned cache")
        .insert(order, Arc::new(num.clone()));
    num
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// gcd of all entries (non-negative); zero for the zero vector.
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}
