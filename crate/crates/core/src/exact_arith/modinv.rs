//! Inversion in Z[X]/Φ_N by extended Euclid modulo word-size primes,
//! Chinese remaindering and rational reconstruction.
//!
//! The reconstructed candidate is always checked by an exact product, so a
//! wrong reconstruction can only cost time, never correctness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn to_residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Inverse of `a` modulo (`m`, p), or `None` if not invertible there.
fn poly_inverse_mod_p(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        let lc_inv = inv_mod(*r1.last().unwrap(), p);
        let dr = r1.len() - 1;
        let mut rem = r0;
        let qlen = rem.len().saturating_sub(dr);
        let mut q = vec![0u64; qlen];
        for i in (0..qlen).rev() {
            let c = mul_mod(rem[i + dr], lc_inv, p);
            if c == 0 {
                continue;
            }
            for (j, &rc) in r1.iter().enumerate() {
                let t = mul_mod(c, rc, p);
                rem[i + j] = (rem[i + j] + p - t) % p;
            }
            q[i] = c;
        }
        trim(&mut rem);
        if rem.is_empty() {
            return None;
        }
        let mut s_new = vec![0u64; (qlen + s1.len()).max(s0.len())];
        s_new[..s0.len()].copy_from_slice(&s0);
        for (i, &qc) in q.iter().enumerate() {
            if qc == 0 {
                continue;
            }
            for (j, &sc) in s1.iter().enumerate() {
                let t = mul_mod(qc, sc, p);
                s_new[i + j] = (s_new[i + j] + p - t) % p;
            }
        }
        trim(&mut s_new);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    if r1.is_empty() {
        return None;
    }
    let c = inv_mod(r1[0], p);
    Some(s1.into_iter().map(|s| mul_mod(s, c, p)).collect())
}

/// Rational reconstruction of `u` modulo `m` with |num|, den ≤ sqrt(m/2).
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Candidate inverses of the integer polynomial `a` modulo the monic integer
/// polynomial `modulus`, offered to `accept` until it returns true.
pub(crate) fn inverse_candidates(
    a: &[BigInt],
    modulus: &[BigInt],
    mut accept: impl FnMut(&[BigRational]) -> bool,
) -> Option<Vec<BigRational>> {
    let deg = modulus.len() - 1;
    let mut prime = (1u64 << 62) - 1;
    let mut m_acc = BigInt::one();
    let mut residues = vec![BigInt::zero(); deg];
    let mut primes_used = 0usize;
    let mut next_check = 1usize;
    let mut previous: Option<Vec<BigRational>> = None;
    // Enough primes for any realistic coefficient height; beyond this the
    // input is treated as non-invertible.
    while primes_used < 4096 {
        prime -= 2;
        while !is_prime(prime) {
            prime -= 2;
        }
        let am: Vec<u64> = a.iter().map(|c| to_residue(c, prime)).collect();
        let mm: Vec<u64> = modulus.iter().map(|c| to_residue(c, prime)).collect();
        let Some(mut s) = poly_inverse_mod_p(&am, &mm, prime) else {
            continue;
        };
        s.resize(deg, 0);
        // CRT: x ≡ residues (mod m_acc), x ≡ s (mod prime).
        let pb = BigInt::from(prime);
        let m_inv = BigInt::from(inv_mod(to_residue(&m_acc, prime), prime));
        for (r, &si) in residues.iter_mut().zip(&s) {
            let diff = (BigInt::from(si) - &*r).mod_floor(&pb);
            let k = (diff * &m_inv).mod_floor(&pb);
            *r += &m_acc * k;
        }
        m_acc *= &pb;
        primes_used += 1;
        if primes_used < next_check {
            continue;
        }
        next_check = primes_used + (primes_used / 4).max(1);
        let cand: Option<Vec<BigRational>> =
            residues.iter().map(|r| reconstruct(r, &m_acc)).collect();
        if let Some(cand) = cand {
            if (previous.as_ref() == Some(&cand) || primes_used > 1)
                && accept(&cand) {
                    return Some(cand);
                }
            previous = Some(cand);
        }
    }
    None
}
