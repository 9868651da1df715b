//! Recognition of elements of Q(i, √2, √3) inside a cyclotomic field.
//!
//! The value is written in the basis {1, √2, √3, √6} ⊗ {1, i} by solving an
//! exact linear system in Q(ζ_lcm(N,24)); anything outside that subfield is
//! reported as unrecognised.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{zeta, CyclotomicNumber};
use super::linalg;

const RADICALS: [&str; 4] = ["", "√2", "√3", "√6"];

/// `re[k]·r_k + i·im[k]·r_k` summed over r = (1, √2, √3, √6).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalForm {
    pub re: [BigRational; 4],
    pub im: [BigRational; 4],
}

fn basis(order: u32) -> Vec<CyclotomicNumber> {
    let one = CyclotomicNumber::one(24);
    let s2 = zeta(24, 3) + zeta(24, 21);
    let s3 = zeta(24, 2) + zeta(24, 22);
    let s6 = &s2 * &s3;
    let i = zeta(24, 6);
    let reals = [one, s2, s3, s6];
    let mut out: Vec<CyclotomicNumber> = reals.to_vec();
    out.extend(reals.iter().map(|r| r * &i));
    out.into_iter()
        .map(|b| b.promote(order).expect("order is a multiple of 24"))
        .collect()
}

/// Express `x` in Q(i, √2, √3), if it lies there.
pub fn recognize(x: &CyclotomicNumber) -> Option<RadicalForm> {
    let order = x.order().lcm(&24);
    let x = x.promote(order).ok()?;
    let basis = basis(order);
    let cols: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coefficients()).collect();
    let rhs = x.coefficients();
    let rows: Vec<Vec<BigRational>> = (0..rhs.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let sol = linalg::solve(&rows, &rhs, basis.len())?;
    let mut re: [BigRational; 4] = Default::default();
    let mut im: [BigRational; 4] = Default::default();
    re.clone_from_slice(&sol[..4]);
    im.clone_from_slice(&sol[4..8]);
    Some(RadicalForm { re, im })
}

/// Radical string for `x`, or `None` outside Q(i, √2, √3).
pub fn radical_string(x: &CyclotomicNumber) -> Option<String> {
    recognize(x).map(|r| r.to_string())
}

impl RadicalForm {
    pub fn is_real(&self) -> bool {
        self.im.iter().all(Zero::is_zero)
    }
}

/// A rendered real part: overall sign, body, and whether the body is a
/// single factor (safe to juxtapose with `·i`).
struct Part {
    negative: bool,
    body: String,
    atomic: bool,
}

fn render_part(coeffs: &[BigRational; 4]) -> Option<Part> {
    if coeffs.iter().all(Zero::is_zero) {
        return None;
    }
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut nums: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let present: Vec<usize> = (0..4).filter(|&k| !nums[k].is_zero()).collect();
    // Factor out a sign when every term is negative.
    let negative = present.iter().all(|&k| nums[k].is_negative());
    if negative {
        for n in &mut nums {
            *n = -std::mem::take(n);
        }
    }
    let mut order = present.clone();
    // Lead with a positive radical rather than a negative constant.
    if nums[0].is_negative() && order.len() > 1 {
        order.rotate_left(1);
    }
    let mut s = String::new();
    for (pos, &k) in order.iter().enumerate() {
        let n = &nums[k];
        let mag = n.abs();
        if pos == 0 {
            if n.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if n.is_negative() { " - " } else { " + " });
        }
        if k == 0 {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(RADICALS[k]);
        } else {
            s.push_str(&format!("{mag}{}", RADICALS[k]));
        }
    }
    let single = order.len() == 1;
    let body = if den.is_one() {
        s
    } else if single {
        format!("{s}/{den}")
    } else {
        format!("({s})/{den}")
    };
    Some(Part {
        negative,
        body,
        atomic: single || !den.is_one(),
    })
}

impl fmt::Display for RadicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = render_part(&self.re);
        let im = render_part(&self.im).map(|p| {
            let body = if p.body == "1" {
                "i".to_string()
            } else if p.atomic {
                format!("{}·i", p.body)
            } else {
                format!("({})·i", p.body)
            };
            (p.negative, body)
        });
        let re = re.map(|p| {
            if p.negative && !p.atomic {
                format!("-({})", p.body)
            } else if p.negative {
                format!("-{}", p.body)
            } else {
                p.body
            }
        });
        match (re, im) {
            (None, None) => f.write_str("0"),
            (Some(r), None) => f.write_str(&r),
            (None, Some((neg, i))) => write!(f, "{}{i}", if neg { "-" } else { "" }),
            (Some(r), Some((neg, i))) => write!(f, "{r} {} {i}", if neg { '-' } else { '+' }),
        }
    }
}
