//! Independent numeric oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use minimal_fusion::ffk_braiding::BraidMatrix;
use minimal_fusion::minimal_model::{MinimalModel, ModuleLabel};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Largest eigenvalue of the fusion matrix (N_a)_b^c, by exact integer power
/// iteration on N_a + I followed by a Rayleigh quotient.
pub fn perron_frobenius(model: &MinimalModel, a: &ModuleLabel) -> f64 {
    let labels = model.list_labels();
    let n = labels.len();
    let mut mat = vec![vec![0i64; n]; n];
    for (i, b) in labels.iter().enumerate() {
        for (j, c) in labels.iter().enumerate() {
            mat[i][j] = i64::from(model.fusion_coefficient(a, b, c)) + i64::from(i == j);
        }
    }
    let apply = |v: &[BigInt]| -> Vec<BigInt> {
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| mat[i][j] != 0)
                    .fold(BigInt::zero(), |acc, j| acc + &v[j] * mat[i][j])
            })
            .collect()
    };
    let rayleigh = |v: &[BigInt], w: &[BigInt]| -> f64 {
        let num: BigInt = v.iter().zip(w).map(|(x, y)| x * y).sum();
        let den: BigInt = v.iter().map(|x| x * x).sum();
        BigRational::new(num, den).to_f64().unwrap()
    };
    let mut v = vec![BigInt::from(1); n];
    let mut prev = f64::NAN;
    for _ in 0..4000 {
        let w = apply(&v);
        let est = rayleigh(&v, &w);
        if (est - prev).abs() < 1e-13 {
            return est - 1.0;
        }
        prev = est;
        // Keep the integers small by dividing out the common content.
        let g = w
            .iter()
            .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        v = w.into_iter().map(|x| x / &g).collect();
        // Halve large entries when they exceed a few thousand bits.
        if v.iter().any(|x| x.bits() > 4000) {
            v = v.into_iter().map(|x| x >> 2000).collect();
        }
    }
    prev - 1.0
}

/// Modular S-matrix entry of M(p,q) between labels (m,n) and (m',n').
pub fn s_matrix(model: &MinimalModel, x: &ModuleLabel, y: &ModuleLabel) -> f64 {
    let (p, q) = (f64::from(model.p()), f64::from(model.q()));
    let (m, n, m2, n2) = (x.m(), x.n(), y.m(), y.n());
    let sign = if (1 + m * n2 + n * m2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let r = |v: u32| f64::from(v);
    2.0 * (2.0 / (p * q)).sqrt()
        * sign
        * (PI * p / q * r(n) * r(n2)).sin()
        * (PI * q / p * r(m) * r(m2)).sin()
}

/// N_{ab}^c from the Verlinde formula.
pub fn verlinde(model: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel, c: &ModuleLabel) -> f64 {
    let vac = model.vacuum();
    model
        .list_labels()
        .iter()
        .map(|j| {
            s_matrix(model, a, j) * s_matrix(model, b, j) * s_matrix(model, c, j)
                / s_matrix(model, &vac, j)
        })
        .sum()
}

/// Floating-point FFK r-matrices that recurse through the largest
/// compatible intermediate (the exact code takes the smallest).
pub struct FloatFfk {
    p: u32,
    q: u32,
    memo: HashMap<(bool, [u32; 6]), Complex64>,
}

impl FloatFfk {
    pub fn new(model: &MinimalModel) -> Self {
        FloatFfk {
            p: model.p(),
            q: model.q(),
            memo: HashMap::new(),
        }
    }

    fn bound(&self, primed: bool) -> u32 {
        if primed {
            self.q
        } else {
            self.p
        }
    }

    fn root(&self, primed: bool, quarters: i64) -> Complex64 {
        let (p, q) = (f64::from(self.p), f64::from(self.q));
        let frac = if primed { p / q } else { q / p };
        Complex64::from_polar(1.0, 2.0 * PI * frac * quarters as f64 / 4.0)
    }

    fn bracket(&self, primed: bool, l: i64) -> Complex64 {
        self.root(primed, 2 * l) - self.root(primed, -2 * l)
    }

    fn fuses(&self, primed: bool, j: u32, k: u32, l: u32) -> bool {
        let n = self.bound(primed);
        l >= 1
            && l < n
            && l > j.abs_diff(k)
            && l < j + k
            && l + j + k < 2 * n
            && (j + k + l) % 2 == 1
    }

    fn compatible(&self, primed: bool, [a, m, n, c, b, d]: [u32; 6]) -> bool {
        self.fuses(primed, a, m, b)
            && self.fuses(primed, c, n, b)
            && self.fuses(primed, a, n, d)
            && self.fuses(primed, c, m, d)
    }

    pub fn r(&mut self, primed: bool, idx: [u32; 6]) -> Complex64 {
        if !self.compatible(primed, idx) {
            return Complex64::zero();
        }
        if let Some(v) = self.memo.get(&(primed, idx)) {
            return *v;
        }
        let [a, m, n, c, b, d] = idx;
        let top = self.bound(primed);
        let value = if m <= 2 && n <= 2 {
            self.base(primed, idx)
        } else if m > 2 {
            let a1 = (1..top)
                .rev()
                .find(|&a1| self.fuses(primed, a, 2, a1) && self.fuses(primed, a1, m - 1, b))
                .expect("intermediate");
            (1..top)
                .map(|d1| {
                    self.r(primed, [a, 2, n, d1, a1, d]) * self.r(primed, [a1, m - 1, n, c, b, d1])
                })
                .sum()
        } else {
            let c1 = (1..top)
                .rev()
                .find(|&c1| self.fuses(primed, b, 2, c1) && self.fuses(primed, c, n - 1, c1))
                .expect("intermediate");
            (1..top)
                .map(|d1| {
                    self.r(primed, [a, m, 2, c1, b, d1]) * self.r(primed, [d1, m, n - 1, c, c1, d])
                })
                .sum()
        };
        self.memo.insert((primed, idx), value);
        value
    }

    fn base(&self, primed: bool, [a, m, n, c, b, d]: [u32; 6]) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        if m == 1 {
            return if b == a && d == c {
                one
            } else {
                Complex64::zero()
            };
        }
        if n == 1 {
            return if b == c && d == a {
                one
            } else {
                Complex64::zero()
            };
        }
        let (a, c, b, d) = (i64::from(a), i64::from(c), i64::from(b), i64::from(d));
        if (a - c).abs() == 2 {
            return self.root(primed, 1);
        }
        let s = b - a;
        if b == d {
            let x = self.root(primed, -1 - 2 * s * a) * self.bracket(primed, 1)
                / self.bracket(primed, a);
            if s > 0 {
                -x
            } else {
                x
            }
        } else {
            self.root(primed, -1) * self.bracket(primed, a + s) / self.bracket(primed, a)
        }
    }

    fn reps(&self, l: &ModuleLabel) -> [(u32, u32); 2] {
        [(l.n(), l.m()), (self.q - l.n(), self.p - l.m())]
    }

    /// All entries of a braid matrix, rows and columns as in `bm`. The
    /// representative choice follows the same first-fit rule as the library.
    pub fn braid(&mut self, bm: &BraidMatrix) -> Vec<Vec<Complex64>> {
        let ext_reps: Vec<[(u32, u32); 2]> = bm.externals.iter().map(|l| self.reps(l)).collect();
        for mask in 0..16u32 {
            let ext: [(u32, u32); 4] =
                std::array::from_fn(|k| ext_reps[k][((mask >> k) & 1) as usize]);
            let [a4, a1, a3, a2] = ext;
            let row_ok = |s: &Self, mu: (u32, u32)| {
                s.fuses(true, a3.0, a4.0, mu.0)
                    && s.fuses(true, a2.0, a1.0, mu.0)
                    && s.fuses(false, a3.1, a4.1, mu.1)
                    && s.fuses(false, a2.1, a1.1, mu.1)
            };
            let col_ok = |s: &Self, g: (u32, u32)| {
                s.fuses(true, a3.0, a1.0, g.0)
                    && s.fuses(true, a2.0, a4.0, g.0)
                    && s.fuses(false, a3.1, a1.1, g.1)
                    && s.fuses(false, a2.1, a4.1, g.1)
            };
            let rows: Option<Vec<_>> = bm
                .rows
                .iter()
                .map(|l| self.reps(l).into_iter().find(|&r| row_ok(self, r)))
                .collect();
            let cols: Option<Vec<_>> = bm
                .cols
                .iter()
                .map(|l| self.reps(l).into_iter().find(|&r| col_ok(self, r)))
                .collect();
            let (Some(rows), Some(cols)) = (rows, cols) else {
                continue;
            };
            return rows
                .iter()
                .map(|&mu| {
                    cols.iter()
                        .map(|&g| {
                            let pr = [a3.0, a4.0, a1.0, a2.0, mu.0, g.0];
                            let un = [a3.1, a4.1, a1.1, a2.1, mu.1, g.1];
                            self.prefactor(pr, un) * self.r(true, pr) * self.r(false, un)
                        })
                        .collect()
                })
                .collect();
        }
        panic!("no compatible representatives");
    }

    fn prefactor(&self, p: [u32; 6], u: [u32; 6]) -> Complex64 {
        let s = |x: u32| i64::from(x);
        let i_exp = -(s(p[1]) - 1) * (s(u[2]) - 1) - (s(p[2]) - 1) * (s(u[1]) - 1);
        let t1 = (s(u[0]) - s(u[4]) + s(u[3]) - s(u[5])) * (s(p[2]) + s(u[1]));
        let t2 = (s(p[0]) - s(p[4]) + s(p[3]) - s(p[5])) * (s(u[2]) + s(u[1]));
        let sign = if (t1 / 2 + t2 / 2).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        Complex64::i().powi(i_exp.rem_euclid(4) as i32) * sign
    }
}

pub mod strategies {
    use minimal_fusion::exact_arith::{ratio, zeta, CyclotomicNumber};
    use proptest::prelude::*;

    /// Orders exercised by the field-axiom suites.
    pub const ORDERS: [u32; 5] = [8, 16, 24, 224, 528];

    /// A sparse random element Σ (a/b)·ζ^k of Q(ζ_order).
    pub fn element(order: u32) -> impl Strategy<Value = CyclotomicNumber> {
        prop::collection::vec((0..i64::from(order), -6i64..=6, 1i64..=4), 0..6).prop_map(
            move |terms| {
                terms
                    .into_iter()
                    .fold(CyclotomicNumber::zero(order), |acc, (k, a, b)| {
                        acc + zeta(order, k).scale(&ratio(a, b))
                    })
            },
        )
    }

    /// (order, x, y, z) with all three in the same field.
    pub fn triple(
    ) -> impl Strategy<Value = (u32, CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
        prop::sample::select(ORDERS.to_vec())
            .prop_flat_map(|n| (Just(n), element(n), element(n), element(n)))
    }
}
