//! Exact Gaussian elimination over Q and over cyclotomic fields.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicNumber;

/// The operations elimination needs from a field.
pub trait FieldElement: Clone {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn inv_elem(&self) -> Self;
}

impl FieldElement for BigRational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn inv_elem(&self) -> Self {
        self.recip()
    }
}

impl FieldElement for CyclotomicNumber {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.order())
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn inv_elem(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl<F: FieldElement> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduce `m` (all rows of equal length `cols`).
pub fn rref<F: FieldElement>(m: &[Vec<F>], cols: usize) -> Echelon<F> {
    let mut rows: Vec<Vec<F>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_elem()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv_elem();
        rows[r] = rows[r].iter().map(|x| x.mul_elem(&inv)).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero_elem() {
                continue;
            }
            let f = rows[i][c].clone();
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero_elem() {
                    *x = x.sub_elem(&f.mul_elem(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank<F: FieldElement>(m: &[Vec<F>], cols: usize) -> usize {
    rref(m, cols).rank()
}

/// A basis of the right nullspace {x : m·x = 0}. `sample` supplies the zero
/// and one of the field (needed when `m` has no rows).
pub fn nullspace<F: FieldElement>(m: &[Vec<F>], cols: usize, sample: &F) -> Vec<Vec<F>> {
    let e = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![sample.zero_like(); cols];
            v[f] = sample.one_like();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = sample.zero_like().sub_elem(&row[f]);
            }
            v
        })
        .collect()
}

/// Solve m·x = b; `None` if inconsistent. Free variables are set to zero.
pub fn solve<F: FieldElement>(m: &[Vec<F>], b: &[F], cols: usize) -> Option<Vec<F>> {
    let aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(&aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let sample = b.first()?;
    let mut x = vec![sample.zero_like(); cols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

/// Determinant by elimination (square input).
pub fn determinant<F: FieldElement>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = a[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero_elem()) else {
            return det.zero_like();
        };
        if p != c {
            a.swap(p, c);
            det = det.zero_like().sub_elem(&det);
        }
        det = det.mul_elem(&a[c][c]);
        let inv = a[c][c].inv_elem();
        for i in c + 1..n {
            if a[i][c].is_zero_elem() {
                continue;
            }
            let f = a[i][c].mul_elem(&inv);
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = x.sub_elem(&f.mul_elem(y));
            }
        }
    }
    det
}
