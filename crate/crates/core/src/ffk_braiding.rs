//! Braiding matrices of unitary minimal models in the almost factorised form
//! of Felder, Fröhlich and Keller.
//!
//! A braid entry is a product of two r-matrix values, one for each quantum
//! group parameter:
//!
//! - the primed factor r' uses y = exp(2πi·p/p') and [l]' = y^{l/2} − y^{−l/2},
//!   with indices truncated at p' = p + 1;
//! - the unprimed factor r uses x = exp(2πi·p'/p) and [l] = x^{l/2} − x^{−l/2},
//!   truncated at p.
//!
//! Every fractional power that appears is a power of ζ_{4pp'}, so all values
//! live in Q(ζ_{4pp'}).

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::exact_arith::{linalg, zeta, CyclotomicNumber};
use crate::minimal_model::{MinimalModel, ModuleLabel};

/// Which quantum group parameter an r-matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// y = exp(2πi·p/p'), indices below p'.
    Primed,
    /// x = exp(2πi·p'/p), indices below p.
    Unprimed,
}

/// The value r(a, m, n, c)_{b, d} (or r' for [`Variant::Primed`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RQuery {
    pub a: u32,
    pub m: u32,
    pub n: u32,
    pub c: u32,
    pub b: u32,
    pub d: u32,
    pub variant: Variant,
}

impl RQuery {
    pub fn primed(a: u32, m: u32, n: u32, c: u32, b: u32, d: u32) -> Self {
        RQuery {
            a,
            m,
            n,
            c,
            b,
            d,
            variant: Variant::Primed,
        }
    }

    pub fn unprimed(a: u32, m: u32, n: u32, c: u32, b: u32, d: u32) -> Self {
        RQuery {
            a,
            m,
            n,
            c,
            b,
            d,
            variant: Variant::Unprimed,
        }
    }
}

impl fmt::Display for RQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.variant == Variant::Primed {
            "'"
        } else {
            ""
        };
        write!(
            f,
            "r{prime}({},{},{},{})_{{{},{}}}",
            self.a, self.m, self.n, self.c, self.b, self.d
        )
    }
}

/// Braiding matrix (B_{a4,a1}^{a3,a2})_{μ,γ} for fixed external modules.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidMatrix {
    pub model: MinimalModel,
    /// (a4, a1, a3, a2).
    pub externals: [ModuleLabel; 4],
    /// Intermediate modules μ with N_{a3,μ}^{a4}·N_{a2,a1}^{μ} ≠ 0.
    pub rows: Vec<ModuleLabel>,
    /// Intermediate modules γ with N_{a2,γ}^{a4}·N_{a3,a1}^{γ} ≠ 0.
    pub cols: Vec<ModuleLabel>,
    pub entries: Vec<Vec<CyclotomicNumber>>,
}

impl BraidMatrix {
    /// The entry at (μ, γ); zero if either label is not an allowed intermediate.
    pub fn entry(&self, mu: &ModuleLabel, gamma: &ModuleLabel) -> CyclotomicNumber {
        let i = self.rows.iter().position(|l| l == mu);
        let j = self.cols.iter().position(|l| l == gamma);
        match (i, j) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => CyclotomicNumber::zero(self.order()),
        }
    }

    pub fn order(&self) -> u32 {
        ffk_order(&self.model)
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    /// Exact determinant; `None` for a non-square matrix.
    pub fn determinant(&self) -> Option<CyclotomicNumber> {
        if !self.is_square() {
            return None;
        }
        if self.rows.is_empty() {
            return Some(CyclotomicNumber::one(self.order()));
        }
        Some(linalg::determinant(&self.entries))
    }
}

fn ffk_order(model: &MinimalModel) -> u32 {
    4 * model.p() * model.q()
}

type Pair = (u32, u32);

/// r-matrix evaluator for one unitary model, memoising recursion results.
#[derive(Debug)]
pub struct FfkBraiding {
    model: MinimalModel,
    order: u32,
    memo: RwLock<HashMap<RQuery, CyclotomicNumber>>,
    inverse_brackets: RwLock<HashMap<(Variant, i64), CyclotomicNumber>>,
}

impl FfkBraiding {
    pub fn new(model: MinimalModel) -> Result<Self> {
        if !model.is_unitary() {
            return Err(Error::NonUnitaryModel {
                p: model.p(),
                q: model.q(),
            });
        }
        Ok(FfkBraiding {
            model,
            order: ffk_order(&model),
            memo: RwLock::new(HashMap::new()),
            inverse_brackets: RwLock::new(HashMap::new()),
        })
    }

    pub fn model(&self) -> MinimalModel {
        self.model
    }

    /// The cyclotomic order 4pp' of the field holding all values.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Index bound: labels run over 1..truncation.
    pub fn truncation(&self, v: Variant) -> u32 {
        match v {
            Variant::Primed => self.model.q(),
            Variant::Unprimed => self.model.p(),
        }
    }

    /// base^{k/4}, base = y (primed) or x (unprimed).
    pub fn root_power(&self, v: Variant, quarters: i64) -> CyclotomicNumber {
        // y^{k/4} = ζ_{4pp'}^{p²k}, x^{k/4} = ζ_{4pp'}^{p'²k}.
        let s = match v {
            Variant::Primed => self.model.p(),
            Variant::Unprimed => self.model.q(),
        };
        zeta(self.order, i64::from(s * s) * quarters)
    }

    /// [l] = base^{l/2} − base^{−l/2}.
    pub fn bracket(&self, v: Variant, l: i64) -> CyclotomicNumber {
        self.root_power(v, 2 * l) - self.root_power(v, -2 * l)
    }

    fn inverse_bracket(&self, v: Variant, l: i64) -> Result<CyclotomicNumber> {
        if let Some(x) = self.inverse_brackets.read().expect("poisoned").get(&(v, l)) {
            return Ok(x.clone());
        }
        let inv = self.bracket(v, l).inv()?;
        self.inverse_brackets
            .write()
            .expect("poisoned")
            .insert((v, l), inv.clone());
        Ok(inv)
    }

    /// Truncated sl₂ fusion j ⊗ k at the variant's level.
    pub fn fusion(&self, v: Variant, j: u32, k: u32) -> Vec<u32> {
        let n = self.truncation(v);
        let lo = j.abs_diff(k) + 1;
        let hi = (j + k - 1).min((2 * n).saturating_sub(j + k + 1));
        (lo..=hi).step_by(2).collect()
    }

    fn fuses(&self, v: Variant, j: u32, k: u32, l: u32) -> bool {
        let n = self.truncation(v);
        (1..n).contains(&l) && self.fusion(v, j, k).contains(&l)
    }

    /// b ∈ a⊗m ∩ c⊗n and d ∈ a⊗n ∩ c⊗m.
    pub fn is_compatible(&self, q: &RQuery) -> bool {
        let v = q.variant;
        self.fuses(v, q.a, q.m, q.b)
            && self.fuses(v, q.c, q.n, q.b)
            && self.fuses(v, q.a, q.n, q.d)
            && self.fuses(v, q.c, q.m, q.d)
    }

    fn check_range(&self, q: &RQuery) -> Result<()> {
        let n = self.truncation(q.variant);
        let idx = [q.a, q.m, q.n, q.c, q.b, q.d];
        if idx.iter().all(|i| (1..n).contains(i)) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "{q}: indices must lie in 1..{} for the {} model",
                n - 1,
                self.model
            )))
        }
    }

    /// r(a,m,n,c)_{b,d}, using the smallest compatible intermediate at each
    /// recursion step.
    pub fn r_matrix(&self, q: &RQuery) -> Result<CyclotomicNumber> {
        self.check_range(q)?;
        self.r_cached(q)
    }

    /// r(a,m,n,c)_{b,d} evaluated once for every compatible choice of the
    /// first recursion step's intermediate (a₁ when m > 2, else c₁ when n > 2).
    /// Base cases yield a single value.
    pub fn recursion_choice_values(&self, q: &RQuery) -> Result<Vec<CyclotomicNumber>> {
        self.check_range(q)?;
        if !self.is_compatible(q) || q.m <= 2 && q.n <= 2 {
            return Ok(vec![self.r_cached(q)?]);
        }
        self.recursion_choices(q)
            .into_iter()
            .map(|choice| self.r_step(q, choice))
            .collect()
    }

    /// Every query stored in the memo table so far.
    pub fn visited_queries(&self) -> Vec<RQuery> {
        let mut v: Vec<RQuery> = self
            .memo
            .read()
            .expect("poisoned")
            .keys()
            .copied()
            .collect();
        v.sort();
        v
    }

    fn r_cached(&self, q: &RQuery) -> Result<CyclotomicNumber> {
        if !self.is_compatible(q) {
            return Ok(CyclotomicNumber::zero(self.order));
        }
        if let Some(x) = self.memo.read().expect("poisoned").get(q) {
            return Ok(x.clone());
        }
        let value = if q.m <= 2 && q.n <= 2 {
            self.base_case(q)?
        } else {
            let first = *self.recursion_choices(q).first().ok_or_else(|| {
                Error::IndexOutOfRange(format!("{q}: no compatible intermediate"))
            })?;
            self.r_step(q, first)?
        };
        self.memo
            .write()
            .expect("poisoned")
            .insert(*q, value.clone());
        Ok(value)
    }

    /// Candidate intermediates for the first recursion step, ascending.
    fn recursion_choices(&self, q: &RQuery) -> Vec<u32> {
        let v = q.variant;
        if q.m > 2 {
            self.fusion(v, q.a, 2)
                .into_iter()
                .filter(|&a1| self.fuses(v, a1, q.m - 1, q.b))
                .collect()
        } else {
            self.fusion(v, q.b, 2)
                .into_iter()
                .filter(|&c1| self.fuses(v, q.c, q.n - 1, c1))
                .collect()
        }
    }

    /// One recursion step with intermediate `pick`:
    ///
    /// - m > 2: Σ_{d₁} r(a,2,n,d₁)_{a₁,d} · r(a₁,m−1,n,c)_{b,d₁}
    /// - n > 2: Σ_{d₁} r(a,m,2,c₁)_{b,d₁} · r(d₁,m,n−1,c)_{c₁,d}
    fn r_step(&self, q: &RQuery, pick: u32) -> Result<CyclotomicNumber> {
        let v = q.variant;
        let mut acc = CyclotomicNumber::zero(self.order);
        for d1 in 1..self.truncation(v) {
            let (left, right) = if q.m > 2 {
                let a1 = pick;
                (
                    RQuery {
                        a: q.a,
                        m: 2,
                        n: q.n,
                        c: d1,
                        b: a1,
                        d: q.d,
                        variant: v,
                    },
                    RQuery {
                        a: a1,
                        m: q.m - 1,
                        n: q.n,
                        c: q.c,
                        b: q.b,
                        d: d1,
                        variant: v,
                    },
                )
            } else {
                let c1 = pick;
                (
                    RQuery {
                        a: q.a,
                        m: q.m,
                        n: 2,
                        c: c1,
                        b: q.b,
                        d: d1,
                        variant: v,
                    },
                    RQuery {
                        a: d1,
                        m: q.m,
                        n: q.n - 1,
                        c: q.c,
                        b: c1,
                        d: q.d,
                        variant: v,
                    },
                )
            };
            if !self.is_compatible(&left) || !self.is_compatible(&right) {
                continue;
            }
            acc += self.r_cached(&left)? * self.r_cached(&right)?;
        }
        Ok(acc)
    }

    fn base_case(&self, q: &RQuery) -> Result<CyclotomicNumber> {
        let v = q.variant;
        let one = CyclotomicNumber::one(self.order);
        let zero = CyclotomicNumber::zero(self.order);
        if q.m == 1 {
            return Ok(if q.b == q.a && q.d == q.c { one } else { zero });
        }
        if q.n == 1 {
            return Ok(if q.b == q.c && q.d == q.a { one } else { zero });
        }
        // m = n = 2.
        let (a, c, b, d) = (
            i64::from(q.a),
            i64::from(q.c),
            i64::from(q.b),
            i64::from(q.d),
        );
        if (a - c).abs() == 2 {
            return Ok(self.root_power(v, 1));
        }
        let l = a;
        let s = b - l;
        if b == d {
            // −s · base^{−1/4 − s·l/2} · [1]/[l]
            let mut x = self.root_power(v, -1 - 2 * s * l)
                * self.bracket(v, 1)
                * self.inverse_bracket(v, l)?;
            if s > 0 {
                x = -x;
            }
            Ok(x)
        } else {
            // base^{−1/4} · [l+s]/[l]
            Ok(self.root_power(v, -1) * self.bracket(v, l + s) * self.inverse_bracket(v, l)?)
        }
    }

    /// Both FFK representatives of a label as (i', i) pairs, canonical first.
    fn representatives(&self, l: &ModuleLabel) -> Result<[Pair; 2]> {
        let (ip, i) = l.ffk_pair()?;
        Ok([(ip, i), (self.model.q() - ip, self.model.p() - i)])
    }

    /// The pair of r-queries (primed, unprimed) for one entry.
    fn entry_queries(&self, ext: &[Pair; 4], mu: Pair, gamma: Pair) -> (RQuery, RQuery) {
        let [a4, a1, a3, a2] = *ext;
        let primed = RQuery::primed(a3.0, a4.0, a1.0, a2.0, mu.0, gamma.0);
        let unprimed = RQuery::unprimed(a3.1, a4.1, a1.1, a2.1, mu.1, gamma.1);
        (primed, unprimed)
    }

    fn row_ok(&self, ext: &[Pair; 4], mu: Pair) -> bool {
        let [a4, a1, a3, a2] = *ext;
        let ok = |v: Variant, a: u32, m: u32, n: u32, c: u32, b: u32| {
            self.fuses(v, a, m, b) && self.fuses(v, c, n, b)
        };
        ok(Variant::Primed, a3.0, a4.0, a1.0, a2.0, mu.0)
            && ok(Variant::Unprimed, a3.1, a4.1, a1.1, a2.1, mu.1)
    }

    fn col_ok(&self, ext: &[Pair; 4], gamma: Pair) -> bool {
        let [a4, a1, a3, a2] = *ext;
        let ok = |v: Variant, a: u32, m: u32, n: u32, c: u32, d: u32| {
            self.fuses(v, a, n, d) && self.fuses(v, c, m, d)
        };
        ok(Variant::Primed, a3.0, a4.0, a1.0, a2.0, gamma.0)
            && ok(Variant::Unprimed, a3.1, a4.1, a1.1, a2.1, gamma.1)
    }

    /// Choose FFK representatives for the externals and for every allowed
    /// intermediate so that all sl₂ adjacency conditions hold.
    fn choose_representatives(
        &self,
        externals: &[ModuleLabel; 4],
        rows: &[ModuleLabel],
        cols: &[ModuleLabel],
    ) -> Result<([Pair; 4], Vec<Pair>, Vec<Pair>)> {
        let reps: Vec<[Pair; 2]> = externals
            .iter()
            .map(|l| self.representatives(l))
            .collect::<Result<_>>()?;
        for mask in 0..16u32 {
            let ext: [Pair; 4] = std::array::from_fn(|k| reps[k][((mask >> k) & 1) as usize]);
            let pick =
                |labels: &[ModuleLabel], ok: &dyn Fn(Pair) -> bool| -> Result<Option<Vec<Pair>>> {
                    let mut out = Vec::with_capacity(labels.len());
                    for l in labels {
                        match self.representatives(l)?.into_iter().find(|&r| ok(r)) {
                            Some(r) => out.push(r),
                            None => return Ok(None),
                        }
                    }
                    Ok(Some(out))
                };
            let Some(row_reps) = pick(rows, &|r| self.row_ok(&ext, r))? else {
                continue;
            };
            let Some(col_reps) = pick(cols, &|r| self.col_ok(&ext, r))? else {
                continue;
            };
            return Ok((ext, row_reps, col_reps));
        }
        Err(Error::NoCompatibleRepresentative(format!(
            "externals {} {} {} {} of {}",
            externals[0], externals[1], externals[2], externals[3], self.model
        )))
    }

    /// i^{−(m'−1)(n−1)−(n'−1)(m−1)} · (−1)^{½(a−b+c−d)(n'+m) + ½(a'−b'+c'−d')(n+m)}.
    fn prefactor(&self, p: &RQuery, u: &RQuery) -> Result<CyclotomicNumber> {
        let s = |x: u32| i64::from(x);
        let i_exp = -(s(p.m) - 1) * (s(u.n) - 1) - (s(p.n) - 1) * (s(u.m) - 1);
        let t1 = (s(u.a) - s(u.b) + s(u.c) - s(u.d)) * (s(p.n) + s(u.m));
        let t2 = (s(p.a) - s(p.b) + s(p.c) - s(p.d)) * (s(u.n) + s(u.m));
        if t1 % 2 != 0 || t2 % 2 != 0 {
            return Err(Error::NonIntegerExponent(format!(
                "sign exponent {t1}/2 + {t2}/2 for {p} · {u}"
            )));
        }
        let sign_exp = (t1 / 2 + t2 / 2).rem_euclid(2);
        // i = ζ_{order}^{order/4}, −1 = i².
        let quarter = i64::from(self.order / 4);
        Ok(zeta(self.order, quarter * (i_exp + 2 * sign_exp)))
    }

    /// Intermediates μ (rows) and γ (columns) allowed by fusion.
    fn intermediates(&self, ext: &[ModuleLabel; 4]) -> (Vec<ModuleLabel>, Vec<ModuleLabel>) {
        let [a4, a1, a3, a2] = ext;
        let md = &self.model;
        let labels = md.list_labels();
        let rows = labels
            .iter()
            .filter(|mu| md.fusion_coefficient(a3, mu, a4) * md.fusion_coefficient(a2, a1, mu) != 0)
            .copied()
            .collect();
        let cols = labels
            .iter()
            .filter(|g| md.fusion_coefficient(a2, g, a4) * md.fusion_coefficient(a3, a1, g) != 0)
            .copied()
            .collect();
        (rows, cols)
    }

    /// The braiding matrix B_{a4,a1}^{a3,a2}; `externals` is (a4, a1, a3, a2).
    pub fn braid_matrix(&self, externals: [ModuleLabel; 4]) -> Result<BraidMatrix> {
        for l in &externals {
            if l.model() != self.model {
                let (p, q) = (self.model.p(), self.model.q());
                return Err(Error::ModelMismatch(p, q, l.model().p(), l.model().q()));
            }
        }
        let (rows, cols) = self.intermediates(&externals);
        let (ext, row_reps, col_reps) = self.choose_representatives(&externals, &rows, &cols)?;
        let mut entries = Vec::with_capacity(rows.len());
        for mu in &row_reps {
            let mut row = Vec::with_capacity(cols.len());
            for gamma in &col_reps {
                let (p, u) = self.entry_queries(&ext, *mu, *gamma);
                let value = self.prefactor(&p, &u)? * self.r_matrix(&p)? * self.r_matrix(&u)?;
                row.push(value);
            }
            entries.push(row);
        }
        Ok(BraidMatrix {
            model: self.model,
            externals,
            rows,
            cols,
            entries,
        })
    }
}

/// P₁…P₄ of the (7,8) model: weights 0, 15/2, 3/4, 13/4.
pub fn p_label(k: u32) -> Result<ModuleLabel> {
    let m = MinimalModel::new(7, 8)?;
    match k {
        1 => m.label(1, 1),
        2 => m.label(1, 7),
        3 => m.label(1, 3),
        4 => m.label(1, 5),
        _ => Err(Error::Unknown {
            kind: "P index",
            name: k.to_string(),
        }),
    }
}

/// The (11,12) modules indexed 1 (weight 0) and 2 (weight 8).
pub fn u_label(k: u32) -> Result<ModuleLabel> {
    let m = MinimalModel::new(11, 12)?;
    match k {
        1 => m.label(1, 1),
        2 => m.label(1, 7),
        _ => Err(Error::Unknown {
            kind: "(11,12) index",
            name: k.to_string(),
        }),
    }
}

/// B = B_{3,3}^{4,4} in the (7,8) model, rows and columns indexed by P-index.
#[derive(Clone, Debug)]
pub struct PIndexed {
    pub matrix: BraidMatrix,
}

impl PIndexed {
    /// B_{i,j} for P-indices i, j.
    pub fn get(&self, i: u32, j: u32) -> Result<CyclotomicNumber> {
        Ok(self.matrix.entry(&p_label(i)?, &p_label(j)?))
    }
}

/// The minor combinations of B = B_{3,3}^{4,4} in the (7,8) model.
#[derive(Clone, Debug)]
pub struct Lemma5aCombos {
    /// B₄₄·B₂₃ − B₄₃·B₂₄.
    pub first: CyclotomicNumber,
    /// B₃₂·B₄₄ − B₄₂·B₃₄.
    pub second: CyclotomicNumber,
    pub b32_b44: CyclotomicNumber,
    pub b42_b34: CyclotomicNumber,
    pub matrix: PIndexed,
}

/// B_{3,3}^{4,4} of the (7,8) model in P-index form.
pub fn b3344(ffk: &FfkBraiding) -> Result<PIndexed> {
    let ext = [p_label(3)?, p_label(3)?, p_label(4)?, p_label(4)?];
    Ok(PIndexed {
        matrix: ffk.braid_matrix(ext)?,
    })
}

pub fn lemma_5a_combos() -> Result<Lemma5aCombos> {
    let ffk = FfkBraiding::new(MinimalModel::new(7, 8)?)?;
    let b = b3344(&ffk)?;
    let g = |i, j| b.get(i, j);
    let first = g(4, 4)? * g(2, 3)? - g(4, 3)? * g(2, 4)?;
    let b32_b44 = g(3, 2)? * g(4, 4)?;
    let b42_b34 = g(4, 2)? * g(3, 4)?;
    let second = &b32_b44 - &b42_b34;
    Ok(Lemma5aCombos {
        first,
        second,
        b32_b44,
        b42_b34,
        matrix: b,
    })
}

/// B_{2,2}^{2,2} of the (11,12) model.
pub fn b2222(ffk: &FfkBraiding) -> Result<BraidMatrix> {
    let u2 = u_label(2)?;
    ffk.braid_matrix([u2, u2, u2, u2])
}

/// (B_{2,2}^{2,2})_{2,1} of the (11,12) model.
pub fn lemma_3c_entry() -> Result<CyclotomicNumber> {
    let ffk = FfkBraiding::new(MinimalModel::new(11, 12)?)?;
    let b = b2222(&ffk)?;
    Ok(b.entry(&u_label(2)?, &u_label(1)?))
}
