//! The 5A and 3C algebras as graded sums of tensor products of minimal-model
//! modules: sector lists, sector fusion, simple-current chains, the linear
//! systems for structure constants, and the irreducible-module fusion rings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_arith::{linalg, radical_string, ratio, CyclotomicNumber, Rational};
use crate::ffk_braiding::{b2222, b3344, lemma_3c_entry, p_label, u_label, FfkBraiding};
use crate::minimal_model::{qdim_tensor, MinimalModel, ModuleLabel, QDim};

/// Which of the two algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraName {
    FiveA,
    ThreeC,
}

impl AlgebraName {
    pub fn all() -> [AlgebraName; 2] {
        [AlgebraName::FiveA, AlgebraName::ThreeC]
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraName::FiveA => "5A",
            AlgebraName::ThreeC => "3C",
        })
    }
}

impl FromStr for AlgebraName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "5A" => Ok(AlgebraName::FiveA),
            "3C" => Ok(AlgebraName::ThreeC),
            _ => Err(Error::Unknown {
                kind: "algebra",
                name: s.to_string(),
            }),
        }
    }
}

/// One graded piece U^i: a tensor product of irreducible modules, one per
/// factor of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub name: String,
    pub components: Vec<ModuleLabel>,
    pub weights: Vec<Rational>,
}

impl Sector {
    fn new(name: String, components: Vec<ModuleLabel>) -> Self {
        let weights = components.iter().map(ModuleLabel::weight).collect();
        Sector {
            name,
            components,
            weights,
        }
    }

    /// Quantum dimension over the tensor product of the factor vacua.
    pub fn qdim(&self) -> QDim {
        qdim_tensor(&self.components)
    }

    pub fn is_vacuum(&self) -> bool {
        self.components.iter().all(ModuleLabel::is_vacuum)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=[{}]", self.name, weight_list(&self.weights))
    }
}

fn weight_list(ws: &[Rational]) -> String {
    ws.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// An algebra as a list of sectors over fixed tensor factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub name: AlgebraName,
    pub factors: Vec<MinimalModel>,
    pub sectors: Vec<Sector>,
}

impl GradedAlgebra {
    /// Sector by name (`"U3"`, case-insensitive) or by 1-based index (`"3"`).
    pub fn sector(&self, name: &str) -> Result<&Sector> {
        let t = name.trim();
        let idx = t
            .strip_prefix(['U', 'u'])
            .unwrap_or(t)
            .parse::<usize>()
            .ok()
            .filter(|&i| i >= 1 && i <= self.sectors.len());
        idx.map(|i| &self.sectors[i - 1])
            .ok_or_else(|| Error::Unknown {
                kind: "sector",
                name: name.to_string(),
            })
    }

    pub fn vacuum(&self) -> &Sector {
        &self.sectors[0]
    }

    /// Position of the sector with exactly these components.
    pub fn position(&self, components: &[ModuleLabel]) -> Option<usize> {
        self.sectors.iter().position(|s| s.components == components)
    }

    /// Sectors by 1-based index range, inclusive.
    fn range(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo - 1..hi).collect()
    }
}

const FIVE_A: [[(i64, i64); 3]; 12] = [
    [(0, 1), (0, 1), (0, 1)],
    [(0, 1), (15, 2), (15, 2)],
    [(0, 1), (3, 4), (13, 4)],
    [(0, 1), (13, 4), (3, 4)],
    [(1, 2), (0, 1), (15, 2)],
    [(1, 2), (15, 2), (0, 1)],
    [(1, 2), (3, 4), (3, 4)],
    [(1, 2), (13, 4), (13, 4)],
    [(1, 16), (5, 32), (57, 32)],
    [(1, 16), (57, 32), (5, 32)],
    [(1, 16), (57, 32), (165, 32)],
    [(1, 16), (165, 32), (57, 32)],
];

const THREE_C: [[(i64, i64); 2]; 6] = [
    [(0, 1), (0, 1)],
    [(0, 1), (8, 1)],
    [(1, 2), (45, 2)],
    [(1, 2), (7, 2)],
    [(1, 16), (31, 16)],
    [(1, 16), (175, 16)],
];

fn factors(name: AlgebraName) -> Vec<MinimalModel> {
    let pairs: &[(u32, u32)] = match name {
        AlgebraName::FiveA => &[(3, 4), (7, 8), (7, 8)],
        AlgebraName::ThreeC => &[(3, 4), (11, 12)],
    };
    pairs
        .iter()
        .map(|&(p, q)| MinimalModel::new(p, q).expect("unitary factor"))
        .collect()
}

fn labels_for(factors: &[MinimalModel], weights: &[(i64, i64)]) -> Result<Vec<ModuleLabel>> {
    factors
        .iter()
        .zip(weights)
        .map(|(m, &(n, d))| m.label_with_weight(&ratio(n, d)))
        .collect()
}

/// The 12-sector 5A algebra or the 6-sector 3C algebra.
pub fn build_algebra(name: AlgebraName) -> GradedAlgebra {
    let factors = factors(name);
    let rows: Vec<&[(i64, i64)]> = match name {
        AlgebraName::FiveA => FIVE_A.iter().map(|r| &r[..]).collect(),
        AlgebraName::ThreeC => THREE_C.iter().map(|r| &r[..]).collect(),
    };
    let sectors = rows
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            let comps = labels_for(&factors, w).expect("sector weights are Kac weights");
            Sector::new(format!("U{}", i + 1), comps)
        })
        .collect();
    GradedAlgebra {
        name,
        factors,
        sectors,
    }
}

/// Componentwise fusion of two sectors, split into sector outputs and
/// tensor products that are not sectors of the algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SectorProduct {
    /// (sector index, multiplicity), by increasing index.
    pub sectors: Vec<(usize, u32)>,
    pub others: Vec<(Vec<ModuleLabel>, u32)>,
}

impl SectorProduct {
    pub fn sector_indices(&self) -> Vec<usize> {
        self.sectors.iter().map(|&(i, _)| i).collect()
    }

    /// Sector names, e.g. `["U1", "U3", "U4"]`.
    pub fn names(&self, alg: &GradedAlgebra) -> Vec<String> {
        self.sectors
            .iter()
            .map(|&(i, _)| alg.sectors[i].name.clone())
            .collect()
    }

    /// `U1 + U3 + U4`, with multiplicities and non-sector terms shown.
    pub fn render(&self, alg: &GradedAlgebra) -> String {
        let mut parts: Vec<String> = self
            .sectors
            .iter()
            .map(|&(i, k)| mult(k, &alg.sectors[i].name))
            .collect();
        for (comps, k) in &self.others {
            let ws: Vec<Rational> = comps.iter().map(ModuleLabel::weight).collect();
            parts.push(mult(*k, &format!("[{}]", weight_list(&ws))));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn mult(k: u32, s: &str) -> String {
    if k == 1 {
        s.to_string()
    } else {
        format!("{k}·{s}")
    }
}

/// Fuse two sectors factor by factor and collect the tensor products.
///
/// Products that are not sectors of the algebra land in `others`; closure
/// of a sub-list only concerns the sector outputs.
pub fn sector_fusion(alg: &GradedAlgebra, a: &Sector, b: &Sector) -> Result<SectorProduct> {
    let mut terms: Vec<(Vec<ModuleLabel>, u32)> = vec![(Vec::new(), 1)];
    for (k, model) in alg.factors.iter().enumerate() {
        let fm = model.fuse(&a.components[k], &b.components[k])?;
        terms = terms
            .into_iter()
            .flat_map(|(prefix, m)| {
                fm.iter().map(move |(l, &n)| {
                    let mut v = prefix.clone();
                    v.push(*l);
                    (v, m * n)
                })
            })
            .collect();
    }
    let mut sectors: BTreeMap<usize, u32> = BTreeMap::new();
    let mut others = Vec::new();
    for (comps, m) in terms {
        match alg.position(&comps) {
            Some(i) => *sectors.entry(i).or_default() += m,
            None => others.push((comps, m)),
        }
    }
    Ok(SectorProduct {
        sectors: sectors.into_iter().collect(),
        others,
    })
}

/// One line of a chain report.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Exact value behind the check, when there is one.
    pub exact: Option<CyclotomicNumber>,
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub algebra: AlgebraName,
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn names(alg: &GradedAlgebra, idx: &[usize]) -> String {
    match (idx.first(), idx.last()) {
        (Some(&a), Some(&b)) if idx.len() > 2 => {
            format!("{}..{}", alg.sectors[a].name, alg.sectors[b].name)
        }
        _ => idx
            .iter()
            .map(|&i| alg.sectors[i].name.as_str())
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn closure_check(alg: &GradedAlgebra, set: &[usize]) -> Result<ChainCheck> {
    let mut escapes = Vec::new();
    let mut foreign = 0usize;
    for &a in set {
        for &b in set {
            let prod = sector_fusion(alg, &alg.sectors[a], &alg.sectors[b])?;
            foreign += prod.others.len();
            if prod.sector_indices().iter().any(|i| !set.contains(i)) {
                escapes.push(format!(
                    "{}·{} = {}",
                    alg.sectors[a].name,
                    alg.sectors[b].name,
                    prod.render(alg)
                ));
            }
        }
    }
    let mut detail = if escapes.is_empty() {
        format!("{} products stay inside", set.len() * set.len())
    } else {
        escapes.join("; ")
    };
    if foreign > 0 {
        detail.push_str(&format!(" ({foreign} non-sector outputs ignored)"));
    }
    Ok(ChainCheck {
        name: format!("{} closed under fusion", names(alg, set)),
        passed: escapes.is_empty(),
        detail,
        exact: None,
    })
}

fn sum_qdim(alg: &GradedAlgebra, set: &[usize]) -> CyclotomicNumber {
    set.iter()
        .map(|&i| alg.sectors[i].qdim().exact)
        .fold(CyclotomicNumber::zero(1), |acc, x| acc + x)
}

fn ratio_check(alg: &GradedAlgebra, module: &[usize], base: &[usize]) -> Result<ChainCheck> {
    let num = sum_qdim(alg, module);
    let den = sum_qdim(alg, base);
    let q = num.checked_div(&den)?;
    Ok(ChainCheck {
        name: format!(
            "qdim of {} over {} is 1",
            names(alg, module),
            names(alg, base)
        ),
        passed: q.is_one(),
        detail: format!("{:.12} / {:.12}", num.approx().re, den.approx().re),
        exact: Some(q),
    })
}

fn grading_check(alg: &GradedAlgebra, even: &[usize], odd: &[usize]) -> Result<ChainCheck> {
    let all: Vec<usize> = even.iter().chain(odd).copied().collect();
    let parity = |i: usize| odd.contains(&i);
    let mut bad = Vec::new();
    let mut foreign = 0usize;
    for &a in &all {
        for &b in &all {
            let prod = sector_fusion(alg, &alg.sectors[a], &alg.sectors[b])?;
            foreign += prod.others.len();
            for c in prod.sector_indices() {
                if !all.contains(&c) || parity(c) != (parity(a) ^ parity(b)) {
                    bad.push(format!(
                        "{}·{} ∋ {}",
                        alg.sectors[a].name, alg.sectors[b].name, alg.sectors[c].name
                    ));
                }
            }
        }
    }
    let mut detail = if bad.is_empty() {
        "every sector output has the expected parity".to_string()
    } else {
        bad.join("; ")
    };
    if foreign > 0 {
        detail.push_str(&format!(" ({foreign} non-sector outputs ignored)"));
    }
    Ok(ChainCheck {
        name: format!(
            "Z2 grading even {} / odd {}",
            names(alg, even),
            names(alg, odd)
        ),
        passed: bad.is_empty(),
        detail,
        exact: None,
    })
}

/// Closure, simple-current qdim and grading checks along the chain
/// U¹..U⁴ ⊂ U¹..U⁸ ⊂ U¹..U¹² (5A) or U¹,U² ⊂ U¹..U⁴ ⊂ U¹..U⁶ (3C).
pub fn check_subalgebra_chain(alg: &GradedAlgebra) -> Result<ChainReport> {
    // (small, middle, full) as 1-based inclusive upper bounds.
    let (s, m, f) = match alg.name {
        AlgebraName::FiveA => (4, 8, 12),
        AlgebraName::ThreeC => (2, 4, 6),
    };
    let small = alg.range(1, s);
    let mid = alg.range(1, m);
    let top_odd = alg.range(m + 1, f);
    let mid_odd = alg.range(s + 1, m);
    let checks = vec![
        closure_check(alg, &mid)?,
        ratio_check(alg, &top_odd, &mid)?,
        closure_check(alg, &small)?,
        ratio_check(alg, &mid_odd, &small)?,
        grading_check(alg, &mid, &top_odd)?,
        grading_check(alg, &small, &mid_odd)?,
    ];
    Ok(ChainReport {
        algebra: alg.name,
        checks,
    })
}

/// The three linear systems for structure constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemName {
    FiveAExistence,
    FiveAUniqueness,
    ThreeC,
}

impl SystemName {
    pub fn all() -> [SystemName; 3] {
        [
            SystemName::FiveAExistence,
            SystemName::FiveAUniqueness,
            SystemName::ThreeC,
        ]
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemName::FiveAExistence => "5A-existence",
            SystemName::FiveAUniqueness => "5A-uniqueness",
            SystemName::ThreeC => "3C",
        })
    }
}

impl FromStr for SystemName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "5a-existence" | "existence-5a" => Ok(SystemName::FiveAExistence),
            "5a-uniqueness" | "uniqueness-5a" => Ok(SystemName::FiveAUniqueness),
            "3c" | "3c-uniqueness" | "uniqueness-3c" => Ok(SystemName::ThreeC),
            _ => Err(Error::Unknown {
                kind: "system",
                name: s.to_string(),
            }),
        }
    }
}

/// A homogeneous linear relation Σ coeffs[i]·X_i = 0, labelled by the
/// (j,k) entry it comes from.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: (u32, u32),
    pub coeffs: Vec<CyclotomicNumber>,
}

/// A named unknown and the intermediate index it sits on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub name: &'static str,
    pub index: u32,
}

/// Braid entries keyed by (row, column) index.
pub type EntryTable = BTreeMap<(u32, u32), CyclotomicNumber>;

#[derive(Clone, Debug)]
pub struct SectorSystem {
    pub name: SystemName,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<Equation>,
    /// B, and B̃ for the two-factor systems (empty for 3C).
    pub b: EntryTable,
    pub b_tilde: EntryTable,
}

impl SectorSystem {
    pub fn matrix(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.equations.iter().map(|e| e.coeffs.clone()).collect()
    }

    fn unknown_position(&self, index: u32) -> Option<usize> {
        self.unknowns.iter().position(|u| u.index == index)
    }
}

fn delta(a: u32, b: u32) -> i64 {
    i64::from(a == b)
}

/// Equation order used for the two 5A systems.
const PAIR_ORDER: [(u32, u32); 9] = [
    (2, 2),
    (3, 3),
    (4, 4),
    (2, 3),
    (2, 4),
    (3, 2),
    (3, 4),
    (4, 2),
    (4, 3),
];

/// The P-index seen by the second tensor factor, where Q₃ = P₄ and Q₄ = P₃.
fn swap34(i: u32) -> u32 {
    match i {
        3 => 4,
        4 => 3,
        other => other,
    }
}

fn five_a_tables() -> Result<(EntryTable, EntryTable)> {
    let ffk = FfkBraiding::new(MinimalModel::new(7, 8)?)?;
    let b = b3344(&ffk)?;
    let tilde = ffk.braid_matrix([p_label(4)?, p_label(4)?, p_label(3)?, p_label(3)?])?;
    let mut bt = EntryTable::new();
    let mut tt = EntryTable::new();
    for i in 2..=4 {
        for j in 2..=4 {
            bt.insert((i, j), b.get(i, j)?);
            tt.insert(
                (i, j),
                tilde.entry(&p_label(swap34(i))?, &p_label(swap34(j))?),
            );
        }
    }
    Ok((bt, tt))
}

/// Coefficient of X_i in relation (j,k): B_{ij}·B̃_{ik} − δ_{jk}δ_{ij}.
fn five_a_equations(b: &EntryTable, t: &EntryTable, unknowns: &[Unknown]) -> Vec<Equation> {
    PAIR_ORDER
        .iter()
        .map(|&(j, k)| Equation {
            label: (j, k),
            coeffs: unknowns
                .iter()
                .map(|u| {
                    let i = u.index;
                    let diag = CyclotomicNumber::from_integer(1, delta(j, k) * delta(i, j));
                    &b[&(i, j)] * &t[&(i, k)] - diag
                })
                .collect(),
        })
        .collect()
}

/// Exact coefficient systems built from the braid matrices.
pub fn build_sector_system(name: SystemName) -> Result<SectorSystem> {
    match name {
        SystemName::FiveAExistence | SystemName::FiveAUniqueness => {
            let (b, t) = five_a_tables()?;
            let unknowns = if name == SystemName::FiveAExistence {
                vec![
                    Unknown {
                        name: "u",
                        index: 2,
                    },
                    Unknown {
                        name: "v",
                        index: 3,
                    },
                    Unknown {
                        name: "w",
                        index: 4,
                    },
                ]
            } else {
                vec![
                    Unknown {
                        name: "1-μ²",
                        index: 3,
                    },
                    Unknown {
                        name: "1-γ²",
                        index: 4,
                    },
                ]
            };
            let equations = five_a_equations(&b, &t, &unknowns);
            Ok(SectorSystem {
                name,
                unknowns,
                equations,
                b,
                b_tilde: t,
            })
        }
        SystemName::ThreeC => {
            let ffk = FfkBraiding::new(MinimalModel::new(11, 12)?)?;
            let m = b2222(&ffk)?;
            let mut b = EntryTable::new();
            for i in 1..=2 {
                for j in 1..=2 {
                    b.insert((i, j), m.entry(&u_label(i)?, &u_label(j)?));
                }
            }
            // (1 − λ²)·B_{2,k} = δ_{2k}·(1 − λ²)
            let equations = (1..=2)
                .map(|k| Equation {
                    label: (2, k),
                    coeffs: vec![&b[&(2, k)] - CyclotomicNumber::from_integer(1, delta(2, k))],
                })
                .collect();
            Ok(SectorSystem {
                name,
                unknowns: vec![Unknown {
                    name: "1-λ²",
                    index: 2,
                }],
                equations,
                b,
                b_tilde: EntryTable::new(),
            })
        }
    }
}

/// One replayed case-analysis step: a nonzero minor of B forces
/// X_i·B̃_{ik} = 0 on the active unknowns, and relation (k,k) then forces
/// the target unknown to vanish.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub assumption: String,
    pub minor_expr: String,
    pub minor: CyclotomicNumber,
    /// Rank of the (j,k) relations restricted to the active unknowns.
    pub restricted_rank: usize,
    pub active: usize,
    pub conclusion: String,
}

impl Certificate {
    /// The restricted relations only admit the zero solution.
    pub fn forces_zero(&self) -> bool {
        !self.minor.is_zero() && self.restricted_rank == self.active
    }
}

/// Value of a report-only identity.
#[derive(Clone, Debug)]
pub struct Residual {
    pub label: String,
    pub value: CyclotomicNumber,
}

#[derive(Clone, Debug)]
pub struct SystemSolution {
    pub system: SystemName,
    pub unknowns: Vec<&'static str>,
    pub rank: usize,
    /// Basis of the solution space; empty when only zero solves the system.
    pub basis: Vec<Vec<CyclotomicNumber>>,
    pub certificates: Vec<Certificate>,
    pub residuals: Vec<Residual>,
}

impl SystemSolution {
    pub fn only_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Human-readable solution set.
    pub fn describe(&self) -> String {
        if !self.only_zero() {
            let vecs: Vec<String> = self
                .basis
                .iter()
                .map(|v| {
                    let xs: Vec<String> = v
                        .iter()
                        .map(|x| radical_string(x).unwrap_or_else(|| x.to_string()))
                        .collect();
                    format!("({})", xs.join(", "))
                })
                .collect();
            return format!(
                "({}) ∈ span{{{}}}",
                self.unknowns.join(", "),
                vecs.join(", ")
            );
        }
        match self.system {
            SystemName::ThreeC => "{λ²=1}".to_string(),
            SystemName::FiveAUniqueness => "{(1-μ², 1-γ²) = (0, 0)}".to_string(),
            SystemName::FiveAExistence => "{(u, v, w) = (0, 0, 0)}".to_string(),
        }
    }
}

fn minor_name(rows: &[u32], cols: &[u32]) -> String {
    let e = |i: u32, j: u32| format!("B{i}{j}");
    format!(
        "{}·{} - {}·{}",
        e(rows[0], cols[0]),
        e(rows[1], cols[1]),
        e(rows[0], cols[1]),
        e(rows[1], cols[0])
    )
}

fn certify(
    sys: &SectorSystem,
    assumption: &str,
    active: [u32; 2],
    target: u32,
    conclusion: &str,
) -> Result<Certificate> {
    let cols: Vec<u32> = (2..=4).filter(|&j| j != target).collect();
    let g = |i: u32, j: u32| sys.b[&(i, j)].clone();
    let minor = g(active[0], cols[0]) * g(active[1], cols[1])
        - g(active[0], cols[1]) * g(active[1], cols[0]);
    let expr = minor_name(&active, &cols);
    if minor.is_zero() {
        return Err(Error::DegenerateSystem(format!(
            "{}: minor {expr} vanishes under {assumption}",
            sys.name
        )));
    }
    let pos: Vec<usize> = active
        .iter()
        .map(|&i| sys.unknown_position(i).expect("active unknown"))
        .collect();
    let rows: Vec<Vec<CyclotomicNumber>> = sys
        .equations
        .iter()
        .filter(|e| e.label.1 == target)
        .map(|e| pos.iter().map(|&p| e.coeffs[p].clone()).collect())
        .collect();
    let restricted_rank = linalg::rank(&rows, pos.len());
    Ok(Certificate {
        assumption: assumption.to_string(),
        minor_expr: expr,
        minor,
        restricted_rank,
        active: pos.len(),
        conclusion: conclusion.to_string(),
    })
}

/// Solve a system exactly and replay its case analysis.
///
/// Fails with [`Error::DegenerateSystem`] if a minor the argument relies on
/// turns out to be zero.
pub fn solve_sector_system(sys: &SectorSystem) -> Result<SystemSolution> {
    let matrix = sys.matrix();
    let cols = sys.unknowns.len();
    let rank = linalg::rank(&matrix, cols);
    let sample = CyclotomicNumber::one(1);
    let basis = linalg::nullspace(&matrix, cols, &sample);
    let mut certificates = Vec::new();
    let mut residuals = Vec::new();
    match sys.name {
        SystemName::FiveAExistence => {
            certificates.push(certify(
                sys,
                "v = 0",
                [2, 4],
                2,
                "u = 0, contradicting u ≠ 0",
            )?);
            certificates.push(certify(
                sys,
                "w = 0",
                [2, 3],
                2,
                "u = 0, contradicting u ≠ 0",
            )?);
            for &(j, k) in &PAIR_ORDER {
                let sum = (2..=4).fold(CyclotomicNumber::zero(1), |acc, i| {
                    acc + &sys.b[&(i, j)] * &sys.b_tilde[&(i, k)]
                });
                residuals.push(Residual {
                    label: format!("Σ_i B{{i{j}}}·B̃{{i{k}}} - δ({j},{k})"),
                    value: sum - CyclotomicNumber::from_integer(1, delta(j, k)),
                });
            }
        }
        SystemName::FiveAUniqueness => {
            certificates.push(certify(sys, "1-μ² ≠ 0", [3, 4], 3, "1-μ² = 0")?);
            certificates.push(certify(sys, "1-γ² ≠ 0", [3, 4], 4, "1-γ² = 0")?);
        }
        SystemName::ThreeC => {
            // The argument rests on exactly this entry being nonzero.
            let entry = lemma_3c_entry()?;
            if entry != sys.b[&(2, 1)] {
                return Err(Error::DegenerateSystem(
                    "3C: system coefficient differs from (B22^22)_21".into(),
                ));
            }
            if entry.is_zero() {
                return Err(Error::DegenerateSystem("3C: (B22^22)_21 vanishes".into()));
            }
            certificates.push(Certificate {
                assumption: "1-λ² ≠ 0".into(),
                minor_expr: "B21".into(),
                minor: entry,
                restricted_rank: rank,
                active: 1,
                conclusion: "1-λ² = 0".into(),
            });
            for k in 1..=2 {
                residuals.push(Residual {
                    label: format!("B1{k} + B2{k} - 1"),
                    value: &sys.b[&(1, k)] + &sys.b[&(2, k)] - CyclotomicNumber::one(1),
                });
            }
        }
    }
    Ok(SystemSolution {
        system: sys.name,
        unknowns: sys.unknowns.iter().map(|u| u.name).collect(),
        rank,
        basis,
        certificates,
        residuals,
    })
}

/// Index of an irreducible module: 𝒰(i,j) with i,j ∈ {1,3,5} for 5A, or
/// 𝒰(2k) with 0 ≤ k ≤ 4 for 3C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleKey {
    FiveA(u32, u32),
    ThreeC(u32),
}

impl ModuleKey {
    pub fn all(alg: AlgebraName) -> Vec<ModuleKey> {
        match alg {
            AlgebraName::FiveA => [1, 3, 5]
                .iter()
                .flat_map(|&i| [1, 3, 5].map(|j| ModuleKey::FiveA(i, j)))
                .collect(),
            AlgebraName::ThreeC => (0..=4).map(|k| ModuleKey::ThreeC(2 * k)).collect(),
        }
    }

    pub fn algebra(&self) -> AlgebraName {
        match self {
            ModuleKey::FiveA(..) => AlgebraName::FiveA,
            ModuleKey::ThreeC(_) => AlgebraName::ThreeC,
        }
    }

    pub fn vacuum(alg: AlgebraName) -> ModuleKey {
        match alg {
            AlgebraName::FiveA => ModuleKey::FiveA(1, 1),
            AlgebraName::ThreeC => ModuleKey::ThreeC(0),
        }
    }

    /// Parse `i,j` (5A) or `k` (3C, the even index 2k).
    pub fn parse(alg: AlgebraName, s: &str) -> Result<ModuleKey> {
        let bad = || Error::Unknown {
            kind: "module key",
            name: s.to_string(),
        };
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let key = match alg {
            AlgebraName::FiveA => {
                let (a, b) = t.split_once(',').ok_or_else(bad)?;
                let i = a.trim().parse().map_err(|_| bad())?;
                let j = b.trim().parse().map_err(|_| bad())?;
                ModuleKey::FiveA(i, j)
            }
            AlgebraName::ThreeC => ModuleKey::ThreeC(t.parse().map_err(|_| bad())?),
        };
        key.validate()?;
        Ok(key)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ModuleKey::FiveA(i, j) => [1, 3, 5].contains(&i) && [1, 3, 5].contains(&j),
            ModuleKey::ThreeC(k) => k % 2 == 0 && k <= 8,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unknown {
                kind: "module key",
                name: self.to_string(),
            })
        }
    }
}

impl fmt::Display for ModuleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleKey::FiveA(i, j) => write!(f, "({i},{j})"),
            ModuleKey::ThreeC(k) => write!(f, "({k})"),
        }
    }
}

/// An irreducible module of the algebra as a list of tensor-product components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleModuleSpec {
    pub algebra: AlgebraName,
    pub key: ModuleKey,
    pub components: Vec<Vec<ModuleLabel>>,
}

impl IrreducibleModuleSpec {
    pub fn weights(&self) -> Vec<Vec<Rational>> {
        self.components
            .iter()
            .map(|c| c.iter().map(ModuleLabel::weight).collect())
            .collect()
    }
}

/// Weights of 𝒰(2), 𝒰(4), 𝒰(6), 𝒰(8) over (3,4) ⊗ (11,12).
const THREE_C_MODULES: [[(i64, i64, i64, i64); 6]; 4] = [
    [
        (0, 1, 13, 11),
        (0, 1, 35, 11),
        (1, 2, 15, 22),
        (1, 2, 301, 22),
        (1, 16, 21, 176),
        (1, 16, 901, 176),
    ],
    [
        (0, 1, 6, 11),
        (0, 1, 50, 11),
        (1, 2, 1, 22),
        (1, 2, 155, 22),
        (1, 16, 85, 176),
        (1, 16, 261, 176),
    ],
    [
        (0, 1, 1, 11),
        (0, 1, 111, 11),
        (1, 2, 35, 22),
        (1, 2, 57, 22),
        (1, 16, 5, 176),
        (1, 16, 533, 176),
    ],
    [
        (0, 1, 20, 11),
        (0, 1, 196, 11),
        (1, 2, 7, 22),
        (1, 2, 117, 22),
        (1, 16, 133, 176),
        (1, 16, 1365, 176),
    ],
];

/// Ising weight and the two (7,8) second indices (m = i, m = j) of each
/// 𝒰(i,j) component.
const FIVE_A_PATTERN: [((i64, i64), u32, u32); 12] = [
    ((0, 1), 1, 1),
    ((0, 1), 3, 5),
    ((0, 1), 5, 3),
    ((0, 1), 7, 7),
    ((1, 2), 1, 7),
    ((1, 2), 3, 3),
    ((1, 2), 5, 5),
    ((1, 2), 7, 1),
    ((1, 16), 2, 4),
    ((1, 16), 4, 2),
    ((1, 16), 6, 4),
    ((1, 16), 4, 6),
];

/// Component lists for one module; weights are validated against the Kac
/// table on the way in.
pub fn module_spec(key: ModuleKey) -> Result<IrreducibleModuleSpec> {
    key.validate()?;
    let alg = key.algebra();
    let f = factors(alg);
    let components = match key {
        ModuleKey::FiveA(i, j) => FIVE_A_PATTERN
            .iter()
            .map(|&((n, d), a, b)| {
                let x = f[1].label(i64::from(i), i64::from(a))?;
                let y = f[2].label(i64::from(j), i64::from(b))?;
                Ok(vec![f[0].label_with_weight(&ratio(n, d))?, x, y])
            })
            .collect::<Result<Vec<_>>>()?,
        ModuleKey::ThreeC(0) => build_algebra(alg)
            .sectors
            .into_iter()
            .map(|s| s.components)
            .collect(),
        ModuleKey::ThreeC(k) => THREE_C_MODULES[(k / 2 - 1) as usize]
            .iter()
            .map(|&(a, b, c, d)| labels_for(&f, &[(a, b), (c, d)]))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(IrreducibleModuleSpec {
        algebra: alg,
        key,
        components,
    })
}

/// All irreducible modules: nine for 5A, five for 3C.
pub fn irreducible_modules(alg: AlgebraName) -> Result<Vec<IrreducibleModuleSpec>> {
    ModuleKey::all(alg).into_iter().map(module_spec).collect()
}

fn same_algebra(alg: AlgebraName, keys: &[ModuleKey]) -> Result<()> {
    for k in keys {
        k.validate()?;
        if k.algebra() != alg {
            return Err(Error::Unknown {
                kind: "module key",
                name: format!("{k} for {alg}"),
            });
        }
    }
    Ok(())
}

/// dim of the space of intertwining operators of type (c over a, b).
pub fn fusion_dim(alg: AlgebraName, a: ModuleKey, b: ModuleKey, c: ModuleKey) -> Result<u32> {
    same_algebra(alg, &[a, b, c])?;
    let f = factors(alg);
    let adm = |m: &MinimalModel, x: u32, y: u32, z: u32| {
        u32::from(m.is_admissible((x, 1), (y, 1), (z, 1)))
    };
    Ok(match (a, b, c) {
        (ModuleKey::FiveA(i, j), ModuleKey::FiveA(i2, j2), ModuleKey::FiveA(i3, j3)) => {
            adm(&f[1], i, i2, i3) * adm(&f[1], j, j2, j3)
        }
        (ModuleKey::ThreeC(i), ModuleKey::ThreeC(j), ModuleKey::ThreeC(k)) => {
            adm(&f[1], i + 1, j + 1, k + 1)
        }
        _ => unreachable!("keys checked to share one algebra"),
    })
}

/// Fusion product of two irreducible modules as a map key → dim.
pub fn module_fusion(
    alg: AlgebraName,
    a: ModuleKey,
    b: ModuleKey,
) -> Result<BTreeMap<ModuleKey, u32>> {
    let mut out = BTreeMap::new();
    for c in ModuleKey::all(alg) {
        let d = fusion_dim(alg, a, b, c)?;
        if d > 0 {
            out.insert(c, d);
        }
    }
    Ok(out)
}

/// Quantum dimension of an irreducible module over the algebra.
pub fn qdim_module(alg: AlgebraName, key: ModuleKey) -> Result<QDim> {
    same_algebra(alg, &[key])?;
    let f = factors(alg);
    let labels = match key {
        ModuleKey::FiveA(i, j) => vec![f[1].label(i64::from(i), 1)?, f[1].label(i64::from(j), 1)?],
        ModuleKey::ThreeC(k) => vec![f[1].label(i64::from(k) + 1, 1)?],
    };
    Ok(qdim_tensor(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fuse_names(alg: &GradedAlgebra, a: &str, b: &str) -> Vec<String> {
        let p = sector_fusion(alg, alg.sector(a).unwrap(), alg.sector(b).unwrap()).unwrap();
        p.names(alg)
    }

    #[test]
    fn sector_weights() {
        let a = build_algebra(AlgebraName::FiveA);
        assert_eq!(a.sectors.len(), 12);
        assert_eq!(
            a.sector("U9").unwrap().weights,
            vec![ratio(1, 16), ratio(5, 32), ratio(57, 32)]
        );
        assert!(a.vacuum().is_vacuum());
        let c = build_algebra(AlgebraName::ThreeC);
        assert_eq!(
            c.sector("4").unwrap().weights,
            vec![ratio(1, 2), ratio(7, 2)]
        );
    }

    #[test]
    fn five_a_small_table() {
        let a = build_algebra(AlgebraName::FiveA);
        assert_eq!(fuse_names(&a, "U3", "U3"), ["U1", "U3", "U4"]);
        assert_eq!(fuse_names(&a, "U2", "U3"), ["U4"]);
        assert_eq!(fuse_names(&a, "U1", "U7"), ["U7"]);
    }

    #[test]
    fn chains_pass() {
        for name in AlgebraName::all() {
            let r = check_subalgebra_chain(&build_algebra(name)).unwrap();
            for c in &r.checks {
                assert!(c.passed, "{name}: {} ({})", c.name, c.detail);
            }
        }
    }

    #[test]
    fn systems_have_trivial_solutions() {
        let s = solve_sector_system(&build_sector_system(SystemName::ThreeC).unwrap()).unwrap();
        assert!(s.only_zero());
        assert_eq!(s.describe(), "{λ²=1}");
        let s = solve_sector_system(&build_sector_system(SystemName::FiveAUniqueness).unwrap())
            .unwrap();
        assert!(s.only_zero());
        assert!(s.certificates.iter().all(Certificate::forces_zero));
    }

    #[test]
    fn existence_certificates() {
        let s =
            solve_sector_system(&build_sector_system(SystemName::FiveAExistence).unwrap()).unwrap();
        assert_eq!(s.certificates.len(), 2);
        assert!(s.certificates.iter().all(Certificate::forces_zero));
        assert_eq!(s.residuals.len(), 9);
        assert_eq!(s.describe(), "(u, v, w) ∈ span{(2√2 - 3, 3 - 2√2, 1)}");
    }

    #[test]
    fn vacuum_module_is_algebra() {
        let alg = build_algebra(AlgebraName::FiveA);
        let spec = module_spec(ModuleKey::FiveA(1, 1)).unwrap();
        let mut got = spec.components.clone();
        let mut want: Vec<_> = alg.sectors.iter().map(|s| s.components.clone()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn three_c_fusion() {
        let alg = AlgebraName::ThreeC;
        let got: Vec<_> = module_fusion(alg, ModuleKey::ThreeC(2), ModuleKey::ThreeC(2))
            .unwrap()
            .into_keys()
            .collect();
        assert_eq!(got, [0, 2, 4].map(ModuleKey::ThreeC));
    }

    #[test]
    fn keys_parse() {
        assert_eq!(
            ModuleKey::parse(AlgebraName::FiveA, "3,5").unwrap(),
            ModuleKey::FiveA(3, 5)
        );
        assert_eq!(
            ModuleKey::parse(AlgebraName::ThreeC, "6").unwrap(),
            ModuleKey::ThreeC(6)
        );
        assert!(ModuleKey::parse(AlgebraName::FiveA, "2,1").is_err());
        assert!(ModuleKey::parse(AlgebraName::ThreeC, "3").is_err());
        assert_eq!("5a".parse::<AlgebraName>().unwrap(), AlgebraName::FiveA);
    }
}
