//! Virasoro minimal models L(c_{p,q}, 0): central charges, conformal weights,
//! Kac labels, admissible triples, fusion products and quantum dimensions.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{zeta, ComplexApprox, CyclotomicNumber, Rational};

/// The minimal model with parameters (p, q): gcd(p,q) = 1, p ≠ q, both ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalModel {
    p: u32,
    q: u32,
}

/// A Kac label (m, n), stored as the lexicographically smaller of (m, n) and
/// (p − m, q − n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel {
    model: MinimalModel,
    m: u32,
    n: u32,
}

/// Result of a fusion product: canonical labels with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMultiset {
    model: MinimalModel,
    entries: BTreeMap<ModuleLabel, u32>,
}

/// A quantum dimension, exact and embedded.
#[derive(Clone, Debug, PartialEq)]
pub struct QDim {
    pub exact: CyclotomicNumber,
    pub approx: ComplexApprox,
}

impl MinimalModel {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        let reason = if p < 2 || q < 2 {
            Some("p and q must be at least 2")
        } else if p == q {
            Some("p and q must differ")
        } else if p.gcd(&q) != 1 {
            Some("p and q must be coprime")
        } else {
            None
        };
        match reason {
            Some(r) => Err(Error::InvalidModel {
                p,
                q,
                reason: r.to_string(),
            }),
            None => Ok(MinimalModel { p, q }),
        }
    }

    /// The unitary model (p, p+1).
    pub fn unitary(p: u32) -> Result<Self> {
        Self::new(p, p + 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_unitary(&self) -> bool {
        self.q == self.p + 1
    }

    /// c = 1 − 6(p − q)²/(pq).
    pub fn central_charge(&self) -> Rational {
        let (p, q) = (i64::from(self.p), i64::from(self.q));
        Rational::from_integer(1.into())
            - Rational::new((6 * (p - q) * (p - q)).into(), (p * q).into())
    }

    pub fn label(&self, m: i64, n: i64) -> Result<ModuleLabel> {
        let (p, q) = (i64::from(self.p), i64::from(self.q));
        if !(0 < m && m < p && 0 < n && n < q) {
            return Err(Error::InvalidLabel {
                m,
                n,
                p: self.p,
                q: self.q,
            });
        }
        let (m, n) = (m as u32, n as u32);
        let (m, n) = (m, n).min((self.p - m, self.q - n));
        Ok(ModuleLabel { model: *self, m, n })
    }

    pub fn vacuum(&self) -> ModuleLabel {
        self.label(1, 1).expect("(1,1) is always in range")
    }

    /// All (p−1)(q−1)/2 canonical labels, sorted by (h, m, n).
    pub fn list_labels(&self) -> Vec<ModuleLabel> {
        let mut out: Vec<ModuleLabel> = (1..self.p)
            .flat_map(|m| (1..self.q).map(move |n| (m, n)))
            .filter_map(|(m, n)| {
                let l = self.label(i64::from(m), i64::from(n)).ok()?;
                (l.m == m && l.n == n).then_some(l)
            })
            .collect();
        out.sort_by_cached_key(|l| (l.weight(), l.m, l.n));
        out
    }

    /// The unique canonical label with conformal weight `h`.
    pub fn label_with_weight(&self, h: &Rational) -> Result<ModuleLabel> {
        let mut found = self.list_labels().into_iter().filter(|l| &l.weight() == h);
        match (found.next(), found.next()) {
            (Some(l), None) => Ok(l),
            (Some(_), Some(_)) => Err(Error::ConventionMismatch(format!(
                "weight {h} is shared by several labels of ({},{})",
                self.p, self.q
            ))),
            _ => Err(Error::UnknownWeight {
                weight: h.to_string(),
                p: self.p,
                q: self.q,
            }),
        }
    }

    fn in_range(&self, (m, n): (u32, u32)) -> bool {
        0 < m && m < self.p && 0 < n && n < self.q
    }

    /// Admissibility of a triple of raw pairs, honouring the identification
    /// (m,n) ~ (p−m, q−n) in every slot.
    pub fn is_admissible(&self, t1: (u32, u32), t2: (u32, u32), t3: (u32, u32)) -> bool {
        if ![t1, t2, t3].iter().all(|&t| self.in_range(t)) {
            return false;
        }
        let reps = |(m, n): (u32, u32)| [(m, n), (self.p - m, self.q - n)];
        reps(t1).iter().any(|&a| {
            reps(t2)
                .iter()
                .any(|&b| reps(t3).iter().any(|&c| self.admissible_rep(a, b, c)))
        })
    }

    fn admissible_rep(&self, a: (u32, u32), b: (u32, u32), c: (u32, u32)) -> bool {
        let side = |x: u32, y: u32, z: u32, bound: u32| {
            x < y + z && y < x + z && z < x + y && x + y + z < 2 * bound && (x + y + z) % 2 == 1
        };
        side(a.0, b.0, c.0, self.p) && side(a.1, b.1, c.1, self.q)
    }

    /// N_{a,b}^c ∈ {0, 1}.
    pub fn fusion_coefficient(&self, a: &ModuleLabel, b: &ModuleLabel, c: &ModuleLabel) -> u32 {
        u32::from(self.is_admissible(a.pair(), b.pair(), c.pair()))
    }

    pub fn fuse(&self, a: &ModuleLabel, b: &ModuleLabel) -> Result<FusionMultiset> {
        for l in [a, b] {
            if l.model != *self {
                return Err(Error::ModelMismatch(self.p, self.q, l.model.p, l.model.q));
            }
        }
        let entries = self
            .list_labels()
            .into_iter()
            .filter(|c| self.fusion_coefficient(a, b, c) == 1)
            .map(|c| (c, 1))
            .collect();
        Ok(FusionMultiset {
            model: *self,
            entries,
        })
    }

    /// Cyclotomic order in which quantum dimensions are expressed.
    pub fn qdim_order(&self) -> u32 {
        2 * self.p * self.q
    }
}

impl fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl ModuleLabel {
    pub fn model(&self) -> MinimalModel {
        self.model
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pair(&self) -> (u32, u32) {
        (self.m, self.n)
    }

    /// The other Kac representative (p − m, q − n).
    pub fn partner(&self) -> (u32, u32) {
        (self.model.p - self.m, self.model.q - self.n)
    }

    pub fn is_vacuum(&self) -> bool {
        (self.m, self.n) == (1, 1)
    }

    /// h_{m,n} = ((np − mq)² − (p − q)²)/(4pq).
    pub fn weight(&self) -> Rational {
        kac_weight(self.model.p, self.model.q, self.m, self.n)
    }

    /// The FFK pair (i', i) with i' on the p' = q side: (n, m).
    pub fn ffk_pair(&self) -> Result<(u32, u32)> {
        let (p, q) = (self.model.p, self.model.q);
        if !self.model.is_unitary() {
            return Err(Error::NonUnitaryModel { p, q });
        }
        let (ip, i) = (self.n, self.m);
        // h^{(p)}_{(i',i)} = ((i'p − i p')² − 1)/(4pp') must agree with h_{m,n}.
        let d = i64::from(ip) * i64::from(p) - i64::from(i) * i64::from(q);
        let ffk = Rational::new((d * d - 1).into(), (4 * i64::from(p) * i64::from(q)).into());
        if ffk != self.weight() {
            return Err(Error::ConventionMismatch(format!(
                "label {self} of {}: h = {} but FFK pair ({ip},{i}) gives {ffk}",
                self.model,
                self.weight()
            )));
        }
        Ok((ip, i))
    }

    /// Quantum dimension |sin(πqm/p)·sin(πpn/q)| / (sin(πq/p)·sin(πp/q)).
    pub fn qdim(&self) -> QDim {
        let (p, q) = (self.model.p, self.model.q);
        let order = self.model.qdim_order();
        // sin(kθ)/sin(θ) = [k]_t with t = e^{iθ}; here θ = πq/p and πp/q.
        let a = quantum_integer(order, self.m, i64::from(q * q));
        let b = quantum_integer(order, self.n, i64::from(p * p));
        QDim::positive(a * b)
    }
}

/// [k]_t = t^{k−1} + t^{k−3} + … + t^{1−k} for t = ζ_order^step.
fn quantum_integer(order: u32, k: u32, step: i64) -> CyclotomicNumber {
    let k = i64::from(k);
    (0..k).fold(CyclotomicNumber::zero(order), |acc, j| {
        acc + zeta(order, step * (k - 1 - 2 * j))
    })
}

pub(crate) fn kac_weight(p: u32, q: u32, m: u32, n: u32) -> Rational {
    let (p, q, m, n) = (i64::from(p), i64::from(q), i64::from(m), i64::from(n));
    let d = n * p - m * q;
    Rational::new((d * d - (p - q) * (p - q)).into(), (4 * p * q).into())
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl QDim {
    /// Wrap a real value, flipping its sign if the embedding is negative.
    pub fn positive(x: CyclotomicNumber) -> Self {
        let approx = x.approx();
        if approx.re < 0.0 {
            let x = -x;
            let approx = x.approx();
            QDim { exact: x, approx }
        } else {
            QDim { exact: x, approx }
        }
    }

    pub fn value(&self) -> f64 {
        self.approx.re
    }
}

/// Product of the quantum dimensions of the given labels (any models).
pub fn qdim_tensor(labels: &[ModuleLabel]) -> QDim {
    let exact = labels
        .iter()
        .map(|l| l.qdim().exact)
        .fold(CyclotomicNumber::one(1), |acc, x| acc * x);
    QDim::positive(exact)
}

impl FusionMultiset {
    pub fn model(&self) -> MinimalModel {
        self.model
    }

    pub fn multiplicity(&self, l: &ModuleLabel) -> u32 {
        self.entries.get(l).copied().unwrap_or(0)
    }

    pub fn contains(&self, l: &ModuleLabel) -> bool {
        self.entries.contains_key(l)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModuleLabel, &u32)> {
        self.entries.iter()
    }

    pub fn labels(&self) -> Vec<ModuleLabel> {
        self.entries.keys().copied().collect()
    }
}

impl fmt::Display for FusionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (l, mult)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if *mult == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{mult}{l}")?;
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;

    fn m78() -> MinimalModel {
        MinimalModel::new(7, 8).unwrap()
    }

    #[test]
    fn central_charges() {
        assert_eq!(m78().central_charge(), ratio(25, 28));
        assert_eq!(
            MinimalModel::new(11, 12).unwrap().central_charge(),
            ratio(21, 22)
        );
        assert_eq!(
            MinimalModel::new(3, 4).unwrap().central_charge(),
            ratio(1, 2)
        );
        assert_eq!(
            MinimalModel::new(2, 3).unwrap().central_charge(),
            ratio(0, 1)
        );
    }

    #[test]
    fn invalid_models() {
        assert!(MinimalModel::new(4, 6).is_err());
        assert!(MinimalModel::new(1, 2).is_err());
        assert!(MinimalModel::new(5, 5).is_err());
    }

    #[test]
    fn weights() {
        let m = m78();
        assert_eq!(m.label(1, 3).unwrap().weight(), ratio(3, 4));
        assert_eq!(m.label(1, 7).unwrap().weight(), ratio(15, 2));
        assert_eq!(m.label(1, 5).unwrap().weight(), ratio(13, 4));
        let m12 = MinimalModel::new(11, 12).unwrap();
        assert_eq!(m12.label(1, 7).unwrap().weight(), ratio(8, 1));
    }

    #[test]
    fn canonical_form() {
        let m = m78();
        let a = m.label(6, 5).unwrap();
        assert_eq!(a.pair(), (1, 3));
        assert_eq!(a, m.label(1, 3).unwrap());
        assert!(m.label(0, 3).is_err());
        assert!(m.label(7, 1).is_err());
    }

    #[test]
    fn ffk_pairs() {
        let m = m78();
        assert_eq!(m.label(1, 3).unwrap().ffk_pair().unwrap(), (3, 1));
        assert_eq!(m.vacuum().ffk_pair().unwrap(), (1, 1));
        let m12 = MinimalModel::new(11, 12).unwrap();
        assert_eq!(m12.label(1, 7).unwrap().ffk_pair().unwrap(), (7, 1));
        let m25 = MinimalModel::new(2, 5).unwrap();
        assert!(matches!(
            m25.vacuum().ffk_pair(),
            Err(Error::NonUnitaryModel { .. })
        ));
    }

    #[test]
    fn admissibility() {
        let m = m78();
        assert!(m.is_admissible((1, 3), (1, 3), (1, 5)));
        assert!(!m.is_admissible((1, 3), (1, 3), (1, 7)));
        for l in m.list_labels() {
            assert!(m.is_admissible((1, 1), l.pair(), l.pair()));
            assert!(m.is_admissible((1, 1), l.pair(), l.partner()));
        }
    }

    #[test]
    fn fusion_of_p3() {
        let m = m78();
        let p3 = m.label(1, 3).unwrap();
        let prod = m.fuse(&p3, &p3).unwrap();
        let expect: Vec<_> = [(1, 1), (1, 3), (1, 5)]
            .iter()
            .map(|&(a, b)| m.label(a, b).unwrap())
            .collect();
        assert_eq!(prod.labels(), expect);
        let p2 = m.label(1, 7).unwrap();
        assert_eq!(m.fuse(&p2, &p2).unwrap().labels(), vec![m.vacuum()]);
    }

    #[test]
    fn fusion_model_mismatch() {
        let a = m78().vacuum();
        let b = MinimalModel::new(3, 4).unwrap().vacuum();
        assert!(matches!(m78().fuse(&a, &b), Err(Error::ModelMismatch(..))));
    }

    #[test]
    fn label_counts() {
        assert_eq!(MinimalModel::new(3, 4).unwrap().list_labels().len(), 3);
        assert_eq!(m78().list_labels().len(), 21);
        assert_eq!(MinimalModel::new(2, 3).unwrap().list_labels().len(), 1);
        let ws: Vec<_> = MinimalModel::new(3, 4)
            .unwrap()
            .list_labels()
            .iter()
            .map(|l| l.weight())
            .collect();
        assert_eq!(ws, vec![ratio(0, 1), ratio(1, 16), ratio(1, 2)]);
    }

    #[test]
    fn quantum_dimensions() {
        let q = m78().label(1, 3).unwrap().qdim();
        assert!((q.value() - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        let q = MinimalModel::new(11, 12)
            .unwrap()
            .label(1, 7)
            .unwrap()
            .qdim();
        assert!((q.value() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        let q = MinimalModel::new(3, 4).unwrap().label(2, 2).unwrap().qdim();
        assert!((q.value() - 2f64.sqrt()).abs() < 1e-12);
        assert!(m78().vacuum().qdim().exact.is_one());
    }

    #[test]
    fn weight_lookup() {
        let m = m78();
        assert_eq!(m.label_with_weight(&ratio(13, 4)).unwrap().pair(), (1, 5));
        assert!(m.label_with_weight(&ratio(1, 3)).is_err());
    }
}
