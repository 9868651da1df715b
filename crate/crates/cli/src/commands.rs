//! Command implementations. Each returns a [`Report`]; argument problems are
//! [`UsageError`]s, while failed verifications are reported as `fail` checks.

use std::collections::BTreeMap;

use minimal_fusion::exact_arith::{radical_string, ratio, zeta, CyclotomicNumber, Rational};
use minimal_fusion::ffk_braiding::{
    b2222, lemma_3c_entry, lemma_5a_combos, p_label, u_label, FfkBraiding, Variant,
};
use minimal_fusion::minimal_model::{qdim_tensor, MinimalModel, ModuleLabel};
use minimal_fusion::voa_algebra::{
    build_algebra, build_sector_system, check_subalgebra_chain, module_fusion, module_spec,
    qdim_module, solve_sector_system, AlgebraName, ModuleKey, SystemName,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::report::{Check, Report};

/// Bad arguments; the binary exits with status 2.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl From<minimal_fusion::Error> for UsageError {
    fn from(e: minimal_fusion::Error) -> Self {
        UsageError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, UsageError>;

/// Options shared by all commands.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    /// Bits of precision for the complex embedding.
    pub precision: u32,
    /// Corrupt every expected value so that all gated checks fail.
    pub inject_failure: bool,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            precision: 53,
            inject_failure: false,
        }
    }
}

impl Ctx {
    fn verdict(&self, name: impl Into<String>, ok: bool) -> Check {
        Check::verdict(name, ok != self.inject_failure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Lemma5a,
    Lemma3c,
    Uniqueness5a,
    Uniqueness3c,
    Chains5a,
    Chains3c,
    Fusion5a,
    Fusion3c,
    All,
}

impl Target {
    pub const EACH: [Target; 8] = [
        Target::Lemma5a,
        Target::Lemma3c,
        Target::Uniqueness5a,
        Target::Uniqueness3c,
        Target::Chains5a,
        Target::Chains3c,
        Target::Fusion5a,
        Target::Fusion3c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Lemma5a => "lemma-5a",
            Target::Lemma3c => "lemma-3c",
            Target::Uniqueness5a => "uniqueness-5a",
            Target::Uniqueness3c => "uniqueness-3c",
            Target::Chains5a => "chains-5a",
            Target::Chains3c => "chains-3c",
            Target::Fusion5a => "fusion-5a",
            Target::Fusion3c => "fusion-3c",
            Target::All => "all",
        }
    }
}

fn model(p: u32, q: u32) -> Result<MinimalModel> {
    Ok(MinimalModel::new(p, q)?)
}

/// Integers separated by commas, semicolons or whitespace; parentheses ignored.
fn integers(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .map(|t| t.trim_matches(|c| c == '(' || c == ')'))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| UsageError(format!("expected an integer, got {t:?} in {s:?}")))
        })
        .collect()
}

fn label(model: &MinimalModel, s: &str) -> Result<ModuleLabel> {
    match integers(s)?[..] {
        [m, n] => Ok(model.label(m, n)?),
        _ => Err(UsageError(format!("label {s:?} must be m,n"))),
    }
}

/// Labels given either as Kac pairs or, in the (7,8) and (11,12) models, as
/// the P- and U-indices used for the lemma matrices.
fn labels(model: &MinimalModel, s: &str, count: usize) -> Result<Vec<ModuleLabel>> {
    let xs = integers(s)?;
    if xs.len() == 2 * count {
        return xs.chunks(2).map(|c| Ok(model.label(c[0], c[1])?)).collect();
    }
    if xs.len() != count {
        return Err(UsageError(format!(
            "{s:?}: expected {count} indices or {count} Kac pairs m,n"
        )));
    }
    let index: fn(u32) -> minimal_fusion::Result<ModuleLabel> = match (model.p(), model.q()) {
        (7, 8) => p_label,
        (11, 12) => u_label,
        _ => {
            return Err(UsageError(format!(
                "bare indices only name modules of (7,8) and (11,12); give Kac pairs for {model}"
            )))
        }
    };
    xs.iter()
        .map(|&k| {
            let k = u32::try_from(k).map_err(|_| UsageError(format!("bad index {k}")))?;
            Ok(index(k)?)
        })
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn weights_of(ls: &[ModuleLabel]) -> String {
    format!("[{}]", join(ls.iter().map(ModuleLabel::weight)))
}

pub fn info(ctx: &Ctx, p: u32, q: u32) -> Result<Report> {
    let m = model(p, q)?;
    let labels = m.list_labels();
    let mut checks = vec![
        Check::info("c").rational(&m.central_charge(), ctx.precision),
        Check::info("modules").detail(labels.len().to_string()),
    ];
    for l in &labels {
        checks.push(
            Check::info(l.to_string())
                .value(&l.qdim().exact, ctx.precision)
                .detail(format!("h = {}", l.weight())),
        );
    }
    Ok(Report::new(format!("info {m}"), checks))
}

pub fn qdim(ctx: &Ctx, p: u32, q: u32, l: &str) -> Result<Report> {
    let m = model(p, q)?;
    let l = label(&m, l)?;
    let check = Check::info(format!("qdim {l}"))
        .value(&l.qdim().exact, ctx.precision)
        .detail(format!("h = {}", l.weight()));
    Ok(Report::new(format!("qdim {m} {l}"), vec![check]))
}

pub fn fusion(ctx: &Ctx, p: u32, q: u32, a: &str, b: &str) -> Result<Report> {
    let m = model(p, q)?;
    let (a, b) = (label(&m, a)?, label(&m, b)?);
    let prod = m.fuse(&a, &b)?;
    let mut checks =
        vec![Check::info(format!("{a} ⊠ {b}")).detail(format!("{{{}}}", join(prod.labels())))];
    for (c, n) in prod.iter() {
        checks.push(
            Check::info(c.to_string())
                .value(&c.qdim().exact, ctx.precision)
                .detail(format!("N = {n}, h = {}", c.weight())),
        );
    }
    Ok(Report::new(format!("fusion {m} {a} {b}"), checks))
}

pub fn braid(ctx: &Ctx, p: u32, q: u32, ext: &str, entry: Option<&str>) -> Result<Report> {
    let m = model(p, q)?;
    let ffk = FfkBraiding::new(m)?;
    let e = labels(&m, ext, 4)?;
    let bm = ffk.braid_matrix([e[0], e[1], e[2], e[3]])?;
    let name = format!("B[{}]", join(&e));
    let mut checks = vec![];
    if let Some(s) = entry {
        let ij = labels(&m, s, 2)?;
        let x = bm.entry(&ij[0], &ij[1]);
        let allowed = bm.rows.contains(&ij[0]) && bm.cols.contains(&ij[1]);
        let note = if allowed {
            ""
        } else {
            "not an allowed intermediate pair"
        };
        checks.push(
            Check::info(format!("{name}({},{})", ij[0], ij[1]))
                .value(&x, ctx.precision)
                .detail(note),
        );
    } else {
        checks.push(Check::info("rows").detail(join(&bm.rows)));
        checks.push(Check::info("cols").detail(join(&bm.cols)));
        for (mu, row) in bm.rows.iter().zip(&bm.entries) {
            for (gamma, x) in bm.cols.iter().zip(row) {
                checks.push(Check::info(format!("{name}({mu},{gamma})")).value(x, ctx.precision));
            }
        }
    }
    Ok(Report::new(format!("braid {m} {}", join(&e)), checks))
}

pub fn decompose(ctx: &Ctx, alg: &str, key: Option<&str>) -> Result<Report> {
    let name: AlgebraName = alg.parse()?;
    let key = match key {
        Some(s) => ModuleKey::parse(name, s)?,
        None => ModuleKey::vacuum(name),
    };
    let alg = build_algebra(name);
    let spec = module_spec(key)?;
    // Components that are sectors come first, in sector order.
    let mut rows: Vec<_> = spec.components.iter().enumerate().collect();
    rows.sort_by_key(|(_, comp)| alg.position(comp).unwrap_or(usize::MAX));
    let checks = rows
        .into_iter()
        .map(|(k, comp)| {
            let row = match alg.position(comp) {
                Some(i) => alg.sectors[i].name.clone(),
                None => format!("{key}#{}", k + 1),
            };
            Check::info(row)
                .value(&qdim_tensor(comp).exact, ctx.precision)
                .detail(weights_of(comp))
        })
        .collect();
    let command = if key == ModuleKey::vacuum(name) {
        format!("decompose {name}")
    } else {
        format!("decompose {name} --module {key}")
    };
    Ok(Report::new(command, checks))
}

pub fn verify(ctx: &Ctx, target: Target) -> Report {
    let checks = match target {
        Target::All => Target::EACH
            .par_iter()
            .map(|&t| {
                verify_one(ctx, t)
                    .into_iter()
                    .map(|mut c| {
                        c.name = format!("{}: {}", t.name(), c.name);
                        c
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .concat(),
        t => verify_one(ctx, t),
    };
    Report::new(format!("verify {}", target.name()), checks)
}

fn verify_one(ctx: &Ctx, target: Target) -> Vec<Check> {
    let run = match target {
        Target::Lemma5a => lemma_5a(ctx),
        Target::Lemma3c => lemma_3c(ctx),
        Target::Uniqueness5a => uniqueness_5a(ctx),
        Target::Uniqueness3c => uniqueness_3c(ctx),
        Target::Chains5a => chains(ctx, AlgebraName::FiveA),
        Target::Chains3c => chains(ctx, AlgebraName::ThreeC),
        Target::Fusion5a => fusion_theorem(ctx, AlgebraName::FiveA),
        Target::Fusion3c => fusion_theorem(ctx, AlgebraName::ThreeC),
        Target::All => unreachable!("expanded by verify"),
    };
    run.unwrap_or_else(|e| vec![Check::verdict("pipeline", false).detail(e.to_string())])
}

fn int(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(1, n)
}

fn sqrt2() -> CyclotomicNumber {
    zeta(8, 1) + zeta(8, 7)
}

fn sqrt3() -> CyclotomicNumber {
    zeta(12, 1) + zeta(12, 11)
}

fn show(x: &CyclotomicNumber) -> String {
    radical_string(x).unwrap_or_else(|| x.to_string())
}

fn equality(ctx: &Ctx, name: &str, got: &CyclotomicNumber, want: &CyclotomicNumber) -> Check {
    ctx.verdict(name, got == want)
        .value(got, ctx.precision)
        .detail(format!("expected {}", show(want)))
}

fn nonzero(ctx: &Ctx, name: &str, x: &CyclotomicNumber) -> Check {
    ctx.verdict(name, !x.is_zero()).value(x, ctx.precision)
}

fn lemma_5a(ctx: &Ctx) -> minimal_fusion::Result<Vec<Check>> {
    let c = lemma_5a_combos()?;
    let i = zeta(4, 1);
    let half = ratio(1, 2);
    let s2 = sqrt2();
    let y_inv = zeta(8, 1);
    let documented =
        (&s2 - int(1)).scale(&half) + (int(3) - s2.scale(&ratio(2, 1))).scale(&half) * &i;
    Ok(vec![
        nonzero(ctx, "B44·B23 - B43·B24 ≠ 0", &c.first),
        nonzero(ctx, "B32·B44 - B42·B34 ≠ 0", &c.second),
        ctx.verdict(
            "values in Q(ζ224)",
            c.first.order() == 224 && c.second.order() == 224,
        ),
        equality(
            ctx,
            "B44·B23 - B43·B24 = documented value",
            &c.first,
            &documented,
        ),
        equality(ctx, "B32·B44 - B42·B34 = 1 + i", &c.second, &(int(1) + &i)),
        equality(
            ctx,
            "B32·B44 = y⁻¹(√2 - 1)",
            &c.b32_b44,
            &(&y_inv * (&s2 - int(1))),
        ),
        equality(ctx, "B42·B34 = -y⁻¹", &c.b42_b34, &-&y_inv),
    ])
}

fn lemma_3c(ctx: &Ctx) -> minimal_fusion::Result<Vec<Check>> {
    let entry = lemma_3c_entry()?;
    let ffk = FfkBraiding::new(MinimalModel::new(11, 12)?)?;
    let br = |l: i64| ffk.bracket(Variant::Primed, l);
    let div = |a: CyclotomicNumber, b: CyclotomicNumber| a.checked_div(&b);
    let product = ffk.root_power(Variant::Primed, 24)
        * div(br(1).pow(3)?, br(2).pow(3)?)?
        * div(br(1) + br(3), br(3))?
        * div(br(10) * br(9) * br(8), br(7) * br(6) * br(5))?
        * div(br(3) * br(4) + br(1) * br(4) + br(1) * br(2), br(3) * br(4))?;
    let closed = (int(5) - sqrt3().scale(&ratio(3, 1))).scale(&ratio(1, 2));
    let det = b2222(&ffk)?.determinant();
    Ok(vec![
        nonzero(ctx, "(B2222)21 ≠ 0", &entry),
        equality(ctx, "(B2222)21 = bracket product", &entry, &product),
        equality(ctx, "(B2222)21 = (5 - 3√3)/2", &entry, &closed),
        ctx.verdict("B2222 invertible", det.is_some_and(|d| !d.is_zero())),
    ])
}

fn system_checks(
    ctx: &Ctx,
    name: SystemName,
    expected: Option<&str>,
) -> minimal_fusion::Result<Vec<Check>> {
    let sol = solve_sector_system(&build_sector_system(name)?)?;
    let mut out = vec![Check::info(format!("{name} rank")).detail(format!(
        "{} of {} unknowns",
        sol.rank,
        sol.unknowns.len()
    ))];
    let set = sol.describe();
    out.push(match expected {
        Some(want) => ctx
            .verdict(format!("{name} solution set"), set == want)
            .detail(set),
        None => Check::info(format!("{name} solution set")).detail(set),
    });
    for cert in &sol.certificates {
        out.push(
            ctx.verdict(
                format!("{name} certificate: {}", cert.assumption),
                cert.forces_zero(),
            )
            .value(&cert.minor, ctx.precision)
            .detail(format!(
                "{} ≠ 0, restricted rank {}/{} ⇒ {}",
                cert.minor_expr, cert.restricted_rank, cert.active, cert.conclusion
            )),
        );
    }
    for r in &sol.residuals {
        out.push(
            Check::info(format!("{name} residual {}", r.label)).value(&r.value, ctx.precision),
        );
    }
    Ok(out)
}

fn uniqueness_5a(ctx: &Ctx) -> minimal_fusion::Result<Vec<Check>> {
    let mut out = system_checks(
        ctx,
        SystemName::FiveAUniqueness,
        Some("{(1-μ², 1-γ²) = (0, 0)}"),
    )?;
    let existence = system_checks(ctx, SystemName::FiveAExistence, None)?;
    let certified = existence.iter().any(|c| c.name.contains("certificate"));
    out.extend(existence);
    out.push(ctx.verdict("5A-existence contradiction certificate produced", certified));
    Ok(out)
}

fn uniqueness_3c(ctx: &Ctx) -> minimal_fusion::Result<Vec<Check>> {
    let mut out = system_checks(ctx, SystemName::ThreeC, Some("{λ²=1}"))?;
    out.push(nonzero(ctx, "(B2222)21 ≠ 0", &lemma_3c_entry()?));
    Ok(out)
}

fn chains(ctx: &Ctx, name: AlgebraName) -> minimal_fusion::Result<Vec<Check>> {
    let report = check_subalgebra_chain(&build_algebra(name))?;
    Ok(report
        .checks
        .iter()
        .map(|c| {
            let check = ctx
                .verdict(c.name.clone(), c.passed)
                .detail(c.detail.clone());
            match &c.exact {
                Some(x) => check.value(x, ctx.precision),
                None => check,
            }
        })
        .collect())
}

fn fusion_theorem(ctx: &Ctx, name: AlgebraName) -> minimal_fusion::Result<Vec<Check>> {
    let keys = ModuleKey::all(name);
    let n = keys.len();
    let mut table = vec![vec![vec![0u32; n]; n]; n];
    let mut out = vec![];
    for (a, &ka) in keys.iter().enumerate() {
        for (b, &kb) in keys.iter().enumerate() {
            let prod: BTreeMap<ModuleKey, u32> = module_fusion(name, ka, kb)?;
            for (kc, d) in &prod {
                let c = keys.iter().position(|k| k == kc).expect("known key");
                table[a][b][c] = *d;
            }
            if a <= b {
                let terms = prod.iter().map(|(k, d)| {
                    if *d == 1 {
                        k.to_string()
                    } else {
                        format!("{d}·{k}")
                    }
                });
                out.push(Check::info(format!("𝒰{ka} ⊠ 𝒰{kb}")).detail(join(terms)));
            }
        }
    }
    let vac = keys
        .iter()
        .position(|&k| k == ModuleKey::vacuum(name))
        .expect("vacuum key");
    let unit = (0..n).all(|a| (0..n).all(|c| table[vac][a][c] == u32::from(a == c)));
    let comm = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
    let assoc = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                (0..n).all(|d| {
                    let l: u32 = (0..n).map(|e| table[a][b][e] * table[e][c][d]).sum();
                    let r: u32 = (0..n).map(|f| table[b][c][f] * table[a][f][d]).sum();
                    l == r
                })
            })
        })
    });
    let qd = keys
        .iter()
        .map(|&k| qdim_module(name, k).map(|q| q.exact))
        .collect::<minimal_fusion::Result<Vec<_>>>()?;
    let mut multiplicative = true;
    for a in 0..n {
        for b in 0..n {
            let rhs = (0..n).fold(CyclotomicNumber::zero(1), |acc, c| {
                acc + qd[c].scale(&Rational::from_integer(table[a][b][c].into()))
            });
            multiplicative &= &qd[a] * &qd[b] == rhs;
        }
    }
    let mut checks = vec![
        ctx.verdict("vacuum module is the unit", unit),
        ctx.verdict("commutative", comm),
        ctx.verdict("associative", assoc),
        ctx.verdict("qdim is multiplicative", multiplicative),
    ];
    checks.extend(out);
    Ok(checks)
}
