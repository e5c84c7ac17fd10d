//! Component-by-component verification of the defining relations of the
//! algebra on finite basis windows of any module family.
//!
//! Every relation instance is an exact statement: a weighted sum of
//! generator words annihilates a basis vector, with coefficients compared
//! symbolically (rational-function equality, never numerics). The optional
//! numeric mode substitutes multiplicatively independent rationals as a fast
//! prescreen; any numeric failure is re-run symbolically before being
//! reported.

use crate::coeff::{g11, sigma1, sigma2, Monomial, Rat, Scalar, Var};
use crate::partition::{partitions_up_to, tailed_up_to, zvalued_tuples, TailSpec, TailedPartition};
use crate::reps::{
    apply_word, FockModule, Gen, Module, RepsError, ResonanceModule, SeriesCache, StateVector,
    TensorModule, VectorModule, WnModule,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

/// The structure constants of the relations: σ₁ = q₁+q₂+q₃,
/// σ₂ = q₁⁻¹+q₂⁻¹+q₃⁻¹, g(1,1) = (1−q₁)(1−q₂)(1−q₃).
#[derive(Clone, Debug)]
pub struct RelationConstants {
    pub sigma1: Scalar,
    pub sigma2: Scalar,
    pub g11: Scalar,
}

impl RelationConstants {
    pub fn new() -> Self {
        RelationConstants {
            sigma1: sigma1(),
            sigma2: sigma2(),
            g11: g11(),
        }
    }

    /// The constants under the resonance specialization (the resonance
    /// module coefficients live over ℚ(p, u)).
    pub fn resonance(res: &crate::coeff::Resonance) -> Self {
        let base = Self::new();
        let map = |s: &Scalar| res.specialize_scalar(s).expect("constants stay finite");
        RelationConstants {
            sigma1: map(&base.sigma1),
            sigma2: map(&base.sigma2),
            g11: map(&base.g11),
        }
    }
}

impl Default for RelationConstants {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

/// Structured pass/fail record of a verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: serde_json::Value,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    pub seconds: f64,
}

impl Report {
    pub fn from_cases(suite: &str, params: serde_json::Value, cases: Vec<CaseResult>) -> Self {
        let summary = Summary {
            pass: cases.iter().filter(|c| c.status == Status::Pass).count(),
            fail: cases.iter().filter(|c| c.status == Status::Fail).count(),
            error: cases.iter().filter(|c| c.status == Status::Error).count(),
        };
        Report {
            suite: suite.to_string(),
            params,
            cases,
            summary,
            seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn merged(suite: &str, params: serde_json::Value, parts: Vec<Report>) -> Report {
        let mut cases = Vec::new();
        let mut seconds = 0.0;
        for p in parts {
            seconds += p.seconds;
            cases.extend(p.cases);
        }
        let mut r = Report::from_cases(suite, params, cases);
        r.seconds = seconds;
        r
    }
}

/// Parameter mode of a suite: fully symbolic, or a seeded numeric-rational
/// prescreen (failures always re-checked symbolically).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QMode {
    Symbolic,
    Numeric(u64),
}

/// Rational substitution point with multiplicatively independent values:
/// every variable gets a ratio of two distinct primes, all primes distinct.
#[derive(Clone, Debug)]
pub struct Assignment {
    map: BTreeMap<Var, Rat>,
}

impl Assignment {
    pub fn from_seed(seed: u64) -> Self {
        let mut primes: Vec<i64> = vec![
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
            83, 89, 97, 101, 103, 107, 109, 113,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        primes.shuffle(&mut rng);
        let vars = [
            Var::Q1,
            Var::Q3,
            Var::U,
            Var::P,
            Var::Q,
            Var::T,
            Var::USub(1),
            Var::USub(2),
            Var::USub(3),
            Var::USub(4),
        ];
        let mut map = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            let a = primes[2 * i];
            let b = primes[2 * i + 1];
            map.insert(*v, Rat::new(a.into(), b.into()));
        }
        Assignment { map }
    }

    pub fn get(&self, v: Var) -> Rat {
        self.map
            .get(&v)
            .cloned()
            .unwrap_or_else(|| panic!("no numeric value for {}", v))
    }
}

/// Windows of one relation check. K ≥ W+3 because g(z,w) has degree 3.
#[derive(Clone, Copy, Debug)]
pub struct CheckSpec {
    pub mode_window: i64,
    pub series_order: usize,
}

impl CheckSpec {
    pub fn new(mode_window: i64, series_order: usize) -> Self {
        assert!(
            series_order as i64 >= mode_window + 3,
            "series order must be at least mode window + 3"
        );
        CheckSpec {
            mode_window,
            series_order,
        }
    }

    pub fn with_window(mode_window: i64) -> Self {
        Self::new(mode_window, (mode_window + 3) as usize)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelId {
    Ee,
    Ff,
    PsiE,
    PsiF,
    Ef,
    SerreE,
    SerreF,
    Level,
}

impl fmt::Display for RelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelId::Ee => "ee",
            RelId::Ff => "ff",
            RelId::PsiE => "psie",
            RelId::PsiF => "psif",
            RelId::Ef => "ef",
            RelId::SerreE => "serre-e",
            RelId::SerreF => "serre-f",
            RelId::Level => "level",
        };
        write!(f, "{}", s)
    }
}

pub fn all_relations() -> Vec<RelId> {
    vec![
        RelId::Ee,
        RelId::Ff,
        RelId::PsiE,
        RelId::PsiF,
        RelId::Ef,
        RelId::SerreE,
        RelId::SerreF,
        RelId::Level,
    ]
}

/// A weighted sum of generator words that must annihilate a basis vector.
struct ZeroInstance<L> {
    id: String,
    v: L,
    terms: Vec<(Scalar, Vec<Gen>)>,
}

fn residual<M: Module>(
    module: &M,
    v: &M::Label,
    terms: &[(Scalar, Vec<Gen>)],
    cache: &SeriesCache<M::Label>,
) -> Result<StateVector<M::Label>, RepsError> {
    let unit = StateVector::unit(v.clone());
    let mut acc = StateVector::zero();
    for (w, word) in terms {
        let r = apply_word(module, word, &unit, cache)?;
        acc = acc.add(&r.scale_scalar(w));
    }
    Ok(acc)
}

fn numeric_is_zero<L: Clone + Ord + fmt::Debug>(
    v: &StateVector<L>,
    assign: &Assignment,
) -> Option<bool> {
    for (_, ts) in v.raw_terms() {
        let mut sum = Rat::zero();
        for t in ts {
            sum += t.eval(&|var| assign.get(var))?;
        }
        if !sum.is_zero() {
            return Some(false);
        }
    }
    Some(true)
}

fn run_zero_instance<M: Module>(
    module: &M,
    inst: &ZeroInstance<M::Label>,
    qmode: QMode,
    assign: Option<&Assignment>,
    cache: &SeriesCache<M::Label>,
) -> CaseResult {
    let res = match residual(module, &inst.v, &inst.terms, cache) {
        Ok(r) => r,
        Err(e) => {
            return CaseResult {
                id: inst.id.clone(),
                status: Status::Error,
                detail: e.to_string(),
            }
        }
    };
    if let (QMode::Numeric(_), Some(a)) = (qmode, assign) {
        if let Some(true) = numeric_is_zero(&res, a) {
            return CaseResult {
                id: inst.id.clone(),
                status: Status::Pass,
                detail: "numeric".into(),
            };
        }
        // prescreen failed or hit a pole: decide symbolically
    }
    match res.collapse() {
        Ok(nonzero) if nonzero.is_empty() => CaseResult {
            id: inst.id.clone(),
            status: Status::Pass,
            detail: String::new(),
        },
        Ok(nonzero) => {
            let (l, c) = nonzero.iter().next().unwrap();
            CaseResult {
                id: inst.id.clone(),
                status: Status::Fail,
                detail: format!("residual at {:?}: {}", l, c),
            }
        }
        Err(e) => CaseResult {
            id: inst.id.clone(),
            status: Status::Error,
            detail: e.to_string(),
        },
    }
}

/// The component identity of g(z,w)e(z)e(w) = −g(w,z)e(w)e(z) at modes
/// (n, m): both halves of the paper's displayed identity, summed.
fn ee_terms(consts: &RelationConstants, n: i64, m: i64) -> Vec<(Scalar, Vec<Gen>)> {
    let s1 = consts.sigma1.clone();
    let s2 = consts.sigma2.clone();
    let one = Scalar::one();
    vec![
        (one.clone(), vec![Gen::E(n + 3), Gen::E(m)]),
        (s1.neg(), vec![Gen::E(n + 2), Gen::E(m + 1)]),
        (s2.clone(), vec![Gen::E(n + 1), Gen::E(m + 2)]),
        (one.neg(), vec![Gen::E(n), Gen::E(m + 3)]),
        (one.clone(), vec![Gen::E(m + 3), Gen::E(n)]),
        (s1.neg(), vec![Gen::E(m + 2), Gen::E(n + 1)]),
        (s2, vec![Gen::E(m + 1), Gen::E(n + 2)]),
        (one.neg(), vec![Gen::E(m), Gen::E(n + 3)]),
    ]
}

/// First half only (the left-hand side of the displayed identity); the
/// antisymmetrization consistency check compares it with minus the swapped
/// half computed independently.
fn ee_half_terms(consts: &RelationConstants, n: i64, m: i64) -> Vec<(Scalar, Vec<Gen>)> {
    ee_terms(consts, n, m).into_iter().take(4).collect()
}

fn ff_terms(consts: &RelationConstants, i: i64, j: i64) -> Vec<(Scalar, Vec<Gen>)> {
    let s1 = consts.sigma1.clone();
    let s2 = consts.sigma2.clone();
    let one = Scalar::one();
    vec![
        (one.clone(), vec![Gen::F(i), Gen::F(j + 3)]),
        (s1.neg(), vec![Gen::F(i + 1), Gen::F(j + 2)]),
        (s2.clone(), vec![Gen::F(i + 2), Gen::F(j + 1)]),
        (one.neg(), vec![Gen::F(i + 3), Gen::F(j)]),
        (one.clone(), vec![Gen::F(j), Gen::F(i + 3)]),
        (s1.neg(), vec![Gen::F(j + 1), Gen::F(i + 2)]),
        (s2, vec![Gen::F(j + 2), Gen::F(i + 1)]),
        (one.neg(), vec![Gen::F(j + 3), Gen::F(i)]),
    ]
}

fn psi_gen(plus: bool, m: i64) -> Gen {
    if plus {
        Gen::PsiPlus(m)
    } else {
        Gen::PsiMinus(m)
    }
}

/// g(z,w)ψ±(z)e(w) = −g(w,z)e(w)ψ±(z) at z-mode i, w-mode j.
fn psie_terms(consts: &RelationConstants, plus: bool, i: i64, j: i64) -> Vec<(Scalar, Vec<Gen>)> {
    let s1 = consts.sigma1.clone();
    let s2 = consts.sigma2.clone();
    let one = Scalar::one();
    vec![
        (one.clone(), vec![psi_gen(plus, i + 3), Gen::E(j)]),
        (s1.neg(), vec![psi_gen(plus, i + 2), Gen::E(j + 1)]),
        (s2.clone(), vec![psi_gen(plus, i + 1), Gen::E(j + 2)]),
        (one.neg(), vec![psi_gen(plus, i), Gen::E(j + 3)]),
        (one.clone(), vec![Gen::E(j + 3), psi_gen(plus, i)]),
        (s1.neg(), vec![Gen::E(j + 2), psi_gen(plus, i + 1)]),
        (s2, vec![Gen::E(j + 1), psi_gen(plus, i + 2)]),
        (one.neg(), vec![Gen::E(j), psi_gen(plus, i + 3)]),
    ]
}

/// g(w,z)ψ±(z)f(w) = −g(z,w)f(w)ψ±(z) at z-mode i, w-mode j.
fn psif_terms(consts: &RelationConstants, plus: bool, i: i64, j: i64) -> Vec<(Scalar, Vec<Gen>)> {
    let s1 = consts.sigma1.clone();
    let s2 = consts.sigma2.clone();
    let one = Scalar::one();
    vec![
        (one.clone(), vec![psi_gen(plus, i), Gen::F(j + 3)]),
        (s1.neg(), vec![psi_gen(plus, i + 1), Gen::F(j + 2)]),
        (s2.clone(), vec![psi_gen(plus, i + 2), Gen::F(j + 1)]),
        (one.neg(), vec![psi_gen(plus, i + 3), Gen::F(j)]),
        (one.clone(), vec![Gen::F(j), psi_gen(plus, i + 3)]),
        (s1.neg(), vec![Gen::F(j + 1), psi_gen(plus, i + 2)]),
        (s2, vec![Gen::F(j + 2), psi_gen(plus, i + 1)]),
        (one.neg(), vec![Gen::F(j + 3), psi_gen(plus, i)]),
    ]
}

/// g(1,1)[e_i, f_j] = ψ⁺_{i+j} (i+j>0), −ψ⁻_{i+j} (i+j<0), ψ⁺₀−ψ⁻₀ (i+j=0).
fn ef_terms(consts: &RelationConstants, i: i64, j: i64) -> Vec<(Scalar, Vec<Gen>)> {
    let g = consts.g11.clone();
    let one = Scalar::one();
    let mut terms = vec![
        (g.clone(), vec![Gen::E(i), Gen::F(j)]),
        (g.neg(), vec![Gen::F(j), Gen::E(i)]),
    ];
    let s = i + j;
    if s > 0 {
        terms.push((one.neg(), vec![Gen::PsiPlus(s)]));
    } else if s < 0 {
        terms.push((one, vec![Gen::PsiMinus(s)]));
    } else {
        terms.push((one.neg(), vec![Gen::PsiPlus(0)]));
        terms.push((Scalar::one(), vec![Gen::PsiMinus(0)]));
    }
    terms
}

/// [x₀, [x₁, x₋₁]] for x = e or f.
fn serre_terms(e_side: bool) -> Vec<(Scalar, Vec<Gen>)> {
    let g = |m: i64| if e_side { Gen::E(m) } else { Gen::F(m) };
    let one = Scalar::one();
    vec![
        (one.clone(), vec![g(0), g(1), g(-1)]),
        (one.neg(), vec![g(0), g(-1), g(1)]),
        (one.neg(), vec![g(1), g(-1), g(0)]),
        (one, vec![g(-1), g(1), g(0)]),
    ]
}

/// Case list of one relation over a basis window.
fn relation_instances<M: Module>(
    rel: RelId,
    consts: &RelationConstants,
    spec: &CheckSpec,
    basis: &[M::Label],
) -> Vec<ZeroInstance<M::Label>> {
    let w = spec.mode_window;
    let k = spec.series_order as i64;
    let mut out = Vec::new();
    match rel {
        RelId::Ee | RelId::Ff => {
            for n in -w..=w {
                for m in -w..=w {
                    for v in basis {
                        let terms = if rel == RelId::Ee {
                            ee_terms(consts, n, m)
                        } else {
                            ff_terms(consts, n, m)
                        };
                        out.push(ZeroInstance {
                            id: format!("{} n={} m={} v={:?}", rel, n, m, v),
                            v: v.clone(),
                            terms,
                        });
                    }
                }
            }
        }
        RelId::PsiE | RelId::PsiF => {
            for plus in [true, false] {
                // z-modes such that all four psi modes i..i+3 exist and stay
                // within the series order
                let i_range: Vec<i64> = if plus {
                    (0..=(k - 3)).collect()
                } else {
                    (-k..=-3).collect()
                };
                for i in i_range {
                    for j in -w..=w {
                        let terms = if rel == RelId::PsiE {
                            psie_terms(consts, plus, i, j)
                        } else {
                            psif_terms(consts, plus, i, j)
                        };
                        for v in basis {
                            out.push(ZeroInstance {
                                id: format!(
                                    "{} sign={} i={} j={} v={:?}",
                                    rel,
                                    if plus { "+" } else { "-" },
                                    i,
                                    j,
                                    v
                                ),
                                v: v.clone(),
                                terms: terms.clone(),
                            });
                        }
                    }
                }
            }
        }
        RelId::Ef => {
            for i in -w..=w {
                for j in -w..=w {
                    for v in basis {
                        out.push(ZeroInstance {
                            id: format!("ef i={} j={} v={:?}", i, j, v),
                            v: v.clone(),
                            terms: ef_terms(consts, i, j),
                        });
                    }
                }
            }
        }
        RelId::SerreE | RelId::SerreF => {
            for v in basis {
                out.push(ZeroInstance {
                    id: format!("{} v={:?}", rel, v),
                    v: v.clone(),
                    terms: serre_terms(rel == RelId::SerreE),
                });
            }
        }
        RelId::Level => unreachable!("level checks are generated separately"),
    }
    out
}

/// Run one relation over a basis window, parallelized over instances.
pub fn check_relation<M: Module + Sync>(
    module: &M,
    rel: RelId,
    consts: &RelationConstants,
    spec: &CheckSpec,
    basis: &[M::Label],
    qmode: QMode,
) -> Vec<CaseResult> {
    let assign = match qmode {
        QMode::Numeric(seed) => Some(Assignment::from_seed(seed)),
        QMode::Symbolic => None,
    };
    if rel == RelId::Level {
        return check_level(module, consts, spec, basis, qmode, assign.as_ref(), None);
    }
    let instances = relation_instances::<M>(rel, consts, spec, basis);
    let cache = SeriesCache::new();
    crate::par::map_collect(instances, |inst| {
        run_zero_instance(module, &inst, qmode, assign.as_ref(), &cache)
    })
}

/// The ee antisymmetrization consistency: the first half of the identity at
/// (n, m), computed independently, equals minus the first half at (m, n).
pub fn check_ee_antisym<M: Module + Sync>(
    module: &M,
    consts: &RelationConstants,
    spec: &CheckSpec,
    basis: &[M::Label],
) -> Vec<CaseResult> {
    let w = spec.mode_window;
    let mut instances = Vec::new();
    for n in -w..=w {
        for m in -w..=w {
            for v in basis {
                instances.push((n, m, v.clone()));
            }
        }
    }
    let cache = SeriesCache::new();
    crate::par::map_collect(instances, |(n, m, v)| {
        let id = format!("ee-antisym n={} m={} v={:?}", n, m, v);
        let a = residual(module, &v, &ee_half_terms(consts, n, m), &cache);
        let b = residual(module, &v, &ee_half_terms(consts, m, n), &cache);
        match (a, b) {
            (Ok(a), Ok(b)) => match a.add(&b).is_zero() {
                Ok(true) => CaseResult {
                    id,
                    status: Status::Pass,
                    detail: String::new(),
                },
                Ok(false) => CaseResult {
                    id,
                    status: Status::Fail,
                    detail: "halves are not antisymmetric".into(),
                },
                Err(e) => CaseResult {
                    id,
                    status: Status::Error,
                    detail: e.to_string(),
                },
            },
            (Err(e), _) | (_, Err(e)) => CaseResult {
                id,
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    })
}

/// ψ±₀ act by the documented level scalars, are central on the window, and
/// all ψ modes commute (rel4/rel5).
pub fn check_level<M: Module + Sync>(
    module: &M,
    _consts: &RelationConstants,
    spec: &CheckSpec,
    basis: &[M::Label],
    qmode: QMode,
    assign: Option<&Assignment>,
    expected: Option<&(Scalar, Scalar)>,
) -> Vec<CaseResult> {
    let w = spec.mode_window;
    let k = spec.series_order as i64;
    let mut cases: Vec<CaseResult> = Vec::new();
    // level scalars
    let level_cases = crate::par::map_collect(basis.to_vec(), |v| {
        let id = format!("level v={:?}", v);
        match module.levels_on(&v) {
            Ok((lp, lm)) => {
                let ok = match expected {
                    Some((ep, em)) => lp.eq(ep) && lm.eq(em) && !lp.is_zero() && !lm.is_zero(),
                    None => !lp.is_zero() && !lm.is_zero(),
                };
                CaseResult {
                    id,
                    status: if ok { Status::Pass } else { Status::Fail },
                    detail: if ok {
                        String::new()
                    } else {
                        format!("levels ({}, {})", lp, lm)
                    },
                }
            }
            Err(e) => CaseResult {
                id,
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    });
    cases.extend(level_cases);
    // centrality of psi0 and commutativity of psi modes
    let mut instances: Vec<ZeroInstance<M::Label>> = Vec::new();
    for v in basis {
        for m in -w..=w {
            for (name, x) in [("e", Gen::E(m)), ("f", Gen::F(m))] {
                for (pname, p0) in [("psi+_0", Gen::PsiPlus(0)), ("psi-_0", Gen::PsiMinus(0))] {
                    instances.push(ZeroInstance {
                        id: format!("central [{},{}_{}] v={:?}", pname, name, m, v),
                        v: v.clone(),
                        terms: vec![
                            (Scalar::one(), vec![p0, x]),
                            (Scalar::from_i64(-1), vec![x, p0]),
                        ],
                    });
                }
            }
        }
        // psi-psi commutators across signs and a spread of modes
        let a = Gen::PsiPlus(k.min(2));
        let b = Gen::PsiMinus(-(k.min(1)));
        instances.push(ZeroInstance {
            id: format!("psi-commute v={:?}", v),
            v: v.clone(),
            terms: vec![
                (Scalar::one(), vec![a, b]),
                (Scalar::from_i64(-1), vec![b, a]),
            ],
        });
    }
    let cache = SeriesCache::new();
    cases.extend(crate::par::map_collect(instances, |inst| {
        run_zero_instance(module, &inst, qmode, assign, &cache)
    }));
    cases
}

/// Which module family a suite runs on, with its basis window.
#[derive(Clone, Debug)]
pub enum FamilyConfig {
    Vector {
        basis_lo: i64,
        basis_hi: i64,
    },
    Tensor {
        n: usize,
        entry_lo: i64,
        entry_hi: i64,
    },
    Wn {
        n: usize,
        entry_lo: i64,
        entry_hi: i64,
    },
    Fock {
        max_weight: i64,
    },
    Resonance {
        spec: TailSpec,
        max_rel_weight: i64,
    },
}

impl FamilyConfig {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyConfig::Vector { .. } => "vector",
            FamilyConfig::Tensor { .. } => "tensor",
            FamilyConfig::Wn { .. } => "wn",
            FamilyConfig::Fock { .. } => "fock",
            FamilyConfig::Resonance { .. } => "resonance",
        }
    }

    pub fn params_json(&self, spec: &CheckSpec, qmode: QMode) -> serde_json::Value {
        let qmode_s = match qmode {
            QMode::Symbolic => "symbolic".to_string(),
            QMode::Numeric(seed) => format!("numeric:{}", seed),
        };
        let mut v = match self {
            FamilyConfig::Vector { basis_lo, basis_hi } => serde_json::json!({
                "family": "vector", "basis": [basis_lo, basis_hi],
            }),
            FamilyConfig::Tensor {
                n,
                entry_lo,
                entry_hi,
            } => serde_json::json!({
                "family": "tensor", "N": n, "entries": [entry_lo, entry_hi],
            }),
            FamilyConfig::Wn {
                n,
                entry_lo,
                entry_hi,
            } => serde_json::json!({
                "family": "wn", "N": n, "entries": [entry_lo, entry_hi],
            }),
            FamilyConfig::Fock { max_weight } => serde_json::json!({
                "family": "fock", "max_weight": max_weight,
            }),
            FamilyConfig::Resonance {
                spec,
                max_rel_weight,
            } => serde_json::json!({
                "family": "resonance", "k": spec.k, "r": spec.r, "c": spec.c,
                "max_rel_weight": max_rel_weight,
            }),
        };
        let obj = v.as_object_mut().unwrap();
        obj.insert(
            "mode_window".into(),
            serde_json::json!(spec.mode_window),
        );
        obj.insert(
            "series_order".into(),
            serde_json::json!(spec.series_order),
        );
        obj.insert("qmode".into(), serde_json::json!(qmode_s));
        v
    }

    /// The relation constants over the family's coefficient field.
    pub fn constants(&self) -> RelationConstants {
        match self {
            FamilyConfig::Resonance { spec, .. } => RelationConstants::resonance(
                &crate::coeff::Resonance::new(spec.k, spec.r).expect("valid resonance pair"),
            ),
            _ => RelationConstants::new(),
        }
    }

    /// The documented (ψ⁺₀, ψ⁻₀) scalars of the family.
    pub fn expected_levels(&self) -> (Scalar, Scalar) {
        let q2 = Scalar::from_monomial(Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]));
        match self {
            FamilyConfig::Vector { .. } | FamilyConfig::Tensor { .. } | FamilyConfig::Wn { .. } => {
                (Scalar::one(), Scalar::one())
            }
            FamilyConfig::Fock { .. } => (Scalar::one(), q2),
            FamilyConfig::Resonance { spec, .. } => (
                Scalar::one(),
                Scalar::from_monomial(Monomial::var_pow(Var::P, spec.k * (spec.r - 1))),
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub family: FamilyConfig,
    pub spec: CheckSpec,
    pub relations: Vec<RelId>,
    pub qmode: QMode,
    /// Also run the ee antisymmetrization consistency cases.
    pub ee_antisym: bool,
}

fn run_over<M: Module + Sync>(
    module: &M,
    basis: &[M::Label],
    cfg: &SuiteConfig,
    expected_levels: &(Scalar, Scalar),
) -> Vec<CaseResult> {
    let consts = cfg.family.constants();
    let mut cases = Vec::new();
    for rel in &cfg.relations {
        if *rel == RelId::Level {
            let assign = match cfg.qmode {
                QMode::Numeric(seed) => Some(Assignment::from_seed(seed)),
                QMode::Symbolic => None,
            };
            cases.extend(check_level(
                module,
                &consts,
                &cfg.spec,
                basis,
                cfg.qmode,
                assign.as_ref(),
                Some(expected_levels),
            ));
        } else {
            cases.extend(check_relation(
                module,
                *rel,
                &consts,
                &cfg.spec,
                basis,
                cfg.qmode,
            ));
        }
    }
    if cfg.ee_antisym {
        cases.extend(check_ee_antisym(module, &consts, &cfg.spec, basis));
    }
    cases
}

/// Run a full suite: build the module and basis window from the family
/// config, check every requested relation, aggregate a report.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let started = Instant::now();
    let expected = cfg.family.expected_levels();
    let cases = match &cfg.family {
        FamilyConfig::Vector { basis_lo, basis_hi } => {
            let m = VectorModule::new();
            let basis: Vec<i64> = (*basis_lo..=*basis_hi).collect();
            run_over(&m, &basis, cfg, &expected)
        }
        FamilyConfig::Tensor {
            n,
            entry_lo,
            entry_hi,
        } => {
            let m = TensorModule::symbolic(*n);
            let basis = all_tuples(*n, *entry_lo, *entry_hi);
            run_over(&m, &basis, cfg, &expected)
        }
        FamilyConfig::Wn {
            n,
            entry_lo,
            entry_hi,
        } => {
            let m = WnModule::new(*n);
            let basis = zvalued_tuples(*n, *entry_lo, *entry_hi);
            run_over(&m, &basis, cfg, &expected)
        }
        FamilyConfig::Fock { max_weight } => {
            let m = FockModule::new();
            let basis = partitions_up_to(*max_weight);
            run_over(&m, &basis, cfg, &expected)
        }
        FamilyConfig::Resonance {
            spec,
            max_rel_weight,
        } => {
            let m = ResonanceModule::new(spec.clone()).expect("valid resonance pair");
            let basis: Vec<TailedPartition> = tailed_up_to(spec, *max_rel_weight);
            run_over(&m, &basis, cfg, &expected)
        }
    };
    let mut report = Report::from_cases(
        cfg.family.name(),
        cfg.family.params_json(&cfg.spec, cfg.qmode),
        cases,
    );
    report.seconds = started.elapsed().as_secs_f64();
    report
}

/// All ℤ^N tuples with entries in [lo, hi] (tensor basis window).
pub fn all_tuples(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for v in lo..=hi {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_spec() -> CheckSpec {
        CheckSpec::with_window(1)
    }

    #[test]
    fn vector_relations_small_window() {
        let cfg = SuiteConfig {
            family: FamilyConfig::Vector {
                basis_lo: -1,
                basis_hi: 1,
            },
            spec: quick_spec(),
            relations: all_relations(),
            qmode: QMode::Symbolic,
            ee_antisym: false,
        };
        let r = run_suite(&cfg);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn fock_relations_small_window() {
        let cfg = SuiteConfig {
            family: FamilyConfig::Fock { max_weight: 2 },
            spec: quick_spec(),
            relations: all_relations(),
            qmode: QMode::Symbolic,
            ee_antisym: false,
        };
        let r = run_suite(&cfg);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn wn_relations_small_window_with_antisym() {
        let cfg = SuiteConfig {
            family: FamilyConfig::Wn {
                n: 2,
                entry_lo: -1,
                entry_hi: 1,
            },
            spec: quick_spec(),
            relations: vec![RelId::Ee, RelId::Ef, RelId::Level],
            qmode: QMode::Symbolic,
            ee_antisym: true,
        };
        let r = run_suite(&cfg);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn numeric_prescreen_agrees_with_symbolic() {
        for qmode in [QMode::Symbolic, QMode::Numeric(7)] {
            let cfg = SuiteConfig {
                family: FamilyConfig::Vector {
                    basis_lo: -1,
                    basis_hi: 1,
                },
                spec: quick_spec(),
                relations: vec![RelId::Ee, RelId::Ef, RelId::PsiE],
                qmode,
                ee_antisym: false,
            };
            let r = run_suite(&cfg);
            assert!(r.passed());
        }
    }

    #[test]
    fn resonance_relations_tiny() {
        let spec = TailSpec::new(1, 2, vec![]).unwrap();
        let cfg = SuiteConfig {
            family: FamilyConfig::Resonance {
                spec,
                max_rel_weight: 2,
            },
            spec: quick_spec(),
            relations: vec![RelId::Ee, RelId::Ef, RelId::SerreE, RelId::Level],
            qmode: QMode::Symbolic,
            ee_antisym: false,
        };
        let r = run_suite(&cfg);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn report_schema_fields() {
        let cfg = SuiteConfig {
            family: FamilyConfig::Vector {
                basis_lo: 0,
                basis_hi: 0,
            },
            spec: quick_spec(),
            relations: vec![RelId::Level],
            qmode: QMode::Symbolic,
            ee_antisym: false,
        };
        let r = run_suite(&cfg);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["suite", "params", "cases", "summary", "seconds"] {
            assert!(v.get(key).is_some(), "missing {}", key);
        }
        let case = &v["cases"][0];
        for key in ["id", "status", "detail"] {
            assert!(case.get(key).is_some());
        }
    }
}
