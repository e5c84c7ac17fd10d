//! The module families of quantum continuous gl∞ with exact mode-by-mode
//! actions: V(u), tensor products ⊗V(u_s), W^N(u), the Fock module ℱ(u),
//! and the resonance modules W^{k,r}_c(u).
//!
//! Each family exposes the e(z)/f(z) actions as lists of delta terms
//! c·δ(S/z)|target⟩ and the diagonal ψ±(z) action as one rational
//! eigenfunction of z per basis vector; the z^{-m} mode of a delta term is
//! c·Sᵐ, and ψ± modes are series coefficients of the eigenfunction at
//! z = ∞ / z = 0.

pub mod fock;
pub mod gamma;
pub mod resonance;
pub mod tensor;
pub mod vector;
pub mod wn;

pub use fock::{fock_factorized_check, FockModule};
pub use resonance::{ResonanceModule, WkrNModule};
pub use tensor::TensorModule;
pub use vector::VectorModule;
pub use wn::{WnModule, WnPlusModule};

use crate::coeff::{
    series_expand, sum_fterms, CoeffError, Direction, FTerm, FactoredScalar, Monomial, Scalar,
    SeriesTrunc,
};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("gamma factor evaluated at its own pole: {0}")]
    PoleCollision(String),
    #[error("psi+ modes require m >= 0, psi- modes require m <= 0 (got {0})")]
    BadPsiMode(i64),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A generator mode of the algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    E(i64),
    F(i64),
    /// ψ⁺_m, m ≥ 0
    PsiPlus(i64),
    /// ψ⁻_m, m ≤ 0
    PsiMinus(i64),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(m) => write!(f, "e_{}", m),
            Gen::F(m) => write!(f, "f_{}", m),
            Gen::PsiPlus(m) => write!(f, "psi+_{}", m),
            Gen::PsiMinus(m) => write!(f, "psi-_{}", m),
        }
    }
}

/// One term c·δ(S/z)|target⟩ of a generating-series action.
#[derive(Clone, Debug)]
pub struct DeltaTerm<L> {
    pub support: Monomial,
    pub coeff: FactoredScalar,
    pub target: L,
}

impl<L> DeltaTerm<L> {
    /// The z^{-m} mode: coefficient times supportᵐ.
    pub fn mode_coeff(&self, m: i64) -> FactoredScalar {
        self.coeff.mul_monomial(&self.support.pow(m))
    }
}

/// A module of the algebra, defined by its delta-term actions and diagonal
/// eigenfunctions.
pub trait Module {
    type Label: Clone + Ord + fmt::Debug + Send + Sync;

    fn family(&self) -> &'static str;
    fn e_delta(&self, v: &Self::Label) -> Result<Vec<DeltaTerm<Self::Label>>, RepsError>;
    fn f_delta(&self, v: &Self::Label) -> Result<Vec<DeltaTerm<Self::Label>>, RepsError>;
    /// The rational function whose expansions at z = ∞ / z = 0 are the
    /// ψ⁺/ψ⁻ eigenvalue series on |v⟩.
    fn psi_fn(&self, v: &Self::Label) -> FactoredScalar;

    /// (ψ⁺₀, ψ⁻₀) eigenvalues on |v⟩; constant on a level-(l₊,l₋) module.
    fn levels_on(&self, v: &Self::Label) -> Result<(Scalar, Scalar), RepsError> {
        let f = self.psi_fn(v);
        let plus = series_expand(&f, Direction::AtInfinity, 0)?;
        let minus = series_expand(&f, Direction::AtZero, 0)?;
        Ok((plus.coeffs[0].clone(), minus.coeffs[0].clone()))
    }
}

/// A finite formal linear combination of basis vectors. Coefficients are
/// kept as unsummed factored terms so that sums can extract the structural
/// common denominator before expanding.
#[derive(Clone, Debug)]
pub struct StateVector<L: Clone + Ord> {
    terms: BTreeMap<L, Vec<FTerm>>,
}

impl<L: Clone + Ord + fmt::Debug> StateVector<L> {
    pub fn zero() -> Self {
        StateVector {
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector |l⟩ with coefficient 1.
    pub fn unit(l: L) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(l, vec![FTerm::from_factored(FactoredScalar::one())]);
        StateVector { terms }
    }

    pub fn add_fterm(&mut self, l: L, t: FTerm) {
        if t.is_zero() {
            return;
        }
        self.terms.entry(l).or_default().push(t);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (l, ts) in &other.terms {
            for t in ts {
                r.add_fterm(l.clone(), t.clone());
            }
        }
        r
    }

    pub fn neg(&self) -> Self {
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|(l, ts)| (l.clone(), ts.iter().map(|t| t.neg()).collect()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|(l, ts)| (l.clone(), ts.iter().map(|t| t.mul_scalar(s)).collect()))
                .collect(),
        }
    }

    pub fn scale_factored(&self, f: &FactoredScalar) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        StateVector {
            terms: self
                .terms
                .iter()
                .map(|(l, ts)| (l.clone(), ts.iter().map(|t| t.mul_factored(f)).collect()))
                .collect(),
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    pub fn raw_terms(&self) -> impl Iterator<Item = (&L, &Vec<FTerm>)> {
        self.terms.iter()
    }

    /// Sum all accumulated terms; labels with zero total are dropped.
    pub fn collapse(&self) -> Result<BTreeMap<L, Scalar>, CoeffError> {
        let mut out = BTreeMap::new();
        for (l, ts) in &self.terms {
            let s = sum_fterms(ts)?;
            if !s.is_zero() {
                out.insert(l.clone(), s);
            }
        }
        Ok(out)
    }

    pub fn coeff(&self, l: &L) -> Result<Scalar, CoeffError> {
        match self.terms.get(l) {
            None => Ok(Scalar::zero()),
            Some(ts) => sum_fterms(ts),
        }
    }

    pub fn is_zero(&self) -> Result<bool, CoeffError> {
        for ts in self.terms.values() {
            if !sum_fterms(ts)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact equality of collapsed coefficients.
    pub fn equals(&self, other: &Self) -> Result<bool, CoeffError> {
        Ok(self.sub(other).is_zero()?)
    }

    /// Map labels (e.g. along a stability embedding), keeping coefficients.
    pub fn map_labels<M: Clone + Ord + fmt::Debug>(
        &self,
        f: impl Fn(&L) -> M,
    ) -> StateVector<M> {
        let mut out = StateVector::zero();
        for (l, ts) in &self.terms {
            let m = f(l);
            for t in ts {
                out.add_fterm(m.clone(), t.clone());
            }
        }
        out
    }
}

/// Memo for ψ eigen-series per basis label. Interior-mutable so one cache
/// can be shared by all parallel cases of a suite; entries are only valid
/// for the module instance the cache is used with.
pub struct SeriesCache<L: Clone + Ord> {
    plus: std::sync::Mutex<BTreeMap<L, SeriesTrunc>>,
    minus: std::sync::Mutex<BTreeMap<L, SeriesTrunc>>,
}

impl<L: Clone + Ord> Default for SeriesCache<L> {
    fn default() -> Self {
        SeriesCache {
            plus: std::sync::Mutex::new(BTreeMap::new()),
            minus: std::sync::Mutex::new(BTreeMap::new()),
        }
    }
}

impl<L: Clone + Ord> SeriesCache<L> {
    pub fn new() -> Self {
        Self::default()
    }

    fn coeff_at<M: Module<Label = L>>(
        &self,
        module: &M,
        l: &L,
        dir: Direction,
        order: usize,
    ) -> Result<Scalar, RepsError> {
        let map = match dir {
            Direction::AtInfinity => &self.plus,
            Direction::AtZero => &self.minus,
        };
        {
            let guard = map.lock().unwrap();
            if let Some(s) = guard.get(l) {
                if s.order() >= order {
                    return Ok(s.coeff(order).clone());
                }
            }
        }
        let f = module.psi_fn(l);
        let s = series_expand(&f, dir, order.max(6))?;
        let c = s.coeff(order).clone();
        map.lock().unwrap().insert(l.clone(), s);
        Ok(c)
    }

    /// ψ±_m eigenvalue on |l⟩ (sign chosen by the mode constraint).
    pub fn psi_coeff<M: Module<Label = L>>(
        &self,
        module: &M,
        l: &L,
        g: Gen,
    ) -> Result<Scalar, RepsError> {
        match g {
            Gen::PsiPlus(m) => {
                if m < 0 {
                    return Err(RepsError::BadPsiMode(m));
                }
                self.coeff_at(module, l, Direction::AtInfinity, m as usize)
            }
            Gen::PsiMinus(m) => {
                if m > 0 {
                    return Err(RepsError::BadPsiMode(m));
                }
                self.coeff_at(module, l, Direction::AtZero, (-m) as usize)
            }
            _ => unreachable!("psi_coeff on non-psi generator"),
        }
    }
}

/// Apply a generator mode to a state vector.
pub fn apply<M: Module>(
    module: &M,
    g: Gen,
    v: &StateVector<M::Label>,
    cache: &SeriesCache<M::Label>,
) -> Result<StateVector<M::Label>, RepsError> {
    let mut out = StateVector::zero();
    match g {
        Gen::E(m) | Gen::F(m) => {
            for (l, ts) in v.raw_terms() {
                let deltas = match g {
                    Gen::E(_) => module.e_delta(l)?,
                    _ => module.f_delta(l)?,
                };
                for dt in &deltas {
                    let c = dt.mode_coeff(m);
                    if c.is_zero() {
                        continue;
                    }
                    for t in ts {
                        out.add_fterm(dt.target.clone(), t.mul_factored(&c));
                    }
                }
            }
        }
        Gen::PsiPlus(_) | Gen::PsiMinus(_) => {
            for (l, ts) in v.raw_terms() {
                let c = cache.psi_coeff(module, l, g)?;
                if c.is_zero() {
                    continue;
                }
                for t in ts {
                    out.add_fterm(l.clone(), t.mul_scalar(&c));
                }
            }
        }
    }
    Ok(out)
}

/// Apply a word of generators right-to-left (innermost last).
pub fn apply_word<M: Module>(
    module: &M,
    word: &[Gen],
    v: &StateVector<M::Label>,
    cache: &SeriesCache<M::Label>,
) -> Result<StateVector<M::Label>, RepsError> {
    let mut cur = v.clone();
    for g in word.iter().rev() {
        cur = apply(module, *g, &cur, cache)?;
    }
    Ok(cur)
}

/// Apply a single generator mode to a basis vector.
pub fn apply_to_basis<M: Module>(
    module: &M,
    g: Gen,
    l: &M::Label,
) -> Result<StateVector<M::Label>, RepsError> {
    apply(module, g, &StateVector::unit(l.clone()), &SeriesCache::new())
}
