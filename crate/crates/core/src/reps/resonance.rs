//! Resonance modules at q₁^{1−r}q₃^{k+1} = 1.
//!
//! `WkrNModule` is the finite picture: W^{k,r,N,+}_c(u) ⊂ W^N(u) spanned by
//! admissible λ lying weakly above the tail, with the modified operators
//! f^{[k,N]} = β_{k,N} f, ψ^{±[k,N]} = β_{k,N} ψ±. `ResonanceModule` is the
//! inductive limit W^{k,r}_c(u) with the explicit stabilized coefficients.
//!
//! Every matrix coefficient is built as a factored product over ℚ(q₁,q₃,u)
//! and then passed through the resonance normalization: zero factors
//! (1 − x^α), x = q₁^{1−r}q₃^{k+1}, cancel pairwise between numerator and
//! denominator with limit ratio α_num/α_den, and only then is the exponent
//! map q₁ ↦ p^{k+1}, q₃ ↦ p^{r−1} applied. Infinite products stabilize one
//! period past the prefix; the first dropped factor is asserted to map to 1.

use super::gamma::{q1_pow, q3_pow};
use super::vector::{e_prefactor, f_prefactor};
use super::wn::WnModule;
use super::{DeltaTerm, Module, RepsError};
use crate::coeff::{FactoredScalar, Monomial, Resonance, Var};
use crate::partition::{Partition, TailSpec, TailedPartition};

/// The vacuum eigenfunction of the limit module:
/// ∏_{i=0}^{k−1} φ_∅(q₃ⁱ q₁^{−cᵢ} u/z) with φ_∅(s) = (1−q₃s)/(1−s).
pub fn vacuum_psi_limit(spec: &TailSpec, u: &Monomial) -> FactoredScalar {
    let uz = u.mul(&Monomial::var_pow(Var::Z, -1));
    let mut f = FactoredScalar::one();
    for i in 0..spec.k {
        let ci = if i == 0 { 0 } else { spec.c[(i - 1) as usize] };
        let arg = q3_pow(i).mul(&q1_pow(-ci)).mul(&uz);
        f.push_factor(Monomial::var(Var::Q3).mul(&arg), 1);
        f.push_factor(arg, -1);
    }
    f
}

/// β_{k,N}(z): the tail-factor correction that makes the embeddings
/// τ_{k,r,N} intertwine the modified actions. It is pinned down by its
/// defining property
///     β_{k,N} · ⟨λ⁰|ψ(z)|λ⁰⟩_{W^N} = ⟨λ⁰|ψ(z)|λ⁰⟩_{limit},
/// i.e. β_{k,N} = (limit vacuum eigenfunction) / (W^N vacuum eigenfunction),
/// and satisfies β_{k,N}/β_{k,N+k} = ∏_{i=N+1}^{N+k} ρᵢ(λ⁰ᵢ) exactly.
///
/// β lives on the resonance locus: the ratio telescopes to a finite product
/// only after the exponent map, so the returned function is over ℚ(p).
pub fn beta_kn(spec: &TailSpec, res: &Resonance, n: usize, u: &Monomial) -> FactoredScalar {
    let tail: Vec<i64> = (1..=n as i64).map(|j| spec.tail_value(j)).collect();
    let vac = Partition::zvalued(tail).expect("tail is weakly decreasing");
    let wn = WnModule::with_param(n, u.clone());
    let ratio = vacuum_psi_limit(spec, u).mul(&wn.psi_fn(&vac).inv());
    map_psi_fn(res, &ratio)
}

/// Map the q₁/q₃ content of every factor argument and of the unit into
/// p-powers (factor arguments containing z or u pass through unchanged in
/// those variables). Used for ψ eigenfunctions, which have no zero factors.
fn map_psi_fn(res: &Resonance, f: &FactoredScalar) -> FactoredScalar {
    let mut out = FactoredScalar::unit(f.coef().clone(), res.map_monomial(f.mono()));
    for (a, e) in f.factors() {
        out.push_factor(res.map_monomial(a), e);
    }
    out
}

/// W^{k,r,N,+}_c(u): length-N admissible shapes above the tail, with the
/// β_{k,N}-modified operators, all coefficients over ℚ(p, u).
#[derive(Clone, Debug)]
pub struct WkrNModule {
    spec: TailSpec,
    res: Resonance,
    n: usize,
    u: Monomial,
}

impl WkrNModule {
    pub fn new(spec: TailSpec, n: usize) -> Result<Self, RepsError> {
        let res = Resonance::new(spec.k, spec.r)?;
        Ok(WkrNModule {
            spec,
            res,
            n,
            u: Monomial::var(Var::U),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &TailSpec {
        &self.spec
    }

    pub fn resonance(&self) -> &Resonance {
        &self.res
    }

    /// τ_{k,r,N}: append one tail period.
    pub fn tau(&self, lam: &Partition) -> Partition {
        let mut parts = lam.parts().to_vec();
        for j in 1..=self.spec.k {
            parts.push(self.spec.tail_value(self.n as i64 + j));
        }
        Partition::zvalued(parts).expect("tail values continue the shape")
    }

    fn inner(&self) -> WnModule {
        WnModule::with_param(self.n, self.u.clone())
    }
}

impl Module for WkrNModule {
    type Label = Partition;

    fn family(&self) -> &'static str {
        "wkrn"
    }

    fn e_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let mut out = Vec::new();
        for dt in self.inner().e_delta(v)? {
            let coeff = self.res.normalize_factored(&dt.coeff)?;
            if coeff.is_zero() {
                continue;
            }
            debug_assert!(
                dt.target.is_admissible(self.spec.k as usize, self.spec.r),
                "nonzero e-step to inadmissible {:?}",
                dt.target
            );
            out.push(DeltaTerm {
                support: self.res.map_monomial(&dt.support),
                coeff,
                target: dt.target,
            });
        }
        Ok(out)
    }

    fn f_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let beta = beta_kn(&self.spec, &self.res, self.n, &self.u);
        let mut out = Vec::new();
        for dt in self.inner().f_delta(v)? {
            // normalize the W^N coefficient on its own (its zero-factor
            // pairing is self-contained), then evaluate the locus-level β at
            // the mapped support
            let coeff = self.res.normalize_factored(&dt.coeff)?;
            if coeff.is_zero() {
                continue;
            }
            let support = self.res.map_monomial(&dt.support);
            let beta_here = beta.subst_var(Var::Z, &support);
            if beta_here.degenerate_exponent() < 0 {
                return Err(RepsError::PoleCollision(format!(
                    "beta_(k,N) pole at support {}",
                    support
                )));
            }
            let coeff = coeff.mul(&beta_here);
            if coeff.is_zero() {
                // β vanishes exactly on the steps leaving the tail cone
                continue;
            }
            debug_assert!(
                dt.target.is_admissible(self.spec.k as usize, self.spec.r),
                "nonzero f-step to inadmissible {:?}",
                dt.target
            );
            out.push(DeltaTerm {
                support,
                coeff,
                target: dt.target,
            });
        }
        Ok(out)
    }

    fn psi_fn(&self, v: &Partition) -> FactoredScalar {
        beta_kn(&self.spec, &self.res, self.n, &self.u).mul(&map_psi_fn(&self.res, &self.inner().psi_fn(v)))
    }
}

/// The limit module W^{k,r}_c(u) on tail-stabilized admissible shapes, with
/// the explicit stabilized matrix coefficients; level (1, q₃^k → p^{k(r−1)}).
#[derive(Clone, Debug)]
pub struct ResonanceModule {
    spec: TailSpec,
    res: Resonance,
    u: Monomial,
}

impl ResonanceModule {
    pub fn new(spec: TailSpec) -> Result<Self, RepsError> {
        let res = Resonance::new(spec.k, spec.r)?;
        Ok(ResonanceModule {
            spec,
            res,
            u: Monomial::var(Var::U),
        })
    }

    pub fn spec(&self) -> &TailSpec {
        &self.spec
    }

    pub fn resonance(&self) -> &Resonance {
        &self.res
    }

    pub fn vacuum(&self) -> TailedPartition {
        TailedPartition::vacuum(self.spec.clone())
    }

    /// One factor of the f product at row j ≥ i+1:
    ///   (1−q₁^{λ_{j+k}−λᵢ+1}q₃^{j+k−i+1})(1−q₁^{λⱼ−λᵢ}q₃^{j−i−1})
    /// / (1−q₁^{λⱼ−λᵢ}q₃^{j−i})(1−q₁^{λ_{j+k}−λᵢ+1}q₃^{j+k−i}).
    fn f_factor(&self, lam: &TailedPartition, i: i64, j: i64) -> FactoredScalar {
        let k = self.spec.k;
        let li = lam.part(i);
        let lj = lam.part(j);
        let ljk = lam.part(j + k);
        let g = j - i;
        FactoredScalar::one()
            .with_factor(q1_pow(ljk - li + 1).mul(&q3_pow(g + k + 1)), 1)
            .with_factor(q1_pow(lj - li).mul(&q3_pow(g - 1)), 1)
            .with_factor(q1_pow(lj - li).mul(&q3_pow(g)), -1)
            .with_factor(q1_pow(ljk - li + 1).mul(&q3_pow(g + k)), -1)
    }

    /// One factor of the ψ product at row i:
    ///   (1−q₁^{λᵢ−1}q₃^{i−2}s)(1−q₁^{λ_{i+k}}q₃^{i+k}s)
    /// / (1−q₁^{λ_{i+k}}q₃^{i+k−1}s)(1−q₁^{λᵢ−1}q₃^{i−1}s),  s = u/z.
    fn psi_factor(&self, lam: &TailedPartition, i: i64) -> FactoredScalar {
        let k = self.spec.k;
        let uz = self.u.mul(&Monomial::var_pow(Var::Z, -1));
        let li = lam.part(i);
        let lik = lam.part(i + k);
        FactoredScalar::one()
            .with_factor(q1_pow(li - 1).mul(&q3_pow(i - 2)).mul(&uz), 1)
            .with_factor(q1_pow(lik).mul(&q3_pow(i + k)).mul(&uz), 1)
            .with_factor(q1_pow(lik).mul(&q3_pow(i + k - 1)).mul(&uz), -1)
            .with_factor(q1_pow(li - 1).mul(&q3_pow(i - 1)).mul(&uz), -1)
    }

    fn support(&self, lam: &TailedPartition, i: i64, shift: i64) -> Monomial {
        self.res
            .map_monomial(&q1_pow(lam.part(i) + shift).mul(&q3_pow(i - 1)))
            .mul(&self.u)
    }
}

impl Module for ResonanceModule {
    type Label = TailedPartition;

    fn family(&self) -> &'static str {
        "resonance"
    }

    fn e_delta(&self, v: &TailedPartition) -> Result<Vec<DeltaTerm<TailedPartition>>, RepsError> {
        debug_assert!(v.is_admissible());
        let k = self.spec.k;
        let reach = v.stabilization_index() + k - 1;
        let mut out = Vec::new();
        for i in 1..=reach + k {
            let mut coeff = e_prefactor();
            for j in 1..i {
                let d = v.part(i) - v.part(j);
                let g = i - j;
                coeff.push_factor(q1_pow(d).mul(&q3_pow(g - 1)), 1);
                coeff.push_factor(q1_pow(d + 1).mul(&q3_pow(g + 1)), 1);
                coeff.push_factor(q1_pow(d).mul(&q3_pow(g)), -1);
                coeff.push_factor(q1_pow(d + 1).mul(&q3_pow(g)), -1);
            }
            let coeff = self.res.normalize_factored(&coeff)?;
            if coeff.is_zero() {
                continue;
            }
            // rows one period past the stabilized prefix must have vanished
            debug_assert!(i < reach + 1, "e-row {} survived past the tail", i);
            let target = v
                .shift_box(i, 1)
                .expect("nonzero e-step must stay weakly decreasing");
            debug_assert!(target.is_admissible(), "nonzero e-step left S^(k,r)");
            out.push(DeltaTerm {
                support: self.support(v, i, 0),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn f_delta(&self, v: &TailedPartition) -> Result<Vec<DeltaTerm<TailedPartition>>, RepsError> {
        debug_assert!(v.is_admissible());
        let k = self.spec.k;
        let stab = v.stabilization_index();
        let mut out = Vec::new();
        for i in 1..=stab + k {
            let mut coeff = f_prefactor();
            for j in (i + 1)..=(i + k) {
                let d = v.part(j) - v.part(i) + 1;
                coeff.push_factor(q1_pow(d).mul(&q3_pow(j - i + 1)), 1);
                coeff.push_factor(q1_pow(d).mul(&q3_pow(j - i)), -1);
            }
            let upper = stab + k;
            for j in (i + 1)..=upper {
                coeff = coeff.mul(&self.f_factor(v, i, j));
            }
            let coeff = self.res.normalize_factored(&coeff)?;
            if coeff.is_zero() {
                continue;
            }
            // telescoping holds for every surviving row: the first dropped
            // factor maps to 1 exactly
            debug_assert!(
                self.res
                    .normalize_factored(&self.f_factor(v, i, upper + 1))
                    .map(|f| f.is_one_value())
                    .unwrap_or(false),
                "f product does not stabilize"
            );
            debug_assert!(i <= stab, "f-row {} survived inside the tail", i);
            let target = v
                .shift_box(i, -1)
                .expect("nonzero f-step must stay weakly decreasing");
            debug_assert!(target.is_admissible(), "nonzero f-step left S^(k,r)");
            out.push(DeltaTerm {
                support: self.support(v, i, -1),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn psi_fn(&self, v: &TailedPartition) -> FactoredScalar {
        let k = self.spec.k;
        let uz = self.u.mul(&Monomial::var_pow(Var::Z, -1));
        let mut f = FactoredScalar::one();
        for i in 1..=k {
            f.push_factor(q1_pow(v.part(i)).mul(&q3_pow(i)).mul(&uz), 1);
            f.push_factor(q1_pow(v.part(i)).mul(&q3_pow(i - 1)).mul(&uz), -1);
        }
        let upper = v.stabilization_index() + k;
        for i in 1..=upper {
            f = f.mul(&self.psi_factor(v, i));
        }
        debug_assert!(
            map_psi_fn(&self.res, &self.psi_factor(v, upper + 1)).is_one_value(),
            "psi product does not stabilize"
        );
        map_psi_fn(&self.res, &f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{apply_to_basis, Gen};
    use super::*;
    use crate::coeff::Scalar;
    use crate::partition::tailed_up_to;

    fn spec12() -> TailSpec {
        TailSpec::new(1, 2, vec![]).unwrap()
    }

    #[test]
    fn vacuum_e_action_is_finite_and_well_defined() {
        // (k,r) = (1,2), λ = λ⁰: only the first row acts
        let m = ResonanceModule::new(spec12()).unwrap();
        let deltas = m.e_delta(&m.vacuum()).unwrap();
        assert_eq!(deltas.len(), 1);
        let dt = &deltas[0];
        assert_eq!(dt.target, m.vacuum().shift_box(1, 1).unwrap());
        // coefficient is (1 - q1)^{-1} -> 1/(1 - p^2) under (k,r) = (1,2)
        let expect = FactoredScalar::one()
            .with_factor(Monomial::var_pow(Var::P, 2), -1)
            .expand()
            .unwrap();
        assert!(dt.coeff.expand().unwrap().eq(&expect));
    }

    #[test]
    fn boundary_vanishing_at_admissibility_wall() {
        // λ with λ_i − λ_{i+k} = r: the e-step to λ+1_{i+k} has coefficient 0.
        let m = ResonanceModule::new(spec12()).unwrap();
        // λ = (2, 0, tail): λ₁ − λ₂ = r, so raising row 2 must vanish
        let lam = TailedPartition::new(spec12(), vec![2, 0]).unwrap();
        assert!(lam.is_admissible());
        let wall = TailedPartition::new(spec12(), vec![2, 1]).unwrap();
        assert!(!wall.is_admissible());
        let deltas = m.e_delta(&lam).unwrap();
        assert!(deltas.iter().all(|d| d.target != wall));
        for dt in &deltas {
            assert!(dt.target.is_admissible());
        }
        // f side: lowering row 1 of (2, 0) would give λ₁ − λ₂ = 1 < r
        let deltas = m.f_delta(&lam).unwrap();
        let fwall = TailedPartition::new(spec12(), vec![1, 0]).unwrap();
        assert!(deltas.iter().all(|d| d.target != fwall));
    }

    #[test]
    fn level_is_one_and_q3_to_k() {
        for (k, r) in [(1i64, 2i64), (2, 2), (2, 3)] {
            for c in TailSpec::all_offsets(k, r) {
                let spec = TailSpec::new(k, r, c).unwrap();
                let m = ResonanceModule::new(spec.clone()).unwrap();
                for lam in tailed_up_to(&spec, 2) {
                    let (lp, lm) = m.levels_on(&lam).unwrap();
                    assert!(lp.is_one());
                    // q₃^k = p^{k(r−1)}
                    let expect = Scalar::from_monomial(Monomial::var_pow(Var::P, k * (r - 1)));
                    assert!(lm.eq(&expect), "level at k={} r={}", k, r);
                }
            }
        }
    }

    #[test]
    fn limit_agrees_with_finite_modified_picture() {
        // W^{k,r}_c coefficients = W^{k,r,N,+} modified ones for N large,
        // under truncation of labels.
        for (k, r) in [(1i64, 2i64), (2, 3)] {
            for c in TailSpec::all_offsets(k, r) {
                let spec = TailSpec::new(k, r, c).unwrap();
                let m = ResonanceModule::new(spec.clone()).unwrap();
                for lam in tailed_up_to(&spec, 3) {
                    // N: cover the prefix plus two periods, aligned to the period
                    let mut n = lam.stabilization_index() + 2 * k;
                    n += (k - (n % k)) % k;
                    let fin = WkrNModule::new(spec.clone(), n as usize).unwrap();
                    let flam = Partition::zvalued(lam.truncate(n as usize)).unwrap();
                    for g in [Gen::E(0), Gen::E(1), Gen::F(0), Gen::PsiPlus(1), Gen::PsiMinus(-1)] {
                        let rl = apply_to_basis(&m, g, &lam).unwrap().collapse().unwrap();
                        let rf = apply_to_basis(&fin, g, &flam).unwrap().collapse().unwrap();
                        assert_eq!(rl.len(), rf.len(), "{} on {} (k={},r={})", g, lam, k, r);
                        for (l, cv) in &rl {
                            let lf = Partition::zvalued(l.truncate(n as usize)).unwrap();
                            let cf = rf.get(&lf).expect("matching finite label");
                            assert!(cv.eq(cf), "{} on {}: {} vs {}", g, lam, cv, cf);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn psi_fn_has_no_leftover_q_vars() {
        let spec = TailSpec::new(2, 3, vec![1]).unwrap();
        let m = ResonanceModule::new(spec.clone()).unwrap();
        for lam in tailed_up_to(&spec, 2) {
            let f = m.psi_fn(&lam);
            let bad =
                |mono: &Monomial| mono.exponent(Var::Q1) != 0 || mono.exponent(Var::Q3) != 0;
            assert!(!bad(f.mono()));
            for (a, _) in f.factors() {
                assert!(!bad(a));
            }
        }
    }
}
