//! W^N(u): the submodule of V(u) ⊗ V(uq₂⁻¹) ⊗ … ⊗ V(uq₂^{−N+1}) spanned by
//! |λ⟩ for weakly decreasing λ ∈ ℤ^N, with the explicit matrix coefficients
//!
//!   (1−q₁) e(z)|λ⟩ = Σᵢ ∏_{j<i} [(1−q₁^{λᵢ−λⱼ}q₃^{i−j−1})(1−q₁^{λᵢ−λⱼ+1}q₃^{i−j+1})]
//!                       / [(1−q₁^{λᵢ−λⱼ}q₃^{i−j})(1−q₁^{λᵢ−λⱼ+1}q₃^{i−j})]
//!                       · δ(q₁^{λᵢ}q₃^{i−1}u/z) |λ+𝟙ᵢ⟩
//!
//! and its f/ψ± mirrors. `WnPlusModule` is the same space restricted to
//! λ_N ≥ 0 with the tail-modified operators f^{[N]} = β_N f,
//! ψ^{±[N]} = β_N ψ± (β_N(z) = (1−q₂q₃^N u/z)/(1−q₃^N u/z)), the building
//! block of the Fock limit.

use super::gamma::{q1_pow, q2_mono, q3_pow};
use super::vector::{e_prefactor, f_prefactor};
use super::{DeltaTerm, Module, RepsError};
use crate::coeff::{FactoredScalar, Monomial, Var};
use crate::partition::Partition;

#[derive(Clone, Debug)]
pub struct WnModule {
    n: usize,
    u: Monomial,
}

impl WnModule {
    pub fn new(n: usize) -> Self {
        WnModule {
            n,
            u: Monomial::var(Var::U),
        }
    }

    pub fn with_param(n: usize, u: Monomial) -> Self {
        WnModule { n, u }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn param(&self) -> &Monomial {
        &self.u
    }

    /// Support of the i-th e-row: q₁^{λᵢ} q₃^{i−1} u.
    pub fn e_support(&self, lam: &[i64], i: usize) -> Monomial {
        q1_pow(lam[i - 1]).mul(&q3_pow(i as i64 - 1)).mul(&self.u)
    }

    /// The 4-factor product coefficient of ⟨λ+𝟙ᵢ|(1−q₁)e(z)|λ⟩.
    pub fn e_row_coeff(lam: &[i64], i: usize) -> FactoredScalar {
        let mut c = FactoredScalar::one();
        for j in 1..i {
            let d = lam[i - 1] - lam[j - 1];
            let g = (i - j) as i64;
            c.push_factor(q1_pow(d).mul(&q3_pow(g - 1)), 1);
            c.push_factor(q1_pow(d + 1).mul(&q3_pow(g + 1)), 1);
            c.push_factor(q1_pow(d).mul(&q3_pow(g)), -1);
            c.push_factor(q1_pow(d + 1).mul(&q3_pow(g)), -1);
        }
        c
    }

    /// The 4-factor product coefficient of −(1−q₁⁻¹)⟨λ−𝟙ᵢ|f(z)|λ⟩, rows
    /// j = i+1..N.
    pub fn f_row_coeff(lam: &[i64], i: usize, n: usize) -> FactoredScalar {
        let mut c = FactoredScalar::one();
        for j in (i + 1)..=n {
            let d = lam[j - 1] - lam[i - 1];
            let g = (j - i) as i64;
            c.push_factor(q1_pow(d + 1).mul(&q3_pow(g + 1)), 1);
            c.push_factor(q1_pow(d).mul(&q3_pow(g - 1)), 1);
            c.push_factor(q1_pow(d + 1).mul(&q3_pow(g)), -1);
            c.push_factor(q1_pow(d).mul(&q3_pow(g)), -1);
        }
        c
    }

    /// ψ eigenfunction factors of one row: (i, λᵢ) contributes
    /// (1−q₁^{λᵢ}q₃ⁱ·s)(1−q₁^{λᵢ−1}q₃^{i−2}·s) / ((1−q₁^{λᵢ}q₃^{i−1}·s)(1−q₁^{λᵢ−1}q₃^{i−1}·s)),
    /// s = u/z.
    fn psi_row(&self, f: &mut FactoredScalar, li: i64, i: i64) {
        let uz = self.u.mul(&Monomial::var_pow(Var::Z, -1));
        f.push_factor(q1_pow(li).mul(&q3_pow(i)).mul(&uz), 1);
        f.push_factor(q1_pow(li - 1).mul(&q3_pow(i - 2)).mul(&uz), 1);
        f.push_factor(q1_pow(li).mul(&q3_pow(i - 1)).mul(&uz), -1);
        f.push_factor(q1_pow(li - 1).mul(&q3_pow(i - 1)).mul(&uz), -1);
    }
}

impl Module for WnModule {
    type Label = Partition;

    fn family(&self) -> &'static str {
        "wn"
    }

    fn e_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let lam = v.parts();
        assert_eq!(lam.len(), self.n);
        let mut out = Vec::new();
        for i in 1..=self.n {
            let coeff = e_prefactor().mul(&Self::e_row_coeff(lam, i));
            if coeff.is_zero() {
                continue;
            }
            let mut parts = lam.to_vec();
            parts[i - 1] += 1;
            // nonzero coefficients never leave the weakly decreasing cone
            let target = Partition::zvalued(parts).expect("vanishing factor missing");
            out.push(DeltaTerm {
                support: self.e_support(lam, i),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn f_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let lam = v.parts();
        assert_eq!(lam.len(), self.n);
        let mut out = Vec::new();
        for i in 1..=self.n {
            let coeff = f_prefactor().mul(&Self::f_row_coeff(lam, i, self.n));
            if coeff.is_zero() {
                continue;
            }
            let mut parts = lam.to_vec();
            parts[i - 1] -= 1;
            let target = Partition::zvalued(parts).expect("vanishing factor missing");
            out.push(DeltaTerm {
                support: self.e_support(lam, i).mul(&q1_pow(-1)),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn psi_fn(&self, v: &Partition) -> FactoredScalar {
        let mut f = FactoredScalar::one();
        for i in 1..=self.n {
            self.psi_row(&mut f, v.part(i), i as i64);
        }
        f
    }
}

/// β_N(z) = (1 − q₂ q₃^N u/z)/(1 − q₃^N u/z).
pub fn beta_n(n: usize, u: &Monomial) -> FactoredScalar {
    let uz = u.mul(&Monomial::var_pow(Var::Z, -1));
    FactoredScalar::one()
        .with_factor(q2_mono().mul(&q3_pow(n as i64)).mul(&uz), 1)
        .with_factor(q3_pow(n as i64).mul(&uz), -1)
}

/// W^{N,+}(u): λ_N ≥ 0 with the modified operators e^{[N]} = e,
/// f^{[N]} = β_N f, ψ^{±[N]} = β_N ψ±.
#[derive(Clone, Debug)]
pub struct WnPlusModule {
    inner: WnModule,
}

impl WnPlusModule {
    pub fn new(n: usize) -> Self {
        WnPlusModule {
            inner: WnModule::new(n),
        }
    }

    pub fn with_param(n: usize, u: Monomial) -> Self {
        WnPlusModule {
            inner: WnModule::with_param(n, u),
        }
    }

    pub fn rank(&self) -> usize {
        self.inner.n
    }

    fn beta_at(&self, support: &Monomial) -> Result<FactoredScalar, RepsError> {
        let s_inv = support.inv();
        let num = q2_mono()
            .mul(&q3_pow(self.inner.n as i64))
            .mul(&self.inner.u)
            .mul(&s_inv);
        let den = q3_pow(self.inner.n as i64).mul(&self.inner.u).mul(&s_inv);
        if den.is_one() {
            // cannot happen for λ in the λ_N >= 0 cone
            return Err(RepsError::PoleCollision(format!(
                "beta_N pole at support {}",
                support
            )));
        }
        Ok(FactoredScalar::one()
            .with_factor(num, 1)
            .with_factor(den, -1))
    }
}

impl Module for WnPlusModule {
    type Label = Partition;

    fn family(&self) -> &'static str {
        "wn+"
    }

    fn e_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        debug_assert!(v.part(self.inner.n) >= 0);
        self.inner.e_delta(v)
    }

    fn f_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        debug_assert!(v.part(self.inner.n) >= 0);
        let mut out = Vec::new();
        for dt in self.inner.f_delta(v)? {
            let coeff = dt.coeff.mul(&self.beta_at(&dt.support)?);
            if coeff.is_zero() {
                // β_N kills exactly the step leaving the λ_N >= 0 cone
                continue;
            }
            debug_assert!(dt.target.part(self.inner.n) >= 0);
            out.push(DeltaTerm { coeff, ..dt });
        }
        Ok(out)
    }

    fn psi_fn(&self, v: &Partition) -> FactoredScalar {
        beta_n(self.inner.n, &self.inner.u).mul(&self.inner.psi_fn(v))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{apply_to_basis, Gen, SeriesCache, TensorModule};
    use super::*;
    use crate::coeff::{Scalar, Var};
    use crate::partition::zvalued_tuples;

    fn wn_label(parts: &[i64]) -> Partition {
        Partition::zvalued(parts.to_vec()).unwrap()
    }

    #[test]
    fn cannot_break_weak_decrease() {
        // N=2, λ=(0,0): the i=2 row coefficient contains (1−q1^0 q3^0) = 0
        let m = WnModule::new(2);
        let deltas = m.e_delta(&wn_label(&[0, 0])).unwrap();
        assert_eq!(deltas.len(), 1);
        assert_eq!(deltas[0].target, wn_label(&[1, 0]));
        // f on (0,0): only the i=2 row survives
        let deltas = m.f_delta(&wn_label(&[0, 0])).unwrap();
        assert_eq!(deltas.len(), 1);
        assert_eq!(deltas[0].target, wn_label(&[0, -1]));
    }

    #[test]
    fn e0_coefficient_on_one_zero() {
        // ⟨(1,1)|(1−q1)e₀|(1,0)⟩ = (1−q1⁻¹)(1−q3²)/((1−q1⁻¹q3)(1−q3))
        let c = WnModule::e_row_coeff(&[1, 0], 2).expand().unwrap();
        let expect = FactoredScalar::one()
            .with_factor(q1_pow(-1), 1)
            .with_factor(q3_pow(2), 1)
            .with_factor(q1_pow(-1).mul(&q3_pow(1)), -1)
            .with_factor(q3_pow(1), -1)
            .expand()
            .unwrap();
        assert!(c.eq(&expect));
    }

    #[test]
    fn psi_plus_one_eigenvalue_formula() {
        // ψ⁺₁|λ⟩ = (1−q₂)(1−q₃) Σᵢ q₁^{λᵢ} q₃^{i−1} u |λ⟩
        let m = WnModule::new(3);
        let lam = wn_label(&[2, 1, -1]);
        let mut cache = SeriesCache::new();
        let got = cache.psi_coeff(&m, &lam, Gen::PsiPlus(1)).unwrap();
        let mut sum = Scalar::zero();
        for i in 1..=3i64 {
            sum = sum.add(&Scalar::from_monomial(
                q1_pow(lam.part(i as usize))
                    .mul(&q3_pow(i - 1))
                    .mul(&Monomial::var(Var::U)),
            ));
        }
        let pref = FactoredScalar::one()
            .with_factor(q2_mono(), 1)
            .with_factor(Monomial::var(Var::Q3), 1)
            .expand()
            .unwrap();
        assert!(got.eq(&pref.mul(&sum)));
    }

    #[test]
    fn wn_levels_are_one_one() {
        let m = WnModule::new(3);
        for lam in [wn_label(&[0, 0, 0]), wn_label(&[3, 1, -2])] {
            let (lp, lm) = m.levels_on(&lam).unwrap();
            assert!(lp.is_one());
            assert!(lm.is_one());
        }
    }

    #[test]
    fn agrees_with_tensor_embedding() {
        // |λ⟩ = [u]_{λ₁} ⊗ [u q₂⁻¹]_{λ₂−1} ⊗ …, u_s = u (q₁q₃)^{s−1}:
        // the W^N formulas are the tensor formulas on these labels.
        let n = 3usize;
        let u = Monomial::var(Var::U);
        let params: Vec<Monomial> = (0..n)
            .map(|s| {
                u.mul(&q1_pow(s as i64)).mul(&q3_pow(s as i64))
            })
            .collect();
        let t = TensorModule::with_params(params);
        let w = WnModule::new(n);
        let to_tensor = |lam: &Partition| -> Vec<i64> {
            (1..=n)
                .map(|i| lam.part(i) - (i as i64 - 1))
                .collect()
        };
        for lam in zvalued_tuples(n, -1, 2) {
            let a = to_tensor(&lam);
            for (gw, m) in [(Gen::E(0), 0i64), (Gen::E(2), 2), (Gen::F(-1), -1)] {
                let rw = apply_to_basis(&w, gw, &lam).unwrap();
                let gt = match gw {
                    Gen::E(_) => Gen::E(m),
                    Gen::F(_) => Gen::F(m),
                    _ => unreachable!(),
                };
                let rt = apply_to_basis(&t, gt, &a).unwrap();
                let rw = rw.collapse().unwrap();
                let rt = rt.collapse().unwrap();
                // match coefficients on corresponding labels inside the cone
                for (lab, c) in &rw {
                    let at = to_tensor(lab);
                    let ct = rt.get(&at).expect("tensor image contains the label");
                    assert!(c.eq(ct), "{:?} vs {:?}: {} != {}", lab, at, c, ct);
                }
                // tensor terms outside the cone must carry zero coefficient,
                // i.e. they are absent from both collapses
                for at in rt.keys() {
                    let back: Vec<i64> = at
                        .iter()
                        .enumerate()
                        .map(|(s, v)| v + s as i64)
                        .collect();
                    if Partition::zvalued(back.clone()).is_ok() {
                        assert!(rw.contains_key(&Partition::zvalued(back).unwrap()));
                    } else {
                        panic!("tensor action left the weakly decreasing cone: {:?}", at);
                    }
                }
            }
        }
    }

    #[test]
    fn beta_kills_exit_from_positive_cone() {
        // f on λ with λ_N = 0 would leave the cone; β_N makes it vanish
        let m = WnPlusModule::new(2);
        let deltas = m.f_delta(&wn_label(&[2, 0])).unwrap();
        assert_eq!(deltas.len(), 1);
        assert_eq!(deltas[0].target, wn_label(&[1, 0]));
    }

    #[test]
    fn modified_psi_zero_modes() {
        // ψ^{+[N]}₀ = 1 and ψ^{-[N]}₀ = q₂ on every |λ⟩ with λ_N ≥ 0
        let m = WnPlusModule::new(3);
        for lam in [wn_label(&[0, 0, 0]), wn_label(&[4, 2, 1])] {
            let (lp, lm) = m.levels_on(&lam).unwrap();
            assert!(lp.is_one());
            assert!(lm.eq(&Scalar::from_monomial(q2_mono())));
        }
    }
}
