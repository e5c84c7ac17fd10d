//! The Fock module ℱ(u): the inductive limit of W^{N,+}(u) under the
//! tail-appending embeddings, with level (1, q₂).
//!
//! All infinite products in the limit matrix coefficients telescope: factors
//! beyond row ℓ(λ)+1 are identically 1. The implementation truncates there
//! and *asserts* the first dropped factor is 1 instead of trusting the
//! derivation.

use super::gamma::{gamma_fn, q1_pow, q2_mono, q3_pow};
use super::vector::{e_prefactor, f_prefactor};
use super::wn::WnModule;
use super::{DeltaTerm, Module, RepsError};
use crate::coeff::{FactoredScalar, Monomial, Var};
use crate::partition::Partition;

#[derive(Clone, Debug)]
pub struct FockModule {
    u: Monomial,
}

impl FockModule {
    pub fn new() -> Self {
        FockModule {
            u: Monomial::var(Var::U),
        }
    }

    pub fn with_param(u: Monomial) -> Self {
        FockModule { u }
    }

    pub fn param(&self) -> &Monomial {
        &self.u
    }

    fn uz(&self) -> Monomial {
        self.u.mul(&Monomial::var_pow(Var::Z, -1))
    }

    /// One factor of the f-coefficient product at row j (parts read with the
    /// zero tail):
    ///   (1−q₁^{λⱼ−λᵢ+1}q₃^{j−i+1})(1−q₁^{λⱼ₊₁−λᵢ}q₃^{j−i})
    /// / (1−q₁^{λⱼ₊₁−λᵢ+1}q₃^{j−i+1})(1−q₁^{λⱼ−λᵢ}q₃^{j−i})
    fn f_factor(lam: &Partition, i: usize, j: usize) -> FactoredScalar {
        let li = lam.part(i);
        let lj = lam.part(j);
        let lj1 = lam.part(j + 1);
        let g = (j - i) as i64;
        FactoredScalar::one()
            .with_factor(q1_pow(lj - li + 1).mul(&q3_pow(g + 1)), 1)
            .with_factor(q1_pow(lj1 - li).mul(&q3_pow(g)), 1)
            .with_factor(q1_pow(lj1 - li + 1).mul(&q3_pow(g + 1)), -1)
            .with_factor(q1_pow(lj - li).mul(&q3_pow(g)), -1)
    }

    /// One factor of the ψ⁺ eigenfunction product at row i:
    ///   (1−q₁^{λᵢ}q₃ⁱ·s)(1−q₁^{λᵢ₊₁−1}q₃^{i−1}·s)
    /// / (1−q₁^{λᵢ₊₁}q₃ⁱ·s)(1−q₁^{λᵢ−1}q₃^{i−1}·s),  s = u/z.
    fn psi_factor(&self, lam: &Partition, i: usize) -> FactoredScalar {
        let li = lam.part(i);
        let li1 = lam.part(i + 1);
        let uz = self.uz();
        let gi = i as i64;
        FactoredScalar::one()
            .with_factor(q1_pow(li).mul(&q3_pow(gi)).mul(&uz), 1)
            .with_factor(q1_pow(li1 - 1).mul(&q3_pow(gi - 1)).mul(&uz), 1)
            .with_factor(q1_pow(li1).mul(&q3_pow(gi)).mul(&uz), -1)
            .with_factor(q1_pow(li - 1).mul(&q3_pow(gi - 1)).mul(&uz), -1)
    }
}

impl Default for FockModule {
    fn default() -> Self {
        Self::new()
    }
}

impl Module for FockModule {
    type Label = Partition;

    fn family(&self) -> &'static str {
        "fock"
    }

    /// Same row coefficients as W^N; rows i = 1..ℓ(λ)+1 can act.
    fn e_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let ell = v.len();
        let mut out = Vec::new();
        for i in 1..=ell + 1 {
            let padded = v.padded(ell + 1);
            let coeff = e_prefactor().mul(&WnModule::e_row_coeff(&padded, i));
            if coeff.is_zero() {
                continue;
            }
            let target = v.add_box(i).expect("vanishing factor missing");
            out.push(DeltaTerm {
                support: q1_pow(v.part(i)).mul(&q3_pow(i as i64 - 1)).mul(&self.u),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn f_delta(&self, v: &Partition) -> Result<Vec<DeltaTerm<Partition>>, RepsError> {
        let ell = v.len();
        let mut out = Vec::new();
        for i in 1..=ell {
            // prefactor (1−q₁^{λ_{i+1}−λᵢ}) / (1−q₁^{λ_{i+1}−λᵢ+1}q₃)
            let d = v.part(i + 1) - v.part(i);
            let mut coeff = f_prefactor()
                .with_factor(q1_pow(d), 1)
                .with_factor(q1_pow(d + 1).mul(&q3_pow(1)), -1);
            for j in (i + 1)..=(ell + 1) {
                coeff = coeff.mul(&Self::f_factor(v, i, j));
            }
            // telescoping: the next factor must be identically 1
            debug_assert!(
                Self::f_factor(v, i, ell + 2).is_one_value(),
                "f product does not stabilize at row {}",
                ell + 2
            );
            if coeff.is_zero() {
                continue;
            }
            let target = v.remove_box(i).expect("vanishing factor missing");
            out.push(DeltaTerm {
                support: q1_pow(v.part(i) - 1)
                    .mul(&q3_pow(i as i64 - 1))
                    .mul(&self.u),
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn psi_fn(&self, v: &Partition) -> FactoredScalar {
        let ell = v.len();
        let uz = self.uz();
        // prefactor (1−q₁^{λ₁−1}q₃⁻¹·s)/(1−q₁^{λ₁}·s)
        let mut f = FactoredScalar::one()
            .with_factor(q1_pow(v.part(1) - 1).mul(&q3_pow(-1)).mul(&uz), 1)
            .with_factor(q1_pow(v.part(1)).mul(&uz), -1);
        for i in 1..=ell + 1 {
            f = f.mul(&self.psi_factor(v, i));
        }
        debug_assert!(
            self.psi_factor(v, ell + 2).is_one_value(),
            "psi product does not stabilize"
        );
        f
    }
}

/// Check the factorized forms of the limit coefficients against the direct
/// ones, for one shape:
///   ⟨λ|ψ±(z)|λ⟩ = ψ±_∅(u/z) ∏ᵢ γ-ratio of row i,
///   ⟨λ+𝟙ᵢ|e(z)|λ⟩ = component e-coefficient · ∏_{j<i} ⟨λ|ψ⁻(z)ⱼ|λ⟩ at the support,
///   ⟨λ|f(z)|λ+𝟙ᵢ⟩ = component f-coefficient · ψ⁺_∅(q₃ⁱu/z) ∏_{j>i} γ-ratio at the support.
pub fn fock_factorized_check(lam: &Partition, u: &Monomial) -> Result<bool, RepsError> {
    let fock = FockModule::with_param(u.clone());
    let ell = lam.len();
    // Row data of the tensor picture: component i is [u q₂^{-i+1}]_{λᵢ-i+1},
    // whose eigenfunction is γ_{λᵢ-i+1, u(q₁q₃)^{i-1}}.
    let comp = |l: &Partition, i: usize| -> FactoredScalar {
        let shift = q1_pow(i as i64 - 1).mul(&q3_pow(i as i64 - 1));
        gamma_fn(l.part(i) - i as i64 + 1, &shift.mul(u))
    };
    let vacuum = Partition::empty();

    // psi: ψ_∅(u/z) · ∏_{i=1..ℓ} comp_i(λ)/comp_i(∅), the tail ratio is 1
    let uz = u.mul(&Monomial::var_pow(Var::Z, -1));
    let psi_empty = FactoredScalar::one()
        .with_factor(q2_mono().mul(&uz), 1)
        .with_factor(uz.clone(), -1);
    let mut fact = psi_empty.clone();
    for i in 1..=ell {
        fact = fact.mul(&comp(lam, i)).mul(&comp(&vacuum, i).inv());
    }
    debug_assert!(comp(lam, ell + 1)
        .mul(&comp(&vacuum, ell + 1).inv())
        .is_one_value());
    if !fact.expand()?.eq(&fock.psi_fn(lam).expand()?) {
        return Ok(false);
    }

    // e rows: ⟨λ+𝟙ᵢ|(1−q₁)e(z)|λ⟩ at support S = q₁^{λᵢ}q₃^{i−1}u equals
    // ∏_{j<i} comp_j(λ)(S).
    for dt in fock.e_delta(lam)? {
        let i = (1..=ell + 1)
            .find(|&i| dt.target.part(i) == lam.part(i) + 1)
            .expect("e target adds one box");
        let mut fact = FactoredScalar::one();
        for j in 1..i {
            let g = comp(lam, j);
            fact = fact.mul(&eval_at_z(&g, &dt.support)?);
        }
        let direct = dt.coeff.mul(&e_prefactor().inv());
        if !fact.expand()?.eq(&direct.expand()?) {
            return Ok(false);
        }
    }

    // f rows: −(1−q₁⁻¹)⟨λ−𝟙ᵢ|f(z)|λ⟩ at support S = q₁^{λᵢ−1}q₃^{i−1}u equals
    // the component coefficient 1 times ψ⁺_∅(q₃ⁱu/S) ∏_{j>i} ratio_j(λ−𝟙ᵢ)(S);
    // here the bra state is μ = λ−𝟙ᵢ and the formula factorizes ⟨μ|f(z)|λ⟩.
    for dt in fock.f_delta(lam)? {
        let mu = &dt.target;
        let i = (1..=ell)
            .find(|&i| mu.part(i) == lam.part(i) - 1)
            .expect("f target removes one box");
        // ψ⁺_∅ evaluated at q₃^i u / S
        let arg = q3_pow(i as i64).mul(u).mul(&dt.support.inv());
        let mut fact = FactoredScalar::one()
            .with_factor(q2_mono().mul(&arg), 1)
            .with_factor(arg, -1);
        let upper = ell + 1;
        for j in (i + 1)..=upper {
            let g = comp(mu, j).mul(&comp(&vacuum, j).inv());
            fact = fact.mul(&eval_at_z(&g, &dt.support)?);
        }
        debug_assert!(comp(mu, upper + 1)
            .mul(&comp(&vacuum, upper + 1).inv())
            .is_one_value());
        let direct = dt.coeff.mul(&f_prefactor().inv());
        if !fact.expand()?.eq(&direct.expand()?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluate a factored function of z at z = S.
pub(crate) fn eval_at_z(f: &FactoredScalar, s: &Monomial) -> Result<FactoredScalar, RepsError> {
    let v = f.subst_var(Var::Z, s);
    if v.degenerate_exponent() < 0 {
        return Err(RepsError::PoleCollision(format!(
            "evaluation at z = {} hits a pole",
            s
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::{apply_to_basis, Gen};
    use super::*;
    use crate::coeff::Scalar;
    use crate::partition::partitions_up_to;

    fn p(parts: &[i64]) -> Partition {
        Partition::nonneg(parts.to_vec()).unwrap()
    }

    #[test]
    fn levels_are_one_q2() {
        let m = FockModule::new();
        for lam in [p(&[]), p(&[1]), p(&[3, 2, 2])] {
            let (lp, lm) = m.levels_on(&lam).unwrap();
            assert!(lp.is_one());
            assert!(lm.eq(&Scalar::from_monomial(q2_mono())));
        }
    }

    #[test]
    fn vacuum_psi_is_the_empty_eigenfunction() {
        // ψ±(z)|∅⟩ = (1−q₂u/z)/(1−u/z) expanded both ways
        let m = FockModule::new();
        let uz = Monomial::from_pairs([(Var::U, 1), (Var::Z, -1)]);
        let expect = FactoredScalar::one()
            .with_factor(q2_mono().mul(&uz), 1)
            .with_factor(uz, -1);
        assert!(m.psi_fn(&p(&[])).expand().unwrap().eq(&expect.expand().unwrap()));
    }

    #[test]
    fn e_on_vacuum_adds_the_first_box() {
        // e_m|∅⟩ = (1−q₁)⁻¹ uᵐ |(1)⟩
        let m = FockModule::new();
        for mode in [-2i64, 0, 3] {
            let r = apply_to_basis(&m, Gen::E(mode), &p(&[])).unwrap();
            let c = r.coeff(&p(&[1])).unwrap();
            let expect = e_prefactor()
                .expand()
                .unwrap()
                .mul_monomial(&Monomial::var_pow(Var::U, mode));
            assert!(c.eq(&expect));
        }
        // and f|∅⟩ = 0
        let r = apply_to_basis(&m, Gen::F(0), &p(&[])).unwrap();
        assert!(r.is_zero().unwrap());
    }

    #[test]
    fn factorized_forms_agree() {
        let u = Monomial::var(Var::U);
        for lam in [p(&[]), p(&[1]), p(&[2, 1]), p(&[3, 1, 1])] {
            assert!(fock_factorized_check(&lam, &u).unwrap(), "shape {}", lam);
        }
    }

    #[test]
    fn fock_agrees_with_modified_wn_for_large_n() {
        use super::super::WnPlusModule;
        // for N > ℓ(λ) + mode reach, the limit coefficients equal the
        // W^{N,+} modified ones under zero-padding
        let n = 6usize;
        let wp = WnPlusModule::new(n);
        let fock = FockModule::new();
        for lam in partitions_up_to(4) {
            let padded = Partition::zvalued(lam.padded(n)).unwrap();
            for g in [Gen::E(1), Gen::F(-1), Gen::PsiPlus(2), Gen::PsiMinus(-2)] {
                let rf = apply_to_basis(&fock, g, &lam).unwrap().collapse().unwrap();
                let rw = apply_to_basis(&wp, g, &padded).unwrap().collapse().unwrap();
                assert_eq!(rf.len(), rw.len(), "{} on {}", g, lam);
                for (l, c) in &rf {
                    let lw = Partition::zvalued(l.padded(n)).unwrap();
                    assert!(rw.get(&lw).unwrap().eq(c), "{} on {}", g, lam);
                }
            }
        }
    }
}
