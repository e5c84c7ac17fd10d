//! The vector representation V(u), spanned by [u]_i (i ∈ ℤ):
//!
//!   (1 − q₁)   e(z)[u]ᵢ = δ(q₁ⁱu/z) [u]ᵢ₊₁
//!   −(1 − q₁⁻¹)f(z)[u]ᵢ = δ(q₁^{i−1}u/z) [u]ᵢ₋₁
//!   ψ±(z)[u]ᵢ = γ±_{i,u}(z) [u]ᵢ,
//!
//! a level (1,1) module.

use super::gamma::{gamma_fn, q1_pow};
use super::{DeltaTerm, Module, RepsError};
use crate::coeff::{rat, FactoredScalar, Monomial, Var};

#[derive(Clone, Debug)]
pub struct VectorModule {
    u: Monomial,
}

impl VectorModule {
    pub fn new() -> Self {
        VectorModule {
            u: Monomial::var(Var::U),
        }
    }

    pub fn with_param(u: Monomial) -> Self {
        VectorModule { u }
    }

    pub fn param(&self) -> &Monomial {
        &self.u
    }
}

impl Default for VectorModule {
    fn default() -> Self {
        Self::new()
    }
}

/// 1/(1−q₁) as a factored unit.
pub(crate) fn e_prefactor() -> FactoredScalar {
    FactoredScalar::one().with_factor(Monomial::var(Var::Q1), -1)
}

/// −1/(1−q₁⁻¹) as a factored unit.
pub(crate) fn f_prefactor() -> FactoredScalar {
    FactoredScalar::unit(rat(-1), Monomial::one()).with_factor(q1_pow(-1), -1)
}

impl Module for VectorModule {
    type Label = i64;

    fn family(&self) -> &'static str {
        "vector"
    }

    fn e_delta(&self, v: &i64) -> Result<Vec<DeltaTerm<i64>>, RepsError> {
        Ok(vec![DeltaTerm {
            support: q1_pow(*v).mul(&self.u),
            coeff: e_prefactor(),
            target: v + 1,
        }])
    }

    fn f_delta(&self, v: &i64) -> Result<Vec<DeltaTerm<i64>>, RepsError> {
        Ok(vec![DeltaTerm {
            support: q1_pow(v - 1).mul(&self.u),
            coeff: f_prefactor(),
            target: v - 1,
        }])
    }

    fn psi_fn(&self, v: &i64) -> FactoredScalar {
        gamma_fn(*v, &self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{apply_to_basis, Gen};
    use super::*;
    use crate::coeff::Scalar;

    #[test]
    fn e0_and_f0_on_the_basis() {
        let m = VectorModule::new();
        // e_0 [u]_0 = (1-q1)^{-1} [u]_1
        let r = apply_to_basis(&m, Gen::E(0), &0).unwrap();
        let c = r.coeff(&1).unwrap();
        assert!(c.eq(&e_prefactor().expand().unwrap()));
        // f_0 [u]_0 = -(1-q1^{-1})^{-1} [u]_{-1}
        let r = apply_to_basis(&m, Gen::F(0), &0).unwrap();
        let c = r.coeff(&-1).unwrap();
        assert!(c.eq(&f_prefactor().expand().unwrap()));
    }

    #[test]
    fn e_m_carries_the_support_power() {
        let m = VectorModule::new();
        // e_m [u]_j = (1-q1)^{-1} q1^{jm} u^m [u]_{j+1}
        for (j, mode) in [(2i64, 3i64), (-1, -2), (0, 1)] {
            let r = apply_to_basis(&m, Gen::E(mode), &j).unwrap();
            let c = r.coeff(&(j + 1)).unwrap();
            let expect = e_prefactor()
                .expand()
                .unwrap()
                .mul_monomial(&q1_pow(j * mode).mul(&Monomial::var_pow(Var::U, mode)));
            assert!(c.eq(&expect));
        }
    }

    #[test]
    fn psi_zero_modes_give_level_one_one() {
        let m = VectorModule::new();
        for i in [-3i64, 0, 4] {
            let (lp, lm) = m.levels_on(&i).unwrap();
            assert!(lp.eq(&Scalar::one()));
            assert!(lm.eq(&Scalar::one()));
        }
    }

    #[test]
    fn psi_plus_zero_acts_as_identity() {
        let m = VectorModule::new();
        let r = apply_to_basis(&m, Gen::PsiPlus(0), &5).unwrap();
        assert!(r.coeff(&5).unwrap().is_one());
    }
}
