//! Tensor products V(u₁) ⊗ … ⊗ V(u_N) with the comultiplication-derived
//! action: the s-th e-term carries the product of γ_{a_l,u_l} evaluated at
//! the support of the moving factor (l < s for e, l > s for f), and ψ± act
//! as the product of the component eigenfunctions.
//!
//! Well-definedness requires u_i/u_j ∉ q₁^ℤ; with fully symbolic parameters
//! this holds automatically, and a deliberate violation surfaces as a
//! `PoleCollision` when a γ evaluation hits its pole.

use super::gamma::{gamma_at, gamma_fn, q1_pow};
use super::vector::{e_prefactor, f_prefactor};
use super::{DeltaTerm, Module, RepsError};
use crate::coeff::{FactoredScalar, Monomial, Var};

#[derive(Clone, Debug)]
pub struct TensorModule {
    params: Vec<Monomial>,
}

impl TensorModule {
    /// Fully symbolic parameters u₁, …, u_N (each its own variable).
    pub fn symbolic(n: usize) -> Self {
        TensorModule {
            params: (1..=n)
                .map(|s| Monomial::var(Var::USub(s as u8)))
                .collect(),
        }
    }

    /// Explicit evaluation parameters (monomials). No well-definedness check
    /// happens here; a violation of u_i/u_j ∉ q₁^ℤ is reported as a
    /// `PoleCollision` by the action that hits it.
    pub fn with_params(params: Vec<Monomial>) -> Self {
        TensorModule { params }
    }

    pub fn rank(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[Monomial] {
        &self.params
    }

    /// Does the pair (i, j) violate the genericity condition with a
    /// detectable pure q₁-power ratio?
    pub fn violates_genericity(&self) -> Option<(usize, usize)> {
        for i in 0..self.params.len() {
            for j in (i + 1)..self.params.len() {
                let ratio = self.params[i].div(&self.params[j]);
                let only_q1 = ratio.vars().all(|(v, _)| v == Var::Q1);
                if only_q1 {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }
}

impl Module for TensorModule {
    type Label = Vec<i64>;

    fn family(&self) -> &'static str {
        "tensor"
    }

    fn e_delta(&self, a: &Vec<i64>) -> Result<Vec<DeltaTerm<Vec<i64>>>, RepsError> {
        assert_eq!(a.len(), self.params.len());
        let mut out = Vec::new();
        for s in 0..a.len() {
            let support = q1_pow(a[s]).mul(&self.params[s]);
            let mut coeff = e_prefactor();
            for l in 0..s {
                coeff = coeff.mul(&gamma_at(a[l], &self.params[l], &support)?);
            }
            if coeff.is_zero() {
                continue;
            }
            let mut target = a.clone();
            target[s] += 1;
            out.push(DeltaTerm {
                support,
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn f_delta(&self, a: &Vec<i64>) -> Result<Vec<DeltaTerm<Vec<i64>>>, RepsError> {
        assert_eq!(a.len(), self.params.len());
        let mut out = Vec::new();
        for s in 0..a.len() {
            let support = q1_pow(a[s] - 1).mul(&self.params[s]);
            let mut coeff = f_prefactor();
            for l in (s + 1)..a.len() {
                coeff = coeff.mul(&gamma_at(a[l], &self.params[l], &support)?);
            }
            if coeff.is_zero() {
                continue;
            }
            let mut target = a.clone();
            target[s] -= 1;
            out.push(DeltaTerm {
                support,
                coeff,
                target,
            });
        }
        Ok(out)
    }

    fn psi_fn(&self, a: &Vec<i64>) -> FactoredScalar {
        let mut f = FactoredScalar::one();
        for (s, u) in self.params.iter().enumerate() {
            f = f.mul(&gamma_fn(a[s], u));
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::super::{apply_to_basis, Gen, VectorModule};
    use super::*;

    #[test]
    fn rank_one_reduces_to_the_vector_module() {
        let t = TensorModule::with_params(vec![Monomial::var(Var::U)]);
        let v = VectorModule::new();
        for i in [-2i64, 0, 3] {
            for mode in [-1i64, 0, 2] {
                let rt = apply_to_basis(&t, Gen::E(mode), &vec![i]).unwrap();
                let rv = apply_to_basis(&v, Gen::E(mode), &i).unwrap();
                assert!(rt
                    .coeff(&vec![i + 1])
                    .unwrap()
                    .eq(&rv.coeff(&(i + 1)).unwrap()));
                let rt = apply_to_basis(&t, Gen::F(mode), &vec![i]).unwrap();
                let rv = apply_to_basis(&v, Gen::F(mode), &i).unwrap();
                assert!(rt
                    .coeff(&vec![i - 1])
                    .unwrap()
                    .eq(&rv.coeff(&(i - 1)).unwrap()));
            }
        }
    }

    #[test]
    fn first_e_term_carries_no_gamma_factors() {
        let t = TensorModule::symbolic(3);
        let deltas = t.e_delta(&vec![0, 0, 0]).unwrap();
        // s = 1 term: bare prefactor
        let first = &deltas[0];
        assert_eq!(first.target, vec![1, 0, 0]);
        assert!(first
            .coeff
            .expand()
            .unwrap()
            .eq(&super::super::vector::e_prefactor().expand().unwrap()));
        // s = 2, 3 terms carry 1 and 2 gamma factors respectively
        assert_eq!(deltas.len(), 3);
    }

    #[test]
    fn colliding_parameters_raise_pole_collision() {
        // u2 = q1 u1 violates the genericity condition; a = (1, 0) hits it
        let u1 = Monomial::var(Var::USub(1));
        let t = TensorModule::with_params(vec![u1.clone(), q1_pow(1).mul(&u1)]);
        assert_eq!(t.violates_genericity(), Some((1, 2)));
        let r = t.e_delta(&vec![1, 0]);
        assert!(matches!(r, Err(RepsError::PoleCollision(_))));
    }
}
