//! The rational functions γ_{i,u}(z) driving the vector representation and
//! all of its tensor constructions:
//!
//!   γ_{i,u}(z) = (1 − q₃q₁ⁱu/z)(1 − q₂q₁ⁱu/z) / ((1 − q₁^{i−1}u/z)(1 − q₁ⁱu/z)),
//!
//! with q₂ = q₁⁻¹q₃⁻¹ eliminated.

use super::RepsError;
use crate::coeff::{FactoredScalar, Monomial, Var};

pub(crate) fn q1_pow(e: i64) -> Monomial {
    Monomial::var_pow(Var::Q1, e)
}

pub(crate) fn q2_mono() -> Monomial {
    Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)])
}

pub(crate) fn q3_pow(e: i64) -> Monomial {
    Monomial::var_pow(Var::Q3, e)
}

/// u/z times a prefactor monomial.
fn over_z(m: Monomial) -> Monomial {
    m.mul(&Monomial::var_pow(Var::Z, -1))
}

/// γ_{i,u}(z) as a factored rational function of z.
pub fn gamma_fn(i: i64, u: &Monomial) -> FactoredScalar {
    let base = q1_pow(i).mul(u);
    FactoredScalar::one()
        .with_factor(over_z(Monomial::var(Var::Q3).mul(&base)), 1)
        .with_factor(over_z(q2_mono().mul(&base)), 1)
        .with_factor(over_z(q1_pow(-1).mul(&base)), -1)
        .with_factor(over_z(base), -1)
}

/// γ_{i,u} evaluated at z = s (a monomial). A vanishing denominator factor
/// is a pole collision; a vanishing numerator factor is kept (the result is
/// the zero coefficient).
pub fn gamma_at(i: i64, u: &Monomial, s: &Monomial) -> Result<FactoredScalar, RepsError> {
    let base = q1_pow(i).mul(u);
    let sinv = s.inv();
    let num1 = Monomial::var(Var::Q3).mul(&base).mul(&sinv);
    let num2 = q2_mono().mul(&base).mul(&sinv);
    let den1 = q1_pow(-1).mul(&base).mul(&sinv);
    let den2 = base.mul(&sinv);
    if den1.is_one() || den2.is_one() {
        return Err(RepsError::PoleCollision(format!(
            "gamma_{{{},{}}} evaluated at its pole z = {}",
            i, u, s
        )));
    }
    Ok(FactoredScalar::one()
        .with_factor(num1, 1)
        .with_factor(num2, 1)
        .with_factor(den1, -1)
        .with_factor(den2, -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{series_expand, Direction, Scalar};

    fn u() -> Monomial {
        Monomial::var(Var::U)
    }

    #[test]
    fn gamma_zero_has_the_four_documented_factors() {
        let g = gamma_fn(0, &u());
        let uz = Monomial::from_pairs([(Var::U, 1), (Var::Z, -1)]);
        let expect = FactoredScalar::one()
            .with_factor(Monomial::var(Var::Q3).mul(&uz), 1)
            .with_factor(q2_mono().mul(&uz), 1)
            .with_factor(q1_pow(-1).mul(&uz), -1)
            .with_factor(uz, -1);
        assert_eq!(g, expect);
    }

    #[test]
    fn gamma_at_own_support_is_a_pole() {
        // z = q1^i u hits the second denominator factor
        let s = q1_pow(3).mul(&u());
        assert!(matches!(
            gamma_at(3, &u(), &s),
            Err(RepsError::PoleCollision(_))
        ));
        // z = q1^{i-1} u hits the first
        let s = q1_pow(2).mul(&u());
        assert!(matches!(
            gamma_at(3, &u(), &s),
            Err(RepsError::PoleCollision(_))
        ));
    }

    #[test]
    fn gamma_shift_identity() {
        // γ_{a_t,u_t}(q₁^{a_s−1}u_s) γ_{a_s−1,u_s}(q₁^{a_t}u_t)
        //   = γ_{a_s,u_s}(q₁^{a_t}u_t) γ_{a_t+1,u_t}(q₁^{a_s−1}u_s)
        let us = Monomial::var(Var::USub(1));
        let ut = Monomial::var(Var::USub(2));
        for (a_s, a_t) in [(0i64, 0i64), (1, -1), (2, 3), (-2, 0)] {
            let zs = q1_pow(a_s - 1).mul(&us);
            let zt = q1_pow(a_t).mul(&ut);
            let lhs = gamma_at(a_t, &ut, &zs)
                .unwrap()
                .mul(&gamma_at(a_s - 1, &us, &zt).unwrap());
            let rhs = gamma_at(a_s, &us, &zt)
                .unwrap()
                .mul(&gamma_at(a_t + 1, &ut, &zs).unwrap());
            assert!(
                lhs.expand().unwrap().eq(&rhs.expand().unwrap()),
                "shift identity fails at ({}, {})",
                a_s,
                a_t
            );
        }
    }

    #[test]
    fn gamma_level_values_are_one() {
        // γ is 1 at z = ∞ and at z = 0 (level (1,1) of the vector module)
        for i in [-2i64, 0, 5] {
            let g = gamma_fn(i, &u());
            let plus = series_expand(&g, Direction::AtInfinity, 0).unwrap();
            let minus = series_expand(&g, Direction::AtZero, 0).unwrap();
            assert!(plus.coeffs[0].eq(&Scalar::one()));
            assert!(minus.coeffs[0].eq(&Scalar::one()));
        }
    }
}
