//! Truncated formal series expansions of factored rational functions in the
//! distinguished variable z, at z = ∞ (powers of 1/z) or z = 0 (powers of z).

use super::factored::FactoredScalar;
use super::monomial::Monomial;
use super::poly::{rat, LaurentPoly};
use super::scalar::Scalar;
use super::vars::Var;
use super::CoeffError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Taylor series in 1/z (expansion at z = ∞).
    AtInfinity,
    /// Taylor series in z (expansion at z = 0).
    AtZero,
}

/// Truncated expansion: `coeffs[m]` is the coefficient of z^{-m}
/// (AtInfinity) or z^{m} (AtZero). Coefficients are exact scalars in the
/// remaining variables.
#[derive(Clone, Debug)]
pub struct SeriesTrunc {
    pub direction: Direction,
    pub coeffs: Vec<Scalar>,
}

impl SeriesTrunc {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &Scalar {
        &self.coeffs[m]
    }

    fn constant(c: Scalar, dir: Direction, order: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        coeffs[0] = c;
        SeriesTrunc {
            direction: dir,
            coeffs,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.direction, other.direction);
        let n = self.coeffs.len();
        let mut coeffs = vec![Scalar::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        SeriesTrunc {
            direction: self.direction,
            coeffs,
        }
    }
}

/// Expand ∏(1 − aᵢ)^{eᵢ} at z = ∞ or z = 0 to order K.
///
/// Factors whose argument grows at the expansion point are rewritten first:
/// (1 − M) = (−M)(1 − M⁻¹). The accumulated unit must end up z-free,
/// otherwise the function is singular at the expansion point.
pub fn series_expand(
    f: &FactoredScalar,
    dir: Direction,
    order: usize,
) -> Result<SeriesTrunc, CoeffError> {
    if f.is_zero() {
        return Ok(SeriesTrunc::constant(Scalar::zero(), dir, order));
    }
    if f.degenerate_exponent() < 0 {
        return Err(CoeffError::DivisionByZero);
    }
    // slot exponent sign that decays at the expansion point
    let decay_sign = match dir {
        Direction::AtInfinity => -1i64,
        Direction::AtZero => 1i64,
    };
    let mut unit = FactoredScalar::unit(f.coef().clone(), f.mono().clone());
    let mut slot_factors: Vec<(Monomial, i64, i64)> = Vec::new(); // (z-free part, slot power >= 1, exponent)
    let mut const_factors: Vec<(Monomial, i64)> = Vec::new();
    for (a, e) in f.factors() {
        let ze = a.exponent(Var::Z);
        if ze == 0 {
            const_factors.push((a.clone(), e));
        } else if ze * decay_sign > 0 {
            let zfree = a.subst_var(Var::Z, &Monomial::one());
            slot_factors.push((zfree, ze * decay_sign, e));
        } else {
            // (1 - M) = (-M) (1 - 1/M); 1/M decays here.
            unit = unit.mul(&FactoredScalar::unit(rat(-1), a.clone()).pow(e));
            let inv = a.inv();
            let zfree = inv.subst_var(Var::Z, &Monomial::one());
            slot_factors.push((zfree, -ze * decay_sign, e));
        }
    }
    if unit.mono().exponent(Var::Z) != 0 {
        return Err(CoeffError::SingularExpansion);
    }
    let mut unit_scalar = unit.expand()?;
    for (a, e) in const_factors {
        let b = Scalar::from_poly(LaurentPoly::one_minus(&a));
        if e > 0 {
            unit_scalar = unit_scalar.mul(&b.pow(e));
        } else {
            if b.is_zero() {
                return Err(CoeffError::DivisionByZero);
            }
            unit_scalar = unit_scalar.mul(&b.pow(e));
        }
    }
    let mut series = SeriesTrunc::constant(unit_scalar, dir, order);
    for (m, step, e) in slot_factors {
        let factor = binomial_series(&m, step as usize, e, dir, order);
        series = series.mul(&factor);
    }
    Ok(series)
}

/// (1 − M·s^step)^e truncated at `order`, s the decaying slot.
fn binomial_series(m: &Monomial, step: usize, e: i64, dir: Direction, order: usize) -> SeriesTrunc {
    if e >= 0 {
        // finite binomial expansion
        let mut coeffs = vec![Scalar::zero(); order + 1];
        let mut binom = num::BigInt::from(1);
        let mut mk = Monomial::one();
        for k in 0..=(e as usize) {
            let idx = k * step;
            if idx > order {
                break;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = num::BigRational::from_integer(&binom * sign);
            coeffs[idx] = Scalar::from_poly(LaurentPoly::term(mk.clone(), c));
            mk = mk.mul(m);
            binom = binom * (e - k as i64) / (k as i64 + 1);
        }
        SeriesTrunc {
            direction: dir,
            coeffs,
        }
    } else {
        // geometric series for exponent -1, then power
        let mut geo = vec![Scalar::zero(); order + 1];
        let mut mk = Monomial::one();
        let mut idx = 0;
        while idx <= order {
            geo[idx] = Scalar::from_monomial(mk.clone());
            mk = mk.mul(m);
            idx += step;
        }
        let geo = SeriesTrunc {
            direction: dir,
            coeffs: geo,
        };
        let mut acc = geo.clone();
        for _ in 1..(-e) {
            acc = acc.mul(&geo);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    fn uz() -> Monomial {
        // the slot u/z
        Monomial::from_pairs([(Var::U, 1), (Var::Z, -1)])
    }

    fn q2m() -> Monomial {
        Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)])
    }

    /// Independent oracle: coefficients of num/den as a power series in the
    /// slot, by long division of the expanded polynomials.
    fn taylor_oracle(f: &FactoredScalar, dir: Direction, order: usize) -> Vec<Scalar> {
        // Substitute z -> slot^{-sign}: at infinity the series variable is
        // s = 1/z, at zero it is s = z. Work with polynomials in s of the
        // form sum c_k s^k, divide term by term.
        let s_from_z = match dir {
            Direction::AtInfinity => -1,
            Direction::AtZero => 1,
        };
        let scalar = f.expand().unwrap();
        // rewrite z exponents as slot exponents (slot = Z with flipped sign at infinity)
        let rewrite = |p: &LaurentPoly| -> LaurentPoly {
            p.subst_var(Var::Z, &Monomial::var_pow(Var::Z, s_from_z))
        };
        let num = rewrite(scalar.num());
        let den = rewrite(scalar.den());
        // normalize so den has no negative slot powers and den(0) != 0
        let shift = den
            .terms()
            .map(|(m, _)| m.exponent(Var::Z))
            .min()
            .unwrap();
        let num = num.mul_monomial(&Monomial::var_pow(Var::Z, -shift));
        let den = den.mul_monomial(&Monomial::var_pow(Var::Z, -shift));
        let num_by = num.split_by_var(Var::Z);
        let den_by = den.split_by_var(Var::Z);
        let d0 = Scalar::from_poly(den_by.get(&0).cloned().expect("regular point"));
        let mut out: Vec<Scalar> = Vec::new();
        for k in 0..=order as i64 {
            assert!(
                num_by.keys().all(|e| *e >= 0),
                "numerator has a pole at the expansion point"
            );
            let mut acc = num_by
                .get(&k)
                .cloned()
                .map(Scalar::from_poly)
                .unwrap_or_else(Scalar::zero);
            for j in 1..=k {
                if let Some(dj) = den_by.get(&j) {
                    acc = acc.sub(&Scalar::from_poly(dj.clone()).mul(&out[(k - j) as usize]));
                }
            }
            out.push(acc.div(&d0));
        }
        out
    }

    #[test]
    fn psi_empty_expansion_matches_oracle() {
        // (1 - q2 u/z)/(1 - u/z) at infinity, K=2 -> [1, (1-q2)u, (1-q2)u^2]
        let f = FactoredScalar::one()
            .with_factor(q2m().mul(&uz()), 1)
            .with_factor(uz(), -1);
        let s = series_expand(&f, Direction::AtInfinity, 2).unwrap();
        let oracle = taylor_oracle(&f, Direction::AtInfinity, 2);
        for (a, b) in s.coeffs.iter().zip(&oracle) {
            assert!(a.eq(b), "got {} want {}", a, b);
        }
        assert!(s.coeffs[0].is_one());
        let one_minus_q2 = Scalar::from_poly(LaurentPoly::one_minus(&q2m()));
        let u = Monomial::var(Var::U);
        assert!(s.coeffs[1].eq(&one_minus_q2.mul_monomial(&u)));
        assert!(s.coeffs[2].eq(&one_minus_q2.mul_monomial(&u.pow(2))));
    }

    #[test]
    fn constant_function_order_zero() {
        let f = FactoredScalar::one();
        let s = series_expand(&f, Direction::AtZero, 0).unwrap();
        assert_eq!(s.coeffs.len(), 1);
        assert!(s.coeffs[0].is_one());
    }

    #[test]
    fn at_zero_expansion_of_infinity_form() {
        // q2 (1 - q2^-1 z/u)/(1 - z/u) at zero, K=1 -> [q2, q2 - 1] (u = 1 slot)
        // built directly with z/u arguments
        let zu = uz().inv();
        let f = FactoredScalar::from_monomial(q2m())
            .with_factor(q2m().inv().mul(&zu), 1)
            .with_factor(zu, -1);
        let s = series_expand(&f, Direction::AtZero, 1).unwrap();
        let oracle = taylor_oracle(&f, Direction::AtZero, 1);
        for (a, b) in s.coeffs.iter().zip(&oracle) {
            assert!(a.eq(b));
        }
        assert!(s.coeffs[0].eq(&Scalar::from_monomial(q2m())));
        // q2 * (1/u - q2^-1/u) ... coefficient of z^1: q2*(u^-1 - q2^-1 u^-1)
        let uinv = Monomial::var_pow(Var::U, -1);
        let expect = Scalar::from_monomial(q2m().mul(&uinv))
            .sub(&Scalar::from_monomial(uinv));
        assert!(s.coeffs[1].eq(&expect));
    }

    #[test]
    fn same_function_both_directions() {
        // The at-zero expansion of (1 - q2 u/z)/(1 - u/z) via automatic
        // rewriting must match the hand-rewritten z/u form.
        let f = FactoredScalar::one()
            .with_factor(q2m().mul(&uz()), 1)
            .with_factor(uz(), -1);
        let s = series_expand(&f, Direction::AtZero, 3).unwrap();
        let oracle = taylor_oracle(&f, Direction::AtZero, 3);
        for (a, b) in s.coeffs.iter().zip(&oracle) {
            assert!(a.eq(b));
        }
        // leading coefficient is the level-type value q2
        assert!(s.coeffs[0].eq(&Scalar::from_monomial(q2m())));
    }

    #[test]
    fn positive_exponent_binomial() {
        // (1 - u/z)^2 at infinity: [1, -2u, u^2]
        let f = FactoredScalar::one().with_factor(uz(), 2);
        let s = series_expand(&f, Direction::AtInfinity, 2).unwrap();
        assert!(s.coeffs[0].is_one());
        assert!(s.coeffs[1].eq(&Scalar::from_poly(LaurentPoly::term(
            Monomial::var(Var::U),
            rat(-2)
        ))));
        assert!(s.coeffs[2].eq(&Scalar::from_monomial(Monomial::var_pow(Var::U, 2))));
    }
}
