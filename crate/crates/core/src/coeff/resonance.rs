//! Resonance specialization q₁^{1−r} q₃^{k+1} = 1.
//!
//! The specialization is realized on the exponent lattice by
//! q₁ ↦ p^{k+1}, q₃ ↦ p^{r−1}, which is faithful exactly when
//! gcd(k+1, r−1) = 1: then q₁ⁿq₃ᵐ = 1 iff (n, m) = α(1−r, k+1).
//! Matrix coefficients are normalized by cancelling zero factors
//! (1 − x^α), x = q₁^{1−r}q₃^{k+1}, pairwise between numerator and
//! denominator with limit ratio α_num/α_den, before specializing.

use super::factored::FactoredScalar;
use super::monomial::Monomial;
use super::poly::{rat_frac, LaurentPoly};
use super::scalar::Scalar;
use super::vars::Var;
use super::CoeffError;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A validated resonance pair (k ≥ 1, r ≥ 2, gcd(k+1, r−1) = 1).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Resonance {
    pub k: i64,
    pub r: i64,
}

impl Resonance {
    pub fn new(k: i64, r: i64) -> Result<Self, CoeffError> {
        if k < 1 || r < 2 || gcd(k + 1, r - 1) != 1 {
            return Err(CoeffError::UnsupportedResonance { k, r });
        }
        Ok(Resonance { k, r })
    }

    /// The basic vanishing monomial x = q₁^{1−r} q₃^{k+1}.
    pub fn zero_monomial(&self) -> Monomial {
        Monomial::from_pairs([(Var::Q1, 1 - self.r), (Var::Q3, self.k + 1)])
    }

    /// q₁^a q₃^b · rest ↦ p^{a(k+1)+b(r−1)} · rest.
    pub fn map_monomial(&self, m: &Monomial) -> Monomial {
        let a = m.exponent(Var::Q1);
        let b = m.exponent(Var::Q3);
        let rest = m
            .subst_var(Var::Q1, &Monomial::one())
            .subst_var(Var::Q3, &Monomial::one());
        debug_assert_eq!(rest.exponent(Var::P), 0, "input already contains p");
        rest.mul(&Monomial::var_pow(Var::P, a * (self.k + 1) + b * (self.r - 1)))
    }

    pub fn map_poly(&self, p: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in p.terms() {
            out.add_term(self.map_monomial(m), c.clone());
        }
        out
    }

    /// If the factor argument becomes 1 under the specialization, return its
    /// resonance order α (so arg = x^α with x the basic vanishing monomial).
    pub fn zero_factor_alpha(&self, arg: &Monomial) -> Option<i64> {
        if self.map_monomial(arg).is_one() && !arg.is_one() {
            let a = arg.exponent(Var::Q1);
            // a = alpha (1 - r); when r = 1 cannot happen (r >= 2)
            let alpha = a / (1 - self.r);
            debug_assert_eq!(alpha * (1 - self.r), a);
            debug_assert_eq!(alpha * (self.k + 1), arg.exponent(Var::Q3));
            Some(alpha)
        } else {
            None
        }
    }

    /// Specialize a factored scalar to ℚ(p, u, …): zero factors are cancelled
    /// pairwise between numerator and denominator with limit ratio
    /// α_num/α_den; a surplus zero factor in the numerator gives 0, in the
    /// denominator an error. A literal degenerate factor (1−1) counts as a
    /// zero factor that contributes no finite ratio.
    pub fn normalize_factored(&self, f: &FactoredScalar) -> Result<FactoredScalar, CoeffError> {
        if f.is_zero() {
            return Ok(FactoredScalar::zero());
        }
        let mut num_alphas: Vec<i64> = Vec::new();
        let mut den_alphas: Vec<i64> = Vec::new();
        let mut out = FactoredScalar::unit(f.coef().clone(), self.map_monomial(f.mono()));
        for (arg, e) in f.factors() {
            if arg.is_one() {
                // literal (1-1)^e: behaves as an unmatched hard zero
                if e > 0 {
                    return Ok(FactoredScalar::zero());
                }
                return Err(CoeffError::ResonanceSingular);
            }
            if let Some(alpha) = self.zero_factor_alpha(arg) {
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        num_alphas.push(alpha);
                    } else {
                        den_alphas.push(alpha);
                    }
                }
            } else {
                out.push_factor(self.map_monomial(arg), e);
            }
        }
        // Pair up zero factors; the product of the pairwise limits is
        // (prod num alphas)/(prod den alphas) for the paired prefix.
        while !num_alphas.is_empty() && !den_alphas.is_empty() {
            let an = num_alphas.pop().unwrap();
            let ad = den_alphas.pop().unwrap();
            out = out.scale(&rat_frac(an, ad));
        }
        if !num_alphas.is_empty() {
            return Ok(FactoredScalar::zero());
        }
        if !den_alphas.is_empty() {
            return Err(CoeffError::ResonanceSingular);
        }
        Ok(out)
    }

    /// Full normalization to a rational function over ℚ(p, u).
    pub fn normalize(&self, f: &FactoredScalar) -> Result<Scalar, CoeffError> {
        self.normalize_factored(f)?.expand()
    }

    /// Specialize an already-expanded scalar. Common powers of (1 − x) are
    /// divided out of numerator and denominator first; a leftover vanishing
    /// denominator is an error.
    pub fn specialize_scalar(&self, s: &Scalar) -> Result<Scalar, CoeffError> {
        let x = self.zero_monomial();
        let (jn, num) = s.num().divide_out_all(&x);
        let (jd, den) = s.den().divide_out_all(&x);
        let num_p = self.map_poly(&num);
        let den_p = self.map_poly(&den);
        if den_p.is_zero() {
            return Err(CoeffError::ResonanceSingular);
        }
        use std::cmp::Ordering;
        match jn.cmp(&jd) {
            Ordering::Less => Err(CoeffError::ResonanceSingular),
            Ordering::Greater => Ok(Scalar::zero()),
            Ordering::Equal => Ok(Scalar::new(num_p, den_p)),
        }
    }

    /// Does the rational function restrict to 0 on the resonance locus?
    pub fn scalar_vanishes(&self, s: &Scalar) -> Result<bool, CoeffError> {
        if s.is_zero() {
            return Ok(true);
        }
        let x = self.zero_monomial();
        let (jn, num) = s.num().divide_out_all(&x);
        let (jd, _) = s.den().divide_out_all(&x);
        if jn < jd {
            return Err(CoeffError::ResonanceSingular);
        }
        Ok(jn > jd || self.map_poly(&num).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    #[test]
    fn rejects_non_coprime_pairs() {
        // (k, r) = (1, 3): gcd(2, 2) = 2
        assert!(matches!(
            Resonance::new(1, 3),
            Err(CoeffError::UnsupportedResonance { .. })
        ));
        assert!(Resonance::new(1, 2).is_ok());
        assert!(Resonance::new(2, 2).is_ok());
        assert!(Resonance::new(2, 3).is_ok());
    }

    #[test]
    fn matched_zero_pair_cancels_to_one() {
        let res = Resonance::new(1, 2).unwrap();
        let x = res.zero_monomial();
        let f = FactoredScalar::one().with_factor(x.clone(), 1).with_factor(x, -1);
        let s = res.normalize(&f).unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn surplus_numerator_zero_factor_gives_zero() {
        let res = Resonance::new(2, 3).unwrap();
        let x = res.zero_monomial();
        let f = FactoredScalar::unit(rat(5), Monomial::var(Var::U)).with_factor(x, 1);
        assert!(res.normalize(&f).unwrap().is_zero());
    }

    #[test]
    fn surplus_denominator_zero_factor_errors() {
        let res = Resonance::new(1, 2).unwrap();
        let x = res.zero_monomial();
        let f = FactoredScalar::one().with_factor(x, -1);
        assert!(matches!(
            res.normalize(&f),
            Err(CoeffError::ResonanceSingular)
        ));
    }

    #[test]
    fn squared_over_single_gives_limit_two() {
        // (1 - x^2)/(1 - x) -> 2 at x -> 1; oracle: exact polynomial division
        let res = Resonance::new(1, 2).unwrap();
        let x = res.zero_monomial();
        let f = FactoredScalar::one()
            .with_factor(x.pow(2), 1)
            .with_factor(x.clone(), -1);
        let got = res.normalize(&f).unwrap();
        // oracle: (1 - x^2)/(1 - x) = 1 + x as polynomials, then x -> 1
        let quotient = LaurentPoly::one_minus(&x.pow(2)).divide_exact(&x).unwrap();
        let at_one: num::BigRational = quotient
            .terms()
            .map(|(_, c)| c.clone())
            .fold(rat(0), |a, b| a + b);
        assert!(got.eq(&Scalar::from_rat(at_one.clone())));
        assert_eq!(at_one, rat(2));
    }

    #[test]
    fn plain_factors_specialize_by_exponent_map() {
        // no zero factors: normalize == expand then q1 -> p^{k+1}, q3 -> p^{r-1}
        let res = Resonance::new(2, 3).unwrap();
        let f = FactoredScalar::unit(rat(3), Monomial::var(Var::Q1))
            .with_factor(Monomial::from_pairs([(Var::Q1, 1), (Var::Q3, -2)]), 1)
            .with_factor(Monomial::from_pairs([(Var::Q3, 1), (Var::U, 1)]), -1);
        let a = res.normalize(&f).unwrap();
        let expanded = f.expand().unwrap();
        let b = Scalar::new(res.map_poly(expanded.num()), res.map_poly(expanded.den()));
        assert!(a.eq(&b));
    }

    #[test]
    fn scalar_vanishing_on_locus() {
        let res = Resonance::new(1, 2).unwrap();
        let x = res.zero_monomial();
        // (1 - x) * (1 + q1) vanishes on the locus
        let mut one_plus_q1 = LaurentPoly::one();
        one_plus_q1.add_term(Monomial::var(Var::Q1), rat(1));
        let s = Scalar::from_poly(LaurentPoly::one_minus(&x).mul(&one_plus_q1));
        assert!(res.scalar_vanishes(&s).unwrap());
        // (1 + q1) does not
        assert!(!res.scalar_vanishes(&Scalar::from_poly(one_plus_q1)).unwrap());
    }
}
