//! Product-form scalars c·m·∏(1 − aᵢ)^{eᵢ}.
//!
//! All matrix coefficients of the module actions are binomial products of
//! this shape. Keeping them factored until they must be added makes the
//! telescoping and resonance cancellations structural instead of numeric,
//! and lets sums extract the common denominator before any expansion.

use super::monomial::Monomial;
use super::poly::{LaurentPoly, Rat};
use super::scalar::Scalar;
use super::CoeffError;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// unit.0 · unit.1 · ∏ (1 − arg)^exp. A factor with arg = 1 is degenerate
/// (the whole value is 0 when its exponent is positive, undefined when
/// negative); degenerate factors are kept so callers can inspect them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredScalar {
    coef: Rat,
    mono: Monomial,
    factors: BTreeMap<Monomial, i64>,
}

impl FactoredScalar {
    pub fn one() -> Self {
        FactoredScalar {
            coef: Rat::one(),
            mono: Monomial::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        FactoredScalar {
            coef: Rat::zero(),
            mono: Monomial::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn unit(coef: Rat, mono: Monomial) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        FactoredScalar {
            coef,
            mono,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_monomial(mono: Monomial) -> Self {
        Self::unit(Rat::one(), mono)
    }

    /// Multiply by (1 − arg)^exp.
    pub fn with_factor(mut self, arg: Monomial, exp: i64) -> Self {
        self.push_factor(arg, exp);
        self
    }

    pub fn push_factor(&mut self, arg: Monomial, exp: i64) {
        if self.coef.is_zero() || exp == 0 {
            return;
        }
        let e = self.factors.entry(arg).or_insert(0);
        *e += exp;
        if *e == 0 {
            // remove the key we just zeroed
            let k: Vec<Monomial> = self
                .factors
                .iter()
                .filter(|(_, v)| **v == 0)
                .map(|(k, _)| k.clone())
                .collect();
            for k in k {
                self.factors.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero() || self.factors.get(&Monomial::one()).map_or(false, |e| *e > 0)
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    pub fn mono(&self) -> &Monomial {
        &self.mono
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.factors.iter().map(|(m, e)| (m, *e))
    }

    /// Factors whose argument is the unit monomial, i.e. literal (1−1) terms.
    pub fn degenerate_exponent(&self) -> i64 {
        self.factors.get(&Monomial::one()).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coef.is_zero() || other.coef.is_zero() {
            return Self::zero();
        }
        let mut r = FactoredScalar {
            coef: &self.coef * &other.coef,
            mono: self.mono.mul(&other.mono),
            factors: self.factors.clone(),
        };
        for (a, e) in &other.factors {
            r.push_factor(a.clone(), *e);
        }
        r
    }

    pub fn inv(&self) -> Self {
        assert!(!self.coef.is_zero(), "inverting zero");
        FactoredScalar {
            coef: self.coef.recip(),
            mono: self.mono.inv(),
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FactoredScalar {
            coef: -&self.coef,
            mono: self.mono.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredScalar {
            coef: &self.coef * c,
            mono: self.mono.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        FactoredScalar {
            coef: self.coef.clone(),
            mono: self.mono.mul(m),
            factors: self.factors.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs() as i64;
        let mut coef = Rat::one();
        for _ in 0..k {
            coef *= &base.coef;
        }
        FactoredScalar {
            coef,
            mono: base.mono.pow(k),
            factors: base.factors.iter().map(|(a, e)| (a.clone(), e * k)).collect(),
        }
    }

    /// Substitute a variable by a monomial in the unit and in every factor
    /// argument. Arguments may become degenerate (= 1); they are kept.
    pub fn subst_var(&self, v: super::vars::Var, by: &Monomial) -> Self {
        let mut r = FactoredScalar::unit(self.coef.clone(), self.mono.subst_var(v, by));
        for (a, e) in &self.factors {
            r.push_factor(a.subst_var(v, by), *e);
        }
        r
    }

    /// Exact expansion to a rational function. Positive-exponent factors land
    /// in the numerator, negative in the denominator. A degenerate factor in
    /// the numerator gives 0; in the denominator it is a division by zero.
    pub fn expand(&self) -> Result<Scalar, CoeffError> {
        if self.coef.is_zero() {
            return Ok(Scalar::zero());
        }
        let de = self.degenerate_exponent();
        if de < 0 {
            return Err(CoeffError::DivisionByZero);
        }
        if de > 0 {
            return Ok(Scalar::zero());
        }
        let mut num = LaurentPoly::term(self.mono.clone(), self.coef.clone());
        let mut den = LaurentPoly::one();
        for (a, e) in &self.factors {
            let b = LaurentPoly::one_minus(a).pow(e.unsigned_abs() as u32);
            if *e > 0 {
                num = num.mul(&b);
            } else {
                den = den.mul(&b);
            }
        }
        Ok(Scalar::new(num, den))
    }

    /// Value-level equality through expansion.
    pub fn eq_value(&self, other: &Self) -> bool {
        match (self.expand(), other.expand()) {
            (Ok(a), Ok(b)) => a.eq(&b),
            _ => false,
        }
    }

    pub fn is_one_value(&self) -> bool {
        self.eq_value(&FactoredScalar::one())
    }

    /// Evaluate at a rational point; None if any denominator factor vanishes.
    pub fn eval<F: Fn(super::vars::Var) -> Rat>(&self, assign: &F) -> Option<Rat> {
        if self.coef.is_zero() {
            return Some(Rat::zero());
        }
        let mut v = &self.coef * LaurentPoly::monomial(self.mono.clone()).eval(assign);
        for (a, e) in &self.factors {
            let f = Rat::one() - LaurentPoly::monomial(a.clone()).eval(assign);
            if f.is_zero() {
                if *e > 0 {
                    return Some(Rat::zero());
                }
                return None;
            }
            let p = num::pow::pow(f, e.unsigned_abs() as usize);
            if *e > 0 {
                v *= p;
            } else {
                v /= p;
            }
        }
        Some(v)
    }
}

impl fmt::Display for FactoredScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "0");
        }
        if self.coef.denom().is_one() {
            write!(f, "{}", self.coef.numer())?;
        } else {
            write!(f, "{}/{}", self.coef.numer(), self.coef.denom())?;
        }
        if !self.mono.is_one() {
            write!(f, "*{}", self.mono)?;
        }
        for (a, e) in &self.factors {
            if *e == 1 {
                write!(f, "*(1-{})", a)?;
            } else {
                write!(f, "*(1-{})^{}", a, e)?;
            }
        }
        Ok(())
    }
}

/// One addend of a linear-combination coefficient: `fac · rest`.
/// The factored part carries the structural binomial products; `rest`
/// collects series coefficients and other already-expanded scalars.
#[derive(Clone, Debug)]
pub struct FTerm {
    pub fac: FactoredScalar,
    pub rest: Scalar,
}

impl FTerm {
    pub fn from_factored(fac: FactoredScalar) -> Self {
        FTerm {
            fac,
            rest: Scalar::one(),
        }
    }

    pub fn from_scalar(rest: Scalar) -> Self {
        FTerm {
            fac: FactoredScalar::one(),
            rest,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.fac.is_zero() || self.rest.is_zero()
    }

    pub fn mul_factored(&self, f: &FactoredScalar) -> Self {
        FTerm {
            fac: self.fac.mul(f),
            rest: self.rest.clone(),
        }
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Self {
        FTerm {
            fac: self.fac.clone(),
            rest: self.rest.mul(s),
        }
    }

    pub fn neg(&self) -> Self {
        FTerm {
            fac: self.fac.neg(),
            rest: self.rest.clone(),
        }
    }

    pub fn to_scalar(&self) -> Result<Scalar, CoeffError> {
        Ok(self.fac.expand()?.mul(&self.rest))
    }

    pub fn eval<F: Fn(super::vars::Var) -> Rat>(&self, assign: &F) -> Option<Rat> {
        let a = self.fac.eval(assign)?;
        let b = self.rest.eval(assign)?;
        Some(a * b)
    }
}

/// Exact sum of factored terms. The common part min over all terms of each
/// factor exponent is pulled out first, so the result's denominator is the
/// structural common denominator, never a blind product.
pub fn sum_fterms(terms: &[FTerm]) -> Result<Scalar, CoeffError> {
    let live: Vec<&FTerm> = terms.iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return Ok(Scalar::zero());
    }
    // Common exponent per factor argument: min over all terms, where a term
    // lacking the factor counts as exponent 0. This is the largest factored
    // part that leaves every term with nonnegative leftover exponents.
    let mut common: BTreeMap<Monomial, i64> = BTreeMap::new();
    for t in &live {
        for (a, e) in t.fac.factors() {
            common.entry(a.clone()).or_insert(e);
        }
    }
    for (a, c) in common.iter_mut() {
        for t in &live {
            *c = (*c).min(t.fac.factors.get(a).copied().unwrap_or(0));
        }
    }
    common.retain(|_, e| *e != 0);

    // Leftover of each term expands to a Scalar; the leftover exponents are
    // all >= 0 relative to the common part, so no denominators appear here
    // beyond what `rest` already carries.
    let mut sum = Scalar::zero();
    for t in live {
        let mut left = FactoredScalar::unit(t.fac.coef().clone(), t.fac.mono().clone());
        for (a, e) in t.fac.factors() {
            let c = common.get(a).copied().unwrap_or(0);
            if e - c != 0 {
                left.push_factor(a.clone(), e - c);
            }
        }
        for (a, c) in &common {
            if t.fac.factors.get(a).is_none() {
                left.push_factor(a.clone(), -c);
            }
        }
        let expanded = left.expand()?;
        sum = sum.add(&expanded.mul(&t.rest));
    }
    // Multiply back the common factored part.
    let mut common_fac = FactoredScalar::one();
    for (a, e) in common {
        common_fac.push_factor(a, e);
    }
    Ok(common_fac.expand()?.mul(&sum))
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::super::vars::Var;
    use super::*;

    fn q1m() -> Monomial {
        Monomial::var(Var::Q1)
    }
    fn q3m() -> Monomial {
        Monomial::var(Var::Q3)
    }

    #[test]
    fn expand_examples() {
        // unit (1, q1) * (1-q3) = (q1 - q1 q3)/1
        let f = FactoredScalar::unit(rat(1), q1m()).with_factor(q3m(), 1);
        let s = f.expand().unwrap();
        let mut expect = LaurentPoly::monomial(q1m());
        expect.add_term(q1m().mul(&q3m()), rat(-1));
        assert!(s.eq(&Scalar::from_poly(expect)));

        // (1 - q1 q3)^-1 = 1/(1 - q1 q3)
        let f = FactoredScalar::one().with_factor(q1m().mul(&q3m()), -1);
        let s = f.expand().unwrap();
        assert!(s.eq(&Scalar::new(
            LaurentPoly::one(),
            LaurentPoly::one_minus(&q1m().mul(&q3m()))
        )));

        // empty factor list, unit (-1, 1) = -1
        let f = FactoredScalar::unit(rat(-1), Monomial::one());
        assert!(f.expand().unwrap().eq(&Scalar::from_i64(-1)));
    }

    #[test]
    fn degenerate_factor_rules() {
        let f = FactoredScalar::one().with_factor(Monomial::one(), 1);
        assert!(f.is_zero());
        assert!(f.expand().unwrap().is_zero());
        let f = FactoredScalar::one().with_factor(Monomial::one(), -1);
        assert!(matches!(f.expand(), Err(CoeffError::DivisionByZero)));
    }

    #[test]
    fn sum_extracts_common_denominator() {
        // 1/((1-q1)(1-q3)) + 1/(1-q1) = (2 - q3)/((1-q1)(1-q3))
        let a = FTerm::from_factored(
            FactoredScalar::one().with_factor(q1m(), -1).with_factor(q3m(), -1),
        );
        let b = FTerm::from_factored(FactoredScalar::one().with_factor(q1m(), -1));
        let s = sum_fterms(&[a, b]).unwrap();
        let mut num = LaurentPoly::from_i64(2);
        num.add_term(q3m(), rat(-1));
        let den = LaurentPoly::one_minus(&q1m()).mul(&LaurentPoly::one_minus(&q3m()));
        assert!(s.eq(&Scalar::new(num, den.clone())));
        // the structural denominator is exactly the common one
        assert_eq!(s.den(), &den);
    }

    #[test]
    fn sum_of_opposites_is_zero() {
        let f = FactoredScalar::unit(rat(3), q1m())
            .with_factor(q3m(), 2)
            .with_factor(q1m().mul(&q3m()), -1);
        let t = FTerm::from_factored(f.clone());
        assert!(sum_fterms(&[t.clone(), t.neg()]).unwrap().is_zero());
    }
}
