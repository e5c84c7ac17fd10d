//! Exact rational functions num/den over ℚ in the named variables.
//!
//! Equality is decided by cross-multiplication, never by multivariate GCD.
//! Normalization strips common monomial content and fixes the sign of the
//! denominator's leading coefficient; nothing more.

use super::monomial::Monomial;
use super::poly::{rat, LaurentPoly, Rat};
use super::vars::Var;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        if !self.den.is_one() {
            // Joint monomial content of numerator and denominator.
            let cn = self.num.content();
            let cd = self.den.content();
            let mut vars: Vec<Var> = cn.vars().chain(cd.vars()).map(|(v, _)| v).collect();
            vars.sort();
            vars.dedup();
            let joint =
                Monomial::from_pairs(vars.into_iter().map(|v| (v, self.joint_min(v))));
            if !joint.is_one() {
                let inv = joint.inv();
                self.num = self.num.mul_monomial(&inv);
                self.den = self.den.mul_monomial(&inv);
            }
        }
        if let Some((_, c)) = self.den.leading() {
            if c.is_negative() {
                self.num = self.num.neg();
                self.den = self.den.neg();
            }
        }
    }

    fn joint_min(&self, v: Var) -> i64 {
        let mut m = i64::MAX;
        for (mono, _) in self.num.terms().chain(self.den.terms()) {
            m = m.min(mono.exponent(v));
        }
        m
    }

    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::new(self.num.add(&other.num), self.den.clone());
        }
        Scalar::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        Scalar::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero");
        Scalar::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Scalar::new(self.num.mul_monomial(m), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        Scalar {
            num: base.num.pow(n),
            den: base.den.pow(n),
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn subst_var(&self, v: Var, by: &Monomial) -> Self {
        Scalar::new(self.num.subst_var(v, by), self.den.subst_var(v, by))
    }

    /// Evaluate at a rational point; None when the denominator vanishes there.
    pub fn eval<F: Fn(Var) -> Rat>(&self, assign: &F) -> Option<Rat> {
        let d = self.den.eval(assign);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(assign) / d)
    }

    /// Strip common binomial factors (1 − m) shared by numerator and
    /// denominator. Candidates come from term ratios of the denominator;
    /// this is bookkeeping on binomial products, not a general GCD.
    pub fn reduce_common_binomials(&self) -> Scalar {
        if self.num.is_zero() || self.den.is_one() {
            return self.clone();
        }
        let mut cur = self.clone();
        'outer: loop {
            let monos: Vec<Monomial> = cur.den.terms().map(|(m, _)| m.clone()).collect();
            for a in &monos {
                for b in &monos {
                    let m = a.div(b);
                    if m.is_one() {
                        continue;
                    }
                    if let (Some(dn), Some(dd)) =
                        (cur.num.divide_exact(&m), cur.den.divide_exact(&m))
                    {
                        cur = Scalar::new(dn, dd);
                        if cur.den.is_one() {
                            return cur;
                        }
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        Scalar::eq(self, other)
    }
}
impl Eq for Scalar {}

/// σ₁ = q₁+q₂+q₃ with q₂ = q₁⁻¹q₃⁻¹ eliminated.
pub fn sigma1() -> Scalar {
    let mut p = LaurentPoly::var(Var::Q1);
    p.add_term(Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]), Rat::one());
    p.add_term(Monomial::var(Var::Q3), Rat::one());
    Scalar::from_poly(p)
}

/// σ₂ = q₁⁻¹+q₂⁻¹+q₃⁻¹ = q₁q₂+q₂q₃+q₃q₁.
pub fn sigma2() -> Scalar {
    let mut p = LaurentPoly::monomial(Monomial::var_pow(Var::Q1, -1));
    p.add_term(Monomial::from_pairs([(Var::Q1, 1), (Var::Q3, 1)]), Rat::one());
    p.add_term(Monomial::var_pow(Var::Q3, -1), Rat::one());
    Scalar::from_poly(p)
}

/// g(1,1) = (1−q₁)(1−q₂)(1−q₃).
pub fn g11() -> Scalar {
    let q2 = Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]);
    Scalar::from_poly(
        LaurentPoly::one_minus(&Monomial::var(Var::Q1))
            .mul(&LaurentPoly::one_minus(&q2))
            .mul(&LaurentPoly::one_minus(&Monomial::var(Var::Q3))),
    )
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1m() -> Monomial {
        Monomial::var(Var::Q1)
    }

    #[test]
    fn eq_by_cross_multiplication() {
        // (1-q1^2)/(1-q1) == (1+q1)/1
        let a = Scalar::new(
            LaurentPoly::one_minus(&q1m().pow(2)),
            LaurentPoly::one_minus(&q1m()),
        );
        let mut n = LaurentPoly::one();
        n.add_term(q1m(), rat(1));
        let b = Scalar::from_poly(n);
        assert!(a.eq(&b));
        // zeros over different denominators are equal
        let z1 = Scalar::new(LaurentPoly::zero(), LaurentPoly::one_minus(&Monomial::var(Var::Q3)));
        let z2 = Scalar::new(LaurentPoly::zero(), LaurentPoly::one_minus(&q1m()));
        assert!(z1.eq(&z2));
        // (1-q1)/(1-q3) != 1
        let c = Scalar::new(
            LaurentPoly::one_minus(&q1m()),
            LaurentPoly::one_minus(&Monomial::var(Var::Q3)),
        );
        assert!(!c.eq(&Scalar::one()));
    }

    #[test]
    fn sigma2_equals_pairwise_products() {
        // q1*q2 + q2*q3 + q3*q1 with q2 = 1/(q1 q3)
        let q2 = Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]);
        let mut p = LaurentPoly::monomial(q1m().mul(&q2));
        p.add_term(q2.mul(&Monomial::var(Var::Q3)), rat(1));
        p.add_term(Monomial::var(Var::Q3).mul(&q1m()), rat(1));
        assert!(sigma2().eq(&Scalar::from_poly(p)));
    }

    #[test]
    fn add_with_shared_denominator_stays_small() {
        let d = LaurentPoly::one_minus(&q1m());
        let a = Scalar::new(LaurentPoly::one(), d.clone());
        let b = Scalar::new(LaurentPoly::from_i64(2), d.clone());
        let s = a.add(&b);
        assert_eq!(s.den().num_terms(), 2);
        assert!(s.eq(&Scalar::new(LaurentPoly::from_i64(3), d)));
    }
}
