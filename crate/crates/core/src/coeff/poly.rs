//! Sparse Laurent polynomials over an exact coefficient ring.
//!
//! `LaurentPoly` (rational coefficients) is the workhorse; the same container
//! with `Scalar` coefficients carries the Macdonald-side polynomials in
//! x₁…x_N. Exactness everywhere: coefficients are arbitrary-precision
//! rationals, no floating point.

use super::monomial::Monomial;
use super::vars::Var;
use num::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Minimal exact-ring interface so the sparse container can hold either
/// rationals or full rational functions.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl RingElem for Rat {
    fn ring_zero() -> Self {
        Rat::zero()
    }
    fn ring_one() -> Self {
        Rat::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Sparse multivariate Laurent polynomial: monomial → coefficient,
/// no zero coefficients stored, terms canonically ordered by `Monomial`'s order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparsePoly<C: RingElem> {
    terms: BTreeMap<Monomial, C>,
}

pub type LaurentPoly = SparsePoly<Rat>;

impl<C: RingElem> SparsePoly<C> {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(Monomial::one(), C::ring_one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_ring_zero() {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::ring_one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| *c == C::ring_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::ring_zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_ring_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().ring_add(&c);
                if s.is_ring_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.ring_neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca.ring_mul(cb));
            }
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_ring_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.ring_mul(c)))
                .filter(|(_, k)| !k.is_ring_zero())
                .collect(),
        }
    }

    /// Multiply by a single monomial (exact, just shifts exponents).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute `v` by the monomial `by` in every term.
    pub fn subst_var(&self, v: Var, by: &Monomial) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.subst_var(v, by), c.clone());
        }
        r
    }

    /// Per-variable minimum exponent over all terms (the monomial content in
    /// the Laurent sense). Zero polynomial has content 1.
    pub fn content(&self) -> Monomial {
        let mut mins: BTreeMap<Var, i64> = BTreeMap::new();
        let mut seen_term = false;
        for (m, _) in &self.terms {
            if seen_term {
                // A variable absent from some term has min exponent <= 0.
                let here: BTreeMap<Var, i64> = m.vars().collect();
                for (v, e) in mins.iter_mut() {
                    *e = (*e).min(here.get(v).copied().unwrap_or(0));
                }
                for (v, e) in here {
                    mins.entry(v).or_insert_with(|| e.min(0));
                }
            } else {
                for (v, e) in m.vars() {
                    mins.insert(v, e);
                }
                seen_term = true;
            }
        }
        Monomial::from_pairs(mins.into_iter().filter(|(_, e)| *e != 0))
    }

    /// Leading term in the canonical monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Split terms by their exponent of `v`: returns map e → polynomial in the
    /// remaining variables (keys keep v stripped).
    pub fn split_by_var(&self, v: Var) -> BTreeMap<i64, SparsePoly<C>> {
        let mut out: BTreeMap<i64, SparsePoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let stripped = m.subst_var(v, &Monomial::one());
            out.entry(e)
                .or_insert_with(SparsePoly::zero)
                .add_term(stripped, c.clone());
        }
        out
    }

    /// Exact division by the binomial (1 − m), m a non-unit monomial.
    /// Returns None when the division is not exact.
    ///
    /// Terms are grouped into cosets of the exponent lattice modulo ℤ·m; on
    /// each coset the problem is univariate division by (1 − y), solved by
    /// partial sums.
    pub fn divide_exact(&self, m: &Monomial) -> Option<Self> {
        assert!(!m.is_one(), "divisor (1 - m) requires m != 1");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (pivot, pe) = m.vars().next().expect("non-unit monomial has a variable");
        // Coset representative: reduce the pivot exponent into [0, |pe|).
        let mut groups: BTreeMap<Monomial, Vec<(i64, C)>> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let k = mono.exponent(pivot).div_euclid(pe);
            let rep = mono.div(&m.pow(k));
            groups.entry(rep).or_default().push((k, c.clone()));
        }
        let mut out = Self::zero();
        for (rep, mut coeffs) in groups {
            coeffs.sort_by_key(|(k, _)| *k);
            // h(y) = sum c_k y^k must satisfy h(1) = 0; quotient by (1 - y)
            // has g_j = sum_{k<=j} c_k for j in [min, max).
            let mut running = C::ring_zero();
            let max_k = coeffs.last().unwrap().0;
            let mut idx = 0;
            let min_k = coeffs[0].0;
            for j in min_k..max_k {
                while idx < coeffs.len() && coeffs[idx].0 == j {
                    running = running.ring_add(&coeffs[idx].1);
                    idx += 1;
                }
                out.add_term(rep.mul(&m.pow(j)), running.clone());
            }
            while idx < coeffs.len() {
                running = running.ring_add(&coeffs[idx].1);
                idx += 1;
            }
            if !running.is_ring_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Largest n with (1 − m)ⁿ dividing self, together with self/(1 − m)ⁿ.
    pub fn divide_out_all(&self, m: &Monomial) -> (u32, Self) {
        let mut n = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (0, cur);
        }
        while let Some(next) = cur.divide_exact(m) {
            cur = next;
            n += 1;
            if cur.is_zero() {
                break;
            }
        }
        (n, cur)
    }
}

impl LaurentPoly {
    pub fn from_i64(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// 1 − m as a polynomial.
    pub fn one_minus(m: &Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(m.clone(), -Rat::one());
        p
    }

    /// Evaluate at a rational point (every variable must be assigned).
    pub fn eval<F: Fn(Var) -> Rat>(&self, assign: &F) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.vars() {
                let base = assign(var);
                assert!(!base.is_zero(), "variable assigned zero");
                let p = if e >= 0 {
                    num::pow::pow(base, e as usize)
                } else {
                    num::pow::pow(base.recip(), (-e) as usize)
                };
                v *= p;
            }
            total += v;
        }
        total
    }
}

/// Canonical text form: terms `c*q1^a*q3^b*…` joined by `+`, sorted by the
/// monomial order, rationals as `n` or `n/d`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", rat_str(c))?;
            } else {
                write!(f, "{}*{}", rat_str(c), m)?;
            }
        }
        Ok(())
    }
}

fn rat_str(c: &Rat) -> String {
    if c.denom() == &num::BigInt::from(1) {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> Monomial {
        Monomial::var(Var::Q1)
    }

    #[test]
    fn add_mul_neg_basics() {
        // add((1-q1),(q1)) = 1
        let a = LaurentPoly::one_minus(&q1());
        let b = LaurentPoly::monomial(q1());
        assert!(a.add(&b).is_one());
        // mul((1-q1),(1+q1)) = 1-q1^2
        let mut c = LaurentPoly::one();
        c.add_term(q1(), rat(1));
        let prod = a.mul(&c);
        let expect = LaurentPoly::one_minus(&q1().pow(2));
        assert_eq!(prod, expect);
        // neg(0) = 0
        assert!(LaurentPoly::zero().neg().is_zero());
    }

    #[test]
    fn content_strips_laurent_minimums() {
        // q1^-1 + q3  -> content q1^-1
        let mut p = LaurentPoly::zero();
        p.add_term(Monomial::var_pow(Var::Q1, -1), rat(1));
        p.add_term(Monomial::var(Var::Q3), rat(1));
        assert_eq!(p.content(), Monomial::var_pow(Var::Q1, -1));
    }

    #[test]
    fn divide_exact_by_binomial() {
        // (1 - x^2)/(1 - x) = 1 + x, with x = q1^-2 q3^3
        let x = Monomial::from_pairs([(Var::Q1, -2), (Var::Q3, 3)]);
        let num = LaurentPoly::one_minus(&x.pow(2));
        let q = num.divide_exact(&x).expect("exact");
        let mut expect = LaurentPoly::one();
        expect.add_term(x.clone(), rat(1));
        assert_eq!(q, expect);
        // and (1 - x^2)/(1 - x^3) is not exact
        assert!(num.divide_exact(&x.pow(3)).is_none());
    }

    #[test]
    fn divide_out_multiplicity() {
        let x = Monomial::var(Var::Q1);
        let f = LaurentPoly::one_minus(&x).pow(3).mul(&LaurentPoly::from_i64(7));
        let (n, rest) = f.divide_out_all(&x);
        assert_eq!(n, 3);
        assert_eq!(rest, LaurentPoly::from_i64(7));
    }
}
