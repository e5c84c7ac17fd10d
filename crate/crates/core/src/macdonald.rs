//! Independent symmetric-function engine: Macdonald polynomials P_λ in N
//! variables over ℚ(q, t), the difference operators D¹_N and D⁻¹_N, Pieri
//! expansion of (Σxᵢ)·P_λ, the Laurent extension, and wheel-condition tests.
//!
//! P_λ is computed exactly as its defining characterization: the monic
//! dominance-triangular eigenfunction of D¹_N. Nothing here touches the
//! module formulas, so this side can serve as an oracle for them.

use crate::coeff::poly::RingElem;
use crate::coeff::{Monomial, Resonance, Scalar, SparsePoly, Var};
use crate::partition::{dominance_leq, partitions_of_max_len, Partition};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

impl RingElem for Scalar {
    fn ring_zero() -> Self {
        Scalar::zero()
    }
    fn ring_one() -> Self {
        Scalar::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Polynomials in x₁…x_N with exact rational-function coefficients.
pub type XPoly = SparsePoly<Scalar>;

/// A symmetric (Laurent) polynomial in N variables, stored in the monomial
/// basis m_λ. Keys are full length-N weakly decreasing tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc {
    pub n: usize,
    pub terms: BTreeMap<Partition, Scalar>,
}

impl SymFunc {
    pub fn zero(n: usize) -> Self {
        SymFunc {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial_basis(shape: &Partition, n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(full_shape(shape, n), Scalar::one());
        SymFunc { n, terms }
    }

    pub fn add_term(&mut self, shape: Partition, c: Scalar) {
        debug_assert_eq!(shape.len(), self.n);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(shape);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn coeff(&self, shape: &Partition) -> Scalar {
        self.terms
            .get(&full_shape(shape, self.n))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SymFunc {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (s.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (s, c) in &other.terms {
            r.add_term(s.clone(), c.neg());
        }
        r
    }

    /// Expand into an explicit polynomial in x₁…x_N.
    pub fn to_xpoly(&self) -> XPoly {
        let mut p = XPoly::zero();
        for (shape, c) in &self.terms {
            for mono in orbit_monomials(shape.parts()) {
                p.add_term(mono, c.clone());
            }
        }
        p
    }

    /// Collect a symmetric polynomial back into the m-basis by reading the
    /// coefficients of the dominant (weakly decreasing) monomials.
    pub fn from_xpoly(p: &XPoly, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (mono, c) in p.terms() {
            let exps: Vec<i64> = (1..=n).map(|i| mono.exponent(Var::X(i as u8))).collect();
            let mut sorted = exps.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if exps == sorted {
                out.add_term(Partition::zvalued(exps).unwrap(), c.clone());
            }
        }
        out
    }
}

fn full_shape(shape: &Partition, n: usize) -> Partition {
    Partition::zvalued(shape.padded(n)).expect("weakly decreasing")
}

/// All distinct monomials x^σ for σ in the S_N-orbit of the exponent tuple.
fn orbit_monomials(parts: &[i64]) -> Vec<Monomial> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm = parts.to_vec();
    perm.sort_unstable();
    loop {
        if seen.insert(perm.clone()) {
            out.push(Monomial::from_pairs(
                perm.iter()
                    .enumerate()
                    .map(|(i, &e)| (Var::X(i as u8 + 1), e)),
            ));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn qvar(e: i64) -> Scalar {
    Scalar::from_monomial(Monomial::var_pow(Var::Q, e))
}

fn tvar(e: i64) -> Scalar {
    Scalar::from_monomial(Monomial::var_pow(Var::T, e))
}

/// Exact division of an x-polynomial by (x_a − x_b).
fn divide_by_difference(p: &XPoly, a: usize, b: usize) -> Option<XPoly> {
    // (x_a - x_b) = x_a (1 - x_b/x_a)
    let xa = Monomial::var(Var::X(a as u8));
    let m = Monomial::var(Var::X(b as u8)).mul(&xa.inv());
    p.mul_monomial(&xa.inv()).divide_exact(&m)
}

/// Apply the Macdonald operator D¹_N (sign = +1) or D⁻¹_N = D¹_N(q⁻¹, t⁻¹)
/// (sign = −1) to a symmetric function, exactly.
///
/// The Vandermonde-type denominators are cleared before dividing:
/// Δ·D¹f = Σᵢ (−1)^{i−1} ∏_{a<b, a,b≠i}(x_a−x_b) ∏_{j≠i}(t xᵢ−x_j) T_{q,xᵢ}f,
/// and the division by Δ = ∏_{a<b}(x_a−x_b) is asserted exact.
/// Split f into a polynomial-coefficient function and a common denominator:
/// f = cleared / common. Keeps intermediate fraction arithmetic out of the
/// inner loops, which otherwise blows up without multivariate GCD.
fn clear_denominators(f: &SymFunc) -> (SymFunc, crate::coeff::LaurentPoly) {
    let mut dens: Vec<crate::coeff::LaurentPoly> = Vec::new();
    for c in f.terms.values() {
        if !c.den().is_one() && !dens.contains(c.den()) {
            dens.push(c.den().clone());
        }
    }
    let mut cleared = SymFunc::zero(f.n);
    for (s, c) in &f.terms {
        let mut num = c.num().clone();
        for d in &dens {
            if d != c.den() {
                num = num.mul(d);
            }
        }
        cleared.add_term(s.clone(), Scalar::from_poly(num));
    }
    let common = dens
        .iter()
        .fold(crate::coeff::LaurentPoly::one(), |a, d| a.mul(d));
    (cleared, common)
}

pub fn apply_macdonald_d(f: &SymFunc, sign: i64) -> SymFunc {
    let n = f.n;
    // Clear the coefficient denominators up front: the whole computation
    // then runs over polynomial scalars (cross-multiplied sums of fractions
    // inside the exact divisions blow up otherwise), and the common
    // denominator is divided back out once at the end.
    let (cleared, common) = clear_denominators(f);
    let f = &cleared;

    let fx = f.to_xpoly();
    let (qe, te) = (sign, sign);
    let mut total = XPoly::zero();
    for i in 1..=n {
        // T_{q^{±1}, x_i} f
        let mut shifted = XPoly::zero();
        for (mono, c) in fx.terms() {
            let e = mono.exponent(Var::X(i as u8));
            shifted.add_term(mono.clone(), c.mul(&qvar(qe * e)));
        }
        // ∏_{j≠i} (t^{±1} x_i − x_j)
        let mut anum = XPoly::one();
        for j in 1..=n {
            if j == i {
                continue;
            }
            let mut factor = XPoly::term(Monomial::var(Var::X(i as u8)), tvar(te));
            factor.add_term(Monomial::var(Var::X(j as u8)), Scalar::from_i64(-1));
            anum = anum.mul(&factor);
        }
        // ∏_{a<b, a,b≠i} (x_a − x_b), with the sign (−1)^{i−1}
        let mut vand = XPoly::constant(Scalar::from_i64(if i % 2 == 1 { 1 } else { -1 }));
        for a in 1..=n {
            for b in (a + 1)..=n {
                if a == i || b == i {
                    continue;
                }
                let mut factor = XPoly::monomial(Monomial::var(Var::X(a as u8)));
                factor.add_term(Monomial::var(Var::X(b as u8)), Scalar::from_i64(-1));
                vand = vand.mul(&factor);
            }
        }
        total = total.add(&shifted.mul(&anum).mul(&vand));
    }
    // divide by the full Vandermonde determinant
    let mut quotient = total;
    for a in 1..=n {
        for b in (a + 1)..=n {
            quotient = divide_by_difference(&quotient, a, b)
                .expect("Macdonald numerator is divisible by the Vandermonde");
        }
    }
    let collected = SymFunc::from_xpoly(&quotient, n);
    // restore the cleared common denominator
    let mut out = SymFunc::zero(n);
    let den = Scalar::from_poly(common);
    for (s, c) in &collected.terms {
        out.add_term(s.clone(), c.div(&den));
    }
    out
}

/// The D^{±1}_N eigenvalue on P_λ: Σᵢ q^{±λᵢ} t^{±(N−i)}.
pub fn d1_eigenvalue(shape: &Partition, n: usize, sign: i64) -> Scalar {
    let lam = shape.padded(n);
    let mut s = Scalar::zero();
    for (i, &li) in lam.iter().enumerate() {
        s = s.add(&Scalar::from_monomial(Monomial::from_pairs([
            (Var::Q, sign * li),
            (Var::T, sign * (n as i64 - 1 - i as i64)),
        ])));
    }
    s
}

/// Memoized table of Macdonald polynomials, shared read-mostly. Entries are
/// stored denominator-cleared: P = (polynomial-coefficient part) / den, with
/// one shared denominator (the product of the eigenvalue gaps of the solve).
pub struct MacdonaldTable {
    cache: Mutex<BTreeMap<(usize, Partition), (SymFunc, crate::coeff::LaurentPoly)>>,
}

impl Default for MacdonaldTable {
    fn default() -> Self {
        Self::new()
    }
}

impl MacdonaldTable {
    pub fn new() -> Self {
        MacdonaldTable {
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// P_λ in the cleared form (polynomial coefficients, shared denominator).
    /// The solve is the monic dominance-triangular eigenvector
    /// back-substitution for D¹_N; all intermediate arithmetic is polynomial,
    /// with the eigenvalue gaps accumulating into the shared denominator.
    pub fn macdonald_p_cleared(
        &self,
        shape: &Partition,
        n: usize,
    ) -> (SymFunc, crate::coeff::LaurentPoly) {
        let shape = &Partition::nonneg(shape.parts().to_vec())
            .expect("macdonald_p needs a nonnegative shape; use macdonald_p_laurent");
        assert!(shape.len() <= n, "partition longer than variable count");
        let key = (n, shape.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        // shapes of the same weight, at most n parts, dominated by λ,
        // in lexicographically descending elimination order (λ first)
        let mut shapes: Vec<Partition> = partitions_of_max_len(shape.weight(), n)
            .into_iter()
            .filter(|mu| dominance_leq(mu, shape).unwrap())
            .collect();
        shapes.sort_by(|a, b| b.parts().cmp(a.parts()));
        debug_assert_eq!(shapes.first(), Some(shape));

        // the action of D¹ on each m_μ, in the m-basis; the input has no
        // denominators so neither does the output
        let mut action: BTreeMap<Partition, SymFunc> = BTreeMap::new();
        for mu in &shapes {
            let dm = apply_macdonald_d(&SymFunc::monomial_basis(mu, n), 1);
            debug_assert!(dm.terms.values().all(|c| c.den().is_one()));
            // triangularity: support dominated by mu
            debug_assert!(dm.terms.keys().all(|nu| {
                let nu_trim = Partition::nonneg(nu.parts().to_vec());
                nu_trim
                    .map(|ntrim| dominance_leq(&ntrim, mu).unwrap_or(false))
                    .unwrap_or(false)
            }));
            action.insert(mu.clone(), dm);
        }

        // u over a running denominator R: processing μ turns R into R·gap_μ,
        // rescales the solved entries, and sets ũ_μ = Σ_ν ũ_ν A[μ][ν]
        let d_lam = d1_eigenvalue(shape, n, 1);
        let mut running = crate::coeff::LaurentPoly::one();
        let mut coeffs: BTreeMap<Partition, Scalar> = BTreeMap::new();
        coeffs.insert(shape.clone(), Scalar::one());
        for mu in shapes.iter().skip(1) {
            let mut rhs = Scalar::zero();
            for (nu, u_nu) in &coeffs {
                let a = action[nu].coeff(mu);
                if !a.is_zero() {
                    rhs = rhs.add(&u_nu.mul(&a));
                }
            }
            let gap = d_lam.sub(&d1_eigenvalue(mu, n, 1));
            assert!(!gap.is_zero(), "eigenvalue collision over Q(q,t)");
            debug_assert!(gap.den().is_one());
            for u in coeffs.values_mut() {
                *u = u.mul(&gap);
            }
            running = running.mul(gap.num());
            coeffs.insert(mu.clone(), rhs);
        }
        debug_assert!(coeffs.values().all(|c| c.den().is_one()));

        let mut out = SymFunc::zero(n);
        for (mu, c) in coeffs {
            out.add_term(full_shape(&mu, n), c);
        }
        let entry = (out, running);
        self.cache.lock().unwrap().insert(key, entry.clone());
        entry
    }

    /// P_λ for nonnegative λ with at most N parts: the unique monic
    /// dominance-triangular eigenfunction of D¹_N.
    pub fn macdonald_p(&self, shape: &Partition, n: usize) -> SymFunc {
        let (cleared, den) = self.macdonald_p_cleared(shape, n);
        let mut out = SymFunc::zero(n);
        for (mu, c) in &cleared.terms {
            out.add_term(mu.clone(), Scalar::new(c.num().clone(), den.clone()));
        }
        out
    }

    /// Cleared form of the Laurent extension
    /// P_λ = (x₁…x_N)^{λ_N} · P_{λ−λ_N·(1…1)}.
    pub fn macdonald_p_laurent_cleared(
        &self,
        shape: &Partition,
        n: usize,
    ) -> (SymFunc, crate::coeff::LaurentPoly) {
        let lam = shape.padded(n);
        let shift = *lam.last().expect("n >= 1");
        if shift >= 0 && shape.parts().iter().all(|&p| p >= 0) {
            return self.macdonald_p_cleared(shape, n);
        }
        let reduced: Vec<i64> = lam.iter().map(|&p| p - shift).collect();
        let (base, den) = self.macdonald_p_cleared(
            &Partition::nonneg(reduced).expect("weakly decreasing nonneg"),
            n,
        );
        let mut out = SymFunc::zero(n);
        for (mu, c) in &base.terms {
            let shifted: Vec<i64> = mu.parts().iter().map(|&p| p + shift).collect();
            out.add_term(Partition::zvalued(shifted).unwrap(), c.clone());
        }
        (out, den)
    }

    /// P_λ for weakly decreasing λ with possibly negative entries.
    pub fn macdonald_p_laurent(&self, shape: &Partition, n: usize) -> SymFunc {
        let (cleared, den) = self.macdonald_p_laurent_cleared(shape, n);
        let mut out = SymFunc::zero(n);
        for (mu, c) in &cleared.terms {
            out.add_term(
                mu.clone(),
                Scalar::new(c.num().clone(), den.clone()).reduce_common_binomials(),
            );
        }
        out
    }

    /// Change of basis m → P on a fixed-weight symmetric function: peel the
    /// lexicographically greatest remaining shape. The remainder is kept
    /// with polynomial coefficients over one running common denominator.
    pub fn to_p_basis(&self, f: &SymFunc) -> BTreeMap<Partition, Scalar> {
        let (mut rem, mut running_den) = clear_denominators(f);
        let mut out = BTreeMap::new();
        while let Some((shape, _)) = rem.terms.iter().next_back() {
            let shape = shape.clone();
            let lead = rem.terms[&shape].clone();
            out.insert(
                shape.clone(),
                Scalar::new(lead.num().clone(), running_den.clone()),
            );
            let (p_cleared, p_den) = self.macdonald_p_laurent_cleared(&shape, f.n);
            // rem/R − (lead/R)·(P̃/D) = (rem·D − lead·P̃) / (R·D)
            let mut next = SymFunc::zero(f.n);
            let d_scalar = Scalar::from_poly(p_den.clone());
            for (s, c) in &rem.terms {
                next.add_term(s.clone(), c.mul(&d_scalar));
            }
            for (s, c) in &p_cleared.terms {
                next.add_term(s.clone(), c.mul(&lead).neg());
            }
            debug_assert!(next.coeff(&shape).is_zero());
            running_den = running_den.mul(&p_den);
            rem = next;
        }
        out
    }

    fn pieri_mul(&self, shape: &Partition, n: usize, exp: i64) -> BTreeMap<Partition, Scalar> {
        let (cleared, den) = self.macdonald_p_laurent_cleared(shape, n);
        let mut sum_x = XPoly::zero();
        for i in 1..=n {
            sum_x.add_term(Monomial::var_pow(Var::X(i as u8), exp), Scalar::one());
        }
        let product = SymFunc::from_xpoly(&cleared.to_xpoly().mul(&sum_x), n);
        let den = Scalar::from_poly(den);
        self.to_p_basis(&product)
            .into_iter()
            .map(|(s, c)| (s, c.div(&den).reduce_common_binomials()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Pieri coefficients of e₁ = Σxᵢ: (Σxᵢ)·P_λ = Σ_μ c_μ P_μ, computed by
    /// polynomial multiplication and change of basis, independently of the
    /// module formulas.
    pub fn pieri_e1(&self, shape: &Partition, n: usize) -> BTreeMap<Partition, Scalar> {
        self.pieri_mul(shape, n, 1)
    }

    /// Pieri coefficients of Σxᵢ⁻¹, via the Laurent extension.
    pub fn pieri_f1(&self, shape: &Partition, n: usize) -> BTreeMap<Partition, Scalar> {
        self.pieri_mul(shape, n, -1)
    }
}

/// Compositions of `total` into `parts` nonnegative integers.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Wheel-condition test: does f vanish identically under every substitution
/// xᵢ = x₁ q₃^{1−i} q₁^{s₁+…+s_{i−1}} (i ≤ k+1, remaining variables free),
/// on the resonance locus q₁^{1−r}q₃^{k+1} = 1?
///
/// The coefficients of f live over ℚ(q, t); the bridge q = q₁, t = q₃⁻¹ is
/// applied first, and vanishing is decided by the resonance exponent map.
pub fn wheel_vanishes(f: &SymFunc, k: i64, r: i64) -> Result<bool, crate::coeff::CoeffError> {
    let res = Resonance::new(k, r)?;
    if f.is_zero() {
        return Ok(true);
    }
    assert!(f.n as i64 >= k + 1, "need at least k+1 variables");
    let fx = f.to_xpoly();
    for comp in compositions(r - 1, (k + 1) as usize) {
        // substituted polynomial, collected per residual x-monomial
        let mut collected: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (mono, c) in fx.terms() {
            // bridge the coefficient into (q1, q3)
            let c = c
                .subst_var(Var::Q, &Monomial::var(Var::Q1))
                .subst_var(Var::T, &Monomial::var_pow(Var::Q3, -1));
            let mut xkey = Monomial::one();
            let mut qshift = Monomial::one();
            for (v, e) in mono.vars() {
                let i = match v {
                    Var::X(i) => i as i64,
                    _ => unreachable!("x-polynomial key"),
                };
                if i <= k + 1 {
                    // x_i -> x_1 q3^{1-i} q1^{s_1+..+s_{i-1}}
                    let sigma: i64 = comp[..(i - 1) as usize].iter().sum();
                    xkey = xkey.mul(&Monomial::var_pow(Var::X(1), e));
                    qshift = qshift.mul(&Monomial::from_pairs([
                        (Var::Q3, (1 - i) * e),
                        (Var::Q1, sigma * e),
                    ]));
                } else {
                    xkey = xkey.mul(&Monomial::var_pow(v, e));
                }
            }
            let term = c.mul_monomial(&qshift);
            collected
                .entry(xkey)
                .and_modify(|s| *s = s.add(&term))
                .or_insert(term);
        }
        for (_, coeff) in collected {
            if !res.scalar_vanishes(&coeff)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;

    fn p(parts: &[i64]) -> Partition {
        Partition::nonneg(parts.to_vec()).unwrap()
    }

    fn one_minus(m: Monomial) -> Scalar {
        Scalar::from_poly(LaurentPoly::one_minus(&m))
    }

    #[test]
    fn constant_is_eigenfunction_with_t_sum() {
        // D¹_N 1 = (t^{N-1} + … + 1) · 1
        for n in 1..=3usize {
            let one = SymFunc::monomial_basis(&p(&[]), n);
            let d = apply_macdonald_d(&one, 1);
            let expect = d1_eigenvalue(&p(&[]), n, 1);
            assert_eq!(d.terms.len(), 1);
            assert!(d.coeff(&p(&[])).eq(&expect));
        }
    }

    #[test]
    fn m1_is_eigenfunction_for_n2() {
        // P_(1) = m_(1): eigenvalue q t + 1 ... as Σ q^{λ_i} t^{N-i}
        let table = MacdonaldTable::new();
        let p1 = table.macdonald_p(&p(&[1]), 2);
        assert_eq!(p1.terms.len(), 1);
        let d = apply_macdonald_d(&p1, 1);
        let ev = d1_eigenvalue(&p(&[1]), 2, 1);
        // eigenvalue is q t^{1} + 1? N=2: i=1: q^1 t^{1}, i=2: q^0 t^0
        let expect = qvar(1).mul(&tvar(1)).add(&Scalar::one());
        assert!(ev.eq(&expect));
        for (shape, c) in &d.terms {
            assert!(c.eq(&ev.mul(&p1.terms[shape])));
        }
    }

    #[test]
    fn p2_has_the_documented_subleading_coefficient() {
        // P_(2) (N=2) = m_(2) + (1+q)(1−t)/(1−qt) m_(1,1)
        let table = MacdonaldTable::new();
        let p2 = table.macdonald_p(&p(&[2]), 2);
        let c = p2.coeff(&p(&[1, 1]));
        let q = Monomial::var(Var::Q);
        let t = Monomial::var(Var::T);
        let num = Scalar::one()
            .add(&Scalar::from_monomial(q.clone()))
            .mul(&one_minus(t.clone()));
        let den = one_minus(q.mul(&t));
        assert!(c.eq(&num.div(&den)), "got {}", c);
        // and P_(1,1) = m_(1,1) is at the bottom of dominance
        let p11 = table.macdonald_p(&p(&[1, 1]), 2);
        assert_eq!(p11.terms.len(), 1);
    }

    #[test]
    fn eigenvector_property_and_triangularity() {
        let table = MacdonaldTable::new();
        for n in 2..=3usize {
            for w in 1..=4i64 {
                for shape in partitions_of_max_len(w, n) {
                    let pl = table.macdonald_p(&shape, n);
                    // triangular with leading coefficient 1
                    assert!(pl.coeff(&shape).is_one());
                    for mu in pl.terms.keys() {
                        let mu_trim = Partition::nonneg(mu.parts().to_vec()).unwrap();
                        assert!(dominance_leq(&mu_trim, &shape).unwrap());
                    }
                    // D¹ P = d(λ) P exactly
                    let d = apply_macdonald_d(&pl, 1);
                    let ev = d1_eigenvalue(&shape, n, 1);
                    assert_eq!(d.terms.len(), pl.terms.len());
                    for (s, c) in &d.terms {
                        assert!(c.eq(&ev.mul(&pl.terms[s])));
                    }
                    // and the inverse operator with the inverse eigenvalue
                    let dm = apply_macdonald_d(&pl, -1);
                    let evm = d1_eigenvalue(&shape, n, -1);
                    for (s, c) in &dm.terms {
                        assert!(c.eq(&evm.mul(&pl.terms[s])));
                    }
                }
            }
        }
    }

    #[test]
    fn laurent_extension_examples() {
        let table = MacdonaldTable::new();
        // λ = (0,−1): (x₁x₂)^{-1} P_(1,0)
        let shape = Partition::zvalued(vec![0, -1]).unwrap();
        let pl = table.macdonald_p_laurent(&shape, 2);
        assert_eq!(pl.terms.len(), 1);
        assert!(pl
            .terms
            .get(&Partition::zvalued(vec![0, -1]).unwrap())
            .unwrap()
            .is_one());
        // λ = (−1,−1): the pure monomial (x₁x₂)^{-1}
        let shape = Partition::zvalued(vec![-1, -1]).unwrap();
        let pl = table.macdonald_p_laurent(&shape, 2);
        assert_eq!(pl.terms.len(), 1);
        // nonnegative shapes reduce to macdonald_p
        assert_eq!(
            table.macdonald_p_laurent(&p(&[2, 1]), 3),
            table.macdonald_p(&p(&[2, 1]), 3)
        );
    }

    #[test]
    fn pieri_examples() {
        let table = MacdonaldTable::new();
        // (Σx)·1 = P_(1)
        let c = table.pieri_e1(&p(&[]), 2);
        assert_eq!(c.len(), 1);
        assert!(c[&Partition::zvalued(vec![1, 0]).unwrap()].is_one());
        // λ=(1,0), N=2: coefficients 1 on (2,0) and (1+t)(1−q)/(1−qt) on (1,1)
        let c = table.pieri_e1(&p(&[1]), 2);
        assert_eq!(c.len(), 2);
        assert!(c[&Partition::zvalued(vec![2, 0]).unwrap()].is_one());
        let q = Monomial::var(Var::Q);
        let t = Monomial::var(Var::T);
        let expect = Scalar::one()
            .add(&Scalar::from_monomial(t.clone()))
            .mul(&one_minus(q.clone()))
            .div(&one_minus(q.mul(&t)));
        assert!(c[&Partition::zvalued(vec![1, 1]).unwrap()].eq(&expect));
        // box counting: every target has |μ| = |λ|+1
        for w in 0..=3i64 {
            for shape in partitions_of_max_len(w, 3) {
                for (mu, _) in table.pieri_e1(&shape, 3) {
                    assert_eq!(mu.weight(), w + 1);
                }
            }
        }
    }

    #[test]
    fn wheel_condition_instances() {
        let table = MacdonaldTable::new();
        // (k,r) = (1,2): P_(2,0) vanishes on both substitutions, P_(1,0) not
        let p20 = table.macdonald_p(&p(&[2]), 2);
        assert!(wheel_vanishes(&p20, 1, 2).unwrap());
        let p10 = table.macdonald_p(&p(&[1]), 2);
        assert!(!wheel_vanishes(&p10, 1, 2).unwrap());
        // the zero function vanishes trivially
        assert!(wheel_vanishes(&SymFunc::zero(2), 1, 2).unwrap());
    }
}
