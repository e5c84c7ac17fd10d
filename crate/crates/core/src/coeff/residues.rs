//! Delta-function residue extraction.
//!
//! For a rational function γ(z) regular at 0 and ∞ with simple poles, the
//! difference of its two expansions is a sum of delta functions:
//!     γ⁺(z) − γ⁻(z) = Σ_t res_{z=z⁽ᵗ⁾}(γ dz/z) · δ(z/z⁽ᵗ⁾).
//! Poles are found by factoring the denominator over monomial candidates
//! (all supports arising from the module formulas are monomials in the
//! remaining variables).

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::scalar::Scalar;
use super::vars::Var;
use super::CoeffError;
use std::collections::BTreeMap;

/// The denominator viewed as a polynomial in z with Laurent coefficients.
struct ZPoly {
    /// exponent of z → coefficient polynomial (z stripped)
    by_deg: BTreeMap<i64, LaurentPoly>,
}

impl ZPoly {
    fn new(p: &LaurentPoly) -> Self {
        ZPoly {
            by_deg: p.split_by_var(Var::Z),
        }
    }

    fn degree_span(&self) -> Option<(i64, i64)> {
        let lo = *self.by_deg.keys().next()?;
        let hi = *self.by_deg.keys().next_back()?;
        Some((lo, hi))
    }

    /// Evaluate at z = S (monomial substitution).
    fn eval_at(&self, s: &Monomial) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (d, c) in &self.by_deg {
            acc = acc.add(&c.mul_monomial(&s.pow(*d)));
        }
        acc
    }

    /// Exact division by (z − S); None when not a root.
    fn deflate(&self, s: &Monomial) -> Option<ZPoly> {
        let (lo, hi) = self.degree_span()?;
        // synthetic division from the top: Q_{d-1} = D_d + S * Q_d, Q_hi = 0 start
        let mut q: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut carry = LaurentPoly::zero();
        for d in (lo..=hi).rev() {
            let coeff = self
                .by_deg
                .get(&d)
                .cloned()
                .unwrap_or_else(LaurentPoly::zero)
                .add(&carry);
            if d == lo {
                if !coeff.is_zero() {
                    return None;
                }
            } else {
                if !coeff.is_zero() {
                    q.insert(d - 1, coeff.clone());
                }
                carry = coeff.mul_monomial(s);
            }
        }
        Some(ZPoly { by_deg: q })
    }
}

/// All monomial roots (with multiplicity detection) of a z-polynomial whose
/// roots are monomials in the non-z variables.
fn monomial_roots(den: &ZPoly) -> Result<Vec<Monomial>, CoeffError> {
    let mut roots: Vec<Monomial> = Vec::new();
    let mut cur = ZPoly {
        by_deg: den.by_deg.clone(),
    };
    loop {
        let (lo, hi) = match cur.degree_span() {
            Some(s) => s,
            None => break,
        };
        if lo == hi {
            break; // pure z-monomial left, no further roots
        }
        // Candidates from term ratios between distinct z-degrees.
        let mut candidates: Vec<Monomial> = Vec::new();
        let degs: Vec<i64> = cur.by_deg.keys().copied().collect();
        for (ai, da) in degs.iter().enumerate() {
            for db in degs.iter().skip(ai + 1) {
                let gap = db - da;
                for (ma, _) in cur.by_deg[da].terms() {
                    for (mb, _) in cur.by_deg[db].terms() {
                        let ratio = ma.div(mb);
                        if ratio.divisible_exponents(gap) {
                            candidates.push(ratio.root(gap));
                        }
                    }
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut found = None;
        for s in candidates {
            if cur.eval_at(&s).is_zero() {
                found = Some(s);
                break;
            }
        }
        match found {
            Some(s) => {
                if roots.contains(&s) {
                    return Err(CoeffError::MultiplePole);
                }
                let next = cur.deflate(&s).expect("verified root must deflate");
                roots.push(s);
                cur = next;
            }
            None => return Err(CoeffError::NonMonomialPole),
        }
    }
    Ok(roots)
}

/// Residue data of a scalar rational function of z: returns the list of
/// (support, residue) with residue = res_{z=S} f(z) dz/z.
pub fn delta_residues(f: &Scalar) -> Result<Vec<(Monomial, Scalar)>, CoeffError> {
    let num = ZPoly::new(f.num());
    let den = ZPoly::new(f.den());
    let (nlo, nhi) = match num.degree_span() {
        Some(s) => s,
        None => return Ok(Vec::new()), // zero function
    };
    let (dlo, dhi) = den.degree_span().expect("nonzero denominator");
    // Regularity at ∞ and 0 relative to the denominator's span.
    if nhi > dhi || nlo < dlo {
        return Err(CoeffError::SingularExpansion);
    }
    let roots = monomial_roots(&den)?;
    let mut out = Vec::new();
    for s in roots {
        // res_{z=S} f dz/z = num(S) / (S * (den/(z-S))(S))
        let cofactor = den.deflate(&s).expect("root of the denominator");
        let n = num.eval_at(&s);
        let d = cofactor.eval_at(&s).mul_monomial(&s);
        if d.is_zero() {
            return Err(CoeffError::MultiplePole);
        }
        let res = Scalar::new(n, d);
        if !res.is_zero() {
            out.push((s, res));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Convenience: residues of a factored rational function.
pub fn delta_residues_factored(
    f: &super::factored::FactoredScalar,
) -> Result<Vec<(Monomial, Scalar)>, CoeffError> {
    delta_residues(&f.expand()?)
}

/// z-monomial helper used throughout: S·u/z style supports.
pub fn support_over_z(s: &Monomial) -> Monomial {
    s.mul(&Monomial::var_pow(Var::Z, -1))
}

#[cfg(test)]
mod tests {
    use super::super::factored::FactoredScalar;
    use super::super::poly::Rat;
    use super::super::series::{series_expand, Direction};
    use super::*;
    use num_traits::One;

    fn um() -> Monomial {
        Monomial::var(Var::U)
    }

    #[test]
    fn single_simple_pole() {
        // z/(z-u): f+ - f- = delta(u/z) with residue coefficient 1... in the
        // dz/z convention: res_{z=u} [z/(z-u)] dz/z = 1, support u.
        let num = LaurentPoly::var(Var::Z);
        let mut den = LaurentPoly::var(Var::Z);
        den.add_term(um(), rat_m1());
        let f = Scalar::new(num, den);
        let r = delta_residues(&f).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, um());
        assert!(r[0].1.is_one());
    }

    fn rat_m1() -> Rat {
        -Rat::one()
    }

    #[test]
    fn constant_has_no_residues() {
        let r = delta_residues(&Scalar::one()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn series_difference_equals_residue_expansion() {
        // Lemma-style identity for gamma_{0,u}: check modes |m| <= 6.
        let uz = Monomial::from_pairs([(Var::U, 1), (Var::Z, -1)]);
        let q2 = Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]);
        let q3 = Monomial::var(Var::Q3);
        let q1i = Monomial::var_pow(Var::Q1, -1);
        let gamma = FactoredScalar::one()
            .with_factor(q3.mul(&uz), 1)
            .with_factor(q2.mul(&uz), 1)
            .with_factor(q1i.mul(&uz), -1)
            .with_factor(uz.clone(), -1);
        let k = 6usize;
        let plus = series_expand(&gamma, Direction::AtInfinity, k).unwrap();
        let minus = series_expand(&gamma, Direction::AtZero, k).unwrap();
        let res = delta_residues_factored(&gamma).unwrap();
        assert_eq!(res.len(), 2);
        // mode m >= 0: coefficient of z^{-m} in the difference is
        // plus[m] (minus contributes only z^{+})... except m = 0 where both sides contribute.
        for m in -(k as i64)..=(k as i64) {
            let lhs = if m > 0 {
                plus.coeff(m as usize).clone()
            } else if m < 0 {
                minus.coeff((-m) as usize).neg()
            } else {
                plus.coeff(0).sub(minus.coeff(0))
            };
            let mut rhs = Scalar::zero();
            for (s, r) in &res {
                // delta(z/S) = sum_m (S/z)^... delta(z/S) = sum_n (z/S)^n; the
                // coefficient of z^{-m} is S^{m}.
                rhs = rhs.add(&r.mul_monomial(&s.pow(m)));
            }
            assert!(lhs.eq(&rhs), "mode {}: {} != {}", m, lhs, rhs);
        }
    }
}
