//! Exact arithmetic over fields ℚ(v₁, …, v_n) of rational functions in named
//! commuting variables: sparse Laurent polynomials, factored binomial
//! products, truncated series expansions, delta-residue extraction, and the
//! resonance specialization.

pub mod factored;
pub mod monomial;
pub mod poly;
pub mod residues;
pub mod resonance;
pub mod scalar;
pub mod series;
pub mod vars;

pub use factored::{sum_fterms, FTerm, FactoredScalar};
pub use monomial::Monomial;
pub use poly::{rat, rat_frac, LaurentPoly, Rat, SparsePoly};
pub use residues::{delta_residues, delta_residues_factored};
pub use resonance::Resonance;
pub use scalar::{g11, sigma1, sigma2, Scalar};
pub use series::{series_expand, Direction, SeriesTrunc};
pub use vars::Var;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero: degenerate factor (1-1) in a denominator")]
    DivisionByZero,
    #[error("pole of order > 1 where a simple pole is required")]
    MultiplePole,
    #[error("denominator root is not a monomial in the remaining variables")]
    NonMonomialPole,
    #[error("function is singular at the expansion point")]
    SingularExpansion,
    #[error("surplus vanishing factor in a denominator under the resonance specialization")]
    ResonanceSingular,
    #[error("unsupported resonance pair (k={k}, r={r}): requires k>=1, r>=2, gcd(k+1, r-1)=1")]
    UnsupportedResonance { k: i64, r: i64 },
}

/// Recover a factored form from a scalar whose numerator and denominator are
/// pure binomial products (up to a unit). Inverse of `FactoredScalar::expand`
/// on that class; None when no such factorization is found.
pub fn refactor(s: &Scalar) -> Option<FactoredScalar> {
    let (cn, mn, fs_n) = factor_binomial_product(s.num())?;
    let (cd, md, fs_d) = factor_binomial_product(s.den())?;
    let mut f = FactoredScalar::unit(cn / cd, mn.div(&md));
    for a in fs_n {
        f.push_factor(a, 1);
    }
    for a in fs_d {
        f.push_factor(a, -1);
    }
    Some(f)
}

/// Factor p = c · M · ∏(1 − mᵢ) by backtracking over binomial candidates.
fn factor_binomial_product(p: &LaurentPoly) -> Option<(Rat, Monomial, Vec<Monomial>)> {
    if p.is_zero() {
        return None;
    }
    if p.num_terms() == 1 {
        let (m, c) = p.terms().next().unwrap();
        return Some((c.clone(), m.clone(), Vec::new()));
    }
    let monos: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    let mut cands: Vec<Monomial> = Vec::new();
    for a in &monos {
        for b in &monos {
            let r = a.div(b);
            if !r.is_one() {
                cands.push(r);
            }
        }
    }
    cands.sort();
    cands.dedup();
    for m in cands {
        if let Some(q) = p.divide_exact(&m) {
            if let Some((c, mono, mut fs)) = factor_binomial_product(&q) {
                fs.push(m);
                return Some((c, mono, fs));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refactor_roundtrip_on_binomial_products() {
        let q1 = Monomial::var(Var::Q1);
        let q3 = Monomial::var(Var::Q3);
        let f = FactoredScalar::unit(rat(-3), q1.pow(2))
            .with_factor(q1.mul(&q3), 1)
            .with_factor(q3.pow(2), 1)
            .with_factor(q1.pow(3).mul(&q3.inv()), -1);
        let s = f.expand().unwrap();
        let g = refactor(&s).expect("factorable");
        assert!(g.expand().unwrap().eq(&s));
    }

    #[test]
    fn refactor_handles_difference_of_squares() {
        // 1 - q1^2 is (1 - q1)(1 + q1); only (1 - q1^2) is a binomial factor
        // with monomial argument, and backtracking must find it.
        let q1 = Monomial::var(Var::Q1);
        let s = Scalar::from_poly(LaurentPoly::one_minus(&q1.pow(2)));
        let g = refactor(&s).expect("factorable");
        assert!(g.expand().unwrap().eq(&s));
    }
}
