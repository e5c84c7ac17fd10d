//! Laurent monomials: finite maps from variables to integer exponents.

use super::vars::Var;
use std::cmp::Ordering;
use std::fmt;

/// A Laurent monomial ∏ vᵉ with e ∈ ℤ. Zero exponents are never stored;
/// the empty monomial is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    /// Sorted by variable, exponents nonzero.
    exps: Vec<(Var, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn var_pow(v: Var, e: i64) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Build from (variable, exponent) pairs; repeated variables accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i64)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var_pow(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.exps
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    exps.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        exps.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * n)).collect(),
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Replace every occurrence of `v` by the monomial `by` (so vᵉ ↦ byᵉ).
    pub fn subst_var(&self, v: Var, by: &Monomial) -> Monomial {
        let e = self.exponent(v);
        if e == 0 {
            return self.clone();
        }
        let mut rest = Monomial {
            exps: self.exps.iter().copied().filter(|(w, _)| *w != v).collect(),
        };
        rest = rest.mul(&by.pow(e));
        rest
    }

    /// True when all exponents of `self` are divisible by `d`.
    pub fn divisible_exponents(&self, d: i64) -> bool {
        self.exps.iter().all(|(_, e)| e % d == 0)
    }

    /// The monomial with every exponent divided by `d` (exactly).
    pub fn root(&self, d: i64) -> Monomial {
        debug_assert!(self.divisible_exponents(d));
        Monomial {
            exps: self
                .exps
                .iter()
                .filter(|(_, e)| e / d != 0)
                .map(|&(v, e)| (v, e / d))
                .collect(),
        }
    }
}

/// Lexicographic order on exponent vectors over the union of variables,
/// missing exponents read as 0. Gives the canonical term order for printing.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => {
                    if ea != 0 {
                        return ea.cmp(&0);
                    }
                    i += 1;
                }
                (None, Some(&(_, eb))) => {
                    if eb != 0 {
                        return 0.cmp(&eb);
                    }
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        if ea != 0 {
                            return ea.cmp(&0);
                        }
                        i += 1;
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return 0.cmp(&eb);
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}^{}", v, e)?;
        }
        Ok(())
    }
}
