//! Verification bridge between the module side and the spherical-DAHA
//! picture, through the faithful polynomial representation:
//!
//! * identification of the W^N(1) action with the Macdonald engine under
//!   q = q₁, t = q₃⁻¹ ((1−q₁)e₀ ↔ multiplication by Σxᵢ, ψ±-modes ↔ D^{±1}_N
//!   eigenvalues with their prefactors),
//! * the four-generator mode recursion [ψ⁺₁, e_m] = c⁺(Σqⱼ−Σqⱼ⁻¹)e_{m+1}
//!   and its mirrors,
//! * the c_λ basis-change ratios d_{λ,i} and their cocycle consistency.

use crate::coeff::{sigma1, sigma2, FactoredScalar, Monomial, Scalar, Var};
use crate::macdonald::{d1_eigenvalue, MacdonaldTable};
use crate::partition::{partitions_of_max_len, Partition};
use crate::relations::{CaseResult, Report, Status};
use crate::reps::{apply, Gen, Module, SeriesCache, StateVector, WnModule};

/// Bridge a Macdonald-side scalar over ℚ(q, t) into ℚ(q₁, q₃) via
/// q = q₁, t = q₃⁻¹.
pub fn bridge(s: &Scalar) -> Scalar {
    s.subst_var(Var::Q, &Monomial::var(Var::Q1))
        .subst_var(Var::T, &Monomial::var_pow(Var::Q3, -1))
}

fn case(id: String, ok: bool, detail: String) -> CaseResult {
    CaseResult {
        id,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: if ok { String::new() } else { detail },
    }
}

/// Compare the W^N(1) matrix coefficients of e₀/f₀ against the Pieri
/// oracle and the ψ⁺₁/ψ⁻₋₁ eigenvalues against the D^{±1}_N eigenvalues,
/// for all λ with |λ| ≤ weight bound and at most N parts.
pub fn check_identification(n: usize, max_weight: i64, table: &MacdonaldTable) -> Report {
    let wn = WnModule::with_param(n, Monomial::one());
    let mut shapes = Vec::new();
    for w in 0..=max_weight {
        shapes.extend(partitions_of_max_len(w, n));
    }
    let cases = crate::par::map_collect(shapes, |lam| {
        let padded = Partition::zvalued(lam.padded(n)).unwrap();
        let mut out = Vec::new();

        // e0 against the Σx Pieri expansion
        match wn.e_delta(&padded) {
            Ok(deltas) => {
                let pieri = table.pieri_e1(&lam, n);
                let mut matched = 0usize;
                let mut ok = true;
                let mut detail = String::new();
                for dt in &deltas {
                    // (1−q₁) e₀ coefficient = the row product
                    let lhs = dt
                        .coeff
                        .mul(&crate::reps::vector::e_prefactor().inv())
                        .expand()
                        .unwrap();
                    match pieri.get(&dt.target) {
                        Some(rhs) if lhs.eq(&bridge(rhs)) => matched += 1,
                        Some(rhs) => {
                            ok = false;
                            detail = format!(
                                "e0 target {:?}: module {} vs pieri {}",
                                dt.target,
                                lhs,
                                bridge(rhs)
                            );
                        }
                        None => {
                            ok = false;
                            detail = format!("e0 target {:?} missing from pieri", dt.target);
                        }
                    }
                }
                if ok && matched != pieri.len() {
                    ok = false;
                    detail = format!(
                        "pieri has {} targets, module action has {}",
                        pieri.len(),
                        matched
                    );
                }
                out.push(case(format!("ident e0 N={} lam={:?}", n, lam), ok, detail));
            }
            Err(e) => out.push(CaseResult {
                id: format!("ident e0 N={} lam={:?}", n, lam),
                status: Status::Error,
                detail: e.to_string(),
            }),
        }

        // f0 against the Σx⁻¹ Pieri expansion (Laurent extension)
        match wn.f_delta(&padded) {
            Ok(deltas) => {
                let pieri = table.pieri_f1(&lam, n);
                let mut matched = 0usize;
                let mut ok = true;
                let mut detail = String::new();
                for dt in &deltas {
                    let lhs = dt
                        .coeff
                        .mul(&crate::reps::vector::f_prefactor().inv())
                        .expand()
                        .unwrap();
                    match pieri.get(&dt.target) {
                        Some(rhs) if lhs.eq(&bridge(rhs)) => matched += 1,
                        Some(rhs) => {
                            ok = false;
                            detail = format!(
                                "f0 target {:?}: module {} vs pieri {}",
                                dt.target,
                                lhs,
                                bridge(rhs)
                            );
                        }
                        None => {
                            ok = false;
                            detail = format!("f0 target {:?} missing from pieri", dt.target);
                        }
                    }
                }
                if ok && matched != pieri.len() {
                    ok = false;
                    detail = format!(
                        "pieri has {} targets, module action has {}",
                        pieri.len(),
                        matched
                    );
                }
                out.push(case(format!("ident f0 N={} lam={:?}", n, lam), ok, detail));
            }
            Err(e) => out.push(CaseResult {
                id: format!("ident f0 N={} lam={:?}", n, lam),
                status: Status::Error,
                detail: e.to_string(),
            }),
        }

        // ψ⁺₁ eigenvalue = q₃^{N−1}(1−q₂)(1−q₃) · D¹_N eigenvalue
        let cache = SeriesCache::new();
        let psi1 = cache.psi_coeff(&wn, &padded, Gen::PsiPlus(1)).unwrap();
        let q2 = Monomial::from_pairs([(Var::Q1, -1), (Var::Q3, -1)]);
        let pref_plus = FactoredScalar::from_monomial(Monomial::var_pow(Var::Q3, n as i64 - 1))
            .with_factor(q2.clone(), 1)
            .with_factor(Monomial::var(Var::Q3), 1)
            .expand()
            .unwrap();
        let rhs = pref_plus.mul(&bridge(&d1_eigenvalue(&lam, n, 1)));
        out.push(case(
            format!("ident psi+1 N={} lam={:?}", n, lam),
            psi1.eq(&rhs),
            format!("module {} vs D1 {}", psi1, rhs),
        ));

        // ψ⁻₋₁ eigenvalue = q₃^{1−N}(1−q₂⁻¹)(1−q₃⁻¹) · D⁻¹_N eigenvalue
        let psim1 = cache.psi_coeff(&wn, &padded, Gen::PsiMinus(-1)).unwrap();
        let pref_minus = FactoredScalar::from_monomial(Monomial::var_pow(Var::Q3, 1 - n as i64))
            .with_factor(q2.inv(), 1)
            .with_factor(Monomial::var_pow(Var::Q3, -1), 1)
            .expand()
            .unwrap();
        let rhs = pref_minus.mul(&bridge(&d1_eigenvalue(&lam, n, -1)));
        out.push(case(
            format!("ident psi-1 N={} lam={:?}", n, lam),
            psim1.eq(&rhs),
            format!("module {} vs D-1 {}", psim1, rhs),
        ));
        out
    })
    .into_iter()
    .flatten()
    .collect();
    Report::from_cases(
        "daha-identification",
        serde_json::json!({"N": n, "max_weight": max_weight}),
        cases,
    )
}

/// The four mode-recursion identities on a module with scalar ψ±₀ = c±:
///   [ψ⁺₁, e_m] =  c⁺ (σ₁−σ₂) e_{m+1},   [ψ⁻₋₁, e_m] = −c⁻ (σ₁−σ₂) e_{m−1},
///   [ψ⁺₁, f_m] = −c⁺ (σ₁−σ₂) f_{m+1},   [ψ⁻₋₁, f_m] =  c⁻ (σ₁−σ₂) f_{m−1}.
pub fn check_mode_recursion<M: Module + Sync>(
    module: &M,
    suite: &str,
    mode_window: i64,
    basis: &[M::Label],
) -> Report {
    let diff = sigma1().sub(&sigma2());
    let (c_plus, c_minus) = module
        .levels_on(&basis[0])
        .expect("levels must be defined");
    let mut instances = Vec::new();
    for v in basis {
        for m in -mode_window..=mode_window {
            // (psi mode, x-kind is e?, shift, scalar multiple)
            instances.push((v.clone(), m, true, true));
            instances.push((v.clone(), m, true, false));
            instances.push((v.clone(), m, false, true));
            instances.push((v.clone(), m, false, false));
        }
    }
    let cases = crate::par::map_collect(instances, |(v, m, is_e, plus)| {
        let psi = if plus {
            Gen::PsiPlus(1)
        } else {
            Gen::PsiMinus(-1)
        };
        let x = |mm: i64| if is_e { Gen::E(mm) } else { Gen::F(mm) };
        let shift = if plus { 1 } else { -1 };
        // sign table of the four identities
        let sign = match (plus, is_e) {
            (true, true) => 1,
            (false, true) => -1,
            (true, false) => -1,
            (false, false) => 1,
        };
        let level = if plus { &c_plus } else { &c_minus };
        let rhs_scale = diff
            .mul(level)
            .scale(&crate::coeff::rat(sign))
            .neg();
        let id = format!(
            "mode-rec {} [psi{}1,{}_{}] v={:?}",
            suite,
            if plus { "+" } else { "-" },
            if is_e { "e" } else { "f" },
            m,
            v
        );
        let run = || -> Result<bool, crate::reps::RepsError> {
            let cache = SeriesCache::new();
            let unit = StateVector::unit(v.clone());
            let xa = apply(module, x(m), &unit, &cache)?;
            let a = apply(module, psi, &xa, &cache)?;
            let pa = apply(module, psi, &unit, &cache)?;
            let b = apply(module, x(m), &pa, &cache)?;
            let rhs = apply(module, x(m + shift), &unit, &cache)?;
            let residual = a.sub(&b).add(&rhs.scale_scalar(&rhs_scale));
            Ok(residual.is_zero()?)
        };
        match run() {
            Ok(true) => CaseResult {
                id,
                status: Status::Pass,
                detail: String::new(),
            },
            Ok(false) => CaseResult {
                id,
                status: Status::Fail,
                detail: "mode recursion identity violated".into(),
            },
            Err(e) => CaseResult {
                id,
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    });
    Report::from_cases(
        &format!("daha-mode-recursion-{}", suite),
        serde_json::json!({"suite": suite, "mode_window": mode_window}),
        cases,
    )
}

/// Reconstruct e_m from e₀ by iterated ψ-commutators and compare against the
/// direct action (vector module, |m| ≤ window).
pub fn check_mode_reconstruction<M: Module + Sync>(
    module: &M,
    suite: &str,
    window: i64,
    basis: &[M::Label],
) -> Report {
    let diff = sigma1().sub(&sigma2());
    let (c_plus, c_minus) = module.levels_on(&basis[0]).expect("levels");

    // recursive operator: rec(0) = e₀; rec(m+1) = [ψ⁺₁, rec(m)]/(c⁺(σ₁−σ₂));
    // rec(m−1) = −[ψ⁻₋₁, rec(m)]/(c⁻(σ₁−σ₂))
    fn rec<M: Module>(
        module: &M,
        m: i64,
        v: &StateVector<M::Label>,
        cache: &SeriesCache<M::Label>,
        scale_up: &Scalar,
        scale_down: &Scalar,
    ) -> Result<StateVector<M::Label>, crate::reps::RepsError> {
        if m == 0 {
            return apply(module, Gen::E(0), v, cache);
        }
        let (psi, toward_zero, scale) = if m > 0 {
            (Gen::PsiPlus(1), m - 1, scale_up)
        } else {
            (Gen::PsiMinus(-1), m + 1, scale_down)
        };
        let inner = rec(module, toward_zero, v, cache, scale_up, scale_down)?;
        let a = apply(module, psi, &inner, cache)?;
        let pv = apply(module, psi, v, cache)?;
        let b = rec(module, toward_zero, &pv, cache, scale_up, scale_down)?;
        Ok(a.sub(&b).scale_scalar(scale))
    }

    let scale_up = c_plus.mul(&diff).inv();
    let scale_down = c_minus.mul(&diff).inv().neg();
    let mut instances = Vec::new();
    for v in basis {
        for m in -window..=window {
            instances.push((v.clone(), m));
        }
    }
    let cases = crate::par::map_collect(instances, |(v, m)| {
        let id = format!("mode-reconstruct {} e_{} v={:?}", suite, m, v);
        let run = || -> Result<bool, crate::reps::RepsError> {
            let cache = SeriesCache::new();
            let unit = StateVector::unit(v.clone());
            let built = rec(module, m, &unit, &cache, &scale_up, &scale_down)?;
            let direct = apply(module, Gen::E(m), &unit, &cache)?;
            Ok(built.sub(&direct).is_zero()?)
        };
        match run() {
            Ok(true) => CaseResult {
                id,
                status: Status::Pass,
                detail: String::new(),
            },
            Ok(false) => CaseResult {
                id,
                status: Status::Fail,
                detail: "reconstructed mode differs".into(),
            },
            Err(e) => CaseResult {
                id,
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    });
    Report::from_cases(
        &format!("daha-mode-reconstruction-{}", suite),
        serde_json::json!({"suite": suite, "window": window}),
        cases,
    )
}

/// The basis-change ratio d_{λ,i} = c_{λ+𝟙ᵢ}/c_λ:
///   (1−q₁q₃) ∏_{j≥i} (1−q₁^{λ_{j+1}−λᵢ}q₃^{j−i+1})/(1−q₁^{λⱼ−λᵢ}q₃^{j−i+1})
///            ∏_{j<i} (1−q₁^{λⱼ−λᵢ−1}q₃^{j−i−1})/(1−q₁^{λⱼ−λᵢ−1}q₃^{j−i}),
/// the infinite product truncated at ℓ(λ)+1 with the tail factor asserted 1.
/// The formula is total in (λ, i): it evaluates as a rational expression
/// even when λ+𝟙ᵢ is not a partition (the cocycle identity is then still a
/// formal statement about the right-hand sides).
/// d as a formal expression on an arbitrary integer tuple (zero tail); the
/// cocycle identity passes through non-monotone intermediate tuples.
fn d_expr(parts: &[i64], i: usize) -> FactoredScalar {
    let ell = parts.len();
    let part = |j: usize| -> i64 { parts.get(j - 1).copied().unwrap_or(0) };
    let li = part(i);
    let factor_ge = |j: usize| -> FactoredScalar {
        let g = j as i64 - i as i64;
        FactoredScalar::one()
            .with_factor(
                Monomial::from_pairs([(Var::Q1, part(j + 1) - li), (Var::Q3, g + 1)]),
                1,
            )
            .with_factor(
                Monomial::from_pairs([(Var::Q1, part(j) - li), (Var::Q3, g + 1)]),
                -1,
            )
    };
    let mut d = FactoredScalar::one()
        .with_factor(Monomial::from_pairs([(Var::Q1, 1), (Var::Q3, 1)]), 1);
    for j in i..=ell + 1 {
        d = d.mul(&factor_ge(j));
    }
    debug_assert!(factor_ge(ell + 2).is_one_value(), "tail factor is not 1");
    for j in 1..i {
        let g = j as i64 - i as i64;
        d = d
            .with_factor(
                Monomial::from_pairs([(Var::Q1, part(j) - li - 1), (Var::Q3, g - 1)]),
                1,
            )
            .with_factor(
                Monomial::from_pairs([(Var::Q1, part(j) - li - 1), (Var::Q3, g)]),
                -1,
            );
    }
    d
}

pub fn c_ratio(lam: &Partition, i: usize) -> FactoredScalar {
    d_expr(lam.parts(), i)
}

/// The two-path consistency d_{λ+𝟙ᵢ,k} d_{λ,i} = d_{λ+𝟙ₖ,i} d_{λ,k},
/// evaluated as formal expressions so intermediate tuples need not be
/// partitions.
pub fn cocycle_check(lam: &Partition, i: usize, k: usize) -> bool {
    let mut base = lam.padded(i.max(k));
    let mut via = |first: usize, second: usize| -> FactoredScalar {
        let d1 = d_expr(&base, first);
        base[first - 1] += 1;
        let d2 = d_expr(&base, second);
        base[first - 1] -= 1;
        d2.mul(&d1)
    };
    let via_i = via(i, k);
    let via_k = via(k, i);
    via_i.eq_value(&via_k)
}

/// Cocycle consistency over all shapes of weight ≤ max_weight and all valid
/// row pairs, plus the anchor value c_{(1)}/c_∅ = 1−q₁q₃.
pub fn check_c_ratios(max_weight: i64) -> Report {
    let mut cases = Vec::new();
    // anchor
    let d = c_ratio(&Partition::empty(), 1);
    let expect = FactoredScalar::one()
        .with_factor(Monomial::from_pairs([(Var::Q1, 1), (Var::Q3, 1)]), 1);
    cases.push(case(
        "c-ratio c_(1)/c_() = 1-q1q3".into(),
        d.eq_value(&expect),
        format!("got {}", d),
    ));
    let mut shapes = Vec::new();
    for w in 0..=max_weight {
        shapes.extend(crate::partition::partitions_of(w));
    }
    let mut instances = Vec::new();
    for lam in shapes {
        let rows = lam.len() + 2;
        for i in 1..=rows {
            for k in (i + 1)..=rows {
                instances.push((lam.clone(), i, k));
            }
        }
    }
    cases.extend(crate::par::map_collect(instances, |(lam, i, k)| {
        case(
            format!("cocycle lam={:?} i={} k={}", lam, i, k),
            cocycle_check(&lam, i, k),
            "two update orders disagree".into(),
        )
    }));
    Report::from_cases(
        "daha-c-ratio",
        serde_json::json!({"max_weight": max_weight}),
        cases,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{FockModule, VectorModule};

    #[test]
    fn identification_small() {
        let table = MacdonaldTable::new();
        let r = check_identification(2, 3, &table);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn mode_recursion_on_vector_and_fock() {
        let v = VectorModule::new();
        let basis: Vec<i64> = (-2..=2).collect();
        let r = check_mode_recursion(&v, "vector", 2, &basis);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());

        let f = FockModule::new();
        let basis = crate::partition::partitions_up_to(2);
        let r = check_mode_recursion(&f, "fock", 1, &basis);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn mode_reconstruction_on_vector() {
        let v = VectorModule::new();
        let basis: Vec<i64> = (-1..=1).collect();
        let r = check_mode_reconstruction(&v, "vector", 2, &basis);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn c_ratio_anchor_and_cocycles() {
        let r = check_c_ratios(2);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
        // explicit spec'd instances
        assert!(cocycle_check(&Partition::empty(), 1, 2));
        assert!(cocycle_check(&Partition::nonneg(vec![1]).unwrap(), 1, 2));
    }
}
