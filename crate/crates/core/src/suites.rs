//! The standard verification suites. These pin the windows and tolerances
//! of the acceptance run; the CLI defaults and the acceptance tests both
//! call into here so `verify --all` reproduces the acceptance gate.

use crate::coeff::{
    delta_residues_factored, series_expand, Direction, FactoredScalar, Monomial, Scalar, Var,
};
use crate::daha;
use crate::macdonald::{wheel_vanishes, MacdonaldTable};
use crate::partition::{partitions_up_to, tailed_up_to, Partition, TailSpec};
use crate::relations::{
    all_relations, CaseResult, CheckSpec, FamilyConfig, QMode, RelId, Report, Status, SuiteConfig,
};
use crate::reps::{
    apply_to_basis, fock_factorized_check, Gen, Module, RepsError, ResonanceModule, TensorModule,
    WkrNModule, WnPlusModule,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pass_case(id: String) -> CaseResult {
    CaseResult {
        id,
        status: Status::Pass,
        detail: String::new(),
    }
}

fn fail_case(id: String, detail: String) -> CaseResult {
    CaseResult {
        id,
        status: Status::Fail,
        detail,
    }
}

fn error_case(id: String, detail: String) -> CaseResult {
    CaseResult {
        id,
        status: Status::Error,
        detail,
    }
}

fn outcome(id: String, r: Result<bool, RepsError>, fail_msg: &str) -> CaseResult {
    match r {
        Ok(true) => pass_case(id),
        Ok(false) => fail_case(id, fail_msg.into()),
        Err(e) => error_case(id, e.to_string()),
    }
}

/// Criterion 1: every defining relation on V(u), mode window 3,
/// basis i ∈ [−3, 3], symbolic parameters.
pub fn vector_suite(qmode: QMode) -> Report {
    crate::relations::run_suite(&SuiteConfig {
        family: FamilyConfig::Vector {
            basis_lo: -3,
            basis_hi: 3,
        },
        spec: CheckSpec::with_window(3),
        relations: all_relations(),
        qmode,
        ee_antisym: false,
    })
}

/// Criterion 2: tensor products for N = 2, 3 with fully symbolic u₁…u_N,
/// mode window 3, entries in [−2, 2]; plus the deliberate u₂ = q₁u₁ case
/// that must raise a PoleCollision.
pub fn tensor_suite(qmode: QMode) -> Report {
    let mut parts = Vec::new();
    for n in [2usize, 3] {
        parts.push(crate::relations::run_suite(&SuiteConfig {
            family: FamilyConfig::Tensor {
                n,
                entry_lo: -2,
                entry_hi: 2,
            },
            spec: CheckSpec::with_window(3),
            relations: all_relations(),
            qmode,
            ee_antisym: false,
        }));
    }
    let mut guard = Report::from_cases(
        "tensor-pole-guard",
        serde_json::json!({}),
        vec![tensor_pole_guard_case()],
    );
    guard.seconds = 0.0;
    parts.push(guard);
    Report::merged(
        "tensor",
        serde_json::json!({"N": [2, 3], "entries": [-2, 2], "mode_window": 3}),
        parts,
    )
}

/// The genericity-condition guard: u₂ = q₁u₁ violates u_i/u_j ∉ q₁^ℤ, and
/// the action must report a PoleCollision instead of silently dividing.
pub fn tensor_pole_guard_case() -> CaseResult {
    let u1 = Monomial::var(Var::USub(1));
    let u2 = Monomial::var(Var::Q1).mul(&u1);
    let t = TensorModule::with_params(vec![u1, u2]);
    let id = "tensor pole-guard u2=q1*u1 a=(1,0)".to_string();
    match t.e_delta(&vec![1, 0]) {
        Err(RepsError::PoleCollision(_)) => pass_case(id),
        Err(e) => fail_case(id, format!("wrong error: {}", e)),
        Ok(_) => fail_case(id, "pole was not detected".into()),
    }
}

/// Criterion 3: W^N for N = 2, 3, entries in [−2, 3], mode window 2:
/// rel1–rel3, Serre, level (1,1), with the ee antisymmetrization
/// consistency on every instance.
pub fn wn_suite(qmode: QMode) -> Report {
    let mut parts = Vec::new();
    for n in [2usize, 3] {
        parts.push(crate::relations::run_suite(&SuiteConfig {
            family: FamilyConfig::Wn {
                n,
                entry_lo: -2,
                entry_hi: 3,
            },
            spec: CheckSpec::with_window(2),
            relations: all_relations(),
            qmode,
            ee_antisym: true,
        }));
    }
    Report::merged(
        "wn",
        serde_json::json!({"N": [2, 3], "entries": [-2, 3], "mode_window": 2}),
        parts,
    )
}

/// Criterion 4: the Fock module, |λ| ≤ 6, mode window 3: all relations,
/// level (1, q₂), the factorized-ψ agreement on every shape, and the
/// stability of the modified operators for N ∈ {3, 4, 5}.
pub fn fock_suite(qmode: QMode) -> Report {
    let mut parts = vec![crate::relations::run_suite(&SuiteConfig {
        family: FamilyConfig::Fock { max_weight: 6 },
        spec: CheckSpec::with_window(3),
        relations: all_relations(),
        qmode,
        ee_antisym: false,
    })];
    // factorized forms
    let u = Monomial::var(Var::U);
    let cases = crate::par::map_collect(partitions_up_to(6), |lam| {
        outcome(
            format!("fock factorized psi/e/f lam={:?}", lam),
            fock_factorized_check(&lam, &u),
            "factorized coefficients differ from the direct ones",
        )
    });
    parts.push(Report::from_cases(
        "fock-factorized",
        serde_json::json!({"max_weight": 6}),
        cases,
    ));
    parts.push(fock_stability_suite(&[3, 4, 5], 5, 3));
    Report::merged(
        "fock",
        serde_json::json!({"max_weight": 6, "mode_window": 3, "stability_N": [3,4,5]}),
        parts,
    )
}

/// Stability of the modified operators on W^{N,+}: for λ_N = 0, appending
/// a zero row commutes with every generator mode (exact StateVector
/// equality under the embedding).
pub fn fock_stability_suite(ns: &[usize], max_weight: i64, mode_window: i64) -> Report {
    let mut instances = Vec::new();
    for &n in ns {
        for lam in partitions_up_to(max_weight) {
            if lam.len() >= n {
                continue; // λ_N must be 0
            }
            for m in -mode_window..=mode_window {
                instances.push((n, lam.clone(), Gen::E(m)));
                instances.push((n, lam.clone(), Gen::F(m)));
                if m >= 0 {
                    instances.push((n, lam.clone(), Gen::PsiPlus(m)));
                }
                if m <= 0 {
                    instances.push((n, lam.clone(), Gen::PsiMinus(m)));
                }
            }
        }
    }
    let cases = crate::par::map_collect(instances, |(n, lam, g)| {
        let id = format!("stability N={} {} lam={:?}", n, g, lam);
        let run = || -> Result<bool, RepsError> {
            let small = WnPlusModule::new(n);
            let large = WnPlusModule::new(n + 1);
            let lam_n = Partition::zvalued(lam.padded(n)).unwrap();
            let lam_n1 = Partition::zvalued(lam.padded(n + 1)).unwrap();
            let a = apply_to_basis(&small, g, &lam_n)?
                .map_labels(|l| Partition::zvalued(l.padded(n + 1)).unwrap());
            let b = apply_to_basis(&large, g, &lam_n1)?;
            Ok(a.equals(&b)?)
        };
        outcome(id, run(), "modified action does not commute with the embedding")
    });
    Report::from_cases(
        "fock-stability",
        serde_json::json!({"N": ns, "max_weight": max_weight, "mode_window": mode_window}),
        cases,
    )
}

/// Criterion 5: the Macdonald cross-check for N ≤ 3, |λ| ≤ 5.
pub fn macdonald_suite() -> Report {
    let table = MacdonaldTable::new();
    let parts = (1..=3usize)
        .map(|n| daha::check_identification(n, 5, &table))
        .collect();
    Report::merged(
        "macdonald-crosscheck",
        serde_json::json!({"N": [1, 2, 3], "max_weight": 5}),
        parts,
    )
}

/// Criterion 6: the DAHA-bridge mode recursion on V(u) and ℱ(u), |m| ≤ 2,
/// plus the e_m reconstruction from e₀ on V(u).
pub fn daha_suite() -> Report {
    let v = crate::reps::VectorModule::new();
    let vbasis: Vec<i64> = (-2..=2).collect();
    let f = crate::reps::FockModule::new();
    let fbasis = partitions_up_to(3);
    let parts = vec![
        daha::check_mode_recursion(&v, "vector", 2, &vbasis),
        daha::check_mode_recursion(&f, "fock", 2, &fbasis),
        daha::check_mode_reconstruction(&v, "vector", 2, &vbasis),
    ];
    Report::merged(
        "daha-bridge",
        serde_json::json!({"mode_window": 2}),
        parts,
    )
}

/// Criterion 7: the resonance suites for one (k, r, c).
pub fn resonance_suite(spec: &TailSpec, qmode: QMode) -> Report {
    let max_rel_weight = 5;
    let mut parts = Vec::new();
    // relations rel1, rel3, Serre + level on the window
    parts.push(crate::relations::run_suite(&SuiteConfig {
        family: FamilyConfig::Resonance {
            spec: spec.clone(),
            max_rel_weight,
        },
        spec: CheckSpec::with_window(2),
        relations: vec![
            RelId::Ee,
            RelId::Ff,
            RelId::Ef,
            RelId::SerreE,
            RelId::SerreF,
            RelId::Level,
        ],
        qmode,
        ee_antisym: false,
    }));
    // admissibility closure and boundary vanishing on the same window
    let module = ResonanceModule::new(spec.clone()).expect("valid resonance pair");
    let basis = tailed_up_to(spec, max_rel_weight);
    let k = spec.k;
    let r = spec.r;
    let closure_cases = crate::par::map_collect(basis.clone(), |lam| {
        let id = format!("closure k={} r={} c={:?} lam={:?}", k, r, spec.c, lam);
        let run = || -> Result<bool, RepsError> {
            for dt in module.e_delta(&lam)? {
                if !dt.target.is_admissible() {
                    return Ok(false);
                }
            }
            for dt in module.f_delta(&lam)? {
                if !dt.target.is_admissible() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        outcome(id, run(), "action leaves the admissible span")
    });
    parts.push(Report::from_cases(
        "resonance-closure",
        serde_json::json!({"k": k, "r": r, "c": spec.c}),
        closure_cases,
    ));
    let wall_cases = crate::par::map_collect(basis.clone(), |lam| {
        let id = format!(
            "boundary-vanish k={} r={} c={:?} lam={:?}",
            k, r, spec.c, lam
        );
        let run = || -> Result<bool, RepsError> {
            let deltas = module.e_delta(&lam)?;
            for i in 1..=(lam.stabilization_index() + k) {
                if lam.part(i) - lam.part(i + k) == r {
                    // raising row i+k collides with the admissibility wall
                    if let Some(wall) = lam.shift_box(i + k, 1) {
                        if deltas.iter().any(|d| d.target == wall) {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        };
        outcome(id, run(), "matrix coefficient at the wall is nonzero")
    });
    parts.push(Report::from_cases(
        "resonance-boundary",
        serde_json::json!({"k": k, "r": r, "c": spec.c}),
        wall_cases,
    ));
    parts.push(resonance_stability_suite(spec, max_rel_weight, 3));
    Report::merged(
        "resonance",
        serde_json::json!({"k": k, "r": r, "c": spec.c, "max_rel_weight": max_rel_weight}),
        parts,
    )
}

/// Lemma-Pkr stability: for λ whose last period already equals the tail,
/// appending one more period commutes with the modified action.
pub fn resonance_stability_suite(spec: &TailSpec, max_rel_weight: i64, mode_window: i64) -> Report {
    let k = spec.k;
    let mut instances = Vec::new();
    for lam in tailed_up_to(spec, max_rel_weight) {
        let n = (lam.stabilization_index() + k - 1) as usize;
        for m in -mode_window..=mode_window {
            instances.push((lam.clone(), n, Gen::E(m)));
            instances.push((lam.clone(), n, Gen::F(m)));
            if m >= 0 {
                instances.push((lam.clone(), n, Gen::PsiPlus(m)));
            }
            if m <= 0 {
                instances.push((lam.clone(), n, Gen::PsiMinus(m)));
            }
        }
    }
    let cases = crate::par::map_collect(instances, |(lam, n, g)| {
        let id = format!(
            "pkr-stability k={} r={} c={:?} N={} {} lam={:?}",
            spec.k, spec.r, spec.c, n, g, lam
        );
        let run = || -> Result<bool, RepsError> {
            let small = WkrNModule::new(spec.clone(), n)?;
            let large = WkrNModule::new(spec.clone(), n + k as usize)?;
            let lam_n = Partition::zvalued(lam.truncate(n)).unwrap();
            let lam_nk = Partition::zvalued(lam.truncate(n + k as usize)).unwrap();
            let a = apply_to_basis(&small, g, &lam_n)?.map_labels(|l| {
                let mut parts = l.parts().to_vec();
                for j in 1..=k {
                    parts.push(spec.tail_value(n as i64 + j));
                }
                Partition::zvalued(parts).unwrap()
            });
            let b = apply_to_basis(&large, g, &lam_nk)?;
            Ok(a.equals(&b)?)
        };
        outcome(id, run(), "modified action does not commute with the embedding")
    });
    Report::from_cases(
        "resonance-stability",
        serde_json::json!({"k": spec.k, "r": spec.r, "c": spec.c,
            "max_rel_weight": max_rel_weight, "mode_window": mode_window}),
        cases,
    )
}

/// All resonance suites of the acceptance run:
/// (k, r) ∈ {(1,2), (2,2), (2,3)}, every valid c.
pub fn all_resonance_suites(qmode: QMode) -> Report {
    let mut parts = Vec::new();
    for (k, r) in [(1i64, 2i64), (2, 2), (2, 3)] {
        for c in TailSpec::all_offsets(k, r) {
            let spec = TailSpec::new(k, r, c).unwrap();
            parts.push(resonance_suite(&spec, qmode));
        }
    }
    Report::merged(
        "resonance-all",
        serde_json::json!({"pairs": [[1,2],[2,2],[2,3]]}),
        parts,
    )
}

/// Criterion 8: wheel-condition instances. For (k, r) ∈ {(1,2), (2,3)} and
/// N = k+1, every admissible λ with |λ| ≤ 5 gives a P_λ vanishing on all
/// wheel substitutions; an inadmissible control shape must not vanish.
pub fn wheel_suite() -> Report {
    let table = MacdonaldTable::new();
    let mut cases = Vec::new();
    for (k, r) in [(1i64, 2i64), (2, 3)] {
        let n = (k + 1) as usize;
        for w in 0..=5i64 {
            for lam in crate::partition::partitions_of_max_len(w, n) {
                let full = Partition::zvalued(lam.padded(n)).unwrap();
                if !full.is_admissible(k as usize, r) {
                    continue;
                }
                let p = table.macdonald_p_laurent(&lam, n);
                let id = format!("wheel k={} r={} lam={:?}", k, r, lam);
                match wheel_vanishes(&p, k, r) {
                    Ok(true) => cases.push(pass_case(id)),
                    Ok(false) => cases.push(fail_case(id, "admissible P does not vanish".into())),
                    Err(e) => cases.push(error_case(id, e.to_string())),
                }
            }
        }
        // control: an inadmissible shape must not vanish
        let control = Partition::nonneg(vec![1]).unwrap();
        let p = table.macdonald_p_laurent(&control, n);
        let id = format!("wheel-control k={} r={} lam=[1]", k, r);
        match wheel_vanishes(&p, k, r) {
            Ok(false) => cases.push(pass_case(id)),
            Ok(true) => cases.push(fail_case(id, "inadmissible P vanished".into())),
            Err(e) => cases.push(error_case(id, e.to_string())),
        }
    }
    Report::from_cases(
        "wheel",
        serde_json::json!({"pairs": [[1,2],[2,3]], "max_weight": 5}),
        cases,
    )
}

/// Criterion 9: c_λ consistency for |λ| ≤ 4 and all row pairs.
pub fn c_ratio_suite() -> Report {
    daha::check_c_ratios(4)
}

/// Criterion 10: the delta-residue identity on random 4-factor rational
/// functions: the difference of the two expansions equals the residue
/// expansion through mode 6, for 100 seeded samples.
pub fn lemma_sp_suite(seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    'outer: while samples.len() < 100 {
        // four distinct monomials q1^a q3^b with small exponents, exponents
        // +1, +1, -1, -1 so the function is regular at 0 and infinity
        let mut monos: Vec<Monomial> = Vec::new();
        for _ in 0..4 {
            let a = rng.gen_range(-3i64..=3);
            let b = rng.gen_range(-3i64..=3);
            monos.push(Monomial::from_pairs([(Var::Q1, a), (Var::Q3, b)]));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if monos[i] == monos[j] {
                    continue 'outer; // poles must be simple, supports distinct
                }
            }
        }
        samples.push(monos);
    }
    let k = 6usize;
    let cases = crate::par::map_collect(samples.into_iter().enumerate().collect(), |(idx, monos)| {
        let id = format!("lemma-sp sample {}", idx);
        let uz = Monomial::from_pairs([(Var::U, 1), (Var::Z, -1)]);
        let mut f = FactoredScalar::one();
        for (i, m) in monos.iter().enumerate() {
            f.push_factor(m.mul(&uz), if i < 2 { 1 } else { -1 });
        }
        let run = || -> Result<bool, crate::coeff::CoeffError> {
            let plus = series_expand(&f, Direction::AtInfinity, k)?;
            let minus = series_expand(&f, Direction::AtZero, k)?;
            let res = delta_residues_factored(&f)?;
            for m in -(k as i64)..=(k as i64) {
                let lhs = if m > 0 {
                    plus.coeff(m as usize).clone()
                } else if m < 0 {
                    minus.coeff((-m) as usize).neg()
                } else {
                    plus.coeff(0).sub(minus.coeff(0))
                };
                let mut rhs = Scalar::zero();
                for (s, c) in &res {
                    rhs = rhs.add(&c.mul_monomial(&s.pow(m)));
                }
                if !lhs.eq(&rhs) {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        match run() {
            Ok(true) => pass_case(id),
            Ok(false) => fail_case(id, "series difference != residue expansion".into()),
            Err(e) => error_case(id, e.to_string()),
        }
    });
    Report::from_cases(
        "lemma-sp",
        serde_json::json!({"samples": 100, "mode_window": 6, "seed": seed}),
        cases,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_guard_case_passes() {
        assert_eq!(tensor_pole_guard_case().status, Status::Pass);
    }

    #[test]
    fn lemma_sp_holds_on_random_samples() {
        // smaller sample count lives in the acceptance suite; spot-check here
        let r = lemma_sp_suite(1);
        assert!(r.passed());
    }

    #[test]
    fn fock_stability_small() {
        let r = fock_stability_suite(&[2], 2, 1);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn resonance_stability_small() {
        let spec = TailSpec::new(1, 2, vec![]).unwrap();
        let r = resonance_stability_suite(&spec, 2, 1);
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }
}
