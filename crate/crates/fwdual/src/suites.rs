//! Named verification suites: each builds the relevant objects, runs every
//! check, and returns a [`Suite`] of records. The CLI and the acceptance
//! tests share these runners.

use crate::cliffords;
use crate::config::{ConvChoice, RunConfig};
use crate::conservation::{
    self, drift_report, gaussian_packet, refinement_study, ChargeEvaluator, DriftTolerances,
    GridCtx, GridSpec, PacketParams,
};
use crate::exactnum::EvalPoint;
use crate::ops4::rank_q2;
use crate::report::{Check, Suite};
use crate::solutions::{
    all_branches, check_satisfies_fw, dirac_check, exact_eigenvalue, expectation, fw_matrix,
    hermitian_helicity_axis3, hermitian_spin3, inner, pd_spinor_unscaled,
    printed_spinor_unscaled, Family,
};
use crate::spinsets;
use crate::symdiff::{
    build_poincare, casimirs, resolve_conventions, spin_only_ops, verify_closure,
    verify_invariance, verify_spin_invariance, Conventions, DiffOp, RepKind,
};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    Clifford,
    Span,
    So8,
    Spin,
    Intertwine,
    PoincareFermi,
    PoincareBoseCartesian,
    PoincareBoseCyclic,
    Solutions,
    Conserve,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Clifford,
        SuiteId::Span,
        SuiteId::So8,
        SuiteId::Spin,
        SuiteId::Intertwine,
        SuiteId::PoincareFermi,
        SuiteId::PoincareBoseCartesian,
        SuiteId::PoincareBoseCyclic,
        SuiteId::Solutions,
        SuiteId::Conserve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Clifford => "clifford",
            SuiteId::Span => "ercd_span",
            SuiteId::So8 => "so8",
            SuiteId::Spin => "spin",
            SuiteId::Intertwine => "intertwine",
            SuiteId::PoincareFermi => "poincare_fermi",
            SuiteId::PoincareBoseCartesian => "poincare_bose_cartesian",
            SuiteId::PoincareBoseCyclic => "poincare_bose_cyclic",
            SuiteId::Solutions => "solutions",
            SuiteId::Conserve => "conserve",
        }
    }
}

pub fn run_suite(id: SuiteId, cfg: &RunConfig) -> Suite {
    let start = Instant::now();
    let mut suite = match id {
        SuiteId::Clifford => suite_clifford(),
        SuiteId::Span => suite_span(),
        SuiteId::So8 => suite_so8(),
        SuiteId::Spin => suite_spin(),
        SuiteId::Intertwine => suite_intertwine(),
        SuiteId::PoincareFermi => suite_poincare(RepKind::Fermi, cfg, true),
        SuiteId::PoincareBoseCartesian => suite_poincare(RepKind::BoseCartesian, cfg, false),
        SuiteId::PoincareBoseCyclic => suite_poincare(RepKind::BoseCyclic, cfg, false),
        SuiteId::Solutions => suite_solutions(cfg),
        SuiteId::Conserve => suite_conserve(cfg),
    };
    suite.elapsed = start.elapsed().as_secs_f64();
    suite
}

pub fn run_all(cfg: &RunConfig) -> Vec<Suite> {
    SuiteId::ALL.iter().map(|&id| run_suite(id, cfg)).collect()
}

// ---------------------------------------------------------------------------

fn suite_clifford() -> Suite {
    let basis = cliffords::build_bases();
    Suite::new("clifford", cliffords::verify_clifford7(&basis))
}

fn suite_span() -> Suite {
    let basis = cliffords::build_bases();
    let (ercd, cd) = cliffords::span_rank(&basis);
    let mut checks = vec![
        Check::new(
            "span.ercd",
            "real-linear rank of the 64 extended basis elements",
            "64",
            ercd.to_string(),
            ercd == 64,
        ),
        Check::new(
            "span.cd",
            "real-linear rank of the 16 Clifford-Dirac elements",
            "16",
            cd.to_string(),
            cd == 16,
        ),
    ];
    // control case: {1, i} span two real dimensions
    let rows = vec![
        crate::ops4::AntiOp::identity()
            .realify_exact()
            .unwrap()
            .flatten(),
        crate::ops4::AntiOp::identity()
            .scale(&crate::exactnum::Scalar::i())
            .realify_exact()
            .unwrap()
            .flatten(),
    ];
    let r = rank_q2(&rows);
    checks.push(Check::new(
        "span.unit_pair",
        "rank of {1, i} over the reals",
        "2",
        r.to_string(),
        r == 2,
    ));
    Suite::new("ercd_span", checks)
}

fn suite_so8() -> Suite {
    let basis = cliffords::build_bases();
    Suite::new("so8", cliffords::verify_so8(&basis))
}

fn suite_spin() -> Suite {
    let mut checks = Vec::new();
    for kind in [
        spinsets::SpinKind::Fermi,
        spinsets::SpinKind::PrimeBoson,
        spinsets::SpinKind::CartesianBoson,
        spinsets::SpinKind::CyclicBoson,
    ] {
        checks.extend(spinsets::verify_su2_casimir(&spinsets::build_spin(kind)));
    }
    checks.extend(spinsets::verify_spectra());
    Suite::new("spin", checks)
}

fn suite_intertwine() -> Suite {
    let (mut checks, reading) = spinsets::verify_intertwinings();
    checks.extend(spinsets::verify_h_invariance());
    let mut conv = BTreeMap::new();
    conv.insert(
        "w_conjugation_source".into(),
        match reading {
            Some(spinsets::WReading::TotalSpin) => "s + s'".to_string(),
            Some(spinsets::WReading::DoubledPrime) => "s' + s'".to_string(),
            None => "unresolved".to_string(),
        },
    );
    conv.insert("u_conjugation_direction".into(), "su = U st U^-1".into());
    Suite::new("intertwine", checks).with_conventions(conv)
}

/// Cached convention resolution per representation (the search costs a few
/// seconds of exact algebra).
fn resolved_for(rep: RepKind, cfg: &RunConfig) -> Result<(Conventions, i64, i64), String> {
    if let ConvChoice::Fixed(conv) = cfg.conventions {
        // trust but verify: closure sign and p^2 sign still measured
        let set = build_poincare(rep, &conv);
        let (_, g) = verify_closure(&set).map_err(|e| e.to_string())?;
        let cr = casimirs(&set, conv.eps_sign as i64).map_err(|e| e.to_string())?;
        return Ok((conv, g, cr.p_squared_sign));
    }
    static CACHE: OnceLock<Mutex<BTreeMap<&'static str, (Conventions, i64, i64)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(rep.name()) {
        return Ok(*hit);
    }
    let out = resolve_conventions(rep).map_err(|e| e.to_string())?;
    cache.lock().unwrap().insert(rep.name(), out);
    Ok(out)
}

fn conv_map(conv: &Conventions, closure_sign: i64, p2_sign: i64) -> BTreeMap<String, String> {
    let mut m = conv.describe();
    m.insert("closure_sign".into(), format!("{closure_sign:+}"));
    m.insert("p_squared_sign".into(), format!("{p2_sign:+}"));
    m
}

fn suite_poincare(rep: RepKind, cfg: &RunConfig, include_orbital: bool) -> Suite {
    let name = format!("poincare_{}", rep.name());
    let (conv, closure_sign, p2_sign) = match resolved_for(rep, cfg) {
        Ok(x) => x,
        Err(e) => {
            return Suite::new(
                name,
                vec![Check::new(
                    format!("poincare.{}.conventions", rep.name()),
                    "a convention tuple passes invariance, closure, and casimirs",
                    "resolvable",
                    e,
                    false,
                )],
            )
        }
    };
    let set = build_poincare(rep, &conv);
    let mut checks = verify_invariance(&set);
    checks.extend(verify_spin_invariance(rep));
    if include_orbital {
        let orbital = build_poincare(RepKind::Orbital, &conv);
        checks.extend(verify_invariance(&orbital));
        match verify_closure(&orbital) {
            Ok((cs, _)) => checks.extend(cs),
            Err(e) => checks.push(Check::new(
                "poincare.orbital.close",
                "orbital generators close",
                "closure",
                e.to_string(),
                false,
            )),
        }
    }
    match verify_closure(&set) {
        Ok((cs, _)) => checks.extend(cs),
        Err(e) => checks.push(Check::new(
            format!("poincare.{}.close", rep.name()),
            "generators close",
            "closure",
            e.to_string(),
            false,
        )),
    }
    match casimirs(&set, conv.eps_sign as i64) {
        Ok(cr) => checks.extend(cr.checks),
        Err(e) => checks.push(Check::new(
            format!("poincare.{}.casimir", rep.name()),
            "casimirs reduce to the expected constants",
            "constant matrices",
            e.to_string(),
            false,
        )),
    }
    Suite::new(name, checks).with_conventions(conv_map(&conv, closure_sign, p2_sign))
}

fn scalar_str(s: &crate::exactnum::Scalar) -> String {
    format!("{s}")
}

fn suite_solutions(cfg: &RunConfig) -> Suite {
    use crate::exactnum::Scalar;
    let mut checks = Vec::new();

    for family in Family::ALL {
        let branches = all_branches(family);

        // FW equation, satisfied symbolically by every branch
        for b in &branches {
            let pass = check_satisfies_fw(b);
            checks.push(Check::new(
                format!("solutions.{}.fw.{}", family.name(), b.index + 1),
                format!(
                    "branch {} (freq {}) satisfies (d_t + i g0 w) phi = 0",
                    b.label,
                    if b.freq < 0 { "-" } else { "+" }
                ),
                "0",
                if pass { "0" } else { "nonzero residual" },
                pass,
            ));
        }

        // frequency split: two branches per sign
        let minus = branches.iter().filter(|b| b.freq == -1).count();
        checks.push(Check::new(
            format!("solutions.{}.freqsplit", family.name()),
            "two orts on each frequency branch (g0 is traceless)",
            "2 + 2",
            format!("{} + {}", minus, 4 - minus),
            minus == 2,
        ));

        // orthonormality
        let mut ortho = true;
        for a in 0..4 {
            for b in 0..4 {
                let ip = inner(&branches[a].ort, &branches[b].ort);
                let expected = if a == b {
                    crate::exactnum::OmegaElem::one()
                } else {
                    crate::exactnum::OmegaElem::zero()
                };
                ortho &= ip == expected;
            }
        }
        checks.push(Check::new(
            format!("solutions.{}.orthonormal", family.name()),
            "the four orts are orthonormal",
            "identity Gram matrix",
            if ortho { "identity Gram matrix" } else { "mismatch" },
            ortho,
        ));

        // spin projection eigenvalues
        let spin3 = hermitian_spin3(family);
        let half = Scalar::from_ratio(1, 2);
        let candidates = [
            Scalar::from_int(1),
            Scalar::from_int(-1),
            Scalar::zero(),
            half.clone(),
            -&half,
        ];
        for b in &branches {
            let exp = expectation(family, b.index);
            let got = exact_eigenvalue(&spin3, &b.ort, &candidates);
            let pass = got.as_ref() == Some(&exp.spin3);
            let note = exp.note.map(|n| format!(" [{n}]")).unwrap_or_default();
            checks.push(Check::new(
                format!("solutions.{}.spin3.{}", family.name(), b.index + 1),
                format!("i s3 eigenvalue on branch {}{}", b.label, note),
                scalar_str(&exp.spin3),
                got.map(|s| scalar_str(&s)).unwrap_or_else(|| "not an eigenvector".into()),
                pass,
            ));
        }

        // charge sign (fermionic set only)
        if family == Family::Fermi {
            let g0 = cliffords::gamma0();
            for b in &branches {
                let exp = expectation(family, b.index).charge_sign.unwrap();
                let got = exact_eigenvalue(
                    &g0,
                    &b.ort,
                    &[Scalar::from_int(1), Scalar::from_int(-1)],
                );
                let pass = got == Some(Scalar::from_int(exp));
                checks.push(Check::new(
                    format!("solutions.fermi.charge.{}", b.index + 1),
                    format!("g0 (charge-sign counterpart of i g0) on branch {}", b.label),
                    exp.to_string(),
                    got.map(|s| scalar_str(&s)).unwrap_or_else(|| "not an eigenvector".into()),
                    pass,
                ));
            }
        }

        // helicity along the 3-axis
        let hel_expect: Vec<Scalar> = match family {
            Family::Fermi => vec![half.clone(), -&half, -&half, half.clone()],
            Family::BoseCartesian => {
                // literal spectrum of i st3 with the branch momentum sign
                vec![
                    Scalar::from_int(1),
                    Scalar::zero(),
                    Scalar::from_int(-1),
                    Scalar::zero(),
                ]
            }
            Family::BoseCyclic => vec![
                Scalar::from_int(1),
                Scalar::zero(),
                Scalar::from_int(-1),
                Scalar::zero(),
            ],
        };
        for b in &branches {
            let h = hermitian_helicity_axis3(b);
            let got = exact_eigenvalue(&h, &b.ort, &candidates);
            let exp = &hel_expect[b.index];
            let pass = got.as_ref() == Some(exp);
            checks.push(Check::new(
                format!("solutions.{}.helicity.{}", family.name(), b.index + 1),
                format!(
                    "helicity i (s.khat) for k on the 3-axis, branch {}",
                    b.label
                ),
                scalar_str(exp),
                got.map(|s| scalar_str(&s)).unwrap_or_else(|| "not an eigenvector".into()),
                pass,
            ));
        }

        // Dirac equation for every mapped branch
        for b in &branches {
            let pass = dirac_check(b);
            checks.push(Check::new(
                format!("solutions.{}.dirac.{}", family.name(), b.index + 1),
                format!(
                    "H(p) v = {} w v for the image of branch {}",
                    if b.freq < 0 { "+" } else { "-" },
                    b.label
                ),
                "exact eigenrelation",
                if pass { "exact eigenrelation" } else { "violated" },
                pass,
            ));
        }
    }

    // fermionic joint labels are non-degenerate
    {
        let g0 = cliffords::gamma0();
        let spin3 = hermitian_spin3(Family::Fermi);
        let half = Scalar::from_ratio(1, 2);
        let mut labels: Vec<String> = all_branches(Family::Fermi)
            .iter()
            .map(|b| {
                let c = exact_eigenvalue(&g0, &b.ort, &[Scalar::from_int(1), Scalar::from_int(-1)]);
                let s = exact_eigenvalue(&spin3, &b.ort, &[half.clone(), -&half]);
                format!("{}|{:?}|{:?}", b.momentum_sign(), c, s)
            })
            .collect();
        labels.sort();
        labels.dedup();
        checks.push(Check::new(
            "solutions.fermi.nondegenerate",
            "the joint labels (momentum sign, charge, spin) separate all four branches",
            "4 distinct",
            format!("{} distinct", labels.len()),
            labels.len() == 4,
        ));
    }

    // the FW map: exact unitarity on both frequency branches
    for freq in [-1i8, 1] {
        let v = fw_matrix(freq);
        let pass = v.is_unitary();
        checks.push(Check::new(
            format!("solutions.fwmap.unitary.{}", if freq < 0 { "minus" } else { "plus" }),
            "V V^dagger = V^dagger V = 1 exactly (w^2 = k^2 + m^2 applied)",
            "unitary",
            if pass { "unitary" } else { "not unitary" },
            pass,
        ));
    }

    // printed spinor columns
    for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
        let got = pd_spinor_unscaled(b);
        let exp = printed_spinor_unscaled(j);
        let pass = got == exp;
        checks.push(Check::new(
            format!("solutions.fwmap.spinor.{}", j + 1),
            format!(
                "image of branch {} is N((w+m)d; (sigma.k)d)-type with the printed plus sign",
                b.label
            ),
            "printed column",
            if pass { "printed column" } else { "mismatch" },
            pass,
        ));
    }

    // rest-frame reduction at k = 0
    {
        let at = EvalPoint::new([0.0, 0.0, 0.0], cfg.mass, 0.0);
        let mut pass = true;
        let mut worst: f64 = 0.0;
        for (j, b) in all_branches(Family::Fermi).iter().enumerate() {
            let v = fw_matrix(b.freq).eval_apply(&b.ort, &at).unwrap();
            for (c, x) in v.iter().enumerate() {
                let expected = if c == j { 1.0 } else { 0.0 };
                let d = (x - Complex64::new(expected, 0.0)).norm();
                worst = worst.max(d);
                pass &= d < 1e-13;
            }
        }
        checks.push(Check::new(
            "solutions.fwmap.rest_frame",
            "at k = 0 the images reduce to (d; 0) and (0; d)",
            "rest spinors",
            format!("max deviation {worst:.2e}"),
            pass,
        ));
    }

    // numeric isometry of the map at random momenta
    {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let at = EvalPoint::new(
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
                rng.gen_range(0.3..2.0),
                0.0,
            );
            for family in Family::ALL {
                let branches = all_branches(family);
                let images: Vec<_> = branches
                    .iter()
                    .map(|b| fw_matrix(b.freq).eval_apply(&b.ort, &at).unwrap())
                    .collect();
                for a in 0..4 {
                    for b in 0..4 {
                        if branches[a].freq != branches[b].freq {
                            continue;
                        }
                        let mut ip = Complex64::new(0.0, 0.0);
                        for j in 0..4 {
                            ip += images[a][j].conj() * images[b][j];
                        }
                        let expected = if a == b { 1.0 } else { 0.0 };
                        worst = worst.max((ip - Complex64::new(expected, 0.0)).norm());
                    }
                }
            }
        }
        checks.push(Check::new(
            "solutions.fwmap.isometry",
            "images of orthonormal orts stay orthonormal at random momenta",
            "deviation <= 1e-12",
            format!("max deviation {worst:.2e}"),
            worst <= 1e-12,
        ));
    }

    Suite::new("solutions", checks)
}

fn suite_conserve(cfg: &RunConfig) -> Suite {
    let mut checks = Vec::new();
    let spec = GridSpec {
        n: cfg.grid_n,
        kmax: cfg.grid_kmax,
    };
    let tol = DriftTolerances {
        matrix_drift: cfg.tol_drift,
        derivative_drift: cfg.tol_drift_deriv,
        matrix_imag: cfg.tol_numeric,
        derivative_imag: cfg.tol_drift_deriv / 10.0,
    };
    let times: Vec<f64> = (0..=10).map(|t| t as f64 / cfg.mass).collect();

    let conv = match resolved_for(RepKind::Fermi, cfg) {
        Ok((c, _, _)) => c,
        Err(e) => {
            return Suite::new(
                "conserve",
                vec![Check::new(
                    "conserve.conventions",
                    "generator conventions resolve",
                    "resolvable",
                    e,
                    false,
                )],
            )
        }
    };

    let mut ctx = GridCtx::new(spec, cfg.mass);

    // packets: one per family actually used
    let fermi_packet = match gaussian_packet(&PacketParams {
        family: Family::Fermi,
        sigma: cfg.sigma,
        spec,
        m: cfg.mass,
        ..Default::default()
    }) {
        Ok(p) => p,
        Err(e) => {
            return Suite::new(
                "conserve",
                vec![Check::new(
                    "conserve.packet",
                    "the default packet fits the grid",
                    "constructible",
                    e.to_string(),
                    false,
                )],
            )
        }
    };
    let bose_packet = gaussian_packet(&PacketParams {
        family: Family::BoseCartesian,
        sigma: cfg.sigma,
        spec,
        m: cfg.mass,
        ..Default::default()
    })
    .expect("same grid as the fermionic packet");

    // norm conservation
    {
        let mut worst: f64 = 0.0;
        for &t in &times {
            let p = fermi_packet.evolve(&ctx, t);
            worst = worst.max((p.norm_sq() - fermi_packet.norm_sq()).abs());
        }
        checks.push(Check::new(
            "conserve.norm",
            "norm is preserved under evolution",
            "drift <= 1e-12",
            format!("max drift {worst:.2e}"),
            worst <= 1e-12,
        ));
    }

    // packet expectation examples on a pure branch
    {
        let single = gaussian_packet(&PacketParams {
            family: Family::Fermi,
            sigma: cfg.sigma,
            spec,
            m: cfg.mass,
            weights: [
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            ..Default::default()
        })
        .expect("default grid");
        let eval = ChargeEvaluator::default();
        let set = build_poincare(RepKind::Fermi, &conv);

        let c = eval.noether_charge(&mut ctx, &single, &set.p[1]).unwrap();
        let phys = -c.hermitian.re;
        let tol_mom = 3.0 * cfg.sigma * cfg.sigma;
        checks.push(Check::new(
            "conserve.expect.momentum",
            "physical momentum of a packet centered at k0 = (1,0,0)",
            format!("1 +- {tol_mom:.2}"),
            format!("{phys:.6}"),
            (phys - 1.0).abs() <= tol_mom,
        ));

        let spin = spin_only_ops(RepKind::Fermi);
        let c = eval.noether_charge(&mut ctx, &single, &spin[2].1).unwrap();
        checks.push(Check::new(
            "conserve.expect.spin",
            "spin projection charge of a pure first-branch packet",
            "+1/2",
            format!("{:.12}", c.hermitian.re),
            (c.hermitian.re - 0.5).abs() <= 1e-10,
        ));

        let c = eval.noether_charge(&mut ctx, &single, &set.p[0]).unwrap();
        checks.push(Check::new(
            "conserve.expect.energy",
            "energy charge of a positive-frequency packet exceeds the mass",
            format!("> {}", cfg.mass),
            format!("{:.6}", c.hermitian.re),
            c.hermitian.re > cfg.mass,
        ));
    }

    // charge drifts: full sets, orbital parts, spin parts
    let mut groups: Vec<(&str, Family, Vec<(String, DiffOp)>)> = Vec::new();
    let fermi_set = build_poincare(RepKind::Fermi, &conv);
    let bose_set = build_poincare(RepKind::BoseCartesian, &conv);
    let orbital_set = build_poincare(RepKind::Orbital, &conv);
    let as_labeled = |set: &crate::symdiff::GeneratorSet| -> Vec<(String, DiffOp)> {
        set.labeled()
            .into_iter()
            .map(|(l, q)| (l, q.clone()))
            .collect()
    };
    groups.push(("fermi", Family::Fermi, as_labeled(&fermi_set)));
    groups.push(("bose", Family::BoseCartesian, as_labeled(&bose_set)));
    let orbital_js: Vec<(String, DiffOp)> = as_labeled(&orbital_set)
        .into_iter()
        .filter(|(l, _)| l.starts_with('j'))
        .map(|(l, q)| (format!("orb_{l}"), q))
        .collect();
    groups.push(("orbital", Family::Fermi, orbital_js));
    groups.push(("fermi_spin", Family::Fermi, spin_only_ops(RepKind::Fermi)));
    groups.push((
        "bose_spin",
        Family::BoseCartesian,
        spin_only_ops(RepKind::BoseCartesian),
    ));

    for (group, family, gens) in groups {
        let packet = match family {
            Family::Fermi => &fermi_packet,
            _ => &bose_packet,
        };
        match drift_report(&mut ctx, packet, &gens, &times, &tol) {
            Ok(reports) => {
                for r in reports {
                    let kind = if r.derivative_type {
                        "derivative-type"
                    } else {
                        "matrix-type"
                    };
                    checks.push(Check::new(
                        format!("conserve.drift.{group}.{}", r.name),
                        format!("charge {} ({kind}) is conserved over t in 0..=10", r.name),
                        format!(
                            "rel drift <= {:.0e}, imag <= {:.0e}",
                            if r.derivative_type { tol.derivative_drift } else { tol.matrix_drift },
                            if r.derivative_type { tol.derivative_imag } else { tol.matrix_imag },
                        ),
                        format!(
                            "rel drift {:.2e}, imag {:.2e}",
                            r.max_rel_drift, r.max_imag_residual
                        ),
                        r.pass,
                    ));
                }
            }
            Err(e) => checks.push(Check::new(
                format!("conserve.drift.{group}"),
                "drift report evaluates",
                "evaluates",
                e.to_string(),
                false,
            )),
        }
    }

    // refinement evidence on a derivative-type charge: halving the spacing
    // shrinks the finite-difference discrepancy at least 2x
    {
        let base_n = {
            let n = (3.0 * cfg.grid_kmax / cfg.sigma).ceil() as usize;
            n.div_ceil(8) * 8
        };
        match refinement_study(
            Family::Fermi,
            &fermi_set.j[&(0, 1)],
            base_n,
            cfg.grid_kmax,
            cfg.sigma,
            cfg.mass,
            3.0 / cfg.mass,
        ) {
            Ok(study) => {
                let pass = study.ratio >= 2.0
                    && study.drifts.iter().all(|&d| d <= tol.derivative_drift);
                checks.push(Check::new(
                    "conserve.refine.j01",
                    "halving the grid spacing reduces the derivative-type discrepancy at least 2x",
                    ">= 2x",
                    format!(
                        "|dQ(h)| = {:.2e}, |dQ(h/2)| = {:.2e}, ratio {:.1}; drifts {:?}",
                        study.coarse_diff, study.fine_diff, study.ratio,
                        study.drifts.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>()
                    ),
                    pass,
                ));
            }
            Err(e) => checks.push(Check::new(
                "conserve.refine.j01",
                "refinement study evaluates",
                "evaluates",
                e.to_string(),
                false,
            )),
        }
    }

    checks.extend(conservation::rotation_signature(cfg.tol_numeric));

    let mut conv_desc = conv.describe();
    conv_desc.insert("times".into(), "0..=10 / mass".into());
    Suite::new("conserve", checks).with_conventions(conv_desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        let cfg = RunConfig::default();
        for id in [SuiteId::Clifford, SuiteId::Span, SuiteId::Spin, SuiteId::Intertwine] {
            let s = run_suite(id, &cfg);
            assert!(s.pass, "suite {} failed", s.name);
        }
    }

    #[test]
    fn solutions_suite_passes() {
        let s = run_suite(SuiteId::Solutions, &RunConfig::default());
        for c in s.checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL {}: {} -> {}", c.id, c.statement, c.got);
        }
        assert!(s.pass);
    }
}
