//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Run with `cargo test -p entangle-cli --test acceptance`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::Command;
use std::time::Instant;

use entangle_core::algebra::{
    anti_hermiticity_report, closure_report, commutator, rescale_generators, CLOSURE_TOL,
};
use entangle_core::bases::{bell_state, bell_to_computational, closed_form, qutrit_basis_state};
use entangle_core::criteria::{
    bell_basis_test, compare_criteria, entanglement_degree, is_maximally_entangled, qubit_det_test,
    schmidt_rank_oracle, DEFAULT_DET_TOL, DEFAULT_MAXIMAL_TOL,
};
use entangle_core::ensemble::{
    agreement_scan, curated_cases, degree_scan, random_bell_coefficients, random_pure_state,
    sample_rng,
};
use entangle_core::linalg::max_abs_diff;
use entangle_core::schmidt::{qubit_eigenvalues_closed_form, reduced_density_a, schmidt_decompose};
use entangle_core::state::coefficient_matrix;
use entangle_core::{
    Basis, BipartiteState, Classification, Complex64, DMatrix, GeneratorSet, Group,
    StructureConstantTable,
};

const SEED: u64 = 20_260_101;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bell_table() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..4 {
        let state = bell_state(k).map_err(|e| e.to_string())?;
        let m = coefficient_matrix(&state).into_matrix();
        let printed = closed_form(Basis::Bell, k)
            .map_err(|e| e.to_string())?
            .matrix();
        worst = worst.max(max_abs_diff(&m, &printed));
        let det = entanglement_degree(&state).map_err(|e| e.to_string())?;
        ensure((det - 0.5).abs() <= 1e-12, || format!("|det A{k}| = {det}"))?;
        let by_det = qubit_det_test(&state, DEFAULT_DET_TOL).map_err(|e| e.to_string())?;
        let by_oracle = schmidt_rank_oracle(&state, DEFAULT_DET_TOL);
        ensure(
            by_det.classification == Classification::MaximallyEntangled
                && by_oracle.classification == Classification::MaximallyEntangled,
            || {
                format!(
                    "phi{k}: det {:?}, oracle {:?}",
                    by_det.classification, by_oracle.classification
                )
            },
        )?;
    }
    ensure(worst <= 1e-12, || {
        format!("coefficient matrix off by {worst:e}")
    })?;
    Ok(format!("max entry error {worst:.1e}"))
}

fn theta_sweep() -> Outcome {
    let tol = 1e-9;
    let mut worst_det = 0.0f64;
    let mut worst_schmidt = 0.0f64;
    let mut unentangled = Vec::new();
    let mut maximal = Vec::new();
    for k in 0..=100 {
        let theta = PI * k as f64 / 100.0;
        let state = BipartiteState::theta_family(theta);
        let det = entanglement_degree(&state).map_err(|e| e.to_string())?;
        worst_det = worst_det.max((det - (2.0 * theta).sin().abs() / 2.0).abs());
        match qubit_det_test(&state, tol)
            .map_err(|e| e.to_string())?
            .classification
        {
            Classification::Unentangled => unentangled.push(k),
            Classification::MaximallyEntangled => maximal.push(k),
            Classification::Entangled => {}
        }
        let mut want = [theta.cos().abs(), theta.sin().abs()];
        want.sort_by(|a, b| b.total_cmp(a));
        let sd = schmidt_decompose(&state, tol);
        for (got, want) in sd.coefficients().iter().zip(want) {
            worst_schmidt = worst_schmidt.max((got - want).abs());
        }
    }
    ensure(worst_det <= 1e-12, || {
        format!("|det A| off by {worst_det:e}")
    })?;
    ensure(worst_schmidt <= 1e-10, || {
        format!("Schmidt coefficients off by {worst_schmidt:e}")
    })?;
    ensure(unentangled == [0, 50, 100], || {
        format!("Unentangled at steps {unentangled:?}")
    })?;
    ensure(maximal == [25, 75], || {
        format!("MaximallyEntangled at steps {maximal:?}")
    })?;
    Ok(format!(
        "101 points, det error {worst_det:.1e}, Schmidt error {worst_schmidt:.1e}"
    ))
}

fn closed_form_eigenvalues() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_sum = 0.0f64;
    for i in 0..10_000 {
        let state = random_pure_state(2, 2, &mut sample_rng(SEED, i)).map_err(|e| e.to_string())?;
        let det = entanglement_degree(&state).map_err(|e| e.to_string())?;
        let (lo, hi) = qubit_eigenvalues_closed_form(det).map_err(|e| e.to_string())?;
        let eig = reduced_density_a(&state).eigenvalues();
        worst = worst.max((lo - eig[0]).abs()).max((hi - eig[1]).abs());
        worst_sum = worst_sum.max((lo + hi - 1.0).abs());
    }
    ensure(worst <= 1e-9, || format!("closed form off by {worst:e}"))?;
    ensure(worst_sum <= 1e-12, || {
        format!("mu1 + mu2 off by {worst_sum:e}")
    })?;
    Ok(format!(
        "10^4 states, eigenvalue error {worst:.1e}, sum error {worst_sum:.1e}"
    ))
}

fn bell_criterion() -> Outcome {
    for i in 0..10_000 {
        let b = random_bell_coefficients(&mut sample_rng(SEED, i));
        let by_bell = bell_basis_test(&b, DEFAULT_DET_TOL);
        let by_det = qubit_det_test(&bell_to_computational(&b), DEFAULT_DET_TOL)
            .map_err(|e| e.to_string())?;
        ensure(by_bell.classification == by_det.classification, || {
            format!(
                "sample {i}: bell {:?}, det {:?}",
                by_bell.classification, by_det.classification
            )
        })?;
    }
    let witness = entangle_core::BellCoefficients::new([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0])
        .map_err(|e| e.to_string())?;
    let v = bell_basis_test(&witness, DEFAULT_DET_TOL);
    ensure(v.classification == Classification::Unentangled, || {
        format!("witness classified {:?}", v.classification)
    })?;
    Ok("10^4 coefficient vectors agree; witness Unentangled".into())
}

fn qutrit_table() -> Outcome {
    let s3 = 3f64.sqrt();
    let want_det = [
        1.0 / (3.0 * s3),
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        1.0 / (3.0 * 6f64.sqrt()),
    ];
    let mut states = Vec::new();
    let mut worst = 0.0f64;
    for (k, want) in want_det.iter().enumerate() {
        let state = qutrit_basis_state(k).map_err(|e| e.to_string())?;
        let p = coefficient_matrix(&state);
        let det = p.det().expect("square").norm();
        let trace = p.trace().expect("square");
        let want_trace = if k == 0 { s3 } else { 0.0 };
        worst = worst
            .max((det - want).abs())
            .max((trace - Complex64::new(want_trace, 0.0)).norm());
        states.push(state);
    }
    ensure(worst <= 1e-12, || {
        format!("det/trace table off by {worst:e}")
    })?;
    let mut gram = 0.0f64;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            let ip = a.inner(b).map_err(|e| e.to_string())?;
            gram = gram.max((ip - Complex64::new(want, 0.0)).norm());
        }
    }
    ensure(gram <= 1e-12, || format!("Gram matrix off by {gram:e}"))?;
    Ok(format!("table error {worst:.1e}, Gram error {gram:.1e}"))
}

fn su2_closure() -> Outcome {
    let raw = GeneratorSet::raw(Group::Su2);
    let a = |k: usize| raw.member(k).expect("member").matrix.clone();
    let comm = |x: usize, y: usize| commutator(&a(x), &a(y)).expect("same size");
    let scale = |m: DMatrix<Complex64>, s: f64| m * Complex64::new(s, 0.0);
    let checks = [
        max_abs_diff(&comm(1, 2), &scale(a(3), -SQRT_2)),
        max_abs_diff(&comm(2, 3), &scale(a(1), -SQRT_2)),
        max_abs_diff(&comm(3, 1), &scale(a(2), SQRT_2)),
    ];
    let worst = checks.iter().copied().fold(0.0, f64::max);
    ensure(worst <= 1e-12, || {
        format!("raw commutators off by {checks:?}")
    })?;
    let primed = rescale_generators(&raw).map_err(|e| e.to_string())?;
    let report = closure_report(&primed).map_err(|e| e.to_string())?;
    ensure(report.residuals.len() == 9, || {
        format!("{} pairs", report.residuals.len())
    })?;
    let residual = report.max_residual();
    ensure(residual <= CLOSURE_TOL, || {
        format!("closure residual {residual:e}")
    })?;
    let diff = report
        .table
        .max_difference(&StructureConstantTable::levi_civita());
    ensure(diff <= 1e-12, || {
        format!("f differs from epsilon by {diff:e}")
    })?;
    Ok(format!("raw error {worst:.1e}, residual {residual:.1e}"))
}

fn su3_closure() -> Outcome {
    let primed = rescale_generators(&GeneratorSet::raw(Group::Su3)).map_err(|e| e.to_string())?;
    let report = closure_report(&primed).map_err(|e| e.to_string())?;
    ensure(report.residuals.len() == 64, || {
        format!("{} pairs", report.residuals.len())
    })?;
    let residual = report.max_residual();
    ensure(residual <= CLOSURE_TOL, || {
        format!("closure residual {residual:e}")
    })?;
    let table = &report.table;
    let diff = table.max_difference(&StructureConstantTable::gell_mann());
    ensure(diff <= 1e-10, || format!("table differs by {diff:e}"))?;
    let half_s3 = 3f64.sqrt() / 2.0;
    ensure(
        (table.get(1, 2, 3) - 1.0).abs() <= 1e-10
            && (table.get(4, 5, 8) - half_s3).abs() <= 1e-10
            && (table.get(6, 7, 8) - half_s3).abs() <= 1e-10,
        || "f123, f458 or f678 wrong".into(),
    )?;
    let nonzero = table.independent_nonzero(1e-10);
    let halves = nonzero
        .iter()
        .filter(|f| (f.value.abs() - 0.5).abs() <= 1e-10)
        .count();
    ensure(nonzero.len() == 9 && halves == 6, || {
        format!(
            "{} independent entries, {halves} of magnitude 1/2",
            nonzero.len()
        )
    })?;
    let anti: Vec<String> = anti_hermiticity_report(Group::Su3)
        .into_iter()
        .filter(|h| h.anti_hermitian)
        .map(|h| h.label)
        .collect();
    ensure(anti == ["P2", "P5", "P7"], || {
        format!("anti-hermitian members {anti:?}")
    })?;
    Ok(format!(
        "64 pairs, residual {residual:.1e}, table error {diff:.1e}"
    ))
}

fn degree_bound() -> Outcome {
    let mut detail = Vec::new();
    for d in [2, 3] {
        let report = degree_scan(d, 100_000, SEED).map_err(|e| e.to_string())?;
        ensure(report.random_samples == 100_000, || {
            format!("d={d}: {} samples", report.random_samples)
        })?;
        ensure(report.above_bound == 0, || {
            format!(
                "d={d}: {} samples above {}",
                report.above_bound, report.degree_bound
            )
        })?;
        detail.push(format!(
            "d={d} max {:.6} <= {:.6}",
            report.max_degree_observed, report.degree_bound
        ));
    }
    Ok(detail.join(", "))
}

fn criterion_comparison() -> Outcome {
    let report = agreement_scan(2, 10_000, SEED, DEFAULT_DET_TOL).map_err(|e| e.to_string())?;
    ensure(report.agreement_rate == Some(1.0), || {
        format!("d=2 agreement rate {:?}", report.agreement_rate)
    })?;

    let mut disagreeing = Vec::new();
    for (label, state) in curated_cases(3).map_err(|e| e.to_string())? {
        let c = compare_criteria(&state, DEFAULT_DET_TOL).map_err(|e| e.to_string())?;
        let off_diagonal_product = (0..3)
            .flat_map(|i| (0..3).map(move |mu| (i, mu)))
            .filter(|(i, mu)| i != mu)
            .any(|(i, mu)| label == format!("|{i}{mu}>"));
        let diagonal_product = (0..3).any(|i| label == format!("|{i}{i}>"));
        let basis = label.starts_with("beta");
        if off_diagonal_product {
            ensure(
                !c.agree
                    && c.paper_verdict.classification == Classification::Entangled
                    && c.oracle_verdict.classification == Classification::Unentangled,
                || format!("{label}: expected the recorded disagreement"),
            )?;
            disagreeing.push(label);
        } else if basis || diagonal_product {
            ensure(c.agree, || format!("{label}: criteria disagree"))?;
        }
    }
    ensure(disagreeing.len() == 6, || {
        format!("{} off-diagonal product states", disagreeing.len())
    })?;
    let scan = agreement_scan(3, 1, SEED, DEFAULT_DET_TOL).map_err(|e| e.to_string())?;
    ensure(scan.disagreement_count == Some(6), || {
        format!(
            "d=3 curated scan reports {:?} disagreements",
            scan.disagreement_count
        )
    })?;
    Ok(format!(
        "d=2 rate 1.0 over {} states; d=3 disagreements on {}",
        report.sample_count,
        disagreeing.join(" ")
    ))
}

fn maximality() -> Outcome {
    let mut maximal = Vec::new();
    for basis in [Basis::Bell, Basis::Qutrit] {
        for k in 0..basis.len() {
            let state = basis.state(k).map_err(|e| e.to_string())?;
            let name = format!("{}{k}", if basis == Basis::Bell { "phi" } else { "beta" });
            if is_maximally_entangled(&state, DEFAULT_MAXIMAL_TOL).map_err(|e| e.to_string())? {
                let dist = reduced_density_a(&state).distance_from_maximally_mixed();
                ensure(dist <= 1e-10, || {
                    format!("{name}: rho_A off I/d by {dist:e}")
                })?;
                maximal.push(name);
            }
        }
    }
    let want = ["phi0", "phi1", "phi2", "phi3", "beta0"];
    ensure(maximal == want, || format!("maximal set {maximal:?}"))?;
    Ok(format!("maximal: {}", maximal.join(" ")))
}

fn determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_entangle");
    let args = [
        "--output",
        "machine",
        "scan",
        "--dim",
        "3",
        "--samples",
        "20000",
        "--seed",
        "42",
        "--mode",
        "agreement",
    ];
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let out = Command::new(exe)
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!("exit {:?}", out.status.code())
            })?;
            Ok(out.stdout)
        })
        .collect::<Result<_, String>>()?;
    ensure(runs[0] == runs[1], || {
        "scan reports differ between runs".into()
    })?;
    Ok(format!("two runs, {} identical bytes", runs[0].len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("bell-state table", bell_table),
        ("theta sweep", theta_sweep),
        ("closed-form eigenvalues", closed_form_eigenvalues),
        ("bell-basis criterion", bell_criterion),
        ("qutrit basis table", qutrit_table),
        ("su(2) closure", su2_closure),
        ("su(3) closure", su3_closure),
        ("degree bound", degree_bound),
        ("criterion comparison", criterion_comparison),
        ("maximality", maximality),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail} ({secs:.2}s)", n + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2} {name}: {detail} ({secs:.2}s)", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
