use anyhow::{anyhow, Result};
use entangle_core::algebra::{
    self, anti_hermiticity_report, closure_report, is_anti_hermitian, is_hermitian,
    rescale_generators, GeneratorSet, CLOSURE_TOL,
};
use entangle_core::bases::basis_coefficient_matrix;
use entangle_core::criteria::{
    bell_basis_test, entanglement_degree, qubit_det_test, qutrit_paper_criterion,
    schmidt_rank_oracle,
};
use entangle_core::ensemble::{agreement_scan, degree_scan};
use entangle_core::linalg::{det, max_abs_diff};
use entangle_core::schmidt::{reduced_density_a, schmidt_decompose};
use entangle_core::{Basis, BipartiteState, DMatrix, Group, StructureConstantTable};
use serde::Serialize;

use crate::input::{inline_bell, inline_state, parse_number, StateDocument, StateInput};
use crate::report::{
    self, matrix_columns, matrix_rows, AlgebraResult, BasisResult, ClassifyResult, ClosedFormEcho,
    InputEcho, MemberEcho, Report, ResidualEntry, SchmidtResult, Tolerances,
};
use crate::{
    Cli, Command, Family, GroupArg, InputArgs, ModeArg, OutputFormat, EXIT_OK, EXIT_VERIFICATION,
};

/// Rendered output and exit code of one command.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let tolerances = Tolerances {
        det: cli.tol,
        maximal: cli.max_tol,
    };
    if !(cli.tol.is_finite() && cli.tol >= 0.0 && cli.max_tol.is_finite() && cli.max_tol >= 0.0) {
        return Err(anyhow!("tolerances must be finite and non-negative"));
    }
    match &cli.command {
        Command::Classify(args) => {
            let input = read_input(args, cli.normalize)?;
            let report = classify(&input, tolerances);
            Ok(emit(cli.output, &report, report::render_classify, EXIT_OK))
        }
        Command::Schmidt(args) => {
            let input = read_input(args, cli.normalize)?;
            let report = schmidt(&input, tolerances);
            Ok(emit(cli.output, &report, report::render_schmidt, EXIT_OK))
        }
        Command::Basis { family, index } => {
            let report = basis(*family, *index, tolerances)?;
            Ok(emit(cli.output, &report, report::render_basis, EXIT_OK))
        }
        Command::Algebra { group } => {
            let report = algebra(*group, tolerances)?;
            let code = if report.result.closes {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            };
            Ok(emit(cli.output, &report, report::render_algebra, code))
        }
        Command::Scan {
            dim,
            samples,
            seed,
            mode,
        } => {
            let result = match mode {
                ModeArg::Degree => degree_scan(*dim, *samples, *seed)?,
                ModeArg::Agreement => agreement_scan(*dim, *samples, *seed, cli.tol)?,
            };
            let report = envelope("scan", tolerances, None, Vec::new(), result);
            Ok(emit(cli.output, &report, report::render_scan, EXIT_OK))
        }
    }
}

fn emit<T: Serialize>(
    format: OutputFormat,
    report: &Report<T>,
    text: fn(&Report<T>) -> String,
    code: u8,
) -> Outcome {
    let output = match format {
        OutputFormat::Text => text(report),
        OutputFormat::Machine => report::to_json(report),
    };
    Outcome { output, code }
}

fn envelope<T>(
    command: &'static str,
    tolerances: Tolerances,
    input: Option<InputEcho>,
    warnings: Vec<String>,
    result: T,
) -> Report<T> {
    Report {
        tool: report::TOOL,
        version: report::VERSION,
        command,
        tolerances,
        input,
        warnings,
        result,
    }
}

pub fn read_input(args: &InputArgs, normalize: bool) -> Result<StateInput> {
    if let Some(path) = &args.file {
        StateDocument::read(path)?.into_input(normalize)
    } else if let Some(amps) = &args.amps {
        inline_state(amps, args.dims.as_deref(), normalize)
    } else if let Some(theta) = &args.theta {
        let theta = parse_number(theta)?;
        Ok(StateInput::Computational(BipartiteState::theta_family(
            theta,
        )))
    } else if let Some(bell) = &args.bell {
        inline_bell(bell, normalize)
    } else {
        Err(anyhow!("no input state given"))
    }
}

fn base_warnings(state: &BipartiteState) -> Vec<String> {
    let mut warnings = Vec::new();
    if state.was_renormalized() {
        warnings.push("input was not normalized; rescaled to unit norm".to_string());
    }
    warnings
}

pub fn classify(input: &StateInput, tolerances: Tolerances) -> Report<ClassifyResult> {
    let state = input.state();
    let mut warnings = base_warnings(state);
    let tol = tolerances.det;
    let det_rule = match (input, state.dims()) {
        (StateInput::Bell(b, _), _) => Some(bell_basis_test(b, tol)),
        (_, (2, 2)) => Some(qubit_det_test(state, tol).expect("2x2")),
        (_, (3, 3)) => Some(qutrit_paper_criterion(state, tol).expect("3x3")),
        (_, (a, b)) => {
            warnings.push(format!(
                "no determinant rule for {a}x{b} systems; oracle only"
            ));
            None
        }
    };
    let oracle = schmidt_rank_oracle(state, tol);
    let agree = det_rule
        .as_ref()
        .map(|p| p.is_entangled() == oracle.is_entangled());
    let (degree, maximal, distance) = if state.is_square() {
        let distance = reduced_density_a(state).distance_from_maximally_mixed();
        (
            Some(entanglement_degree(state).expect("square")),
            Some(distance <= tolerances.maximal),
            Some(distance),
        )
    } else {
        (None, None, None)
    };
    let sd = schmidt_decompose(state, tol);
    let result = ClassifyResult {
        verdict: oracle.classification,
        det_rule,
        oracle,
        agree,
        disagreement: agree == Some(false),
        maximally_entangled: maximal,
        rho_a_distance: distance,
        degree,
        schmidt_coefficients: sd.coefficients().to_vec(),
        schmidt_rank: sd.rank(),
    };
    envelope(
        "classify",
        tolerances,
        Some(InputEcho::new(input)),
        warnings,
        result,
    )
}

pub fn schmidt(input: &StateInput, tolerances: Tolerances) -> Report<SchmidtResult> {
    let state = input.state();
    let sd = schmidt_decompose(state, tolerances.det);
    let result = SchmidtResult {
        coefficients: sd.coefficients().to_vec(),
        rank: sd.rank(),
        reconstruction_residual: sd.reconstruction_residual(state),
        left_vectors: matrix_columns(sd.left_vectors()),
        right_vectors: matrix_columns(sd.right_vectors()),
    };
    envelope(
        "schmidt",
        tolerances,
        Some(InputEcho::new(input)),
        base_warnings(state),
        result,
    )
}

const SYMMETRY_TOL: f64 = 1e-12;

pub fn basis(family: Family, index: usize, tolerances: Tolerances) -> Result<Report<BasisResult>> {
    let (basis, name, label) = match family {
        Family::Bell => (Basis::Bell, "bell", format!("phi_{index}")),
        Family::Qutrit => (Basis::Qutrit, "qutrit", format!("beta_{index}")),
    };
    let state = basis.state(index)?;
    let (matrix, closed) = basis_coefficient_matrix(basis, index)?;
    let d = det(&matrix);
    let result = BasisResult {
        family: name,
        index,
        label,
        amplitudes: state.amplitudes().to_vec(),
        coefficient_matrix: matrix_rows(&matrix),
        det: d,
        det_abs: d.norm(),
        trace: matrix.trace(),
        closed_form: ClosedFormEcho {
            scalar: closed.scalar,
            generator: closed.generator.to_string(),
            residual: max_abs_diff(&matrix, &closed.matrix()),
        },
        hermitian: is_hermitian(&matrix, SYMMETRY_TOL),
        anti_hermitian: is_anti_hermitian(&matrix, SYMMETRY_TOL),
    };
    Ok(envelope("basis", tolerances, None, Vec::new(), result))
}

pub fn algebra(group: GroupArg, tolerances: Tolerances) -> Result<Report<AlgebraResult>> {
    let (group, name, standard_table) = match group {
        GroupArg::Su2 => (Group::Su2, "su2", StructureConstantTable::levi_civita()),
        GroupArg::Su3 => (Group::Su3, "su3", StructureConstantTable::gell_mann()),
    };
    let primed = rescale_generators(&GeneratorSet::raw(group))?;
    let standard = GeneratorSet::standard(group);
    let closure = closure_report(&primed)?;
    let max_residual = closure.max_residual();
    let table = &closure.table;
    let primed_members = primed
        .members()
        .iter()
        .map(|p| {
            let target = match standard.member(p.index) {
                Some(s) => s.matrix.clone(),
                None => DMatrix::identity(primed.dim(), primed.dim()),
            };
            MemberEcho {
                label: p.label.clone(),
                scaling: p.scaling,
                matches_standard: max_abs_diff(&p.matrix, &target) <= SYMMETRY_TOL,
            }
        })
        .collect();
    let hermiticity = anti_hermiticity_report(group);
    let result = AlgebraResult {
        group: name,
        closure_tol: algebra::CLOSURE_TOL,
        closes: max_residual <= CLOSURE_TOL,
        max_residual,
        residuals: closure
            .residuals
            .iter()
            .map(|&(a, b, residual)| ResidualEntry { a, b, residual })
            .collect(),
        structure_constants: table.independent_nonzero(SYMMETRY_TOL),
        standard_table_difference: table.max_difference(&standard_table),
        antisymmetry_defect: table.antisymmetry_defect(),
        jacobi_defect: table.jacobi_defect(),
        primed_members,
        anti_hermitian: hermiticity
            .iter()
            .filter(|h| h.anti_hermitian)
            .map(|h| h.label.clone())
            .collect(),
        hermiticity,
    };
    Ok(envelope("algebra", tolerances, None, Vec::new(), result))
}
