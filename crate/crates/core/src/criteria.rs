//! Determinant-based entanglement rules and the Schmidt-rank oracle.
//!
//! The qubit rule (`det A ≠ 0` ⇔ entangled) and the Bell-basis rule are exact
//! for two qubits. The qutrit rule (`det P = 0` and `Tr P = ±1` ⇔ product) is
//! reproduced as stated, misfires included: it depends on the local basis and
//! calls states like `|01⟩` entangled. [`compare_criteria`] exposes that
//! against the Schmidt rank, which is the ground truth everywhere.

use num_complex::Complex64;
use serde::Serialize;

use crate::bases::bell_to_computational;
use crate::error::{Error, Result};
use crate::schmidt::{reduced_density_a, schmidt_decompose};
use crate::state::{coefficient_matrix, BellCoefficients, BipartiteState};

pub const DEFAULT_DET_TOL: f64 = 1e-8;
pub const DEFAULT_MAXIMAL_TOL: f64 = 1e-6;

/// Largest `|det|` a normalized `d × d` coefficient matrix can reach, `d^{-d/2}`.
pub fn max_degree(d: usize) -> f64 {
    (d as f64).powf(-(d as f64) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    Unentangled,
    Entangled,
    MaximallyEntangled,
}

impl Classification {
    pub fn is_entangled(self) -> bool {
        !matches!(self, Classification::Unentangled)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    QubitDet,
    BellBasis,
    QutritPaper,
    SchmidtOracle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementVerdict {
    pub classification: Classification,
    pub method: Method,
    pub evidence: Vec<Evidence>,
}

impl EntanglementVerdict {
    fn new(classification: Classification, method: Method) -> Self {
        Self {
            classification,
            method,
            evidence: Vec::new(),
        }
    }

    fn with(mut self, name: &'static str, value: f64) -> Self {
        self.evidence.push(Evidence { name, value });
        self
    }

    pub fn is_entangled(&self) -> bool {
        self.classification.is_entangled()
    }

    /// Looks up an evidence scalar by name.
    pub fn evidence(&self, name: &str) -> Option<f64> {
        self.evidence
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionComparison {
    pub paper_verdict: EntanglementVerdict,
    pub oracle_verdict: EntanglementVerdict,
    pub agree: bool,
    pub state_fingerprint: Vec<Complex64>,
}

fn require_dims(state: &BipartiteState, d: usize) -> Result<()> {
    if state.dims() != (d, d) {
        return Err(Error::Shape(format!(
            "expected a {d}x{d} state, got {}x{}",
            state.dim_a(),
            state.dim_b()
        )));
    }
    Ok(())
}

fn require_square(state: &BipartiteState) -> Result<()> {
    if !state.is_square() {
        return Err(Error::Shape(format!(
            "expected equal subsystem dimensions, got {}x{}",
            state.dim_a(),
            state.dim_b()
        )));
    }
    Ok(())
}

fn classify_qubit_det(det_abs: f64, tol: f64) -> Classification {
    if det_abs <= tol {
        Classification::Unentangled
    } else if det_abs >= 0.5 - tol {
        Classification::MaximallyEntangled
    } else {
        Classification::Entangled
    }
}

/// Two-qubit rule: product iff `det A = 0`, maximal iff `|det A| = 1/2`.
pub fn qubit_det_test(state: &BipartiteState, tol: f64) -> Result<EntanglementVerdict> {
    require_dims(state, 2)?;
    let det = coefficient_matrix(state).det().expect("square");
    Ok(
        EntanglementVerdict::new(classify_qubit_det(det.norm(), tol), Method::QubitDet)
            .with("det_abs", det.norm())
            .with("tol", tol),
    )
}

/// `|det M|` of a square coefficient matrix; larger means more entangled.
pub fn entanglement_degree(state: &BipartiteState) -> Result<f64> {
    require_square(state)?;
    Ok(coefficient_matrix(state).det().expect("square").norm())
}

/// Bell-basis rule: product iff `b0² + b2² = b1² + b3²`.
///
/// The imbalance `(b0² + b2²) − (b1² + b3²)` equals `2 det C`, so this is
/// the qubit determinant rule on the computational-basis image; the
/// thresholds are applied to `|det C|` to keep the two verdicts identical.
pub fn bell_basis_test(b: &BellCoefficients, tol: f64) -> EntanglementVerdict {
    let [b0, b1, b2, b3] = b.values();
    let imbalance = (b0 * b0 + b2 * b2) - (b1 * b1 + b3 * b3);
    let det_c = imbalance / 2.0;
    EntanglementVerdict::new(classify_qubit_det(det_c.abs(), tol), Method::BellBasis)
        .with("imbalance", imbalance)
        .with("det_c", det_c)
        .with("tol", tol)
}

/// Qutrit thumbrule: product iff `det P = 0` and `|Tr P| = 1`. Heuristic;
/// see the module docs.
pub fn qutrit_paper_criterion(state: &BipartiteState, tol: f64) -> Result<EntanglementVerdict> {
    require_dims(state, 3)?;
    let p = coefficient_matrix(state);
    let det = p.det().expect("square");
    let trace = p.trace().expect("square");
    let unentangled = det.norm() <= tol && (trace.norm() - 1.0).abs() <= tol;
    let classification = if unentangled {
        Classification::Unentangled
    } else {
        Classification::Entangled
    };
    Ok(
        EntanglementVerdict::new(classification, Method::QutritPaper)
            .with("det_re", det.re)
            .with("det_im", det.im)
            .with("det_abs", det.norm())
            .with("trace_re", trace.re)
            .with("trace_im", trace.im)
            .with("trace_abs", trace.norm())
            .with("tol", tol),
    )
}

/// Ground truth: product iff Schmidt rank 1; maximal iff all `min(d_a, d_b)`
/// coefficients equal `1/√min(d_a, d_b)` within `tol`.
pub fn schmidt_rank_oracle(state: &BipartiteState, tol: f64) -> EntanglementVerdict {
    let sd = schmidt_decompose(state, tol);
    let k = sd.coefficients().len();
    let flat = 1.0 / (k as f64).sqrt();
    let spread = sd
        .coefficients()
        .iter()
        .map(|s| (s - flat).abs())
        .fold(0.0, f64::max);
    let classification = if sd.rank() == 1 {
        Classification::Unentangled
    } else if spread <= tol {
        Classification::MaximallyEntangled
    } else {
        Classification::Entangled
    };
    EntanglementVerdict::new(classification, Method::SchmidtOracle)
        .with("rank", sd.rank() as f64)
        .with(
            "min_coefficient",
            *sd.coefficients().last().expect("nonempty"),
        )
        .with("max_coefficient", sd.coefficients()[0])
        .with("flatness_defect", spread)
        .with("tol", tol)
}

/// True iff `ρ_A` is within `tol` of `I/d` in max norm.
pub fn is_maximally_entangled(state: &BipartiteState, tol: f64) -> Result<bool> {
    require_square(state)?;
    Ok(reduced_density_a(state).distance_from_maximally_mixed() <= tol)
}

/// Runs the dimension's determinant rule and the oracle on one state.
pub fn compare_criteria(state: &BipartiteState, tol: f64) -> Result<CriterionComparison> {
    let paper_verdict = match state.dims() {
        (2, 2) => qubit_det_test(state, tol)?,
        (3, 3) => qutrit_paper_criterion(state, tol)?,
        (a, b) => {
            return Err(Error::Shape(format!(
                "determinant rules exist for 2x2 and 3x3 only, got {a}x{b}"
            )))
        }
    };
    let oracle_verdict = schmidt_rank_oracle(state, tol);
    Ok(CriterionComparison {
        agree: paper_verdict.is_entangled() == oracle_verdict.is_entangled(),
        paper_verdict,
        oracle_verdict,
        state_fingerprint: state.amplitudes().to_vec(),
    })
}

/// Same as [`compare_criteria`] for a state already in the Bell basis.
pub fn compare_bell(b: &BellCoefficients, tol: f64) -> CriterionComparison {
    let state = bell_to_computational(b);
    let paper_verdict = bell_basis_test(b, tol);
    let oracle_verdict = schmidt_rank_oracle(&state, tol);
    CriterionComparison {
        agree: paper_verdict.is_entangled() == oracle_verdict.is_entangled(),
        paper_verdict,
        oracle_verdict,
        state_fingerprint: state.amplitudes().to_vec(),
    }
}
