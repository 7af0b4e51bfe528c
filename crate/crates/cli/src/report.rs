//! Machine-readable reports and their text rendering.
//!
//! Every command emits one [`Report`] envelope. The JSON form is described by
//! `schemas/report.schema.json` at the repository root; it carries no
//! timestamps so identical invocations produce identical bytes.

use std::fmt::Write as _;

use entangle_core::algebra::{HermiticityEntry, Scaling, StructureConstant};
use entangle_core::criteria::EntanglementVerdict;
use entangle_core::ensemble::ScanReport;
use entangle_core::{BipartiteState, Classification, Complex64, DMatrix};
use serde::Serialize;

use crate::input::StateInput;
use crate::surd::annotate;

pub const TOOL: &str = "entangle";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub det: f64,
    pub maximal: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub dims: [usize; 2],
    pub basis: &'static str,
    pub amplitudes: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bell_coefficients: Option<[f64; 4]>,
    pub renormalized: bool,
    pub fingerprint: String,
}

/// FNV-1a over the amplitude bit patterns.
fn fingerprint(state: &BipartiteState) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(state.dim_a() as u64);
    eat(state.dim_b() as u64);
    for z in state.amplitudes() {
        eat(z.re.to_bits());
        eat(z.im.to_bits());
    }
    format!("fnv1a64:{h:016x}")
}

impl InputEcho {
    pub fn new(input: &StateInput) -> Self {
        let state = input.state();
        let (basis, bell) = match input {
            StateInput::Computational(_) => ("computational", None),
            StateInput::Bell(b, _) => ("bell", Some(b.values())),
        };
        Self {
            dims: [state.dim_a(), state.dim_b()],
            basis,
            amplitudes: state.amplitudes().to_vec(),
            bell_coefficients: bell,
            renormalized: state.was_renormalized(),
            fingerprint: fingerprint(state),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub warnings: Vec<String>,
    pub result: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyResult {
    /// The oracle's classification.
    pub verdict: Classification,
    pub det_rule: Option<EntanglementVerdict>,
    pub oracle: EntanglementVerdict,
    pub agree: Option<bool>,
    pub disagreement: bool,
    pub maximally_entangled: Option<bool>,
    pub rho_a_distance: Option<f64>,
    pub degree: Option<f64>,
    pub schmidt_coefficients: Vec<f64>,
    pub schmidt_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchmidtResult {
    pub coefficients: Vec<f64>,
    pub rank: usize,
    pub reconstruction_residual: f64,
    pub left_vectors: Vec<Vec<Complex64>>,
    pub right_vectors: Vec<Vec<Complex64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormEcho {
    pub scalar: Complex64,
    pub generator: String,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisResult {
    pub family: &'static str,
    pub index: usize,
    pub label: String,
    pub amplitudes: Vec<Complex64>,
    pub coefficient_matrix: Vec<Vec<Complex64>>,
    pub det: Complex64,
    pub det_abs: f64,
    pub trace: Complex64,
    pub closed_form: ClosedFormEcho,
    pub hermitian: bool,
    pub anti_hermitian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberEcho {
    pub label: String,
    pub scaling: Scaling,
    pub matches_standard: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualEntry {
    pub a: usize,
    pub b: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraResult {
    pub group: &'static str,
    pub closure_tol: f64,
    pub closes: bool,
    pub max_residual: f64,
    pub residuals: Vec<ResidualEntry>,
    pub structure_constants: Vec<StructureConstant>,
    pub standard_table_difference: f64,
    pub antisymmetry_defect: f64,
    pub jacobi_defect: f64,
    pub primed_members: Vec<MemberEcho>,
    pub anti_hermitian: Vec<String>,
    pub hermiticity: Vec<HermiticityEntry>,
}

pub fn matrix_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}

pub fn matrix_columns(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.ncols())
        .map(|j| m.column(j).iter().copied().collect())
        .collect()
}

pub fn to_json<T: Serialize>(report: &Report<T>) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-17 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        annotate(re)
    } else if re == 0.0 {
        format!("{} i", annotate(im))
    } else {
        format!("{} + {} i", annotate(re), annotate(im))
    }
}

fn scalar(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e6 {
        format!("{x}")
    } else if x.abs() < 1e-4 {
        format!("{x:.3e}")
    } else {
        annotate(x)
    }
}

fn verdict_line(out: &mut String, title: &str, v: &EntanglementVerdict) {
    let _ = write!(out, "{title:<12} {:?} [{:?}]", v.classification, v.method);
    for e in &v.evidence {
        let _ = write!(out, " {}={}", e.name, scalar(e.value));
    }
    out.push('\n');
}

fn header<T>(report: &Report<T>) -> String {
    let mut out = String::new();
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(input) = &report.input {
        let _ = writeln!(
            out,
            "state       {}x{} ({}) {}",
            input.dims[0], input.dims[1], input.basis, input.fingerprint
        );
    }
    out
}

pub fn render_classify(report: &Report<ClassifyResult>) -> String {
    let r = &report.result;
    let mut out = header(report);
    let _ = writeln!(out, "verdict     {:?}", r.verdict);
    if let Some(p) = &r.det_rule {
        verdict_line(&mut out, "det rule", p);
    }
    verdict_line(&mut out, "oracle", &r.oracle);
    if let Some(d) = r.degree {
        let _ = writeln!(out, "degree      {}", annotate(d));
    }
    if let Some(m) = r.maximally_entangled {
        let _ = writeln!(
            out,
            "maximal     {m} (|rho_A - I/d|_max = {:.3e})",
            r.rho_a_distance.unwrap_or(f64::NAN)
        );
    }
    let coeffs: Vec<String> = r
        .schmidt_coefficients
        .iter()
        .map(|&c| annotate(c))
        .collect();
    let _ = writeln!(
        out,
        "schmidt     rank {} : {}",
        r.schmidt_rank,
        coeffs.join(", ")
    );
    if r.disagreement {
        let _ = writeln!(
            out,
            "DISAGREEMENT: the determinant rule and the Schmidt rank differ"
        );
    }
    out
}

pub fn render_schmidt(report: &Report<SchmidtResult>) -> String {
    let r = &report.result;
    let mut out = header(report);
    let _ = writeln!(out, "rank        {}", r.rank);
    for (j, c) in r.coefficients.iter().enumerate() {
        let _ = writeln!(out, "s[{j}]        {}", annotate(*c));
    }
    let _ = writeln!(out, "residual    {:.3e}", r.reconstruction_residual);
    out
}

pub fn render_basis(report: &Report<BasisResult>) -> String {
    let r = &report.result;
    let mut out = String::new();
    let _ = writeln!(out, "{} state {} ({})", r.family, r.index, r.label);
    let _ = writeln!(out, "coefficient matrix:");
    for row in &r.coefficient_matrix {
        let cells: Vec<String> = row.iter().map(|&z| complex(z)).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    let _ = writeln!(out, "det         {}", complex(r.det));
    let _ = writeln!(out, "|det|       {}", annotate(r.det_abs));
    let _ = writeln!(out, "trace       {}", complex(r.trace));
    let _ = writeln!(
        out,
        "closed form ({}) * {}   residual {:.1e}",
        complex(r.closed_form.scalar),
        r.closed_form.generator,
        r.closed_form.residual
    );
    let kind = match (r.hermitian, r.anti_hermitian) {
        (true, _) => "hermitian",
        (_, true) => "anti-hermitian",
        _ => "neither hermitian nor anti-hermitian",
    };
    let _ = writeln!(out, "symmetry    {kind}");
    out
}

pub fn render_algebra(report: &Report<AlgebraResult>) -> String {
    let r = &report.result;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: closure {} (max residual {:.3e}, tol {:.0e})",
        r.group,
        if r.closes { "holds" } else { "FAILS" },
        r.max_residual,
        r.closure_tol
    );
    if !r.closes {
        for e in r.residuals.iter().filter(|e| e.residual > r.closure_tol) {
            let _ = writeln!(out, "  [{}, {}] residual {:.3e}", e.a, e.b, e.residual);
        }
    }
    let _ = writeln!(out, "structure constants (a<b<c, nonzero):");
    for f in &r.structure_constants {
        let _ = writeln!(out, "  f[{}{}{}] = {}", f.a, f.b, f.c, annotate(f.value));
    }
    let _ = writeln!(
        out,
        "difference from standard table {:.3e}",
        r.standard_table_difference
    );
    let _ = writeln!(out, "jacobi defect {:.3e}", r.jacobi_defect);
    let _ = writeln!(
        out,
        "anti-hermitian members: {}",
        r.anti_hermitian.join(", ")
    );
    out
}

pub fn render_scan(report: &Report<ScanReport>) -> String {
    let r = &report.result;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:?} scan, d = {}, seed = {}, {} samples ({} random, {} curated)",
        r.mode, r.dim, r.seed, r.sample_count, r.random_samples, r.curated_samples
    );
    let _ = writeln!(
        out,
        "max |det| {:.10} (bound {}), {} above bound",
        r.max_degree_observed,
        annotate(r.degree_bound),
        r.above_bound
    );
    if let (Some(rate), Some(dis)) = (r.agreement_rate, r.disagreement_count) {
        let _ = writeln!(out, "agreement rate {rate:.6} ({dis} disagreements)");
        for d in &r.disagreements {
            let amps: Vec<String> = d
                .state_fingerprint
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:.4}", z.re)
                    } else {
                        format!("{:.4}{:+.4}i", z.re, z.im)
                    }
                })
                .collect();
            let _ = writeln!(
                out,
                "  det rule {:?} vs oracle {:?}: [{}]",
                d.paper_verdict.classification,
                d.oracle_verdict.classification,
                amps.join(", ")
            );
        }
    }
    let h = &r.degree_histogram;
    let width = (h.upper - h.lower) / h.counts.len() as f64;
    let peak = h.counts.iter().copied().max().unwrap_or(0).max(1);
    let _ = writeln!(out, "|det| histogram:");
    for (k, &c) in h.counts.iter().enumerate() {
        let bar = "#".repeat((c * 40 / peak) as usize);
        let _ = writeln!(
            out,
            "  [{:.4}, {:.4}) {c:>8} {bar}",
            h.lower + k as f64 * width,
            h.lower + (k + 1) as f64 * width
        );
    }
    out
}
