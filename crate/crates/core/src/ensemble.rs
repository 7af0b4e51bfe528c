//! Haar-random states and ensemble scans.
//!
//! # Reproducibility
//!
//! The generator is ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. Sample `i` of a scan draws from stream `i` of that
//! key (`set_stream(i)`), so every sample is independent of how the work is
//! split across threads. Gaussians come from the Box-Muller transform, which
//! consumes exactly two uniforms per complex amplitude.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{bell_state, qutrit_basis_state};
use crate::criteria::{compare_criteria, entanglement_degree, max_degree, CriterionComparison};
use crate::error::{Error, Result};
use crate::state::{BellCoefficients, BipartiteState};
use num_complex::Complex64;

pub const HISTOGRAM_BINS: usize = 20;
pub const MAX_DISAGREEMENTS: usize = 100;

/// Slack above the analytic `|det|` bound before a sample counts as a violation.
pub const BOUND_SLACK: f64 = 1e-12;

/// The generator for sample `index` of a scan seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard normal pair via Box-Muller.
fn gaussian_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    // u1 in (0, 1] keeps the log finite
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Haar-distributed pure state: normalized i.i.d. complex Gaussian amplitudes.
pub fn random_pure_state<R: Rng + ?Sized>(
    dim_a: usize,
    dim_b: usize,
    rng: &mut R,
) -> Result<BipartiteState> {
    let amplitudes = (0..dim_a * dim_b)
        .map(|_| {
            let (re, im) = gaussian_pair(rng);
            Complex64::new(re, im)
        })
        .collect();
    BipartiteState::new(dim_a, dim_b, amplitudes)
}

/// Uniformly distributed point on the unit 3-sphere of Bell coefficients.
pub fn random_bell_coefficients<R: Rng + ?Sized>(rng: &mut R) -> BellCoefficients {
    let (a, b) = gaussian_pair(rng);
    let (c, d) = gaussian_pair(rng);
    BellCoefficients::normalized([a, b, c, d]).expect("gaussian vector is nonzero almost surely")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Degree,
    Agreement,
}

/// Fixed-width bins over `[0, upper]`; values above `upper` land in the last bin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lower: f64,
    pub upper: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    fn new(upper: f64, bins: usize) -> Self {
        Self {
            lower: 0.0,
            upper,
            counts: vec![0; bins],
        }
    }

    fn add(&mut self, x: f64) {
        let bins = self.counts.len();
        let pos = ((x - self.lower) / (self.upper - self.lower) * bins as f64).floor();
        let idx = if pos.is_nan() || pos < 0.0 {
            0
        } else {
            (pos as usize).min(bins - 1)
        };
        self.counts[idx] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub dim: usize,
    pub seed: u64,
    pub tol: f64,
    /// Curated plus random samples.
    pub sample_count: u64,
    pub random_samples: u64,
    pub curated_samples: u64,
    /// Analytic maximum of `|det|`, `d^{-d/2}`.
    pub degree_bound: f64,
    pub max_degree_observed: f64,
    pub above_bound: u64,
    pub degree_histogram: Histogram,
    pub agreeing: Option<u64>,
    pub agreement_rate: Option<f64>,
    pub disagreement_count: Option<u64>,
    /// At most [`MAX_DISAGREEMENTS`] entries, curated cases first.
    pub disagreements: Vec<CriterionComparison>,
}

fn check_scan_dim(d: usize) -> Result<()> {
    if d != 2 && d != 3 {
        return Err(Error::Shape(format!("scans support d = 2 or 3, got {d}")));
    }
    Ok(())
}

fn random_states(
    d: usize,
    n: u64,
    seed: u64,
) -> impl IndexedParallelIterator<Item = BipartiteState> {
    (0..n as usize).into_par_iter().map(move |i| {
        random_pure_state(d, d, &mut sample_rng(seed, i as u64))
            .expect("gaussian vector is nonzero")
    })
}

fn base_report(mode: ScanMode, d: usize, seed: u64, tol: f64) -> ScanReport {
    let bound = max_degree(d);
    ScanReport {
        mode,
        dim: d,
        seed,
        tol,
        sample_count: 0,
        random_samples: 0,
        curated_samples: 0,
        degree_bound: bound,
        max_degree_observed: 0.0,
        above_bound: 0,
        degree_histogram: Histogram::new(bound, HISTOGRAM_BINS),
        agreeing: None,
        agreement_rate: None,
        disagreement_count: None,
        disagreements: Vec::new(),
    }
}

fn record_degree(report: &mut ScanReport, degree: f64) {
    report.sample_count += 1;
    report.degree_histogram.add(degree);
    report.max_degree_observed = report.max_degree_observed.max(degree);
    if degree > report.degree_bound + BOUND_SLACK {
        report.above_bound += 1;
    }
}

/// Histogram of `|det|` over `n` Haar-random `d × d` states.
pub fn degree_scan(d: usize, n: u64, seed: u64) -> Result<ScanReport> {
    check_scan_dim(d)?;
    if n == 0 {
        return Err(Error::Range {
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let degrees: Vec<f64> = random_states(d, n, seed)
        .map(|s| entanglement_degree(&s).expect("square"))
        .collect();
    let mut report = base_report(ScanMode::Degree, d, seed, 0.0);
    report.random_samples = n;
    for degree in degrees {
        record_degree(&mut report, degree);
    }
    Ok(report)
}

/// Edge cases always included in an agreement scan: the entangled basis,
/// every product basis state, and (for qutrits) rank-2 diagonal states.
pub fn curated_cases(d: usize) -> Result<Vec<(String, BipartiteState)>> {
    check_scan_dim(d)?;
    let mut cases = Vec::new();
    if d == 2 {
        for k in 0..4 {
            cases.push((format!("phi{k}"), bell_state(k)?));
        }
    } else {
        for k in 0..9 {
            cases.push((format!("beta{k}"), qutrit_basis_state(k)?));
        }
    }
    for i in 0..d {
        for mu in 0..d {
            cases.push((format!("|{i}{mu}>"), BipartiteState::basis(d, d, i, mu)?));
        }
    }
    if d == 3 {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut amps = [0.0; 9];
            amps[4 * i] = 1.0;
            amps[4 * j] = 1.0;
            cases.push((
                format!("(|{i}{i}>+|{j}{j}>)/sqrt2"),
                BipartiteState::from_real(3, 3, &amps)?,
            ));
        }
    }
    Ok(cases)
}

/// Runs [`compare_criteria`] on the curated cases followed by `n` random states.
pub fn agreement_scan(d: usize, n: u64, seed: u64, tol: f64) -> Result<ScanReport> {
    let curated = curated_cases(d)?;
    let mut results: Vec<(f64, CriterionComparison)> = curated
        .par_iter()
        .map(|(_, s)| (entanglement_degree(s), compare_criteria(s, tol)))
        .map(|(deg, cmp)| Ok((deg?, cmp?)))
        .collect::<Result<_>>()?;
    let random: Vec<(f64, CriterionComparison)> = random_states(d, n, seed)
        .map(|s| {
            (
                entanglement_degree(&s).expect("square"),
                compare_criteria(&s, tol).expect("supported dims"),
            )
        })
        .collect();
    results.extend(random);

    let mut report = base_report(ScanMode::Agreement, d, seed, tol);
    report.curated_samples = curated.len() as u64;
    report.random_samples = n;
    let mut agreeing = 0u64;
    let mut disagreeing = 0u64;
    for (degree, cmp) in results {
        record_degree(&mut report, degree);
        if cmp.agree {
            agreeing += 1;
        } else {
            disagreeing += 1;
            if report.disagreements.len() < MAX_DISAGREEMENTS {
                report.disagreements.push(cmp);
            }
        }
    }
    report.agreeing = Some(agreeing);
    report.disagreement_count = Some(disagreeing);
    report.agreement_rate = Some(agreeing as f64 / report.sample_count as f64);
    Ok(report)
}
