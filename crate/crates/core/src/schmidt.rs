//! Reduced density matrices and the Schmidt decomposition.
//!
//! With `M` the coefficient matrix, `ρ_A = M M†` and `ρ_B = (M† M)ᵀ`
//! (the transpose keeps `ρ_B` in the `⟨mu|ρ_B|nu⟩` orientation). The Schmidt
//! coefficients are the singular values of `M`; eigenvalues of `ρ_A` are
//! their squares and are only ever used as a cross-check.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{coefficient_matrix, BipartiteState};

/// Default threshold on Schmidt coefficients (not their squares) for rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// A reduced density matrix of one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    matrix: DMatrix<Complex64>,
}

impl ReducedDensity {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Max-norm distance from `I/d`.
    pub fn distance_from_maximally_mixed(&self) -> f64 {
        let d = self.dim();
        let mixed = DMatrix::<Complex64>::identity(d, d) / Complex64::new(d as f64, 0.0);
        linalg::max_abs_diff(&self.matrix, &mixed)
    }

    /// Max-norm distance from its own adjoint.
    pub fn hermiticity_defect(&self) -> f64 {
        linalg::max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }
}

pub fn reduced_density_a(state: &BipartiteState) -> ReducedDensity {
    let m = coefficient_matrix(state);
    ReducedDensity {
        matrix: linalg::gram_rows(m.as_matrix()),
    }
}

pub fn reduced_density_b(state: &BipartiteState) -> ReducedDensity {
    let m = coefficient_matrix(state);
    ReducedDensity {
        matrix: linalg::gram_cols(m.as_matrix()).transpose(),
    }
}

/// `|ψ⟩ = Σ_j s_j |l_j⟩ ⊗ |r_j⟩` with `s` descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtDecomposition {
    coefficients: Vec<f64>,
    #[serde(skip)]
    left: DMatrix<Complex64>,
    #[serde(skip)]
    right: DMatrix<Complex64>,
    rank: usize,
    tol: f64,
}

impl SchmidtDecomposition {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Squared coefficients, i.e. the nonzero spectrum of `ρ_A`.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|s| s * s).collect()
    }

    /// Columns are the subsystem-A Schmidt vectors.
    pub fn left_vectors(&self) -> &DMatrix<Complex64> {
        &self.left
    }

    /// Columns are the subsystem-B Schmidt vectors.
    pub fn right_vectors(&self) -> &DMatrix<Complex64> {
        &self.right
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Amplitudes `Σ_j s_j l_j ⊗ r_j` in the row-major A-then-B order.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let (da, db) = (self.left.nrows(), self.right.nrows());
        let mut out = vec![linalg::czero(); da * db];
        for (j, &s) in self.coefficients.iter().enumerate() {
            for i in 0..da {
                let l = self.left[(i, j)] * s;
                for mu in 0..db {
                    out[i * db + mu] += l * self.right[(mu, j)];
                }
            }
        }
        out
    }

    /// Largest amplitude error of [`Self::reconstruct`] against `state`.
    pub fn reconstruction_residual(&self, state: &BipartiteState) -> f64 {
        self.reconstruct()
            .iter()
            .zip(state.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Schmidt decomposition from the SVD of the coefficient matrix.
///
/// Each left vector's first non-negligible entry is rotated to be real and
/// non-negative; the compensating phase goes into the right vector.
pub fn schmidt_decompose(state: &BipartiteState, tol: f64) -> SchmidtDecomposition {
    let m = coefficient_matrix(state);
    let svd = linalg::svd(m.as_matrix());
    let mut left = svd.u;
    // a_{i mu} = Σ_j s_j U_{ij} conj(V_{mu j})
    let mut right = svd.v.map(|z| z.conj());

    for j in 0..left.ncols() {
        let pivot = left.column(j).iter().copied().find(|z| z.norm() > 1e-12);
        if let Some(p) = pivot {
            let phase = p / p.norm();
            for i in 0..left.nrows() {
                left[(i, j)] *= phase.conj();
            }
            for mu in 0..right.nrows() {
                right[(mu, j)] *= phase;
            }
        }
    }

    let coefficients: Vec<f64> = svd.singular_values.iter().map(|s| s.min(1.0)).collect();
    let rank = coefficients.iter().filter(|&&s| s > tol).count().max(1);
    SchmidtDecomposition {
        coefficients,
        left,
        right,
        rank,
        tol,
    }
}

pub fn schmidt_rank(state: &BipartiteState, tol: f64) -> usize {
    schmidt_decompose(state, tol).rank()
}

/// The two eigenvalues of `ρ_A` for a qubit pair, from `|det A|` alone:
/// `(1 ∓ √(1 − 4|det A|²)) / 2`, smaller first.
pub fn qubit_eigenvalues_closed_form(det_abs: f64) -> Result<(f64, f64)> {
    const SLACK: f64 = 1e-12;
    if !(0.0..=0.5 + SLACK).contains(&det_abs) {
        return Err(Error::Range {
            value: det_abs,
            min: 0.0,
            max: 0.5,
        });
    }
    let d = det_abs.min(0.5);
    let root = (1.0 - 4.0 * d * d).max(0.0).sqrt();
    Ok(((1.0 - root) / 2.0, (1.0 + root) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::BipartiteState;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_6};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn bell0() -> BipartiteState {
        BipartiteState::from_real(2, 2, &[1.0, 0.0, 0.0, 1.0]).unwrap()
    }

    fn diag_entries(r: &ReducedDensity) -> Vec<f64> {
        (0..r.dim()).map(|i| r.matrix()[(i, i)].re).collect()
    }

    #[test]
    fn rho_a_examples() {
        let r = reduced_density_a(&bell0());
        assert!(r.distance_from_maximally_mixed() < 1e-15);

        let r = reduced_density_a(&BipartiteState::basis(2, 2, 0, 0).unwrap());
        assert_eq!(diag_entries(&r), vec![1.0, 0.0]);

        let r = reduced_density_a(&BipartiteState::theta_family(FRAC_PI_6));
        let d = diag_entries(&r);
        assert!(close(d[0], 0.75, 1e-15) && close(d[1], 0.25, 1e-15));
        assert!(r.matrix()[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn rho_b_examples() {
        let phi1 = BipartiteState::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(reduced_density_b(&phi1).distance_from_maximally_mixed() < 1e-15);

        let r = reduced_density_b(&BipartiteState::basis(2, 2, 0, 1).unwrap());
        assert_eq!(diag_entries(&r), vec![0.0, 1.0]);
    }

    #[test]
    fn rho_b_orientation_matches_partial_trace() {
        // ρ_B[mu][nu] = Σ_i a_{i mu} conj(a_{i nu})
        let s = BipartiteState::new(
            2,
            3,
            vec![
                Complex64::new(0.1, 0.2),
                Complex64::new(0.3, -0.1),
                Complex64::new(0.0, 0.4),
                Complex64::new(-0.2, 0.0),
                Complex64::new(0.5, 0.5),
                Complex64::new(0.1, -0.3),
            ],
        )
        .unwrap();
        let r = reduced_density_b(&s);
        for mu in 0..3 {
            for nu in 0..3 {
                let direct: Complex64 = (0..2)
                    .map(|i| s.amplitude(i, mu) * s.amplitude(i, nu).conj())
                    .sum();
                assert!((r.matrix()[(mu, nu)] - direct).norm() < 1e-15);
            }
        }
        assert!(close(r.trace(), 1.0, 1e-14));
        assert!(r.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn schmidt_examples() {
        let phi2 = BipartiteState::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        let sd = schmidt_decompose(&phi2, DEFAULT_RANK_TOL);
        assert_eq!(sd.rank(), 2);
        for s in sd.coefficients() {
            assert!(close(*s, FRAC_1_SQRT_2, 1e-15));
        }
        assert!(sd.reconstruction_residual(&phi2) < 1e-15);

        let s10 = BipartiteState::basis(2, 2, 1, 0).unwrap();
        let sd = schmidt_decompose(&s10, DEFAULT_RANK_TOL);
        assert_eq!(sd.rank(), 1);
        assert_eq!(sd.coefficients(), &[1.0, 0.0]);

        let q = BipartiteState::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0])
            .unwrap();
        let sd = schmidt_decompose(&q, DEFAULT_RANK_TOL);
        assert_eq!(sd.rank(), 2);
        assert!(close(sd.coefficients()[0], FRAC_1_SQRT_2, 1e-15));
        assert!(close(sd.coefficients()[1], FRAC_1_SQRT_2, 1e-15));
        assert_eq!(sd.coefficients()[2], 0.0);
        assert!(sd.reconstruction_residual(&q) < 1e-15);
    }

    #[test]
    fn phase_convention_on_left_vectors() {
        let s = BipartiteState::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.6),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.8, 0.0),
            ],
        )
        .unwrap();
        let sd = schmidt_decompose(&s, DEFAULT_RANK_TOL);
        for j in 0..2 {
            let first = sd
                .left_vectors()
                .column(j)
                .iter()
                .copied()
                .find(|z| z.norm() > 1e-12)
                .unwrap();
            assert!(first.im.abs() < 1e-15 && first.re > 0.0);
        }
        assert!(sd.reconstruction_residual(&s) < 1e-15);
    }

    #[test]
    fn schmidt_rank_examples() {
        let beta0 = BipartiteState::from_real(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0])
            .unwrap();
        assert_eq!(schmidt_rank(&beta0, DEFAULT_RANK_TOL), 3);
        assert_eq!(
            schmidt_rank(
                &BipartiteState::basis(2, 2, 1, 1).unwrap(),
                DEFAULT_RANK_TOL
            ),
            1
        );
        let singlet = BipartiteState::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert_eq!(schmidt_rank(&singlet, DEFAULT_RANK_TOL), 2);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(qubit_eigenvalues_closed_form(0.0).unwrap(), (0.0, 1.0));
        assert_eq!(qubit_eigenvalues_closed_form(0.5).unwrap(), (0.5, 0.5));
        let (m1, m2) = qubit_eigenvalues_closed_form(3f64.sqrt() / 4.0).unwrap();
        assert!(close(m1, 0.25, 1e-15) && close(m2, 0.75, 1e-15));
        assert!(matches!(
            qubit_eigenvalues_closed_form(0.5 + 1e-9),
            Err(Error::Range { .. })
        ));
        assert!(qubit_eigenvalues_closed_form(0.5 + 1e-13).is_ok());
        assert!(qubit_eigenvalues_closed_form(-0.1).is_err());
    }
}
