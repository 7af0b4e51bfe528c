//! Bipartite pure states and their coefficient-matrix view.
//!
//! Amplitudes are stored row-major with subsystem A first: the entry at
//! index `i * dim_b + mu` holds the amplitude of `|i⟩_A ⊗ |mu⟩_B`. Reshaping
//! that vector into a `dim_a × dim_b` matrix gives the coefficient matrix,
//! whose determinant, trace and singular values drive every test in this
//! crate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on the input norm before a state counts as renormalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A normalized pure state of a `dim_a × dim_b` bipartite system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
    renormalized: bool,
}

impl BipartiteState {
    /// Builds a state, dividing the amplitudes by their Euclidean norm.
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dims(dim_a, dim_b)?;
        if amplitudes.len() != dim_a * dim_b {
            return Err(Error::Shape(format!(
                "expected {} amplitudes for a {dim_a}x{dim_b} system, got {}",
                dim_a * dim_b,
                amplitudes.len()
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateState);
        }
        let renormalized = (norm - 1.0).abs() > NORMALIZATION_TOL;
        // already unit to rounding: keep the input bits so reshapes round-trip exactly
        let amplitudes = if (norm - 1.0).abs() <= 8.0 * f64::EPSILON {
            amplitudes
        } else {
            amplitudes.into_iter().map(|a| a / norm).collect()
        };
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
            renormalized,
        })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(dim_a: usize, dim_b: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            dim_a,
            dim_b,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// The product basis state `|i⟩_A ⊗ |mu⟩_B`.
    pub fn basis(dim_a: usize, dim_b: usize, i: usize, mu: usize) -> Result<Self> {
        check_dims(dim_a, dim_b)?;
        if i >= dim_a {
            return Err(Error::IndexOutOfRange {
                what: "subsystem A",
                index: i,
                min: 0,
                max: dim_a - 1,
            });
        }
        if mu >= dim_b {
            return Err(Error::IndexOutOfRange {
                what: "subsystem B",
                index: mu,
                min: 0,
                max: dim_b - 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim_a * dim_b];
        amplitudes[i * dim_b + mu] = Complex64::new(1.0, 0.0);
        Self::new(dim_a, dim_b, amplitudes)
    }

    /// `cos θ |00⟩ + sin θ |11⟩` on two qubits.
    pub fn theta_family(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_real(2, 2, &[c, 0.0, 0.0, s]).expect("cos/sin never both vanish")
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn is_square(&self) -> bool {
        self.dim_a == self.dim_b
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude `a_{i mu}`.
    pub fn amplitude(&self, i: usize, mu: usize) -> Complex64 {
        self.amplitudes[i * self.dim_b + mu]
    }

    /// True when the input norm differed from one by more than [`NORMALIZATION_TOL`].
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dims() != other.dims() {
            return Err(Error::Shape(format!(
                "inner product of {}x{} and {}x{} states",
                self.dim_a, self.dim_b, other.dim_a, other.dim_b
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn check_dims(dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a < 2 || dim_b < 2 {
        return Err(Error::Shape(format!(
            "subsystem dimensions must be at least 2, got {dim_a}x{dim_b}"
        )));
    }
    Ok(())
}

/// Free-function form of [`BipartiteState::new`].
pub fn make_state(
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
) -> Result<BipartiteState> {
    BipartiteState::new(dim_a, dim_b, amplitudes)
}

/// The `dim_a × dim_b` matrix of amplitudes, entry `(i, mu) = a_{i mu}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix(DMatrix<Complex64>);

impl CoefficientMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Self {
        Self(matrix)
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.0.is_square()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Determinant; `None` for rectangular matrices.
    pub fn det(&self) -> Option<Complex64> {
        self.is_square().then(|| crate::linalg::det(&self.0))
    }

    /// Trace; `None` for rectangular matrices.
    pub fn trace(&self) -> Option<Complex64> {
        self.is_square().then(|| self.0.trace())
    }
}

pub fn coefficient_matrix(state: &BipartiteState) -> CoefficientMatrix {
    CoefficientMatrix(DMatrix::from_row_slice(
        state.dim_a,
        state.dim_b,
        &state.amplitudes,
    ))
}

/// Inverse of [`coefficient_matrix`]; renormalizes if needed.
pub fn state_from_matrix(matrix: &DMatrix<Complex64>) -> Result<BipartiteState> {
    let (rows, cols) = matrix.shape();
    let amplitudes = (0..rows)
        .flat_map(|i| (0..cols).map(move |mu| matrix[(i, mu)]))
        .collect();
    BipartiteState::new(rows, cols, amplitudes)
}

/// Real amplitudes `(b0, b1, b2, b3)` of a two-qubit state in the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellCoefficients([f64; 4]);

impl BellCoefficients {
    /// Accepts `b` only if `Σ b_k² = 1` within [`NORMALIZATION_TOL`].
    pub fn new(b: [f64; 4]) -> Result<Self> {
        let norm_sq: f64 = b.iter().map(|x| x * x).sum();
        if !norm_sq.is_finite() || norm_sq == 0.0 {
            return Err(Error::DegenerateState);
        }
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Range {
                value: norm_sq,
                min: 1.0 - NORMALIZATION_TOL,
                max: 1.0 + NORMALIZATION_TOL,
            });
        }
        Ok(Self(b))
    }

    /// Divides `b` by its norm.
    pub fn normalized(b: [f64; 4]) -> Result<Self> {
        let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateState);
        }
        Ok(Self(b.map(|x| x / norm)))
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}
