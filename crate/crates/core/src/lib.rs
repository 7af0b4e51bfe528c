//! Entanglement tests for bipartite pure states.
//!
//! A pure state of a `d_A × d_B` system is a vector of amplitudes `a_{iμ}`;
//! arranged as a matrix, its determinant (for square systems) and singular
//! values decide whether the state factorizes. This crate provides:
//!
//! - [`state`]: states, coefficient matrices, Bell-basis coefficients;
//! - [`schmidt`]: reduced density matrices and the Schmidt decomposition;
//! - [`criteria`]: determinant rules for qubits and qutrits next to the
//!   Schmidt-rank oracle;
//! - [`bases`] and [`algebra`]: the Bell and qutrit entangled bases, their
//!   coefficient matrices, and the su(2)/su(3) commutator algebra they span;
//! - [`ensemble`]: seeded Haar sampling and statistical scans.

pub mod algebra;
pub mod bases;
pub mod criteria;
pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod schmidt;
pub mod state;

pub use algebra::{GeneratorSet, Group, StructureConstantTable};
pub use bases::Basis;
pub use criteria::{Classification, CriterionComparison, EntanglementVerdict, Method};
pub use ensemble::ScanReport;
pub use error::{Error, Result};
pub use schmidt::{ReducedDensity, SchmidtDecomposition};
pub use state::{BellCoefficients, BipartiteState, CoefficientMatrix};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
