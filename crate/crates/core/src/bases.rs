//! Bell and qutrit entangled bases, Pauli and Gell-Mann matrices.
//!
//! Every basis state's coefficient matrix is a scalar multiple of a standard
//! generator (or the identity). [`basis_coefficient_matrix`] returns both the
//! matrix read off the state and that closed form so callers can check one
//! against the other.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{coefficient_matrix, BellCoefficients, BipartiteState};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_6: f64 = 2.449_489_742_783_178;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

fn out_of_range(what: &'static str, index: usize, min: usize, max: usize) -> Error {
    Error::IndexOutOfRange {
        what,
        index,
        min,
        max,
    }
}

/// Bell state `|φ_k⟩`, `k = 0..=3`:
/// `(|00⟩+|11⟩)/√2`, `(|01⟩+|10⟩)/√2`, `(|01⟩−|10⟩)/√2`, `(|00⟩−|11⟩)/√2`.
pub fn bell_state(k: usize) -> Result<BipartiteState> {
    let h = FRAC_1_SQRT_2;
    let amps = match k {
        0 => [h, 0.0, 0.0, h],
        1 => [0.0, h, h, 0.0],
        2 => [0.0, h, -h, 0.0],
        3 => [h, 0.0, 0.0, -h],
        _ => return Err(out_of_range("Bell state", k, 0, 3)),
    };
    BipartiteState::from_real(2, 2, &amps)
}

/// `Σ b_k |φ_k⟩` written in the computational basis.
pub fn bell_to_computational(b: &BellCoefficients) -> BipartiteState {
    let [b0, b1, b2, b3] = b.values();
    let h = FRAC_1_SQRT_2;
    BipartiteState::from_real(
        2,
        2,
        &[h * (b0 + b3), h * (b1 + b2), h * (b1 - b2), h * (b0 - b3)],
    )
    .expect("orthogonal image of a normalized vector")
}

/// Bell-basis coefficients of a two-qubit state with real amplitudes.
pub fn computational_to_bell(state: &BipartiteState) -> Result<BellCoefficients> {
    if state.dims() != (2, 2) {
        return Err(Error::Shape(format!(
            "Bell basis needs a 2x2 state, got {}x{}",
            state.dim_a(),
            state.dim_b()
        )));
    }
    if let Some(z) = state.amplitudes().iter().find(|z| z.im.abs() > 1e-12) {
        return Err(Error::Range {
            value: z.im,
            min: 0.0,
            max: 0.0,
        });
    }
    let a: Vec<f64> = state.amplitudes().iter().map(|z| z.re).collect();
    let h = FRAC_1_SQRT_2;
    BellCoefficients::normalized([
        h * (a[0] + a[3]),
        h * (a[1] + a[2]),
        h * (a[1] - a[2]),
        h * (a[0] - a[3]),
    ])
}

/// Qutrit basis state `|β_k⟩`, `k = 0..=8`.
pub fn qutrit_basis_state(k: usize) -> Result<BipartiteState> {
    let h = FRAC_1_SQRT_2;
    let mut a = [0.0; 9];
    let mut set = |i: usize, mu: usize, v: f64| a[3 * i + mu] = v;
    match k {
        0 => {
            let t = 1.0 / SQRT_3;
            set(0, 0, t);
            set(1, 1, t);
            set(2, 2, t);
        }
        1 | 2 => {
            set(0, 1, h);
            set(1, 0, if k == 1 { h } else { -h });
        }
        3 => {
            set(0, 0, h);
            set(1, 1, -h);
        }
        4 | 5 => {
            set(0, 2, h);
            set(2, 0, if k == 4 { h } else { -h });
        }
        6 | 7 => {
            set(1, 2, h);
            set(2, 1, if k == 6 { h } else { -h });
        }
        8 => {
            set(0, 0, 1.0 / SQRT_6);
            set(1, 1, 1.0 / SQRT_6);
            set(2, 2, -2.0 / SQRT_6);
        }
        _ => return Err(out_of_range("qutrit basis state", k, 0, 8)),
    }
    BipartiteState::from_real(3, 3, &a)
}

/// Pauli matrix `σ_i`, `i = 1..=3`.
pub fn pauli(i: usize) -> Result<DMatrix<Complex64>> {
    let z = re(0.0);
    let entries = match i {
        1 => [z, re(1.0), re(1.0), z],
        2 => [z, im(-1.0), im(1.0), z],
        3 => [re(1.0), z, z, re(-1.0)],
        _ => return Err(out_of_range("Pauli matrix", i, 1, 3)),
    };
    Ok(DMatrix::from_row_slice(2, 2, &entries))
}

/// Gell-Mann matrix `λ_k`, `k = 1..=8`.
pub fn gell_mann(k: usize) -> Result<DMatrix<Complex64>> {
    let mut m = DMatrix::<Complex64>::zeros(3, 3);
    match k {
        1 => {
            m[(0, 1)] = re(1.0);
            m[(1, 0)] = re(1.0);
        }
        2 => {
            m[(0, 1)] = im(-1.0);
            m[(1, 0)] = im(1.0);
        }
        3 => {
            m[(0, 0)] = re(1.0);
            m[(1, 1)] = re(-1.0);
        }
        4 => {
            m[(0, 2)] = re(1.0);
            m[(2, 0)] = re(1.0);
        }
        5 => {
            m[(0, 2)] = im(-1.0);
            m[(2, 0)] = im(1.0);
        }
        6 => {
            m[(1, 2)] = re(1.0);
            m[(2, 1)] = re(1.0);
        }
        7 => {
            m[(1, 2)] = im(-1.0);
            m[(2, 1)] = im(1.0);
        }
        8 => {
            let t = 1.0 / SQRT_3;
            m[(0, 0)] = re(t);
            m[(1, 1)] = re(t);
            m[(2, 2)] = re(-2.0 * t);
        }
        _ => return Err(out_of_range("Gell-Mann matrix", k, 1, 8)),
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Bell,
    Qutrit,
}

impl Basis {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Basis::Bell => 4,
            Basis::Qutrit => 9,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Basis::Bell => 2,
            Basis::Qutrit => 3,
        }
    }

    pub fn state(self, k: usize) -> Result<BipartiteState> {
        match self {
            Basis::Bell => bell_state(k),
            Basis::Qutrit => qutrit_basis_state(k),
        }
    }

    /// Symbol used for the coefficient matrices of this basis (`A` or `P`).
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Bell => "A",
            Basis::Qutrit => "P",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bell" => Ok(Basis::Bell),
            "qutrit" => Ok(Basis::Qutrit),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    Identity(usize),
    Pauli(usize),
    GellMann(usize),
}

impl Generator {
    pub fn matrix(self) -> Result<DMatrix<Complex64>> {
        match self {
            Generator::Identity(d) => Ok(DMatrix::identity(d, d)),
            Generator::Pauli(i) => pauli(i),
            Generator::GellMann(k) => gell_mann(k),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Identity(_) => write!(f, "I"),
            Generator::Pauli(i) => write!(f, "sigma_{i}"),
            Generator::GellMann(k) => write!(f, "lambda_{k}"),
        }
    }
}

/// `scalar · generator`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub scalar: Complex64,
    pub generator: Generator,
}

impl ClosedForm {
    pub fn matrix(&self) -> DMatrix<Complex64> {
        self.generator.matrix().expect("valid generator index") * self.scalar
    }
}

/// The tabulated closed form of the `k`-th basis state's coefficient matrix.
pub fn closed_form(basis: Basis, k: usize) -> Result<ClosedForm> {
    let h = FRAC_1_SQRT_2;
    let (scalar, generator) = match (basis, k) {
        (Basis::Bell, 0) => (re(h), Generator::Identity(2)),
        (Basis::Bell, 2) => (im(h), Generator::Pauli(2)),
        (Basis::Bell, 1 | 3) => (re(h), Generator::Pauli(k)),
        (Basis::Bell, _) => return Err(out_of_range("Bell state", k, 0, 3)),
        (Basis::Qutrit, 0) => (re(1.0 / SQRT_3), Generator::Identity(3)),
        (Basis::Qutrit, 2 | 5 | 7) => (im(h), Generator::GellMann(k)),
        (Basis::Qutrit, 1..=8) => (re(h), Generator::GellMann(k)),
        (Basis::Qutrit, _) => return Err(out_of_range("qutrit basis state", k, 0, 8)),
    };
    Ok(ClosedForm { scalar, generator })
}

/// Coefficient matrix of basis state `k` together with its closed form.
pub fn basis_coefficient_matrix(
    basis: Basis,
    k: usize,
) -> Result<(DMatrix<Complex64>, ClosedForm)> {
    let state = basis.state(k)?;
    Ok((
        coefficient_matrix(&state).into_matrix(),
        closed_form(basis, k)?,
    ))
}
