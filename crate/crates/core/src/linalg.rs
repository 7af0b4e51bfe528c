//! Small dense complex linear algebra.
//!
//! The singular value decomposition here is a one-sided (Hestenes) Jacobi
//! iteration. It is accurate to working precision on the small matrices this
//! crate deals with and needs no external LAPACK. Hermitian eigenvalues come
//! from nalgebra and serve as the independent route for cross-checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 80;

pub(crate) fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Determinant. Closed forms for 1×1 through 3×3, LU otherwise.
///
/// Panics on a non-square matrix.
pub fn det(m: &DMatrix<Complex64>) -> Complex64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    match m.nrows() {
        0 => Complex64::new(1.0, 0.0),
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        3 => {
            m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
                - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
                + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
        }
        _ => m.clone().determinant(),
    }
}

/// `M M†`.
pub fn gram_rows(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m * m.adjoint()
}

/// `M† M`.
pub fn gram_cols(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.adjoint() * m
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &DMatrix<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Thin SVD `M = U diag(s) V†` with `s` descending.
///
/// `U` is `m × k` and `V` is `n × k` with `k = min(m, n)`; both have
/// orthonormal columns, including those paired with zero singular values.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DMatrix<Complex64>,
    pub singular_values: Vec<f64>,
    pub v: DMatrix<Complex64>,
}

pub fn svd(m: &DMatrix<Complex64>) -> Svd {
    let (rows, cols) = m.shape();
    if rows >= cols {
        jacobi_tall(m)
    } else {
        // M† = U' S V'†  =>  M = V' S U'†
        let t = jacobi_tall(&m.adjoint());
        Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        }
    }
}

/// One-sided Jacobi on a matrix with at least as many rows as columns.
fn jacobi_tall(m: &DMatrix<Complex64>) -> Svd {
    let (rows, cols) = m.shape();
    let mut g = m.clone();
    let mut v = DMatrix::<Complex64>::identity(cols, cols);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: f64 = g.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = g.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = g
                    .column(p)
                    .iter()
                    .zip(g.column(q).iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let gamma_abs = gamma.norm();
                if gamma_abs == 0.0 || gamma_abs <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;

                // Strip the phase of gamma from column q, then apply a real rotation.
                let phase = gamma / gamma_abs;
                let zeta = (beta - alpha) / (2.0 * gamma_abs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut g, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(usize, f64)> = (0..cols)
        .map(|j| {
            (
                j,
                g.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            )
        })
        .collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let scale = order.first().map_or(0.0, |o| o.1);
    let negligible = scale * (rows.max(cols) as f64) * f64::EPSILON;

    let mut u = DMatrix::<Complex64>::zeros(rows, cols);
    let mut v_sorted = DMatrix::<Complex64>::zeros(cols, cols);
    let mut singular_values = Vec::with_capacity(cols);
    let mut filled = Vec::with_capacity(cols);
    for (k, &(j, sigma)) in order.iter().enumerate() {
        singular_values.push(sigma);
        v_sorted.set_column(k, &v.column(j));
        if sigma > negligible {
            u.set_column(k, &(g.column(j) / Complex64::new(sigma, 0.0)));
            filled.push(true);
        } else {
            filled.push(false);
        }
    }
    complete_orthonormal(&mut u, &filled);

    Svd {
        u,
        singular_values,
        v: v_sorted,
    }
}

/// `[x_p, x_q] <- [x_p, x_q] J` with `J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]`.
fn rotate(x: &mut DMatrix<Complex64>, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let unphase = phase.conj();
    for r in 0..x.nrows() {
        let xp = x[(r, p)];
        let xq = x[(r, q)] * unphase;
        x[(r, p)] = xp * c - xq * s;
        x[(r, q)] = xp * s + xq * c;
    }
}

/// Fills the columns of `u` not marked in `filled` so that all columns are
/// orthonormal, using modified Gram-Schmidt against standard basis vectors.
#[allow(clippy::needless_range_loop)]
fn complete_orthonormal(u: &mut DMatrix<Complex64>, filled: &[bool]) {
    let rows = u.nrows();
    let mut candidate = 0;
    for k in 0..filled.len() {
        if filled[k] {
            continue;
        }
        loop {
            assert!(candidate < rows, "ran out of basis vectors");
            let mut w = DVector::<Complex64>::zeros(rows);
            w[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            // two passes for stability
            for _ in 0..2 {
                for j in 0..u.ncols() {
                    if j == k || !(filled[j] || j < k) {
                        continue;
                    }
                    let col = u.column(j);
                    let proj: Complex64 = col.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
                    w -= col * proj;
                }
            }
            let norm = w.norm();
            if norm > 1e-6 {
                u.set_column(k, &(w / Complex64::new(norm, 0.0)));
                break;
            }
        }
    }
}
