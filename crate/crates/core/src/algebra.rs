//! Lie-algebra checks on the basis coefficient matrices.
//!
//! The raw families are the coefficient matrices `A_0..A_3` of the Bell
//! states and `P_0..P_8` of the qutrit basis. Rescaling each by `√2` (times
//! `e^{-iπ/2}` for the anti-hermitian members, and `√d` for the identity
//! member) yields the Pauli and Gell-Mann matrices, which close under
//! commutation as `[G_a, G_b] = 2i f_abc G_c`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::bases::{basis_coefficient_matrix, gell_mann, pauli, Basis};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, max_abs_diff};

/// Residual bound for commutator closure.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Entrywise tolerance for hermiticity classification.
const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Su2,
    Su3,
}

impl Group {
    pub fn dim(self) -> usize {
        match self {
            Group::Su2 => 2,
            Group::Su3 => 3,
        }
    }

    pub fn basis(self) -> Basis {
        match self {
            Group::Su2 => Basis::Bell,
            Group::Su3 => Basis::Qutrit,
        }
    }

    /// Number of traceless generators.
    pub fn generator_count(self) -> usize {
        self.dim() * self.dim() - 1
    }
}

impl std::str::FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su2" => Ok(Group::Su2),
            "su3" => Ok(Group::Su3),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SetKind {
    /// Coefficient matrices of a basis, index 0 being the identity-like member.
    Raw(Group),
    /// Rescaled so that member `k` is the `k`-th standard generator.
    Primed(Group),
    Custom,
}

/// Scalar `modulus · e^{i phase}` applied to a raw member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scaling {
    pub modulus: f64,
    pub phase: f64,
}

impl Scaling {
    pub const IDENTITY: Scaling = Scaling {
        modulus: 1.0,
        phase: 0.0,
    };

    pub fn factor(self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.phase)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub label: String,
    pub index: usize,
    pub matrix: DMatrix<Complex64>,
    pub scaling: Scaling,
}

/// An indexed family of square matrices of one size.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    kind: SetKind,
    dim: usize,
    members: Vec<Member>,
}

impl GeneratorSet {
    /// The coefficient matrices `A_0..A_3` or `P_0..P_8`.
    pub fn raw(group: Group) -> Self {
        let basis = group.basis();
        let members = (0..basis.len())
            .map(|k| {
                let (matrix, _) = basis_coefficient_matrix(basis, k).expect("index in range");
                Member {
                    label: format!("{}{k}", basis.symbol()),
                    index: k,
                    matrix,
                    scaling: Scaling::IDENTITY,
                }
            })
            .collect();
        Self {
            kind: SetKind::Raw(group),
            dim: group.dim(),
            members,
        }
    }

    /// The standard generators `σ_1..σ_3` or `λ_1..λ_8`, indexed from 1.
    pub fn standard(group: Group) -> Self {
        let members = (1..=group.generator_count())
            .map(|k| {
                let matrix = match group {
                    Group::Su2 => pauli(k),
                    Group::Su3 => gell_mann(k),
                }
                .expect("index in range");
                let label = match group {
                    Group::Su2 => format!("sigma{k}"),
                    Group::Su3 => format!("lambda{k}"),
                };
                Member {
                    label,
                    index: k,
                    matrix,
                    scaling: Scaling::IDENTITY,
                }
            })
            .collect();
        Self {
            kind: SetKind::Primed(group),
            dim: group.dim(),
            members,
        }
    }

    /// A user-supplied family; members are indexed from 1.
    pub fn custom(matrices: Vec<DMatrix<Complex64>>) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        if let Some(bad) = matrices.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::Shape(format!(
                "generator of shape {:?} in a family of {dim}x{dim} matrices",
                bad.shape()
            )));
        }
        let members = matrices
            .into_iter()
            .enumerate()
            .map(|(i, matrix)| Member {
                label: format!("G{}", i + 1),
                index: i + 1,
                matrix,
                scaling: Scaling::IDENTITY,
            })
            .collect();
        Ok(Self {
            kind: SetKind::Custom,
            dim,
            members,
        })
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, index: usize) -> Option<&Member> {
        self.members.iter().find(|m| m.index == index)
    }

    /// Members that take part in the commutator algebra (index 0 excluded).
    pub fn traceless_members(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.index != 0)
    }
}

/// Scalar that turns raw member `k` into its primed form.
pub fn prime_scaling(group: Group, k: usize) -> Scaling {
    if k == 0 {
        return Scaling {
            modulus: (group.dim() as f64).sqrt(),
            phase: 0.0,
        };
    }
    let anti_hermitian = match group {
        Group::Su2 => k == 2,
        Group::Su3 => matches!(k, 2 | 5 | 7),
    };
    Scaling {
        modulus: SQRT_2,
        phase: if anti_hermitian { -FRAC_PI_2 } else { 0.0 },
    }
}

/// Applies [`prime_scaling`] to every member of a raw family.
pub fn rescale_generators(raw: &GeneratorSet) -> Result<GeneratorSet> {
    let group = match raw.kind {
        SetKind::Raw(g) => g,
        SetKind::Primed(_) => return Err(Error::UnknownFamily("already rescaled".into())),
        SetKind::Custom => return Err(Error::UnknownFamily("custom".into())),
    };
    let members = raw
        .members
        .iter()
        .map(|m| {
            let scaling = prime_scaling(group, m.index);
            Member {
                label: format!("{}'", m.label),
                index: m.index,
                matrix: &m.matrix * scaling.factor(),
                scaling,
            }
        })
        .collect();
    Ok(GeneratorSet {
        kind: SetKind::Primed(group),
        dim: raw.dim,
        members,
    })
}

/// `MN − NM`.
pub fn commutator(m: &DMatrix<Complex64>, n: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if !m.is_square() || m.shape() != n.shape() {
        return Err(Error::Shape(format!(
            "commutator of {:?} and {:?}",
            m.shape(),
            n.shape()
        )));
    }
    Ok(m * n - n * m)
}

/// Totally antisymmetric `f_abc`, 1-based, with `[G_a, G_b] = 2i Σ_c f_abc G_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureConstantTable {
    pub group: Option<Group>,
    pub size: usize,
    entries: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructureConstant {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: f64,
}

impl StructureConstantTable {
    fn zeros(group: Option<Group>, size: usize) -> Self {
        Self {
            group,
            size,
            entries: vec![0.0; size * size * size],
        }
    }

    fn offset(&self, a: usize, b: usize, c: usize) -> usize {
        assert!(
            (1..=self.size).contains(&a)
                && (1..=self.size).contains(&b)
                && (1..=self.size).contains(&c),
            "structure constant index out of range"
        );
        ((a - 1) * self.size + (b - 1)) * self.size + (c - 1)
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.entries[self.offset(a, b, c)]
    }

    fn set_antisymmetric(&mut self, a: usize, b: usize, c: usize, value: f64) {
        for (x, y, z, sign) in [
            (a, b, c, 1.0),
            (b, c, a, 1.0),
            (c, a, b, 1.0),
            (b, a, c, -1.0),
            (a, c, b, -1.0),
            (c, b, a, -1.0),
        ] {
            let o = self.offset(x, y, z);
            self.entries[o] = sign * value;
        }
    }

    /// Levi-Civita symbol, the su(2) table.
    pub fn levi_civita() -> Self {
        let mut t = Self::zeros(Some(Group::Su2), 3);
        t.set_antisymmetric(1, 2, 3, 1.0);
        t
    }

    /// The standard su(3) table for the Gell-Mann matrices.
    pub fn gell_mann() -> Self {
        let half_sqrt3 = 3f64.sqrt() / 2.0;
        let mut t = Self::zeros(Some(Group::Su3), 8);
        for (a, b, c, v) in [
            (1, 2, 3, 1.0),
            (1, 4, 7, 0.5),
            (1, 5, 6, -0.5),
            (2, 4, 6, 0.5),
            (2, 5, 7, 0.5),
            (3, 4, 5, 0.5),
            (3, 6, 7, -0.5),
            (4, 5, 8, half_sqrt3),
            (6, 7, 8, half_sqrt3),
        ] {
            t.set_antisymmetric(a, b, c, v);
        }
        t
    }

    /// Entries with `a < b < c` and `|f| > tol`.
    pub fn independent_nonzero(&self, tol: f64) -> Vec<StructureConstant> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                for c in (b + 1)..=n {
                    let value = self.get(a, b, c);
                    if value.abs() > tol {
                        out.push(StructureConstant { a, b, c, value });
                    }
                }
            }
        }
        out
    }

    /// Largest deviation from total antisymmetry.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.size;
        let mut worst = 0.0f64;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let f = self.get(a, b, c);
                    worst = worst
                        .max((f + self.get(b, a, c)).abs())
                        .max((f + self.get(a, c, b)).abs())
                        .max((f - self.get(b, c, a)).abs());
                }
            }
        }
        worst
    }

    /// Largest `|Σ_e f_abe f_ecd + f_bce f_ead + f_cae f_ebd|`.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.size;
        let mut worst = 0.0f64;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let s: f64 = (1..=n)
                            .map(|e| {
                                self.get(a, b, e) * self.get(e, c, d)
                                    + self.get(b, c, e) * self.get(e, a, d)
                                    + self.get(c, a, e) * self.get(e, b, d)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest entrywise difference from another table of the same size.
    pub fn max_difference(&self, other: &Self) -> f64 {
        assert_eq!(self.size, other.size, "table size mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// Structure constants and the closure residual of each commutator pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub table: StructureConstantTable,
    /// `(a, b, residual)` for every ordered pair.
    pub residuals: Vec<(usize, usize, f64)>,
}

impl ClosureReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.2).fold(0.0, f64::max)
    }
}

/// Extracts `f_abc = Tr([G_a, G_b] G_c) / (2i Tr(G_c²))` over the traceless
/// members and measures how well `2i Σ_c f_abc G_c` reproduces each
/// commutator. Never fails; see [`extract_structure_constants`].
pub fn closure_report(primed: &GeneratorSet) -> Result<ClosureReport> {
    let gens: Vec<&Member> = primed.traceless_members().collect();
    let n = gens.len();
    if n == 0 {
        return Err(Error::UnknownFamily("empty generator family".into()));
    }
    for (pos, g) in gens.iter().enumerate() {
        if g.index != pos + 1 {
            return Err(Error::UnknownFamily(format!(
                "generator indices must run 1..={n}, found {}",
                g.index
            )));
        }
    }
    let group = match primed.kind {
        SetKind::Primed(g) | SetKind::Raw(g) => Some(g),
        SetKind::Custom => None,
    };
    let norms: Vec<Complex64> = gens
        .iter()
        .map(|g| (&g.matrix * &g.matrix).trace())
        .collect();
    let mut table = StructureConstantTable::zeros(group, n);
    let mut commutators = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let comm = commutator(&gens[a].matrix, &gens[b].matrix)?;
            for c in 0..n {
                let f = (&comm * &gens[c].matrix).trace() / (Complex64::new(0.0, 2.0) * norms[c]);
                let o = table.offset(a + 1, b + 1, c + 1);
                table.entries[o] = f.re;
            }
            commutators.push(comm);
        }
    }

    let mut residuals = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut expansion = DMatrix::<Complex64>::zeros(primed.dim, primed.dim);
            for (c, g) in gens.iter().enumerate() {
                let f = table.get(a + 1, b + 1, c + 1);
                if f != 0.0 {
                    expansion += &g.matrix * Complex64::new(0.0, 2.0 * f);
                }
            }
            let residual = max_abs(&(&commutators[a * n + b] - expansion));
            residuals.push((a + 1, b + 1, residual));
        }
    }
    Ok(ClosureReport { table, residuals })
}

/// [`closure_report`], failing with [`Error::Closure`] if any residual exceeds
/// [`CLOSURE_TOL`].
pub fn extract_structure_constants(primed: &GeneratorSet) -> Result<StructureConstantTable> {
    let report = closure_report(primed)?;
    if let Some(&(first, second, residual)) = report
        .residuals
        .iter()
        .max_by(|x, y| x.2.total_cmp(&y.2))
        .filter(|r| r.2 > CLOSURE_TOL)
    {
        return Err(Error::Closure {
            residual,
            first,
            second,
        });
    }
    Ok(report.table)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiticityEntry {
    pub label: String,
    pub anti_hermitian: bool,
    pub hermitian: bool,
}

pub fn is_hermitian(m: &DMatrix<Complex64>, tol: f64) -> bool {
    max_abs_diff(m, &m.adjoint()) <= tol
}

pub fn is_anti_hermitian(m: &DMatrix<Complex64>, tol: f64) -> bool {
    max_abs_diff(m, &(-m.adjoint())) <= tol
}

pub fn is_unitary(m: &DMatrix<Complex64>, tol: f64) -> bool {
    let n = m.nrows();
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &DMatrix::identity(n, n)) <= tol
}

/// Hermiticity flags for every member of the raw family of `group`.
pub fn anti_hermiticity_report(group: Group) -> Vec<HermiticityEntry> {
    GeneratorSet::raw(group)
        .members()
        .iter()
        .map(|m| HermiticityEntry {
            label: m.label.clone(),
            anti_hermitian: is_anti_hermitian(&m.matrix, HERMITICITY_TOL),
            hermitian: is_hermitian(&m.matrix, HERMITICITY_TOL),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Complex64 {
        Complex64::new(SQRT_2, 0.0)
    }

    #[test]
    fn raw_qubit_commutators() {
        let raw = GeneratorSet::raw(Group::Su2);
        let a = |k: usize| raw.member(k).unwrap().matrix.clone();
        let c12 = commutator(&a(1), &a(2)).unwrap();
        assert!(max_abs_diff(&c12, &(a(3) * -sqrt2())) < 1e-15);
        let c31 = commutator(&a(3), &a(1)).unwrap();
        assert!(max_abs_diff(&c31, &(a(2) * sqrt2())) < 1e-15);
        assert_eq!(max_abs(&commutator(&a(2), &a(2)).unwrap()), 0.0);
    }

    #[test]
    fn commutator_shape_error() {
        let a = DMatrix::<Complex64>::identity(2, 2);
        let b = DMatrix::<Complex64>::identity(3, 3);
        assert!(matches!(commutator(&a, &b), Err(Error::Shape(_))));
    }

    #[test]
    fn rescaling_examples() {
        let primed = rescale_generators(&GeneratorSet::raw(Group::Su2)).unwrap();
        let a2 = primed.member(2).unwrap();
        assert!(max_abs_diff(&a2.matrix, &pauli(2).unwrap()) < 1e-15);
        assert_eq!(a2.scaling.phase, -FRAC_PI_2);

        let primed = rescale_generators(&GeneratorSet::raw(Group::Su3)).unwrap();
        assert!(max_abs_diff(&primed.member(5).unwrap().matrix, &gell_mann(5).unwrap()) < 1e-15);
        let p0 = primed.member(0).unwrap();
        assert!(max_abs_diff(&p0.matrix, &DMatrix::identity(3, 3)) < 1e-15);
        assert!((p0.scaling.modulus - 3f64.sqrt()).abs() < 1e-16);

        assert!(matches!(
            rescale_generators(&primed),
            Err(Error::UnknownFamily(_))
        ));
        let custom = GeneratorSet::custom(vec![pauli(1).unwrap()]).unwrap();
        assert!(matches!(
            rescale_generators(&custom),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn su2_structure_constants() {
        let primed = rescale_generators(&GeneratorSet::raw(Group::Su2)).unwrap();
        let t = extract_structure_constants(&primed).unwrap();
        assert!(t.max_difference(&StructureConstantTable::levi_civita()) < 1e-15);
        assert!((t.get(1, 2, 3) - 1.0).abs() < 1e-15);
        assert!((t.get(2, 1, 3) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn su3_structure_constants_spot_values() {
        let primed = rescale_generators(&GeneratorSet::raw(Group::Su3)).unwrap();
        let t = extract_structure_constants(&primed).unwrap();
        assert!((t.get(1, 2, 3) - 1.0).abs() < 1e-14);
        assert!((t.get(4, 5, 8) - 3f64.sqrt() / 2.0).abs() < 1e-14);
        assert!((t.get(1, 4, 7) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn non_closing_family_is_reported() {
        // σ1, σ2 alone: [σ1, σ2] = 2iσ3 has no component in the family
        let fam = GeneratorSet::custom(vec![pauli(1).unwrap(), pauli(2).unwrap()]).unwrap();
        match extract_structure_constants(&fam) {
            Err(Error::Closure { residual, .. }) => assert!((residual - 2.0).abs() < 1e-15),
            other => panic!("expected closure error, got {other:?}"),
        }
        let report = closure_report(&fam).unwrap();
        assert_eq!(report.residuals.len(), 4);
    }

    #[test]
    fn anti_hermitian_members() {
        let flagged = |g| -> Vec<String> {
            anti_hermiticity_report(g)
                .into_iter()
                .filter(|e| e.anti_hermitian)
                .map(|e| e.label)
                .collect()
        };
        assert_eq!(flagged(Group::Su2), vec!["A2"]);
        assert_eq!(flagged(Group::Su3), vec!["P2", "P5", "P7"]);
        for e in anti_hermiticity_report(Group::Su3) {
            assert_ne!(e.anti_hermitian, e.hermitian, "{}", e.label);
        }
        let a2 = &GeneratorSet::raw(Group::Su2)
            .member(2)
            .unwrap()
            .matrix
            .clone();
        assert_eq!(max_abs(&(a2 + a2.adjoint())), 0.0);
        assert!(is_unitary(&(a2 * sqrt2()), 1e-15));
    }
}
