//! Dense complex linear algebra for registers of at most three qubits.
//!
//! Matrices are stored row-major. Qubit A is the most significant bit of a
//! basis index, C the least significant; in a reduced register the kept qubits
//! keep their relative order.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Entrywise Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_SLACK: f64 = -1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix whose dimension is a power of two.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::BadDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real entries given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::EntryCount {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim.is_power_of_two(), "dimension must be a power of two");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::new(diag.len(), vec![ZERO; diag.len() * diag.len()])?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// The projector `|v⟩⟨v|` (no normalization applied).
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(a * b.conj());
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "add dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M − M†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One of the three qubits of the register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Tensor slot, 0 being the leftmost factor (most significant bit).
    pub fn slot(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }

    pub fn label(self) -> char {
        match self {
            Qubit::A => 'A',
            Qubit::B => 'B',
            Qubit::C => 'C',
        }
    }
}

/// A validated density matrix on one to three qubits.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    matrix: ComplexMatrix,
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix[{} qubits] {:?}", self.qubits, self.matrix)
    }
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity before accepting `matrix`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let qubits = qubits_for_dim(matrix.dim())?;
        let diag = validate_density(&matrix);
        if diag.hermiticity > HERMITIAN_TOL {
            return Err(Error::NotHermitian(diag.hermiticity));
        }
        if diag.trace_deviation > TRACE_TOL {
            return Err(Error::BadTrace(diag.trace_deviation));
        }
        if diag.min_eigenvalue < PSD_SLACK {
            return Err(Error::NotPositive(diag.min_eigenvalue));
        }
        Ok(Self { qubits, matrix })
    }

    /// `|ψ⟩⟨ψ|` for a normalized amplitude vector of length 2, 4 or 8.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let qubits = qubits_for_dim(amplitudes.len())?;
        Ok(Self {
            qubits,
            matrix: ComplexMatrix::outer(amplitudes)?,
        })
    }

    /// Skips validation; callers guarantee the matrix is a state.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        let qubits = qubits_for_dim(matrix.dim()).expect("density matrix dimension");
        Self { qubits, matrix }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        other => Err(Error::BadDimension(other)),
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Partial transpose of an `qubits`-qubit matrix on tensor slot `slot`.
pub fn partial_transpose_slot(m: &ComplexMatrix, slot: usize) -> Result<ComplexMatrix> {
    let qubits = qubits_for_dim(m.dim())?;
    if slot >= qubits {
        return Err(Error::InvalidQubit {
            label: (b'A' + slot as u8) as char,
            qubits,
        });
    }
    let mask = 1usize << (qubits - 1 - slot);
    let n = m.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            // swap the bit at `mask` between row and column index
            let src_i = (i & !mask) | (j & mask);
            let src_j = (j & !mask) | (i & mask);
            out[(i, j)] = m[(src_i, src_j)];
        }
    }
    Ok(out)
}

/// `ρ^{T_q}`. On a two-qubit register only A and B (slots 0 and 1) exist.
pub fn partial_transpose(rho: &DensityMatrix, q: Qubit) -> Result<ComplexMatrix> {
    if q.slot() >= rho.qubits() {
        return Err(Error::InvalidQubit {
            label: q.label(),
            qubits: rho.qubits(),
        });
    }
    partial_transpose_slot(rho.matrix(), q.slot())
}

/// Reduced state on the qubits in `keep`, which stay in A, B, C order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Qubit]) -> Result<DensityMatrix> {
    let n = rho.qubits();
    let mut kept: Vec<usize> = keep.iter().map(|q| q.slot()).collect();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() >= n {
        return Err(Error::InvalidQubitSet(format!(
            "keep set {:?} must be a nonempty proper subset of a {}-qubit register",
            keep, n
        )));
    }
    if let Some(&bad) = kept.iter().find(|&&s| s >= n) {
        return Err(Error::InvalidQubit {
            label: (b'A' + bad as u8) as char,
            qubits: n,
        });
    }
    let traced: Vec<usize> = (0..n).filter(|s| !kept.contains(s)).collect();
    let bit = |slot: usize| n - 1 - slot;

    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &slot) in kept.iter().enumerate() {
            let b = (kept_bits >> (kept.len() - 1 - pos)) & 1;
            idx |= b << bit(slot);
        }
        for (pos, &slot) in traced.iter().enumerate() {
            let b = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            idx |= b << bit(slot);
        }
        idx
    };

    let rd = 1usize << kept.len();
    let td = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(rd);
    for i in 0..rd {
        for j in 0..rd {
            let mut acc = ZERO;
            for e in 0..td {
                acc += rho.matrix()[(compose(i, e), compose(j, e))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector belonging to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut work = m.entries().to_vec();
    Ok(jacobi_eigh(m.dim(), &mut work, false).values)
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Eigen> {
    check_hermitian(m)?;
    let mut work = m.entries().to_vec();
    Ok(jacobi_eigh(m.dim(), &mut work, true))
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let dev = m.hermiticity_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// `Tr √(M M†)`, the sum of absolute eigenvalues for Hermitian `M`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

/// Cyclic complex Jacobi on an `n × n` Hermitian matrix stored row-major in
/// `a`, which is destroyed. Works for any `n`, not only powers of two.
pub(crate) fn jacobi_eigh(n: usize, a: &mut [Complex64], want_vectors: bool) -> Eigen {
    debug_assert_eq!(a.len(), n * n);
    let mut v = if want_vectors {
        let mut v = vec![ZERO; n * n];
        for i in 0..n {
            v[i * n + i] = ONE;
        }
        v
    } else {
        Vec::new()
    };

    // symmetrize so rounding in the input cannot leave an anti-Hermitian part
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[i * n + j] + a[j * n + i].conj());
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }

    let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-18 * norm || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 || r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, phase*) · [[c, s], [-s, c]]
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -s * phase.conj();
                let gqq = c * phase.conj();

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * gpp + akq * gqp;
                    a[k * n + q] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[q * n + k] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);

                if want_vectors {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * gpp + vkq * gqp;
                        v[k * n + q] = vkp * gpq + vkq * gqq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = if want_vectors {
        order
            .iter()
            .map(|&col| (0..n).map(|k| v[k * n + col]).collect())
            .collect()
    } else {
        Vec::new()
    };
    Eigen { values, vectors }
}

/// How far a matrix is from being a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityDiagnostics {
    /// Largest entrywise modulus of `M − M†`.
    pub hermiticity: f64,
    /// `|Tr M − 1|`.
    pub trace_deviation: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
}

impl DensityDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermiticity <= HERMITIAN_TOL
            && self.trace_deviation <= TRACE_TOL
            && self.min_eigenvalue >= PSD_SLACK
    }
}

pub fn validate_density(m: &ComplexMatrix) -> DensityDiagnostics {
    let hermiticity = m.hermiticity_deviation();
    let tr = m.trace();
    let trace_deviation = Complex64::new(tr.re - 1.0, tr.im).norm();
    let mut work = m.entries().to_vec();
    let min_eigenvalue = jacobi_eigh(m.dim(), &mut work, false)
        .values
        .first()
        .copied()
        .unwrap_or(0.0);
    DensityDiagnostics {
        hermiticity,
        trace_deviation,
        min_eigenvalue,
    }
}

/// Pauli matrices and a few fixed single-qubit operators.
pub mod pauli {
    use super::ComplexMatrix;
    use num_complex::Complex64;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn sigma_y() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        ComplexMatrix::new(2, vec![0.0.into(), -i, i, 0.0.into()]).unwrap()
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    /// `e^{iφσ_z}`.
    pub fn z_rotation(phi: f64) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::from_polar(1.0, phi);
        m[(1, 1)] = Complex64::from_polar(1.0, -phi);
        m
    }
}

/// Kronecker product of a list of operators, leftmost first.
pub fn kron_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let mut iter = factors.iter();
    let first = iter.next().expect("at least one factor").clone();
    iter.fold(first, |acc, f| kron(&acc, f))
}

/// Random full-rank density matrix `G G† / Tr(G G†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, qubits: usize) -> DensityMatrix {
    let dim = 1usize << qubits;
    let g = random_gaussian(rng, dim);
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let mut m = gg.scale(Complex64::new(1.0 / tr, 0.0));
    for i in 0..dim {
        m[(i, i)].im = 0.0;
        for j in (i + 1)..dim {
            let z = m[(i, j)];
            m[(j, i)] = z.conj();
        }
    }
    DensityMatrix::from_matrix_unchecked(m)
}

/// Random Hermitian matrix with standard Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = random_gaussian(rng, dim);
    g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0))
}

/// Random unit vector with Gaussian components.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(dim, entries).expect("power-of-two dimension")
}
