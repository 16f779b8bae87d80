//! Local amplitude damping of each qubit by its own reservoir.
//!
//! A single qubit maps as
//!
//! ```text
//! ρ₀₀ → ρ₀₀ + ρ₁₁(1 − |P|²)    ρ₀₁ → ρ₀₁ P
//! ρ₁₀ → ρ₁₀ P*                 ρ₁₁ → ρ₁₁ |P|²
//! ```
//!
//! and three identical, independent reservoirs act as the tensor product of
//! this map. [`evolve_three_direct`] applies the resulting element update
//! table; [`evolve_three_kraus`] sums the eight Kraus products and serves as
//! its oracle.

use num_complex::Complex64;

use crate::decoherence::Amplitude;
use crate::linalg::{kron_all, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

impl From<Amplitude> for Complex64 {
    fn from(a: Amplitude) -> Self {
        Complex64::new(a.0, 0.0)
    }
}

/// Kraus pair `K₀ = diag(1, P)`, `K₁ = √(1−|P|²) |0⟩⟨1|`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    pub k0: ComplexMatrix,
    pub k1: ComplexMatrix,
}

impl KrausPair {
    /// Largest entrywise deviation of `K₀†K₀ + K₁†K₁` from the identity.
    pub fn completeness_error(&self) -> f64 {
        let sum = self
            .k0
            .adjoint()
            .matmul(&self.k0)
            .add(&self.k1.adjoint().matmul(&self.k1));
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }
}

pub fn damping_kraus(p: Amplitude) -> Result<KrausPair> {
    if !(p.0.abs() <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "|P| must not exceed 1, got {}",
            p.0
        )));
    }
    let mut k0 = ComplexMatrix::identity(2);
    k0[(1, 1)] = Complex64::new(p.0, 0.0);
    let mut k1 = ComplexMatrix::zeros(2);
    k1[(0, 1)] = Complex64::new((1.0 - p.0 * p.0).sqrt(), 0.0);
    Ok(KrausPair { k0, k1 })
}

/// Single-qubit reduced map. `p` may be complex.
pub fn evolve_single(rho: &DensityMatrix, p: impl Into<Complex64>) -> Result<DensityMatrix> {
    if rho.qubits() != 1 {
        return Err(Error::DimensionMismatch(rho.dim(), 2));
    }
    let p: Complex64 = p.into();
    if p.norm() > 1.0 + 1e-15 {
        return Err(Error::OutOfRange(format!(
            "|P| must not exceed 1, got {}",
            p.norm()
        )));
    }
    let p2 = p.norm_sqr();
    let r = rho.matrix();
    let mut out = ComplexMatrix::zeros(2);
    out[(0, 0)] = r[(0, 0)] + r[(1, 1)] * (1.0 - p2);
    out[(0, 1)] = r[(0, 1)] * p;
    out[(1, 0)] = r[(1, 0)] * p.conj();
    out[(1, 1)] = r[(1, 1)] * p2;
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Three-qubit evolution through the explicit element update table.
///
/// The triple-excitation population decays as `ρ₇₇(t) = P⁶ ρ₇₇(0)`; `ρ₀₀`
/// collects everything that decayed into the ground state, which equals
/// `1 − Σᵢ ρᵢᵢ(t)` for unit-trace input. Lower-triangle entries are the
/// conjugates of the upper triangle.
pub fn evolve_three_direct(rho: &DensityMatrix, p: Amplitude) -> Result<DensityMatrix> {
    if rho.qubits() != 3 {
        return Err(Error::DimensionMismatch(rho.dim(), 8));
    }
    if !(p.0.abs() <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "|P| must not exceed 1, got {}",
            p.0
        )));
    }
    let m = rho.matrix();
    let r = |i: usize, j: usize| m[(i, j)];
    let p1 = p.0;
    let p2 = p1 * p1;
    let p3 = p2 * p1;
    let p4 = p2 * p2;
    let p5 = p4 * p1;
    let p6 = p4 * p2;
    let q = 1.0 - p2;
    let q2 = q * q;

    let mut out = ComplexMatrix::zeros(8);
    let mut set = |i: usize, j: usize, v: Complex64| {
        out[(i, j)] = v;
        out[(j, i)] = v.conj();
    };

    // populations
    set(
        1,
        1,
        p2 * (r(1, 1) + (r(3, 3) + r(5, 5)) * q + r(7, 7) * q2),
    );
    set(
        2,
        2,
        p2 * (r(2, 2) + (r(3, 3) + r(6, 6)) * q + r(7, 7) * q2),
    );
    set(3, 3, p4 * (r(3, 3) + r(7, 7) * q));
    set(
        4,
        4,
        p2 * (r(4, 4) + (r(5, 5) + r(6, 6)) * q + r(7, 7) * q2),
    );
    set(5, 5, p4 * (r(5, 5) + r(7, 7) * q));
    set(6, 6, p4 * (r(6, 6) + r(7, 7) * q));
    set(7, 7, p6 * r(7, 7));

    // coherences fed by higher-excitation terms
    set(
        0,
        1,
        p1 * (r(0, 1) + (r(2, 3) + r(4, 5)) * q + r(6, 7) * q2),
    );
    set(
        0,
        2,
        p1 * (r(0, 2) + (r(1, 3) + r(4, 6)) * q + r(5, 7) * q2),
    );
    set(
        0,
        4,
        p1 * (r(0, 4) + (r(1, 5) + r(2, 6)) * q + r(3, 7) * q2),
    );
    set(0, 3, p2 * (r(0, 3) + r(4, 7) * q));
    set(0, 5, p2 * (r(0, 5) + r(2, 7) * q));
    set(0, 6, p2 * (r(0, 6) + r(1, 7) * q));
    set(1, 2, p2 * (r(1, 2) + r(5, 6) * q));
    set(1, 3, p3 * (r(1, 3) + r(5, 7) * q));
    set(1, 4, p2 * (r(1, 4) + r(3, 6) * q));
    set(1, 5, p3 * (r(1, 5) + r(3, 7) * q));
    set(2, 3, p3 * (r(2, 3) + r(6, 7) * q));
    set(2, 4, p2 * (r(2, 4) + r(3, 5) * q));
    set(2, 6, p3 * (r(2, 6) + r(3, 7) * q));
    set(4, 5, p3 * (r(4, 5) + r(6, 7) * q));
    set(4, 6, p3 * (r(4, 6) + r(5, 7) * q));

    // pure decay
    set(0, 7, r(0, 7) * p3);
    set(1, 6, r(1, 6) * p3);
    set(1, 7, r(1, 7) * p4);
    set(2, 5, r(2, 5) * p3);
    set(2, 7, r(2, 7) * p4);
    set(3, 4, r(3, 4) * p3);
    set(3, 5, r(3, 5) * p4);
    set(3, 6, r(3, 6) * p4);
    set(3, 7, r(3, 7) * p5);
    set(4, 7, r(4, 7) * p4);
    set(5, 6, r(5, 6) * p4);
    set(5, 7, r(5, 7) * p5);
    set(6, 7, r(6, 7) * p5);

    // 1 − Σρᵢᵢ written out, so a vanishing ground population stays exact
    let singles = r(1, 1) + r(2, 2) + r(4, 4);
    let doubles = r(3, 3) + r(5, 5) + r(6, 6);
    out[(0, 0)] = Complex64::new(
        (r(0, 0) + singles * q + doubles * q2 + r(7, 7) * q2 * q).re,
        0.0,
    );
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Three-qubit evolution as `Σ (K_i⊗K_j⊗K_k) ρ (K_i⊗K_j⊗K_k)†`.
pub fn evolve_three_kraus(rho: &DensityMatrix, p: Amplitude) -> Result<DensityMatrix> {
    if rho.qubits() != 3 {
        return Err(Error::DimensionMismatch(rho.dim(), 8));
    }
    let kraus = damping_kraus(p)?;
    let ops = [&kraus.k0, &kraus.k1];
    let mut out = ComplexMatrix::zeros(8);
    for a in ops {
        for b in ops {
            for c in ops {
                let k = kron_all(&[a.clone(), b.clone(), c.clone()]);
                out = out.add(&rho.matrix().conjugate_by(&k));
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Applies the single-qubit map to every qubit of a one- to three-qubit
/// register via Kraus products.
pub fn evolve_local_kraus(rho: &DensityMatrix, p: Amplitude) -> Result<DensityMatrix> {
    let kraus = damping_kraus(p)?;
    let n = rho.qubits();
    let mut out = ComplexMatrix::zeros(rho.dim());
    for pattern in 0..(1usize << n) {
        let factors: Vec<ComplexMatrix> = (0..n)
            .map(|slot| {
                if (pattern >> (n - 1 - slot)) & 1 == 0 {
                    kraus.k0.clone()
                } else {
                    kraus.k1.clone()
                }
            })
            .collect();
        out = out.add(&rho.matrix().conjugate_by(&kron_all(&factors)));
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}
