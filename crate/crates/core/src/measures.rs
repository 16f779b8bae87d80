//! Entanglement measures evaluated directly on density matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{
    hermitian_eigenvalues, jacobi_eigh, partial_trace, partial_transpose, partial_transpose_slot,
    DensityMatrix, Qubit,
};
use crate::{Error, Result};

/// Eigenvalues of a two-qubit state below this are treated as exact zeros
/// when factoring `ρ = W W†` for the concurrence.
const RANK_CUTOFF: f64 = 1e-14;

/// The three qubit pairs in reporting order.
pub const PAIRS: [(Qubit, Qubit); 3] = [
    (Qubit::A, Qubit::B),
    (Qubit::A, Qubit::C),
    (Qubit::B, Qubit::C),
];

/// Negativities and π-tangle of a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiTangle {
    /// `𝒩_{A(BC)}`, `𝒩_{B(AC)}`, `𝒩_{(AB)C}`.
    pub n_one_vs_rest: [f64; 3],
    /// `𝒩_{AB}`, `𝒩_{AC}`, `𝒩_{BC}`.
    pub n_pairs: [f64; 3],
    /// Raw `π_A`, `π_B`, `π_C`; may dip a few ulps below zero.
    pub pi_abc: [f64; 3],
    pub pi: f64,
}

impl PiTangle {
    /// Assembles `π_X = 𝒩²_{X(rest)} − Σ 𝒩²_{pairs containing X}` and their mean.
    pub fn from_negativities(n_one_vs_rest: [f64; 3], n_pairs: [f64; 3]) -> Self {
        let [na, nb, nc] = n_one_vs_rest;
        let [nab, nac, nbc] = n_pairs;
        let pi_a = na * na - (nab * nab + nac * nac);
        let pi_b = nb * nb - (nab * nab + nbc * nbc);
        let pi_c = nc * nc - (nac * nac + nbc * nbc);
        Self {
            n_one_vs_rest,
            n_pairs,
            pi_abc: [pi_a, pi_b, pi_c],
            pi: (pi_a + pi_b + pi_c) / 3.0,
        }
    }
}

/// Every measure this crate computes for one three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub n_one_vs_rest: [f64; 3],
    pub n_pairs: [f64; 3],
    pub pi_abc: [f64; 3],
    pub pi: f64,
    /// `C_AB`, `C_AC`, `C_BC`.
    pub concurrences: [f64; 3],
    pub ckw_margin: f64,
}

fn require_qubits(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.qubits() != n {
        return Err(Error::DimensionMismatch(rho.dim(), 1 << n));
    }
    Ok(())
}

/// `‖R‖ − 1` for a trace-one Hermitian `R`, computed as twice the magnitude
/// of the negative spectrum so no cancellation against 1 occurs.
fn negativity_of(pt: &crate::linalg::ComplexMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(pt)?;
    let neg: f64 = ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
    // an empty float sum is −0.0
    Ok(2.0 * neg + 0.0)
}

/// Global negativity `𝒩 = ‖ρ^{T_q}‖ − 1` of a three-qubit state.
pub fn negativity(rho: &DensityMatrix, q: Qubit) -> Result<f64> {
    require_qubits(rho, 3)?;
    negativity_of(&partial_transpose(rho, q)?)
}

/// Negativity of the two-qubit reduced state of `pair`, transposed on the
/// first listed qubit.
pub fn two_tangle(rho: &DensityMatrix, pair: (Qubit, Qubit)) -> Result<f64> {
    require_qubits(rho, 3)?;
    if pair.0 == pair.1 {
        return Err(Error::InvalidQubitSet(format!(
            "pair must name two different qubits, got {:?}",
            pair
        )));
    }
    let reduced = partial_trace(rho, &[pair.0, pair.1])?;
    // kept qubits stay in A, B, C order inside the reduced register
    let slot = if pair.0 < pair.1 { 0 } else { 1 };
    negativity_of(&partial_transpose_slot(reduced.matrix(), slot)?)
}

pub fn pi_tangle(rho: &DensityMatrix) -> Result<PiTangle> {
    require_qubits(rho, 3)?;
    let mut ones = [0.0; 3];
    for (slot, q) in Qubit::ALL.iter().enumerate() {
        ones[slot] = negativity(rho, *q)?;
    }
    let mut pairs = [0.0; 3];
    for (k, pair) in PAIRS.iter().enumerate() {
        pairs[k] = two_tangle(rho, *pair)?;
    }
    Ok(PiTangle::from_negativities(ones, pairs))
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)` of a two-qubit state.
///
/// The `λ_i` are the singular values of `Wᵀ(σ_y⊗σ_y)W` for any factor
/// `ρ = W W†`; here `W` comes from the spectral decomposition and the singular
/// values from the Hermitian dilation `[[0, τ], [τ†, 0]]`, which keeps exact
/// zeros of rank-deficient states at rounding level instead of amplifying them
/// through a square root.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_qubits(rho, 2)?;
    let m = rho.matrix();
    let zero = Complex64::new(0.0, 0.0);
    // A basis state with no coherences is an exact eigenvector; its weight is
    // kept however small, since dropping ε moves C by O(√ε).
    let isolated: Vec<bool> = (0..4)
        .map(|i| (0..4).all(|j| j == i || m[(i, j)] == zero))
        .collect();
    let mut factor: Vec<Vec<Complex64>> = Vec::new();
    for i in (0..4).filter(|&i| isolated[i] && m[(i, i)].re > 0.0) {
        let mut v = vec![zero; 4];
        v[i] = Complex64::new(m[(i, i)].re.sqrt(), 0.0);
        factor.push(v);
    }
    let coupled: Vec<usize> = (0..4).filter(|&i| !isolated[i]).collect();
    if !coupled.is_empty() {
        let mut block: Vec<Complex64> = coupled
            .iter()
            .flat_map(|&i| coupled.iter().map(move |&j| m[(i, j)]))
            .collect();
        let eig = jacobi_eigh(coupled.len(), &mut block, true);
        for (&p, v) in eig.values.iter().zip(&eig.vectors) {
            if p > RANK_CUTOFF {
                let mut w = vec![zero; 4];
                for (&i, z) in coupled.iter().zip(v) {
                    w[i] = z * p.sqrt();
                }
                factor.push(w);
            }
        }
    }
    let k = factor.len();
    if k == 0 {
        return Ok(0.0);
    }

    // σ_y ⊗ σ_y flips |00⟩↔|11⟩ with sign −1 and |01⟩↔|10⟩ with sign +1.
    let flip = |w: &[Complex64]| [-w[3], w[2], w[1], -w[0]];
    let mut tau = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            let fj = flip(&factor[j]);
            tau[i * k + j] = (0..4).map(|r| factor[i][r] * fj[r]).sum();
        }
    }

    let n = 2 * k;
    let mut dilation = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..k {
        for j in 0..k {
            dilation[i * n + (k + j)] = tau[i * k + j];
            dilation[(k + j) * n + i] = tau[i * k + j].conj();
        }
    }
    let spectrum = jacobi_eigh(n, &mut dilation, false).values;
    let mut sv: Vec<f64> = spectrum[k..].iter().map(|x| x.abs()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let rest: f64 = sv[1..].iter().sum();
    Ok((sv[0] - rest).max(0.0))
}

/// Residual entanglement `τ_ABC = 4|d₁ − 2d₂ + 4d₃|` of a pure state given by
/// its eight amplitudes `a_ijk` (index `4i + 2j + k`).
pub fn residual_pure(amps: &[Complex64]) -> Result<f64> {
    if amps.len() != 8 {
        return Err(Error::EntryCount {
            expected: 8,
            got: amps.len(),
        });
    }
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    let a = |i: usize, j: usize, k: usize| amps[4 * i + 2 * j + k];
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));

    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    Ok(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

/// `4 det ρ_A − C(ρ_AB)² − C(ρ_AC)²`; nonnegative for every state.
pub fn ckw_margin(rho: &DensityMatrix) -> Result<f64> {
    require_qubits(rho, 3)?;
    let ra = partial_trace(rho, &[Qubit::A])?;
    let m = ra.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let cab = concurrence(&partial_trace(rho, &[Qubit::A, Qubit::B])?)?;
    let cac = concurrence(&partial_trace(rho, &[Qubit::A, Qubit::C])?)?;
    Ok(4.0 * det - cab * cab - cac * cac)
}

/// Pairwise concurrences `C_AB`, `C_AC`, `C_BC` of a three-qubit state.
pub fn pair_concurrences(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_qubits(rho, 3)?;
    let mut out = [0.0; 3];
    for (k, pair) in PAIRS.iter().enumerate() {
        out[k] = concurrence(&partial_trace(rho, &[pair.0, pair.1])?)?;
    }
    Ok(out)
}

pub fn measure_report(rho: &DensityMatrix) -> Result<MeasureReport> {
    let pt = pi_tangle(rho)?;
    let concurrences = pair_concurrences(rho)?;
    let ra = partial_trace(rho, &[Qubit::A])?;
    let m = ra.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    Ok(MeasureReport {
        n_one_vs_rest: pt.n_one_vs_rest,
        n_pairs: pt.n_pairs,
        pi_abc: pt.pi_abc,
        pi: pt.pi,
        concurrences,
        ckw_margin: 4.0 * det - concurrences[0].powi(2) - concurrences[1].powi(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron_all, random_density, ComplexMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ghz_amps() -> Vec<Complex64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0.0); 8];
        v[0] = c(h);
        v[7] = c(h);
        v
    }

    fn w_amps() -> Vec<Complex64> {
        let s = 1.0 / 3f64.sqrt();
        let mut v = vec![c(0.0); 8];
        v[1] = c(s);
        v[2] = c(s);
        v[4] = c(s);
        v
    }

    fn ket000() -> DensityMatrix {
        let mut v = vec![c(0.0); 8];
        v[0] = c(1.0);
        DensityMatrix::from_pure(&v).unwrap()
    }

    #[test]
    fn negativity_examples() {
        let ghz = DensityMatrix::from_pure(&ghz_amps()).unwrap();
        let w = DensityMatrix::from_pure(&w_amps()).unwrap();
        for q in Qubit::ALL {
            assert!((negativity(&ghz, q).unwrap() - 1.0).abs() < 1e-14);
            assert_eq!(negativity(&ket000(), q).unwrap(), 0.0);
            // T_A of W: the block on {|000⟩,|101⟩,|110⟩} is
            // [[0,1/3,1/3],[1/3,0,0],[1/3,0,0]] with spectrum {0, ±√2/3} and the
            // rest is PSD, so 𝒩 = 2√2/3.
            assert!((negativity(&w, q).unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn two_tangle_examples() {
        let ghz = DensityMatrix::from_pure(&ghz_amps()).unwrap();
        let w = DensityMatrix::from_pure(&w_amps()).unwrap();
        for pair in PAIRS {
            assert!(two_tangle(&ghz, pair).unwrap().abs() < 1e-15);
            assert!((two_tangle(&w, pair).unwrap() - (5f64.sqrt() - 1.0) / 3.0).abs() < 1e-14);
            assert_eq!(two_tangle(&ket000(), pair).unwrap(), 0.0);
        }
        assert!(two_tangle(&w, (Qubit::B, Qubit::B)).is_err());
    }

    #[test]
    fn two_tangle_is_symmetric_in_the_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let rho = random_density(&mut rng, 3);
            for (x, y) in PAIRS {
                let a = two_tangle(&rho, (x, y)).unwrap();
                let b = two_tangle(&rho, (y, x)).unwrap();
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn pi_tangle_anchors() {
        let ghz = DensityMatrix::from_pure(&ghz_amps()).unwrap();
        let w = DensityMatrix::from_pure(&w_amps()).unwrap();
        assert!((pi_tangle(&ghz).unwrap().pi - 1.0).abs() < 1e-13);
        let pw = pi_tangle(&w).unwrap().pi;
        assert!((pw - 4.0 * (5f64.sqrt() - 1.0) / 9.0).abs() < 1e-13);
        assert_eq!(pi_tangle(&ket000()).unwrap().pi, 0.0);
    }

    #[test]
    fn concurrence_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix::from_pure(&[c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-14);
        let sep = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap())
            .unwrap();
        assert_eq!(concurrence(&sep).unwrap(), 0.0);

        // Werner state: C = max(0, 2F − 1) with F the singlet fidelity
        let singlet = ComplexMatrix::outer(&[c(0.0), c(h), c(-h), c(0.0)]).unwrap();
        for f in [0.2, 0.5, 0.8, 0.95] {
            let mix = singlet
                .scale(c((4.0 * f - 1.0) / 3.0))
                .add(&ComplexMatrix::identity(4).scale(c((1.0 - f) / 3.0)));
            let rho = DensityMatrix::new(mix).unwrap();
            let expect = (2.0 * f - 1.0f64).max(0.0);
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-13, "F={f}");
        }
    }

    #[test]
    fn concurrence_of_random_pure_states() {
        // For pure states C = 2|a₀₀a₁₁ − a₀₁a₁₀|.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let v = crate::linalg::random_pure(&mut rng, 4);
            let expect = 2.0 * (v[0] * v[3] - v[1] * v[2]).norm();
            let rho = DensityMatrix::from_pure(&v).unwrap();
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn residual_examples() {
        assert!((residual_pure(&ghz_amps()).unwrap() - 1.0).abs() < 1e-15);
        assert!(residual_pure(&w_amps()).unwrap().abs() < 1e-15);
        for (a, b) in [(0.3f64, 0.91f64.sqrt()), (0.8, 0.6)] {
            let mut v = vec![c(0.0); 8];
            v[0] = c(a);
            v[7] = c(b);
            let expect = 4.0 * a * a * b * b;
            assert!((residual_pure(&v).unwrap() - expect).abs() < 1e-15);
        }
        assert!(residual_pure(&[c(1.0); 8]).is_err());
        assert!(residual_pure(&[c(1.0); 4]).is_err());
    }

    #[test]
    fn ckw_examples() {
        assert_eq!(ckw_margin(&ket000()).unwrap(), 0.0);
        let ghz = DensityMatrix::from_pure(&ghz_amps()).unwrap();
        assert!((ckw_margin(&ghz).unwrap() - 1.0).abs() < 1e-14);
        let w = DensityMatrix::from_pure(&w_amps()).unwrap();
        assert!(ckw_margin(&w).unwrap().abs() < 1e-13);
        let cs = pair_concurrences(&w).unwrap();
        for x in cs {
            assert!((x - 2.0 / 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn separable_states_have_no_pi_tangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let factors: Vec<ComplexMatrix> = (0..3)
                .map(|_| random_density(&mut rng, 1).into_matrix())
                .collect();
            let rho = DensityMatrix::new(kron_all(&factors)).unwrap();
            let pt = pi_tangle(&rho).unwrap();
            assert!(pt.pi.abs() <= 1e-10);
            assert!(ckw_margin(&rho).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn register_size_is_checked() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let two = random_density(&mut rng, 2);
        assert!(negativity(&two, Qubit::A).is_err());
        assert!(pi_tangle(&two).is_err());
        assert!(concurrence(&ket000()).is_err());
    }
}
