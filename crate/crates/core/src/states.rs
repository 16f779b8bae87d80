//! Initial states: four GHZ-type families, two W-type families and the
//! GHZ/W mixture, plus a probe for GHZ symmetry.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{kron_all, pauli, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GhzFamily {
    /// `a|000⟩ + b e^{iδ}|111⟩`
    I,
    /// `a|001⟩ + b e^{iδ}|110⟩`
    II,
    /// `a|011⟩ + b e^{iδ}|100⟩`
    III,
    /// `a|010⟩ + b e^{iδ}|101⟩`
    IV,
}

impl GhzFamily {
    pub const ALL: [GhzFamily; 4] = [GhzFamily::I, GhzFamily::II, GhzFamily::III, GhzFamily::IV];

    /// Basis indices carrying the `a` and `b` amplitudes.
    pub fn support(self) -> (usize, usize) {
        match self {
            GhzFamily::I => (0, 7),
            GhzFamily::II => (1, 6),
            GhzFamily::III => (3, 4),
            GhzFamily::IV => (2, 5),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GhzFamily::I => "ghz1",
            GhzFamily::II => "ghz2",
            GhzFamily::III => "ghz3",
            GhzFamily::IV => "ghz4",
        }
    }
}

/// `a|i⟩ + b e^{iδ}|j⟩` with `a, b ≥ 0` and `a² + b² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhzFamilySpec {
    pub family: GhzFamily,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

impl GhzFamilySpec {
    pub fn new(family: GhzFamily, a: f64, b: f64, delta: f64) -> Result<Self> {
        if a < 0.0 || b < 0.0 {
            return Err(Error::OutOfRange(format!(
                "amplitudes must be nonnegative, got a={a}, b={b}"
            )));
        }
        let norm = a * a + b * b;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            family,
            a,
            b,
            delta,
        })
    }

    /// Parameterized by `a²`; `b = √(1 − a²)`.
    pub fn from_a2(family: GhzFamily, a2: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a2) {
            return Err(Error::OutOfRange(format!(
                "a² must lie in [0, 1], got {a2}"
            )));
        }
        Self::new(family, a2.sqrt(), (1.0 - a2).sqrt(), delta)
    }

    /// Brings `α|i⟩ + β|j⟩` into the `(a, b, δ)` form, dropping the global phase.
    pub fn from_complex(family: GhzFamily, alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let delta = if alpha.norm() == 0.0 || beta.norm() == 0.0 {
            0.0
        } else {
            beta.arg() - alpha.arg()
        };
        Self::new(family, alpha.norm(), beta.norm(), delta)
    }

    /// The standard GHZ state `(|000⟩ + |111⟩)/√2`.
    pub fn standard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            family: GhzFamily::I,
            a: h,
            b: h,
            delta: 0.0,
        }
    }

    pub fn a2(&self) -> f64 {
        self.a * self.a
    }

    pub fn amplitudes(&self) -> [Complex64; 8] {
        let mut v = [Complex64::new(0.0, 0.0); 8];
        let (i, j) = self.family.support();
        v[i] = Complex64::new(self.a, 0.0);
        v[j] = Complex64::from_polar(self.b, self.delta);
        v
    }
}

pub fn make_ghz(spec: &GhzFamilySpec) -> Result<DensityMatrix> {
    GhzFamilySpec::new(spec.family, spec.a, spec.b, spec.delta)?;
    DensityMatrix::from_pure(&spec.amplitudes())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WFamily {
    /// `a|001⟩ + b e^{iδ₁}|010⟩ + c e^{iδ₂}|100⟩`
    W1,
    /// `a|110⟩ + b e^{iδ₁}|101⟩ + c e^{iδ₂}|011⟩`
    W2,
}

impl WFamily {
    /// Basis indices carrying `a`, `b`, `c`.
    pub fn support(self) -> [usize; 3] {
        match self {
            WFamily::W1 => [1, 2, 4],
            WFamily::W2 => [6, 5, 3],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WFamily::W1 => "w1",
            WFamily::W2 => "w2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WFamilySpec {
    pub family: WFamily,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl WFamilySpec {
    pub fn new(family: WFamily, a: f64, b: f64, c: f64, delta1: f64, delta2: f64) -> Result<Self> {
        if a < 0.0 || b < 0.0 || c < 0.0 {
            return Err(Error::OutOfRange(format!(
                "amplitudes must be nonnegative, got a={a}, b={b}, c={c}"
            )));
        }
        let norm = a * a + b * b + c * c;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            family,
            a,
            b,
            c,
            delta1,
            delta2,
        })
    }

    pub fn from_squares(
        family: WFamily,
        a2: f64,
        b2: f64,
        c2: f64,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        for (name, v) in [("a²", a2), ("b²", b2), ("c²", c2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        Self::new(family, a2.sqrt(), b2.sqrt(), c2.sqrt(), delta1, delta2)
    }

    /// `a² = b² = c² = 1/3`, zero phases.
    pub fn symmetric(family: WFamily) -> Self {
        let s = 1.0 / 3f64.sqrt();
        Self {
            family,
            a: s,
            b: s,
            c: s,
            delta1: 0.0,
            delta2: 0.0,
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 8] {
        let mut v = [Complex64::new(0.0, 0.0); 8];
        let [ia, ib, ic] = self.family.support();
        v[ia] = Complex64::new(self.a, 0.0);
        v[ib] = Complex64::from_polar(self.b, self.delta1);
        v[ic] = Complex64::from_polar(self.c, self.delta2);
        v
    }
}

pub fn make_w(spec: &WFamilySpec) -> Result<DensityMatrix> {
    WFamilySpec::new(
        spec.family,
        spec.a,
        spec.b,
        spec.c,
        spec.delta1,
        spec.delta2,
    )?;
    DensityMatrix::from_pure(&spec.amplitudes())
}

/// `ρ(p) = p|GHZ⟩⟨GHZ| + (1 − p)|W⟩⟨W|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub p: f64,
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "mixing weight must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

pub fn make_mixture(spec: &MixtureSpec) -> Result<DensityMatrix> {
    check_probability(spec.p)?;
    let ghz = ComplexMatrix::outer(&GhzFamilySpec::standard().amplitudes())?;
    let w = ComplexMatrix::outer(&WFamilySpec::symmetric(WFamily::W1).amplitudes())?;
    let m = ghz
        .scale(Complex64::new(spec.p, 0.0))
        .add(&w.scale(Complex64::new(1.0 - spec.p, 0.0)));
    DensityMatrix::new(m)
}

/// Knees `(p₀, p₁)` of the mixture's residual entanglement curve.
pub fn mixture_knees() -> (f64, f64) {
    let cbrt2 = 2f64.cbrt();
    let p0 = 4.0 * cbrt2 / (3.0 + 4.0 * cbrt2);
    let p1 = 0.5 + 3.0 * 465f64.sqrt() / 310.0;
    (p0, p1)
}

/// `p² − (8√6/9)√(p(1 − p)³)`, the middle branch of [`tau_mixture`].
pub fn mixture_branch_low(p: f64) -> f64 {
    p * p - 8.0 * 6f64.sqrt() / 9.0 * (p * (1.0 - p).powi(3)).sqrt()
}

/// `1 − (1 − p)(3/2 + √465/18)`, the upper branch of [`tau_mixture`].
pub fn mixture_branch_high(p: f64) -> f64 {
    1.0 - (1.0 - p) * (1.5 + 465f64.sqrt() / 18.0)
}

/// Residual entanglement of the GHZ/W mixture.
pub fn tau_mixture(p: f64) -> Result<f64> {
    check_probability(p)?;
    let (p0, p1) = mixture_knees();
    Ok(if p <= p0 {
        0.0
    } else if p <= p1 {
        mixture_branch_low(p)
    } else {
        mixture_branch_high(p)
    })
}

fn permutation_unitary(perm: [usize; 3]) -> ComplexMatrix {
    // output slot s carries the bit of input slot perm[s]
    let mut u = ComplexMatrix::zeros(8);
    for idx in 0..8usize {
        let bit = |slot: usize| (idx >> (2 - slot)) & 1;
        let target = (0..3).fold(0usize, |acc, s| acc | (bit(perm[s]) << (2 - s)));
        u[(target, idx)] = Complex64::new(1.0, 0.0);
    }
    u
}

/// The operators probed by [`ghz_symmetry_deviation`]: six qubit
/// permutations, the simultaneous flip `σ_x⊗σ_x⊗σ_x`, and eight z-rotations
/// `e^{iφ₁σ_z}⊗e^{iφ₂σ_z}⊗e^{iφ₃σ_z}` with `φ₁ + φ₂ + φ₃ = 0`.
pub fn ghz_symmetry_operators() -> Vec<ComplexMatrix> {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut ops: Vec<ComplexMatrix> = perms.iter().map(|&p| permutation_unitary(p)).collect();
    ops.push(kron_all(&[
        pauli::sigma_x(),
        pauli::sigma_x(),
        pauli::sigma_x(),
    ]));
    for k in 0..8 {
        let phi1 = PI * (k + 1) as f64 / 8.0;
        let phi2 = PI * (2 * k + 1) as f64 / 13.0;
        let phi3 = -(phi1 + phi2);
        ops.push(kron_all(&[
            pauli::z_rotation(phi1),
            pauli::z_rotation(phi2),
            pauli::z_rotation(phi3),
        ]));
    }
    ops
}

/// Largest entrywise `|UρU† − ρ|` over the GHZ symmetry operators.
pub fn ghz_symmetry_deviation(rho: &DensityMatrix) -> Result<f64> {
    if rho.qubits() != 3 {
        return Err(Error::DimensionMismatch(rho.dim(), 8));
    }
    Ok(ghz_symmetry_operators()
        .iter()
        .map(|u| rho.matrix().conjugate_by(u).max_abs_diff(rho.matrix()))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, validate_density};
    use crate::measures::pi_tangle;

    fn sx_on(mask: [bool; 3]) -> ComplexMatrix {
        let f: Vec<ComplexMatrix> = mask
            .iter()
            .map(|&on| {
                if on {
                    pauli::sigma_x()
                } else {
                    pauli::identity()
                }
            })
            .collect();
        kron_all(&f)
    }

    #[test]
    fn ghz_constructors() {
        let ghz = make_ghz(&GhzFamilySpec::standard()).unwrap();
        assert!((pi_tangle(&ghz).unwrap().pi - 1.0).abs() < 1e-13);

        let prod = make_ghz(&GhzFamilySpec::from_a2(GhzFamily::I, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(prod.get(0, 0).re, 1.0);
        assert_eq!(pi_tangle(&prod).unwrap().pi, 0.0);

        for a2 in [0.1, 0.3, 0.75] {
            let s = GhzFamilySpec::from_a2(GhzFamily::II, a2, 0.4).unwrap();
            let pi = pi_tangle(&make_ghz(&s).unwrap()).unwrap().pi;
            assert!((pi - 4.0 * a2 * (1.0 - a2)).abs() < 1e-13);
        }

        assert!(GhzFamilySpec::new(GhzFamily::I, 0.5, 0.5, 0.0).is_err());
        assert!(GhzFamilySpec::new(GhzFamily::I, -0.6, 0.8, 0.0).is_err());
    }

    #[test]
    fn complex_input_is_normalized_into_phase_form() {
        let alpha = Complex64::from_polar(0.6, 0.3);
        let beta = Complex64::from_polar(0.8, 1.1);
        let s = GhzFamilySpec::from_complex(GhzFamily::III, alpha, beta).unwrap();
        assert!((s.a - 0.6).abs() < 1e-15 && (s.b - 0.8).abs() < 1e-15);
        assert!((s.delta - 0.8).abs() < 1e-15);
    }

    #[test]
    fn w_constructors() {
        let w = make_w(&WFamilySpec::symmetric(WFamily::W1)).unwrap();
        let pi = pi_tangle(&w).unwrap().pi;
        assert!((pi - 4.0 * (5f64.sqrt() - 1.0) / 9.0).abs() < 1e-13);

        let prod =
            make_w(&WFamilySpec::new(WFamily::W1, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(prod.get(4, 4).re, 1.0);
        assert_eq!(pi_tangle(&prod).unwrap().pi, 0.0);

        assert!(WFamilySpec::new(WFamily::W2, 0.5, 0.5, 0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn w1_pi_matches_known_pure_state_formula() {
        for (a2, b2) in [(0.5, 0.25), (0.2, 0.3), (0.6, 0.1)] {
            let c2: f64 = 1.0 - a2 - b2;
            let s = WFamilySpec::from_squares(WFamily::W1, a2, b2, c2, 0.3, -0.9).unwrap();
            let pi = pi_tangle(&make_w(&s).unwrap()).unwrap().pi;
            let expect = 4.0 / 3.0
                * (a2 * (a2 * a2 + 4.0 * b2 * c2).sqrt()
                    + b2 * (b2 * b2 + 4.0 * a2 * c2).sqrt()
                    + c2 * (c2 * c2 + 4.0 * a2 * b2).sqrt()
                    - (a2 * a2 + b2 * b2 + c2 * c2));
            assert!((pi - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn lu_relations_hold_exactly() {
        let delta = 0.77;
        for a2 in [0.2, 0.5, 0.9] {
            let psi1 = GhzFamilySpec::from_a2(GhzFamily::I, a2, delta)
                .unwrap()
                .amplitudes();
            let psi2 = GhzFamilySpec::from_a2(GhzFamily::II, a2, delta)
                .unwrap()
                .amplitudes();
            let psi3 = GhzFamilySpec::from_a2(GhzFamily::III, a2, delta)
                .unwrap()
                .amplitudes();
            assert_eq!(sx_on([false, false, true]).apply(&psi2), psi1.to_vec());
            assert_eq!(sx_on([false, true, true]).apply(&psi3), psi1.to_vec());
        }
        let w1 = WFamilySpec::from_squares(WFamily::W1, 0.2, 0.3, 0.5, 0.4, 1.3).unwrap();
        let w2 = WFamilySpec {
            family: WFamily::W2,
            ..w1
        };
        assert_eq!(
            sx_on([true, true, true]).apply(&w1.amplitudes()),
            w2.amplitudes().to_vec()
        );
    }

    #[test]
    fn mixture() {
        let one = make_mixture(&MixtureSpec { p: 1.0 }).unwrap();
        assert_eq!(one, make_ghz(&GhzFamilySpec::standard()).unwrap());
        let zero = make_mixture(&MixtureSpec { p: 0.0 }).unwrap();
        assert_eq!(zero, make_w(&WFamilySpec::symmetric(WFamily::W1)).unwrap());
        let half = make_mixture(&MixtureSpec { p: 0.5 }).unwrap();
        let ev = hermitian_eigenvalues(half.matrix()).unwrap();
        assert!((ev[7] - 0.5).abs() < 1e-15 && (ev[6] - 0.5).abs() < 1e-15);
        assert!(ev[..6].iter().all(|x| x.abs() < 1e-15));
        assert!(make_mixture(&MixtureSpec { p: 1.2 }).is_err());
    }

    #[test]
    fn tau_mixture_values() {
        let (p0, p1) = mixture_knees();
        assert!((p0 - 0.626851).abs() < 5e-7);
        assert!((p1 - 0.70868).abs() < 5e-6);
        assert!(mixture_branch_low(p0).abs() < 1e-9);
        assert!((mixture_branch_low(p1) - mixture_branch_high(p1)).abs() < 1e-9);
        assert_eq!(tau_mixture(1.0).unwrap(), 1.0);
        assert_eq!(tau_mixture(0.3).unwrap(), 0.0);
        assert!(tau_mixture(-0.1).is_err());

        let mut prev = 0.0;
        let mut p = p0;
        while p <= 1.0 {
            let t = tau_mixture(p).unwrap();
            assert!(t >= prev - 1e-15, "not monotone at {p}");
            prev = t;
            p += 1e-3;
        }
    }

    #[test]
    fn constructors_emit_exact_states() {
        let states = [
            make_ghz(&GhzFamilySpec::from_a2(GhzFamily::IV, 0.3, 1.0).unwrap()).unwrap(),
            make_w(&WFamilySpec::from_squares(WFamily::W2, 0.1, 0.2, 0.7, 0.5, 0.6).unwrap())
                .unwrap(),
            make_mixture(&MixtureSpec { p: 0.37 }).unwrap(),
        ];
        for s in &states {
            let d = validate_density(s.matrix());
            assert!(d.hermiticity == 0.0 && d.trace_deviation < 1e-15 && d.min_eigenvalue > -1e-15);
        }
    }

    #[test]
    fn ghz_symmetry() {
        let ghz = make_ghz(&GhzFamilySpec::standard()).unwrap();
        assert!(ghz_symmetry_deviation(&ghz).unwrap() <= 1e-14);
        let w = make_w(&WFamilySpec::symmetric(WFamily::W1)).unwrap();
        let flip = kron_all(&[pauli::sigma_x(), pauli::sigma_x(), pauli::sigma_x()]);
        assert!(w.matrix().conjugate_by(&flip).max_abs_diff(w.matrix()) > 0.3);
        assert!(ghz_symmetry_deviation(&w).unwrap() > 0.3);
    }
}
