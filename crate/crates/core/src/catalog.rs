//! Closed-form, time-dependent results for the GHZ- and W-type families.
//!
//! Everything here is a function of the initial-state parameters and the
//! decoherence amplitude `P`; time enters only through `P`. The numeric
//! engine in [`crate::measures`] is the oracle for all of it.

use num_complex::Complex64;
use serde::Serialize;

use crate::decoherence::{amplitude, Amplitude, Regime, ReservoirParams};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::states::{GhzFamily, WFamily};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;
/// Horizon of the ESD search, in units of `1/γ₀`.
pub const ESD_HORIZON: f64 = 50.0;

/// One-vs-rest negativities `[𝒩_A(BC), 𝒩_B(AC), 𝒩_(AB)C]`, pair
/// negativities `[𝒩_AB, 𝒩_AC, 𝒩_BC]` and the π-tangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedPi {
    pub n_one_vs_rest: [f64; 3],
    pub n_pairs: [f64; 3],
    pub pi: f64,
}

impl ClosedPi {
    fn without_pairs(n: [f64; 3], pi: f64) -> Self {
        Self {
            n_one_vs_rest: n,
            n_pairs: [0.0; 3],
            pi,
        }
    }
}

/// `Σ wᵢ |vᵢ⟩⟨vᵢ|` over three-qubit pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub weights: Vec<f64>,
    pub vectors: Vec<[Complex64; 8]>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(8);
        for (w, v) in self.weights.iter().zip(&self.vectors) {
            for i in 0..8 {
                for j in 0..8 {
                    out[(i, j)] += v[i] * v[j].conj() * *w;
                }
            }
        }
        out
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Number of weights above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.weights.iter().filter(|&&w| w > tol).count()
    }
}

fn basis(i: usize) -> [Complex64; 8] {
    let mut v = [Complex64::new(0.0, 0.0); 8];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

fn check_a2(a2: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&a2) {
        return Err(Error::OutOfRange(format!(
            "a² must lie in [0, 1], got {a2}"
        )));
    }
    Ok(())
}

fn check_w_norm(a: f64, b: f64, c: f64) -> Result<()> {
    let n = a * a + b * b + c * c;
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// `√(u² + 4v) − u`, the generic shape of every negativity below.
fn neg_form(u: f64, v: f64) -> f64 {
    let root = (u * u + 4.0 * v).sqrt();
    if u > 0.0 {
        // rationalized: the plain difference cancels once v ≪ u²
        4.0 * v / (root + u)
    } else {
        root - u
    }
}

/// The type-I negativity before clamping.
pub fn q_function(a2: f64, p: Amplitude) -> Result<f64> {
    check_a2(a2)?;
    let b2 = 1.0 - a2;
    let s = p.squared();
    let q = 1.0 - s;
    let root =
        (b2 * b2 * s * s * q * q * (1.0 - 2.0 * s).powi(2) + 4.0 * a2 * b2 * s * s * s).sqrt();
    let lead = b2 * s * q;
    // root² − lead² = 4b²s³(a² − b²q³), which keeps the late-time tail
    let denom = root + lead;
    Ok(if denom > 0.0 {
        4.0 * b2 * s * s * s * (a2 - b2 * q * q * q) / denom
    } else {
        0.0
    })
}

/// `a² ≤ (1−P²)³ / (1 + (1−P²)³)`: the type-I π-tangle is zero.
pub fn esd_condition(a2: f64, p: Amplitude) -> bool {
    let q3 = (1.0 - p.squared()).powi(3);
    a2 <= q3 / (1.0 + q3)
}

/// Earliest `γ₀t` at which [`esd_condition`] holds, for monotone decay.
///
/// Returns `None` if the condition never holds on `[0, 50/γ₀]`.
pub fn esd_time(a2: f64, p: &ReservoirParams) -> Result<Option<f64>> {
    check_a2(a2)?;
    if p.regime() == Regime::NonMarkovian {
        return Err(Error::WrongRegime {
            expected: "markovian",
            actual: p.regime().name(),
        });
    }
    let holds = |t: f64| amplitude(t, p).map(|amp| esd_condition(a2, amp));
    if holds(0.0)? {
        return Ok(Some(0.0));
    }
    let mut hi = ESD_HORIZON / p.gamma0;
    if !holds(hi)? {
        return Ok(None);
    }
    let mut lo = 0.0;
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Type-II negativities as functions of `(a², b²)`; type III swaps roles.
fn type2_negativities(a2: f64, b2: f64, s: f64) -> (f64, f64) {
    let q = 1.0 - s;
    let cross = a2 * b2 * s * s * s;
    let n_single = neg_form(b2 * s * q, cross);
    let n_pair = neg_form(q * (a2 + b2 * q), cross);
    (n_single, n_pair)
}

/// π-tangle of an evolved GHZ-type state; two-tangles vanish identically.
pub fn pi_ghz_closed(family: GhzFamily, a2: f64, p: Amplitude) -> Result<ClosedPi> {
    check_a2(a2)?;
    let b2 = 1.0 - a2;
    let s = p.squared();
    Ok(match family {
        GhzFamily::I => {
            let n = q_function(a2, p)?.max(0.0);
            ClosedPi::without_pairs([n; 3], n * n)
        }
        GhzFamily::II | GhzFamily::IV => {
            let (n1, n2) = type2_negativities(a2, b2, s);
            let pi = (2.0 * n1 * n1 + n2 * n2) / 3.0;
            // IV singles out B where II singles out C
            let triple = if family == GhzFamily::II {
                [n1, n1, n2]
            } else {
                [n1, n2, n1]
            };
            ClosedPi::without_pairs(triple, pi)
        }
        GhzFamily::III => {
            let (n1, n2) = type2_negativities(b2, a2, s);
            ClosedPi::without_pairs([n2, n1, n1], (n2 * n2 + 2.0 * n1 * n1) / 3.0)
        }
    })
}

fn no_iv(family: GhzFamily) -> Result<()> {
    if family == GhzFamily::IV {
        return Err(Error::InvalidSpec(
            "no closed form is catalogued for the type-IV family".into(),
        ));
    }
    Ok(())
}

/// The 2×2 block of the type-I state on `{|0⟩, |7⟩}`: its two eigenvalues
/// and the `(x, y)` components of the leading eigenvector.
fn type1_block(a2: f64, s: f64) -> (f64, f64, f64, f64) {
    let b2 = 1.0 - a2;
    let q = 1.0 - s;
    let r00 = a2 + b2 * q * q * q;
    let r77 = b2 * s * s * s;
    let off = (a2 * b2).sqrt() * s * p_from_s(s);
    let tr = r00 + r77;
    let diff = r00 - r77;
    let disc = (diff * diff + 4.0 * off * off).sqrt();
    let plus = 0.5 * (tr + disc);
    let det = b2 * b2 * s * s * s * q * q * q;
    let minus = if plus > 0.0 { det / plus } else { 0.0 };
    let (x, y) = if diff >= 0.0 {
        (diff + disc, 2.0 * off)
    } else {
        (2.0 * off, disc - diff)
    };
    (plus, minus, x, y)
}

fn p_from_s(s: f64) -> f64 {
    s.sqrt()
}

/// Upper bound on the residual entanglement from the spectral decomposition.
pub fn tau_upper_bound(family: GhzFamily, a2: f64, p: Amplitude) -> Result<f64> {
    check_a2(a2)?;
    no_iv(family)?;
    let b2 = 1.0 - a2;
    let s = p.squared();
    Ok(match family {
        GhzFamily::I => {
            let (plus, minus, x, y) = type1_block(a2, s);
            let n2 = x * x + y * y;
            if n2 == 0.0 {
                0.0
            } else {
                (plus + minus) * 4.0 * x * x * y * y / (n2 * n2)
            }
        }
        GhzFamily::II => {
            let den = a2 + b2 * s;
            if den == 0.0 {
                0.0
            } else {
                4.0 * a2 * b2 * s * s / den
            }
        }
        _ => {
            let den = a2 * s + b2;
            if den == 0.0 {
                0.0
            } else {
                4.0 * a2 * b2 * s * s / den
            }
        }
    })
}

/// Spectral decomposition of an evolved GHZ-type state (types I–III).
///
/// The amplitude sign is absorbed into the vectors, so negative `P`
/// reconstructs the channel output exactly.
pub fn spectral_ghz(
    family: GhzFamily,
    a2: f64,
    delta: f64,
    p: Amplitude,
) -> Result<SpectralDecomposition> {
    check_a2(a2)?;
    no_iv(family)?;
    let a = a2.sqrt();
    let b2 = 1.0 - a2;
    let b = b2.sqrt();
    let pv = p.value();
    let s = p.squared();
    let q = 1.0 - s;
    let phase = Complex64::from_polar(1.0, delta);
    let mut weights = Vec::new();
    let mut vectors = Vec::new();
    let mut push = |w: f64, v: [Complex64; 8]| {
        weights.push(w);
        vectors.push(v);
    };
    match family {
        GhzFamily::I => {
            let (plus, minus, x, y) = type1_block(a2, s);
            let (mut x, mut y) = (x, y);
            let n = (x * x + y * y).sqrt();
            if n == 0.0 {
                x = 1.0;
                y = 0.0;
            } else {
                x /= n;
                y /= n;
            }
            // the |0⟩⟨7| coherence carries P³
            let sgn = if pv < 0.0 { -1.0 } else { 1.0 };
            let mut v1 = [Complex64::new(0.0, 0.0); 8];
            v1[0] = Complex64::new(x, 0.0);
            v1[7] = phase * (sgn * y);
            let mut v2 = [Complex64::new(0.0, 0.0); 8];
            v2[0] = Complex64::new(y, 0.0);
            v2[7] = phase * (-sgn * x);
            push(plus, v1);
            push(minus, v2);
            for i in [1, 2, 4] {
                push(b2 * s * q * q, basis(i));
            }
            for i in [3, 5, 6] {
                push(b2 * s * s * q, basis(i));
            }
        }
        GhzFamily::II => {
            let norm = (a2 + b2 * s).sqrt();
            let mut phi = [Complex64::new(0.0, 0.0); 8];
            if norm > 0.0 {
                phi[1] = Complex64::new(a / norm, 0.0);
                phi[6] = phase * (b * pv / norm);
            } else {
                phi[1] = Complex64::new(1.0, 0.0);
            }
            push(s * (a2 + b2 * s), phi);
            push(q * (a2 + b2 * q), basis(0));
            push(b2 * s * q, basis(2));
            push(b2 * s * q, basis(4));
        }
        _ => {
            let norm = (a2 * s + b2).sqrt();
            let mut phi = [Complex64::new(0.0, 0.0); 8];
            if norm > 0.0 {
                phi[3] = Complex64::new(a * pv / norm, 0.0);
                phi[4] = phase * (b / norm);
            } else {
                phi[3] = Complex64::new(1.0, 0.0);
            }
            push(s * (a2 * s + b2), phi);
            push(q * (a2 * q + b2), basis(0));
            push(a2 * s * q, basis(1));
            push(a2 * s * q, basis(2));
        }
    }
    Ok(SpectralDecomposition { weights, vectors })
}

/// `(1 − P²)|0⟩⟨0| + P²|W₁⟩⟨W₁|` as a spectral decomposition.
pub fn spectral_w1(
    a: f64,
    b: f64,
    c: f64,
    delta1: f64,
    delta2: f64,
    p: Amplitude,
) -> Result<SpectralDecomposition> {
    check_w_norm(a, b, c)?;
    let mut w = [Complex64::new(0.0, 0.0); 8];
    w[1] = Complex64::new(a, 0.0);
    w[2] = Complex64::from_polar(b, delta1);
    w[4] = Complex64::from_polar(c, delta2);
    let s = p.squared();
    Ok(SpectralDecomposition {
        weights: vec![1.0 - s, s],
        vectors: vec![basis(0), w],
    })
}

/// All six negativities and the π-tangle of the evolved `|W₁⟩`.
pub fn pi_w1_closed(a: f64, b: f64, c: f64, p: Amplitude) -> Result<ClosedPi> {
    check_w_norm(a, b, c)?;
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let s = p.squared();
    let q = 1.0 - s;
    let s2 = s * s;

    let one = [
        neg_form(q, c2 * (a2 + b2) * s2),
        neg_form(q, b2 * (a2 + c2) * s2),
        neg_form(q, a2 * (b2 + c2) * s2),
    ];
    let (ua, ub, uc) = (q + a2 * s, q + b2 * s, q + c2 * s);
    let pairs = [
        neg_form(ua, b2 * c2 * s2),
        neg_form(ub, a2 * c2 * s2),
        neg_form(uc, a2 * b2 * s2),
    ];

    let root = |u: f64, v: f64| (u * u + 4.0 * v * s2).sqrt();
    let pi = 2.0 / 3.0
        * (2.0 * ua * root(ua, b2 * c2)
            + 2.0 * ub * root(ub, a2 * c2)
            + 2.0 * uc * root(uc, a2 * b2)
            - q * (root(q, a2 * (b2 + c2)) + root(q, b2 * (a2 + c2)) + root(q, c2 * (a2 + b2)))
            - 2.0 * (a2 * a2 + b2 * b2 + c2 * c2) * s2
            - q * (3.0 + s));
    Ok(ClosedPi {
        n_one_vs_rest: one,
        n_pairs: pairs,
        pi,
    })
}

/// `P²` below which the symmetric `|W₂⟩` pair negativities vanish.
pub fn w2_pair_knee() -> f64 {
    2.0 - 2f64.sqrt()
}

/// π-tangle of the evolved symmetric `|W₂⟩` (`a² = b² = c² = 1/3`).
pub fn pi_w2_symmetric_closed(p: Amplitude) -> ClosedPi {
    let s = p.squared();
    let n = s / 3.0 * ((9.0 - 18.0 * s + 17.0 * s * s).sqrt() - 3.0 * (1.0 - s));
    let pair = if s >= w2_pair_knee() {
        (((9.0 - 24.0 * s + 20.0 * s * s).sqrt() + 2.0 * s * (2.0 - s)) / 3.0 - 1.0).max(0.0)
    } else {
        0.0
    };
    ClosedPi {
        n_one_vs_rest: [n; 3],
        n_pairs: [pair; 3],
        pi: n * n - 2.0 * pair * pair,
    }
}

/// The one-excitation part `σ_II` of the evolved symmetric `|W₂⟩`:
/// weights `{2/3, 1/6, 1/6}`.
pub fn sigma_w2_spectral(delta1: f64, delta2: f64) -> SpectralDecomposition {
    let e1 = Complex64::from_polar(1.0, -delta1);
    let e2 = Complex64::from_polar(1.0, -delta2);
    let one = Complex64::new(1.0, 0.0);
    let mut alpha1 = [Complex64::new(0.0, 0.0); 8];
    let mut alpha2 = alpha1;
    let mut alpha3 = alpha1;
    let r3 = 1.0 / 3f64.sqrt();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let r6 = 1.0 / 6f64.sqrt();
    alpha1[1] = one * r3;
    alpha1[2] = e1 * r3;
    alpha1[4] = e2 * r3;
    alpha2[1] = one * r2;
    alpha2[4] = -e2 * r2;
    alpha3[1] = one * r6;
    alpha3[2] = -e1 * (2.0 * r6);
    alpha3[4] = e2 * r6;
    SpectralDecomposition {
        weights: vec![2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0],
        vectors: vec![alpha1, alpha2, alpha3],
    }
}

/// `σ_II` written out entrywise for general amplitudes.
pub fn sigma_w2_matrix(a: f64, b: f64, c: f64, delta1: f64, delta2: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(8);
    let h = |x: f64| Complex64::new(0.5 * x, 0.0);
    m[(1, 1)] = h(b * b + c * c);
    m[(2, 2)] = h(a * a + c * c);
    m[(4, 4)] = h(a * a + b * b);
    m[(1, 2)] = Complex64::from_polar(0.5 * a * b, delta1);
    m[(1, 4)] = Complex64::from_polar(0.5 * a * c, delta2);
    m[(2, 4)] = Complex64::from_polar(0.5 * b * c, -(delta1 - delta2));
    for (i, j) in [(1, 2), (1, 4), (2, 4)] {
        m[(j, i)] = m[(i, j)].conj();
    }
    m
}

/// `(1−P²)²|0⟩⟨0| + P⁴|W₂⟩⟨W₂| + 2P²(1−P²) σ_II` for the symmetric `|W₂⟩`.
pub fn assemble_w2_symmetric(delta1: f64, delta2: f64, p: Amplitude) -> Result<DensityMatrix> {
    let s = p.squared();
    let q = 1.0 - s;
    let r3 = 1.0 / 3f64.sqrt();
    let mut w2 = [Complex64::new(0.0, 0.0); 8];
    w2[6] = Complex64::new(r3, 0.0);
    w2[5] = Complex64::from_polar(r3, delta1);
    w2[3] = Complex64::from_polar(r3, delta2);
    let mut weights = vec![q * q, s * s];
    let mut vectors = vec![basis(0), w2];
    let sigma = sigma_w2_spectral(delta1, delta2);
    for (w, v) in sigma.weights.iter().zip(sigma.vectors) {
        weights.push(2.0 * s * q * w);
        vectors.push(v);
    }
    let m = SpectralDecomposition { weights, vectors }.reconstruct();
    DensityMatrix::new(m)
}

/// Pair concurrences `[C_AB, C_AC, C_BC]` of the evolved W-type states.
pub fn concurrence_w_closed(
    family: WFamily,
    a: f64,
    b: f64,
    c: f64,
    p: Amplitude,
) -> Result<[f64; 3]> {
    check_w_norm(a, b, c)?;
    let (a, b, c) = (a.abs(), b.abs(), c.abs());
    let s = p.squared();
    Ok(match family {
        WFamily::W1 => [2.0 * b * c * s, 2.0 * a * c * s, 2.0 * a * b * s],
        WFamily::W2 => {
            let term = |prod: f64, x: f64| {
                2.0 * s * (prod - x * ((1.0 - s) * (1.0 - x * x * s)).sqrt()).max(0.0)
            };
            [term(b * c, a), term(a * c, b), term(a * b, c)]
        }
    })
}
