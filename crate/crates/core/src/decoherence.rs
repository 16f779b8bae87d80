//! The decoherence amplitude `P_t` of a qubit coupled to a zero-temperature
//! reservoir with Lorentzian spectral density of width `λ` and strength `γ₀`.
//!
//! `P_t` obeys `dP/dt = −∫₀ᵗ f(t−s) P_s ds` with kernel
//! `f(τ) = (γ₀λ/2) e^{−λ|τ|}`. For this kernel the integro-differential
//! equation is equivalent to the local system `P'' + λP' + (γ₀λ/2)P = 0`,
//! `P(0) = 1`, `P'(0) = 0`, whose roots `(−λ ± √(λ² − 2γ₀λ))/2` separate the
//! monotone (Markovian, `λ > 2γ₀`) from the oscillating (non-Markovian,
//! `λ < 2γ₀`) regime.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative width of the band around `λ = 2γ₀` treated as the critical point.
const BOUNDARY_REL_TOL: f64 = 1e-12;

/// Coupling strength `γ₀` and spectral width `λ` of one reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirParams {
    pub gamma0: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Weak coupling, `λ > 2γ₀`.
    Markovian,
    /// Strong coupling, `λ < 2γ₀`.
    NonMarkovian,
    /// Critical damping, `λ = 2γ₀`.
    Boundary,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Markovian => "Markovian",
            Regime::NonMarkovian => "non-Markovian",
            Regime::Boundary => "boundary",
        }
    }
}

impl ReservoirParams {
    pub fn new(gamma0: f64, lambda: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "gamma0 must be positive, got {gamma0}"
            )));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        Ok(Self { gamma0, lambda })
    }

    /// Reservoir with `γ₀ = 1`, so times are measured in units of `1/γ₀`.
    pub fn from_ratio(lambda_over_gamma0: f64) -> Result<Self> {
        Self::new(1.0, lambda_over_gamma0)
    }

    pub fn regime(&self) -> Regime {
        let critical = 2.0 * self.gamma0;
        if (self.lambda - critical).abs() <= BOUNDARY_REL_TOL * critical {
            Regime::Boundary
        } else if self.lambda > critical {
            Regime::Markovian
        } else {
            Regime::NonMarkovian
        }
    }

    /// `d̄ = √(λ² − 2γ₀λ)`, real in the Markovian regime.
    pub fn decay_rate(&self) -> f64 {
        (self.lambda * self.lambda - 2.0 * self.gamma0 * self.lambda)
            .max(0.0)
            .sqrt()
    }

    /// `d = √(2γ₀λ − λ²)`, real in the non-Markovian regime.
    pub fn oscillation_rate(&self) -> f64 {
        (2.0 * self.gamma0 * self.lambda - self.lambda * self.lambda)
            .max(0.0)
            .sqrt()
    }

    /// Reservoir correlation time `τ_B = 1/λ`.
    pub fn correlation_time(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Relaxation time `τ_R = 1/γ₀`.
    pub fn relaxation_time(&self) -> f64 {
        1.0 / self.gamma0
    }

    fn require(&self, expected: Regime) -> Result<()> {
        let actual = self.regime();
        if actual != expected {
            return Err(Error::WrongRegime {
                expected: expected.name(),
                actual: actual.name(),
            });
        }
        Ok(())
    }
}

/// Value of the decoherence amplitude `P_t`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Amplitude(pub f64);

impl Amplitude {
    pub const ONE: Amplitude = Amplitude(1.0);
    pub const ZERO: Amplitude = Amplitude(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    /// `P_t²`, the population survival factor.
    pub fn squared(self) -> f64 {
        self.0 * self.0
    }
}

impl From<Amplitude> for f64 {
    fn from(a: Amplitude) -> f64 {
        a.0
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange(format!(
            "time must be finite and nonnegative, got {t}"
        )));
    }
    Ok(())
}

/// `P_t = e^{−λt/2}[cosh(d̄t/2) + (λ/d̄) sinh(d̄t/2)]` for `λ > 2γ₀`.
pub fn amplitude_markovian(t: f64, p: &ReservoirParams) -> Result<Amplitude> {
    check_time(t)?;
    p.require(Regime::Markovian)?;
    let dbar = p.decay_rate();
    let lam = p.lambda;
    // Written with the two decaying exponentials e^{(−λ ± d̄)t/2} so that
    // large t does not overflow cosh/sinh.
    let slow = (-(lam - dbar) * t / 2.0).exp();
    let fast = (-(lam + dbar) * t / 2.0).exp();
    let cosh_part = 0.5 * (slow + fast);
    let sinh_part = 0.5 * (slow - fast);
    Ok(Amplitude(cosh_part + (lam / dbar) * sinh_part))
}

/// `P_t = e^{−λt/2}[cos(dt/2) + (λ/d) sin(dt/2)]` for `λ < 2γ₀`.
pub fn amplitude_nonmarkovian(t: f64, p: &ReservoirParams) -> Result<Amplitude> {
    check_time(t)?;
    p.require(Regime::NonMarkovian)?;
    let d = p.oscillation_rate();
    let lam = p.lambda;
    let half = d * t / 2.0;
    Ok(Amplitude(
        (-lam * t / 2.0).exp() * (half.cos() + (lam / d) * half.sin()),
    ))
}

/// Regime dispatch. At `λ = 2γ₀` the critical limit `e^{−λt/2}(1 + λt/2)` is used.
pub fn amplitude(t: f64, p: &ReservoirParams) -> Result<Amplitude> {
    check_time(t)?;
    match p.regime() {
        Regime::Markovian => amplitude_markovian(t, p),
        Regime::NonMarkovian => amplitude_nonmarkovian(t, p),
        Regime::Boundary => {
            let x = p.lambda * t / 2.0;
            Ok(Amplitude((-x).exp() * (1.0 + x)))
        }
    }
}

/// Reservoir correlation function `f(τ) = (γ₀λ/2) e^{−λ|τ|}`.
pub fn memory_kernel(dt: f64, p: &ReservoirParams) -> f64 {
    0.5 * p.gamma0 * p.lambda * (-p.lambda * dt.abs()).exp()
}

/// Classical RK4 on `P'' + λP' + (γ₀λ/2)P = 0` over `[0, t_max]` with `steps`
/// uniform steps. Returns `steps + 1` samples, the first being `P_0 = 1`.
pub fn amplitude_ode_oracle(
    t_max: f64,
    steps: usize,
    p: &ReservoirParams,
) -> Result<Vec<Amplitude>> {
    if steps == 0 {
        return Err(Error::OutOfRange("steps must be positive".into()));
    }
    check_time(t_max)?;
    let h = t_max / steps as f64;
    let lam = p.lambda;
    let k = 0.5 * p.gamma0 * p.lambda;
    let rhs = |y: [f64; 2]| [y[1], -lam * y[1] - k * y[0]];

    let mut y = [1.0, 0.0];
    let mut out = Vec::with_capacity(steps + 1);
    out.push(Amplitude(y[0]));
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs([y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        out.push(Amplitude(y[0]));
    }
    Ok(out)
}

/// First `n_max` zeros `t_n = (2/d)[nπ − arctan(d/λ)]` of the non-Markovian
/// amplitude. Each root is checked to be a sign change of the closed form.
pub fn amplitude_zeros(p: &ReservoirParams, n_max: usize) -> Result<Vec<f64>> {
    p.require(Regime::NonMarkovian)?;
    let d = p.oscillation_rate();
    let phase = (d / p.lambda).atan();
    let spacing = 2.0 * PI / d;
    let mut zeros = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let tn = 2.0 / d * (n as f64 * PI - phase);
        let probe = 1e-3 * spacing;
        let before = amplitude_nonmarkovian((tn - probe).max(0.0), p)?.0;
        let after = amplitude_nonmarkovian(tn + probe, p)?.0;
        if before.signum() == after.signum() {
            return Err(Error::OutOfRange(format!(
                "zero {n} at t = {tn} is not a sign change of P_t"
            )));
        }
        zeros.push(tn);
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ratio: f64) -> ReservoirParams {
        ReservoirParams::from_ratio(ratio).unwrap()
    }

    #[test]
    fn regime_classification() {
        assert_eq!(params(3.0).regime(), Regime::Markovian);
        assert_eq!(params(0.01).regime(), Regime::NonMarkovian);
        assert_eq!(params(2.0).regime(), Regime::Boundary);
        assert!(ReservoirParams::new(0.0, 1.0).is_err());
        assert!(ReservoirParams::new(1.0, -1.0).is_err());
    }

    #[test]
    fn starts_at_one() {
        for r in [3.0, 2.0, 0.5, 0.01] {
            assert_eq!(amplitude(0.0, &params(r)).unwrap().0, 1.0);
        }
    }

    #[test]
    fn wrong_regime_is_rejected() {
        assert!(matches!(
            amplitude_markovian(1.0, &params(0.5)),
            Err(Error::WrongRegime { .. })
        ));
        assert!(amplitude_nonmarkovian(1.0, &params(3.0)).is_err());
        assert!(amplitude_zeros(&params(3.0), 3).is_err());
        assert!(amplitude(-1.0, &params(3.0)).is_err());
    }

    #[test]
    fn markovian_value_at_unit_time() {
        // RK4 oracle with h = 1e-4 gives 0.690250...
        let ode = amplitude_ode_oracle(1.0, 10_000, &params(3.0)).unwrap();
        let closed = amplitude_markovian(1.0, &params(3.0)).unwrap().0;
        assert!((ode[10_000].0 - closed).abs() < 1e-12);
        assert!((closed - 0.6903).abs() < 5e-5);
    }

    #[test]
    fn markovian_tail_is_small_and_monotone() {
        let p = params(3.0);
        assert!(amplitude(50.0, &p).unwrap().0 < 1e-6);
        let mut prev = 1.0;
        for k in 0..=5000 {
            let v = amplitude(k as f64 * 0.01, &p).unwrap().0;
            assert!(v > 0.0 && v <= prev);
            prev = v;
        }
    }

    #[test]
    fn boundary_limit() {
        let p = params(2.0);
        let v = amplitude(1.0, &p).unwrap().0;
        assert!((v - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let ode = amplitude_ode_oracle(1.0, 10_000, &p).unwrap();
        assert!((ode[10_000].0 - v).abs() < 1e-12);

        let near = ReservoirParams::new(1.0, 2.0 + 1e-6).unwrap();
        for k in 0..=300 {
            let t = k as f64 * 0.1;
            let a = amplitude(t, &p).unwrap().0;
            let b = amplitude_markovian(t, &near).unwrap().0;
            assert!((a - b).abs() <= 1e-4, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn dispatch_matches_markovian_form() {
        let p = params(3.0);
        for k in 0..100 {
            let t = k as f64 * 0.37;
            assert_eq!(
                amplitude(t, &p).unwrap(),
                amplitude_markovian(t, &p).unwrap()
            );
        }
    }

    #[test]
    fn memory_kernel_values() {
        let p = ReservoirParams::new(1.5, 0.7).unwrap();
        assert!((memory_kernel(0.0, &p) - 0.525).abs() < 1e-15);
        let at = memory_kernel(1.0 / 0.7, &p);
        assert!((at - 0.525 * (-1.0f64).exp()).abs() < 1e-15);
        for dt in [0.1, 1.0, 3.3] {
            assert_eq!(memory_kernel(dt, &p), memory_kernel(-dt, &p));
        }
    }

    #[test]
    fn ode_oracle_rejects_zero_steps() {
        assert!(amplitude_ode_oracle(1.0, 0, &params(3.0)).is_err());
        assert_eq!(
            amplitude_ode_oracle(1.0, 10, &params(3.0)).unwrap()[0].0,
            1.0
        );
    }

    /// Bisection on the closed form over a bracket found by a coarse scan.
    fn first_zero_by_bisection(p: &ReservoirParams) -> f64 {
        let f = |t: f64| amplitude_nonmarkovian(t, p).unwrap().0;
        let mut lo = 0.0;
        let mut hi = 0.0;
        let mut t = 0.0;
        while f(t) > 0.0 {
            lo = t;
            t += 0.01;
            hi = t;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn zeros_match_bisection() {
        let p = params(0.01);
        let zeros = amplitude_zeros(&p, 5).unwrap();
        let bisect = first_zero_by_bisection(&p);
        assert!((zeros[0] - bisect).abs() < 1e-9);
        assert!((zeros[0] - 23.27).abs() < 0.005);

        let spacing = 2.0 * PI / p.oscillation_rate();
        for w in zeros.windows(2) {
            assert!((w[1] - w[0] - spacing).abs() < 1e-9);
        }
        for &tn in &zeros {
            assert!(amplitude_nonmarkovian(tn, &p).unwrap().0.abs() < 1e-10);
        }
    }

    #[test]
    fn nonmarkovian_oscillates_negative() {
        let p = params(0.01);
        let z = amplitude_zeros(&p, 2).unwrap();
        let n = 1000;
        let dips = (1..n)
            .map(|k| z[0] + (z[1] - z[0]) * k as f64 / n as f64)
            .any(|t| amplitude(t, &p).unwrap().0 < 0.0);
        assert!(dips);
    }
}
