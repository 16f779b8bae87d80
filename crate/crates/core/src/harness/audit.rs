use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sweep::AUDIT_TOLERANCE;
use crate::catalog::{
    concurrence_w_closed, esd_condition, pi_ghz_closed, pi_w1_closed, pi_w2_symmetric_closed,
};
use crate::channel::{evolve_three_direct, evolve_three_kraus};
use crate::decoherence::{amplitude, amplitude_zeros, Amplitude, Regime, ReservoirParams};
use crate::linalg::{random_density, DensityMatrix};
use crate::measures::{pair_concurrences, pi_tangle};
use crate::states::{make_ghz, make_w, GhzFamily, GhzFamilySpec, WFamily, WFamilySpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditConfig {
    pub tolerance: f64,
    /// `λ/γ₀` values; each family is audited in every one.
    pub lambda_ratios: Vec<f64>,
    /// Parameter points per family and reservoir.
    pub param_points: usize,
    /// Time points per parameter point.
    pub time_points: usize,
    pub channel_states: usize,
    pub channel_amplitudes: usize,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            tolerance: AUDIT_TOLERANCE,
            lambda_ratios: vec![3.0, 0.01],
            param_points: 20,
            time_points: 30,
            channel_states: 100,
            channel_amplitudes: 10,
            seed: 0x5eed,
        }
    }
}

impl AuditConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditCheck {
    pub name: String,
    pub points: usize,
    pub worst_gap: f64,
    pub worst_at: String,
    pub violations: usize,
}

impl AuditCheck {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub tolerance: f64,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AuditCheck::passed)
    }

    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The check with the largest gap among those that failed.
    pub fn worst_offender(&self) -> Option<&AuditCheck> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .max_by(|a, b| a.worst_gap.total_cmp(&b.worst_gap))
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<28} points={:<6} worst={:.3e} at {}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.points,
                c.worst_gap,
                c.worst_at
            )?;
        }
        match self.worst_offender() {
            None => write!(f, "audit passed at tolerance {:e}", self.tolerance),
            Some(w) => write!(
                f,
                "audit failed at tolerance {:e}: {} violations; worst offender {} ({:.3e} at {})",
                self.tolerance,
                self.violations(),
                w.name,
                w.worst_gap,
                w.worst_at
            ),
        }
    }
}

/// Folds `(gap, location)` samples into a check.
fn collect(name: &str, tolerance: f64, samples: Vec<(f64, String)>) -> AuditCheck {
    let mut check = AuditCheck {
        name: name.to_string(),
        points: samples.len(),
        worst_gap: 0.0,
        worst_at: String::from("-"),
        violations: 0,
    };
    for (gap, at) in samples {
        // NaN counts as a violation
        if !(gap <= tolerance) {
            check.violations += 1;
        }
        if !(gap <= check.worst_gap) {
            check.worst_gap = gap;
            check.worst_at = at;
        }
    }
    check
}

/// `time_points` times spanning the regime's characteristic window: up to
/// `γ₀t = 5` for monotone decay, past the second zero of `P_t` otherwise.
pub fn audit_times(p: &ReservoirParams, time_points: usize) -> Result<Vec<f64>> {
    let t_max = match p.regime() {
        Regime::NonMarkovian => 1.1 * amplitude_zeros(p, 2)?[1],
        _ => 5.0 / p.gamma0,
    };
    Ok((0..time_points)
        .map(|j| t_max * j as f64 / (time_points.max(2) - 1) as f64)
        .collect())
}

/// Deterministic points spread over the simplex `a² + b² + c² = 1`.
pub fn simplex_points(n: usize) -> Vec<(f64, f64, f64)> {
    (0..n)
        .map(|k| {
            let u = (0.1 + k as f64 * 0.618_033_988_749_895).fract();
            let v = (0.3 + k as f64 * 0.754_877_666_246_693).fract();
            let r = u.sqrt();
            let a2 = 1.0 - r;
            let b2 = r * (1.0 - v);
            let c2 = 1.0 - a2 - b2;
            (a2, b2, c2.max(0.0))
        })
        .collect()
}

#[derive(Clone)]
enum Case {
    Ghz(GhzFamilySpec),
    W(WFamilySpec),
}

impl Case {
    fn label(&self) -> String {
        match self {
            Case::Ghz(s) => format!("a2={:.4} delta={:.3}", s.a2(), s.delta),
            Case::W(s) => format!(
                "a2={:.4} b2={:.4} c2={:.4} delta1={:.3} delta2={:.3}",
                s.a * s.a,
                s.b * s.b,
                s.c * s.c,
                s.delta1,
                s.delta2
            ),
        }
    }

    fn density(&self) -> Result<DensityMatrix> {
        match self {
            Case::Ghz(s) => make_ghz(s),
            Case::W(s) => make_w(s),
        }
    }
}

fn ghz_cases(family: GhzFamily, n: usize) -> Result<Vec<Case>> {
    (0..n)
        .map(|k| {
            let a2 = (k as f64 + 0.5) / n as f64;
            GhzFamilySpec::from_a2(family, a2, 0.37 * k as f64).map(Case::Ghz)
        })
        .collect()
}

fn w_cases(family: WFamily, n: usize) -> Result<Vec<Case>> {
    simplex_points(n)
        .into_iter()
        .enumerate()
        .map(|(k, (a2, b2, c2))| {
            WFamilySpec::from_squares(family, a2, b2, c2, 0.5 * k as f64, -0.3 * k as f64)
                .map(Case::W)
        })
        .collect()
}

fn w2_symmetric_cases(n: usize) -> Vec<Case> {
    (0..n)
        .map(|k| {
            let s = WFamilySpec::symmetric(WFamily::W2);
            Case::W(WFamilySpec {
                delta1: 0.41 * k as f64,
                delta2: -0.29 * k as f64,
                ..s
            })
        })
        .collect()
}

/// What a grid sample is compared on.
#[derive(Clone, Copy)]
enum Probe {
    Pi,
    Concurrence,
}

type Closed = fn(&Case, Amplitude) -> Result<Vec<f64>>;

fn grid_check(
    name: &str,
    cfg: &AuditConfig,
    cases: &[Case],
    probe: Probe,
    closed: Closed,
) -> Result<AuditCheck> {
    let mut samples = Vec::new();
    for &ratio in &cfg.lambda_ratios {
        let res = ReservoirParams::from_ratio(ratio)?;
        let times = audit_times(&res, cfg.time_points)?;
        let work: Vec<(usize, f64)> = (0..cases.len())
            .flat_map(|i| times.iter().map(move |&t| (i, t)))
            .collect();
        let initial: Vec<DensityMatrix> = cases.iter().map(Case::density).collect::<Result<_>>()?;
        let part: Vec<(f64, String)> = work
            .par_iter()
            .map(|&(i, t)| {
                let p = amplitude(t, &res)?;
                let rho = evolve_three_direct(&initial[i], p)?;
                let numeric = match probe {
                    Probe::Pi => vec![pi_tangle(&rho)?.pi],
                    Probe::Concurrence => pair_concurrences(&rho)?.to_vec(),
                };
                let exact = closed(&cases[i], p)?;
                let gap = numeric
                    .iter()
                    .zip(&exact)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max);
                Ok((
                    gap,
                    format!("lambda={ratio} {} gamma0_t={t:.4}", cases[i].label()),
                ))
            })
            .collect::<Result<_>>()?;
        samples.extend(part);
    }
    Ok(collect(name, cfg.tolerance, samples))
}

fn closed_pi(case: &Case, p: Amplitude) -> Result<Vec<f64>> {
    Ok(vec![match case {
        Case::Ghz(s) => pi_ghz_closed(s.family, s.a2(), p)?.pi,
        Case::W(s) if s.family == WFamily::W1 => pi_w1_closed(s.a, s.b, s.c, p)?.pi,
        Case::W(_) => pi_w2_symmetric_closed(p).pi,
    }])
}

fn closed_concurrence(case: &Case, p: Amplitude) -> Result<Vec<f64>> {
    match case {
        Case::W(s) => Ok(concurrence_w_closed(s.family, s.a, s.b, s.c, p)?.to_vec()),
        Case::Ghz(_) => Err(Error::InvalidSpec(
            "no concurrence closed form for GHZ-type states".into(),
        )),
    }
}

fn ghz_pairs_check(cfg: &AuditConfig) -> Result<AuditCheck> {
    let mut cases = Vec::new();
    for f in GhzFamily::ALL {
        cases.extend(ghz_cases(f, cfg.param_points)?);
    }
    let mut samples = Vec::new();
    for &ratio in &cfg.lambda_ratios {
        let res = ReservoirParams::from_ratio(ratio)?;
        for t in audit_times(&res, cfg.time_points)? {
            let p = amplitude(t, &res)?;
            let part: Vec<(f64, String)> = cases
                .par_iter()
                .map(|c| {
                    let rho = evolve_three_direct(&c.density()?, p)?;
                    let pairs = pi_tangle(&rho)?.n_pairs;
                    let family = match c {
                        Case::Ghz(s) => s.family.name(),
                        Case::W(_) => "w",
                    };
                    let gap = pairs.iter().map(|x| x.abs()).fold(0.0, f64::max);
                    Ok((
                        gap,
                        format!("{family} lambda={ratio} {} gamma0_t={t:.4}", c.label()),
                    ))
                })
                .collect::<Result<_>>()?;
            samples.extend(part);
        }
    }
    Ok(collect("ghz_two_tangles", cfg.tolerance, samples))
}

/// Compares "closed-form π^I is zero" with the ESD inequality away from
/// the zeros of `P_t`, where the state is a product regardless of `a²`.
fn esd_indicator_check(cfg: &AuditConfig) -> Result<AuditCheck> {
    let cases = ghz_cases(GhzFamily::I, cfg.param_points)?;
    let mut samples = Vec::new();
    for &ratio in &cfg.lambda_ratios {
        let res = ReservoirParams::from_ratio(ratio)?;
        for t in audit_times(&res, cfg.time_points)? {
            let p = amplitude(t, &res)?;
            if p.squared() <= 1e-12 {
                continue;
            }
            for c in &cases {
                let Case::Ghz(s) = c else { continue };
                let vanishes = pi_ghz_closed(GhzFamily::I, s.a2(), p)?.pi == 0.0;
                let gap = if vanishes == esd_condition(s.a2(), p) {
                    0.0
                } else {
                    1.0
                };
                samples.push((gap, format!("lambda={ratio} {} gamma0_t={t:.4}", c.label())));
            }
        }
    }
    Ok(collect("esd_indicator", cfg.tolerance, samples))
}

fn zeros_check(cfg: &AuditConfig) -> Result<AuditCheck> {
    let mut cases = Vec::new();
    for f in GhzFamily::ALL {
        cases.extend(ghz_cases(f, cfg.param_points)?);
    }
    cases.extend(w_cases(WFamily::W1, cfg.param_points)?);
    cases.extend(w2_symmetric_cases(1));
    let mut samples = Vec::new();
    for &ratio in &cfg.lambda_ratios {
        let res = ReservoirParams::from_ratio(ratio)?;
        if res.regime() != Regime::NonMarkovian {
            continue;
        }
        for t in amplitude_zeros(&res, 3)? {
            let p = amplitude(t, &res)?;
            for c in &cases {
                let pi = closed_pi(c, p)?[0];
                samples.push((
                    pi.abs(),
                    format!("lambda={ratio} {} gamma0_t={t:.4}", c.label()),
                ));
            }
        }
    }
    Ok(collect("closed_pi_at_zeros", cfg.tolerance, samples))
}

fn channel_check(cfg: &AuditConfig) -> Result<AuditCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples = Vec::new();
    for s in 0..cfg.channel_states {
        let rho = random_density(&mut rng, 3);
        for _ in 0..cfg.channel_amplitudes {
            let p = Amplitude(rng.random_range(0.0..=1.0));
            let a = evolve_three_direct(&rho, p)?;
            let b = evolve_three_kraus(&rho, p)?;
            samples.push((
                a.matrix().max_abs_diff(b.matrix()),
                format!("state #{s} P={}", p.value()),
            ));
        }
    }
    Ok(collect("channel_direct_vs_kraus", cfg.tolerance, samples))
}

/// Closed forms against the numeric engine over parameter and time grids
/// in every configured reservoir, plus the two channel implementations
/// against each other.
pub fn audit(cfg: &AuditConfig) -> Result<AuditReport> {
    if !(cfg.tolerance > 0.0) {
        return Err(Error::OutOfRange(format!(
            "tolerance must be positive, got {}",
            cfg.tolerance
        )));
    }
    if cfg.lambda_ratios.is_empty() || cfg.param_points == 0 || cfg.time_points < 2 {
        return Err(Error::InvalidSpec(
            "audit grid is empty: need reservoirs, parameter points and at least 2 time points"
                .into(),
        ));
    }
    let n = cfg.param_points;
    let mut checks = Vec::new();
    for f in GhzFamily::ALL {
        let name = format!("pi/{}", f.name());
        checks.push(grid_check(
            &name,
            cfg,
            &ghz_cases(f, n)?,
            Probe::Pi,
            closed_pi,
        )?);
    }
    checks.push(grid_check(
        "pi/w1",
        cfg,
        &w_cases(WFamily::W1, n)?,
        Probe::Pi,
        closed_pi,
    )?);
    checks.push(grid_check(
        "pi/w2_symmetric",
        cfg,
        &w2_symmetric_cases(n),
        Probe::Pi,
        closed_pi,
    )?);
    for f in [WFamily::W1, WFamily::W2] {
        let name = format!("concurrence/{}", f.name());
        checks.push(grid_check(
            &name,
            cfg,
            &w_cases(f, n)?,
            Probe::Concurrence,
            closed_concurrence,
        )?);
    }
    checks.push(ghz_pairs_check(cfg)?);
    checks.push(esd_indicator_check(cfg)?);
    checks.push(zeros_check(cfg)?);
    checks.push(channel_check(cfg)?);
    Ok(AuditReport {
        tolerance: cfg.tolerance,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> AuditConfig {
        AuditConfig {
            param_points: 3,
            time_points: 4,
            channel_states: 3,
            channel_amplitudes: 2,
            ..AuditConfig::default()
        }
    }

    #[test]
    fn small_audit_passes() {
        let r = audit(&small()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.check("pi/ghz1").unwrap().points, 3 * 4 * 2);
        assert!(r.worst_offender().is_none());
    }

    #[test]
    fn tiny_tolerance_reports_worst_offender() {
        let cfg = AuditConfig {
            tolerance: 1e-300,
            ..small()
        };
        let r = audit(&cfg).unwrap();
        assert!(!r.passed(), "{r}");
        let w = r.worst_offender().unwrap();
        assert!(w.worst_gap > 1e-300);
        assert!(w.worst_at.contains('='));
        assert!(r.to_string().contains("worst offender"));
    }

    #[test]
    fn empty_grid_and_bad_tolerance() {
        let mut cfg = small();
        cfg.lambda_ratios.clear();
        assert!(audit(&cfg).is_err());
        let cfg = AuditConfig {
            param_points: 0,
            ..small()
        };
        assert!(audit(&cfg).is_err());
        assert!(audit(&AuditConfig::with_tolerance(0.0)).is_err());
    }

    #[test]
    fn simplex_points_are_normalized() {
        for (a, b, c) in simplex_points(50) {
            assert!(a >= 0.0 && b >= 0.0 && c >= 0.0);
            assert!((a + b + c - 1.0).abs() < 1e-15);
        }
    }
}
