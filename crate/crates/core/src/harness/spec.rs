use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decoherence::ReservoirParams;
use crate::linalg::DensityMatrix;
use crate::states::{
    make_ghz, make_mixture, make_w, GhzFamily, GhzFamilySpec, MixtureSpec, WFamily, WFamilySpec,
};
use crate::{Error, Result};

const SYMMETRIC_TOL: f64 = 1e-12;

/// Family names as they appear on the command line and in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    Ghz1,
    Ghz2,
    Ghz3,
    Ghz4,
    W1,
    W2,
    Mixture,
}

impl StateFamily {
    pub const ALL: [StateFamily; 7] = [
        StateFamily::Ghz1,
        StateFamily::Ghz2,
        StateFamily::Ghz3,
        StateFamily::Ghz4,
        StateFamily::W1,
        StateFamily::W2,
        StateFamily::Mixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateFamily::Ghz1 => "ghz1",
            StateFamily::Ghz2 => "ghz2",
            StateFamily::Ghz3 => "ghz3",
            StateFamily::Ghz4 => "ghz4",
            StateFamily::W1 => "w1",
            StateFamily::W2 => "w2",
            StateFamily::Mixture => "mixture",
        }
    }

    pub fn ghz(self) -> Option<GhzFamily> {
        match self {
            StateFamily::Ghz1 => Some(GhzFamily::I),
            StateFamily::Ghz2 => Some(GhzFamily::II),
            StateFamily::Ghz3 => Some(GhzFamily::III),
            StateFamily::Ghz4 => Some(GhzFamily::IV),
            _ => None,
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        StateFamily::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown state family {s:?}")))
    }
}

/// A fully resolved initial state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InitialState {
    Ghz(GhzFamilySpec),
    W(WFamilySpec),
    Mixture(MixtureSpec),
}

impl InitialState {
    pub fn family(&self) -> StateFamily {
        match self {
            InitialState::Ghz(s) => match s.family {
                GhzFamily::I => StateFamily::Ghz1,
                GhzFamily::II => StateFamily::Ghz2,
                GhzFamily::III => StateFamily::Ghz3,
                GhzFamily::IV => StateFamily::Ghz4,
            },
            InitialState::W(s) => match s.family {
                WFamily::W1 => StateFamily::W1,
                WFamily::W2 => StateFamily::W2,
            },
            InitialState::Mixture(_) => StateFamily::Mixture,
        }
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            InitialState::Ghz(s) => make_ghz(s),
            InitialState::W(s) => make_w(s),
            InitialState::Mixture(s) => make_mixture(s),
        }
    }

    /// True for a W-type state with `a² = b² = c² = 1/3`.
    pub fn is_symmetric_w(&self) -> bool {
        match self {
            InitialState::W(s) => [s.a, s.b, s.c]
                .iter()
                .all(|x| (x * x - 1.0 / 3.0).abs() <= SYMMETRIC_TOL),
            _ => false,
        }
    }

    /// Replaces the amplitudes with a grid point, keeping the phases.
    pub fn with_point(&self, point: &ParamPoint) -> Result<InitialState> {
        Ok(match (self, point) {
            (InitialState::Ghz(s), ParamPoint::Ghz { a2 }) => {
                InitialState::Ghz(GhzFamilySpec::from_a2(s.family, *a2, s.delta)?)
            }
            (InitialState::W(s), ParamPoint::W { a2, b2, c2 }) => InitialState::W(
                WFamilySpec::from_squares(s.family, *a2, *b2, *c2, s.delta1, s.delta2)?,
            ),
            (InitialState::Mixture(_), ParamPoint::Mixture { p }) => {
                InitialState::Mixture(MixtureSpec { p: *p })
            }
            _ => {
                return Err(Error::InvalidSpec(
                    "grid point does not match the state family".into(),
                ))
            }
        })
    }

    pub fn point(&self) -> ParamPoint {
        match self {
            InitialState::Ghz(s) => ParamPoint::Ghz { a2: s.a2() },
            InitialState::W(s) => ParamPoint::W {
                a2: s.a * s.a,
                b2: s.b * s.b,
                c2: s.c * s.c,
            },
            InitialState::Mixture(s) => ParamPoint::Mixture { p: s.p },
        }
    }
}

/// Parameter values of one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamPoint {
    Ghz { a2: f64 },
    W { a2: f64, b2: f64, c2: f64 },
    Mixture { p: f64 },
}

impl ParamPoint {
    pub fn names(&self) -> &'static [&'static str] {
        match self {
            ParamPoint::Ghz { .. } => &["a2"],
            ParamPoint::W { .. } => &["a2", "b2", "c2"],
            ParamPoint::Mixture { .. } => &["p"],
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            ParamPoint::Ghz { a2 } => vec![a2],
            ParamPoint::W { a2, b2, c2 } => vec![a2, b2, c2],
            ParamPoint::Mixture { p } => vec![p],
        }
    }
}

/// State parameters as written in configs and on the command line.
///
/// Missing W-type squares share whatever the given ones leave over.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub family: Option<StateFamily>,
    pub a2: Option<f64>,
    pub b2: Option<f64>,
    pub c2: Option<f64>,
    pub delta: Option<f64>,
    pub delta2: Option<f64>,
    pub p: Option<f64>,
}

impl StateConfig {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(&self, over: &StateConfig) -> StateConfig {
        StateConfig {
            family: over.family.or(self.family),
            a2: over.a2.or(self.a2),
            b2: over.b2.or(self.b2),
            c2: over.c2.or(self.c2),
            delta: over.delta.or(self.delta),
            delta2: over.delta2.or(self.delta2),
            p: over.p.or(self.p),
        }
    }

    pub fn resolve(&self) -> Result<InitialState> {
        let family = self
            .family
            .ok_or_else(|| Error::InvalidSpec("no state family given".into()))?;
        let delta = self.delta.unwrap_or(0.0);
        if let Some(g) = family.ghz() {
            let a2 = self.a2.unwrap_or(0.5);
            return Ok(InitialState::Ghz(GhzFamilySpec::from_a2(g, a2, delta)?));
        }
        match family {
            StateFamily::Mixture => {
                let p = self.p.ok_or_else(|| {
                    Error::InvalidSpec("the mixture needs a mixing weight p".into())
                })?;
                let spec = MixtureSpec { p };
                make_mixture(&spec)?;
                Ok(InitialState::Mixture(spec))
            }
            _ => {
                let wf = if family == StateFamily::W1 {
                    WFamily::W1
                } else {
                    WFamily::W2
                };
                let given = [self.a2, self.b2, self.c2];
                let known: f64 = given.iter().flatten().sum();
                let missing = given.iter().filter(|x| x.is_none()).count();
                let share = if missing == 0 {
                    0.0
                } else {
                    (1.0 - known) / missing as f64
                };
                let [a2, b2, c2] = given.map(|x| x.unwrap_or(share));
                // squares that land a rounding step below zero are clamped
                let [a2, b2, c2] =
                    [a2, b2, c2].map(|x| if x < 0.0 && x > -1e-12 { 0.0 } else { x });
                Ok(InitialState::W(WFamilySpec::from_squares(
                    wf,
                    a2,
                    b2,
                    c2,
                    delta,
                    self.delta2.unwrap_or(0.0),
                )?))
            }
        }
    }
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Self {
            start,
            stop,
            points,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|k| {
                    if k == n - 1 {
                        self.stop
                    } else {
                        self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

/// Optional grids over the state parameters. For W-type states `b²` is
/// derived from `a²` and `c²`; an absent `c²` axis keeps the state's value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamGrid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Axis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    /// In units of `1/γ₀`.
    pub t_max: f64,
    /// Number of time points, both ends included.
    pub steps: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        Axis::new(0.0, self.t_max, self.steps).values()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub state: InitialState,
    /// `λ/γ₀`; `γ₀` is the unit of inverse time.
    pub lambda_ratio: f64,
    pub time_grid: TimeGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_grid: Option<ParamGrid>,
}

impl SweepSpec {
    pub fn reservoir(&self) -> Result<ReservoirParams> {
        ReservoirParams::from_ratio(self.lambda_ratio)
    }

    pub fn validate(&self) -> Result<()> {
        if self.time_grid.steps < 2 {
            return Err(Error::InvalidSpec(format!(
                "time grid needs at least 2 points, got {}",
                self.time_grid.steps
            )));
        }
        if !(self.time_grid.t_max > 0.0) || !self.time_grid.t_max.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "t_max must be positive, got {}",
                self.time_grid.t_max
            )));
        }
        self.reservoir()?;
        self.state.density()?;
        if let Some(g) = &self.param_grid {
            for axis in [&g.a2, &g.c2, &g.p].into_iter().flatten() {
                if axis.points == 0 {
                    return Err(Error::InvalidSpec("parameter axis has no points".into()));
                }
            }
        }
        Ok(())
    }

    /// Grid points in sweep order: `a²` outermost, then `c²`.
    pub fn points(&self) -> Result<Vec<ParamPoint>> {
        let base = self.state.point();
        let Some(grid) = &self.param_grid else {
            return Ok(vec![base]);
        };
        let axis_or = |axis: &Option<Axis>, fallback: f64| {
            axis.map(|a| a.values()).unwrap_or_else(|| vec![fallback])
        };
        let points = match base {
            ParamPoint::Ghz { a2 } => {
                if grid.c2.is_some() || grid.p.is_some() {
                    return Err(Error::InvalidSpec(
                        "GHZ-type grids only range over a2".into(),
                    ));
                }
                axis_or(&grid.a2, a2)
                    .into_iter()
                    .map(|a2| ParamPoint::Ghz { a2 })
                    .collect()
            }
            ParamPoint::W { a2, c2, .. } => {
                if grid.p.is_some() {
                    return Err(Error::InvalidSpec(
                        "W-type grids range over a2 and c2".into(),
                    ));
                }
                let mut out = Vec::new();
                for a in axis_or(&grid.a2, a2) {
                    for c in axis_or(&grid.c2, c2) {
                        let mut b = 1.0 - a - c;
                        if b < 0.0 && b > -1e-12 {
                            b = 0.0;
                        }
                        if b < 0.0 {
                            return Err(Error::InvalidSpec(format!(
                                "a2 = {a} and c2 = {c} leave b2 < 0"
                            )));
                        }
                        out.push(ParamPoint::W {
                            a2: a,
                            b2: b,
                            c2: c,
                        });
                    }
                }
                out
            }
            ParamPoint::Mixture { p } => {
                if grid.a2.is_some() || grid.c2.is_some() {
                    return Err(Error::InvalidSpec("mixture grids only range over p".into()));
                }
                axis_or(&grid.p, p)
                    .into_iter()
                    .map(|p| ParamPoint::Mixture { p })
                    .collect()
            }
        };
        Ok(points)
    }
}

/// Sweep settings as read from a JSON config; every field is optional so
/// command-line flags can fill or override them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub state: StateConfig,
    pub lambda_ratio: Option<f64>,
    #[serde(default)]
    pub time_grid: Option<TimeGridConfig>,
    #[serde(default)]
    pub param_grid: Option<ParamGrid>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridConfig {
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
}

pub const DEFAULT_STEPS: usize = 501;

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("config: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(&self, over: &SweepConfig) -> SweepConfig {
        let tg = |c: &SweepConfig| c.time_grid.clone().unwrap_or_default();
        let (base_tg, over_tg) = (tg(self), tg(over));
        SweepConfig {
            state: self.state.overlay(&over.state),
            lambda_ratio: over.lambda_ratio.or(self.lambda_ratio),
            time_grid: Some(TimeGridConfig {
                t_max: over_tg.t_max.or(base_tg.t_max),
                steps: over_tg.steps.or(base_tg.steps),
            }),
            param_grid: over.param_grid.clone().or_else(|| self.param_grid.clone()),
        }
    }

    /// Resolves into a validated spec. `t_max` defaults to one that shows
    /// the characteristic features of the reservoir's regime.
    pub fn resolve(&self) -> Result<SweepSpec> {
        let state = self.state.resolve()?;
        let lambda_ratio = self
            .lambda_ratio
            .ok_or_else(|| Error::InvalidSpec("no lambda ratio given".into()))?;
        let tg = self.time_grid.clone().unwrap_or_default();
        let t_max = match tg.t_max {
            Some(t) => t,
            None => default_t_max(lambda_ratio),
        };
        let spec = SweepSpec {
            state,
            lambda_ratio,
            time_grid: TimeGrid {
                t_max,
                steps: tg.steps.unwrap_or(DEFAULT_STEPS),
            },
            param_grid: self.param_grid.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// 5 for `λ ≥ 2γ₀`; otherwise long enough to cover the first two zeros of
/// `P_t` (100 at `λ = 0.01γ₀`, 300 at `λ = 0.001γ₀`).
pub fn default_t_max(lambda_ratio: f64) -> f64 {
    if lambda_ratio >= 2.0 {
        5.0
    } else if lambda_ratio >= 0.005 {
        100.0
    } else {
        300.0
    }
}
