use rayon::prelude::*;
use serde_json::{Map, Value};

use super::spec::{InitialState, SweepSpec};
use super::table::{Column, ResultTable};
use crate::catalog::{concurrence_w_closed, pi_ghz_closed, pi_w1_closed, pi_w2_symmetric_closed};
use crate::channel::evolve_three_direct;
use crate::decoherence::{amplitude, Amplitude};
use crate::measures::{measure_report, MeasureReport};
use crate::states::WFamily;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Serial,
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Gap allowed between closed forms and the numeric engine.
pub const AUDIT_TOLERANCE: f64 = 1e-9;

const MEASURE_COLUMNS: [&str; 14] = [
    "n_a_bc",
    "n_b_ac",
    "n_ab_c",
    "n_ab",
    "n_ac",
    "n_bc",
    "pi_a",
    "pi_b",
    "pi_c",
    "pi",
    "c_ab",
    "c_ac",
    "c_bc",
    "ckw_margin",
];

struct Row {
    p: f64,
    report: MeasureReport,
    closed_pi: Option<f64>,
    closed_c: Option<[f64; 3]>,
}

fn closed_forms(state: &InitialState, p: Amplitude) -> Result<(Option<f64>, Option<[f64; 3]>)> {
    Ok(match state {
        InitialState::Ghz(s) => (Some(pi_ghz_closed(s.family, s.a2(), p)?.pi), None),
        InitialState::W(s) => {
            let c = concurrence_w_closed(s.family, s.a, s.b, s.c, p)?;
            let pi = match s.family {
                WFamily::W1 => Some(pi_w1_closed(s.a, s.b, s.c, p)?.pi),
                WFamily::W2 if state.is_symmetric_w() => Some(pi_w2_symmetric_closed(p).pi),
                WFamily::W2 => None,
            };
            (pi, Some(c))
        }
        InitialState::Mixture(_) => (None, None),
    })
}

fn evaluate(
    state: &InitialState,
    rho0: &crate::linalg::DensityMatrix,
    p: Amplitude,
) -> Result<Row> {
    let rho = evolve_three_direct(rho0, p)?;
    let report = measure_report(&rho)?;
    let (closed_pi, closed_c) = closed_forms(state, p)?;
    Ok(Row {
        p: p.value(),
        report,
        closed_pi,
        closed_c,
    })
}

/// Evolves the spec's state(s) over the time grid and tabulates every
/// measure, plus closed forms and their gaps where the family has them.
///
/// Rows are ordered by grid point, then time.
pub fn run_sweep(spec: &SweepSpec) -> Result<ResultTable> {
    run_sweep_with(spec, Execution::Parallel)
}

pub fn run_sweep_with(spec: &SweepSpec, execution: Execution) -> Result<ResultTable> {
    spec.validate()?;
    let reservoir = spec.reservoir()?;
    let times = spec.time_grid.times();
    let amps: Vec<Amplitude> = times
        .iter()
        .map(|&t| amplitude(t, &reservoir))
        .collect::<Result<_>>()?;
    let points = spec.points()?;
    let states: Vec<InitialState> = points
        .iter()
        .map(|pt| spec.state.with_point(pt))
        .collect::<Result<_>>()?;
    let initial: Vec<_> = states.iter().map(|s| s.density()).collect::<Result<_>>()?;

    let work: Vec<(usize, usize)> = (0..states.len())
        .flat_map(|i| (0..times.len()).map(move |k| (i, k)))
        .collect();
    let run = |&(i, k): &(usize, usize)| evaluate(&states[i], &initial[i], amps[k]);
    let rows: Vec<Row> = match execution {
        Execution::Parallel => work.par_iter().map(run).collect::<Result<_>>()?,
        Execution::Serial => work.iter().map(run).collect::<Result<_>>()?,
    };

    let mut table = ResultTable::new(metadata(spec, &reservoir));
    table.push_floats(
        "gamma0_t",
        work.iter()
            .map(|&(_, k)| times[k] * reservoir.gamma0)
            .collect(),
    )?;
    for (j, name) in points[0].names().iter().enumerate() {
        table.push_floats(
            name,
            work.iter().map(|&(i, _)| points[i].values()[j]).collect(),
        )?;
    }
    table.push_floats("P_t", rows.iter().map(|r| r.p).collect())?;
    for (j, name) in MEASURE_COLUMNS.iter().enumerate() {
        let col = rows.iter().map(|r| measure_value(&r.report, j)).collect();
        table.push_floats(name, col)?;
    }
    if rows.iter().all(|r| r.closed_pi.is_some()) {
        let closed: Vec<f64> = rows
            .iter()
            .map(|r| r.closed_pi.unwrap_or_default())
            .collect();
        let gap = rows
            .iter()
            .zip(&closed)
            .map(|(r, c)| (r.report.pi - c).abs())
            .collect();
        table.push_floats("closed_form_pi", closed)?;
        table.push_floats("abs_gap", gap)?;
    }
    if rows.iter().all(|r| r.closed_c.is_some()) {
        for (j, name) in ["closed_c_ab", "closed_c_ac", "closed_c_bc"]
            .iter()
            .enumerate()
        {
            table.push_floats(
                name,
                rows.iter()
                    .map(|r| r.closed_c.unwrap_or_default()[j])
                    .collect(),
            )?;
        }
        let gap = rows
            .iter()
            .map(|r| {
                let c = r.closed_c.unwrap_or_default();
                (0..3)
                    .map(|j| (r.report.concurrences[j] - c[j]).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        table.push_floats("concurrence_gap", gap)?;
    }
    Ok(table)
}

fn measure_value(r: &MeasureReport, j: usize) -> f64 {
    match j {
        0..=2 => r.n_one_vs_rest[j],
        3..=5 => r.n_pairs[j - 3],
        6..=8 => r.pi_abc[j - 6],
        9 => r.pi,
        10..=12 => r.concurrences[j - 10],
        _ => r.ckw_margin,
    }
}

fn metadata(
    spec: &SweepSpec,
    reservoir: &crate::decoherence::ReservoirParams,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("engine".into(), Value::from("tripartite"));
    m.insert("engine_version".into(), Value::from(ENGINE_VERSION));
    m.insert(
        "state_family".into(),
        Value::from(spec.state.family().name()),
    );
    m.insert("lambda_ratio".into(), Value::from(spec.lambda_ratio));
    m.insert("regime".into(), Value::from(reservoir.regime().name()));
    m.insert("time_unit".into(), Value::from("1/gamma0"));
    let mut tol = Map::new();
    tol.insert("closed_form_gap".into(), Value::from(AUDIT_TOLERANCE));
    tol.insert(
        "hermitian".into(),
        Value::from(crate::linalg::HERMITIAN_TOL),
    );
    tol.insert("trace".into(), Value::from(crate::linalg::TRACE_TOL));
    m.insert("tolerances".into(), Value::Object(tol));
    m.insert(
        "spec".into(),
        serde_json::to_value(spec).unwrap_or(Value::Null),
    );
    m
}

/// A one-off table column of labels, e.g. a figure's series names.
pub fn label_column(label: &str, rows: usize) -> Column {
    Column::Text(vec![label.to_string(); rows])
}
