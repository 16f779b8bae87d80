use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{Map, Value};

use super::spec::{Axis, InitialState, ParamGrid, SweepSpec, TimeGrid, DEFAULT_STEPS};
use super::sweep::{label_column, run_sweep_with, Execution, ENGINE_VERSION};
use super::table::{Column, Format, ResultTable};
use crate::states::{GhzFamily, GhzFamilySpec, WFamily, WFamilySpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    F1a,
    F1b,
    F2a,
    F2b,
    F3a,
    F3b,
    F4,
    F5a,
    F5b,
    F6a,
    F6b,
}

impl FigureId {
    pub const ALL: [FigureId; 11] = [
        FigureId::F1a,
        FigureId::F1b,
        FigureId::F2a,
        FigureId::F2b,
        FigureId::F3a,
        FigureId::F3b,
        FigureId::F4,
        FigureId::F5a,
        FigureId::F5b,
        FigureId::F6a,
        FigureId::F6b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::F1a => "1a",
            FigureId::F1b => "1b",
            FigureId::F2a => "2a",
            FigureId::F2b => "2b",
            FigureId::F3a => "3a",
            FigureId::F3b => "3b",
            FigureId::F4 => "4",
            FigureId::F5a => "5a",
            FigureId::F5b => "5b",
            FigureId::F6a => "6a",
            FigureId::F6b => "6b",
        }
    }

    pub fn lambda_ratio(self) -> f64 {
        match self {
            FigureId::F1a | FigureId::F4 | FigureId::F6a => 3.0,
            FigureId::F3a | FigureId::F3b | FigureId::F5b => 0.001,
            _ => 0.01,
        }
    }

    /// The quantities the figure plots.
    pub fn plotted(self) -> &'static [&'static str] {
        match self {
            FigureId::F6a | FigureId::F6b => &["c_ab", "c_ac", "c_bc"],
            _ => &["pi"],
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("fig").to_ascii_lowercase();
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

/// One curve or surface of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub spec: SweepSpec,
}

/// Surface grids use `a²` in steps of 0.02.
pub fn surface_axis(stop: f64) -> Axis {
    let points = (stop / 0.02).round() as usize + 1;
    Axis::new(0.0, 0.02 * (points - 1) as f64, points)
}

fn time_grid(ratio: f64) -> TimeGrid {
    TimeGrid {
        t_max: super::spec::default_t_max(ratio),
        steps: DEFAULT_STEPS,
    }
}

fn ghz(family: GhzFamily, a2: f64) -> InitialState {
    InitialState::Ghz(GhzFamilySpec::from_a2(family, a2, 0.0).expect("a² in range"))
}

fn w_symmetric(family: WFamily) -> InitialState {
    InitialState::W(WFamilySpec::symmetric(family))
}

/// The series behind a figure, each with its reservoir and state parameters.
pub fn figure_plan(id: FigureId) -> Vec<Series> {
    let ratio = id.lambda_ratio();
    let series = |label: &str, state: InitialState, grid: Option<ParamGrid>| Series {
        label: label.to_string(),
        spec: SweepSpec {
            state,
            lambda_ratio: ratio,
            time_grid: time_grid(ratio),
            param_grid: grid,
        },
    };
    let a2_surface = || {
        Some(ParamGrid {
            a2: Some(surface_axis(1.0)),
            ..Default::default()
        })
    };
    match id {
        FigureId::F1a | FigureId::F1b => vec![series("ghz1", ghz(GhzFamily::I, 0.5), a2_surface())],
        FigureId::F2a => vec![series("ghz2", ghz(GhzFamily::II, 0.5), a2_surface())],
        FigureId::F2b => vec![series("ghz3", ghz(GhzFamily::III, 0.5), a2_surface())],
        FigureId::F3a | FigureId::F3b => {
            let a2 = if id == FigureId::F3a { 0.1 } else { 0.9 };
            [
                ("ghz1", GhzFamily::I),
                ("ghz2", GhzFamily::II),
                ("ghz3", GhzFamily::III),
            ]
            .into_iter()
            .map(|(label, f)| series(label, ghz(f, a2), None))
            .collect()
        }
        FigureId::F5a => {
            // c² = 1/3 fixed, b² = 2/3 − a²
            let c2 = 1.0 / 3.0;
            let state = InitialState::W(
                WFamilySpec::from_squares(WFamily::W1, c2, c2, c2, 0.0, 0.0).expect("normalized"),
            );
            let grid = ParamGrid {
                a2: Some(surface_axis(2.0 / 3.0)),
                ..Default::default()
            };
            vec![series("w1", state, Some(grid))]
        }
        FigureId::F4 | FigureId::F5b | FigureId::F6a | FigureId::F6b => vec![
            series("w1", w_symmetric(WFamily::W1), None),
            series("w2", w_symmetric(WFamily::W2), None),
        ],
    }
}

/// The data behind one figure: a wide table with a leading `series`
/// column and a long table with one plotted value per row.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: FigureId,
    pub table: ResultTable,
    pub long: ResultTable,
}

#[derive(Default)]
struct LongRows {
    series: Vec<String>,
    a2: Vec<f64>,
    t: Vec<f64>,
    variable: Vec<String>,
    value: Vec<f64>,
}

pub fn reproduce_figure(id: FigureId) -> Result<FigureData> {
    reproduce_figure_with(id, Execution::Parallel)
}

pub fn reproduce_figure_with(id: FigureId, execution: Execution) -> Result<FigureData> {
    let plan = figure_plan(id);
    let mut meta = Map::new();
    meta.insert("figure".into(), Value::from(id.name()));
    meta.insert("engine_version".into(), Value::from(ENGINE_VERSION));
    meta.insert("lambda_ratio".into(), Value::from(id.lambda_ratio()));
    meta.insert("plotted".into(), Value::from(id.plotted().to_vec()));
    let mut series_meta = Vec::new();

    let mut table = ResultTable::default();
    let mut long_cols = LongRows::default();
    for s in &plan {
        let mut part = run_sweep_with(&s.spec, execution)?;
        series_meta.push(serde_json::json!({
            "label": s.label,
            "state_family": s.spec.state.family().name(),
            "spec": part.metadata.get("spec").cloned().unwrap_or(Value::Null),
        }));
        let rows = part.rows();
        part.push_front("series", label_column(&s.label, rows))?;

        let t = part.floats("gamma0_t").unwrap_or_default().to_vec();
        let a2 = part
            .floats("a2")
            .map(<[f64]>::to_vec)
            .unwrap_or_else(|| vec![f64::NAN; rows]);
        for var in id.plotted() {
            let values = part
                .floats(var)
                .ok_or_else(|| Error::InvalidSpec(format!("sweep lacks column {var}")))?;
            for r in 0..rows {
                long_cols.series.push(s.label.clone());
                long_cols.a2.push(a2[r]);
                long_cols.t.push(t[r]);
                long_cols.variable.push(var.to_string());
                long_cols.value.push(values[r]);
            }
        }
        table.append(&part)?;
    }
    meta.insert("series".into(), Value::Array(series_meta));
    table.metadata = meta.clone();

    let mut long = ResultTable::new(meta);
    long.push("series", Column::Text(long_cols.series))?;
    long.push_floats("a2", long_cols.a2)?;
    long.push_floats("gamma0_t", long_cols.t)?;
    long.push("variable", Column::Text(long_cols.variable))?;
    long.push_floats("value", long_cols.value)?;
    Ok(FigureData { id, table, long })
}

/// Writes `fig<id>.csv`, `fig<id>_long.csv` and `fig<id>_meta.json`.
pub fn write_figure(fig: &FigureData, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let stem = format!("fig{}", fig.id.name());
    let wide = dir.join(format!("{stem}.csv"));
    let long = dir.join(format!("{stem}_long.csv"));
    let meta = dir.join(format!("{stem}_meta.json"));
    fig.table.write_file(Format::Csv, &wide)?;
    fig.long.write_file(Format::Csv, &long)?;
    let text = serde_json::to_string_pretty(&Value::Object(fig.table.metadata.clone()))?;
    std::fs::write(&meta, text + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", meta.display())))?;
    Ok(vec![wide, long, meta])
}
