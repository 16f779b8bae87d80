//! Parameter sweeps, figure data, the closed-form audit and table output.

mod audit;
mod figure;
mod spec;
mod sweep;
mod table;

pub use audit::{audit, audit_times, simplex_points, AuditCheck, AuditConfig, AuditReport};
pub use figure::{
    figure_plan, reproduce_figure, reproduce_figure_with, surface_axis, write_figure, FigureData,
    FigureId, Series,
};
pub use spec::{
    default_t_max, Axis, InitialState, ParamGrid, ParamPoint, StateConfig, StateFamily,
    SweepConfig, SweepSpec, TimeGrid, TimeGridConfig, DEFAULT_STEPS,
};
pub use sweep::{run_sweep, run_sweep_with, Execution, AUDIT_TOLERANCE, ENGINE_VERSION};
pub use table::{Column, Format, ResultTable};
