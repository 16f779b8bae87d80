use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tripartite::harness::{
    audit, reproduce_figure, run_sweep, surface_axis, write_figure, AuditConfig, Axis, FigureId,
    Format, InitialState, ParamGrid, ResultTable, StateConfig, StateFamily, SweepConfig,
    TimeGridConfig,
};

#[derive(Parser)]
#[command(
    name = "tripartite",
    version,
    about = "Three-qubit entanglement under local amplitude damping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one state over a time grid and tabulate its measures.
    Evolve(RunArgs),
    /// Like evolve, over a grid of state parameters as well.
    Sweep(RunArgs),
    /// Write the data behind a figure (1a 1b 2a 2b 3a 3b 4 5a 5b 6a 6b, or all).
    Figure {
        id: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check every closed form against the numeric engine.
    Audit {
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON config with the sweep fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ghz1 ghz2 ghz3 ghz4 w1 w2 mixture
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    b2: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta2: Option<f64>,
    /// GHZ weight of the mixture.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    lambda_ratio: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<tripartite::Error> for Failure {
    fn from(e: tripartite::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn flags(args: &RunArgs) -> Result<SweepConfig, Failure> {
    let family = args
        .state
        .as_deref()
        .map(str::parse::<StateFamily>)
        .transpose()?;
    Ok(SweepConfig {
        state: StateConfig {
            family,
            a2: args.a2,
            b2: args.b2,
            c2: args.c2,
            delta: args.delta,
            delta2: args.delta2,
            p: args.p,
        },
        lambda_ratio: args.lambda_ratio,
        time_grid: Some(TimeGridConfig {
            t_max: args.tmax,
            steps: args.steps,
        }),
        param_grid: None,
    })
}

fn default_grid(state: &InitialState) -> ParamGrid {
    match state {
        InitialState::Ghz(_) => ParamGrid {
            a2: Some(surface_axis(1.0)),
            ..Default::default()
        },
        InitialState::W(s) => ParamGrid {
            a2: Some(surface_axis(1.0 - s.c * s.c)),
            ..Default::default()
        },
        InitialState::Mixture(_) => ParamGrid {
            p: Some(Axis::new(0.0, 1.0, 51)),
            ..Default::default()
        },
    }
}

fn emit(table: &ResultTable, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => table.write_file(format, path)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(format, &mut lock)?;
            lock.flush().map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn run(args: &RunArgs, grid: bool) -> Result<(), Failure> {
    let format: Format = args.format.parse()?;
    let file = match &args.config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    let mut cfg = file.overlay(&flags(args)?);
    if !grid {
        cfg.param_grid = None;
    }
    let mut spec = cfg.resolve()?;
    if grid && spec.param_grid.is_none() {
        spec.param_grid = Some(default_grid(&spec.state));
    }
    let table = run_sweep(&spec)?;
    emit(&table, format, args.out.as_ref())
}

fn figure(id: &str, out: &Path) -> Result<(), Failure> {
    let ids = if id.eq_ignore_ascii_case("all") {
        FigureId::ALL.to_vec()
    } else {
        vec![id.parse::<FigureId>()?]
    };
    for id in ids {
        let fig = reproduce_figure(id)?;
        for path in write_figure(&fig, out)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn run_audit(tolerance: f64, format: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    let report = audit(&AuditConfig::with_tolerance(tolerance))?;
    let text = match format {
        "text" => report.to_string() + "\n",
        "json" => {
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))? + "\n"
        }
        other => return Err(Failure::Usage(format!("unknown audit format {other:?}"))),
    };
    match out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{} audit violations",
            report.violations()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Evolve(args) => run(args, false),
        Command::Sweep(args) => run(args, true),
        Command::Figure { id, out } => figure(id, out),
        Command::Audit {
            tolerance,
            format,
            out,
        } => run_audit(*tolerance, format, out.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
