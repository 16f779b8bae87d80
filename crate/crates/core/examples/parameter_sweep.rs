// A small sweep written as CSV, then read back from its JSON form.

use tripartite::harness::{run_sweep, Format, ResultTable, SweepConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SweepConfig::from_json(
        r#"{
            "state": {"family": "ghz3"},
            "lambda_ratio": 0.01,
            "time_grid": {"t_max": 60.0, "steps": 7},
            "param_grid": {"a2": {"start": 0.1, "stop": 0.9, "points": 3}}
        }"#,
    )?;
    let spec = cfg.resolve()?;
    let table = run_sweep(&spec)?;
    println!(
        "{} rows, columns: {}",
        table.rows(),
        table.names().collect::<Vec<_>>().join(" ")
    );

    let csv = table.to_csv_string()?;
    for line in csv.lines().take(4) {
        println!("{}", &line[..line.len().min(100)]);
    }

    let dir = std::env::temp_dir().join("tripartite-sweep-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("sweep.json");
    table.write_file(Format::Json, &path)?;
    let back = ResultTable::from_json(&serde_json::from_str(&std::fs::read_to_string(&path)?)?)?;
    assert_eq!(back, table);
    let gap = table
        .floats("abs_gap")
        .unwrap_or_default()
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    println!("wrote {}; worst closed-form gap {gap:.1e}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("parameter_sweep");
}
