// Runs a reduced audit of every closed form against the numeric engine.

use tripartite::harness::{audit, AuditConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = AuditConfig {
        param_points: 5,
        time_points: 10,
        channel_states: 10,
        ..AuditConfig::default()
    };
    let report = audit(&cfg)?;
    println!("{report}");
    assert!(report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("closed_form_audit");
}
