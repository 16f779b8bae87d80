// Negativities, the π-tangle, concurrences and the three-tangle on the
// two standard tripartite states.

use tripartite::measures::{measure_report, residual_pure};
use tripartite::states::{make_ghz, make_w, GhzFamilySpec, WFamily, WFamilySpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ghz = GhzFamilySpec::standard();
    let w = WFamilySpec::symmetric(WFamily::W1);

    let r = measure_report(&make_ghz(&ghz)?)?;
    println!(
        "GHZ: N_A(BC) = {:.6}  pi = {:.6}  C = {:?}",
        r.n_one_vs_rest[0], r.pi, r.concurrences
    );
    println!("GHZ: tau_ABC = {:.6}", residual_pure(&ghz.amplitudes())?);
    assert!((r.pi - 1.0).abs() < 1e-10);

    let r = measure_report(&make_w(&w)?)?;
    let exact = 4.0 * (5f64.sqrt() - 1.0) / 9.0;
    println!(
        "W:   N_A(BC) = {:.6}  N_AB = {:.6}  pi = {:.6} (4(sqrt5-1)/9 = {exact:.6})",
        r.n_one_vs_rest[0], r.n_pairs[0], r.pi
    );
    println!(
        "W:   C = {:.6?}  CKW margin = {:.2e}  tau_ABC = {:.1e}",
        r.concurrences,
        r.ckw_margin,
        residual_pure(&w.amplitudes())?
    );
    assert!((r.pi - exact).abs() < 1e-10);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("entanglement_measures");
}
