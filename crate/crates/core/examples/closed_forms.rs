// Closed-form π-tangles against the numeric pipeline, and the
// sudden-death time of the type-I GHZ state.

use tripartite::catalog::{esd_time, pi_ghz_closed, pi_w1_closed, spectral_ghz};
use tripartite::channel::evolve_three_direct;
use tripartite::decoherence::{amplitude, ReservoirParams};
use tripartite::measures::pi_tangle;
use tripartite::states::{make_ghz, make_w, GhzFamily, GhzFamilySpec, WFamily, WFamilySpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let res = ReservoirParams::from_ratio(3.0)?;
    for a2 in [0.2, 0.6] {
        match esd_time(a2, &res)? {
            Some(t) => println!("ghz1 a2 = {a2}: entanglement dies at gamma0 t = {t:.6}"),
            None => println!("ghz1 a2 = {a2}: no sudden death"),
        }
    }

    let mut worst = 0.0f64;
    for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let p = amplitude(t, &res)?;
        for f in [GhzFamily::I, GhzFamily::II, GhzFamily::III, GhzFamily::IV] {
            let rho = evolve_three_direct(&make_ghz(&GhzFamilySpec::from_a2(f, 0.4, 0.0)?)?, p)?;
            worst = worst.max((pi_ghz_closed(f, 0.4, p)?.pi - pi_tangle(&rho)?.pi).abs());
        }
        let w = WFamilySpec::from_squares(WFamily::W1, 0.5, 0.3, 0.2, 0.0, 0.0)?;
        let rho = evolve_three_direct(&make_w(&w)?, p)?;
        worst = worst.max((pi_w1_closed(w.a, w.b, w.c, p)?.pi - pi_tangle(&rho)?.pi).abs());
    }
    println!("max |closed - numeric| over the sample: {worst:.2e}");
    assert!(worst < 1e-9);

    let p = amplitude(1.0, &res)?;
    let spec = spectral_ghz(GhzFamily::I, 0.3, 0.0, p)?;
    let rho = evolve_three_direct(
        &make_ghz(&GhzFamilySpec::from_a2(GhzFamily::I, 0.3, 0.0)?)?,
        p,
    )?;
    let gap = spec.reconstruct().max_abs_diff(rho.matrix());
    println!(
        "ghz1 spectral form: rank {}, weights {:.5?}, reconstruction error {gap:.1e}",
        spec.rank(1e-14),
        spec.weights
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("closed_forms");
}
