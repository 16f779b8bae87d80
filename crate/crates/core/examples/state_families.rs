// The GHZ and W families, the GHZ/W mixture curve and the GHZ symmetry
// that damping breaks.

use tripartite::channel::evolve_three_direct;
use tripartite::decoherence::Amplitude;
use tripartite::measures::pi_tangle;
use tripartite::states::{
    ghz_symmetry_deviation, make_ghz, make_w, mixture_knees, tau_mixture, GhzFamily, GhzFamilySpec,
    WFamily, WFamilySpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // The four GHZ types are local-unitary images of each other at t = 0.
    for f in GhzFamily::ALL {
        let rho = make_ghz(&GhzFamilySpec::from_a2(f, 0.3, 0.0)?)?;
        println!("{} a2 = 0.3: pi = {:.6}", f.name(), pi_tangle(&rho)?.pi);
    }
    for f in [WFamily::W1, WFamily::W2] {
        let rho = make_w(&WFamilySpec::symmetric(f))?;
        println!("{}: pi = {:.6}", f.name(), pi_tangle(&rho)?.pi);
    }

    let (p0, p1) = mixture_knees();
    println!("mixture knees p0 = {p0:.6}, p1 = {p1:.6}");
    for p in [0.0, 0.6, p0, 0.65, p1, 0.8, 1.0] {
        println!("  tau({p:.4}) = {:.8}", tau_mixture(p)?);
    }

    let ghz = make_ghz(&GhzFamilySpec::standard())?;
    let evolved = evolve_three_direct(&ghz, Amplitude(0.5f64.sqrt()))?;
    let before = ghz_symmetry_deviation(&ghz)?;
    let after = ghz_symmetry_deviation(&evolved)?;
    println!("GHZ symmetry deviation: {before:.1e} at t = 0, {after:.4} at P^2 = 0.5");
    assert!(before < 1e-14 && after > 0.01);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("state_families");
}
