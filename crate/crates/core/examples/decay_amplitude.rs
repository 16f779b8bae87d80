// The decoherence amplitude `P_t` in both coupling regimes, checked
// against direct integration of its equation of motion.

use tripartite::decoherence::{amplitude, amplitude_ode_oracle, amplitude_zeros, ReservoirParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for ratio in [3.0, 2.0, 0.5, 0.01] {
        let res = ReservoirParams::from_ratio(ratio)?;
        let (t_max, steps) = (10.0, 4000);
        let ode = amplitude_ode_oracle(t_max, steps, &res)?;
        let mut worst = 0.0f64;
        for (k, p) in ode.iter().enumerate() {
            let t = t_max * k as f64 / steps as f64;
            worst = worst.max((amplitude(t, &res)?.value() - p.value()).abs());
        }
        println!(
            "lambda/gamma0 = {ratio:<5} regime {:<14} P(1) = {:.6}  max |closed - ode| = {worst:.2e}",
            res.regime().name(),
            amplitude(1.0, &res)?.value()
        );
        assert!(worst < 1e-6);
    }

    // Strong coupling: P_t crosses zero, so coherences vanish and come back.
    let res = ReservoirParams::from_ratio(0.01)?;
    let zeros = amplitude_zeros(&res, 3)?;
    println!("first zeros of P_t at lambda = 0.01: {zeros:.4?}");
    for t in &zeros {
        assert!(amplitude(*t, &res)?.value().abs() < 1e-12);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("decay_amplitude");
}
