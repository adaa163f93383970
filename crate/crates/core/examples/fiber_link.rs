// Atom → cavity → fiber → cavity → atom: the end-to-end channel and its
// capacity against fiber transmittance.

use jc_capacity::capacity::quantum_capacity;
use jc_capacity::channel::{concatenate, LossChannel};
use jc_capacity::jc::JcParams;

pub fn run_example() -> jc_capacity::Result<()> {
    let half = std::f64::consts::FRAC_PI_2;
    let sender = JcParams::resonant(1.0, half)?;
    let receiver = JcParams::resonant(1.0, half)?;
    let detuned = JcParams::with_detuning(1.0, 0.6, 0.0, half)?;
    println!("{:>5} {:>10} {:>10} {:>16}", "T", "|h4|^2", "Q", "Q(detuned rx)");
    for k in 0..=10 {
        let fiber = LossChannel::new(k as f64 / 10.0)?;
        let link = concatenate(&sender, &fiber, &receiver);
        let worse = concatenate(&sender, &fiber, &detuned);
        println!(
            "{:>5.2} {:>10.6} {:>10.6} {:>16.6}",
            fiber.transmittance(),
            link.keep_sq(),
            quantum_capacity(&link).q,
            quantum_capacity(&worse).q
        );
    }
    // half the photons lost: the link carries no quantum information
    let lossy = concatenate(&sender, &LossChannel::new(0.5)?, &receiver);
    assert_eq!(quantum_capacity(&lossy).q, 0.0);
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
