// Capacity of the atom → field conversion as a function of interaction
// time, resonant and detuned.

use jc_capacity::capacity::quantum_capacity;
use jc_capacity::channel::TransferChannel;
use jc_capacity::jc::JcParams;

pub fn run_example() -> jc_capacity::Result<()> {
    println!(
        "{:>6} {:>12} {:>12} {:>15}",
        "g*t", "Q(delta=0)", "Q(delta=1)", "status(delta=1)"
    );
    for k in 0..=12 {
        let t = std::f64::consts::PI * k as f64 / 12.0;
        let resonant = quantum_capacity(&TransferChannel::atom_to_field(&JcParams::resonant(1.0, t)?));
        let detuned = quantum_capacity(&TransferChannel::atom_to_field(&JcParams::with_detuning(
            1.0, 1.0, 0.0, t,
        )?));
        println!(
            "{t:>6.3} {:>12.6} {:>12.6} {:>15}",
            resonant.q, detuned.q, detuned.status
        );
    }
    // perfect transfer at half a Rabi cycle
    let best = quantum_capacity(&TransferChannel::atom_to_field(&JcParams::resonant(
        1.0,
        std::f64::consts::FRAC_PI_2,
    )?));
    assert!((best.q - 1.0).abs() < 1e-12);
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
