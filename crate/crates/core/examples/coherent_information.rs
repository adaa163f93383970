// Coherent information two ways: entropies of the 2×2 output and 4×4
// extended state, and the binary-entropy closed form.

use jc_capacity::capacity::{coherent_information, coherent_information_closed_form, quantum_capacity};
use jc_capacity::channel::TransferChannel;
use num_complex::Complex64 as C64;

pub fn run_example() -> jc_capacity::Result<()> {
    let ch = TransferChannel::from_keep_probability(0.75)?;
    let mut worst = 0.0_f64;
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let eigen = coherent_information(&ch, p, C64::new(0.0, 0.0))?;
        let closed = coherent_information_closed_form(0.75, p);
        worst = worst.max((eigen - closed).abs());
        println!("p = {p:.1}  I_c = {closed:+.6}");
    }
    let spectrum = ch.extended_apply(0.4)?.eigenvalues()?;
    println!("extended-state spectrum at p = 0.4: {spectrum:?}");
    let best = quantum_capacity(&ch);
    println!(
        "Q = {:.12} at p* = {:.6}; largest route difference {worst:.1e}",
        best.q, best.p_star
    );
    assert!(worst < 1e-9);
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
