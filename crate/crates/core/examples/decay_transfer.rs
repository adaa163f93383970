// Photon → atom transfer with a leaky cavity and a decaying atom: the
// closed-form amplitudes, the degradability test, and the master-equation
// integrator as a check.

use jc_capacity::capacity::quantum_capacity;
use jc_capacity::jc::{JcParams, JointState};
use jc_capacity::lindblad::{
    closed_form_state, decay_degradability, decayed_conversion, integrate_master_equation, DecayParams,
};
use jc_capacity::qmat::QubitInput;
use num_complex::Complex64 as C64;

pub fn run_example() -> jc_capacity::Result<()> {
    let jc = JcParams::with_detuning(1.0, 0.5, 0.0, std::f64::consts::FRAC_PI_2)?;
    println!(
        "{:>6} {:>10} {:>10} {:>11} {:>10}",
        "kappa", "|h5|^2", "|h6|^2", "degradable", "Q"
    );
    for kappa in [0.0, 0.1, 0.2, 0.5, 1.0, 2.0] {
        let conv = decayed_conversion(&jc, &DecayParams::new(kappa, 0.02)?)?;
        let q = quantum_capacity(&conv.to_channel()).q;
        println!(
            "{kappa:>6.2} {:>10.6} {:>10.6} {:>11} {q:>10.6}",
            conv.h5.norm_sqr(),
            conv.h6.norm_sqr(),
            decay_degradability(&conv)
        );
    }

    let decay = DecayParams::new(0.3, 0.05)?;
    let init = QubitInput::new(0.6, C64::new(0.3, 0.2))?;
    let closed = closed_form_state(&jc, &decay, &init)?;
    let numeric = integrate_master_equation(&jc, &decay, &JointState::photon_with_ground_atom(&init))?;
    let diff = closed.density().max_abs_diff(numeric.density());
    println!("closed form vs integrator: max entry difference {diff:.1e}");
    assert!(diff < 1e-6);
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
