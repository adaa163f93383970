// Atom → field conversion by one Jaynes–Cummings interaction: the joint
// state, both reduced states, and the Kraus route to the same field state.

use jc_capacity::jc::{evolve_joint, kraus_apply, kraus_operators, JcParams};
use jc_capacity::qmat::{von_neumann_entropy, Mat2, QubitInput};
use num_complex::Complex64 as C64;

pub fn run_example() -> jc_capacity::Result<()> {
    let params = JcParams::with_detuning(1.0, 0.4, 2.0, 1.1)?;
    let input = QubitInput::new(0.7, C64::new(0.2, -0.3))?;

    let joint = evolve_joint(&input, &params);
    let field = joint.field();
    let atom = joint.atom();
    println!("field <1|rho|1> = {:.6}", field.get(1, 1).re);
    println!("atom  <e|rho|e> = {:.6}", atom.get(1, 1).re);
    // pure joint state: both halves carry the same entropy
    println!(
        "S(field) = {:.6}, S(atom) = {:.6}",
        von_neumann_entropy(&field)?,
        von_neumann_entropy(&atom)?
    );

    let (a1, a2) = kraus_operators(&params);
    let completeness = (a1.adjoint() * a1 + a2.adjoint() * a2).max_abs_diff(&Mat2::identity());
    let routes = kraus_apply(&params, &input).max_abs_diff(&field);
    println!("Kraus completeness error {completeness:.1e}, route difference {routes:.1e}");
    assert!(completeness < 1e-12 && routes < 1e-12);
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
