// A second atom–field interaction that turns the channel output into the
// environment's state, checked by trace distance.

use jc_capacity::capacity::{anti_degrading_map, classify, degrading_defect, degrading_map};
use jc_capacity::channel::TransferChannel;
use jc_capacity::jc::JcParams;
use jc_capacity::qmat::QubitInput;
use num_complex::Complex64 as C64;

pub fn run_example() -> jc_capacity::Result<()> {
    let inputs: Vec<QubitInput> = (0..=8)
        .map(|k| {
            let p = k as f64 / 8.0;
            QubitInput::new(p, C64::from_polar((p * (1.0 - p)).sqrt(), 0.8 * k as f64))
        })
        .collect::<jc_capacity::Result<_>>()?;

    for t in [0.4, 0.9, 1.3] {
        let ch = TransferChannel::atom_to_field(&JcParams::with_detuning(1.0, 0.5, 1.5, t)?);
        let status = classify(&ch);
        let (label, defect, map) = match degrading_map(&ch) {
            Ok(map) => ("degrading", degrading_defect(&ch, &map, &inputs)?, map),
            Err(_) => {
                let map = anti_degrading_map(&ch)?;
                (
                    "anti-degrading",
                    degrading_defect(&ch.complement(), &map, &inputs)?,
                    map,
                )
            }
        };
        println!(
            "t = {t}: |h|^2 = {:.4} {status}, {label} map g't' = {:.6}, nu' = {:.6}, distance {defect:.1e}",
            ch.keep_sq(),
            map.g * map.t,
            map.nu
        );
        assert!(defect < 1e-9);
    }
    Ok(())
}

fn main() -> jc_capacity::Result<()> {
    run_example()
}
