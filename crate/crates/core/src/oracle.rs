//! Independent reference computations used to cross-check the closed forms:
//! a scaling-and-squaring matrix exponential for the Jaynes–Cummings
//! propagator and an exhaustive grid search for the capacity maximum.

use num_complex::Complex64 as C64;

use crate::capacity::coherent_information_closed_form;
use crate::jc::JcParams;
use crate::qmat::{CMat, Mat3};

/// Taylor terms are summed until the next term is below this (relative to
/// the scaled matrix norm of order one).
const TAYLOR_REMAINDER: f64 = 1e-17;

/// `exp(a)` by scaling and squaring with a Taylor core.
pub fn expm<const N: usize>(a: &CMat<N>) -> CMat<N> {
    let norm = (0..N)
        .map(|i| (0..N).map(|j| a.0[i][j].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let scaled = a.scale(C64::new(0.5_f64.powi(squarings as i32), 0.0));
    let mut sum = CMat::<N>::identity();
    let mut term = CMat::<N>::identity();
    for k in 1..64 {
        term = (term * scaled).scale(C64::new(1.0 / k as f64, 0.0));
        sum = sum + term;
        let size = term.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if size < TAYLOR_REMAINDER {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Hamiltonian on `|↓0⟩, |↓1⟩, |↑0⟩`, built from
/// `ν(a†a + ½) + (ω/2)σz + g(a†σ₋ + aσ₊)`.
pub fn jc_block_hamiltonian(params: &JcParams) -> Mat3 {
    let (nu, omega, g) = (params.nu, params.omega, params.g);
    let mut h = Mat3::diag([0.5 * nu - 0.5 * omega, 1.5 * nu - 0.5 * omega, 0.5 * nu + 0.5 * omega]);
    h.0[1][2] = C64::new(g, 0.0);
    h.0[2][1] = C64::new(g, 0.0);
    h
}

/// `exp(-iHt)` on the excitation-≤1 block, numerically.
pub fn jc_block_propagator(params: &JcParams) -> Mat3 {
    expm(&jc_block_hamiltonian(params).scale(C64::new(0.0, -params.t)))
}

/// Maximum of `H₂(|h|²p) - H₂((1-|h|²)p)` over the grid `p = 0, step, …, 1`.
/// Returns `(q, p_star)`.
pub fn capacity_grid_search(keep_sq: f64, step: f64) -> (f64, f64) {
    let n = (1.0 / step).round() as usize;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..=n {
        let p = k as f64 / n as f64;
        let v = coherent_information_closed_form(keep_sq, p);
        if v > best.0 {
            best = (v, p);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{Mat2, ONE, ZERO};

    #[test]
    fn expm_of_pauli_rotation() {
        // exp(-iθX) = cos θ I - i sin θ X
        let theta = 2.7;
        let x = CMat([[ZERO, ONE], [ONE, ZERO]]);
        let u = expm(&x.scale(C64::new(0.0, -theta)));
        let expected = Mat2::identity().scale(C64::new(theta.cos(), 0.0)) + x.scale(C64::new(0.0, -theta.sin()));
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn expm_of_diagonal() {
        let d = Mat3::diag([0.3, -4.0, 12.0]);
        let e = expm(&d);
        for (i, v) in [0.3_f64, -4.0, 12.0].iter().enumerate() {
            assert!((e.0[i][i].re - v.exp()).abs() < 1e-13 * v.exp().max(1.0));
        }
    }

    #[test]
    fn grid_search_ideal_channel() {
        let (q, p) = capacity_grid_search(1.0, 1e-3);
        assert_eq!(q, 1.0);
        assert_eq!(p, 0.5);
    }
}
