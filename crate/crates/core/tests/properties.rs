use std::f64::consts::PI;

use jc_capacity::capacity::{
    anti_degrading_map, coherent_information, degrading_defect, degrading_map, quantum_capacity,
};
use jc_capacity::channel::{concatenate, LossChannel, TransferChannel};
use jc_capacity::jc::{
    evolve_joint, kraus_apply, photon_residual_amplitude, residual_amplitude_h2, transfer_amplitude_h1, unitary,
    JcParams, JointState,
};
use jc_capacity::lindblad::{closed_form_state, decayed_conversion, integrate_master_equation, DecayParams};
use jc_capacity::qmat::{
    binary_entropy, kron, partial_trace, partial_trace_mat, von_neumann_entropy, CMat, DensityMatrix, Keep, Mat2, Mat4,
    QubitInput,
};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = JcParams> {
    (0.05..3.0, -3.0..3.0, 0.0..5.0, 0.0..10.0)
        .prop_map(|(g, delta, nu, t)| JcParams::with_detuning(g, delta, nu, t).unwrap())
}

fn input() -> impl Strategy<Value = QubitInput> {
    (0.0..=1.0, 0.0..=1.0, -PI..PI).prop_map(|(p, s, phase): (f64, f64, f64)| {
        QubitInput::new(p, C64::from_polar(s * (p * (1.0 - p)).sqrt(), phase)).unwrap()
    })
}

fn channel(keep_lo: f64, keep_hi: f64) -> impl Strategy<Value = TransferChannel> {
    (keep_lo..=keep_hi, -PI..PI, -PI..PI).prop_map(|(k, a, b): (f64, f64, f64)| {
        TransferChannel::new(C64::from_polar(k.sqrt(), a), C64::from_polar((1.0 - k).sqrt(), b)).unwrap()
    })
}

fn unitary2() -> impl Strategy<Value = Mat2> {
    (0.0..PI, -PI..PI, -PI..PI, -PI..PI).prop_map(|(theta, phi, psi, alpha): (f64, f64, f64, f64)| {
        let g = C64::from_polar(1.0, alpha);
        CMat([
            [
                g * C64::from_polar(theta.cos(), phi),
                g * C64::from_polar(theta.sin(), psi),
            ],
            [
                -g * C64::from_polar(theta.sin(), -psi),
                g * C64::from_polar(theta.cos(), -phi),
            ],
        ])
    })
}

fn density4() -> impl Strategy<Value = Mat4> {
    prop::collection::vec(-1.0..1.0, 32).prop_map(|v: Vec<f64>| {
        let a = Mat4::from_fn(|i, j| C64::new(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]));
        let m = a * a.adjoint();
        let tr = m.trace().re;
        m.scale(C64::new(1.0 / tr, 0.0))
    })
}

fn decay() -> impl Strategy<Value = DecayParams> {
    (0.0..1.0, 0.0..0.3).prop_map(|(k, g)| DecayParams::new(k, g).unwrap())
}

proptest! {
    #[test]
    fn entropy_is_basis_independent(rho in density4(), u1 in unitary2(), u2 in unitary2(), p in params()) {
        let u = kron(&u1, &u2) * unitary(&p);
        let before = von_neumann_entropy(&DensityMatrix::from_mat4(rho).unwrap()).unwrap();
        let after = von_neumann_entropy(&DensityMatrix::from_mat4(rho.conjugate_by(&u)).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-10, "{before} vs {after}");
    }

    #[test]
    fn binary_entropy_is_diagonal_entropy(x in 0.0..=1.0f64) {
        let diag = DensityMatrix::from_mat2(Mat2::diag([x, 1.0 - x])).unwrap();
        prop_assert!((binary_entropy(x).unwrap() - von_neumann_entropy(&diag).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_is_linear_and_trace_preserving(a in density4(), b in density4(), w in 0.0..=1.0f64) {
        let mix = a.scale(C64::new(w, 0.0)) + b.scale(C64::new(1.0 - w, 0.0));
        let rho = DensityMatrix::from_mat4(mix).unwrap();
        for keep in [Keep::First, Keep::Second] {
            let reduced = partial_trace(&rho, keep).unwrap().to_mat2().unwrap();
            let separate = partial_trace_mat(&a, keep).scale(C64::new(w, 0.0))
                + partial_trace_mat(&b, keep).scale(C64::new(1.0 - w, 0.0));
            prop_assert!(reduced.max_abs_diff(&separate) < 1e-12);
            prop_assert!((reduced.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn amplitudes_are_complementary(p in params()) {
        let h1 = transfer_amplitude_h1(&p).norm_sqr();
        prop_assert!((h1 + residual_amplitude_h2(&p).norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((h1 + photon_residual_amplitude(&p).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_evolution_is_unitary_and_freezes_double_excitation(p in params(), inp in input()) {
        let joint = evolve_joint(&inp, &p);
        let mut expected = inp.to_density().eigenvalues().unwrap();
        expected.extend([0.0, 0.0]);
        expected.sort_by(|a, b| b.total_cmp(a));
        let found = joint.density().eigenvalues().unwrap();
        for (e, f) in expected.iter().zip(&found) {
            prop_assert!((e - f).abs() < 1e-10, "{expected:?} vs {found:?}");
        }
        prop_assert!(joint.doubly_excited_weight() < 1e-15);
    }

    #[test]
    fn kraus_route_matches_joint_route(p in params(), inp in input()) {
        prop_assert!(kraus_apply(&p, &inp).max_abs_diff(&evolve_joint(&inp, &p).field()) < 1e-12);
    }

    #[test]
    fn channel_output_is_a_state(ch in channel(0.0, 1.0), inp in input()) {
        let out = ch.apply(&inp);
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(*out.eigenvalues().unwrap().last().unwrap() > -1e-12);
    }

    #[test]
    fn concatenation_matches_stepwise_composition(
        sender in params(), receiver in params(), t in 0.0..=1.0f64, inp in input()
    ) {
        let loss = LossChannel::new(t).unwrap();
        let direct = concatenate(&sender, &loss, &receiver).apply(&inp);
        let mid = QubitInput::from_density(&TransferChannel::atom_to_field(&sender).apply(&inp)).unwrap();
        let fiber = QubitInput::from_density(&loss.apply(&mid)).unwrap();
        let stepwise = TransferChannel::photon_to_atom(&receiver).apply(&fiber);
        for (i, j) in [(0, 0), (1, 1)] {
            prop_assert!((direct.get(i, j) - stepwise.get(i, j)).norm() < 1e-12);
        }
        // the concatenated amplitude drops one overall phase
        prop_assert!((direct.get(0, 1).norm() - stepwise.get(0, 1).norm()).abs() < 1e-12);
    }

    #[test]
    fn entropy_exchange(ch in channel(0.0, 1.0), p in 0.0..=1.0f64) {
        let joint = von_neumann_entropy(&ch.extended_apply(p).unwrap()).unwrap();
        let env = von_neumann_entropy(&ch.complement().apply(&QubitInput::diagonal(p).unwrap())).unwrap();
        prop_assert!((joint - env).abs() < 1e-10);
    }

    #[test]
    fn extended_state_has_rank_two(ch in channel(0.0, 1.0), p in 0.0..=1.0f64) {
        let mut eig = ch.extended_apply(p).unwrap().eigenvalues().unwrap();
        eig.sort_by(|a, b| b.total_cmp(a));
        prop_assert!(eig[2].abs() < 1e-12 && eig[3].abs() < 1e-12, "{eig:?}");
    }

    #[test]
    fn purification_choice_does_not_matter(ch in channel(0.0, 1.0), inp in input()) {
        // any purification gives the complement's output entropy
        let joint = von_neumann_entropy(&ch.extended_apply_input(&inp)).unwrap();
        let env = von_neumann_entropy(&ch.complement().apply(&inp)).unwrap();
        prop_assert!((joint - env).abs() < 1e-10);
        if inp.r.norm() == 0.0 {
            let canonical = von_neumann_entropy(&ch.extended_apply(inp.p).unwrap()).unwrap();
            prop_assert!((joint - canonical).abs() < 1e-10);
        }
    }

    #[test]
    fn coherence_never_helps(ch in channel(0.5 + 1e-9, 1.0), inp in input()) {
        let with = coherent_information(&ch, inp.p, inp.r).unwrap();
        let without = coherent_information(&ch, inp.p, C64::new(0.0, 0.0)).unwrap();
        prop_assert!(with <= without + 1e-12, "{with} > {without}");
    }

    #[test]
    fn coherent_information_is_concave(keep in 0.5001..=1.0f64) {
        let ch = TransferChannel::from_keep_probability(keep).unwrap();
        let f = |p: f64| coherent_information(&ch, p, C64::new(0.0, 0.0)).unwrap();
        for k in 1..1000 {
            let p = k as f64 * 1e-3;
            let second = f(p + 1e-3) - 2.0 * f(p) + f(p - 1e-3);
            prop_assert!(second <= 1e-9, "p = {p}: {second}");
        }
    }

    #[test]
    fn degrading_map_is_sound(ch in channel(0.5, 1.0), inputs in prop::collection::vec(input(), 20)) {
        let map = degrading_map(&ch).unwrap();
        prop_assert!(degrading_defect(&ch, &map, &inputs).unwrap() <= 1e-9);
    }

    #[test]
    fn anti_degrading_map_is_sound(ch in channel(0.0, 0.5 - 1e-9), inputs in prop::collection::vec(input(), 20)) {
        prop_assert!(degrading_map(&ch).is_err());
        let map = anti_degrading_map(&ch).unwrap();
        prop_assert!(degrading_defect(&ch.complement(), &map, &inputs).unwrap() <= 1e-9);
    }

    #[test]
    fn capacity_is_monotone(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let q = |k: f64| quantum_capacity(&TransferChannel::from_keep_probability(k).unwrap()).q;
        prop_assert!(q(lo) <= q(hi) + 1e-12);
    }

    #[test]
    fn decayed_coherences_follow_populations(
        g in 0.2..2.0f64, delta in -2.0..2.0f64, t in 0.0..6.0f64, d in decay(), inp in input()
    ) {
        let jc = JcParams::with_detuning(g, delta, 0.3, t).unwrap();
        let Ok(state) = closed_form_state(&jc, &d, &inp) else { return Ok(()) };
        let m = state.to_mat();
        let r_sq = inp.r.norm_sqr();
        // index 2 = |↑0⟩ (atom), 1 = |↓1⟩ (photon)
        prop_assert!((m.0[0][2].norm_sqr() * inp.p - m.0[2][2].re * r_sq).abs() < 1e-8);
        prop_assert!((m.0[0][1].norm_sqr() * inp.p - m.0[1][1].re * r_sq).abs() < 1e-8);
        prop_assert!((m.0[0][0].re + m.0[1][1].re + m.0[2][2].re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn leakage_grows_with_decay(
        g in 0.2..2.0f64, delta in -2.0..2.0f64, t in 0.0..6.0f64,
        k in 0.0..1.0f64, dk in 0.0..0.5f64, gm in 0.0..0.3f64, dg in 0.0..0.2f64,
    ) {
        let jc = JcParams::with_detuning(g, delta, 0.0, t).unwrap();
        let kept = |kappa: f64, gamma: f64| {
            decayed_conversion(&jc, &DecayParams::new(kappa, gamma).unwrap())
                .map(|c| c.h5.norm_sqr() + c.h6.norm_sqr())
        };
        if let (Ok(base), Ok(more_k), Ok(more_g)) = (kept(k, gm), kept(k + dk, gm), kept(k, gm + dg)) {
            prop_assert!(more_k <= base + 1e-12 && more_g <= base + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn integrated_states_keep_double_excitation_empty(
        g in 0.2..2.0f64, delta in -2.0..2.0f64, t in 0.0..4.0f64, d in decay(), inp in input()
    ) {
        let jc = JcParams::with_detuning(g, delta, 0.1, t).unwrap();
        let state = integrate_master_equation(&jc, &d, &JointState::photon_with_ground_atom(&inp)).unwrap();
        prop_assert!(state.doubly_excited_weight() < 1e-12);
        prop_assert!((state.density().trace().re - 1.0).abs() < 1e-9);
    }
}
