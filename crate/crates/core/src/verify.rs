//! Cross-checks of every closed form against its independent oracle.
//!
//! Each suite reports the largest deviation it saw and, on failure, the
//! first offending parameter tuple in grid order.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::capacity::{
    anti_degrading_map, coherent_information, coherent_information_closed_form, degrading_defect, degrading_map,
    quantum_capacity,
};
use crate::channel::{concatenate, LossChannel, TransferChannel};
use crate::error::Result;
use crate::jc::{
    evolve_joint, evolve_photon_to_atom, kraus_apply, kraus_operators, residual_amplitude_h2, transfer_amplitude_h1,
    unitary, JcParams, JointState,
};
use crate::lindblad::{
    closed_form_state, decayed_conversion, degradability_form, integrate_master_equation, DecayParams,
};
use crate::oracle::{capacity_grid_search, jc_block_propagator};
use crate::qmat::{Mat2, QubitInput};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("expected quick or full, got `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<28} cases={:<6} max_dev={:.3e} tol={:.0e}",
            self.name, self.cases, self.max_deviation, self.tolerance
        )?;
        if let Some(fail) = &self.first_failure {
            write!(f, " first failure: {fail}")?;
        }
        Ok(())
    }
}

struct Tracker {
    report: SuiteReport,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tracker {
            report: SuiteReport {
                name,
                cases: 0,
                max_deviation: 0.0,
                tolerance,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, deviation: f64, describe: impl FnOnce() -> String) {
        self.report.cases += 1;
        // NaN counts as a failure
        let ok = deviation <= self.report.tolerance;
        if deviation.is_nan() || deviation > self.report.max_deviation {
            self.report.max_deviation = deviation;
        }
        if !ok && self.report.first_failure.is_none() {
            self.report.first_failure = Some(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.report.cases += 1;
        if self.report.first_failure.is_none() {
            self.report.first_failure = Some(message);
        }
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    (0..n)
        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
        .collect()
}

/// `(g·t, Δ/g, ν/g)` grid at `g = 0.8`.
pub fn jc_grid(level: Level) -> Vec<JcParams> {
    let n = match level {
        Level::Quick => 4,
        Level::Full => 10,
    };
    let g = 0.8;
    let mut out = Vec::with_capacity(n * n * n);
    for gt in linspace(0.0, 2.0 * PI, n) {
        for delta in linspace(-2.0, 2.0, n) {
            for nu in linspace(0.0, 3.0, n) {
                out.push(JcParams::with_detuning(g, delta * g, nu * g, gt / g).expect("grid parameters are valid"));
            }
        }
    }
    out
}

/// Decay grid: `g = 1`, `g·t` in 9 steps over `[0, 2π]`, `Δ ∈ {0, ½, 1, 2}`,
/// `κ ∈ {0, 0.1, 0.5}`, `γ ∈ {0, 0.05}`; 216 points, `ν = 0.25`.
pub fn lindblad_grid() -> Vec<(JcParams, DecayParams)> {
    let mut out = Vec::with_capacity(216);
    for gt in linspace(0.0, 2.0 * PI, 9) {
        for delta in [0.0, 0.5, 1.0, 2.0] {
            for kappa in [0.0, 0.1, 0.5] {
                for gamma in [0.0, 0.05] {
                    let jc = JcParams::with_detuning(1.0, delta, 0.25, gt).expect("grid parameters are valid");
                    out.push((jc, DecayParams::new(kappa, gamma).expect("grid rates are valid")));
                }
            }
        }
    }
    out
}

fn lindblad_points(level: Level) -> Vec<(JcParams, DecayParams)> {
    let grid = lindblad_grid();
    match level {
        Level::Full => grid,
        Level::Quick => (0..20).map(|i| grid[i * grid.len() / 20]).collect(),
    }
}

fn describe_jc(p: &JcParams) -> String {
    format!("(g={}, delta={}, nu={}, t={})", p.g, p.delta(), p.nu, p.t)
}

fn describe_decay(p: &JcParams, d: &DecayParams) -> String {
    format!(
        "(g={}, delta={}, nu={}, t={}, kappa={}, gamma={})",
        p.g,
        p.delta(),
        p.nu,
        p.t,
        d.kappa,
        d.gamma_at
    )
}

/// Inputs spread over the Bloch ball, including the poles.
pub fn probe_inputs() -> Vec<QubitInput> {
    let mut out = vec![QubitInput::ground(), QubitInput::excited()];
    for (i, p) in linspace(0.1, 0.9, 6).into_iter().enumerate() {
        let radius = (p * (1.0 - p)).sqrt();
        for (k, scale) in [0.0, 0.5, 1.0].into_iter().enumerate() {
            let phase = 0.7 * i as f64 + 2.1 * k as f64;
            out.push(QubitInput::new(p, C64::from_polar(scale * radius, phase)).expect("inside the Bloch ball"));
        }
    }
    out
}

fn kraus_completeness(level: Level) -> SuiteReport {
    let mut t = Tracker::new("kraus_completeness", 1e-12);
    for p in jc_grid(level) {
        let (a1, a2) = kraus_operators(&p);
        let sum = a1.adjoint() * a1 + a2.adjoint() * a2;
        t.record(sum.max_abs_diff(&Mat2::identity()), || describe_jc(&p));
    }
    t.finish()
}

fn propagator_oracle(level: Level) -> SuiteReport {
    let mut t = Tracker::new("propagator_vs_expm", 1e-9);
    for p in jc_grid(level) {
        let closed = unitary(&p);
        let numeric = jc_block_propagator(&p);
        let dev = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (closed.0[i][j] - numeric.0[i][j]).norm())
            .fold(0.0, f64::max);
        t.record(dev, || describe_jc(&p));
    }
    t.finish()
}

fn complement_identity(level: Level) -> SuiteReport {
    let mut t = Tracker::new("complement_identity", 1e-12);
    for p in jc_grid(level) {
        let dev = (transfer_amplitude_h1(&p).norm_sqr() + residual_amplitude_h2(&p).norm_sqr() - 1.0).abs();
        t.record(dev, || describe_jc(&p));
    }
    t.finish()
}

fn kraus_vs_joint(level: Level) -> SuiteReport {
    let mut t = Tracker::new("kraus_vs_joint_route", 1e-12);
    let inputs = probe_inputs();
    for p in jc_grid(level) {
        for input in &inputs {
            let joint = evolve_joint(input, &p).field();
            t.record(kraus_apply(&p, input).max_abs_diff(&joint), || {
                format!("{} p={} r={}", describe_jc(&p), input.p, input.r)
            });
        }
    }
    t.finish()
}

fn coherent_information_routes(level: Level) -> Result<SuiteReport> {
    let n = match level {
        Level::Quick => 11,
        Level::Full => 51,
    };
    let mut t = Tracker::new("coherent_info_two_routes", 1e-9);
    for keep_sq in linspace(0.0, 1.0, n) {
        let ch = TransferChannel::from_keep_probability(keep_sq)?;
        for p in linspace(0.0, 1.0, n) {
            let eigen = coherent_information(&ch, p, C64::new(0.0, 0.0))?;
            let dev = (eigen - coherent_information_closed_form(keep_sq, p)).abs();
            t.record(dev, || format!("(|h|^2={keep_sq}, p={p})"));
            let mut spectrum = ch.extended_apply(p)?.eigenvalues()?;
            spectrum.sort_by(|a, b| b.total_cmp(a));
            let rank_excess = spectrum[2].abs().max(spectrum[3].abs());
            t.record(rank_excess, || format!("rank > 2 at (|h|^2={keep_sq}, p={p})"));
        }
    }
    Ok(t.finish())
}

fn degrading_maps(level: Level) -> Result<SuiteReport> {
    let n = match level {
        Level::Quick => 5,
        Level::Full => 21,
    };
    let mut t = Tracker::new("degrading_map_composition", 1e-9);
    let inputs = probe_inputs();
    for (i, keep_sq) in linspace(0.5, 1.0, n).into_iter().enumerate() {
        for k in 0..4 {
            let keep = C64::from_polar(keep_sq.sqrt(), 0.9 * i as f64 - 1.3 * k as f64);
            let env = C64::from_polar((1.0 - keep_sq).sqrt(), 0.4 * k as f64 + 0.2);
            let ch = TransferChannel::new(keep, env)?;
            let describe = || format!("(h_keep={keep}, h_env={env})");
            match degrading_map(&ch) {
                Ok(map) => t.record(degrading_defect(&ch, &map, &inputs)?, describe),
                Err(e) => t.fail(format!("{} {e}", describe())),
            }
            // the mirror channel has the roles swapped
            let mirror = ch.complement();
            match anti_degrading_map(&mirror) {
                Ok(map) => t.record(degrading_defect(&mirror.complement(), &map, &inputs)?, || {
                    format!("mirror {}", describe())
                }),
                Err(e) => t.fail(format!("mirror {} {e}", describe())),
            }
        }
    }
    Ok(t.finish())
}

fn optimizer_vs_grid(_level: Level) -> Result<SuiteReport> {
    let mut t = Tracker::new("optimizer_vs_grid_oracle", 1e-9);
    for keep_sq in [0.75, 0.9] {
        let fast = quantum_capacity(&TransferChannel::from_keep_probability(keep_sq)?);
        let (q, _) = capacity_grid_search(keep_sq, 1e-5);
        t.record((fast.q - q).abs(), || format!("(|h|^2={keep_sq})"));
    }
    Ok(t.finish())
}

fn concatenation_law(level: Level) -> Result<SuiteReport> {
    let mut t = Tracker::new("concatenation_law", 1e-12);
    let grid = jc_grid(level);
    let receivers: Vec<&JcParams> = grid.iter().step_by(7).collect();
    for (i, sender) in grid.iter().enumerate() {
        let receiver = receivers[i % receivers.len()];
        let transmittance = (i % 11) as f64 / 10.0;
        let loss = LossChannel::new(transmittance)?;
        let chained = concatenate(sender, &loss, receiver);
        let expected = transmittance
            * TransferChannel::atom_to_field(sender).keep_sq()
            * TransferChannel::photon_to_atom(receiver).keep_sq();
        t.record((chained.keep_sq() - expected).abs(), || {
            format!(
                "sender {} T={transmittance} receiver {}",
                describe_jc(sender),
                describe_jc(receiver)
            )
        });
        let plain = quantum_capacity(&TransferChannel::from_keep_probability(chained.keep_sq())?);
        t.record((quantum_capacity(&chained).q - plain.q).abs(), || {
            format!("capacity at |h4|^2={}", chained.keep_sq())
        });
    }
    Ok(t.finish())
}

const ENTRY_LABELS: [&str; 4] = ["d0", "d1", "u0", "u1"];

/// Largest entry deviation and its label.
fn worst_entry(a: &JointState, b: &JointState) -> (f64, String) {
    let (a, b) = (a.to_mat(), b.to_mat());
    let mut worst = (0.0, String::new());
    for (i, row) in ENTRY_LABELS.iter().enumerate() {
        for (j, col) in ENTRY_LABELS.iter().enumerate() {
            let dev = (a.0[i][j] - b.0[i][j]).norm();
            if dev.is_nan() || dev > worst.0 {
                worst = (dev, format!("rho[{row},{col}]"));
            }
        }
    }
    worst
}

/// Initial photon state used by the decay suites; exercises every entry.
pub fn lindblad_probe_input() -> QubitInput {
    QubitInput::new(0.6, C64::new(0.3, 0.2)).expect("valid probe input")
}

fn lindblad_gate(level: Level) -> SuiteReport {
    let mut t = Tracker::new("lindblad_closed_vs_rk4", 1e-6);
    let init = lindblad_probe_input();
    let start = JointState::photon_with_ground_atom(&init);
    let outcomes: Vec<_> = lindblad_points(level)
        .par_iter()
        .map(|(jc, d)| {
            let closed = closed_form_state(jc, d, &init);
            let numeric = integrate_master_equation(jc, d, &start);
            (*jc, *d, closed.and_then(|c| numeric.map(|n| worst_entry(&c, &n))))
        })
        .collect();
    for (jc, d, outcome) in outcomes {
        match outcome {
            Ok((dev, entry)) => t.record(dev, || format!("{entry} at {}", describe_decay(&jc, &d))),
            Err(e) => t.fail(format!("{} {e}", describe_decay(&jc, &d))),
        }
    }
    t.finish()
}

fn lindblad_unitary_limit(level: Level) -> SuiteReport {
    let mut t = Tracker::new("lindblad_unitary_limit", 1e-9);
    let init = lindblad_probe_input();
    for (jc, d) in lindblad_points(level)
        .into_iter()
        .filter(|(_, d)| d.kappa == 0.0 && d.gamma_at == 0.0)
    {
        match closed_form_state(&jc, &d, &init) {
            Ok(closed) => {
                let (dev, entry) = worst_entry(&closed, &evolve_photon_to_atom(&init, &jc));
                t.record(dev, || format!("{entry} at {}", describe_decay(&jc, &d)));
                if jc.delta() == 0.0 {
                    let excited = closed.atom().get(1, 1).re;
                    let expected = init.p * (jc.g * jc.t).sin().powi(2);
                    t.record((excited - expected).abs(), || {
                        format!("sin^2(gt) population at {}", describe_decay(&jc, &d))
                    });
                }
            }
            Err(e) => t.fail(format!("{} {e}", describe_decay(&jc, &d))),
        }
    }
    t.finish()
}

/// Points with `||h5|² − |h6|²|` inside this band are not compared.
pub const CONDITION_BAND: f64 = 1e-10;

fn condition_equivalence(level: Level) -> SuiteReport {
    let mut t = Tracker::new("degradability_condition", 0.0);
    for (jc, d) in lindblad_points(level) {
        match decayed_conversion(&jc, &d) {
            Ok(conv) => {
                if conv.magnitude_margin().abs() <= CONDITION_BAND {
                    continue;
                }
                let by_form = degradability_form(&conv) <= 0.0;
                let by_magnitude = conv.magnitude_margin() >= 0.0;
                t.record(if by_form == by_magnitude { 0.0 } else { 1.0 }, || {
                    format!(
                        "form={} margin={} at {}",
                        degradability_form(&conv),
                        conv.magnitude_margin(),
                        describe_decay(&jc, &d)
                    )
                });
            }
            Err(e) => t.fail(format!("{} {e}", describe_decay(&jc, &d))),
        }
    }
    t.finish()
}

/// Runs every suite. Errors from the library itself are reported as suite
/// failures rather than aborting the run.
pub fn run_verify(level: Level) -> Vec<SuiteReport> {
    let fallible = |name: &'static str, r: Result<SuiteReport>| {
        r.unwrap_or_else(|e| {
            let mut t = Tracker::new(name, 0.0);
            t.fail(e.to_string());
            t.finish()
        })
    };
    vec![
        kraus_completeness(level),
        propagator_oracle(level),
        complement_identity(level),
        kraus_vs_joint(level),
        fallible("coherent_info_two_routes", coherent_information_routes(level)),
        fallible("degrading_map_composition", degrading_maps(level)),
        fallible("optimizer_vs_grid_oracle", optimizer_vs_grid(level)),
        fallible("concatenation_law", concatenation_law(level)),
        lindblad_gate(level),
        lindblad_unitary_limit(level),
        condition_equivalence(level),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_expected_sizes() {
        assert_eq!(jc_grid(Level::Full).len(), 1000);
        assert_eq!(lindblad_grid().len(), 216);
        assert_eq!(lindblad_points(Level::Quick).len(), 20);
        assert_eq!(probe_inputs().len(), 20);
    }

    #[test]
    fn quick_suite_passes() {
        for report in run_verify(Level::Quick) {
            assert!(report.passed(), "{report}");
            assert!(report.cases > 0, "{report}");
        }
    }

    #[test]
    fn tracker_reports_first_failure_only() {
        let mut t = Tracker::new("x", 1.0);
        t.record(0.5, || "a".into());
        t.record(2.0, || "b".into());
        t.record(3.0, || "c".into());
        let r = t.finish();
        assert_eq!(r.first_failure.as_deref(), Some("b"));
        assert_eq!(r.max_deviation, 3.0);
        assert!(!r.passed());
    }
}
