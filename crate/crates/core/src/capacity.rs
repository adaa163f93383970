//! Degradability, degrading maps, coherent information and the
//! single-letter quantum capacity of [`TransferChannel`]s.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::channel::TransferChannel;
use crate::error::{Error, Result};
use crate::jc::{evolve_photon_to_atom, JcParams};
use crate::qmat::{binary_entropy_unchecked, trace_distance, von_neumann_entropy, DensityMatrix, QubitInput};

/// Band around `|h_keep| = |h_env|` treated as the boundary.
pub const TIE_BAND: f64 = 1e-12;
/// Final bracket width of the golden-section search over `p`.
pub const OPTIMIZER_WIDTH: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegradabilityStatus {
    Degradable,
    AntiDegradable,
    Boundary,
}

impl DegradabilityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegradabilityStatus::Degradable => "Degradable",
            DegradabilityStatus::AntiDegradable => "AntiDegradable",
            DegradabilityStatus::Boundary => "Boundary",
        }
    }
}

impl std::fmt::Display for DegradabilityStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DegradabilityStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Degradable" => Ok(DegradabilityStatus::Degradable),
            "AntiDegradable" => Ok(DegradabilityStatus::AntiDegradable),
            "Boundary" => Ok(DegradabilityStatus::Boundary),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

/// Quantum capacity in qubits per use and the excited population of the
/// optimal diagonal input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityResult {
    pub status: DegradabilityStatus,
    pub q: f64,
    pub p_star: f64,
}

/// Compares the receiver and partner amplitudes.
///
/// For channels with leakage this follows the same `|h_keep|` vs `|h_env|`
/// rule; a leaky channel with `|h_keep| < |h_env|` is reported as
/// anti-degradable even though its full environment includes the decay
/// reservoirs.
pub fn classify(ch: &TransferChannel) -> DegradabilityStatus {
    let keep = ch.h_keep().norm();
    let env = ch.h_env().norm();
    if keep > env + TIE_BAND {
        DegradabilityStatus::Degradable
    } else if keep < env - TIE_BAND {
        DegradabilityStatus::AntiDegradable
    } else {
        DegradabilityStatus::Boundary
    }
}

/// Resonant second interaction `N` that turns the channel output into the
/// partner's state: `N(E(ρ)) = Ẽ(ρ)`.
///
/// Uses `g' = 1`, `Δ' = 0`, `sin(g't') = |h_env|/|h_keep|`, and the field
/// frequency `ν'` chosen so `i e^{iν't'} h_keep` has the phase of `h_env`.
pub fn degrading_map(ch: &TransferChannel) -> Result<JcParams> {
    if classify(ch) == DegradabilityStatus::AntiDegradable {
        return Err(Error::NotDegradable {
            keep_sq: ch.keep_sq(),
            env_sq: ch.env_sq(),
        });
    }
    let keep = ch.h_keep().norm();
    let env = ch.h_env().norm();
    if env == 0.0 {
        return JcParams::resonant(1.0, 0.0);
    }
    let angle = (env / keep).min(1.0).asin();
    let phase = wrap_phase(ch.h_env().arg() - ch.h_keep().arg() - FRAC_PI_2);
    let nu = phase / angle;
    JcParams::new(1.0, nu, nu, angle)
}

/// Degrading map of the complement, which exists when the channel is
/// anti-degradable: `N'(Ẽ(ρ)) = E(ρ)`.
pub fn anti_degrading_map(ch: &TransferChannel) -> Result<JcParams> {
    degrading_map(&ch.complement())
}

/// Loads a qubit state into a ground-state atom with a second interaction
/// and returns the atom.
pub fn apply_degrading_map(map: &JcParams, state: &DensityMatrix) -> Result<DensityMatrix> {
    let field = QubitInput::from_density(state)?;
    Ok(evolve_photon_to_atom(&field, map).atom())
}

/// Largest trace distance between `N(E(ρ))` and `Ẽ(ρ)` over `inputs`.
pub fn degrading_defect(ch: &TransferChannel, map: &JcParams, inputs: &[QubitInput]) -> Result<f64> {
    let complement = ch.complement();
    let mut worst = 0.0_f64;
    for input in inputs {
        let degraded = apply_degrading_map(map, &ch.apply(input))?;
        worst = worst.max(trace_distance(&degraded, &complement.apply(input))?);
    }
    Ok(worst)
}

/// `I_c = S(E(σ)) - S((E ⊗ I)(|ψ⟩⟨ψ|))` from the eigenvalues of the output and
/// of the extended state.
pub fn coherent_information(ch: &TransferChannel, p: f64, r: C64) -> Result<f64> {
    let input = QubitInput::new(p, r)?;
    let output = von_neumann_entropy(&ch.apply(&input))?;
    let joint = von_neumann_entropy(&ch.extended_apply_input(&input))?;
    let value = output - joint;
    debug_assert!(
        r != C64::new(0.0, 0.0) || (value - coherent_information_closed_form(ch.keep_sq(), p)).abs() < 1e-9,
        "eigenvalue and closed-form coherent information disagree"
    );
    Ok(value)
}

/// `H₂(|h|² p) - H₂((1 - |h|²) p)`, the coherent information of a diagonal
/// input through an amplitude-damping channel with keep probability `|h|²`.
pub fn coherent_information_closed_form(keep_sq: f64, p: f64) -> f64 {
    let keep = keep_sq.clamp(0.0, 1.0);
    let p = p.clamp(0.0, 1.0);
    binary_entropy_unchecked(keep * p) - binary_entropy_unchecked((1.0 - keep) * p)
}

/// Single-letter quantum capacity.
///
/// Degradable channels maximize the closed-form coherent information over
/// the input population; anything else has zero capacity with `p_star = 0`.
pub fn quantum_capacity(ch: &TransferChannel) -> CapacityResult {
    let status = classify(ch);
    if status != DegradabilityStatus::Degradable {
        return CapacityResult {
            status,
            q: 0.0,
            p_star: 0.0,
        };
    }
    let keep_sq = ch.keep_sq();
    let objective = |p| coherent_information_closed_form(keep_sq, p);
    let (coarse, _) = golden_section_max(objective, 0.0, 1.0, OPTIMIZER_WIDTH);
    let p_star = polish_stationary_point(keep_sq, coarse);
    let q = objective(p_star);
    if q > 0.0 {
        CapacityResult {
            status,
            q: q.min(1.0),
            p_star,
        }
    } else {
        CapacityResult {
            status,
            q: 0.0,
            p_star: 0.0,
        }
    }
}

/// Maximizes a unimodal function on `[lo, hi]` until the bracket is narrower
/// than `width`. Returns `(argmax, max)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, width: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `d/dp [H₂(ap) - H₂(bp)]` with `a = |h|²`, `b = 1 - |h|²`.
fn objective_slope(keep_sq: f64, p: f64) -> f64 {
    let term = |c: f64| {
        if c * p > 0.0 {
            c * ((1.0 - c * p) / (c * p)).log2()
        } else {
            0.0
        }
    };
    term(keep_sq) - term(1.0 - keep_sq)
}

/// Bisects the slope near the golden-section estimate. The objective is flat
/// at its peak, so comparing values pins `p` only to about `sqrt(ε)`; the
/// slope changes sign cleanly.
fn polish_stationary_point(keep_sq: f64, estimate: f64) -> f64 {
    let mut lo = (estimate - 1e-8).max(f64::MIN_POSITIVE);
    let mut hi = (estimate + 1e-8).min(1.0);
    if !(objective_slope(keep_sq, lo) > 0.0 && objective_slope(keep_sq, hi) < 0.0) {
        return estimate;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let slope = objective_slope(keep_sq, mid);
        if slope == 0.0 {
            return mid;
        } else if slope > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f = |p| coherent_information_closed_form(keep_sq, p);
    if f(lo) >= f(hi) {
        lo
    } else {
        hi
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(2.0 * PI);
    if wrapped > PI {
        wrapped - 2.0 * PI
    } else {
        wrapped
    }
}
