//! Photon-to-atom transfer with cavity decay `κ` and atomic decay `γ`.
//!
//! The master equation
//! `dρ/dt = -i[H, ρ] + κ D[a]ρ + γ D[σ₋]ρ`, `D[L]ρ = LρL† - ½{L†L, ρ}`,
//! is solved two ways: in closed form on the excitation-≤1 block, and by
//! direct Runge–Kutta integration of the 4x4 density matrix. The second
//! serves as the oracle for the first.
//!
//! The initial state is a ground-state atom next to a field qubit
//! `(1-p)|0⟩⟨0| + r|0⟩⟨1| + r*|1⟩⟨0| + p|1⟩⟨1|`. In the closed forms the
//! transferred population sits on `|↑0⟩` and the remaining photon on `|↓1⟩`.

use num_complex::Complex64 as C64;

use crate::channel::TransferChannel;
use crate::error::{check_finite, Error, Result};
use crate::jc::{JcParams, JointBasis, JointState};
use crate::qmat::{DensityMatrix, Mat4, QubitInput, I, ZERO};

/// Entry-wise agreement required between successive step refinements.
pub const INTEGRATOR_TOL: f64 = 1e-10;
const INITIAL_STEP: f64 = 0.05;
const MAX_STEPS: usize = 1 << 22;
/// Smallest eigenvalue tolerated in an integrated state.
const INTEGRATED_FLOOR: f64 = 1e-8;

/// Cavity decay rate `kappa` and atomic decay rate `gamma_at`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayParams {
    pub kappa: f64,
    pub gamma_at: f64,
}

impl DecayParams {
    pub fn new(kappa: f64, gamma_at: f64) -> Result<Self> {
        check_finite("kappa", kappa)?;
        check_finite("gamma_at", gamma_at)?;
        if kappa < 0.0 || gamma_at < 0.0 {
            return Err(Error::InvalidParameter {
                name: if kappa < 0.0 { "kappa" } else { "gamma_at" },
                reason: "decay rates must be >= 0".into(),
            });
        }
        Ok(DecayParams { kappa, gamma_at })
    }

    pub fn none() -> Self {
        DecayParams {
            kappa: 0.0,
            gamma_at: 0.0,
        }
    }
}

/// Rates appearing in the closed-form solutions.
///
/// `y + i·signed_x()` is the principal square root of `z + 2iΔk₂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayConstants {
    /// `(κ + γ)/2`
    pub k1: f64,
    /// `(κ - γ)/2`
    pub k2: f64,
    /// `4g² + Δ² - k₂²`
    pub z: f64,
    /// `sqrt(½(sqrt(z² + 4k₂²Δ²) - z))`, relaxation-like rate, `≥ 0`
    pub x: f64,
    /// `sqrt(½(sqrt(z² + 4k₂²Δ²) + z))`, oscillation rate, `≥ 0`
    pub y: f64,
    delta: f64,
}

impl DecayConstants {
    /// `e^{-k₁ t} / (X² + Y²)`.
    pub fn eta(&self, t: f64) -> f64 {
        (-self.k1 * t).exp() / (self.x * self.x + self.y * self.y)
    }

    /// `X` carrying the sign of `Δ·k₂`, so that `Y + iX` is the principal
    /// square root of `z + 2iΔk₂`.
    pub fn signed_x(&self) -> f64 {
        if self.delta * self.k2 < 0.0 {
            -self.x
        } else {
            self.x
        }
    }
}

pub fn derive_constants(jc: &JcParams, d: &DecayParams) -> DecayConstants {
    let delta = jc.delta();
    let k1 = 0.5 * (d.kappa + d.gamma_at);
    let k2 = 0.5 * (d.kappa - d.gamma_at);
    let z = 4.0 * jc.g * jc.g + delta * delta - k2 * k2;
    let radius = z.hypot(2.0 * k2 * delta);
    let x = (0.5 * (radius - z)).max(0.0).sqrt();
    let y = (0.5 * (radius + z)).max(0.0).sqrt();
    DecayConstants { k1, k2, z, x, y, delta }
}

/// Closed-form amplitudes for unit initial photon amplitude.
struct Amplitudes {
    /// `ρ(|↓0⟩,|↑0⟩) / r`
    coherence_atom: C64,
    /// `ρ(|↓0⟩,|↓1⟩) / r`
    coherence_photon: C64,
    /// `ρ(|↑0⟩,|↑0⟩) / p`
    population_atom: f64,
    /// `ρ(|↓1⟩,|↓1⟩) / p`
    population_photon: f64,
    /// `(X²+Δ²) cosh Xt + (k₂X + ΔY) sinh Xt + (Y²-Δ²) cos Yt + (k₂Y - ΔX) sin Yt`
    /// in photon-to-atom orientation; `≤ 0` exactly when `|h₅| ≥ |h₆|`.
    degradability_form: f64,
}

fn amplitudes(jc: &JcParams, d: &DecayParams) -> Result<Amplitudes> {
    let c = derive_constants(jc, d);
    let norm = c.x * c.x + c.y * c.y;
    if norm <= 1e-24 * (1.0 + c.k2 * c.k2 + jc.g * jc.g) {
        return Err(Error::CriticalDamping);
    }
    let t = jc.t;
    let g = jc.g;
    let x = c.signed_x();
    let y = c.y;
    // the decaying photon is the source: k2 and Δ enter with reversed sign
    let k2 = -c.k2;
    let delta = -jc.delta();
    let eta = c.eta(t);

    let (cosh, sinh) = ((x * t).cosh(), (x * t).sinh());
    let (cos, sin) = ((y * t).cos(), (y * t).sin());
    let population_atom = 2.0 * g * g * eta * (cosh - cos);
    let population_photon = eta
        * ((x * x + delta * delta + 2.0 * g * g) * cosh
            + (k2 * x + delta * y) * sinh
            + (y * y - delta * delta - 2.0 * g * g) * cos
            + (k2 * y - delta * x) * sin);
    let degradability_form = (x * x + delta * delta) * cosh
        + (k2 * x + delta * y) * sinh
        + (y * y - delta * delta) * cos
        + (k2 * y - delta * x) * sin;

    let w = C64::new(x, y);
    let prefactor = C64::from_polar((-0.5 * c.k1 * t).exp(), (jc.nu + 0.5 * jc.delta()) * t);
    let grow = (0.5 * w * t).exp();
    let shrink = (-0.5 * w * t).exp();
    let coherence_atom = I * g / w * prefactor * (grow - shrink);
    let coherence_photon = prefactor / (2.0 * w) * (C64::new(k2, delta) * (grow - shrink) + w * (grow + shrink));

    Ok(Amplitudes {
        coherence_atom,
        coherence_photon,
        population_atom,
        population_photon,
        degradability_form,
    })
}

/// Joint state at `jc.t` from the closed-form solutions, starting from a
/// ground-state atom and the photon qubit `init`.
pub fn closed_form_state(jc: &JcParams, d: &DecayParams, init: &QubitInput) -> Result<JointState> {
    use JointBasis::*;
    let amp = amplitudes(jc, d)?;
    let p = init.p;
    let r = init.r;
    let atom = p * amp.population_atom;
    let photon = p * amp.population_photon;
    let mut m = Mat4::zeros();
    let mut set = |row: JointBasis, col: JointBasis, v: C64| {
        m.0[row as usize][col as usize] = v;
        m.0[col as usize][row as usize] = v.conj();
    };
    set(DownVacuum, DownVacuum, C64::new(1.0 - atom - photon, 0.0));
    set(UpVacuum, UpVacuum, C64::new(atom, 0.0));
    set(DownPhoton, DownPhoton, C64::new(photon, 0.0));
    set(DownVacuum, UpVacuum, r * amp.coherence_atom);
    set(DownVacuum, DownPhoton, r * amp.coherence_photon);
    // atom–photon cross coherence p·u_atom·conj(u_photon)
    set(
        UpVacuum,
        DownPhoton,
        p * amp.coherence_atom.conj() * amp.coherence_photon,
    );
    Ok(JointState::trusted(m))
}

/// Lindblad generator on the 4x4 joint space.
pub struct Lindbladian {
    hamiltonian: Mat4,
    field_lowering: Mat4,
    atom_lowering: Mat4,
    kappa: f64,
    gamma: f64,
}

impl Lindbladian {
    pub fn new(jc: &JcParams, d: &DecayParams) -> Self {
        let (nu, omega, g) = (jc.nu, jc.omega, jc.g);
        // energies ν(n + ½) ± ω/2 of |↓0⟩, |↓1⟩, |↑0⟩, |↑1⟩
        let mut h = Mat4::diag([
            0.5 * nu - 0.5 * omega,
            1.5 * nu - 0.5 * omega,
            0.5 * nu + 0.5 * omega,
            1.5 * nu + 0.5 * omega,
        ]);
        h.0[1][2] = C64::new(g, 0.0);
        h.0[2][1] = C64::new(g, 0.0);
        let mut a = Mat4::zeros();
        a.0[0][1] = C64::new(1.0, 0.0);
        a.0[2][3] = C64::new(1.0, 0.0);
        let mut s = Mat4::zeros();
        s.0[0][2] = C64::new(1.0, 0.0);
        s.0[1][3] = C64::new(1.0, 0.0);
        Lindbladian {
            hamiltonian: h,
            field_lowering: a,
            atom_lowering: s,
            kappa: d.kappa,
            gamma: d.gamma_at,
        }
    }

    pub fn apply(&self, rho: &Mat4) -> Mat4 {
        let h = &self.hamiltonian;
        let commutator = (*h * *rho - *rho * *h).scale(-I);
        commutator
            + dissipator(&self.field_lowering, rho).scale(C64::new(self.kappa, 0.0))
            + dissipator(&self.atom_lowering, rho).scale(C64::new(self.gamma, 0.0))
    }

    fn rk4(&self, start: &Mat4, t: f64, steps: usize) -> Mat4 {
        let h = t / steps as f64;
        let half = C64::new(0.5 * h, 0.0);
        let full = C64::new(h, 0.0);
        let sixth = C64::new(h / 6.0, 0.0);
        let two = C64::new(2.0, 0.0);
        let mut rho = *start;
        for _ in 0..steps {
            let k1 = self.apply(&rho);
            let k2 = self.apply(&(rho + k1.scale(half)));
            let k3 = self.apply(&(rho + k2.scale(half)));
            let k4 = self.apply(&(rho + k3.scale(full)));
            rho = rho + (k1 + k2.scale(two) + k3.scale(two) + k4).scale(sixth);
        }
        rho
    }
}

fn dissipator(l: &Mat4, rho: &Mat4) -> Mat4 {
    let ld = l.adjoint();
    let number = ld * *l;
    *l * *rho * ld - (number * *rho + *rho * number).scale(C64::new(0.5, 0.0))
}

/// Integrates the master equation from `init` over `jc.t` with classic RK4,
/// doubling the step count until two successive results agree to
/// [`INTEGRATOR_TOL`] in every entry.
pub fn integrate_master_equation(jc: &JcParams, d: &DecayParams, init: &JointState) -> Result<JointState> {
    let generator = Lindbladian::new(jc, d);
    let start = init.to_mat();
    let t = jc.t;
    if t == 0.0 {
        return Ok(init.clone());
    }
    let mut steps = ((t / INITIAL_STEP).ceil() as usize).max(1);
    let mut previous = generator.rk4(&start, t, steps);
    let mut last_diff = f64::INFINITY;
    while steps < MAX_STEPS {
        steps *= 2;
        let refined = generator.rk4(&start, t, steps);
        last_diff = refined.max_abs_diff(&previous);
        if last_diff < INTEGRATOR_TOL {
            let rho = DensityMatrix::with_floor(4, refined.entries(), INTEGRATED_FLOOR)?;
            return JointState::new(rho);
        }
        previous = refined;
    }
    Err(Error::StepFailure {
        target: INTEGRATOR_TOL,
        steps,
        last_diff,
    })
}

/// Photon-to-atom conversion under decay: `h₅` reaches the atom, `h₆` stays
/// in the cavity mode; the rest has leaked to the reservoirs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayedConversion {
    pub h5: C64,
    pub h6: C64,
    pub theta1: f64,
    pub theta2: f64,
    pub params: JcParams,
    pub decay: DecayParams,
    degradability_form: f64,
}

impl DecayedConversion {
    pub fn to_channel(&self) -> TransferChannel {
        TransferChannel::new(self.h5, self.h6).expect("decayed amplitudes are sub-normalized")
    }

    /// `|h₅|² - |h₆|²`.
    pub fn magnitude_margin(&self) -> f64 {
        self.h5.norm_sqr() - self.h6.norm_sqr()
    }
}

/// Extracts `(h₅, h₆)` at time `jc.t`: magnitudes from the populations at
/// `p = 1`, phases from the coherences at a real positive `r`.
pub fn decayed_conversion(jc: &JcParams, d: &DecayParams) -> Result<DecayedConversion> {
    let amp = amplitudes(jc, d)?;
    let theta1 = phase_or_zero(amp.coherence_atom);
    let theta2 = phase_or_zero(amp.coherence_photon);
    let h5 = C64::from_polar(amp.population_atom.max(0.0).sqrt(), theta1);
    let h6 = C64::from_polar(amp.population_photon.max(0.0).sqrt(), theta2);
    Ok(DecayedConversion {
        h5,
        h6,
        theta1,
        theta2,
        params: *jc,
        decay: *d,
        degradability_form: amp.degradability_form,
    })
}

fn phase_or_zero(z: C64) -> f64 {
    if z == ZERO {
        0.0
    } else {
        z.arg()
    }
}

/// Degradability from the hyperbolic/trigonometric inequality
/// `(X²+Δ²)cosh Xt + (k₂X+ΔY)sinh Xt + (Y²-Δ²)cos Yt + (k₂Y-ΔX)sin Yt ≤ 0`.
///
/// Algebraically the same test as `|h₅| ≥ |h₆|`.
pub fn decay_degradability(conv: &DecayedConversion) -> bool {
    conv.degradability_form <= 0.0
}

/// The left-hand side of the inequality used by [`decay_degradability`].
pub fn degradability_form(conv: &DecayedConversion) -> f64 {
    conv.degradability_form
}
