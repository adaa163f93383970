//! Closed-form Jaynes–Cummings evolution of a two-level atom and one cavity
//! mode, restricted to at most one excitation.
//!
//! Joint states use the ordered basis `|↓0⟩, |↓1⟩, |↑0⟩, |↑1⟩` (atom ⊗
//! field). The `|↑1⟩` slot is never populated from an excitation-≤1 start
//! and the evolution operator leaves it untouched.

use num_complex::Complex64 as C64;

use crate::error::{check_finite, Error, Result};
use crate::qmat::{kron, CMat, DensityMatrix, Keep, Mat2, Mat4, QubitInput, I, ONE, ZERO};

/// Parameters of one Jaynes–Cummings interaction: coupling `g`, field
/// frequency `nu`, atomic frequency `omega` and interaction time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JcParams {
    pub g: f64,
    pub nu: f64,
    pub omega: f64,
    pub t: f64,
}

impl JcParams {
    pub fn new(g: f64, nu: f64, omega: f64, t: f64) -> Result<Self> {
        check_finite("g", g)?;
        check_finite("nu", nu)?;
        check_finite("omega", omega)?;
        check_finite("t", t)?;
        if g < 0.0 {
            return Err(Error::InvalidParameter {
                name: "g",
                reason: format!("coupling must be >= 0, got {g}"),
            });
        }
        if t < 0.0 {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: format!("time must be >= 0, got {t}"),
            });
        }
        Ok(JcParams { g, nu, omega, t })
    }

    /// Field frequency `nu`, atomic frequency `nu + delta`.
    pub fn with_detuning(g: f64, delta: f64, nu: f64, t: f64) -> Result<Self> {
        Self::new(g, nu, nu + delta, t)
    }

    /// Resonant interaction in the frame where the field frequency is zero.
    pub fn resonant(g: f64, t: f64) -> Result<Self> {
        Self::new(g, 0.0, 0.0, t)
    }

    pub fn at_time(&self, t: f64) -> Result<Self> {
        Self::new(self.g, self.nu, self.omega, t)
    }

    /// `Δ = ω - ν`.
    pub fn delta(&self) -> f64 {
        self.omega - self.nu
    }

    /// `Ω = sqrt(g² + Δ²/4)`.
    pub fn rabi(&self) -> f64 {
        self.g.hypot(0.5 * self.delta())
    }

    /// `sin(Ωt)/Ω`, finite as `Ω → 0`.
    fn sin_over_rabi(&self) -> f64 {
        let x = self.rabi() * self.t;
        if x.abs() < 1e-6 {
            self.t * (1.0 - x * x / 6.0)
        } else {
            x.sin() / self.rabi()
        }
    }

    /// `e^{i(Δ/2 + ν)t}`, the phase shared by both transfer amplitudes.
    fn carrier(&self) -> C64 {
        C64::from_polar(1.0, (0.5 * self.delta() + self.nu) * self.t)
    }

    /// Evolution of `|↓0⟩`: `e^{iΔt/2}`.
    fn ground_phase(&self) -> C64 {
        C64::from_polar(1.0, 0.5 * self.delta() * self.t)
    }

    /// `e^{-iνt}`, the one-excitation sector phase.
    fn sector_phase(&self) -> C64 {
        C64::from_polar(1.0, -self.nu * self.t)
    }

    /// `-i sin(Ωt) g/Ω`: amplitude for the excitation to change hands.
    fn swap_amplitude(&self) -> C64 {
        -I * (self.g * self.sin_over_rabi())
    }

    /// `cos(Ωt) ∓ i sin(Ωt) Δ/(2Ω)`; minus for `|↑0⟩`, plus for `|↓1⟩`.
    fn stay_amplitude(&self, atom_excited: bool) -> C64 {
        let sign = if atom_excited { -1.0 } else { 1.0 };
        C64::new(
            (self.rabi() * self.t).cos(),
            sign * 0.5 * self.delta() * self.sin_over_rabi(),
        )
    }
}

/// Atom-to-field transfer amplitude
/// `h₁ = i e^{i(Δ/2+ν)t} sin(Ωt) g/Ω`.
pub fn transfer_amplitude_h1(params: &JcParams) -> C64 {
    I * params.carrier() * (params.g * params.sin_over_rabi())
}

/// Amplitude left on the atom,
/// `h₂ = e^{i(Δ/2+ν)t} [cos(Ωt) + i sin(Ωt) Δ/(2Ω)]`.
pub fn residual_amplitude_h2(params: &JcParams) -> C64 {
    params.carrier() * params.stay_amplitude(false)
}

/// Residual photon amplitude when the interaction moves a photon onto a
/// ground-state atom: `e^{i(Δ/2+ν)t} [cos(Ωt) - i sin(Ωt) Δ/(2Ω)]`.
///
/// The transferred amplitude in that direction equals [`transfer_amplitude_h1`].
pub fn photon_residual_amplitude(params: &JcParams) -> C64 {
    params.carrier() * params.stay_amplitude(true)
}

/// Evolution operator on `|↓0⟩, |↓1⟩, |↑0⟩, |↑1⟩`.
pub fn unitary(params: &JcParams) -> Mat4 {
    let sector = params.sector_phase();
    let swap = sector * params.swap_amplitude();
    let mut u = Mat4::zeros();
    u.0[0][0] = params.ground_phase();
    u.0[1][1] = sector * params.stay_amplitude(false);
    u.0[2][2] = sector * params.stay_amplitude(true);
    u.0[1][2] = swap;
    u.0[2][1] = swap;
    u.0[3][3] = ONE;
    u
}

/// Kraus pair `(A₁, A₂)` of the atom-to-field conversion. Rows index the
/// field `|0⟩, |1⟩`; columns the atom `|↓⟩, |↑⟩`.
///
/// `A₁` collects the branch where the atom ends in `|↓⟩`, `A₂` the branch
/// where it stays in `|↑⟩`.
pub fn kraus_operators(params: &JcParams) -> (Mat2, Mat2) {
    let sector = params.sector_phase();
    let a1 = CMat([[params.ground_phase(), ZERO], [ZERO, sector * params.swap_amplitude()]]);
    let a2 = CMat([[ZERO, sector * params.stay_amplitude(true)], [ZERO, ZERO]]);
    (a1, a2)
}

/// `A₁ ρ A₁† + A₂ ρ A₂†` for an atomic input.
pub fn kraus_apply(params: &JcParams, input: &QubitInput) -> DensityMatrix {
    let (a1, a2) = kraus_operators(params);
    let rho = input.to_mat();
    DensityMatrix::trusted2(rho.conjugate_by(&a1) + rho.conjugate_by(&a2))
}

/// Basis labels of the joint atom–field space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JointBasis {
    DownVacuum = 0,
    DownPhoton = 1,
    UpVacuum = 2,
    UpPhoton = 3,
}

/// Atom ⊗ field density matrix on `|↓0⟩, |↓1⟩, |↑0⟩, |↑1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState(DensityMatrix);

impl JointState {
    pub fn new(rho: DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionError {
                expected: 4,
                found: rho.dim(),
            });
        }
        Ok(JointState(rho))
    }

    pub(crate) fn trusted(m: Mat4) -> Self {
        JointState(DensityMatrix::trusted4(m))
    }

    /// Atom in `input`, field in vacuum.
    pub fn atom_with_vacuum(input: &QubitInput) -> Self {
        JointState::trusted(kron(&input.to_mat(), &Mat2::diag([1.0, 0.0])))
    }

    /// Atom in `|↓⟩`, field in `input` over `|0⟩, |1⟩`.
    pub fn photon_with_ground_atom(input: &QubitInput) -> Self {
        JointState::trusted(kron(&Mat2::diag([1.0, 0.0]), &input.to_mat()))
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.0
    }

    pub fn into_density(self) -> DensityMatrix {
        self.0
    }

    pub fn entry(&self, row: JointBasis, col: JointBasis) -> C64 {
        self.0.get(row as usize, col as usize)
    }

    pub fn to_mat(&self) -> Mat4 {
        self.0.to_mat4().expect("joint state is 4x4")
    }

    /// Reduced atomic state (field traced out).
    pub fn atom(&self) -> DensityMatrix {
        crate::qmat::partial_trace(&self.0, Keep::First).expect("joint state is 4x4")
    }

    /// Reduced field state (atom traced out).
    pub fn field(&self) -> DensityMatrix {
        crate::qmat::partial_trace(&self.0, Keep::Second).expect("joint state is 4x4")
    }

    /// Largest magnitude in the `|↑1⟩` row and column.
    pub fn doubly_excited_weight(&self) -> f64 {
        (0..4)
            .flat_map(|k| [self.0.get(3, k), self.0.get(k, 3)])
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// Atom in `input`, field in vacuum, evolved for `params.t`.
pub fn evolve_joint(input: &QubitInput, params: &JcParams) -> JointState {
    let start = JointState::atom_with_vacuum(input).to_mat();
    JointState::trusted(start.conjugate_by(&unitary(params)))
}

/// Field in `input`, atom in `|↓⟩`, evolved for `params.t`.
pub fn evolve_photon_to_atom(input: &QubitInput, params: &JcParams) -> JointState {
    let start = JointState::photon_with_ground_atom(input).to_mat();
    JointState::trusted(start.conjugate_by(&unitary(params)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn resonant_half_cycle_transfers_everything() {
        let p = JcParams::resonant(1.0, FRAC_PI_2).unwrap();
        assert!((transfer_amplitude_h1(&p).norm() - 1.0).abs() < 1e-15);
        assert!(residual_amplitude_h2(&p).norm() < 1e-15);
    }

    #[test]
    fn no_interaction_at_zero_time() {
        let p = JcParams::with_detuning(1.3, 0.4, 2.0, 0.0).unwrap();
        assert_eq!(transfer_amplitude_h1(&p), ZERO);
        assert!((residual_amplitude_h2(&p).norm() - 1.0).abs() < 1e-15);
        let out = kraus_apply(&p, &QubitInput::new(0.4, C64::new(0.2, 0.1)).unwrap());
        assert!(out.max_abs_diff(&QubitInput::ground().to_density()) < 1e-15);
    }

    #[test]
    fn detuned_amplitudes_match_golden() {
        // g=1, Δ=2, t=1: |h1| = |sin √2|/√2, |h2| = sqrt(1 - |h1|²); mpmath values
        let p = JcParams::with_detuning(1.0, 2.0, 0.0, 1.0).unwrap();
        assert!((transfer_amplitude_h1(&p).norm() - 0.698_455_998_636_608_4).abs() < 1e-14);
        assert!((residual_amplitude_h2(&p).norm() - 0.715_653_001_089_591).abs() < 1e-14);
    }

    #[test]
    fn kraus_a1_excited_column_matches_printed_form() {
        let p = JcParams::with_detuning(0.8, 0.3, 1.7, 0.9).unwrap();
        let (a1, _) = kraus_operators(&p);
        let omega = p.rabi();
        let expected = -I * C64::from_polar(1.0, -p.nu * p.t) * ((omega * p.t).sin() * p.g / omega);
        assert!((a1.0[1][1] - expected).norm() < 1e-15);
    }

    #[test]
    fn kraus_completeness() {
        let p = JcParams::with_detuning(1.1, -0.7, 0.5, 2.3).unwrap();
        let (a1, a2) = kraus_operators(&p);
        let sum = a1.adjoint() * a1 + a2.adjoint() * a2;
        assert!(sum.max_abs_diff(&Mat2::identity()) < 1e-15);
    }

    #[test]
    fn ground_input_is_stationary() {
        let p = JcParams::with_detuning(1.0, 0.9, 0.2, 3.1).unwrap();
        let joint = evolve_joint(&QubitInput::ground(), &p);
        assert!((joint.entry(JointBasis::DownVacuum, JointBasis::DownVacuum) - ONE).norm() < 1e-15);
        assert!(joint.doubly_excited_weight() == 0.0);
    }

    #[test]
    fn excited_input_swaps_at_half_cycle() {
        let p = JcParams::resonant(1.0, FRAC_PI_2).unwrap();
        let joint = evolve_joint(&QubitInput::excited(), &p);
        assert!((joint.entry(JointBasis::DownPhoton, JointBasis::DownPhoton).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unitary_is_unitary() {
        let p = JcParams::with_detuning(0.3, 1.9, -0.4, PI).unwrap();
        let u = unitary(&p);
        assert!((u.adjoint() * u).max_abs_diff(&Mat4::identity()) < 1e-15);
    }

    #[test]
    fn zero_coupling_is_allowed_and_inert() {
        let p = JcParams::resonant(0.0, 2.0).unwrap();
        assert_eq!(transfer_amplitude_h1(&p).norm(), 0.0);
        assert!(JcParams::resonant(-1.0, 1.0).is_err());
        assert!(JcParams::resonant(1.0, -1.0).is_err());
        assert!(JcParams::resonant(f64::NAN, 1.0).is_err());
    }
}
