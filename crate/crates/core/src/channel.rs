//! The one-amplitude qubit channel family
//! `ρ ↦ [[1 - p|h|², r h], [r* h*, p|h|²]]` and the constructions built on
//! it: complements, fiber loss, concatenation and the channel acting on a
//! purification.

use num_complex::Complex64 as C64;

use crate::error::{check_finite, Error, Result};
use crate::jc::{photon_residual_amplitude, residual_amplitude_h2, transfer_amplitude_h1, JcParams};
use crate::qmat::{DensityMatrix, Mat2, Mat4, QubitInput, ZERO};

const NORM_SLACK: f64 = 1e-12;

/// A qubit channel that keeps amplitude `h_keep` of the excitation at the
/// receiver and hands amplitude `h_env` to the traced-out partner system.
///
/// For unitary constructions `|h_keep|² + |h_env|² = 1`; channels derived
/// from lossy dynamics may leak the rest to an unobserved environment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferChannel {
    h_keep: C64,
    h_env: C64,
}

impl TransferChannel {
    pub fn new(h_keep: C64, h_env: C64) -> Result<Self> {
        for (name, h) in [("h_keep", h_keep), ("h_env", h_env)] {
            check_finite(name, h.re)?;
            check_finite(name, h.im)?;
            if h.norm() > 1.0 + NORM_SLACK {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("|{name}| = {} > 1", h.norm()),
                });
            }
        }
        let total = h_keep.norm_sqr() + h_env.norm_sqr();
        if total > 1.0 + NORM_SLACK {
            return Err(Error::InvalidParameter {
                name: "h_env",
                reason: format!("|h_keep|^2 + |h_env|^2 = {total} > 1"),
            });
        }
        Ok(TransferChannel { h_keep, h_env })
    }

    /// Decay-free channel with the given receiver amplitude; the environment
    /// gets the real amplitude `sqrt(1 - |h_keep|²)`.
    pub fn lossless(h_keep: C64) -> Result<Self> {
        let env = (1.0 - h_keep.norm_sqr()).max(0.0).sqrt();
        Self::new(h_keep, C64::new(env, 0.0))
    }

    /// Decay-free channel delivering the excitation with probability
    /// `keep_sq`.
    pub fn from_keep_probability(keep_sq: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&keep_sq) {
            return Err(Error::DomainError {
                value: keep_sq,
                domain: "[0, 1]",
            });
        }
        Self::lossless(C64::new(keep_sq.sqrt(), 0.0))
    }

    /// Atom-to-field conversion by one interaction with the field prepared in
    /// vacuum: `(h₁, h₂)`.
    pub fn atom_to_field(params: &JcParams) -> Self {
        TransferChannel {
            h_keep: transfer_amplitude_h1(params),
            h_env: residual_amplitude_h2(params),
        }
    }

    /// Field-to-atom conversion with the atom prepared in `|↓⟩`.
    pub fn photon_to_atom(params: &JcParams) -> Self {
        TransferChannel {
            h_keep: transfer_amplitude_h1(params),
            h_env: photon_residual_amplitude(params),
        }
    }

    pub fn h_keep(&self) -> C64 {
        self.h_keep
    }

    pub fn h_env(&self) -> C64 {
        self.h_env
    }

    pub fn keep_sq(&self) -> f64 {
        self.h_keep.norm_sqr()
    }

    pub fn env_sq(&self) -> f64 {
        self.h_env.norm_sqr()
    }

    /// Probability lost to systems other than receiver and partner.
    pub fn leakage(&self) -> f64 {
        (1.0 - self.keep_sq() - self.env_sq()).max(0.0)
    }

    pub fn is_decay_free(&self) -> bool {
        (self.keep_sq() + self.env_sq() - 1.0).abs() <= NORM_SLACK
    }

    /// The channel as a linear map on arbitrary 2x2 operators.
    pub fn map_operator(&self, x: &Mat2) -> Mat2 {
        let h = self.h_keep;
        let keep = self.keep_sq();
        crate::qmat::CMat([
            [x.0[0][0] + x.0[1][1] * (1.0 - keep), x.0[0][1] * h],
            [x.0[1][0] * h.conj(), x.0[1][1] * keep],
        ])
    }

    pub fn apply(&self, input: &QubitInput) -> DensityMatrix {
        DensityMatrix::trusted2(self.map_operator(&input.to_mat()))
    }

    /// The complementary channel: receiver and partner swap roles.
    pub fn complement(&self) -> Self {
        TransferChannel {
            h_keep: self.h_env,
            h_env: self.h_keep,
        }
    }

    /// `(E ⊗ I)(|ψ⟩⟨ψ|)` for the canonical purification
    /// `|ψ⟩ = sqrt(1-p)|0⟩|0_R⟩ + sqrt(p)|1⟩|1_R⟩`, ordered system ⊗ reference.
    pub fn extended_apply(&self, p: f64) -> Result<DensityMatrix> {
        Ok(self.extended_apply_input(&QubitInput::diagonal(p)?))
    }

    /// `(E ⊗ I)(|ψ⟩⟨ψ|)` for the purification `|ψ⟩ = Σᵢ (√σ |i⟩) ⊗ |i_R⟩` of
    /// an arbitrary qubit input `σ`.
    pub fn extended_apply_input(&self, input: &QubitInput) -> DensityMatrix {
        let root = psd_sqrt(&input.to_mat());
        let purification = purification_from_root(&root);
        DensityMatrix::trusted4(self.extend(&purification))
    }

    /// Applies the channel to the system factor of a system ⊗ reference
    /// operator.
    pub(crate) fn extend(&self, joint: &Mat4) -> Mat4 {
        let mut out = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let block = Mat2::from_fn(|s, t| joint.0[2 * s + i][2 * t + j]);
                let mapped = self.map_operator(&block);
                for s in 0..2 {
                    for t in 0..2 {
                        out.0[2 * s + i][2 * t + j] = mapped.0[s][t];
                    }
                }
            }
        }
        out
    }
}

/// `|ψ⟩⟨ψ|` for `|ψ⟩ = Σᵢ (root |i⟩) ⊗ |i_R⟩`.
pub(crate) fn purification_from_root(root: &Mat2) -> Mat4 {
    let psi: [C64; 4] = std::array::from_fn(|k| root.0[k / 2][k % 2]);
    Mat4::outer(&psi)
}

/// Square root of a positive semidefinite 2x2 matrix,
/// `(M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M))`.
fn psd_sqrt(m: &Mat2) -> Mat2 {
    let det = (m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0]).re.max(0.0);
    let s = det.sqrt();
    let denom = (m.trace().re + 2.0 * s).sqrt();
    if denom == 0.0 {
        return Mat2::zeros();
    }
    Mat2::from_fn(|i, j| {
        let shift = if i == j { C64::new(s, 0.0) } else { ZERO };
        (m.0[i][j] + shift) / denom
    })
}

/// Lossy fiber modelled as a beam splitter with transmittance `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossChannel {
    transmittance: f64,
}

impl LossChannel {
    pub fn new(transmittance: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::DomainError {
                value: transmittance,
                domain: "transmittance in [0, 1]",
            });
        }
        Ok(LossChannel { transmittance })
    }

    pub fn transmittance(&self) -> f64 {
        self.transmittance
    }

    /// Amplitude damping: `p → pT`, `r → r√T`.
    pub fn apply(&self, input: &QubitInput) -> DensityMatrix {
        self.as_channel().apply(input)
    }

    /// The beam splitter as a transfer channel; the reflected port is the
    /// environment.
    pub fn as_channel(&self) -> TransferChannel {
        TransferChannel {
            h_keep: C64::new(self.transmittance.sqrt(), 0.0),
            h_env: C64::new((1.0 - self.transmittance).sqrt(), 0.0),
        }
    }
}

/// Atom → field → fiber → field → atom.
///
/// `sender` converts the atomic qubit into a photon, `loss` carries it and
/// `receiver` loads it into a second atom prepared in `|↓⟩`. The combined
/// amplitude is `h₄ = h₁(sender) · √T · h₁(receiver)`; the environment
/// amplitude is real, `sqrt(1 - |h₄|²)`.
pub fn concatenate(sender: &JcParams, loss: &LossChannel, receiver: &JcParams) -> TransferChannel {
    let h4 = transfer_amplitude_h1(sender) * loss.transmittance.sqrt() * transfer_amplitude_h1(receiver);
    TransferChannel::lossless(h4).expect("product of amplitudes bounded by 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{von_neumann_entropy, CMat};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn input(p: f64, r: f64) -> QubitInput {
        QubitInput::new(p, C64::new(r, 0.0)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let perfect = TransferChannel::from_keep_probability(1.0).unwrap();
        let q = QubitInput::new(0.3, C64::new(0.2, -0.1)).unwrap();
        assert!(perfect.apply(&q).max_abs_diff(&q.to_density()) < 1e-15);

        let dead = TransferChannel::from_keep_probability(0.0).unwrap();
        assert!(dead.apply(&q).max_abs_diff(&QubitInput::ground().to_density()) < 1e-15);

        let ch = TransferChannel::lossless(C64::new(0.8, 0.0)).unwrap();
        let out = ch.apply(&input(0.5, 0.3)).to_mat2().unwrap();
        let expected = CMat([
            [C64::new(0.68, 0.0), C64::new(0.24, 0.0)],
            [C64::new(0.24, 0.0), C64::new(0.32, 0.0)],
        ]);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn complement_examples() {
        let ch = TransferChannel::new(C64::new(0.3, 0.4), C64::new(0.0, -0.5)).unwrap();
        assert_eq!(ch.complement().complement(), ch);

        let full = TransferChannel::atom_to_field(&JcParams::resonant(1.0, FRAC_PI_2).unwrap());
        let out = full.complement().apply(&input(0.6, 0.4));
        assert!(out.max_abs_diff(&QubitInput::ground().to_density()) < 1e-15);

        let detuned = TransferChannel::atom_to_field(&JcParams::with_detuning(1.0, 2.0, 0.0, 1.0).unwrap());
        assert!((detuned.complement().h_keep().norm() - 0.715_653_001_089_591).abs() < 1e-14);
    }

    #[test]
    fn loss_examples() {
        let q = input(0.5, 0.5);
        assert!(LossChannel::new(1.0).unwrap().apply(&q).max_abs_diff(&q.to_density()) < 1e-15);
        assert!(
            LossChannel::new(0.0)
                .unwrap()
                .apply(&q)
                .max_abs_diff(&QubitInput::ground().to_density())
                < 1e-15
        );
        let out = LossChannel::new(0.81).unwrap().apply(&q);
        assert!((out.get(0, 1).re - 0.45).abs() < 1e-15);
        assert!((out.get(1, 1).re - 0.405).abs() < 1e-15);
        assert!(LossChannel::new(1.01).is_err());
    }

    #[test]
    fn concatenation_examples() {
        let half = JcParams::resonant(1.0, FRAC_PI_2).unwrap();
        let ideal = concatenate(&half, &LossChannel::new(1.0).unwrap(), &half);
        assert!((ideal.keep_sq() - 1.0).abs() < 1e-15);
        let fiber = concatenate(&half, &LossChannel::new(0.9).unwrap(), &half);
        assert!((fiber.keep_sq() - 0.9).abs() < 1e-15);
        let partial = concatenate(
            &half,
            &LossChannel::new(0.8).unwrap(),
            &JcParams::resonant(1.0, FRAC_PI_3).unwrap(),
        );
        assert!((partial.keep_sq() - 0.6).abs() < 1e-15);
        assert!(partial.is_decay_free());
    }

    #[test]
    fn extended_apply_limits() {
        let isometry = TransferChannel::lossless(C64::new(0.0, 1.0)).unwrap();
        let pure = isometry.extended_apply(0.3).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap() < 1e-10);

        let dead = TransferChannel::from_keep_probability(0.0).unwrap();
        let product = dead.extended_apply(0.3).unwrap();
        let expected = crate::qmat::kron(&Mat2::diag([1.0, 0.0]), &Mat2::diag([0.7, 0.3]));
        assert!(product.to_mat4().unwrap().max_abs_diff(&expected) < 1e-15);
        let h = crate::qmat::binary_entropy(0.3).unwrap();
        assert!((von_neumann_entropy(&product).unwrap() - h).abs() < 1e-12);
    }

    #[test]
    fn extended_apply_entropy_equals_complement_entropy() {
        let ch = TransferChannel::from_keep_probability(0.75).unwrap();
        let ext = ch.extended_apply(0.45).unwrap();
        let eig = ext.eigenvalues().unwrap();
        assert!(eig[2].abs() < 1e-12 && eig[3].abs() < 1e-12, "{eig:?}");
        let lhs = von_neumann_entropy(&ext).unwrap();
        let rhs = von_neumann_entropy(&ch.complement().apply(&QubitInput::diagonal(0.45).unwrap())).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn channel_validation() {
        assert!(TransferChannel::new(C64::new(0.9, 0.0), C64::new(0.9, 0.0)).is_err());
        assert!(TransferChannel::new(C64::new(1.1, 0.0), ZERO).is_err());
        assert!(TransferChannel::new(C64::new(f64::NAN, 0.0), ZERO).is_err());
        let leaky = TransferChannel::new(C64::new(0.6, 0.0), C64::new(0.3, 0.0)).unwrap();
        assert!(!leaky.is_decay_free());
        assert!((leaky.leakage() - 0.55).abs() < 1e-15);
    }
}
