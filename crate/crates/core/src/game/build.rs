//! The Pauli game of a tensor and its explicit entangled strategy.

use super::{EntangledStrategy, XorGame};
use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec, C64};
use crate::pauli::{build_basis, fourier, FourierTable};
use crate::tensor::{hermitize_report, spectral_norm, HermitianPart, Tensor3};
use serde::Serialize;

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Real,
    Imaginary,
}

#[derive(Debug, Clone)]
pub struct GameBuildReport {
    pub branch: Branch,
    /// `Σ |coefficient|` of the chosen branch.
    pub l1_norm: f64,
    pub game: XorGame,
    pub hermitian_part: HermitianPart,
    /// `‖T‖₃,₃ / ‖T_herm‖₃,₃` for this instance.
    pub hermitization_loss: f64,
    /// Spectral norm of the hermitized tensor.
    pub spectral: f64,
    /// Pauli-strategy value before normalization, for the real and imaginary branch.
    pub branch_values: (f64, f64),
    pub strategy: EntangledStrategy,
    pub fourier: FourierTable,
}

impl GameBuildReport {
    /// Bias of the Pauli strategy on the normalized game.
    pub fn pauli_bias(&self) -> f64 {
        let v = match self.branch {
            Branch::Real => self.branch_values.0,
            Branch::Imaginary => self.branch_values.1,
        };
        v / self.l1_norm
    }
}

fn check_hermitian(t: &Tensor3) -> Result<()> {
    let scale = t.matrix().iter().fold(0.0f64, |m, z| m.max(z.norm())).max(f64::MIN_POSITIVE);
    if t.hermitian_defect() > HERMITIAN_TOL * scale {
        return Err(Error::InvalidParameter("tensor must be Hermitian; call hermitize first".into()));
    }
    Ok(())
}

/// `⟨Ψ| P⊗Q⊗R |Ψ⟩` for every Pauli triple, as the Fourier table of `|Ψ⟩⟨Ψ|`.
pub fn pauli_expectations(qubits: u32, psi: &CVec) -> Result<Vec<f64>> {
    let rho: CMat = psi * psi.adjoint();
    let table = fourier(&Tensor3::from_matrix(qubits, rho)?);
    Ok(table.coefficients().iter().map(|z| z.re).collect())
}

/// Every player measures the Pauli observable named by the question, on the
/// dominant eigenvector of the matrix view. When that eigenvalue is negative
/// the third player's observables are negated, so the strategy value is
/// `N³·‖T‖₃,₃` rather than its negative.
pub fn pauli_strategy(t: &Tensor3) -> Result<EntangledStrategy> {
    check_hermitian(t)?;
    let spec = spectral_norm(t);
    let psi = spec.eigenvector.expect("Hermitian input keeps its eigenvector");
    let sign = if spec.eigenvalue.unwrap_or(0.0) < 0.0 { -1.0 } else { 1.0 };
    let basis = build_basis(t.qubits())?;
    let n = t.local_dim();
    let obs = basis.elements().to_vec();
    let third = obs.iter().map(|p| p.scale(sign)).collect();
    EntangledStrategy::new([n, n, n], psi, [obs.clone(), obs, third])
}

/// The two sides of `Σ T̂(P,Q,R)·⟨Ψ|P⊗Q⊗R'|Ψ⟩ = N³·⟨Ψ|T|Ψ⟩·s`, with `R' = s·R`
/// the third player's Pauli-strategy observables.
#[derive(Debug, Clone, Copy)]
pub struct PauliIdentity {
    pub fourier_side: C64,
    pub direct_side: f64,
    pub spectral: f64,
}

pub fn pauli_identity(t: &Tensor3) -> Result<PauliIdentity> {
    check_hermitian(t)?;
    let spec = spectral_norm(t);
    let psi = spec.eigenvector.clone().expect("Hermitian input keeps its eigenvector");
    let sign = if spec.eigenvalue.unwrap_or(0.0) < 0.0 { -1.0 } else { 1.0 };
    let expect = pauli_expectations(t.qubits(), &psi)?;
    let table = fourier(t);
    let fourier_side: C64 = table.coefficients().iter().zip(&expect).map(|(c, e)| c * (e * sign)).sum();
    let n3 = (t.local_dim() as f64).powi(3);
    let direct = psi.dotc(&(t.matrix() * &psi)).re;
    Ok(PauliIdentity { fourier_side, direct_side: n3 * direct * sign, spectral: spec.value })
}

/// Hermitize, take Fourier coefficients, keep the real or imaginary part
/// (whichever gives the larger Pauli-strategy value) and normalize to a game.
pub fn game_from_tensor(t: &Tensor3) -> Result<GameBuildReport> {
    if t.is_zero() {
        return Err(Error::DegenerateGame);
    }
    let herm = hermitize_report(t);
    let ht = &herm.tensor;
    let table = fourier(ht);
    let strategy = pauli_strategy(ht)?;
    // the third player's identity observable carries the eigenvalue sign
    let spec_sign = strategy.observables(2)[0][(0, 0)].re;
    let expect = pauli_expectations(ht.qubits(), strategy.state())?;
    let (mut re_val, mut im_val) = (0.0, 0.0);
    for (c, e) in table.coefficients().iter().zip(&expect) {
        re_val += c.re * e * spec_sign;
        im_val += c.im * e * spec_sign;
    }
    let branch = if im_val > re_val { Branch::Imaginary } else { Branch::Real };
    let coeffs: Vec<f64> = table
        .coefficients()
        .iter()
        .map(|c| match branch {
            Branch::Real => c.re,
            Branch::Imaginary => c.im,
        })
        .collect();
    let l1_norm: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let game = XorGame::from_weights(table.side(), &coeffs)?;
    Ok(GameBuildReport {
        branch,
        l1_norm,
        game,
        hermitian_part: herm.part,
        hermitization_loss: herm.loss_factor(),
        spectral: herm.spectral_after,
        branch_values: (re_val, im_val),
        strategy,
        fourier: table,
    })
}
