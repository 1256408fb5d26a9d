//! Small reference games with known classical and entangled biases.

use super::{EntangledStrategy, XorGame};
use crate::linalg::{CMat, CVec, C64, I, ONE, ZERO};

fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

fn pauli_y() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// Two questions each; uniform over `{000, 011, 101, 110}` with signs `(+, −, −, −)`.
/// Classical bias 1/2, entangled bias 1.
pub fn mermin() -> XorGame {
    let mut pi = vec![0.0; 8];
    let mut signs = vec![1i8; 8];
    for (idx, s) in [(0b000, 1), (0b011, -1), (0b101, -1), (0b110, -1)] {
        pi[idx] = 0.25;
        signs[idx] = s;
    }
    XorGame::new(2, pi, signs).expect("valid fixture")
}

/// `(|000⟩ + |111⟩)/√2` with `X` on question 0 and `Y` on question 1.
pub fn ghz_strategy() -> EntangledStrategy {
    let h = C64::new(0.5f64.sqrt(), 0.0);
    let mut psi = CVec::zeros(8);
    psi[0] = h;
    psi[7] = h;
    let obs = vec![pauli_x(), pauli_y()];
    EntangledStrategy::new([2, 2, 2], psi, [obs.clone(), obs.clone(), obs]).expect("valid fixture")
}

/// CHSH for the first two players; the third always receives question 0.
/// Every player has four questions, the unused ones with probability 0.
/// Classical bias 1/2, entangled bias `1/√2`.
pub fn embedded_chsh() -> XorGame {
    let q = 4;
    let mut pi = vec![0.0; q * q * q];
    let mut signs = vec![1i8; q * q * q];
    for x in 0..2 {
        for y in 0..2 {
            let idx = (x * q + y) * q;
            pi[idx] = 0.25;
            signs[idx] = if x * y == 1 { -1 } else { 1 };
        }
    }
    XorGame::new(q, pi, signs).expect("valid fixture")
}

/// `|Φ⁺⟩ ⊗ |0⟩` with `A = (Z, X)`, `B = ((Z+X)/√2, (Z−X)/√2)` and `C = I`.
pub fn chsh_strategy() -> EntangledStrategy {
    let h = C64::new(0.5f64.sqrt(), 0.0);
    let mut psi = CVec::zeros(8);
    psi[0] = h; // |00⟩|0⟩
    psi[6] = h; // |11⟩|0⟩
    let id = CMat::identity(2, 2);
    let r = 0.5f64.sqrt();
    let a = vec![pauli_z(), pauli_x(), id.clone(), id.clone()];
    let b = vec![(pauli_z() + pauli_x()).scale(r), (pauli_z() - pauli_x()).scale(r), id.clone(), id.clone()];
    let c = vec![id; 4];
    EntangledStrategy::new([2, 2, 2], psi, [a, b, c]).expect("valid fixture")
}
