//! Three-player XOR games: representation, the Pauli game built from a
//! tensor, classical and entangled biases, and the two upper-bound theorems
//! as inequality checks.

mod build;
mod classical;
mod entangled;
pub mod fixtures;

pub use build::{game_from_tensor, pauli_expectations, pauli_identity, pauli_strategy, Branch, GameBuildReport, PauliIdentity};
pub use classical::{
    classical_bias_exact, classical_bias_heuristic, classical_value, ClassicalStrategy, EXACT_LIMIT,
};
pub use entangled::{
    correlations, entangled_bias_eval, seesaw_entangled_bias, EntangledStrategy, SeesawOptions, SeesawResult,
};

use crate::error::{Error, Result};
use serde::Serialize;
use std::io::{Read, Write};

/// Upper estimate of the real Grothendieck constant.
pub const KG_REAL: f64 = 1.783;
/// Upper estimate of the complex Grothendieck constant.
pub const KG_COMPLEX: f64 = 1.405;

const SUM_TOL: f64 = 1e-12;

/// Question distribution `pi` and signs over `[Q]³`, flattened as `(i·Q + j)·Q + k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XorGame {
    questions: usize,
    pi: Vec<f64>,
    signs: Vec<i8>,
}

impl XorGame {
    pub fn new(questions: usize, pi: Vec<f64>, signs: Vec<i8>) -> Result<Self> {
        let len = questions * questions * questions;
        if questions == 0 {
            return Err(Error::InvalidGame("a game needs at least one question".into()));
        }
        if pi.len() != len || signs.len() != len {
            return Err(Error::Dimension { expected: len, got: pi.len().max(signs.len()) });
        }
        if pi.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidGame("probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = pi.iter().sum();
        if (total - 1.0).abs() > SUM_TOL * len.max(1) as f64 {
            return Err(Error::InvalidGame(format!("probabilities sum to {total}, not 1")));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidGame("signs must be +1 or -1".into()));
        }
        Ok(Self { questions, pi, signs })
    }

    /// `pi = |w| / Σ|w|`, `sign = sign(w)` with `+1` on zeros.
    pub fn from_weights(questions: usize, weights: &[f64]) -> Result<Self> {
        let l1: f64 = weights.iter().map(|w| w.abs()).sum();
        if l1 == 0.0 || !l1.is_finite() {
            return Err(Error::DegenerateGame);
        }
        let pi = weights.iter().map(|w| w.abs() / l1).collect();
        let signs = weights.iter().map(|&w| if w < 0.0 { -1 } else { 1 }).collect();
        Self::new(questions, pi, signs)
    }

    pub fn questions(&self) -> usize {
        self.questions
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.questions + j) * self.questions + k
    }

    pub fn support_size(&self) -> usize {
        self.pi.iter().filter(|&&p| p > 0.0).count()
    }

    /// Write all `Q³` rows as `q1,q2,q3,pi,sign`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["q1", "q2", "q3", "pi", "sign"])?;
        let q = self.questions;
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    let idx = self.index(i, j, k);
                    out.write_record([
                        i.to_string(),
                        j.to_string(),
                        k.to_string(),
                        format!("{:e}", self.pi[idx]),
                        self.signs[idx].to_string(),
                    ])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Read a game CSV. Missing triples get probability 0 and sign `+1`.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["q1", "q2", "q3", "pi", "sign"] {
            return Err(Error::Format("game CSV header must be q1,q2,q3,pi,sign".into()));
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let parse_u = |i: usize| {
                rec[i].trim().parse::<usize>().map_err(|e| Error::Format(format!("bad question index: {e}")))
            };
            let (a, b, c) = (parse_u(0)?, parse_u(1)?, parse_u(2)?);
            let p: f64 = rec[3].trim().parse().map_err(|e| Error::Format(format!("bad pi: {e}")))?;
            let s: i8 = rec[4].trim().parse().map_err(|e| Error::Format(format!("bad sign: {e}")))?;
            rows.push((a, b, c, p, s));
        }
        let q = rows.iter().map(|r| r.0.max(r.1).max(r.2) + 1).max().unwrap_or(0);
        let len = q * q * q;
        let mut pi = vec![0.0; len];
        let mut signs = vec![1i8; len];
        for (a, b, c, p, s) in rows {
            let idx = (a * q + b) * q + c;
            pi[idx] = p;
            signs[idx] = s;
        }
        Self::new(q, pi, signs)
    }
}

/// `pi · sign` as a real 3-array over `[Q]³`.
pub fn tensor_from_game(g: &XorGame) -> Vec<f64> {
    g.pi.iter().zip(&g.signs).map(|(&p, &s)| p * s as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
}

fn bound_report(lhs: f64, bound: f64) -> BoundReport {
    BoundReport { lhs, bound, slack: bound - lhs, holds: lhs <= bound + 1e-9 }
}

/// `β* ≤ √Q · K_G^ℝ · β`, checked on a lower bound for `β*` and the exact `β`.
pub fn check_question_bound(g: &XorGame, beta_star_lb: f64, beta: f64) -> BoundReport {
    bound_report(beta_star_lb, (g.questions() as f64).sqrt() * KG_REAL * beta)
}

/// `β* ≤ √(3d) · (K_G^ℂ)^{3/2} · β` for strategies of local dimension `d`.
pub fn check_dimension_bound(_g: &XorGame, beta_star_lb: f64, d: usize, beta: f64) -> BoundReport {
    bound_report(beta_star_lb, (3.0 * d as f64).sqrt() * KG_COMPLEX.powf(1.5) * beta)
}
