use super::{ClassicalStrategy, XorGame};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, C64, ZERO};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

const OBSERVABLE_TOL: f64 = 1e-10;
const STATE_TOL: f64 = 1e-12;

/// Shared state on `C^{d₁} ⊗ C^{d₂} ⊗ C^{d₃}` and one ±1-observable per
/// question for each player.
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledStrategy {
    dims: [usize; 3],
    state: CVec,
    observables: [Vec<CMat>; 3],
}

#[derive(Serialize, Deserialize)]
struct StrategyFile {
    dims: [usize; 3],
    /// `[re, im]` pairs
    state: Vec<[f64; 2]>,
    /// per player, per question: row-major `[re, im]` pairs
    observables: [Vec<Vec<[f64; 2]>>; 3],
}

impl EntangledStrategy {
    pub fn new(dims: [usize; 3], state: CVec, observables: [Vec<CMat>; 3]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.contains(&0) {
            return Err(Error::InvalidStrategy("local dimensions must be positive".into()));
        }
        if state.len() != total {
            return Err(Error::Dimension { expected: total, got: state.len() });
        }
        if (state.norm() - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidStrategy(format!("state has norm {}", state.norm())));
        }
        for (p, obs) in observables.iter().enumerate() {
            for (x, o) in obs.iter().enumerate() {
                if o.nrows() != dims[p] || o.ncols() != dims[p] {
                    return Err(Error::Dimension { expected: dims[p], got: o.nrows() });
                }
                if !linalg::is_observable(o, OBSERVABLE_TOL) {
                    return Err(Error::InvalidStrategy(format!(
                        "player {p}, question {x}: matrix is not a ±1 observable"
                    )));
                }
            }
        }
        Ok(Self { dims, state, observables })
    }

    /// One-dimensional observables `±1` reproducing a deterministic strategy.
    pub fn from_classical(s: &ClassicalStrategy) -> Self {
        let lift = |v: &[i8]| v.iter().map(|&x| CMat::from_element(1, 1, C64::new(x as f64, 0.0))).collect();
        Self {
            dims: [1, 1, 1],
            state: CVec::from_element(1, linalg::ONE),
            observables: [lift(&s.chi), lift(&s.upsilon), lift(&s.zeta)],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn state(&self) -> &CVec {
        &self.state
    }

    pub fn observables(&self, player: usize) -> &[CMat] {
        &self.observables[player]
    }

    pub fn to_json(&self) -> Result<String> {
        let pair = |z: &C64| [z.re, z.im];
        let flat = |m: &CMat| {
            let (r, c) = m.shape();
            (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| pair(&m[(i, j)])).collect()
        };
        let file = StrategyFile {
            dims: self.dims,
            state: self.state.iter().map(pair).collect(),
            observables: [0, 1, 2].map(|p| self.observables[p].iter().map(flat).collect()),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StrategyFile = serde_json::from_str(text)?;
        let state = CVec::from_iterator(file.state.len(), file.state.iter().map(|[re, im]| C64::new(*re, *im)));
        let mut observables: [Vec<CMat>; 3] = Default::default();
        for p in 0..3 {
            let d = file.dims[p];
            for entries in &file.observables[p] {
                if entries.len() != d * d {
                    return Err(Error::Dimension { expected: d * d, got: entries.len() });
                }
                let zs: Vec<C64> = entries.iter().map(|[re, im]| C64::new(*re, *im)).collect();
                observables[p].push(CMat::from_row_slice(d, d, &zs));
            }
        }
        Self::new(file.dims, state, observables)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// `(I ⊗ … ⊗ op ⊗ … ⊗ I) ψ` with `op` on tensor factor `player`.
fn apply_local(psi: &CVec, dims: [usize; 3], player: usize, op: &CMat) -> CVec {
    let [d1, d2, d3] = dims;
    let mut out = CVec::zeros(psi.len());
    for a in 0..d1 {
        for b in 0..d2 {
            for c in 0..d3 {
                let (row, inner) = match player {
                    0 => (a, [b, c]),
                    1 => (b, [a, c]),
                    _ => (c, [a, b]),
                };
                let mut acc = ZERO;
                for x in 0..dims[player] {
                    let idx = match player {
                        0 => (x * d2 + inner[0]) * d3 + inner[1],
                        1 => (inner[0] * d2 + x) * d3 + inner[1],
                        _ => (inner[0] * d2 + inner[1]) * d3 + x,
                    };
                    acc += op[(row, x)] * psi[idx];
                }
                out[(a * d2 + b) * d3 + c] = acc;
            }
        }
    }
    out
}

/// All `⟨Ψ| A_i ⊗ B_j ⊗ C_k |Ψ⟩`, flattened as `(i·Q + j)·Q + k`.
pub fn correlations(s: &EntangledStrategy) -> Result<Vec<f64>> {
    let q = s.observables[0].len();
    if s.observables.iter().any(|o| o.len() != q) {
        return Err(Error::InvalidStrategy("players have different numbers of questions".into()));
    }
    let with_b: Vec<CVec> = s.observables[1].iter().map(|b| apply_local(&s.state, s.dims, 1, b)).collect();
    let with_c: Vec<CVec> = s.observables[2].iter().map(|c| apply_local(&s.state, s.dims, 2, c)).collect();
    let rows: Vec<Vec<f64>> = (0..q * q)
        .into_par_iter()
        .map(|ij| {
            let phi = apply_local(&with_b[ij % q], s.dims, 0, &s.observables[0][ij / q]);
            with_c.iter().map(|chi| phi.dotc(chi).re).collect()
        })
        .collect();
    Ok(rows.concat())
}

/// `Σ pi·sign·⟨Ψ| A⊗B⊗C |Ψ⟩`.
pub fn entangled_bias_eval(g: &XorGame, s: &EntangledStrategy) -> Result<f64> {
    let q = g.questions();
    for obs in &s.observables {
        if obs.len() != q {
            return Err(Error::Dimension { expected: q, got: obs.len() });
        }
    }
    let corr = correlations(s)?;
    Ok(g.pi().iter().zip(g.signs()).zip(&corr).map(|((&p, &sg), &c)| p * sg as f64 * c).sum())
}

#[derive(Debug, Clone, Copy)]
pub struct SeesawOptions {
    pub d: usize,
    pub restarts: usize,
    pub max_sweeps: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        Self { d: 2, restarts: 8, max_sweeps: 500, tol: 1e-9, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct SeesawResult {
    pub value: f64,
    pub strategy: EntangledStrategy,
    /// Bias after each sweep of the best restart.
    pub history: Vec<f64>,
    pub best_restart: usize,
}

/// `M_x = Σ_{y,z} w(x,y,z) O_y ⊗ O'_z` for `player` holding question `x`,
/// with the other two players in increasing order.
fn partner_operator(w: &[f64], q: usize, obs: &[Vec<CMat>; 3], player: usize, x: usize) -> CMat {
    let (o1, o2) = match player {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (da, db) = (obs[o1][0].nrows(), obs[o2][0].nrows());
    let mut m = CMat::zeros(da * db, da * db);
    for y in 0..q {
        for z in 0..q {
            let idx = match player {
                0 => (x * q + y) * q + z,
                1 => (y * q + x) * q + z,
                _ => (y * q + z) * q + x,
            };
            if w[idx] != 0.0 {
                m += obs[o1][y].kronecker(&obs[o2][z]).scale(w[idx]);
            }
        }
    }
    m
}

/// The state as a `d_player × (rest)` matrix, remaining factors in increasing order.
fn state_matrix(psi: &CVec, dims: [usize; 3], player: usize) -> CMat {
    let [d1, d2, d3] = dims;
    let rest = psi.len() / dims[player];
    let mut m = CMat::zeros(dims[player], rest);
    for a in 0..d1 {
        for b in 0..d2 {
            for c in 0..d3 {
                let v = psi[(a * d2 + b) * d3 + c];
                match player {
                    0 => m[(a, b * d3 + c)] = v,
                    1 => m[(b, a * d3 + c)] = v,
                    _ => m[(c, a * d2 + b)] = v,
                }
            }
        }
    }
    m
}

/// `Σ_i A_i ⊗ M_i`, the operator whose expectation in `Ψ` is the bias.
fn game_operator(w: &[f64], q: usize, obs: &[Vec<CMat>; 3]) -> CMat {
    let d: usize = obs.iter().map(|o| o[0].nrows()).product();
    let mut g = CMat::zeros(d, d);
    for x in 0..q {
        g += obs[0][x].kronecker(&partner_operator(w, q, obs, 0, x));
    }
    g
}

fn run_seesaw(g: &XorGame, w: &[f64], opts: &SeesawOptions, restart: usize) -> (f64, EntangledStrategy, Vec<f64>) {
    let q = g.questions();
    let d = opts.d;
    let dims = [d, d, d];
    let mut rng = linalg::seeded_rng(opts.seed, restart as u64);
    let mut obs: [Vec<CMat>; 3] = Default::default();
    for player_obs in obs.iter_mut() {
        *player_obs = (0..q).map(|_| linalg::matrix_sign(&linalg::random_hermitian(&mut rng, d))).collect();
    }
    let mut psi = linalg::random_unit_vector(&mut rng, d * d * d);
    let mut history = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for _ in 0..opts.max_sweeps {
        for player in 0..3 {
            let sm = state_matrix(&psi, dims, player);
            let updated: Vec<CMat> = (0..q)
                .map(|x| {
                    let m = partner_operator(w, q, &obs, player, x);
                    let eff = &sm * m.transpose() * sm.adjoint();
                    linalg::matrix_sign(&eff)
                })
                .collect();
            obs[player] = updated;
        }
        let (values, vectors) = linalg::hermitian_eigh(&game_operator(w, q, &obs));
        let top = values.len() - 1;
        psi = vectors.column(top).into_owned();
        let value = values[top];
        history.push(value);
        if value - prev <= opts.tol {
            break;
        }
        prev = value;
    }
    let strategy = EntangledStrategy { dims, state: psi, observables: obs };
    let value = entangled_bias_eval(g, &strategy).expect("shapes match the game");
    (value, strategy, history)
}

/// Alternating optimization of observables and state; a lower bound on `β*`.
///
/// For fixed partners each question's best observable is the sign of its
/// effective operator, and for fixed observables the best state is the top
/// eigenvector of the game operator.
pub fn seesaw_entangled_bias(g: &XorGame, opts: &SeesawOptions) -> Result<SeesawResult> {
    if opts.d == 0 {
        return Err(Error::InvalidParameter("local dimension must be at least 1".into()));
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let w = super::tensor_from_game(g);
    let runs: Vec<(f64, EntangledStrategy, Vec<f64>)> =
        (0..opts.restarts).into_par_iter().map(|r| run_seesaw(g, &w, opts, r)).collect();
    let best_restart = runs.iter().enumerate().fold(0, |b, (i, r)| if r.0 > runs[b].0 { i } else { b });
    let (value, strategy, history) = runs.into_iter().nth(best_restart).expect("restarts >= 1");
    Ok(SeesawResult { value, strategy, history, best_restart })
}
