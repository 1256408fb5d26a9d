//! The trilinear view `L_T(X,Y,Z) = Σ T_{(i,i'),(j,j'),(k,k')} X_{ii'} Y_{jj'} Z_{kk'}`
//! and two-sided estimates of its norm over Hermitian unit-Frobenius balls.

use super::{spectral_norm, Tensor3};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::nets::{self, TripleNet};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct TrilinearWitness {
    pub x: CMat,
    pub y: CMat,
    pub z: CMat,
    pub value: C64,
}

#[derive(Debug, Clone)]
pub struct TrilinearLower {
    /// `|L_T|` at the witness: a lower bound on `‖T‖₂,₂,₂`.
    pub value: f64,
    pub witness: TrilinearWitness,
    /// Objective after every single-mode update, one list per restart.
    pub histories: Vec<Vec<f64>>,
    pub best_restart: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct AlsOptions {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for AlsOptions {
    fn default() -> Self {
        Self { restarts: 8, max_iters: 200, tol: 1e-10, seed: 0 }
    }
}

fn check_factor(t: &Tensor3, m: &CMat) -> Result<()> {
    let n = t.local_dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Dimension { expected: n, got: m.nrows().max(m.ncols()) });
    }
    Ok(())
}

/// `L_T(X, Y, Z)`, contracting one mode at a time.
pub fn trilinear_eval(t: &Tensor3, x: &CMat, y: &CMat, z: &CMat) -> Result<C64> {
    for m in [x, y, z] {
        check_factor(t, m)?;
    }
    let n = t.local_dim();
    let nn = n * n;
    let mat = t.matrix();
    // W[(i,j),(i',j')] = Σ_{k,k'} T · Z_{kk'}
    let mut w = vec![ZERO; nn * nn];
    for ij in 0..nn {
        for ijp in 0..nn {
            let mut acc = ZERO;
            for k in 0..n {
                for kp in 0..n {
                    acc += mat[(ij * n + k, ijp * n + kp)] * z[(k, kp)];
                }
            }
            w[ij * nn + ijp] = acc;
        }
    }
    let mut total = ZERO;
    for i in 0..n {
        for ip in 0..n {
            let mut v = ZERO;
            for j in 0..n {
                for jp in 0..n {
                    v += w[(i * n + j) * nn + ip * n + jp] * y[(j, jp)];
                }
            }
            total += v * x[(i, ip)];
        }
    }
    Ok(total)
}

fn flatten(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    (0..n * n).map(|a| m[(a / n, a % n)]).collect()
}

fn contract(cube: &[C64], s: usize, mode: usize, u: &[C64], v: &[C64]) -> Vec<C64> {
    let mut out = vec![ZERO; s];
    for a in 0..s {
        for b in 0..s {
            let base = (a * s + b) * s;
            for c in 0..s {
                let t = cube[base + c];
                match mode {
                    0 => out[a] += t * u[b] * v[c],
                    1 => out[b] += t * u[a] * v[c],
                    _ => out[c] += t * u[a] * v[b],
                }
            }
        }
    }
    out
}

/// Best Hermitian unit-Frobenius `X` for `X ↦ |Σ_a X_a coeff_a|`.
///
/// Writing the functional as `Tr(X H₁) + i·Tr(X H₂)` with Hermitian `H₁, H₂`,
/// the optimum lies in `span{H₁, H₂}` and solves a 2×2 Gram eigenproblem.
fn best_response(coeff: &[C64], n: usize) -> Option<CMat> {
    // Σ_a X_a coeff_a = Tr(X Cᵀ')  with  C[(i',i)] = coeff[(i,i')]
    let c = CMat::from_fn(n, n, |r, col| coeff[col * n + r]);
    let h1 = (&c + c.adjoint()).scale(0.5);
    let h2 = (&c - c.adjoint()) * C64::new(0.0, -0.5);
    let g11 = linalg::trace_product(&h1, &h1).re;
    let g12 = linalg::trace_product(&h1, &h2).re;
    let g22 = linalg::trace_product(&h2, &h2).re;
    if g11 + g22 <= 1e-300 {
        return None;
    }
    // top eigenvector of [[g11, g12], [g12, g22]]
    let half_gap = 0.5 * (g11 - g22);
    let radius = (half_gap * half_gap + g12 * g12).sqrt();
    let lambda = 0.5 * (g11 + g22) + radius;
    let (v1, v2) = if g12.abs() > 1e-300 {
        (g12, lambda - g11)
    } else if g11 >= g22 {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let x = h1.scale(v1) + h2.scale(v2);
    let norm = linalg::frobenius(&x);
    if norm <= 1e-300 {
        return None;
    }
    Some(x.unscale(norm))
}

fn normalized_hermitian(m: CMat) -> Option<CMat> {
    let h = (&m + m.adjoint()).scale(0.5);
    let norm = linalg::frobenius(&h);
    (norm > 1e-300).then(|| h.unscale(norm))
}

fn partial_traces(psi: &linalg::CVec, n: usize) -> (CMat, CMat) {
    let at = |i: usize, j: usize, k: usize| psi[(i * n + j) * n + k];
    let mut rho_b = CMat::zeros(n, n);
    let mut rho_c = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for jp in 0..n {
                    rho_b[(j, jp)] += at(i, j, k) * at(i, jp, k).conj();
                }
                for kp in 0..n {
                    rho_c[(k, kp)] += at(i, j, k) * at(i, j, kp).conj();
                }
            }
        }
    }
    (rho_b, rho_c)
}

struct RestartResult {
    value: f64,
    witness: (CMat, CMat, CMat),
    history: Vec<f64>,
}

fn run_restart(cube: &[C64], n: usize, y0: CMat, z0: CMat, opts: &AlsOptions) -> RestartResult {
    let s = n * n;
    let mut x = CMat::identity(n, n).unscale((n as f64).sqrt());
    let mut y = y0;
    let mut z = z0;
    let mut history = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for _ in 0..opts.max_iters {
        for mode in 0..3 {
            let (u, v) = match mode {
                0 => (flatten(&y), flatten(&z)),
                1 => (flatten(&x), flatten(&z)),
                _ => (flatten(&x), flatten(&y)),
            };
            let coeff = contract(cube, s, mode, &u, &v);
            if let Some(next) = best_response(&coeff, n) {
                match mode {
                    0 => x = next,
                    1 => y = next,
                    _ => z = next,
                }
            }
            let value = objective(cube, s, &x, &y, &z).norm();
            history.push(value);
        }
        let current = *history.last().unwrap();
        if prev.is_finite() && current - prev <= opts.tol * prev.abs().max(1e-300) {
            break;
        }
        prev = current;
    }
    let value = objective(cube, s, &x, &y, &z).norm();
    RestartResult { value, witness: (x, y, z), history }
}

fn objective(cube: &[C64], s: usize, x: &CMat, y: &CMat, z: &CMat) -> C64 {
    let coeff = contract(cube, s, 0, &flatten(y), &flatten(z));
    flatten(x).iter().zip(&coeff).map(|(a, b)| a * b).sum()
}

/// Alternating maximization of `|L_T|` over Hermitian unit-Frobenius triples.
///
/// Restart 0 starts from the reduced states of the dominant eigenvector of
/// the matrix view; the others from seeded random Hermitian matrices. Each
/// restart draws from its own stream, so the result does not depend on
/// scheduling.
pub fn trilinear_norm_lower(t: &Tensor3, opts: &AlsOptions) -> Result<TrilinearLower> {
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let n = t.local_dim();
    let cube = t.pair_layout();
    let anchor = spectral_norm(t)
        .eigenvector
        .map(|psi| partial_traces(&psi, n))
        .and_then(|(b, c)| Some((normalized_hermitian(b)?, normalized_hermitian(c)?)));

    let results: Vec<RestartResult> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let (y0, z0) = match (&anchor, r) {
                (Some((b, c)), 0) => (b.clone(), c.clone()),
                _ => {
                    let mut rng = linalg::seeded_rng(opts.seed, r as u64);
                    let y = normalized_hermitian(linalg::random_hermitian(&mut rng, n)).unwrap();
                    let z = normalized_hermitian(linalg::random_hermitian(&mut rng, n)).unwrap();
                    (y, z)
                }
            };
            run_restart(&cube, n, y0, z0, opts)
        })
        .collect();

    let best_restart = results
        .iter()
        .enumerate()
        .fold(0, |best, (i, r)| if r.value > results[best].value { i } else { best });
    let histories = results.iter().map(|r| r.history.clone()).collect();
    let (x, y, z) = results[best_restart].witness.clone();
    let value = trilinear_eval(t, &x, &y, &z)?;
    Ok(TrilinearLower { value: value.norm(), witness: TrilinearWitness { x, y, z, value }, histories, best_restart })
}

/// Certified upper bound on `‖T‖₂,₂,₂` for a sampled tensor at `N = 2`.
///
/// Enumerates the triple net built at `eps` and returns
/// `64 (ln N)^{3/2} (max |⟨g|X⊗Y⊗Z|g⟩ − Tr(X⊗Y⊗Z)| + 3ε(N^{3/2} + ‖g‖²))`.
pub fn trilinear_norm_upper_net(t: &Tensor3, eps: f64) -> Result<f64> {
    if t.local_dim() != 2 {
        return Err(Error::UnsupportedScale(format!(
            "net upper bound only runs at N = 2 (got N = {})",
            t.local_dim()
        )));
    }
    let net = nets::triple_net(2, eps, nets::DEFAULT_NET_SEED)?;
    trilinear_norm_upper_with(t, &net)
}

/// As [`trilinear_norm_upper_net`] with a prebuilt net.
pub fn trilinear_norm_upper_with(t: &Tensor3, net: &TripleNet) -> Result<f64> {
    let n = t.local_dim();
    if n != 2 || net.dim() != 2 {
        return Err(Error::UnsupportedScale(format!(
            "net upper bound only runs at N = 2 (got N = {n}, net N = {})",
            net.dim()
        )));
    }
    let g = t
        .raw()
        .ok_or_else(|| Error::InvalidParameter("tensor does not carry its sample vector g".into()))?;
    let max_dev = max_net_deviation(g, n, &net.factors());
    let g_norm2: f64 = g.iter().map(|x| x * x).sum();
    let eps = net.eps();
    let ln_n = (n as f64).ln();
    Ok(64.0 * ln_n.powf(1.5) * (max_dev + 3.0 * eps * ((n as f64).powf(1.5) + g_norm2)))
}

/// `max |⟨g|X⊗Y⊗Z|g⟩ − Tr X·Tr Y·Tr Z|` over all factor triples.
pub(crate) fn max_net_deviation(g: &[f64], n: usize, factors: &[&CMat]) -> f64 {
    let nn = n * n;
    let gat = |i: usize, j: usize, k: usize| g[(i * n + j) * n + k];
    let traces: Vec<f64> = factors.iter().map(|m| m.trace().re).collect();
    // Z as [Re Z_{kk'} ; Im Z_{kk'}] so that Re Σ W Z = w·z with w = [Re W ; −Im W].
    let zvecs: Vec<Vec<f64>> = factors
        .iter()
        .map(|m| {
            let flat = flatten(m);
            flat.iter().map(|z| z.re).chain(flat.iter().map(|z| z.im)).collect()
        })
        .collect();
    (0..factors.len())
        .into_par_iter()
        .map(|xi| {
            let x = factors[xi];
            // U[(j,k),(j',k')] = Σ_{i,i'} g_{ijk} g_{i'j'k'} X_{ii'}
            let mut u = vec![ZERO; nn * nn];
            for j in 0..n {
                for k in 0..n {
                    for jp in 0..n {
                        for kp in 0..n {
                            let mut acc = ZERO;
                            for i in 0..n {
                                for ip in 0..n {
                                    acc += x[(i, ip)] * (gat(i, j, k) * gat(ip, jp, kp));
                                }
                            }
                            u[(j * n + k) * nn + jp * n + kp] = acc;
                        }
                    }
                }
            }
            let mut best = 0.0f64;
            let mut w = vec![0.0f64; 2 * nn];
            for (yi, y) in factors.iter().enumerate() {
                for k in 0..n {
                    for kp in 0..n {
                        let mut acc = ZERO;
                        for j in 0..n {
                            for jp in 0..n {
                                acc += u[(j * n + k) * nn + jp * n + kp] * y[(j, jp)];
                            }
                        }
                        w[k * n + kp] = acc.re;
                        w[nn + k * n + kp] = -acc.im;
                    }
                }
                let txy = traces[xi] * traces[yi];
                for (zi, zv) in zvecs.iter().enumerate() {
                    let q: f64 = w.iter().zip(zv).map(|(a, b)| a * b).sum();
                    best = best.max((q - txy * traces[zi]).abs());
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}
