use super::{tensor_from_game, XorGame};
use crate::error::{Error, Result};
use crate::linalg;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact enumeration runs when `2Q` does not exceed this.
pub const EXACT_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalStrategy {
    pub chi: Vec<i8>,
    pub upsilon: Vec<i8>,
    pub zeta: Vec<i8>,
}

/// `Σ pi·sign·χ(i)υ(j)ζ(k)`.
pub fn classical_value(g: &XorGame, s: &ClassicalStrategy) -> Result<f64> {
    let q = g.questions();
    for v in [&s.chi, &s.upsilon, &s.zeta] {
        if v.len() != q {
            return Err(Error::Dimension { expected: q, got: v.len() });
        }
        if v.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidStrategy("classical answers must be +1 or -1".into()));
        }
    }
    let w = tensor_from_game(g);
    let mut acc = 0.0;
    for i in 0..q {
        for j in 0..q {
            let cij = (s.chi[i] * s.upsilon[j]) as f64;
            for k in 0..q {
                acc += w[(i * q + j) * q + k] * cij * s.zeta[k] as f64;
            }
        }
    }
    Ok(acc)
}

fn sign(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}

fn bits_to_signs(bits: u64, q: usize) -> Vec<i8> {
    (0..q).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Maximum bias over all deterministic strategies.
///
/// Enumerates the first two players (the first one's answer to question 0
/// fixed to `+1` by the global sign symmetry) and answers optimally for the
/// third: `ζ(k) = sign(Σ_{i,j} w_{ijk} χ(i) υ(j))`.
pub fn classical_bias_exact(g: &XorGame) -> Result<(f64, ClassicalStrategy)> {
    let q = g.questions();
    if 2 * q > EXACT_LIMIT {
        return Err(Error::UnsupportedScale(format!(
            "exact classical bias needs 2Q <= {EXACT_LIMIT} (Q = {q}); use classical_bias_heuristic"
        )));
    }
    let w = tensor_from_game(g);
    let chi_count = 1u64 << (q - 1);
    // (value, chi bits, upsilon bits); ties keep the smallest chi then first Gray step
    let best = (0..chi_count)
        .into_par_iter()
        .map(|half| {
            let chi_bits = half << 1;
            let chi = bits_to_signs(chi_bits, q);
            // a[j][k] = Σ_i w_ijk χ_i
            let mut a = vec![0.0; q * q];
            for i in 0..q {
                let c = chi[i] as f64;
                for jk in 0..q * q {
                    a[jk] += w[i * q * q + jk] * c;
                }
            }
            let mut ups = vec![1.0f64; q];
            let mut col: Vec<f64> = (0..q).map(|k| (0..q).map(|j| a[j * q + k]).sum()).collect();
            let mut best_val = col.iter().map(|c| c.abs()).sum::<f64>();
            let mut best_ups = 0u64;
            let mut gray = 0u64;
            for step in 1..(1u64 << q) {
                let bit = step.trailing_zeros() as usize;
                gray ^= 1 << bit;
                let old = ups[bit];
                ups[bit] = -old;
                for k in 0..q {
                    col[k] -= 2.0 * old * a[bit * q + k];
                }
                let val: f64 = col.iter().map(|c| c.abs()).sum();
                if val > best_val {
                    best_val = val;
                    best_ups = gray;
                }
            }
            (best_val, chi_bits, best_ups)
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX, 0),
            |x, y| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            },
        );
    let chi = bits_to_signs(best.1, q);
    let upsilon = bits_to_signs(best.2, q);
    let zeta = (0..q)
        .map(|k| {
            let mut c = 0.0;
            for i in 0..q {
                for j in 0..q {
                    c += w[(i * q + j) * q + k] * (chi[i] * upsilon[j]) as f64;
                }
            }
            sign(c)
        })
        .collect();
    let s = ClassicalStrategy { chi, upsilon, zeta };
    let value = classical_value(g, &s)?;
    Ok((value, s))
}

fn best_response(w: &[f64], q: usize, player: usize, s: &ClassicalStrategy) -> Vec<i8> {
    let mut field = vec![0.0; q];
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                let x = w[(i * q + j) * q + k];
                match player {
                    0 => field[i] += x * (s.upsilon[j] * s.zeta[k]) as f64,
                    1 => field[j] += x * (s.chi[i] * s.zeta[k]) as f64,
                    _ => field[k] += x * (s.chi[i] * s.upsilon[j]) as f64,
                }
            }
        }
    }
    field.into_iter().map(sign).collect()
}

/// Coordinate ascent from `restarts` random starts; each player's update is the
/// closed-form best response. Returns a lower bound on the classical bias.
pub fn classical_bias_heuristic(g: &XorGame, restarts: usize, seed: u64) -> Result<(f64, ClassicalStrategy)> {
    if restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let q = g.questions();
    let w = tensor_from_game(g);
    let runs: Vec<(f64, ClassicalStrategy)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = linalg::seeded_rng(seed, r as u64);
            let mut draw = || (0..q).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect::<Vec<i8>>();
            let mut s = ClassicalStrategy { chi: draw(), upsilon: draw(), zeta: draw() };
            let mut value = classical_value(g, &s).expect("well-formed strategy");
            loop {
                for player in 0..3 {
                    let next = best_response(&w, q, player, &s);
                    match player {
                        0 => s.chi = next,
                        1 => s.upsilon = next,
                        _ => s.zeta = next,
                    }
                }
                let next_value = classical_value(g, &s).expect("well-formed strategy");
                if next_value <= value + 1e-15 {
                    break;
                }
                value = next_value;
            }
            (classical_value(g, &s).expect("well-formed strategy"), s)
        })
        .collect();
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("restarts >= 1");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures;

    fn brute_force(g: &XorGame) -> f64 {
        let q = g.questions();
        let mut best = f64::NEG_INFINITY;
        for a in 0..1u64 << q {
            for b in 0..1u64 << q {
                for c in 0..1u64 << q {
                    let s = ClassicalStrategy {
                        chi: bits_to_signs(a, q),
                        upsilon: bits_to_signs(b, q),
                        zeta: bits_to_signs(c, q),
                    };
                    best = best.max(classical_value(g, &s).unwrap());
                }
            }
        }
        best
    }

    #[test]
    fn mermin_exact_is_half() {
        let g = fixtures::mermin();
        let (v, s) = classical_bias_exact(&g).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(brute_force(&g), 0.5);
        assert_eq!(classical_value(&g, &s).unwrap(), v);
    }

    #[test]
    fn trivial_games() {
        let pos = XorGame::new(2, vec![0.125; 8], vec![1; 8]).unwrap();
        assert_eq!(classical_bias_exact(&pos).unwrap().0, 1.0);
        assert_eq!(classical_bias_heuristic(&pos, 3, 1).unwrap().0, 1.0);
        let neg = XorGame::new(1, vec![1.0], vec![-1]).unwrap();
        assert_eq!(classical_bias_exact(&neg).unwrap().0, 1.0);
    }

    #[test]
    fn exact_matches_brute_force_on_random_games() {
        let mut rng = linalg::seeded_rng(17, 0);
        for q in 1..=3 {
            for _ in 0..5 {
                let w: Vec<f64> = (0..q * q * q).map(|_| rng.random::<f64>() - 0.5).collect();
                let g = XorGame::from_weights(q, &w).unwrap();
                let exact = classical_bias_exact(&g).unwrap().0;
                assert!((exact - brute_force(&g)).abs() < 1e-12);
                let h = classical_bias_heuristic(&g, 16, 3).unwrap().0;
                assert!(h <= exact + 1e-12);
            }
        }
    }

    #[test]
    fn heuristic_on_mermin() {
        assert!((classical_bias_heuristic(&fixtures::mermin(), 32, 0).unwrap().0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exact_refuses_large_games() {
        let q = 16;
        let g = XorGame::new(q, vec![1.0 / (q * q * q) as f64; q * q * q], vec![1; q * q * q]).unwrap();
        assert!(matches!(classical_bias_exact(&g), Err(Error::UnsupportedScale(_))));
    }
}
