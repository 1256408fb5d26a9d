//! Closed-form tail envelopes and Monte-Carlo checks against them, plus the
//! empirical distribution of `‖T‖₃,₃ / N³` for sampled tensors.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::tensor::{sample_tensor, spectral_norm, Distribution, SamplerConfig};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::E;
use std::io::Write;

pub const MIN_TRIALS: usize = 10_000;
const BLOCK: usize = 4096;

/// Which deviation bound, with the parameters it needs.
#[derive(Debug, Clone, PartialEq)]
pub enum TailSpec {
    /// `|g|` for standard normal `g`.
    Gaussian,
    /// `|Σ h_i|` for independent centered `h_i ∈ [a_i, b_i]`; entries are `(a_i, b_i)`.
    Hoeffding { ranges: Vec<(f64, f64)> },
    /// `|Σ a_i h_i|` for centered `h_i` with `Pr[|h_i| ≥ t] ≤ e^{1−t/K}`.
    Bernstein { k: f64, weights: Vec<f64> },
    /// `|‖g‖² − N|` for `g ~ N(0, I_N)`.
    ChiSquare { n: usize },
    /// `|Σ_j (Σ_i a_i ε_ij)² − N‖a‖²|` with `N = a.len()`.
    BernoulliProjection { weights: Vec<f64> },
    /// `|⟨g|A|g⟩ − Tr A|` for real Gaussian `g` and Hermitian `A`.
    QuadFormGaussian { matrix: CMat },
    /// `|Σ A_ij ε_i ε_j − Tr A|` for random signs `ε`; the constant has no
    /// default and must be supplied.
    HansonWright { matrix: CMat, constant: Option<f64> },
}

impl TailSpec {
    pub fn name(&self) -> &'static str {
        match self {
            TailSpec::Gaussian => "gaussian",
            TailSpec::Hoeffding { .. } => "hoeffding",
            TailSpec::Bernstein { .. } => "bernstein",
            TailSpec::ChiSquare { .. } => "chi_square",
            TailSpec::BernoulliProjection { .. } => "bernoulli_projection",
            TailSpec::QuadFormGaussian { .. } => "quad_form_gaussian",
            TailSpec::HansonWright { .. } => "hanson_wright",
        }
    }
}

/// A validated [`TailSpec`] with the norms its bound needs.
#[derive(Debug, Clone)]
pub struct TailEnvelope {
    spec: TailSpec,
    /// `Σ(b−a)²`, `‖a‖₂`, `N`, or `‖A‖_F`, depending on the bound.
    scale2: f64,
    /// `‖a‖∞` or `‖A‖∞` where used.
    sup: f64,
    trace: f64,
    real_part: Option<CMat>,
}

fn spectral_sup(a: &CMat) -> f64 {
    linalg::hermitian_eigh(a).0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn check_hermitian(a: &CMat) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::InvalidParameter("matrix must be square and nonempty".into()));
    }
    if linalg::hermitian_defect(a) > 1e-12 * a.iter().fold(1.0f64, |m, z| m.max(z.norm())) {
        return Err(Error::InvalidParameter("matrix must be Hermitian".into()));
    }
    Ok(())
}

pub fn envelope(spec: TailSpec) -> Result<TailEnvelope> {
    let mut env = TailEnvelope { spec: spec.clone(), scale2: 0.0, sup: 0.0, trace: 0.0, real_part: None };
    match &spec {
        TailSpec::Gaussian => {}
        TailSpec::Hoeffding { ranges } => {
            if ranges.is_empty() || ranges.iter().any(|&(a, b)| !(a <= 0.0 && 0.0 <= b && a < b)) {
                return Err(Error::InvalidParameter("each range needs a <= 0 <= b and a < b".into()));
            }
            env.scale2 = ranges.iter().map(|(a, b)| (b - a) * (b - a)).sum();
        }
        TailSpec::Bernstein { k, weights } => {
            // the sampler draws h = g² − 1, which satisfies the hypothesis for K ≥ 2
            if !(*k >= 2.0) || weights.is_empty() {
                return Err(Error::InvalidParameter("Bernstein sampling needs K >= 2 and nonempty weights".into()));
            }
            env.scale2 = weights.iter().map(|a| a * a).sum();
            env.sup = weights.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        }
        TailSpec::ChiSquare { n } => {
            if *n == 0 {
                return Err(Error::InvalidParameter("N must be positive".into()));
            }
            env.scale2 = *n as f64;
        }
        TailSpec::BernoulliProjection { weights } => {
            if weights.is_empty() {
                return Err(Error::InvalidParameter("weights must be nonempty".into()));
            }
            env.scale2 = weights.iter().map(|a| a * a).sum();
        }
        TailSpec::QuadFormGaussian { matrix } | TailSpec::HansonWright { matrix, .. } => {
            check_hermitian(matrix)?;
            if let TailSpec::HansonWright { constant, .. } = &spec {
                match constant {
                    None => return Err(Error::UnspecifiedConstant),
                    Some(c) if !(*c > 0.0) => {
                        return Err(Error::InvalidParameter("Hanson-Wright constant must be positive".into()))
                    }
                    _ => {}
                }
            }
            env.scale2 = linalg::frobenius(matrix).powi(2);
            env.sup = spectral_sup(matrix);
            env.trace = matrix.trace().re;
            env.real_part = Some(matrix.map(|z| linalg::C64::new(z.re, 0.0)));
        }
    }
    Ok(env)
}

impl TailEnvelope {
    pub fn spec(&self) -> &TailSpec {
        &self.spec
    }

    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    /// The probability bound at deviation `t ≥ 0`.
    pub fn bound(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        let safe_div = |num: f64, den: f64| if den > 0.0 { num / den } else { f64::INFINITY };
        match &self.spec {
            TailSpec::Gaussian => 2.0 * (-t * t / 2.0).exp(),
            TailSpec::Hoeffding { .. } => 2.0 * (-2.0 * safe_div(t * t, self.scale2)).exp(),
            TailSpec::Bernstein { k, .. } => {
                let m = safe_div(t * t, 2.0 * E * k * k * self.scale2).min(safe_div(t, k * self.sup));
                2.0 * (-m / (4.0 * E)).exp()
            }
            TailSpec::ChiSquare { .. } => {
                let m = (t * t / (4.0 * E * self.scale2)).min(t);
                2.0 * (-m / (8.0 * E)).exp()
            }
            TailSpec::BernoulliProjection { weights } => {
                let a2 = self.scale2;
                let n = weights.len() as f64;
                let m = safe_div(t * t, 8.0 * E * a2 * a2 * n).min(safe_div(t, 2.0 * a2));
                2.0 * (-m / (4.0 * E)).exp()
            }
            TailSpec::QuadFormGaussian { .. } => {
                let m = safe_div(t * t, 12.0 * E * self.scale2).min(safe_div(t, self.sup));
                2.0 * (-m / (24.0 * E)).exp()
            }
            TailSpec::HansonWright { constant, .. } => {
                let c = constant.expect("validated at construction");
                let m = safe_div(t * t, self.scale2).min(safe_div(t, self.sup));
                2.0 * (-c * m).exp()
            }
        }
    }

    /// Whether a sampled deviation counts as exceeding `t`.
    fn exceeds(&self, stat: f64, t: f64) -> bool {
        match self.spec {
            TailSpec::BernoulliProjection { .. } => stat > t,
            _ => stat >= t,
        }
    }

    /// One draw of the deviation whose tail the bound controls.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let normal = |rng: &mut R| rng.sample::<f64, _>(StandardNormal);
        let sign = |rng: &mut R| if rng.random::<bool>() { 1.0 } else { -1.0 };
        match &self.spec {
            TailSpec::Gaussian => normal(rng).abs(),
            TailSpec::Hoeffding { ranges } => {
                // two-point law on {a, b} with mean zero
                let s: f64 = ranges
                    .iter()
                    .map(|&(a, b)| if rng.random::<f64>() < -a / (b - a) { b } else { a })
                    .sum();
                s.abs()
            }
            TailSpec::Bernstein { weights, .. } => {
                let s: f64 = weights
                    .iter()
                    .map(|a| {
                        let g = normal(rng);
                        a * (g * g - 1.0)
                    })
                    .sum();
                s.abs()
            }
            TailSpec::ChiSquare { n } => {
                let s: f64 = (0..*n).map(|_| normal(rng).powi(2)).sum();
                (s - *n as f64).abs()
            }
            TailSpec::BernoulliProjection { weights } => {
                let n = weights.len();
                let mut total = 0.0;
                for _ in 0..n {
                    let col: f64 = weights.iter().map(|a| a * sign(rng)).sum();
                    total += col * col;
                }
                (total - n as f64 * self.scale2).abs()
            }
            TailSpec::QuadFormGaussian { .. } | TailSpec::HansonWright { .. } => {
                let re = self.real_part.as_ref().expect("set for matrix bounds");
                let n = re.nrows();
                let gaussian = matches!(self.spec, TailSpec::QuadFormGaussian { .. });
                let v: Vec<f64> = (0..n).map(|_| if gaussian { normal(rng) } else { sign(rng) }).collect();
                let mut q = 0.0;
                for i in 0..n {
                    let mut row = 0.0;
                    for j in 0..n {
                        row += re[(i, j)].re * v[j];
                    }
                    q += v[i] * row;
                }
                (q - self.trace).abs()
            }
        }
    }

    /// Deviation grid at multiples of the bound's natural scale.
    pub fn default_grid(&self) -> Vec<f64> {
        let (scale, mults): (f64, &[f64]) = match &self.spec {
            TailSpec::Gaussian => (1.0, &[0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0]),
            TailSpec::Hoeffding { .. } => (self.scale2.sqrt() / 2.0, &[0.25, 0.5, 1.0, 1.5, 2.0, 3.0]),
            TailSpec::Bernstein { k, .. } => (k * self.scale2.sqrt(), &[0.5, 1.0, 2.0, 4.0, 8.0, 16.0]),
            TailSpec::ChiSquare { .. } => (self.scale2.sqrt(), &[0.5, 1.0, 2.0, 4.0, 8.0, 16.0]),
            TailSpec::BernoulliProjection { weights } => {
                (self.scale2 * (weights.len() as f64).sqrt(), &[0.5, 1.0, 2.0, 4.0, 8.0, 16.0])
            }
            TailSpec::QuadFormGaussian { .. } | TailSpec::HansonWright { .. } => {
                (self.scale2.sqrt(), &[1.0, 2.0, 4.0, 8.0, 16.0])
            }
        };
        mults.iter().map(|m| m * scale).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub name: String,
    pub t: Vec<f64>,
    pub empirical: Vec<f64>,
    pub envelope: Vec<f64>,
    pub stderr: Vec<f64>,
    pub verdict: Vec<bool>,
    pub trials: usize,
    pub seed: u64,
}

impl TailReport {
    pub fn passed(&self) -> bool {
        self.verdict.iter().all(|&v| v)
    }

    /// Columns `t, empirical, envelope, stderr, verdict`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "empirical", "envelope", "stderr", "verdict"])?;
        for i in 0..self.t.len() {
            out.write_record([
                format!("{}", self.t[i]),
                format!("{}", self.empirical[i]),
                format!("{:e}", self.envelope[i]),
                format!("{:e}", self.stderr[i]),
                if self.verdict[i] { "pass" } else { "fail" }.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Exceedance fractions over `trials` seeded draws, compared with the bound.
///
/// Draws run in fixed blocks, each on its own random stream, so the report
/// is the same for any thread count.
pub fn empirical_tail(env: &TailEnvelope, t_grid: &[f64], trials: usize, seed: u64) -> Result<TailReport> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let blocks = trials.div_ceil(BLOCK);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = linalg::seeded_rng(seed, b as u64);
            let len = BLOCK.min(trials - b * BLOCK);
            let mut c = vec![0usize; t_grid.len()];
            for _ in 0..len {
                let stat = env.sample(&mut rng);
                for (ci, &t) in c.iter_mut().zip(t_grid) {
                    if env.exceeds(stat, t) {
                        *ci += 1;
                    }
                }
            }
            c
        })
        .reduce(
            || vec![0usize; t_grid.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    let n = trials as f64;
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let envelope: Vec<f64> = t_grid.iter().map(|&t| env.bound(t)).collect();
    let stderr: Vec<f64> = empirical.iter().map(|p| (p * (1.0 - p) / n).sqrt()).collect();
    let verdict = (0..t_grid.len()).map(|i| empirical[i] <= envelope[i] + 3.0 * stderr[i]).collect();
    Ok(TailReport { name: env.name().into(), t: t_grid.to_vec(), empirical, envelope, stderr, verdict, trials, seed })
}

#[derive(Debug, Clone)]
pub struct SpectralLbStats {
    pub qubits: u32,
    /// `‖T‖₃,₃ / N³` per sample, in sample order.
    pub ratios: Vec<f64>,
    pub median: f64,
    /// `(τ, fraction of samples with ratio ≥ 1 − τ/N)`.
    pub tau_grid: Vec<(f64, f64)>,
}

impl SpectralLbStats {
    pub fn fraction_at_least(&self, threshold: f64) -> f64 {
        self.ratios.iter().filter(|&&r| r >= threshold).count() as f64 / self.ratios.len() as f64
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m == 0 {
        f64::NAN
    } else if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

pub const DEFAULT_TAUS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0];

/// Distribution of `‖T‖₃,₃ / N³` over `trials` sampled tensors.
///
/// Sample `s` uses the seed derived from `(seed, s)`; an override vector is
/// reused for every sample.
pub fn verify_spectral_lb(qubits: u32, trials: usize, seed: u64, distribution: Distribution) -> Result<SpectralLbStats> {
    if !(1..=3).contains(&qubits) {
        return Err(Error::UnsupportedScale(format!("spectral check runs for n in 1..=3, got {qubits}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let n = 1usize << qubits;
    let n3 = (n * n * n) as f64;
    let ratios = (0..trials)
        .into_par_iter()
        .map(|s| {
            let cfg = SamplerConfig { distribution: distribution.clone(), seed: linalg::derive_seed(seed, s as u64) };
            let t = sample_tensor(qubits, &cfg)?;
            Ok(spectral_norm(&t).value / n3)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut stats = SpectralLbStats { qubits, median: median(&ratios), ratios, tau_grid: Vec::new() };
    stats.tau_grid = DEFAULT_TAUS.iter().map(|&tau| (tau, stats.fraction_at_least(1.0 - tau / n as f64))).collect();
    Ok(stats)
}
