//! The sample → game → biases/norms pipeline, the verification batteries and
//! file summaries used by the command-line tool.

use crate::concentration::{self, envelope, TailSpec};
use crate::error::{Error, Result};
use crate::game::{self, fixtures, EntangledStrategy, SeesawOptions, XorGame};
use crate::linalg::{self, CMat};
use crate::nets::{self, TripleNet};
use crate::pauli::{self, inverse_fourier};
use crate::tensor::{self, AlsOptions, Distribution, SamplerConfig, Tensor3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// One sampled instance of the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub n: u32,
    #[serde(rename = "N")]
    pub dim: usize,
    pub seed: u64,
    pub spectral: f64,
    pub trilinear_lower: f64,
    pub trilinear_upper: Option<f64>,
    pub classical_bias: f64,
    /// `true` when `classical_bias` is the exact maximum, `false` for the heuristic.
    pub classical_exact: bool,
    pub pauli_bias: f64,
    pub ratio_estimate: f64,
    pub prop31_lower: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_list: Vec<u32>,
    pub samples: usize,
    pub seed: u64,
    pub als: AlsOptions,
    pub heuristic_restarts: usize,
    pub net_eps: f64,
    pub budget: Option<Duration>,
    /// Index of the first row to compute, from a resume token.
    pub start: usize,
}

impl SweepConfig {
    pub fn new(n_list: Vec<u32>, samples: usize, seed: u64) -> Self {
        Self {
            n_list,
            samples,
            seed,
            als: AlsOptions::default(),
            heuristic_restarts: 64,
            net_eps: 0.5,
            budget: None,
            start: 0,
        }
    }

    fn jobs(&self) -> Vec<(u32, usize)> {
        self.n_list.iter().flat_map(|&n| (0..self.samples).map(move |s| (n, s))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<GapRow>,
    /// Set when the time budget ran out: pass it back as `start` to continue.
    pub resume_token: Option<usize>,
}

/// Seed of row `(n, sample)` under a master seed.
pub fn row_seed(seed: u64, n: u32, sample: usize) -> u64 {
    linalg::derive_seed(seed, ((n as u64) << 32) | sample as u64)
}

/// Compute one row. `net` is used for the `n = 1` upper bound.
pub fn gap_row(n: u32, sample: usize, cfg: &SweepConfig, net: Option<&TripleNet>) -> Result<GapRow> {
    let seed = row_seed(cfg.seed, n, sample);
    let t = tensor::sample_tensor(n, &SamplerConfig::gaussian(seed))?;
    let dim = t.local_dim();
    let spectral = tensor::spectral_norm(&t).value;
    let lower = tensor::trilinear_norm_lower(&t, &AlsOptions { seed, ..cfg.als })?.value;
    let upper = match (n, net) {
        (1, Some(net)) => Some(tensor::trilinear_norm_upper_with(&t, net)?),
        _ => None,
    };
    let report = game::game_from_tensor(&t)?;
    let pauli_bias = game::entangled_bias_eval(&report.game, &report.strategy)?;
    let q = report.game.questions();
    let (classical_bias, classical_exact) = if 2 * q <= game::EXACT_LIMIT {
        (game::classical_bias_exact(&report.game)?.0, true)
    } else {
        (game::classical_bias_heuristic(&report.game, cfg.heuristic_restarts, seed)?.0, false)
    };
    let prop31_lower = upper.map(|u| spectral / (4.0 * (dim as f64).powf(1.5) * u));
    Ok(GapRow {
        n,
        dim,
        seed,
        spectral,
        trilinear_lower: lower,
        trilinear_upper: upper,
        classical_bias,
        classical_exact,
        pauli_bias,
        ratio_estimate: pauli_bias / classical_bias,
        prop31_lower,
    })
}

/// One row per `(n, sample)` in that order. Rows are computed in parallel
/// batches; when the budget runs out after a batch the outcome carries a
/// resume token.
pub fn gap_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    if cfg.n_list.iter().any(|n| !(1..=3).contains(n)) {
        return Err(Error::UnsupportedScale("gap sweep runs for n in 1..=3".into()));
    }
    let jobs = cfg.jobs();
    if cfg.start > jobs.len() {
        return Err(Error::InvalidParameter(format!("resume token {} is past the last row {}", cfg.start, jobs.len())));
    }
    let net = if cfg.n_list.contains(&1) {
        Some(nets::triple_net(2, cfg.net_eps, nets::DEFAULT_NET_SEED)?)
    } else {
        None
    };
    let began = Instant::now();
    let batch = rayon::current_num_threads().max(1);
    let mut rows = Vec::new();
    let mut next = cfg.start;
    while next < jobs.len() {
        if let Some(budget) = cfg.budget {
            if began.elapsed() >= budget {
                return Ok(SweepOutcome { rows, resume_token: Some(next) });
            }
        }
        let end = (next + batch).min(jobs.len());
        let chunk: Vec<GapRow> = jobs[next..end]
            .par_iter()
            .map(|&(n, s)| gap_row(n, s, cfg, net.as_ref()))
            .collect::<Result<_>>()?;
        rows.extend(chunk);
        next = end;
    }
    Ok(SweepOutcome { rows, resume_token: None })
}

pub fn write_gap_csv<W: Write>(w: W, rows: &[GapRow], header: bool) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(header).from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    if rows.is_empty() && header {
        out.write_record(GAP_COLUMNS)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_gap_csv<R: Read>(r: R) -> Result<Vec<GapRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut rows = Vec::new();
    for rec in rdr.deserialize() {
        rows.push(rec?);
    }
    Ok(rows)
}

pub const GAP_COLUMNS: [&str; 11] = [
    "n",
    "N",
    "seed",
    "spectral",
    "trilinear_lower",
    "trilinear_upper",
    "classical_bias",
    "classical_exact",
    "pauli_bias",
    "ratio_estimate",
    "prop31_lower",
];

/// Median `ratio_estimate` per `n`, in increasing `n`.
pub fn median_ratios(rows: &[GapRow]) -> Vec<(u32, f64)> {
    let mut ns: Vec<u32> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let v: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.ratio_estimate).collect();
            (n, concentration::median(&v))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tails,
    Nets,
    Lorentz,
    Identities,
    Theorems,
    SpectralLb,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Tails, Suite::Nets, Suite::Lorentz, Suite::Identities, Suite::Theorems, Suite::SpectralLb];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tails => "tails",
            Suite::Nets => "nets",
            Suite::Lorentz => "lorentz",
            Suite::Identities => "identities",
            Suite::Theorems => "theorems",
            Suite::SpectralLb => "spectral_lb",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || x.name().replace('_', "-") == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "suite {}: {}", self.suite, if self.passed() { "passed" } else { "FAILED" })
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// Two fixed Hermitian test matrices of size 32: a seeded GUE draw and a
/// diagonal with a decaying spectrum.
pub fn reference_quad_forms(seed: u64) -> [CMat; 2] {
    let mut rng = linalg::seeded_rng(seed, 0);
    let gue = linalg::random_hermitian(&mut rng, 32);
    let diag = CMat::from_fn(32, 32, |i, j| {
        if i == j {
            linalg::C64::new(1.0 / (1.0 + i as f64), 0.0)
        } else {
            linalg::ZERO
        }
    });
    [gue, diag]
}

fn tails_suite(seed: u64) -> Result<Vec<Check>> {
    let [a1, a2] = reference_quad_forms(seed);
    let specs = vec![
        TailSpec::Gaussian,
        TailSpec::ChiSquare { n: 16 },
        TailSpec::ChiSquare { n: 64 },
        TailSpec::QuadFormGaussian { matrix: a1 },
        TailSpec::QuadFormGaussian { matrix: a2 },
        TailSpec::BernoulliProjection { weights: vec![1.0, -0.5, 0.25, 0.75, -1.0, 0.5, 0.1, -0.3] },
        TailSpec::Hoeffding { ranges: vec![(-1.0, 1.0); 16] },
        TailSpec::Bernstein { k: 2.0, weights: vec![0.5, -1.0, 0.25, 2.0] },
    ];
    let mut checks = Vec::new();
    for (i, spec) in specs.into_iter().enumerate() {
        let env = envelope(spec)?;
        let report = concentration::empirical_tail(&env, &env.default_grid(), 100_000, linalg::derive_seed(seed, i as u64))?;
        let worst = (0..report.t.len())
            .map(|j| report.empirical[j] - report.envelope[j])
            .fold(f64::NEG_INFINITY, f64::max);
        checks.push(check(
            format!("{} #{i}", env.name()),
            report.passed(),
            format!("{} grid points, max(empirical - envelope) = {worst:.3e}", report.t.len()),
        ));
    }
    Ok(checks)
}

fn nets_suite(seed: u64) -> Result<Vec<Check>> {
    let eps = 0.5;
    let mut checks = Vec::new();
    let sphere = nets::sphere_net(2, eps, seed)?;
    let cov = sphere.check_covering(10_000, seed);
    checks.push(check(
        "sphere net N=2",
        cov.passed(),
        format!("{} points (volume bound {:.0}), max distance {:.4}", sphere.len(), sphere.volume_bound(), cov.max_distance),
    ));
    let triple = nets::triple_net(2, eps, seed)?;
    for k in 1..=2 {
        let level = triple.level(k);
        let cov = level.check_covering(10_000, seed);
        checks.push(check(
            format!("projector net k={k}"),
            cov.passed(),
            format!("{} elements (bound {:.0}), max distance {:.4}", level.len(), level.size_bound(), cov.max_distance),
        ));
    }
    let cov = triple.check_covering(1_000, seed);
    checks.push(check(
        "triple net",
        cov.passed(),
        format!("{} triples, max distance {:.4} (radius {:.2})", triple.count(), cov.max_distance, 3.0 * eps),
    ));
    Ok(checks)
}

fn lorentz_suite(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (idx, n) in [2usize, 4, 8, 16].into_iter().enumerate() {
        let results: Vec<(f64, f64)> = (0..1000)
            .into_par_iter()
            .map(|i| {
                let mut rng = linalg::seeded_rng(linalg::derive_seed(seed, idx as u64), i as u64);
                let h = linalg::random_hermitian(&mut rng, n);
                let scale = linalg::frobenius(&h) * (1.0 + rand::Rng::random::<f64>(&mut rng));
                let x = h.unscale(scale);
                let d = nets::lorentz_decompose(&x).expect("input satisfies the preconditions");
                let err = (d.reconstruct(n) - &x).iter().fold(0.0f64, |m, z| m.max(z.norm()));
                (err, d.l1_norm())
            })
            .collect();
        let bound = 4.0 * (n as f64).ln().sqrt();
        let max_err = results.iter().fold(0.0f64, |m, r| m.max(r.0));
        let max_l1 = results.iter().fold(0.0f64, |m, r| m.max(r.1));
        checks.push(check(
            format!("decomposition N={n}"),
            max_err <= 1e-10 && max_l1 <= bound,
            format!("max reconstruction error {max_err:.2e}, max coefficient sum {max_l1:.4} (bound {bound:.4})"),
        ));
    }
    Ok(checks)
}

fn identities_suite(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 1..=3u32 {
        let samples = if n == 3 { 3 } else { 5 };
        let mut worst_parseval = 0.0f64;
        let mut worst_round = 0.0f64;
        let mut worst_identity = 0.0f64;
        for s in 0..samples {
            let t = tensor::sample_tensor(n, &SamplerConfig::gaussian(row_seed(seed, n, s)))?;
            let table = pauli::fourier(&t);
            let n3 = (t.local_dim() as f64).powi(3);
            let fro2 = t.frobenius_norm().powi(2);
            worst_parseval = worst_parseval.max((table.squared_norm() - n3 * fro2).abs() / (n3 * fro2));
            let back = inverse_fourier(&table);
            worst_round = worst_round.max((back.matrix() - t.matrix()).iter().fold(0.0f64, |m, z| m.max(z.norm())));
            let id = game::pauli_identity(&t)?;
            let target = n3 * id.spectral;
            worst_identity = worst_identity.max((id.fourier_side - linalg::C64::new(target, 0.0)).norm() / target);
        }
        checks.push(check(format!("parseval n={n}"), worst_parseval <= 1e-8, format!("max relative error {worst_parseval:.2e}")));
        checks.push(check(format!("round trip n={n}"), worst_round <= 1e-9, format!("max entry error {worst_round:.2e}")));
        checks.push(check(
            format!("pauli identity n={n}"),
            worst_identity <= 1e-8,
            format!("max relative error {worst_identity:.2e}"),
        ));
    }
    Ok(checks)
}

fn theorem_checks(name: &str, g: &XorGame, lb: f64, d: usize, beta: f64) -> [Check; 2] {
    let q = game::check_question_bound(g, lb, beta);
    let dd = game::check_dimension_bound(g, lb, d, beta);
    [
        check(format!("{name} questions"), q.holds, format!("{:.6} <= {:.6}", q.lhs, q.bound)),
        check(format!("{name} dimension d={d}"), dd.holds, format!("{:.6} <= {:.6}", dd.lhs, dd.bound)),
    ]
}

fn theorems_suite(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let seesaw = SeesawOptions { d: 2, restarts: 8, seed, ..Default::default() };
    for (name, g, cert) in [
        ("mermin", fixtures::mermin(), fixtures::ghz_strategy()),
        ("embedded chsh", fixtures::embedded_chsh(), fixtures::chsh_strategy()),
    ] {
        let beta = game::classical_bias_exact(&g)?.0;
        let lb = game::entangled_bias_eval(&g, &cert)?.max(game::seesaw_entangled_bias(&g, &seesaw)?.value);
        checks.extend(theorem_checks(name, &g, lb, 2, beta));
    }
    for s in 0..10 {
        let t = tensor::sample_tensor(1, &SamplerConfig::gaussian(row_seed(seed, 1, s)))?;
        let report = game::game_from_tensor(&t)?;
        let beta = game::classical_bias_exact(&report.game)?.0;
        let pauli = game::entangled_bias_eval(&report.game, &report.strategy)?;
        let lb = pauli.max(game::seesaw_entangled_bias(&report.game, &seesaw)?.value);
        checks.extend(theorem_checks(&format!("sampled game {s}"), &report.game, lb, 2, beta));
    }
    Ok(checks)
}

/// Calibrated thresholds for `‖T‖₃,₃/N³` at `N = 8`.
pub const SPECTRAL_MEDIAN_THRESHOLD: f64 = 0.90;
pub const SPECTRAL_FLOOR: f64 = 0.80;
pub const SPECTRAL_FLOOR_FRACTION: f64 = 0.95;

fn spectral_suite(seed: u64) -> Result<Vec<Check>> {
    let stats = concentration::verify_spectral_lb(3, 200, seed, Distribution::Gaussian)?;
    let frac = stats.fraction_at_least(SPECTRAL_FLOOR);
    let mut checks = vec![
        check(
            "median ratio N=8",
            stats.median >= SPECTRAL_MEDIAN_THRESHOLD,
            format!("median {:.4} (threshold {SPECTRAL_MEDIAN_THRESHOLD})", stats.median),
        ),
        check(
            "floor fraction N=8",
            frac >= SPECTRAL_FLOOR_FRACTION,
            format!("{:.1}% of samples >= {SPECTRAL_FLOOR}", 100.0 * frac),
        ),
    ];
    for (tau, f) in &stats.tau_grid {
        checks.push(check(format!("tau={tau}"), true, format!("{:.1}% of samples >= 1 - tau/N", 100.0 * f)));
    }
    Ok(checks)
}

/// Run one verification battery.
pub fn verify_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Tails => tails_suite(seed)?,
        Suite::Nets => nets_suite(seed)?,
        Suite::Lorentz => lorentz_suite(seed)?,
        Suite::Identities => identities_suite(seed)?,
        Suite::Theorems => theorems_suite(seed)?,
        Suite::SpectralLb => spectral_suite(seed)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn summarize_tensor(t: &Tensor3) -> String {
    format!(
        "tensor: n = {}, N = {}, Hermitian = {}, Frobenius norm = {:.6}, sample vector stored = {}",
        t.qubits(),
        t.local_dim(),
        t.is_hermitian(1e-12),
        t.frobenius_norm(),
        t.raw().is_some()
    )
}

fn summarize_game(g: &XorGame) -> String {
    let nz: Vec<f64> = g.pi().iter().copied().filter(|&p| p > 0.0).collect();
    let min = nz.iter().copied().fold(f64::INFINITY, f64::min);
    let max = nz.iter().copied().fold(0.0, f64::max);
    format!("game: Q = {}, support = {}, min pi = {min:.6e}, max pi = {max:.6e}", g.questions(), g.support_size())
}

fn summarize_gap(rows: &[GapRow]) -> String {
    let mut ns: Vec<u32> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let mut out = format!("gap sweep: {} rows\n", rows.len());
    out.push_str("n  N  rows  min  q25  median  q75  max  (ratio_estimate)\n");
    for n in ns {
        let mut v: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.ratio_estimate).collect();
        v.sort_by(f64::total_cmp);
        let dim = 1usize << n;
        out.push_str(&format!(
            "{n}  {dim}  {}  {:.4}  {:.4}  {:.4}  {:.4}  {:.4}\n",
            v.len(),
            v[0],
            quantile(&v, 0.25),
            quantile(&v, 0.5),
            quantile(&v, 0.75),
            v[v.len() - 1]
        ));
    }
    out.trim_end().to_string()
}

/// Human-readable summary of a tensor, net, game CSV or gap CSV file.
pub fn show(path: impl AsRef<Path>) -> Result<String> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(tensor::TENSOR_MAGIC) {
        return Ok(summarize_tensor(&tensor::read_tensor(&mut bytes.as_slice())?));
    }
    if bytes.starts_with(nets::NET_MAGIC) {
        let (dim, mats) = nets::read_matrices(&mut bytes.as_slice())?;
        return Ok(format!("net: N = {dim}, {} elements", mats.len()));
    }
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::Format("not a tensor, net or CSV file".into()))?;
    let header = text.lines().next().unwrap_or("").trim();
    if header == "q1,q2,q3,pi,sign" {
        return Ok(summarize_game(&XorGame::read_csv(text.as_bytes())?));
    }
    if header == GAP_COLUMNS.join(",") {
        let rows = read_gap_csv(text.as_bytes())?;
        if rows.is_empty() {
            return Ok("gap sweep: 0 rows".into());
        }
        return Ok(summarize_gap(&rows));
    }
    Err(Error::Format(format!("unrecognized header `{header}`")))
}

/// Read a strategy JSON file.
pub fn load_strategy(path: impl AsRef<Path>) -> Result<EntangledStrategy> {
    EntangledStrategy::read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn n1_row_uses_exact_classical_bias() {
        let cfg = SweepConfig::new(vec![1], 1, 3);
        let net = nets::triple_net(2, cfg.net_eps, nets::DEFAULT_NET_SEED).unwrap();
        let row = gap_row(1, 0, &cfg, Some(&net)).unwrap();
        assert!(row.classical_exact);
        assert_eq!(row.dim, 2);
        assert!(row.trilinear_upper.unwrap() >= row.trilinear_lower);
        assert!(row.prop31_lower.unwrap() <= row.ratio_estimate + 1e-9);
        assert!(row.pauli_bias <= 1.0 + 1e-12 && row.classical_bias > 0.0 && row.classical_bias <= 1.0);
    }

    #[test]
    fn sweep_is_reproducible_and_resumable() {
        let mut cfg = SweepConfig::new(vec![1], 3, 9);
        let full = gap_sweep(&cfg).unwrap();
        assert_eq!(full.rows.len(), 3);
        assert!(full.resume_token.is_none());
        cfg.budget = Some(Duration::ZERO);
        let stopped = gap_sweep(&cfg).unwrap();
        assert_eq!(stopped.resume_token, Some(0));
        cfg.budget = None;
        cfg.start = 1;
        let rest = gap_sweep(&cfg).unwrap();
        assert_eq!(rest.rows, full.rows[1..]);
    }

    #[test]
    fn gap_csv_round_trip() {
        let cfg = SweepConfig::new(vec![1], 2, 1);
        let rows = gap_sweep(&cfg).unwrap().rows;
        let mut buf = Vec::new();
        write_gap_csv(&mut buf, &rows, true).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&GAP_COLUMNS.join(",")));
        assert_eq!(read_gap_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn show_recognizes_formats() {
        let dir = tempfile::tempdir().unwrap();
        let tpath = dir.path().join("t.xgt");
        let t = tensor::sample_tensor(1, &SamplerConfig::gaussian(1)).unwrap();
        tensor::write_tensor_file(&tpath, &t).unwrap();
        assert!(show(&tpath).unwrap().contains("Hermitian = true"));
        let gpath = dir.path().join("g.csv");
        fixtures::mermin().write_csv(std::fs::File::create(&gpath).unwrap()).unwrap();
        assert!(show(&gpath).unwrap().contains("support = 4"));
        let bad = dir.path().join("x.txt");
        std::fs::write(&bad, "hello\n").unwrap();
        assert!(matches!(show(&bad), Err(Error::Format(_))));
    }
}
