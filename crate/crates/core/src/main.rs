use clap::{Parser, Subcommand, ValueEnum};
use std::fs::{File, OpenOptions};
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;
use xorgap::experiments::{self, Suite, SweepConfig};
use xorgap::game::{self, SeesawOptions, XorGame};
use xorgap::tensor::{self, AlsOptions, SamplerConfig};
use xorgap::{pauli, Result};

#[derive(Parser)]
#[command(name = "xorgap", version, about = "Random 3-tensors, their Pauli XOR games and the classical/entangled gap")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dist {
    Gaussian,
    Bernoulli,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a tensor and write it in the binary tensor format.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "gaussian")]
        dist: Dist,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spectral norm and trilinear-norm bounds of a stored tensor.
    Norms {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        als_restarts: usize,
        #[arg(long, default_value_t = 200)]
        als_iters: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Also compute the net upper bound (N = 2 only).
        #[arg(long)]
        net_eps: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the Pauli game of a stored tensor.
    Game {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        #[arg(long)]
        fourier_out: Option<PathBuf>,
    },
    /// Classical or entangled bias of a game.
    Bias {
        #[command(subcommand)]
        kind: BiasKind,
    },
    /// Sweep n over sampled tensors and write one CSV row per sample.
    GapSweep {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Row index printed by an interrupted run; rows are appended to --out.
        #[arg(long)]
        resume: Option<usize>,
    },
    /// Run a verification battery: tails, nets, lorentz, identities, theorems, spectral_lb.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summarize a tensor, net, game CSV or gap CSV.
    Show { file: PathBuf },
}

#[derive(Subcommand)]
enum BiasKind {
    /// Exact when 2Q <= 30, coordinate ascent otherwise.
    Classical {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a strategy file on a game.
    Entangled {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
    },
    /// See-saw lower bound at local dimension d.
    Seesaw {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
}

fn read_game(path: &PathBuf) -> Result<XorGame> {
    XorGame::read_csv(File::open(path)?)
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Sample { n, dist, seed, out } => {
            let cfg = match dist {
                Dist::Gaussian => SamplerConfig::gaussian(seed),
                Dist::Bernoulli => SamplerConfig::bernoulli(seed),
            };
            let t = tensor::sample_tensor(n, &cfg)?;
            tensor::write_tensor_file(&out, &t)?;
            println!("wrote n = {n}, N = {} tensor to {}", t.local_dim(), out.display());
        }
        Cmd::Norms { input, als_restarts, als_iters, tol, net_eps, seed } => {
            let t = tensor::read_tensor_file(&input)?;
            let spec = tensor::spectral_norm(&t);
            println!("hermitian: {}", t.is_hermitian(1e-12));
            println!("spectral: {:.12}", spec.value);
            let opts = AlsOptions { restarts: als_restarts, max_iters: als_iters, tol, seed };
            let lower = tensor::trilinear_norm_lower(&t, &opts)?;
            println!("trilinear_lower: {:.12} (restart {})", lower.value, lower.best_restart);
            if let Some(eps) = net_eps {
                println!("trilinear_upper: {:.12} (eps {eps})", tensor::trilinear_norm_upper_net(&t, eps)?);
            }
        }
        Cmd::Game { input, out, strategy_out, fourier_out } => {
            let t = tensor::read_tensor_file(&input)?;
            let r = game::game_from_tensor(&t)?;
            r.game.write_csv(BufWriter::new(File::create(&out)?))?;
            if let Some(p) = strategy_out {
                r.strategy.write_json(p)?;
            }
            if let Some(p) = fourier_out {
                let basis = pauli::build_basis(t.qubits())?;
                r.fourier.write_csv(BufWriter::new(File::create(p)?), &basis)?;
            }
            println!("questions: {}", r.game.questions());
            println!("branch: {:?}", r.branch);
            println!("l1_norm: {:.12}", r.l1_norm);
            println!("hermitization_loss: {:.6}", r.hermitization_loss);
            println!("pauli_bias: {:.12}", r.pauli_bias());
        }
        Cmd::Bias { kind } => match kind {
            BiasKind::Classical { game: path, restarts, seed } => {
                let g = read_game(&path)?;
                if 2 * g.questions() <= game::EXACT_LIMIT {
                    println!("classical_bias (exact): {:.12}", game::classical_bias_exact(&g)?.0);
                } else {
                    let v = game::classical_bias_heuristic(&g, restarts, seed)?.0;
                    println!("classical_bias (heuristic lower bound): {v:.12}");
                }
            }
            BiasKind::Entangled { game: path, strategy } => {
                let g = read_game(&path)?;
                let s = experiments::load_strategy(strategy)?;
                println!("entangled_bias: {:.12}", game::entangled_bias_eval(&g, &s)?);
            }
            BiasKind::Seesaw { game: path, d, restarts, seed, strategy_out } => {
                let g = read_game(&path)?;
                let r = game::seesaw_entangled_bias(&g, &SeesawOptions { d, restarts, seed, ..Default::default() })?;
                if let Some(p) = strategy_out {
                    r.strategy.write_json(p)?;
                }
                println!("seesaw_bias (d = {d}): {:.12} after {} sweeps", r.value, r.history.len());
            }
        },
        Cmd::GapSweep { n_list, samples, seed, out, budget_secs, resume } => {
            let mut cfg = SweepConfig::new(n_list, samples, seed);
            cfg.budget = budget_secs.map(Duration::from_secs);
            cfg.start = resume.unwrap_or(0);
            let outcome = experiments::gap_sweep(&cfg)?;
            let file = if cfg.start > 0 {
                OpenOptions::new().append(true).open(&out)?
            } else {
                File::create(&out)?
            };
            experiments::write_gap_csv(BufWriter::new(file), &outcome.rows, cfg.start == 0)?;
            for (n, m) in experiments::median_ratios(&outcome.rows) {
                println!("n = {n}: median ratio_estimate {m:.4}");
            }
            match outcome.resume_token {
                Some(tok) => println!("budget exhausted; resume token: {tok}"),
                None => println!("wrote {} rows to {}", outcome.rows.len(), out.display()),
            }
        }
        Cmd::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = experiments::verify_suite(suite, seed)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Show { file } => println!("{}", experiments::show(file)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
