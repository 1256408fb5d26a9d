//! Monte-Carlo tails against their closed-form envelopes, and the spread of
//! the spectral ratio of sampled tensors.

use xorgap::concentration::{self, envelope, TailSpec};
use xorgap::experiments;
use xorgap::tensor::Distribution;

fn main() -> xorgap::Result<()> {
    let [a, _] = experiments::reference_quad_forms(0);
    let specs = vec![
        TailSpec::Gaussian,
        TailSpec::ChiSquare { n: 16 },
        TailSpec::QuadFormGaussian { matrix: a.clone() },
        TailSpec::BernoulliProjection { weights: vec![1.0, -0.5, 0.25, 0.75] },
        TailSpec::HansonWright { matrix: a, constant: Some(0.05) },
    ];
    for spec in specs {
        let env = envelope(spec)?;
        let report = concentration::empirical_tail(&env, &env.default_grid(), 50_000, 1)?;
        println!("{} ({})", env.name(), if report.passed() { "within envelope" } else { "VIOLATED" });
        for i in 0..report.t.len() {
            println!("  t = {:>9.3}  empirical {:.5}  envelope {:.5}", report.t[i], report.empirical[i], report.envelope[i]);
        }
    }
    match envelope(TailSpec::HansonWright { matrix: xorgap::linalg::CMat::identity(2, 2), constant: None }) {
        Err(e) => println!("without a constant: {e}"),
        Ok(_) => unreachable!(),
    }

    for n in 1..=2 {
        let stats = concentration::verify_spectral_lb(n, 100, 7, Distribution::Gaussian)?;
        println!("n = {n}: median |T|/N^3 = {:.4}", stats.median);
        for (tau, frac) in &stats.tau_grid {
            println!("  tau = {tau}: {:.0}% of samples >= 1 - tau/N", 100.0 * frac);
        }
    }
    Ok(())
}
