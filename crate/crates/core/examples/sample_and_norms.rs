//! Sample a random tensor and bracket its norms.
//!
//! `cargo run --release --example sample_and_norms -- [qubits] [seed]`

use xorgap::tensor::{self, AlsOptions, SamplerConfig};

fn main() -> xorgap::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(1, |s| s.parse().expect("qubits"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let t = tensor::sample_tensor(n, &SamplerConfig::gaussian(seed))?;
    let dim = t.local_dim() as f64;
    println!("n = {n}, N = {dim}, Hermitian: {}", t.is_hermitian(1e-12));
    println!("Frobenius norm        {:.6}", t.frobenius_norm());

    let spec = tensor::spectral_norm(&t);
    println!("spectral norm         {:.6}  (ratio to N^3: {:.4})", spec.value, spec.value / dim.powi(3));

    let lower = tensor::trilinear_norm_lower(&t, &AlsOptions { seed, ..Default::default() })?;
    println!("trilinear lower (ALS) {:.6}  best of {} restarts", lower.value, lower.histories.len());
    let h = &lower.histories[lower.best_restart];
    println!("  objective after first and last update: {:.6} -> {:.6}", h[0], h[h.len() - 1]);

    if n == 1 {
        for eps in [0.9, 0.5] {
            let upper = tensor::trilinear_norm_upper_net(&t, eps)?;
            println!("trilinear upper (net, eps {eps}) {upper:.3}");
        }
    }

    let herm = tensor::hermitize_report(&t.scaled(xorgap::linalg::C64::new(0.3, 0.8)));
    println!(
        "after a complex phase: kept {:?} part, spectral {:.4} -> {:.4}",
        herm.part, herm.spectral_before, herm.spectral_after
    );
    Ok(())
}
