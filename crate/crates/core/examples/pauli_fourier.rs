//! Pauli-basis coefficients of a tensor: the largest entries, Parseval and
//! the inverse transform.
//!
//! `cargo run --release --example pauli_fourier -- [qubits] [seed]`

use xorgap::pauli;
use xorgap::tensor::{self, SamplerConfig};

fn main() -> xorgap::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(1, |s| s.parse().expect("qubits"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let t = tensor::sample_tensor(n, &SamplerConfig::gaussian(seed))?;
    let basis = pauli::build_basis(n)?;
    let table = pauli::fourier(&t);
    let s = table.side();

    let mut entries: Vec<(usize, f64)> = table.coefficients().iter().map(|z| z.norm()).enumerate().collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("{} coefficients; largest in magnitude:", s * s * s);
    for &(idx, _) in entries.iter().take(8) {
        let (p, q, r) = (idx / (s * s), idx / s % s, idx % s);
        let c = table.get(p, q, r);
        println!("  {:>6} {:>6} {:>6}  {:+.5} {:+.5}i", basis.label(p), basis.label(q), basis.label(r), c.re, c.im);
    }

    let n3 = (t.local_dim() as f64).powi(3);
    println!("sum |coefficient|^2 = {:.6}", table.squared_norm());
    println!("N^3 * |T|_F^2       = {:.6}", n3 * t.frobenius_norm().powi(2));

    let back = pauli::inverse_fourier(&table);
    let err = (back.matrix() - t.matrix()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    println!("round-trip max entry error {err:.2e}");
    Ok(())
}
