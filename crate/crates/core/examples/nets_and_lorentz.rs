//! Constructive nets at N = 2 with their sizes and covering statistics, and
//! the decomposition of a Hermitian matrix into normalized projectors.
//!
//! `cargo run --release --example nets_and_lorentz -- [eps]`

use xorgap::linalg;
use xorgap::nets;

fn main() -> xorgap::Result<()> {
    let eps: f64 = std::env::args().nth(1).map_or(0.5, |s| s.parse().expect("eps"));

    let sphere = nets::sphere_net(2, eps, 1)?;
    let cov = sphere.check_covering(10_000, 2);
    println!(
        "sphere net:    {:>5} points (volume bound {:.0}), max distance {:.4}, {} misses",
        sphere.len(),
        sphere.volume_bound(),
        cov.max_distance,
        cov.failures.len()
    );

    let triple = nets::triple_net(2, eps, 1)?;
    for k in 1..=2 {
        let level = triple.level(k);
        let cov = level.check_covering(10_000, 3);
        println!(
            "projectors k={k}: {:>5} elements (bound {:.0}), max distance {:.4}, {} misses",
            level.len(),
            level.size_bound(),
            cov.max_distance,
            cov.failures.len()
        );
    }
    let cov = triple.check_covering(1_000, 4);
    println!(
        "triples:       {:>5} products, max distance {:.4} against radius {:.2}",
        triple.count(),
        cov.max_distance,
        3.0 * eps
    );

    let mut rng = linalg::seeded_rng(5, 0);
    for n in [2, 4, 8, 16] {
        let h = linalg::random_hermitian(&mut rng, n);
        let x = h.unscale(linalg::frobenius(&h));
        let d = nets::lorentz_decompose(&x)?;
        let err = (d.reconstruct(n) - &x).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        println!(
            "N = {n:>2}: {} terms, coefficient sum {:.4} <= {:.4}, reconstruction error {err:.1e}",
            d.terms.len(),
            d.l1_norm(),
            4.0 * (n as f64).ln().sqrt()
        );
    }
    Ok(())
}
