//! Build the XOR game of a random tensor, play the Pauli strategy on it and
//! compare with the classical bias and a see-saw search.
//!
//! `cargo run --release --example pauli_game -- [qubits] [seed]`

use xorgap::game::{self, SeesawOptions};
use xorgap::tensor::{self, SamplerConfig};

fn main() -> xorgap::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(1, |s| s.parse().expect("qubits"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let t = tensor::sample_tensor(n, &SamplerConfig::gaussian(seed))?;
    let r = game::game_from_tensor(&t)?;
    let g = &r.game;
    println!("questions per player: {}, support {} of {}", g.questions(), g.support_size(), g.pi().len());
    println!("branch {:?}, l1 norm {:.4}, hermitization loss {:.4}", r.branch, r.l1_norm, r.hermitization_loss);

    let id = game::pauli_identity(&t)?;
    println!(
        "Fourier side {:.6}, N^3 * spectral {:.6}",
        id.fourier_side.re,
        (t.local_dim() as f64).powi(3) * id.spectral
    );

    let pauli = game::entangled_bias_eval(g, &r.strategy)?;
    println!("Pauli strategy bias   {pauli:.6}");

    let (classical, exact) = if 2 * g.questions() <= game::EXACT_LIMIT {
        (game::classical_bias_exact(g)?.0, true)
    } else {
        (game::classical_bias_heuristic(g, 64, seed)?.0, false)
    };
    println!("classical bias        {classical:.6} ({})", if exact { "exact" } else { "heuristic lower bound" });
    println!("ratio estimate        {:.4}", pauli / classical);

    if n == 1 {
        let s = game::seesaw_entangled_bias(g, &SeesawOptions { d: 2, restarts: 4, seed, ..Default::default() })?;
        println!("see-saw (d = 2)       {:.6} after {} sweeps", s.value, s.history.len());
        let q = game::check_question_bound(g, pauli.max(s.value), classical);
        let d = game::check_dimension_bound(g, pauli.max(s.value), 2, classical);
        println!("question bound  {:.4} <= {:.4}: {}", q.lhs, q.bound, q.holds);
        println!("dimension bound {:.4} <= {:.4}: {}", d.lhs, d.bound, d.holds);
    }
    Ok(())
}
