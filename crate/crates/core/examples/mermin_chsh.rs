//! The two reference games: Mermin-GHZ and CHSH with an idle third player.

use xorgap::game::{self, fixtures, SeesawOptions};

fn main() -> xorgap::Result<()> {
    let m = fixtures::mermin();
    let (beta, s) = game::classical_bias_exact(&m)?;
    let ghz = game::entangled_bias_eval(&m, &fixtures::ghz_strategy())?;
    println!("Mermin: classical {beta} with answers {:?} {:?} {:?}", s.chi, s.upsilon, s.zeta);
    println!("        GHZ strategy {ghz:.9}, ratio {:.4}", ghz / beta);

    let c = fixtures::embedded_chsh();
    let beta = game::classical_bias_exact(&c)?.0;
    let known = game::entangled_bias_eval(&c, &fixtures::chsh_strategy())?;
    println!("CHSH:   classical {beta}, textbook strategy {known:.6}");
    for d in [1, 2] {
        let r = game::seesaw_entangled_bias(&c, &SeesawOptions { d, restarts: 8, seed: 1, ..Default::default() })?;
        println!("        see-saw d = {d}: {:.6} (restart {}, {} sweeps)", r.value, r.best_restart, r.history.len());
    }
    let corr = game::correlations(&fixtures::ghz_strategy())?;
    println!("GHZ correlations over the 8 question triples: {corr:?}");
    Ok(())
}
