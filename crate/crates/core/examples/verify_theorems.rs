//! Oracle checks of the heuristic properties on random small graphs:
//! admissibility, (in)consistency and mutual non-dominance.

use alp::verify::{
    admissibility_sweep, dominance_search, find_consistency_witness, five_path_witness,
};
use alp::{EmbeddingMode, Result};

fn main() -> Result<()> {
    for mode in [EmbeddingMode::Exact, EmbeddingMode::Induced] {
        let sweep = admissibility_sweep(40, 11, (10, 80), mode)?;
        let t = sweep.total();
        println!(
            "{mode:?}: {} pairs, ALT violations {}, ALP violations {} (ptolemy on: {})",
            t.pairs, t.alt_violations, t.alp_violations_ptolemy_off, t.alp_violations_ptolemy_on
        );
        for (family, f) in &sweep.families {
            println!("  {family:<18} rate {:.5}", f.alp_violation_rate());
        }
    }

    let c = find_consistency_witness(10_000, 11)?;
    match &c.witness {
        Some(w) => println!(
            "inconsistent ALP edge after {} trials: {:?}, h(u) = {} > w + h(v) = {}",
            c.trials_run, w.witness, w.lhs, w.rhs
        ),
        None => println!("no inconsistency in {} trials", c.trials_run),
    }

    let d = dominance_search(10_000, 11, 2)?;
    for w in d.alt_over_alp.iter().chain(&d.alp_over_alt) {
        println!(
            "{:?} at {:?}: {} > {} (replays: {})",
            w.kind,
            w.witness,
            w.lhs,
            w.rhs,
            w.replay()?
        );
    }
    let five = five_path_witness()?;
    println!("five-path: ALP {} vs ALT {}", five.lhs, five.rhs);
    Ok(())
}
