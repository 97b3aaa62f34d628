//! Which eigenvalue multiplicities leave room for a state-distinguishing pair.

use quasiprob::analysis::{degeneracy_feasible, min_common_distinct, min_distinct_with_nondegenerate};

fn main() -> quasiprob::Result<()> {
    for n in 2..=5 {
        println!(
            "N={n}: N' >= {:.3} (equal counts), N_B >= {:.3} (A non-degenerate)",
            min_common_distinct(n),
            min_distinct_with_nondegenerate(n)
        );
        for nb in 1..=n {
            let rep = degeneracy_feasible(n, n, nb)?;
            println!("  N_A={n} N_B={nb}: {} <= {} {}", rep.lhs, rep.rhs, rep.feasible);
        }
    }
    Ok(())
}
