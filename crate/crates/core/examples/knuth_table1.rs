//! Knuth's estimator on the pyramid model: exact counts against the
//! plain random walk (RW0) and the out-degree proposal (RW1).

use merw::knuth::table1_experiment;

fn main() -> merw::Result<()> {
    let ns: Vec<usize> = (1..=10).collect();
    println!("{:>3} {:>12} {:>14} {:>12} {:>14} {:>12}", "n", "exact", "rw0 mean", "rw0 std", "rw1 mean", "rw1 std");
    for row in table1_experiment(&ns, 5_000, &[1])? {
        println!(
            "{:>3} {:>12} {:>14.1} {:>12.1} {:>14.1} {:>12.1}",
            row.n, row.exact, row.rw0_mean, row.rw0_std, row.rw1_mean, row.rw1_std
        );
    }
    Ok(())
}
