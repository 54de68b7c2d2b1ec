//! Exact path counts on three diagrams: pyramids, the Young lattice and
//! the comb (whose level sums are the Bell numbers).

use merw::growth::{bell_from_diagram, pyramid_counts, pyramid_model};
use merw::lattice::{partitions, young_dim};

fn main() -> merw::Result<()> {
    let pyramid = pyramid_model(None)?;
    println!("pyramid paths by length:");
    for (n, c) in pyramid_counts(&pyramid, 13, 10_000_000)?.iter().enumerate() {
        println!("  {n:>2}  {c}");
    }

    // sum of squared dimensions is n!
    for n in 1..=8 {
        let total: num_bigint::BigUint = partitions(n).iter().map(|l| young_dim(l).pow(2)).sum();
        println!("young n={n}: sum dim^2 = {total}");
    }

    let bells: Vec<String> = (1..=10)
        .map(|n| bell_from_diagram(n, 1_000_000).map(|b| b.to_string()))
        .collect::<merw::Result<_>>()?;
    println!("bell numbers from the comb: {}", bells.join(", "));
    Ok(())
}
