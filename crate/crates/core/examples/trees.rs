//! Growth of search trees and of preferential binary trees as central
//! Markov chains, plus a random harmonic label field.

use merw::chain::sample_path;
use merw::rng::stream;
use merw::tree::{bst_kernel, comb2_residual, label_harmonic, weighted_bst_merw, LabelField};
use merw::Exact;

fn main() -> merw::Result<()> {
    let bst = bst_kernel::<f64>(2, None)?;
    let path = sample_path(&bst, 6, &mut stream(1, 0))?;
    println!("random binary search tree:");
    for (v, p) in path.vertices.iter().skip(1).zip(&path.step_probs) {
        println!("  {v}  (step probability {p:.3})");
    }

    let wbst = weighted_bst_merw(Exact::new(1.into(), 2.into()), Exact::new(2.into(), 3.into()))?;
    let path = sample_path(&wbst, 5, &mut stream(2, 0))?;
    println!("\npreferential tree (1/2, 2/3), final shape {}", path.vertices.last().unwrap());

    let mut rng = stream(9, 0);
    let labels = LabelField::<Exact>::random_rational(2, 6, 5, &mut rng);
    label_harmonic(labels.clone(), None)?;
    for n in 1..=5 {
        println!("label identity, n={n}: residual {}", comb2_residual(&labels, n)?);
    }
    Ok(())
}
