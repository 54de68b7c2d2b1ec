//! Distributional checks: subtree fractions of growing trees against their
//! limit laws and CRP block frequencies against stick breaking.

use merw::shape::{crp_pd_test, fraction_test, FractionTarget};
use merw::tree::GrowthRule;

fn main() -> merw::Result<()> {
    let bst = fraction_test(&GrowthRule::Bst { d: 2 }, &[], 400, 2_000, 1, FractionTarget::Uniform, 0.05)?;
    println!("BST left fraction: KS {:.4} passed {}", bst.statistic, bst.passed);

    let rule = GrowthRule::WeightedBinary { x: 1.0, y: 3.0 };
    let target = FractionTarget::Weighted { x: 1.0, y: 3.0 };
    let w = fraction_test(&rule, &[], 400, 2_000, 2, target, 0.05)?;
    println!("weighted tree: KS {:.4} passed {}", w.statistic, w.passed);

    let crp = crp_pd_test(2.0, 1_000, 2_000, 4, 3)?;
    for (k, (a, b)) in crp.crp_means.iter().zip(&crp.gem_means).enumerate() {
        println!("block {}: crp {a:.4}  stick {b:.4}", k + 1);
    }
    Ok(())
}
