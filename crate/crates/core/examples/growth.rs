//! Compositions grown by the Chinese restaurant process and by the
//! two-sided comb, with the Stirling identity as a sanity check.

use merw::chain::sample_path;
use merw::growth::{crp_kernel, stirling_identity_residual, two_sided_kernel, TwoSidedParams};
use merw::rng::stream;
use merw::Exact;

fn main() -> merw::Result<()> {
    let crp = crp_kernel(1.5f64)?;
    let path = sample_path(&crp, 25, &mut stream(4, 0))?;
    println!("CRP(1.5) after 25 customers: {}", path.vertices.last().unwrap());

    let params = TwoSidedParams::new(0.2, vec![0.2, 0.1], vec![0.1], 0.4, 0.4)?;
    let kernel = two_sided_kernel(params)?;
    let path = sample_path(&kernel, 15, &mut stream(4, 1))?;
    println!("two-sided comb after 15 boxes: {}", path.vertices.last().unwrap());

    for n in 1..=6 {
        let x = Exact::new(7.into(), 3.into());
        println!("stirling n={n} X=7/3: residual {}", stirling_identity_residual(n, &x, 1_000_000)?);
    }
    Ok(())
}
