//! Approximate MERW on pyramids: sample a few large pyramids, overlay them
//! in a heat map and compare with the limiting curve.

use merw::growth::pyramid_model;
use merw::knuth::{pyramid_merw_approx_sample, ApproxParams, WalkRule};
use merw::shape::{area_matched_distance, boundary_distance, pyramid_heatmap};

fn main() -> merw::Result<()> {
    let n = 80;
    let model = pyramid_model(None)?;
    let sampler = |seed| {
        let params = ApproxParams { n: n - 1, depth: 8, samples: 40, seed };
        let s = pyramid_merw_approx_sample(&model, &WalkRule::rw1(), &params)?;
        Ok(s.sample.vertices.last().cloned().expect("paths are non-empty"))
    };
    let heat = pyramid_heatmap(&sampler, n, 20, 11)?;
    println!("cells {}  mass {:.6}", heat.counts.len(), heat.mass());
    for line in heat.csv_rows().iter().take(8) {
        println!("  {line}");
    }

    let one = sampler(5)?;
    println!("\none pyramid: heights {:?}", one.heights);
    println!("sup distance to curve      {:.4}", boundary_distance(&one, n)?);
    println!("after rescaling to area 1  {:.4}", area_matched_distance(&one, n)?);
    Ok(())
}
