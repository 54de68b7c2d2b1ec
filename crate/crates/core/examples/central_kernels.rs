//! Central kernels on lattices: Plancherel growth, the weighted Pascal
//! regimes and MERW obtained as a limit of finite-horizon walks.

use merw::chain::{sample_path, MarkovKernel};
use merw::lattice::{pascal_truncation, plancherel_kernel, PascalParams, PascalVertex};
use merw::rng::stream;

fn main() -> merw::Result<()> {
    let kernel = plancherel_kernel();
    let path = sample_path(&kernel, 12, &mut stream(3, 0))?;
    println!("plancherel growth, 12 boxes:");
    for v in &path.vertices {
        println!("  {v}");
    }
    println!("log probability {:.4}", path.log_prob);
    for (mu, p) in kernel.transitions(&path.vertices[2])? {
        println!("  {} -> {mu} with probability {p}", path.vertices[2]);
    }

    for (a, b) in [(0.25, 0.75), (1.0, 1.0), (1.0, 3.0)] {
        let params = PascalParams::new(a, b)?;
        println!("\nalpha={a} beta={b}: gamma={} regime {:?}", params.gamma(), params.regime());
        let points = [PascalVertex::new(1, 1), PascalVertex::new(2, 1)];
        let horizons = [50, 100, 200, 400];
        for (p, row) in points.iter().zip(pascal_truncation(a, b, &points, &horizons)) {
            let shown: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
            println!("  phi_n{p}: {}", shown.join("  "));
        }
    }
    Ok(())
}
