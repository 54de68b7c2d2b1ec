//! Kreweras walks in the quarter plane: exact counts, the frame model
//! that encodes them and the growth ratio approaching 3.

use merw::growth::{kreweras_brute_force, kreweras_constant, kreweras_counts, kreweras_diagnostics};

fn main() -> merw::Result<()> {
    let counts = kreweras_counts(20)?;
    for (n, c) in counts.iter().enumerate().take(11) {
        let brute = if n <= 8 { kreweras_brute_force(n).to_string() } else { "-".into() };
        println!("{n:>2}  {c:>10}  brute {brute}");
    }
    println!("a_20 = {}", counts[20]);

    println!("\nconstant {:.6}", kreweras_constant());
    for d in kreweras_diagnostics(400)?.iter().filter(|d| d.n % 50 == 0) {
        println!("n={:>3} ratio {:.5} scaled {:.6}", d.n, d.growth_ratio, d.scaled);
    }
    Ok(())
}
