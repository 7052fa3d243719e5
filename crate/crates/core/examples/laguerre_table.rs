//! Associated Laguerre polynomials and their identification with ladder
//! chains.
//!
//! Run with `cargo run --example laguerre_table`.

use repind::exact::rational_string;
use repind::ladder::{laguerre_identify, run_chain};
use repind::laguerre::laguerre;
use repind::radial::Dim;

fn main() -> repind::Result<()> {
    for alpha in 0..=3 {
        for m in 0..=3 {
            let p = laguerre(alpha, m)?;
            let c: Vec<String> = p.coeffs.iter().map(rational_string).collect();
            println!("L_{m}^({alpha}) = [{}]  ratio law {}", c.join(", "), p.ratio_law_holds());
        }
    }

    println!();
    for dim in [Dim::Three, Dim::Two] {
        for (n, s) in [(2, 0), (4, 1), (6, 2)] {
            let m = laguerre_identify(&run_chain(dim, n, s)?)?;
            println!(
                "{dim} n={n} s={s}: L_{}^({}) with C' = {} (top {}) holds {}",
                m.degree,
                m.alpha,
                rational_string(&m.proportionality),
                rational_string(&m.top_coefficient),
                m.holds()
            );
        }
    }
    Ok(())
}
