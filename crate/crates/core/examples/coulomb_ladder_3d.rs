//! Factorization ladder for the 3D Coulomb problem: sector Hamiltonians,
//! chains of raising operators, and normalization constants.
//!
//! Run with `cargo run --example coulomb_ladder_3d`.

use repind::exact::rational_string;
use repind::ladder::{
    build_ladder, check_coefficient_ratios, check_factorization, check_intertwining, compute_norm, hamiltonian,
    run_chain, summary_csv,
};
use repind::radial::Dim;

fn main() -> repind::Result<()> {
    let dim = Dim::Three;
    let b = build_ladder(dim, 1)?;
    println!("H_1  = {}", hamiltonian(dim, 1)?.op);
    println!("B_1  = {}", b.lowering);
    println!("B_1† = {}", b.raising);
    println!("E_1  = {}", b.ground_energy);

    for l in 0..4 {
        let f = check_factorization(dim, l)?;
        let i = check_intertwining(dim, l)?;
        println!("l={l}: factorization residual terms {}, intertwining holds {}", f.term_count(), i.holds());
    }

    let chain = run_chain(dim, 4, 1)?;
    let b: Vec<String> = chain.b_coeffs.iter().map(rational_string).collect();
    println!("\nn=4, l=1: b = [{}], scale = {}", b.join(", "), chain.scale);
    println!("ratio law holds: {}", check_coefficient_ratios(&chain).holds());
    let c = compute_norm(dim, 4, 1)?;
    println!("C = {} (closed form {}, agree {})", c.product_form, c.closed_form, c.agree());

    println!("\n{}", summary_csv(dim, 3)?);
    Ok(())
}
