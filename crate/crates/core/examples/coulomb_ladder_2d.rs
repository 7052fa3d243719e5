//! The planar Coulomb problem: half-integer κ, the −ħ²/4ρ² correction, and
//! negative azimuthal numbers.
//!
//! Run with `cargo run --example coulomb_ladder_2d`.

use repind::ladder::{build_ladder, check_eigenstate, check_negative_m, degeneracy, energy, hamiltonian, run_chain};
use repind::radial::Dim;

fn main() -> repind::Result<()> {
    let dim = Dim::Two;
    println!("H_0 = {}", hamiltonian(dim, 0)?.op);
    println!("B_-1 == B_0† : {}", build_ladder(dim, -1)?.lowering == build_ladder(dim, 0)?.raising);

    for n in 1..=4 {
        println!("n={n}: E = {}, degeneracy {}", energy(dim, n)?, degeneracy(dim, n));
    }

    let chain = run_chain(dim, 3, 0)?;
    println!("\n{}", serde_json::to_string_pretty(&chain.to_json()).expect("json"));
    println!("eigenstate residual zero: {}", check_eigenstate(dim, 3, 0)?.is_zero());

    for (n, m) in [(2, 1), (3, 1), (3, 2), (5, 3)] {
        let rep = check_negative_m(n, m)?;
        println!(
            "n={n}, m=±{m}: operator {} state {} norm {}",
            rep.operator_residual.is_zero(),
            rep.state_residual.is_zero(),
            rep.norm_equal
        );
    }
    Ok(())
}
