//! Normal ordering of raw position/momentum expressions.
//!
//! Run with `cargo run --example normal_ordering`.

use repind::opcore::expr::{inv_r, px, py, r, rx, ry};
use repind::opcore::{build_spherical_momentum, normal_order, Expr, SphericalComponent};

fn main() -> repind::Result<()> {
    let samples = [
        ("[p_x, r_x]", Expr::commutator(px(), rx())),
        ("p_x · r⁻¹", px() * inv_r()),
        ("p_x p_x r", px() * px() * r()),
        ("L_z = r_x p_y − r_y p_x", rx() * py() - ry() * px()),
    ];
    for (label, e) in samples {
        let n = normal_order(&e)?;
        println!("{label:28} -> {n}");
    }

    let p_r = build_spherical_momentum(SphericalComponent::Radial);
    println!("\np_r = {p_r}");
    println!("{}", serde_json::to_string_pretty(&p_r.to_json()).expect("json"));
    Ok(())
}
