//! Closed-form wavefunctions, the ladder-assembled route, and sampling.
//!
//! Run with `cargo run --example wavefunctions`.

use repind::radial::Dim;
use repind::wavefn::{compare_routes, full_wavefunction, top_state_constant, Point};

fn main() -> repind::Result<()> {
    let psi = full_wavefunction(Dim::Three, 3, 1, 1)?;
    println!("{}", serde_json::to_string_pretty(&psi.to_json()).expect("json"));
    println!("nodes: {}", psi.node_count());
    let p = Point::Spherical { r: 2.0, theta: 0.7, phi: 0.3 };
    println!("psi_311{p:?} = {}", psi.evaluate(&p)?);

    for d in [Dim::Three, Dim::Two] {
        for n in 1..=3 {
            println!("{d} <x|n,n-1>/x^(n-1) for n={n}: {}", top_state_constant(d, n)?);
        }
    }

    for (d, n, s) in [(Dim::Three, 5, 2), (Dim::Two, 4, -3), (Dim::Two, 6, 0)] {
        let m = if d == Dim::Two { s } else { 0 };
        println!("{d} n={n} s={s}: routes agree {}", compare_routes(d, n, s, m)?.agree());
    }

    let planar = full_wavefunction(Dim::Two, 2, 1, 1)?;
    let pts: Vec<Point> = (0..6).map(|i| Point::Polar { rho: i as f64, phi: 0.0 }).collect();
    print!("\n{}", planar.sample_csv(&pts)?);
    Ok(())
}
