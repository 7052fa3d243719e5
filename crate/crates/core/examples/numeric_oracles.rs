//! Quadrature overlaps, radial ODE residuals and spherical-harmonic
//! orthonormality.
//!
//! Run with `cargo run --example numeric_oracles`.

use repind::laguerre::spherical_harmonic;
use repind::radial::Dim;
use repind::verify::{ode_residual_with, orthonormality_matrix, reports_to_json, OdeForm, QuadratureSpec};
use repind::wavefn::full_wavefunction;

fn main() -> repind::Result<()> {
    for (d, s) in [(Dim::Three, 0), (Dim::Two, 1)] {
        println!("{d} sector {s}:");
        for row in orthonormality_matrix(d, s, 4)? {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:+.2e}")).collect();
            println!("  {}", cells.join(" "));
        }
    }

    let wf = full_wavefunction(Dim::Two, 3, 1, 1)?;
    let e = repind::exact::to_f64(&wf.energy().rational);
    let reports: Vec<_> = [OdeForm::Standard, OdeForm::Reduced]
        .into_iter()
        .map(|f| ode_residual_with(&wf, f, e))
        .chain(std::iter::once(ode_residual_with(&wf, OdeForm::Standard, 1.01 * e)))
        .collect();
    println!("{}", serde_json::to_string_pretty(&reports_to_json(&reports)).expect("json"));

    // ⟨Y_lm|Y_l'm'⟩ by Gauss–Legendre in cos θ and φ
    let spec = QuadratureSpec::legendre(24, 1e-12);
    let overlap = |l1: u32, m1: i64, l2: u32, m2: i64| {
        spec.integrate(-1.0, 1.0, |c: f64| {
            spec.integrate(0.0, std::f64::consts::TAU, |phi| {
                let t = c.acos();
                (spherical_harmonic(l1, m1, t, phi).conj() * spherical_harmonic(l2, m2, t, phi)).re
            })
            .value
        })
        .value
    };
    println!("<Y10|Y10> = {:.15}", overlap(1, 0, 1, 0));
    println!("<Y21|Y21> = {:.15}", overlap(2, 1, 2, 1));
    println!("<Y10|Y20> = {:.1e}", overlap(1, 0, 2, 0));
    Ok(())
}
