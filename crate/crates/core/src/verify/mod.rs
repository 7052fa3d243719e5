//! Numeric oracles for the exact layer: quadrature overlaps, ODE residuals
//! and a differential-operator realization of the identity catalog.

pub mod jet;
pub mod ode;
pub mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::radial::Dim;
use crate::wavefn::{full_wavefunction, Wavefunction};

pub use jet::differential_oracle;
pub use ode::{ode_residual, ode_residual_with, OdeForm};
pub use quadrature::{gauss_laguerre, gauss_legendre, Integral, QuadratureSpec, Rule};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub case: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(case: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        ResidualReport { case: case.into(), residual, tolerance, pass: residual < tolerance }
    }

    /// The same residual judged against another tolerance.
    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Self::new(self.case, self.residual, tolerance)
    }

    /// An exact check: the residual is the number of surviving terms.
    pub fn exact(case: impl Into<String>, residual_terms: usize) -> Self {
        Self::new(case, residual_terms as f64, 1.0)
    }
}

pub const OVERLAP_TOLERANCE: f64 = 1e-9;
pub const NORM_TOLERANCE: f64 = 1e-10;
pub const OVERLAP_NODES: usize = 48;

/// `∫ R_a R_b x^{d−1} dx` by Gauss–Laguerre in `t = (1/ν_a + 1/ν_b)x`.
pub fn radial_overlap(a: &Wavefunction, b: &Wavefunction, spec: &QuadratureSpec) -> Result<Integral> {
    if a.dim != b.dim {
        return Err(Error::Invalid("overlap between different dimensions".into()));
    }
    let beta = to_f64(&a.decay_rate) + to_f64(&b.decay_rate);
    let measure = match a.dim {
        Dim::Three => 2,
        Dim::Two => 1,
    };
    let f = |t: f64| {
        let x = t / beta;
        a.radial_polynomial(x) * b.radial_polynomial(x) * x.powi(measure) / beta
    };
    Ok(spec.integrate(0.0, 0.0, f))
}

/// Gram matrix of the radial states `n = |sector|+1 ..= n_max`.
pub fn orthonormality_matrix(dim: Dim, sector: i64, n_max: u32) -> Result<Vec<Vec<f64>>> {
    let first = sector.unsigned_abs() as u32 + 1;
    if n_max < first {
        return Err(Error::OutOfRange(format!("n_max {n_max} below the first shell {first}")));
    }
    let m = if dim == Dim::Two { sector } else { 0 };
    let states: Vec<Wavefunction> =
        (first..=n_max).map(|n| full_wavefunction(dim, n, sector, m)).collect::<Result<_>>()?;
    let spec = QuadratureSpec::laguerre(OVERLAP_NODES, OVERLAP_TOLERANCE);
    states.iter().map(|a| states.iter().map(|b| radial_overlap(a, b, &spec).map(|i| i.value)).collect()).collect()
}

/// `max |G − I|` for the Gram matrix.
pub fn orthonormality_report(dim: Dim, sector: i64, n_max: u32) -> Result<ResidualReport> {
    let g = orthonormality_matrix(dim, sector, n_max)?;
    let mut worst: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    Ok(ResidualReport::new(format!("overlap:{dim}:s={sector}:n<={n_max}"), worst, OVERLAP_TOLERANCE))
}

/// Suite output as a JSON array.
pub fn reports_to_json(reports: &[ResidualReport]) -> serde_json::Value {
    serde_json::to_value(reports).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_examples() {
        assert!(orthonormality_report(Dim::Three, 0, 4).unwrap().pass);
        assert!(orthonormality_report(Dim::Two, 1, 4).unwrap().pass);
        let g = orthonormality_matrix(Dim::Three, 2, 3).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g[0][0] - 1.0).abs() < 1e-12);
        assert!(orthonormality_matrix(Dim::Three, 3, 2).is_err());
    }

    #[test]
    fn top_state_normalization() {
        let spec = QuadratureSpec::laguerre(OVERLAP_NODES, OVERLAP_TOLERANCE);
        for d in [Dim::Two, Dim::Three] {
            for n in 1..=6 {
                let t = crate::wavefn::top_state(d, n).unwrap();
                let i = radial_overlap(&t, &t, &spec).unwrap();
                assert!((i.value - 1.0).abs() < NORM_TOLERANCE, "{d} n={n}: {}", i.value);
            }
        }
    }

    #[test]
    fn report_json() {
        let r = ResidualReport::exact("x", 0);
        assert!(r.pass);
        let v = reports_to_json(&[r]);
        assert_eq!(v[0]["tolerance"], 1.0);
    }
}
