//! Radial eigenvalue equations evaluated with analytic derivatives of the
//! closed-form wavefunctions (ħ = μ = e = a₀ = 1).

use serde::{Deserialize, Serialize};

use crate::exact::to_f64;
use crate::radial::Dim;
use crate::wavefn::Wavefunction;

use super::ResidualReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OdeForm {
    /// 3D: `−½(R″ + 2R′/r) + (l(l+1)/(2r²) − 1/r)R`;
    /// 2D: `−½(R″ + R′/ρ) + (m²/(2ρ²) − 1/ρ)R`.
    Standard,
    /// `u = r R` in 3D, `u = √ρ R` in 2D:
    /// `−½u″ + (c/(2x²) − 1/x)u` with `c = l(l+1)` or `m² − ¼`.
    Reduced,
}

pub const ODE_TOLERANCE: f64 = 1e-10;
pub const ODE_RANGE: (f64, f64) = (0.1, 30.0);
pub const ODE_SAMPLES: usize = 300;

/// `(Hψ − Eψ)(x)` and `Eψ(x)` in the chosen form.
pub fn pointwise(wf: &Wavefunction, form: OdeForm, energy: f64, x: f64) -> (f64, f64) {
    let [f, f1, f2] = wf.radial_jet(x);
    let s = wf.sector as f64;
    match (wf.dim, form) {
        (Dim::Three, OdeForm::Standard) => {
            let h = -0.5 * (f2 + 2.0 * f1 / x) + (s * (s + 1.0) / (2.0 * x * x) - 1.0 / x) * f;
            (h - energy * f, energy * f)
        }
        (Dim::Two, OdeForm::Standard) => {
            let h = -0.5 * (f2 + f1 / x) + (s * s / (2.0 * x * x) - 1.0 / x) * f;
            (h - energy * f, energy * f)
        }
        (Dim::Three, OdeForm::Reduced) => {
            let (u, u2) = (x * f, x * f2 + 2.0 * f1);
            let h = -0.5 * u2 + (s * (s + 1.0) / (2.0 * x * x) - 1.0 / x) * u;
            (h - energy * u, energy * u)
        }
        (Dim::Two, OdeForm::Reduced) => {
            let sq = x.sqrt();
            let u = sq * f;
            let u2 = -0.25 * f / (x * sq) + f1 / sq + sq * f2;
            let h = -0.5 * u2 + ((s * s - 0.25) / (2.0 * x * x) - 1.0 / x) * u;
            (h - energy * u, energy * u)
        }
    }
}

/// `max |Hψ − Eψ| / max |Eψ|` over an even grid on `[0.1, 30]`.
pub fn ode_residual_with(wf: &Wavefunction, form: OdeForm, energy: f64) -> ResidualReport {
    let (a, b) = ODE_RANGE;
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for i in 0..ODE_SAMPLES {
        let x = a + (b - a) * i as f64 / (ODE_SAMPLES - 1) as f64;
        let (res, ev) = pointwise(wf, form, energy, x);
        num = num.max(res.abs());
        den = den.max(ev.abs());
    }
    let case = format!("ode:{}:n={}:s={}:{:?}", wf.dim, wf.n, wf.sector, form);
    ResidualReport::new(case, num / den, ODE_TOLERANCE)
}

/// Residual of the standard form at the exact energy.
pub fn ode_residual(wf: &Wavefunction) -> ResidualReport {
    ode_residual_with(wf, OdeForm::Standard, to_f64(&wf.energy().rational))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefn::full_wavefunction;

    #[test]
    fn examples() {
        let g = full_wavefunction(Dim::Three, 1, 0, 0).unwrap();
        assert!(ode_residual(&g).pass);
        let w = full_wavefunction(Dim::Three, 3, 1, 0).unwrap();
        assert!(ode_residual(&w).pass);
        let e = to_f64(&w.energy().rational) * 1.01;
        let bad = ode_residual_with(&w, OdeForm::Standard, e);
        assert!(!bad.pass);
        assert!((bad.residual - 0.01).abs() < 1e-3);
    }

    #[test]
    fn both_forms() {
        for d in [Dim::Two, Dim::Three] {
            for n in 1..=4u32 {
                for s in 0..n as i64 {
                    let wf = full_wavefunction(d, n, s, if d == Dim::Two { s } else { 0 }).unwrap();
                    let e = to_f64(&wf.energy().rational);
                    for form in [OdeForm::Standard, OdeForm::Reduced] {
                        let rep = ode_residual_with(&wf, form, e);
                        assert!(rep.pass, "{}: {}", rep.case, rep.residual);
                    }
                }
            }
        }
    }
}
