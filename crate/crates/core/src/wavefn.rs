//! Normalized bound-state wavefunctions assembled from the ladder output.
//!
//! A radial factor is stored as
//!
//! ```text
//! R(x) = norm · Σ_k c_k y^{p+k} · e^{−y/2},   y = 2x/(νa₀),  p = |sector|
//! ```
//!
//! Numeric evaluation uses a₀ = ħ = μ = e = 1.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, rational_string, to_f64, Surd, UnitCoeff, Units};
use crate::ladder::{compute_norm, run_chain};
use crate::laguerre::{angular_eigenfunction_2d, laguerre, spherical_harmonic};
use crate::radial::Dim;

#[derive(Clone, Debug)]
pub struct Wavefunction {
    pub dim: Dim,
    pub n: u32,
    /// `l` in 3D, `m` in 2D.
    pub sector: i64,
    /// Azimuthal quantum number; equals `sector` in 2D.
    pub m: i64,
    /// `c_k`, multiplying `y^{|sector|+k}`.
    pub radial_coeffs: Vec<BigRational>,
    /// `1/ν`, in units of `1/a₀`.
    pub decay_rate: BigRational,
    pub norm: Surd,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Spherical { r: f64, theta: f64, phi: f64 },
    Polar { rho: f64, phi: f64 },
}

impl Point {
    pub fn radius(&self) -> f64 {
        match *self {
            Point::Spherical { r, .. } => r,
            Point::Polar { rho, .. } => rho,
        }
    }
}

/// `a₀^{−3/2}` in 3D, `a₀^{−1}` in 2D.
fn density_units(dim: Dim) -> Units {
    match dim {
        Dim::Three => Units { hbar: -3, mu2: 3, e: 3, root2: 0 },
        Dim::Two => Units::bohr_pow(-1),
    }
}

fn check_quantum_numbers(dim: Dim, n: u32, sector: i64, m: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let top = n as i64 - 1;
    match dim {
        Dim::Three if sector < 0 || sector > top || m.abs() > sector => {
            Err(Error::OutOfRange(format!("need 0 ≤ l ≤ {top} and |m| ≤ l, got l={sector}, m={m}")))
        }
        Dim::Two if sector.abs() > top || m != sector => {
            Err(Error::OutOfRange(format!("need |m| ≤ {top} in 2D, got m={m}")))
        }
        _ => Ok(()),
    }
}

/// `⟨x|n, n−1⟩ / x^{n−1}`:
/// `(2/(na₀))^{n+½}/√((2n)!)` in 3D, `(2/(νa₀))^n/√((2n−1)!)` in 2D.
pub fn top_state_constant(dim: Dim, n: u32) -> Result<Surd> {
    check_quantum_numbers(dim, n, n as i64 - 1, if dim == Dim::Two { n as i64 - 1 } else { 0 })?;
    let two_over_nu = int(2) / dim.nu(n);
    let big = |b: BigInt| BigRational::from_integer(b);
    let ni = n as i32;
    Ok(match dim {
        Dim::Three => {
            let sq = two_over_nu.pow(2 * ni + 1) / big(factorial(2 * n));
            // a₀^{−(n+½)}
            let k = 2 * ni + 1;
            Surd::sqrt(&sq, Units { hbar: -k, mu2: k, e: k, root2: 0 })
        }
        Dim::Two => {
            let sq = two_over_nu.pow(2 * ni) / big(factorial(2 * n - 1));
            Surd::sqrt(&sq, Units::bohr_pow(-ni))
        }
    })
}

/// `φ_n(x) = ⟨x|n, n−1⟩`, the state at the top of every chain.
pub fn top_state(dim: Dim, n: u32) -> Result<Wavefunction> {
    let t = top_state_constant(dim, n)?;
    // x^{n−1} = (νa₀/2)^{n−1} y^{n−1}
    let shift = UnitCoeff::new(dim.nu(n) / int(2), 0, Units::bohr()).pow(n as i32 - 1);
    let norm = t.mul(&Surd::rational(shift.rational, shift.units));
    let sector = n as i64 - 1;
    Ok(Wavefunction {
        dim,
        n,
        sector,
        m: if dim == Dim::Two { sector } else { 0 },
        radial_coeffs: vec![int(1)],
        decay_rate: dim.nu(n).recip(),
        norm,
    })
}

/// Closed form with an associated Laguerre polynomial in `y`.
pub fn full_wavefunction(dim: Dim, n: u32, sector: i64, m: i64) -> Result<Wavefunction> {
    check_quantum_numbers(dim, n, sector, m)?;
    let s = sector.unsigned_abs() as u32;
    let big = |b: BigInt| BigRational::from_integer(b);
    let deg = n - s - 1;
    let two_over_nu = int(2) / dim.nu(n);
    let (alpha, sq) = match dim {
        // (2/n)³ N!/(2n(n+l)!)
        Dim::Three => {
            (2 * s + 1, two_over_nu.pow(3) * big(factorial(deg)) / big(int_big(2 * n as i64) * factorial(n + s)))
        }
        // (2/ν)² N!/((2n−1)(n+|m|−1)!)
        Dim::Two => {
            (2 * s, two_over_nu.pow(2) * big(factorial(deg)) / big(int_big(2 * n as i64 - 1) * factorial(n + s - 1)))
        }
    };
    let poly = laguerre(alpha as i64, deg as i64)?;
    Ok(Wavefunction {
        dim,
        n,
        sector,
        m,
        radial_coeffs: poly.coeffs,
        decay_rate: dim.nu(n).recip(),
        norm: Surd::sqrt(&sq, density_units(dim)),
    })
}

fn int_big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Assembles `C · B†···B†|n, n−1⟩` directly from the ladder chain,
/// dropping the overall `(−i)^{n−|sector|−1}` phase.
pub fn chain_wavefunction(dim: Dim, n: u32, sector: i64, m: i64) -> Result<Wavefunction> {
    check_quantum_numbers(dim, n, sector, m)?;
    let s = sector.abs();
    let chain = run_chain(dim, n, s)?;
    let c = compute_norm(dim, n, s)?.product_form;
    let phase_free = chain.scale.mul(&UnitCoeff::i().pow(chain.degree() as i32));
    if phase_free.i_power != 0 {
        return Err(Error::ChainShape("chain scale is not a pure phase times a real".into()));
    }
    let norm = c.mul(&Surd::rational(phase_free.rational, phase_free.units)).mul(&top_state(dim, n)?.norm);
    Ok(Wavefunction { dim, n, sector, m, radial_coeffs: chain.b_coeffs, decay_rate: dim.nu(n).recip(), norm })
}

#[derive(Clone, Debug)]
pub struct RouteComparison {
    pub closed_form: Wavefunction,
    pub chain: Wavefunction,
    /// Powers of `y` whose exact coefficients differ.
    pub mismatched_powers: Vec<u32>,
}

impl RouteComparison {
    pub fn agree(&self) -> bool {
        self.mismatched_powers.is_empty()
    }
}

/// Compares `norm·c_k` from the closed form and from the chain, exactly.
pub fn compare_routes(dim: Dim, n: u32, sector: i64, m: i64) -> Result<RouteComparison> {
    let closed_form = full_wavefunction(dim, n, sector, m)?;
    let chain = chain_wavefunction(dim, n, sector, m)?;
    let p = closed_form.lowest_power();
    let len = closed_form.radial_coeffs.len().max(chain.radial_coeffs.len());
    let zero = BigRational::zero();
    let mismatched_powers = (0..len)
        .filter(|&k| {
            let a = closed_form.norm.mul_rational(closed_form.radial_coeffs.get(k).unwrap_or(&zero));
            let b = chain.norm.mul_rational(chain.radial_coeffs.get(k).unwrap_or(&zero));
            a != b
        })
        .map(|k| p + k as u32)
        .collect();
    Ok(RouteComparison { closed_form, chain, mismatched_powers })
}

impl Wavefunction {
    /// Power of `y` multiplying `radial_coeffs[0]`.
    pub fn lowest_power(&self) -> u32 {
        self.sector.unsigned_abs() as u32
    }

    /// `dy/dx = 2/ν` with a₀ = 1.
    fn lambda(&self) -> f64 {
        2.0 * to_f64(&self.decay_rate)
    }

    /// `(g, g′, g″)` for `g(y) = Σ c_k y^{p+k}`.
    fn poly_jet(&self, y: f64) -> [f64; 3] {
        let p = self.lowest_power() as i32;
        let mut out = [0.0; 3];
        for (k, c) in self.radial_coeffs.iter().enumerate() {
            let c = to_f64(c);
            let e = p + k as i32;
            let ef = e as f64;
            out[0] += c * y.powi(e);
            if e >= 1 {
                out[1] += c * ef * y.powi(e - 1);
            }
            if e >= 2 {
                out[2] += c * ef * (ef - 1.0) * y.powi(e - 2);
            }
        }
        out
    }

    /// `(R, R′, R″)` at radius `x`, derivatives taken in `x`.
    pub fn radial_jet(&self, x: f64) -> [f64; 3] {
        let lam = self.lambda();
        let y = lam * x;
        let [g, g1, g2] = self.poly_jet(y);
        let k = self.norm.to_f64() * (-y / 2.0).exp();
        [k * g, k * lam * (g1 - g / 2.0), k * lam * lam * (g2 - g1 + g / 4.0)]
    }

    /// `R(x)·e^{x/ν}`, the radial factor without its exponential.
    pub fn radial_polynomial(&self, x: f64) -> f64 {
        self.norm.to_f64() * self.poly_jet(self.lambda() * x)[0]
    }

    pub fn radial(&self, x: f64) -> f64 {
        self.radial_jet(x)[0]
    }

    pub fn angular(&self, point: &Point) -> Result<Complex64> {
        match (self.dim, *point) {
            (Dim::Three, Point::Spherical { theta, phi, .. }) => {
                Ok(spherical_harmonic(self.sector as u32, self.m, theta, phi))
            }
            (Dim::Two, Point::Polar { phi, .. }) => Ok(angular_eigenfunction_2d(self.m, phi)),
            _ => Err(Error::Invalid(format!("point {point:?} does not match a {} wavefunction", self.dim))),
        }
    }

    pub fn evaluate(&self, point: &Point) -> Result<Complex64> {
        Ok(self.angular(point)? * self.radial(point.radius()))
    }

    /// Sign changes of the radial factor on `(0, ∞)`, counted with a Sturm
    /// sequence on the exact polynomial.
    pub fn node_count(&self) -> usize {
        sturm_positive_roots(&self.radial_coeffs)
    }

    pub fn energy(&self) -> UnitCoeff {
        crate::ladder::energy(self.dim, self.n).expect("n validated at construction")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim.as_int(),
            "n": self.n,
            "sector": self.sector,
            "m": self.m,
            "lowest_power": self.lowest_power(),
            "radial_coeffs": self.radial_coeffs.iter().map(rational_string).collect::<Vec<_>>(),
            "decay_rate": rational_string(&self.decay_rate),
            "norm": self.norm.to_json(),
            "norm_value": self.norm.to_f64(),
        })
    }

    /// CSV rows `coordinates…, re, im`.
    pub fn sample_csv(&self, points: &[Point]) -> Result<String> {
        let mut out = match self.dim {
            Dim::Three => String::from("r,theta,phi,re,im\n"),
            Dim::Two => String::from("rho,phi,re,im\n"),
        };
        for p in points {
            let v = self.evaluate(p)?;
            match *p {
                Point::Spherical { r, theta, phi } => writeln!(out, "{r},{theta},{phi},{},{}", v.re, v.im),
                Point::Polar { rho, phi } => writeln!(out, "{rho},{phi},{},{}", v.re, v.im),
            }
            .expect("writing to a String");
        }
        Ok(out)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn remainder(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = r.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nonzero: Vec<i32> = signs.filter(|s| *s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots in `(0, ∞)`, assuming none sits at `0`.
pub fn sturm_positive_roots(coeffs: &[BigRational]) -> usize {
    let mut p0 = coeffs.to_vec();
    trim(&mut p0);
    if p0.len() <= 1 {
        return 0;
    }
    let mut p1: Vec<BigRational> = p0.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect();
    let mut seq = vec![p0.clone()];
    while !p1.is_empty() {
        seq.push(p1.clone());
        let r: Vec<BigRational> = remainder(&p0, &p1).into_iter().map(|c| -c).collect();
        p0 = p1;
        p1 = r;
    }
    let at_zero = sign_changes(seq.iter().map(|p| sign(&p[0])));
    let at_inf = sign_changes(seq.iter().map(|p| sign(p.last().expect("trimmed nonempty"))));
    at_zero - at_inf
}
