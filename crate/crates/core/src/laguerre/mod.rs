//! Associated Laguerre polynomials with exact rational coefficients.
//!
//! Convention: `L_m^α(x) = Σ_j (−1)^j / j! · C(m+α, m−j) · x^j`, so that
//! `L_m^α(0) = C(m+α, m)`.

pub mod angular;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rational_string, to_f64};

pub use angular::{angular_eigenfunction_2d, spherical_harmonic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerrePoly {
    pub alpha: u32,
    pub degree: u32,
    /// `a_j` for `j = 0..=degree`.
    pub coeffs: Vec<BigRational>,
}

/// `L_m^α` for integers `α, m ≥ 0`.
pub fn laguerre(alpha: i64, m: i64) -> Result<LaguerrePoly> {
    if alpha < 0 || m < 0 {
        return Err(Error::OutOfRange(format!("Laguerre indices must be nonnegative, got α={alpha}, m={m}")));
    }
    let (alpha, m) = (alpha as u32, m as u32);
    let coeffs = (0..=m)
        .map(|j| {
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            BigRational::new(sign * binomial(m + alpha, m - j), factorial(j))
        })
        .collect();
    Ok(LaguerrePoly { alpha, degree: m, coeffs })
}

impl LaguerrePoly {
    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `a_{j+1}/a_j = (j−m)/((j+1)(α+j+1))` for every `j < m`.
    pub fn ratio_law_holds(&self) -> bool {
        let (m, a) = (self.degree as i64, self.alpha as i64);
        (0..self.degree as usize).all(|j| {
            let jj = j as i64;
            let expected = BigRational::new(BigInt::from(jj - m), BigInt::from((jj + 1) * (a + jj + 1)));
            &self.coeffs[j + 1] / &self.coeffs[j] == expected
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha,
            "degree": self.degree,
            "coeffs": self.coeffs.iter().map(rational_string).collect::<Vec<_>>(),
        })
    }
}
