//! Numeric angular eigenfunctions.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `e^{imφ}/√(2π)`
pub fn angular_eigenfunction_2d(m: i64, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi)
}

/// Associated Legendre function `P_l^m(x)` for `0 ≤ m ≤ l`, including the
/// Condon–Shortley phase `(−1)^m`.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// Orthonormal `Y_lm(θ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i64, theta: f64, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs() as u32;
    assert!(ma <= l, "|m| must not exceed l");
    // (l−|m|)!/(l+|m|)! as a running product
    let ratio: f64 = ((l - ma + 1)..=(l + ma)).map(|k| 1.0 / k as f64).product();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    let y = Complex64::from_polar(norm * assoc_legendre(l, ma, theta.cos()), ma as f64 * phi);
    if m >= 0 {
        y
    } else {
        let sign = if ma.is_multiple_of(2) { 1.0 } else { -1.0 };
        y.conj() * sign
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_values() {
        let c = 1.0 / (2.0 * PI).sqrt();
        assert!((angular_eigenfunction_2d(0, 1.3) - Complex64::new(c, 0.0)).norm() < 1e-15);
        assert!((angular_eigenfunction_2d(1, 0.0) - Complex64::new(c, 0.0)).norm() < 1e-15);
        for (m, phi) in [(3, 0.2), (-2, 4.0), (7, -1.0)] {
            assert!((angular_eigenfunction_2d(m, phi).norm_sqr() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn harmonic_values() {
        let y00 = spherical_harmonic(0, 0, 0.4, 1.1);
        assert!((y00.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
        let y10 = spherical_harmonic(1, 0, 0.0, 0.0);
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        // Y_11 = −√(3/8π) sinθ e^{iφ}
        let (t, p) = (0.7, 0.3);
        let y11 = spherical_harmonic(1, 1, t, p);
        let expect = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * t.sin(), p);
        assert!((y11 - expect).norm() < 1e-14);
        // Y_{l,−m} = (−1)^m conj(Y_lm)
        let a = spherical_harmonic(3, -2, t, p);
        let b = spherical_harmonic(3, 2, t, p).conj();
        assert!((a - b).norm() < 1e-14);
    }
}
