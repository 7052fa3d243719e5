//! Exact scalars: Gaussian rationals, unit monomials in the canonical basis
//! {ħ, μ, e}, and real algebraic constants of the form `q·√t`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n}");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Always `num/den`, also for integers.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// An element `re + i·im` of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss { re, im: BigRational::zero() }
    }

    pub fn imag(im: BigRational) -> Self {
        Gauss { re: BigRational::zero(), im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn i() -> Self {
        Self::imag(BigRational::one())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Gauss { re: &self.re * q, im: &self.im * q }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        Gauss { re: &self.re / &n, im: -&self.im / &n }
    }

    /// Splits a pure real or pure imaginary value into `(rational, i_power)`.
    pub fn as_monomial(&self) -> Option<(BigRational, u8)> {
        if self.im.is_zero() {
            Some((self.re.clone(), 0))
        } else if self.re.is_zero() {
            Some((self.im.clone(), 1))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", self.im)
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}i)", self.re, -&self.im)
                } else {
                    write!(f, "({} + {}i)", self.re, self.im)
                }
            }
        }
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Add<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl AddAssign<&Gauss> for Gauss {
    fn add_assign(&mut self, o: &Gauss) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        &self * &o
    }
}

impl<'a> Mul<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Div for Gauss {
    type Output = Gauss;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Gauss) -> Gauss {
        &self * &o.recip()
    }
}

/// A monomial `ħ^hbar · μ^(mu2/2) · e^e · (√2)^root2` in the canonical unit
/// basis. The Bohr radius is not a generator; it enters as `ħ²μ⁻¹e⁻²`.
///
/// Only μ and 2 may carry half-integer exponents. `root2` is 0 or 1; even
/// powers of √2 are moved into the rational coefficient by the arithmetic
/// below, which is why products and powers return a rational factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Units {
    pub hbar: i32,
    pub mu2: i32,
    pub e: i32,
    pub root2: u8,
}

impl Units {
    pub const ONE: Units = Units { hbar: 0, mu2: 0, e: 0, root2: 0 };

    pub fn hbar() -> Units {
        Units { hbar: 1, ..Units::ONE }
    }

    pub fn mu() -> Units {
        Units { mu2: 2, ..Units::ONE }
    }

    pub fn charge() -> Units {
        Units { e: 1, ..Units::ONE }
    }

    /// a₀ = ħ²/(μe²).
    pub fn bohr() -> Units {
        Units { hbar: 2, mu2: -2, e: -2, root2: 0 }
    }

    pub fn bohr_pow(k: i32) -> Units {
        Units { hbar: 2 * k, mu2: -2 * k, e: -2 * k, root2: 0 }
    }

    pub fn is_one(&self) -> bool {
        *self == Units::ONE
    }

    pub fn combine(self, o: Units) -> (Units, BigRational) {
        let s = self.root2 + o.root2;
        let u = Units { hbar: self.hbar + o.hbar, mu2: self.mu2 + o.mu2, e: self.e + o.e, root2: s % 2 };
        let f = if s == 2 { int(2) } else { BigRational::one() };
        (u, f)
    }

    pub fn inv(self) -> (Units, BigRational) {
        let u = Units { hbar: -self.hbar, mu2: -self.mu2, e: -self.e, root2: self.root2 };
        // 2^{-1/2} = √2 / 2
        let f = if self.root2 == 1 { rat(1, 2) } else { BigRational::one() };
        (u, f)
    }

    pub fn pow(self, k: i32) -> (Units, BigRational) {
        let base = if k >= 0 { (self, BigRational::one()) } else { self.inv() };
        let mut acc = (Units::ONE, BigRational::one());
        for _ in 0..k.unsigned_abs() {
            let (u, f) = acc.0.combine(base.0);
            acc = (u, acc.1 * f * &base.1);
        }
        acc
    }

    /// Square root, when every exponent stays within the allowed lattice.
    pub fn sqrt(self) -> Option<Units> {
        if self.root2 != 0 || self.hbar % 2 != 0 || self.mu2 % 2 != 0 || self.e % 2 != 0 {
            return None;
        }
        Some(Units { hbar: self.hbar / 2, mu2: self.mu2 / 2, e: self.e / 2, root2: 0 })
    }

    /// Splits out the largest power of a₀ so that the remaining ħ and μ
    /// exponents are as small as possible. Display only.
    pub fn refactor_bohr(&self) -> (i32, Units) {
        let score = |k: i32| {
            let h = self.hbar - 2 * k;
            let m = self.mu2 + 2 * k;
            (h.abs() + m.abs() / 2 + (m % 2).abs(), k.abs())
        };
        let lo = -(self.hbar.abs() + self.mu2.abs() + 2);
        let hi = -lo;
        let k = (lo..=hi).min_by_key(|&k| score(k)).unwrap_or(0);
        let rest = Units { hbar: self.hbar - 2 * k, mu2: self.mu2 + 2 * k, e: self.e + 2 * k, root2: self.root2 };
        (k, rest)
    }

    pub fn exponents_json(&self) -> serde_json::Value {
        serde_json::json!({
            "hbar": self.hbar,
            "mu": rational_string(&rat(self.mu2 as i64, 2)),
            "e": self.e,
            "sqrt2": self.root2,
        })
    }
}

fn fmt_pow(f: &mut fmt::Formatter<'_>, sym: &str, k: i32, first: &mut bool) -> fmt::Result {
    if k == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "·")?;
    }
    *first = false;
    if k == 1 {
        write!(f, "{sym}")
    } else {
        write!(f, "{sym}^{k}")
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, rest) = self.refactor_bohr();
        let mut first = true;
        if rest.root2 == 1 {
            write!(f, "√2")?;
            first = false;
        }
        fmt_pow(f, "ħ", rest.hbar, &mut first)?;
        if rest.mu2 != 0 {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if rest.mu2 % 2 == 0 {
                if rest.mu2 == 2 {
                    write!(f, "μ")?;
                } else {
                    write!(f, "μ^{}", rest.mu2 / 2)?;
                }
            } else {
                write!(f, "μ^({}/2)", rest.mu2)?;
            }
        }
        fmt_pow(f, "e", rest.e, &mut first)?;
        fmt_pow(f, "a₀", k, &mut first)?;
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A single scalar monomial `rational · i^i_power · units`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitCoeff {
    pub rational: BigRational,
    pub i_power: u8,
    pub units: Units,
}

impl UnitCoeff {
    pub fn new(rational: BigRational, i_power: i64, units: Units) -> Self {
        let mut rational = rational;
        let mut p = i_power.rem_euclid(4) as u8;
        if p >= 2 {
            rational = -rational;
            p -= 2;
        }
        UnitCoeff { rational, i_power: p, units }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0, Units::ONE)
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn i() -> Self {
        Self::new(BigRational::one(), 1, Units::ONE)
    }

    pub fn hbar() -> Self {
        Self::new(BigRational::one(), 0, Units::hbar())
    }

    pub fn mu() -> Self {
        Self::new(BigRational::one(), 0, Units::mu())
    }

    pub fn charge() -> Self {
        Self::new(BigRational::one(), 0, Units::charge())
    }

    pub fn bohr() -> Self {
        Self::new(BigRational::one(), 0, Units::bohr())
    }

    /// 1/√(2μ), carried with half-integer exponents of 2 and μ.
    pub fn inv_sqrt_two_mu() -> Self {
        // 2^{-1/2} μ^{-1/2} = (1/2)·√2·μ^{-1/2}
        Self::new(rat(1, 2), 0, Units { hbar: 0, mu2: -1, e: 0, root2: 1 })
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn gauss(&self) -> Gauss {
        match self.i_power {
            0 => Gauss::real(self.rational.clone()),
            _ => Gauss::imag(self.rational.clone()),
        }
    }

    pub fn from_gauss(g: &Gauss, units: Units) -> Option<Self> {
        let (q, p) = g.as_monomial()?;
        Some(Self::new(q, p as i64, units))
    }

    pub fn mul(&self, o: &UnitCoeff) -> UnitCoeff {
        let (u, f) = self.units.combine(o.units);
        Self::new(&self.rational * &o.rational * f, (self.i_power + o.i_power) as i64, u)
    }

    pub fn recip(&self) -> UnitCoeff {
        assert!(!self.rational.is_zero(), "reciprocal of zero coefficient");
        let (u, f) = self.units.inv();
        Self::new(self.rational.recip() * f, -(self.i_power as i64), u)
    }

    pub fn pow(&self, k: i32) -> UnitCoeff {
        let base = if k >= 0 { self.clone() } else { self.recip() };
        (0..k.unsigned_abs()).fold(UnitCoeff::one(), |acc, _| acc.mul(&base))
    }

    pub fn scale(&self, q: &BigRational) -> UnitCoeff {
        UnitCoeff { rational: &self.rational * q, ..self.clone() }
    }

    pub fn neg(&self) -> UnitCoeff {
        self.scale(&int(-1))
    }

    pub fn conj(&self) -> UnitCoeff {
        Self::new(self.rational.clone(), -(self.i_power as i64), self.units)
    }

    /// Numeric value with ħ = μ = e = 1 (hence a₀ = 1).
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let mut v = self.gauss().to_complex();
        if self.units.root2 == 1 {
            v *= std::f64::consts::SQRT_2;
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rational": rational_string(&self.rational),
            "i_power": self.i_power,
            "units": self.units.exponents_json(),
        })
    }
}

impl fmt::Display for UnitCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gauss())?;
        if !self.units.is_one() {
            write!(f, "·{}", self.units)?;
        }
        Ok(())
    }
}

/// A real algebraic constant `coeff · √radicand · units`.
///
/// The radicand is a positive integer with every square factor below 10⁴
/// extracted. Equality compares squares, so it never depends on how far the
/// extraction got.
#[derive(Clone, Debug)]
pub struct Surd {
    pub coeff: BigRational,
    pub radicand: BigInt,
    pub units: Units,
}

impl Surd {
    pub fn rational(q: BigRational, units: Units) -> Self {
        Self::new(q, BigInt::one(), units)
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one(), Units::ONE)
    }

    /// `√q · units`, for `q ≥ 0`.
    pub fn sqrt(q: &BigRational, units: Units) -> Self {
        assert!(!q.is_negative(), "square root of negative rational");
        // √(a/b) = √(ab)/b
        let radicand = q.numer() * q.denom();
        Self::new(BigRational::new(BigInt::one(), q.denom().clone()), radicand, units)
    }

    fn new(coeff: BigRational, radicand: BigInt, units: Units) -> Self {
        let mut coeff = coeff;
        let mut radicand = radicand;
        let mut units = units;
        if units.root2 == 1 {
            radicand *= 2;
            units.root2 = 0;
        }
        if radicand.is_zero() || coeff.is_zero() {
            return Surd { coeff: BigRational::zero(), radicand: BigInt::one(), units };
        }
        let (outside, inside) = extract_square(&radicand);
        coeff *= BigRational::from_integer(outside);
        radicand = inside;
        Surd { coeff, radicand, units }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let (u, f) = self.units.combine(o.units);
        Surd::new(&self.coeff * &o.coeff * f, &self.radicand * &o.radicand, u)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Surd {
        Surd::new(&self.coeff * q, self.radicand.clone(), self.units)
    }

    pub fn recip(&self) -> Surd {
        assert!(!self.is_zero(), "reciprocal of zero surd");
        // 1/(c√t) = √t/(c t)
        let (u, f) = self.units.inv();
        let c = (&self.coeff * BigRational::from_integer(self.radicand.clone())).recip() * f;
        Surd::new(c, self.radicand.clone(), u)
    }

    /// The square, as an exact rational with units.
    pub fn square(&self) -> (BigRational, Units) {
        let (u, f) = self.units.combine(self.units);
        (&self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone()) * f, u)
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Numeric value with ħ = μ = e = 1.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeff": rational_string(&self.coeff),
            "sqrt_of": self.radicand.to_string(),
            "units": self.units.exponents_json(),
        })
    }
}

impl PartialEq for Surd {
    fn eq(&self, o: &Surd) -> bool {
        self.signum() == o.signum() && self.square() == o.square()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if !self.radicand.is_one() {
            write!(f, "·√{}", self.radicand)?;
        }
        if !self.units.is_one() {
            write!(f, "·{}", self.units)?;
        }
        Ok(())
    }
}

/// Writes `n = outside² · inside`, pulling out square factors of primes
/// below 10⁴ and a perfect-square cofactor.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0;
        while rest.mod_floor(&bp).is_zero() {
            rest /= &bp;
            count += 1;
        }
        for _ in 0..count / 2 {
            outside *= &bp;
        }
        if count % 2 == 1 {
            inside *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        outside *= s;
    } else {
        inside *= rest;
    }
    (outside, inside)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_power_folds_sign() {
        let c = UnitCoeff::new(int(3), 3, Units::ONE);
        assert_eq!(c.i_power, 1);
        assert_eq!(c.rational, int(-3));
        let sq = UnitCoeff::i().mul(&UnitCoeff::i());
        assert_eq!(sq, UnitCoeff::rational(int(-1)));
    }

    #[test]
    fn root_two_squares_away() {
        let c = UnitCoeff::inv_sqrt_two_mu();
        let sq = c.mul(&c);
        // 1/(2μ)
        assert_eq!(sq, UnitCoeff::new(rat(1, 2), 0, Units { mu2: -2, ..Units::ONE }));
        let back = c.recip().mul(&c);
        assert_eq!(back, UnitCoeff::one());
    }

    #[test]
    fn bohr_refactors_on_display() {
        // e²/a₀ = μe⁴/ħ²
        let e2_over_a0 = UnitCoeff::charge().pow(2).mul(&UnitCoeff::bohr().recip());
        assert_eq!(e2_over_a0.units, Units { hbar: -2, mu2: 2, e: 4, root2: 0 });
        assert_eq!(e2_over_a0.to_string(), "1·e^2·a₀^-1");
        let hbar_over_a0 = UnitCoeff::hbar().mul(&UnitCoeff::bohr().recip());
        assert_eq!(hbar_over_a0.units.to_string(), "ħ·a₀^-1");
    }

    #[test]
    fn surd_canonical_and_equal() {
        let a = Surd::sqrt(&rat(8, 3), Units::ONE);
        assert_eq!(a.radicand, BigInt::from(6));
        assert_eq!(a.coeff, rat(2, 3));
        let b = Surd::sqrt(&rat(2, 3), Units::ONE).mul_rational(&int(2));
        assert_eq!(a, b);
        assert_ne!(a, b.mul_rational(&int(-1)));
        let r = a.recip().mul(&a);
        assert_eq!(r, Surd::one());
        assert!((Surd::sqrt(&int(2), Units::ONE).to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&int(3)), "3/1");
        assert_eq!(rational_string(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
