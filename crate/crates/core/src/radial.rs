//! One-dimensional algebra in a radial coordinate `x` and its momentum `p`,
//! plus Laurent polynomials in `x` acting on the top state `|n, n−1⟩`.
//!
//! The only ordering rule is `[p, x^k] = −iħ k x^{k−1}` for integer `k`. On
//! the top state, `p` is eliminated by
//! `p|n,n−1⟩ = iħ(1/(νa₀) − ν/x)|n,n−1⟩` with `ν = n` in 3D and `ν = n − ½`
//! in 2D, always after commuting it to the right.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binomial, int, rat, rational_string, Gauss, UnitCoeff, Units};
use crate::opcore::{self, Expr};

/// Spatial dimension of the Coulomb problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_int(d: u32) -> Result<Dim> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::Invalid(format!("dimension must be 2 or 3, got {d}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// `ν` for principal quantum number `n`: `n` in 3D, `n − ½` in 2D.
    pub fn nu(self, n: u32) -> BigRational {
        match self {
            Dim::Three => int(n as i64),
            Dim::Two => rat(2 * n as i64 - 1, 2),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}d", self.as_int())
    }
}

/// Raw 1D expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadialExpr {
    /// `x^k`
    X(i32),
    P,
    Scalar(UnitCoeff),
    Sum(Vec<RadialExpr>),
    Product(Vec<RadialExpr>),
    Pow(Box<RadialExpr>, u32),
}

impl RadialExpr {
    pub fn x() -> Self {
        RadialExpr::X(1)
    }

    pub fn x_pow(k: i32) -> Self {
        RadialExpr::X(k)
    }

    pub fn p() -> Self {
        RadialExpr::P
    }

    pub fn int(n: i64) -> Self {
        RadialExpr::Scalar(UnitCoeff::rational(int(n)))
    }

    pub fn scalar(c: UnitCoeff) -> Self {
        RadialExpr::Scalar(c)
    }

    pub fn pow(self, k: u32) -> Self {
        RadialExpr::Pow(Box::new(self), k)
    }

    /// The same operator with `x ↦ r` and `p ↦ p_r` in the Cartesian algebra.
    pub fn embed(&self) -> Expr {
        match self {
            RadialExpr::X(k) => {
                let g = if *k >= 0 { opcore::expr::r() } else { opcore::expr::inv_r() };
                Expr::Product(std::iter::repeat_n(g, k.unsigned_abs() as usize).collect())
            }
            RadialExpr::P => opcore::momenta::spherical_explicit(opcore::SphericalComponent::Radial),
            RadialExpr::Scalar(c) => Expr::Scalar(c.clone()),
            RadialExpr::Sum(v) => Expr::Sum(v.iter().map(RadialExpr::embed).collect()),
            RadialExpr::Product(v) => Expr::Product(v.iter().map(RadialExpr::embed).collect()),
            RadialExpr::Pow(a, k) => a.embed().pow(*k),
        }
    }
}

impl Add for RadialExpr {
    type Output = RadialExpr;
    fn add(self, o: RadialExpr) -> RadialExpr {
        RadialExpr::Sum(vec![self, o])
    }
}

impl Sub for RadialExpr {
    type Output = RadialExpr;
    fn sub(self, o: RadialExpr) -> RadialExpr {
        self + (-o)
    }
}

impl Neg for RadialExpr {
    type Output = RadialExpr;
    fn neg(self) -> RadialExpr {
        RadialExpr::int(-1) * self
    }
}

impl Mul for RadialExpr {
    type Output = RadialExpr;
    fn mul(self, o: RadialExpr) -> RadialExpr {
        RadialExpr::Product(vec![self, o])
    }
}

type OpKey = (i32, u32, Units);

/// Normal-ordered radial operator `Σ c · x^a · p^m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadialOp {
    terms: BTreeMap<OpKey, Gauss>,
}

/// `k(k−1)···(k−j+1)`
fn falling(k: i32, j: u32) -> BigInt {
    (0..j as i64).fold(BigInt::one(), |acc, t| acc * BigInt::from(k as i64 - t))
}

impl RadialOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(&UnitCoeff::one())
    }

    pub fn scalar(c: &UnitCoeff) -> Self {
        Self::term(c.gauss(), 0, 0, c.units)
    }

    pub fn x_pow(k: i32) -> Self {
        Self::term(Gauss::one(), k, 0, Units::ONE)
    }

    pub fn p() -> Self {
        Self::term(Gauss::one(), 0, 1, Units::ONE)
    }

    pub fn term(c: Gauss, x_exp: i32, p_exp: u32, units: Units) -> Self {
        let mut out = Self::zero();
        out.add_term((x_exp, p_exp, units), c);
        out
    }

    fn add_term(&mut self, key: OpKey, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &RadialOp) -> RadialOp {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &RadialOp) -> RadialOp {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RadialOp {
        self.scale(&UnitCoeff::rational(int(-1)))
    }

    pub fn scale(&self, s: &UnitCoeff) -> RadialOp {
        let mut out = RadialOp::zero();
        let g = s.gauss();
        for ((a, m, u), c) in &self.terms {
            let (units, f) = u.combine(s.units);
            out.add_term((*a, *m, units), &(c * &g) * &Gauss::real(f));
        }
        out
    }

    /// `self · o`, normal ordered with
    /// `p^m x^b = Σ_j C(m,j) (−iħ)^j b(b−1)···(b−j+1) x^{b−j} p^{m−j}`.
    pub fn mul(&self, o: &RadialOp) -> RadialOp {
        let mut out = RadialOp::zero();
        for ((a, m, ua), ca) in &self.terms {
            for ((b, k, ub), cb) in &o.terms {
                let (u0, f0) = ua.combine(*ub);
                let base = &(ca * cb) * &Gauss::real(f0);
                for j in 0..=*m {
                    let ff = falling(*b, j);
                    if ff.is_zero() {
                        break;
                    }
                    let (u, f1) = u0.combine(Units { hbar: j as i32, ..Units::ONE });
                    let q = BigRational::from_integer(binomial(*m, j) * ff) * f1;
                    let c = &(&base * &Gauss::i_pow(-(j as i64))) * &Gauss::real(q);
                    out.add_term((a + b - j as i32, m - j + k, u), c);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> RadialOp {
        (0..k).fold(RadialOp::one(), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, o: &RadialOp) -> RadialOp {
        self.mul(o).sub(&o.mul(self))
    }

    /// Hermitian adjoint, with `x` and `p` self-adjoint.
    pub fn adjoint(&self) -> RadialOp {
        let mut out = RadialOp::zero();
        for ((a, m, u), c) in &self.terms {
            // (c x^a p^m)† = c̄ p^m x^a
            let t = RadialOp::term(Gauss::one(), 0, *m, Units::ONE).mul(&RadialOp::x_pow(*a)).scale(&UnitCoeff::new(
                BigRational::one(),
                0,
                *u,
            ));
            out = out.add(&t.scale_gauss(&c.conj()));
        }
        out
    }

    fn scale_gauss(&self, g: &Gauss) -> RadialOp {
        RadialOp { terms: self.terms.iter().map(|(k, c)| (*k, c * g)).filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Terms `(coeff, x_exp, p_exp)` in key order, with ℚ(i) coefficients
    /// split into real and imaginary monomials.
    pub fn terms(&self) -> Vec<(UnitCoeff, i32, u32)> {
        let mut out = Vec::new();
        for ((a, m, u), c) in &self.terms {
            for (q, ip) in [(c.re.clone(), 0), (c.im.clone(), 1)] {
                if !q.is_zero() {
                    out.push((UnitCoeff::new(q, ip, *u), *a, *m));
                }
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.terms().len()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|(c, a, m)| {
                    json!({
                        "x_exp": a,
                        "p_exp": m,
                        "coeff": rational_string(&c.rational),
                        "i_power": c.i_power,
                        "units": c.units.exponents_json(),
                    })
                })
                .collect(),
        )
    }

    /// The same operator in the Cartesian algebra with `x ↦ r`, `p ↦ p_r`.
    pub fn embed(&self) -> Expr {
        let mut sum = Vec::new();
        for (c, a, m) in self.terms() {
            let mut factors = vec![Expr::Scalar(c), RadialExpr::X(a).embed()];
            factors.extend(std::iter::repeat_n(RadialExpr::P.embed(), m as usize));
            sum.push(Expr::Product(factors));
        }
        Expr::Sum(sum)
    }
}

impl fmt::Display for RadialOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.terms();
        if t.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, a, m)) in t.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            match a {
                0 => {}
                1 => write!(f, "·x")?,
                _ => write!(f, "·x^{a}")?,
            }
            match m {
                0 => {}
                1 => write!(f, "·p")?,
                _ => write!(f, "·p^{m}")?,
            }
        }
        Ok(())
    }
}

/// Normal form of a raw 1D tree.
pub fn radial_normal_order(e: &RadialExpr) -> RadialOp {
    match e {
        RadialExpr::X(k) => RadialOp::x_pow(*k),
        RadialExpr::P => RadialOp::p(),
        RadialExpr::Scalar(c) => RadialOp::scalar(c),
        RadialExpr::Sum(v) => v.iter().fold(RadialOp::zero(), |acc, t| acc.add(&radial_normal_order(t))),
        RadialExpr::Product(v) => v.iter().fold(RadialOp::one(), |acc, t| acc.mul(&radial_normal_order(t))),
        RadialExpr::Pow(a, k) => radial_normal_order(a).pow(*k),
    }
}

/// Laurent polynomial `Σ c · x^k` with unit-tagged ℚ(i) coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<(i32, Units), Gauss>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Gauss::one(), 0, Units::ONE)
    }

    pub fn monomial(c: Gauss, k: i32, units: Units) -> Self {
        let mut out = Self::zero();
        out.add_term(k, units, c);
        out
    }

    fn add_term(&mut self, k: i32, u: Units, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((k, u)).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(k, u));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for ((k, u), c) in &o.terms {
            out.add_term(*k, *u, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.scale(&UnitCoeff::rational(int(-1))))
    }

    pub fn scale(&self, s: &UnitCoeff) -> Laurent {
        let mut out = Laurent::zero();
        let g = s.gauss();
        for ((k, u), c) in &self.terms {
            let (units, f) = u.combine(s.units);
            out.add_term(*k, units, &(c * &g) * &Gauss::real(f));
        }
        out
    }

    pub fn shift(&self, by: i32) -> Laurent {
        Laurent { terms: self.terms.iter().map(|((k, u), c)| ((k + by, *u), c.clone())).collect() }
    }

    /// `d/dx`
    pub fn derivative(&self) -> Laurent {
        let mut out = Laurent::zero();
        for ((k, u), c) in &self.terms {
            out.add_term(k - 1, *u, c * &Gauss::from_int(*k as i64));
        }
        out
    }

    /// Entries `(exponent, units, coefficient)` in ascending exponent order.
    pub fn entries(&self) -> impl Iterator<Item = (i32, Units, &Gauss)> {
        self.terms.iter().map(|((k, u), c)| (*k, *u, c))
    }

    pub fn exponents(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|(k, _)| *k).collect();
        v.dedup();
        v
    }

    /// The coefficient of `x^k` if it carries a single unit monomial.
    pub fn coefficient(&self, k: i32) -> Option<(Gauss, Units)> {
        let mut it = self.terms.iter().filter(|((e, _), _)| *e == k);
        let ((_, u), c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((c.clone(), *u))
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(|c| (!c.re.is_zero()) as usize + (!c.im.is_zero()) as usize).sum()
    }

    pub fn to_json(&self) -> Value {
        let mut out = Vec::new();
        for ((k, u), c) in &self.terms {
            for (q, ip) in [(&c.re, 0), (&c.im, 1)] {
                if !q.is_zero() {
                    out.push(json!([k, rational_string(q), ip, u.exponents_json()]));
                }
            }
        }
        Value::Array(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((k, u), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !u.is_one() {
                write!(f, "·{u}")?;
            }
            if *k != 0 {
                write!(f, "·x^{k}")?;
            }
        }
        Ok(())
    }
}

/// `poly(x)·|n, n−1⟩`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialState {
    pub dim: Dim,
    pub n: u32,
    pub poly: Laurent,
}

impl RadialState {
    pub fn reference(dim: Dim, n: u32) -> Self {
        RadialState { dim, n, poly: Laurent::one() }
    }

    pub fn with_poly(&self, poly: Laurent) -> Self {
        RadialState { dim: self.dim, n: self.n, poly }
    }

    /// `p · poly(x)|ref⟩ = (−iħ poly′(x) + poly(x)·iħ(1/(νa₀) − ν/x))|ref⟩`
    pub fn apply_p(&self) -> RadialState {
        let nu = self.dim.nu(self.n);
        let i_hbar = UnitCoeff::i().mul(&UnitCoeff::hbar());
        let commuted = self.poly.derivative().scale(&i_hbar.neg());
        let inv_nu_a0 = UnitCoeff::new(nu.recip(), 0, Units::bohr_pow(-1));
        let reference =
            self.poly.scale(&inv_nu_a0).sub(&self.poly.shift(-1).scale(&UnitCoeff::rational(nu))).scale(&i_hbar);
        self.with_poly(commuted.add(&reference))
    }

    /// `op · self`, eliminating every momentum factor.
    pub fn apply(&self, op: &RadialOp) -> RadialState {
        let mut powers = vec![self.clone()];
        let mut out = Laurent::zero();
        for ((a, m, u), c) in &op.terms {
            while powers.len() <= *m as usize {
                let next = powers.last().expect("nonempty").apply_p();
                powers.push(next);
            }
            let s = UnitCoeff::new(BigRational::one(), 0, *u);
            let term = powers[*m as usize].poly.shift(*a).scale(&s);
            out = out.add(&term_scale_gauss(&term, c));
        }
        self.with_poly(out)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim.as_int(),
            "n": self.n,
            "coeffs": self.poly.to_json(),
        })
    }
}

fn term_scale_gauss(l: &Laurent, g: &Gauss) -> Laurent {
    Laurent { terms: l.terms.iter().map(|(k, c)| (*k, c * g)).filter(|(_, c)| !c.is_zero()).collect() }
}

/// `op·|n, n−1⟩` as a Laurent polynomial state.
pub fn apply_to_reference(op: &RadialOp, n: u32, dim: Dim) -> Result<RadialState> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(RadialState::reference(dim, n).apply(op))
}

#[derive(Clone, Debug)]
pub struct EigenReport {
    pub eigenvalue: UnitCoeff,
    pub residual: Laurent,
}

impl EigenReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Checks `(p + iħc/x)·x^{−(n−1)}|n,n−1⟩ = (iħ/(νa₀))·x^{−(n−1)}|n,n−1⟩`
/// with `c = 1` in 3D and `c = ½` in 2D.
pub fn shifted_momentum_eigencheck(n: u32, dim: Dim) -> Result<EigenReport> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let c = match dim {
        Dim::Three => int(1),
        Dim::Two => rat(1, 2),
    };
    let i_hbar = UnitCoeff::i().mul(&UnitCoeff::hbar());
    let op = RadialOp::p().add(&RadialOp::x_pow(-1).scale(&i_hbar.scale(&c)));
    let state = RadialState { dim, n, poly: Laurent::monomial(Gauss::one(), 1 - n as i32, Units::ONE) };
    let eigenvalue = i_hbar.mul(&UnitCoeff::new(dim.nu(n).recip(), 0, Units::bohr_pow(-1)));
    let residual = state.apply(&op).poly.sub(&state.poly.scale(&eigenvalue));
    Ok(EigenReport { eigenvalue, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::normal_order;

    fn i_hbar() -> UnitCoeff {
        UnitCoeff::i().mul(&UnitCoeff::hbar())
    }

    #[test]
    fn momentum_through_inverse_square() {
        let lhs = radial_normal_order(&(RadialExpr::p() * RadialExpr::x_pow(-2)));
        let rhs = RadialOp::x_pow(-2).mul(&RadialOp::p()).add(&RadialOp::x_pow(-3).scale(&i_hbar().scale(&int(2))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_of_equal_terms_vanishes() {
        let e = RadialExpr::x() * RadialExpr::p() - RadialExpr::x() * RadialExpr::p();
        assert!(radial_normal_order(&e).is_zero());
    }

    #[test]
    fn p_squared_through_x() {
        let lhs = radial_normal_order(&(RadialExpr::p().pow(2) * RadialExpr::x()));
        let rhs = RadialOp::x_pow(1).mul(&RadialOp::p().pow(2)).add(&RadialOp::p().scale(&i_hbar().scale(&int(-2))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reference_rule_examples() {
        // n = 2, 3D: iħ(1/(2a₀) − 2/x)
        let s = apply_to_reference(&RadialOp::p(), 2, Dim::Three).unwrap();
        let expect = Laurent::monomial(Gauss::real(rat(1, 2)), 0, Units::bohr_pow(-1))
            .sub(&Laurent::monomial(Gauss::from_int(2), -1, Units::ONE))
            .scale(&i_hbar());
        assert_eq!(s.poly, expect);
        // n = 1, 2D: iħ(2/a₀ − ½/x)
        let s = apply_to_reference(&RadialOp::p(), 1, Dim::Two).unwrap();
        let expect = Laurent::monomial(Gauss::from_int(2), 0, Units::bohr_pow(-1))
            .sub(&Laurent::monomial(Gauss::real(rat(1, 2)), -1, Units::ONE))
            .scale(&i_hbar());
        assert_eq!(s.poly, expect);
        let s = apply_to_reference(&RadialOp::one(), 7, Dim::Two).unwrap();
        assert_eq!(s.poly, Laurent::one());
        assert!(apply_to_reference(&RadialOp::one(), 0, Dim::Two).is_err());
    }

    #[test]
    fn shifted_eigenvalues() {
        let r = shifted_momentum_eigencheck(1, Dim::Three).unwrap();
        assert!(r.holds());
        assert_eq!(r.eigenvalue, i_hbar().mul(&UnitCoeff::bohr().recip()));
        let r = shifted_momentum_eigencheck(3, Dim::Three).unwrap();
        assert!(r.holds());
        assert_eq!(r.eigenvalue, i_hbar().mul(&UnitCoeff::bohr().recip()).scale(&rat(1, 3)));
        let r = shifted_momentum_eigencheck(2, Dim::Two).unwrap();
        assert!(r.holds());
        assert_eq!(r.eigenvalue, i_hbar().mul(&UnitCoeff::bohr().recip()).scale(&rat(2, 3)));
        for n in 1..=10 {
            for d in [Dim::Two, Dim::Three] {
                assert!(shifted_momentum_eigencheck(n, d).unwrap().holds());
            }
        }
    }

    #[test]
    fn adjoint_of_lowering_form() {
        // (p + iħ/x)† = p − iħ/x
        let a = RadialOp::p().add(&RadialOp::x_pow(-1).scale(&i_hbar()));
        let expect = RadialOp::p().sub(&RadialOp::x_pow(-1).scale(&i_hbar()));
        assert_eq!(a.adjoint(), expect);
        // (x p)† = p x = x p − iħ
        let xp = RadialOp::x_pow(1).mul(&RadialOp::p());
        assert_eq!(xp.adjoint(), xp.sub(&RadialOp::scalar(&i_hbar())));
    }

    #[test]
    fn embedding_matches_cartesian_ordering() {
        let e = RadialExpr::p().pow(2) * RadialExpr::x_pow(-1) + RadialExpr::x_pow(2) * RadialExpr::p();
        let via_radial = normal_order(&radial_normal_order(&e).embed()).unwrap();
        let direct = normal_order(&e.embed()).unwrap();
        assert_eq!(via_radial, direct);
    }

    #[test]
    fn state_json_shape() {
        let s = apply_to_reference(&RadialOp::p(), 2, Dim::Three).unwrap();
        let v = s.to_json();
        assert_eq!(v["dim"], 3);
        assert_eq!(v["coeffs"][0][0], -1);
        assert_eq!(v["coeffs"][0][1], "-2/1");
        assert_eq!(v["coeffs"][0][2], 1);
    }
}
