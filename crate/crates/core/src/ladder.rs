//! Factorization ladders for the Coulomb problem.
//!
//! For a sector index `s` (`l` in 3D, `m` in 2D) put `κ = l + 1` or
//! `κ = m + ½`. Then
//!
//! ```text
//! B_s  = (2μ)^{-1/2} [p − iħ(1/(κa₀) − κ/x)]
//! H_s  = p²/2μ + ħ²κ(κ−1)/(2μx²) − e²/x = B_s†B_s + E_s,   E_s = −e²/(2κ²a₀)
//! B_s B_s† + E_s = H_{s+1}
//! ```
//!
//! Eigenstates are generated by `B_s†···B_{n−2}†|n, n−1⟩`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{double_factorial, factorial, int, rat, rational_string, Gauss, Surd, UnitCoeff, Units};
use crate::laguerre::laguerre;
use crate::radial::{Dim, Laurent, RadialOp, RadialState};

/// `κ` for a sector: `l + 1` in 3D, `m + ½` in 2D.
pub fn kappa(dim: Dim, sector: i64) -> BigRational {
    match dim {
        Dim::Three => int(sector + 1),
        Dim::Two => rat(2 * sector + 1, 2),
    }
}

fn check_sector(dim: Dim, sector: i64) -> Result<()> {
    if dim == Dim::Three && sector < 0 {
        return Err(Error::OutOfRange(format!("l must be nonnegative, got {sector}")));
    }
    Ok(())
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(())
}

fn e2_over_a0() -> Units {
    Units::charge().combine(Units::charge()).0.combine(Units::bohr_pow(-1)).0
}

/// `E_s = −e²/(2κ²a₀)`.
pub fn sector_energy(dim: Dim, sector: i64) -> UnitCoeff {
    let k = kappa(dim, sector);
    UnitCoeff::new(-(&k * &k * int(2)).recip(), 0, e2_over_a0())
}

/// The energy `E_{n−1}` of the shell with principal quantum number `n`.
pub fn energy(dim: Dim, n: u32) -> Result<UnitCoeff> {
    check_n(n)?;
    Ok(sector_energy(dim, n as i64 - 1))
}

/// Number of sectors sharing the energy `E_{n−1}`: `n` in 3D, `2n − 1` in 2D.
pub fn degeneracy(dim: Dim, n: u32) -> u32 {
    match dim {
        Dim::Three => n,
        Dim::Two => 2 * n - 1,
    }
}

fn i_hbar() -> UnitCoeff {
    UnitCoeff::i().mul(&UnitCoeff::hbar())
}

fn inv_two_mu() -> UnitCoeff {
    UnitCoeff::new(rat(1, 2), 0, Units { mu2: -2, ..Units::ONE })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHamiltonian {
    pub dim: Dim,
    pub sector: i64,
    pub op: RadialOp,
}

/// `p²/2μ + ħ²l(l+1)/(2μx²) − e²/x` in 3D,
/// `p²/2μ + ħ²(m² − ¼)/(2μx²) − e²/x` in 2D.
pub fn hamiltonian(dim: Dim, sector: i64) -> Result<SectorHamiltonian> {
    check_sector(dim, sector)?;
    let centrifugal = match dim {
        Dim::Three => int(sector * (sector + 1)),
        Dim::Two => int(sector * sector) - rat(1, 4),
    };
    let hbar2 = UnitCoeff::hbar().pow(2);
    let e2 = UnitCoeff::charge().pow(2);
    let op = RadialOp::p()
        .pow(2)
        .scale(&inv_two_mu())
        .add(&RadialOp::x_pow(-2).scale(&hbar2.mul(&inv_two_mu()).scale(&centrifugal)))
        .sub(&RadialOp::x_pow(-1).scale(&e2));
    Ok(SectorHamiltonian { dim, sector, op })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOp {
    pub dim: Dim,
    pub sector: i64,
    pub lowering: RadialOp,
    pub raising: RadialOp,
    pub ground_energy: UnitCoeff,
}

pub fn build_ladder(dim: Dim, sector: i64) -> Result<LadderOp> {
    check_sector(dim, sector)?;
    let k = kappa(dim, sector);
    let inv_k_a0 = UnitCoeff::new(k.recip(), 0, Units::bohr_pow(-1));
    let shift = RadialOp::scalar(&inv_k_a0).sub(&RadialOp::x_pow(-1).scale(&UnitCoeff::rational(k)));
    let lowering = RadialOp::p().sub(&shift.scale(&i_hbar())).scale(&UnitCoeff::inv_sqrt_two_mu());
    let raising = lowering.adjoint();
    Ok(LadderOp { dim, sector, lowering, raising, ground_energy: sector_energy(dim, sector) })
}

/// `H_s − (B_s†B_s + energy)`.
pub fn factorization_residual(dim: Dim, sector: i64, energy: &UnitCoeff) -> Result<RadialOp> {
    let b = build_ladder(dim, sector)?;
    let h = hamiltonian(dim, sector)?;
    Ok(h.op.sub(&b.raising.mul(&b.lowering).add(&RadialOp::scalar(energy))))
}

/// `H_s − (B_s†B_s + E_s)`; zero when the factorization holds.
pub fn check_factorization(dim: Dim, sector: i64) -> Result<RadialOp> {
    factorization_residual(dim, sector, &sector_energy(dim, sector))
}

#[derive(Clone, Debug)]
pub struct IntertwiningReport {
    /// `H_s B_s† − B_s† H_{s+1}`
    pub intertwining: RadialOp,
    /// `B_s B_s† − (H_{s+1} − E_s)`
    pub wrong_order: RadialOp,
}

impl IntertwiningReport {
    pub fn holds(&self) -> bool {
        self.intertwining.is_zero() && self.wrong_order.is_zero()
    }
}

pub fn check_intertwining(dim: Dim, sector: i64) -> Result<IntertwiningReport> {
    let b = build_ladder(dim, sector)?;
    let h = hamiltonian(dim, sector)?.op;
    let h_next = hamiltonian(dim, sector + 1)?.op;
    let intertwining = h.mul(&b.raising).sub(&b.raising.mul(&h_next));
    let wrong_order = b.lowering.mul(&b.raising).sub(&h_next.sub(&RadialOp::scalar(&b.ground_energy)));
    Ok(IntertwiningReport { intertwining, wrong_order })
}

/// `B_from†···B_{n−2}†|n, n−1⟩`, unnormalized. `from` may be negative in 2D.
pub fn chain_state(dim: Dim, n: u32, from: i64) -> Result<RadialState> {
    check_n(n)?;
    let mut state = RadialState::reference(dim, n);
    for s in (from..=(n as i64 - 2)).rev() {
        state = state.apply(&build_ladder(dim, s)?.raising);
    }
    Ok(state)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    pub dim: Dim,
    pub n: u32,
    pub sector: u32,
    /// `b_j` for `j = 0..=n−sector−1`.
    pub b_coeffs: Vec<BigRational>,
    /// `(2iħ/(√(2μ)νa₀))^{n−sector−1}`
    pub scale: UnitCoeff,
    pub state: RadialState,
}

impl ChainResult {
    /// `n − sector − 1`
    pub fn degree(&self) -> u32 {
        self.n - self.sector - 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim.as_int(),
            "n": self.n,
            "sector": self.sector,
            "b_coeffs": self.b_coeffs.iter().map(rational_string).collect::<Vec<_>>(),
            "scale": self.scale.to_json(),
            "state": self.state.to_json(),
        })
    }
}

fn chain_scale(dim: Dim, n: u32, degree: u32) -> UnitCoeff {
    let nu = dim.nu(n);
    let base =
        UnitCoeff::new(int(2) / nu, 1, Units::hbar().combine(Units::bohr_pow(-1)).0).mul(&UnitCoeff::inv_sqrt_two_mu());
    base.pow(degree as i32)
}

/// `(2/(νa₀))^k`
fn length_scale_pow(dim: Dim, n: u32, k: i32) -> UnitCoeff {
    UnitCoeff::new(int(2) / dim.nu(n), 0, Units::bohr_pow(-1)).pow(k)
}

fn validate_chain_range(n: u32, sector: i64) -> Result<()> {
    check_n(n)?;
    if sector < 0 || sector > n as i64 - 1 {
        return Err(Error::OutOfRange(format!("sector {sector} outside 0..={}", n - 1)));
    }
    Ok(())
}

/// Reads off `b_j` from
/// `state = scale · Σ_j b_j (2/(νa₀))^{j−N} x^{j−N}`.
fn extract_b(dim: Dim, n: u32, degree: u32, scale: &UnitCoeff, poly: &Laurent) -> Result<Vec<BigRational>> {
    let nn = degree as i32;
    for k in poly.exponents() {
        if k < -nn || k > 0 {
            return Err(Error::ChainShape(format!("unexpected power x^{k}")));
        }
    }
    let mut b = Vec::new();
    for j in 0..=nn {
        let k = j - nn;
        let coeff = match poly.coefficient(k) {
            Some(c) => c,
            None if poly.exponents().contains(&k) => {
                return Err(Error::ChainShape(format!("mixed units at x^{k}")));
            }
            None => (Gauss::zero(), Units::ONE),
        };
        if coeff.0.is_zero() {
            b.push(BigRational::zero());
            continue;
        }
        let Some(c) = UnitCoeff::from_gauss(&coeff.0, coeff.1) else {
            return Err(Error::ChainShape(format!("coefficient of x^{k} is not a monomial")));
        };
        let q = c.mul(&scale.mul(&length_scale_pow(dim, n, k)).recip());
        if !q.units.is_one() || q.i_power != 0 {
            return Err(Error::ChainShape(format!("coefficient of x^{k} is not a pure rational multiple")));
        }
        b.push(q.rational);
    }
    Ok(b)
}

pub fn run_chain(dim: Dim, n: u32, sector: i64) -> Result<ChainResult> {
    validate_chain_range(n, sector)?;
    let state = chain_state(dim, n, sector)?;
    let degree = n - sector as u32 - 1;
    let scale = chain_scale(dim, n, degree);
    let b_coeffs = extract_b(dim, n, degree, &scale, &state.poly)?;
    Ok(ChainResult { dim, n, sector: sector as u32, b_coeffs, scale, state })
}

/// `b_{j+1}/b_j` predicted by the ratio law.
pub fn predicted_ratio(dim: Dim, n: u32, sector: u32, j: u32) -> BigRational {
    let (j, n, s) = (j as i64, n as i64, sector as i64);
    let num = j - n + s + 1;
    let den = match dim {
        Dim::Three => (j + 1) * (j + 2 * s + 2),
        Dim::Two => (j + 1) * (j + 2 * s + 1),
    };
    rat(num, den)
}

#[derive(Clone, Debug)]
pub struct RatioReport {
    pub checked: usize,
    /// `(j, observed, predicted)` for every failing ratio.
    pub mismatches: Vec<(u32, BigRational, BigRational)>,
}

impl RatioReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_coefficient_ratios(chain: &ChainResult) -> RatioReport {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for j in 0..chain.degree() {
        checked += 1;
        let predicted = predicted_ratio(chain.dim, chain.n, chain.sector, j);
        let (bj, bj1) = (&chain.b_coeffs[j as usize], &chain.b_coeffs[j as usize + 1]);
        if bj.is_zero() {
            mismatches.push((j, BigRational::zero(), predicted));
            continue;
        }
        let observed = bj1 / bj;
        if observed != predicted {
            mismatches.push((j, observed, predicted));
        }
    }
    RatioReport { checked, mismatches }
}

#[derive(Clone, Debug)]
pub struct NormConstant {
    pub dim: Dim,
    pub n: u32,
    pub sector: i64,
    /// `Π_k (E_{n−1} − E_k)` over the chain's sectors.
    pub product: UnitCoeff,
    /// `1/√product`
    pub product_form: Surd,
    /// Factorial closed form.
    pub closed_form: Surd,
}

impl NormConstant {
    pub fn agree(&self) -> bool {
        self.product_form == self.closed_form
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim.as_int(),
            "n": self.n,
            "sector": self.sector,
            "product": self.product.to_json(),
            "product_form": self.product_form.to_json(),
            "closed_form": self.closed_form.to_json(),
            "agree": self.agree(),
        })
    }
}

/// `Π_{k=from}^{n−2} (E_{n−1} − E_k)`
fn energy_gap_product(dim: Dim, n: u32, from: i64, to: i64) -> UnitCoeff {
    let top = sector_energy(dim, n as i64 - 1);
    (from..=to).fold(UnitCoeff::one(), |acc, k| {
        let gap = top.rational.clone() - sector_energy(dim, k).rational;
        acc.mul(&UnitCoeff::new(gap, 0, e2_over_a0()))
    })
}

fn inverse_sqrt(c: &UnitCoeff) -> Surd {
    assert!(c.i_power == 0 && c.rational.is_positive(), "energy gaps are positive reals");
    let units = c.units.sqrt().expect("energy products have even unit exponents");
    Surd::sqrt(&c.rational, units).recip()
}

fn closed_norm_squared(dim: Dim, n: u32, s: u32) -> BigRational {
    let big = |b: BigInt| BigRational::from_integer(b);
    let nn = n - s - 1;
    match dim {
        Dim::Three => {
            let pre = int(2 * (n as i64) * (n as i64)).pow(nn as i32);
            pre * big(factorial(n + s) * factorial(n - 1) * factorial(n - 1))
                / big(factorial(2 * n - 1) * factorial(nn) * factorial(s) * factorial(s))
        }
        Dim::Two => {
            let nu = dim.nu(n);
            let pre = (&nu * &nu / int(2)).pow(nn as i32);
            let df_n = double_factorial(2 * n as i64 - 3);
            let df_m = double_factorial(2 * s as i64 - 1);
            pre * big(factorial(n + s - 1) * &df_n * &df_n) / big(factorial(2 * n - 2) * factorial(nn) * &df_m * &df_m)
        }
    }
}

pub fn compute_norm(dim: Dim, n: u32, sector: i64) -> Result<NormConstant> {
    validate_chain_range(n, sector)?;
    let product = energy_gap_product(dim, n, sector, n as i64 - 2);
    let product_form = inverse_sqrt(&product);
    let nn = n as i32 - sector as i32 - 1;
    // (a₀/e²)^{N/2}
    let units = Units::bohr_pow(nn).combine(Units { e: -2 * nn, ..Units::ONE }).0.sqrt().expect("even exponents");
    let closed_form = Surd::sqrt(&closed_norm_squared(dim, n, sector as u32), units);
    Ok(NormConstant { dim, n, sector, product, product_form, closed_form })
}

#[derive(Clone, Debug)]
pub struct LaguerreMatch {
    pub alpha: u32,
    pub degree: u32,
    /// `C′` with `b_j = C′·a_j`.
    pub proportionality: BigRational,
    /// Closed form for `C′`.
    pub expected_proportionality: BigRational,
    pub proportional: bool,
    pub top_coefficient: BigRational,
    /// Closed form for `b_{n−sector−1}`.
    pub expected_top: BigRational,
}

impl LaguerreMatch {
    pub fn holds(&self) -> bool {
        self.proportional
            && self.proportionality == self.expected_proportionality
            && self.top_coefficient == self.expected_top
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha,
            "degree": self.degree,
            "proportionality": rational_string(&self.proportionality),
            "expected_proportionality": rational_string(&self.expected_proportionality),
            "proportional": self.proportional,
            "top_coefficient": rational_string(&self.top_coefficient),
            "expected_top": rational_string(&self.expected_top),
            "holds": self.holds(),
        })
    }
}

/// Closed forms for `(C′, b_top)`.
pub fn laguerre_closed_forms(dim: Dim, n: u32, s: u32) -> (BigRational, BigRational) {
    let big = |b: BigInt| BigRational::from_integer(b);
    let nn = n - s - 1;
    let sign = if nn.is_multiple_of(2) { int(1) } else { int(-1) };
    match dim {
        Dim::Three => {
            let top = rat(1, 2).pow(nn as i32) * big(factorial(s) * factorial(2 * n - 1))
                / big(factorial(n - 1) * factorial(n + s));
            let c = &sign * &top * big(factorial(nn));
            (c, top)
        }
        Dim::Two => {
            let top = big(factorial(2 * n - 2) * double_factorial(2 * s as i64 - 1))
                / big(factorial(n + s - 1) * double_factorial(2 * n as i64 - 3));
            let c = &sign * &top * big(factorial(nn));
            (c, top)
        }
    }
}

pub fn laguerre_identify(chain: &ChainResult) -> Result<LaguerreMatch> {
    let alpha = match chain.dim {
        Dim::Three => 2 * chain.sector + 1,
        Dim::Two => 2 * chain.sector,
    };
    let degree = chain.degree();
    let l = laguerre(alpha as i64, degree as i64)?;
    let c = &chain.b_coeffs[0] / &l.coeffs[0];
    let proportional = chain.b_coeffs.iter().zip(&l.coeffs).all(|(b, a)| *b == &c * a);
    let (expected_proportionality, expected_top) = laguerre_closed_forms(chain.dim, chain.n, chain.sector);
    Ok(LaguerreMatch {
        alpha,
        degree,
        proportionality: c,
        expected_proportionality,
        proportional,
        top_coefficient: chain.b_coeffs[degree as usize].clone(),
        expected_top,
    })
}

#[derive(Clone, Debug)]
pub struct NegativeMReport {
    pub n: u32,
    pub m_abs: u32,
    /// `B_{−|m|}†···B_{|m|−1}† − Π_{k<|m|} (H_{|m|} − E_k)`
    pub operator_residual: RadialOp,
    /// `chain(−|m|) − Π_{k<|m|} (E_{n−1} − E_k) · chain(|m|)`
    pub state_residual: Laurent,
    /// Normalized states agree: `C_{n,−|m|} · Π = C_{n,|m|}`.
    pub norm_equal: bool,
}

impl NegativeMReport {
    pub fn holds(&self) -> bool {
        self.operator_residual.is_zero() && self.state_residual.is_zero() && self.norm_equal
    }
}

/// Checks that the 2D state with sector `−|m|` equals the one with `|m|`.
pub fn check_negative_m(n: u32, m_abs: u32) -> Result<NegativeMReport> {
    validate_chain_range(n, m_abs as i64)?;
    let m = m_abs as i64;
    let dim = Dim::Two;
    let mut string = RadialOp::one();
    for s in -m..m {
        string = string.mul(&build_ladder(dim, s)?.raising);
    }
    let h = hamiltonian(dim, m)?.op;
    let mut product = RadialOp::one();
    for k in 0..m {
        product = product.mul(&h.sub(&RadialOp::scalar(&sector_energy(dim, k))));
    }
    let operator_residual = string.sub(&product);

    let negative = chain_state(dim, n, -m)?;
    let positive = chain_state(dim, n, m)?;
    let gaps = energy_gap_product(dim, n, 0, m - 1);
    let state_residual = negative.poly.sub(&positive.poly.scale(&gaps));

    let c_pos = compute_norm(dim, n, m)?.product_form;
    let c_neg = inverse_sqrt(&energy_gap_product(dim, n, -m, n as i64 - 2));
    let norm_equal = c_neg.mul(&Surd::rational(gaps.rational.clone(), gaps.units)) == c_pos;
    Ok(NegativeMReport { n, m_abs, operator_residual, state_residual, norm_equal })
}

/// `H_s ψ − energy·ψ` for the chain state `ψ`.
pub fn eigenstate_residual(dim: Dim, n: u32, sector: i64, energy: &UnitCoeff) -> Result<Laurent> {
    validate_chain_range(n, sector)?;
    let state = chain_state(dim, n, sector)?;
    let h = hamiltonian(dim, sector)?.op;
    Ok(state.apply(&h).poly.sub(&state.poly.scale(energy)))
}

/// `H_s ψ − E_{n−1} ψ`; zero for every valid `(n, sector)`.
pub fn check_eigenstate(dim: Dim, n: u32, sector: i64) -> Result<Laurent> {
    eigenstate_residual(dim, n, sector, &energy(dim, n)?)
}

/// CSV table of `n, sector, E, C, b_coeffs` for `n = 1..=n_max`.
pub fn summary_csv(dim: Dim, n_max: u32) -> Result<String> {
    let mut out = String::from("n,sector,energy_e2_per_a0,norm,norm_squared,b_coeffs\n");
    for n in 1..=n_max {
        for s in 0..n as i64 {
            let chain = run_chain(dim, n, s)?;
            let norm = compute_norm(dim, n, s)?;
            let (sq, _) = norm.product_form.square();
            let b: Vec<String> = chain.b_coeffs.iter().map(rational_string).collect();
            writeln!(
                out,
                "{n},{s},{},{},{},{}",
                rational_string(&sector_energy(dim, n as i64 - 1).rational),
                norm.product_form,
                rational_string(&sq),
                b.join(";")
            )
            .expect("writing to a String");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2_a0(q: BigRational) -> UnitCoeff {
        UnitCoeff::new(q, 0, e2_over_a0())
    }

    #[test]
    fn lowering_operator_3d_ground_sector() {
        let b = build_ladder(Dim::Three, 0).unwrap();
        // (1/√(2μ))[p − iħ/a₀ + iħ/x]
        let expect = RadialOp::p()
            .sub(&RadialOp::scalar(&i_hbar().mul(&UnitCoeff::bohr().recip())))
            .add(&RadialOp::x_pow(-1).scale(&i_hbar()))
            .scale(&UnitCoeff::inv_sqrt_two_mu());
        assert_eq!(b.lowering, expect);
    }

    #[test]
    fn energies() {
        assert_eq!(build_ladder(Dim::Two, 0).unwrap().ground_energy, e2_a0(int(-2)));
        assert_eq!(energy(Dim::Three, 1).unwrap(), e2_a0(rat(-1, 2)));
        // −e²/(2a₀) = −μe⁴/(2ħ²)
        assert_eq!(energy(Dim::Three, 1).unwrap().units, Units { hbar: -2, mu2: 2, e: 4, root2: 0 });
        assert_eq!(energy(Dim::Three, 2).unwrap(), e2_a0(rat(-1, 8)));
        assert_eq!(energy(Dim::Two, 1).unwrap(), e2_a0(int(-2)));
        for d in [Dim::Two, Dim::Three] {
            for s in 0..10 {
                assert!(sector_energy(d, s).rational < sector_energy(d, s + 1).rational);
                assert!(sector_energy(d, s + 1).rational.is_negative());
            }
        }
    }

    #[test]
    fn negative_sector_is_raising_of_mirror() {
        for m in 1..6 {
            let neg = build_ladder(Dim::Two, -m).unwrap();
            let pos = build_ladder(Dim::Two, m - 1).unwrap();
            assert_eq!(neg.lowering, pos.raising);
        }
        assert!(build_ladder(Dim::Three, -1).is_err());
    }

    #[test]
    fn factorization_and_intertwining() {
        for d in [Dim::Two, Dim::Three] {
            for s in 0..=6 {
                assert!(check_factorization(d, s).unwrap().is_zero());
                assert!(check_intertwining(d, s).unwrap().holds());
            }
        }
        let shift = e2_a0(rat(1, 100));
        let perturbed = sector_energy(Dim::Three, 2).mul(&UnitCoeff::one());
        let perturbed = UnitCoeff::new(perturbed.rational + &shift.rational, 0, perturbed.units);
        let r = factorization_residual(Dim::Three, 2, &perturbed).unwrap();
        assert_eq!(r, RadialOp::scalar(&shift.neg()));
    }

    #[test]
    fn wrong_order_product() {
        let b = build_ladder(Dim::Three, 1).unwrap();
        let h2 = hamiltonian(Dim::Three, 2).unwrap().op;
        assert_eq!(b.lowering.mul(&b.raising), h2.sub(&RadialOp::scalar(&sector_energy(Dim::Three, 1))));
    }

    #[test]
    fn chain_examples() {
        let c = run_chain(Dim::Three, 2, 0).unwrap();
        assert_eq!(c.b_coeffs, vec![int(-3), rat(3, 2)]);
        let c = run_chain(Dim::Three, 5, 4).unwrap();
        assert_eq!(c.b_coeffs, vec![int(1)]);
        assert_eq!(c.scale, UnitCoeff::one());
        let c = run_chain(Dim::Two, 2, 0).unwrap();
        assert_eq!(c.b_coeffs, vec![int(-2), int(2)]);
        assert!(run_chain(Dim::Three, 3, 3).is_err());
        assert!(run_chain(Dim::Two, 3, -1).is_err());
    }

    #[test]
    fn base_case_coefficients() {
        for n in 2..=8u32 {
            let c = run_chain(Dim::Three, n, n as i64 - 2).unwrap();
            assert_eq!(c.b_coeffs[0], int(1 - 2 * n as i64));
            assert_eq!(&c.b_coeffs[1] / &c.b_coeffs[0], rat(-1, 2 * (n as i64 - 1)));
            let c = run_chain(Dim::Two, n, n as i64 - 2).unwrap();
            assert_eq!(c.b_coeffs[0], int(-(2 * n as i64 - 2)));
            assert_eq!(&c.b_coeffs[1] / &c.b_coeffs[0], rat(-1, 2 * n as i64 - 3));
        }
    }

    #[test]
    fn ratios_for_small_chain() {
        let c = run_chain(Dim::Three, 2, 0).unwrap();
        let r = check_coefficient_ratios(&c);
        assert!(r.holds());
        assert_eq!(predicted_ratio(Dim::Three, 2, 0, 0), rat(-1, 2));
    }

    #[test]
    fn norm_examples() {
        let c = compute_norm(Dim::Three, 2, 0).unwrap();
        assert_eq!(c.product, e2_a0(rat(3, 8)));
        // √(8a₀/(3e²))
        let a0_over_e2 = Units::bohr().combine(Units { e: -2, ..Units::ONE }).0;
        assert_eq!(c.product_form.square(), (rat(8, 3), a0_over_e2));
        assert!(c.agree());
        assert_eq!(compute_norm(Dim::Three, 4, 3).unwrap().product_form, Surd::one());
        let c = compute_norm(Dim::Two, 1, 0).unwrap();
        assert_eq!(c.product_form, Surd::one());
        assert_eq!(c.closed_form, Surd::one());
    }

    #[test]
    fn laguerre_match_small() {
        let c = run_chain(Dim::Three, 2, 0).unwrap();
        let m = laguerre_identify(&c).unwrap();
        assert_eq!(m.alpha, 1);
        assert_eq!(m.proportionality, rat(-3, 2));
        assert_eq!(m.top_coefficient, rat(3, 2));
        assert!(m.holds());
        let c = run_chain(Dim::Three, 3, 2).unwrap();
        let m = laguerre_identify(&c).unwrap();
        assert_eq!((m.degree, m.proportionality.clone()), (0, int(1)));
        assert!(m.holds());
    }

    #[test]
    fn negative_m_small() {
        assert!(check_negative_m(2, 1).unwrap().holds());
        assert!(check_negative_m(3, 0).unwrap().holds());
        assert!(check_negative_m(3, 2).unwrap().holds());
    }

    #[test]
    fn eigenstates() {
        assert!(check_eigenstate(Dim::Three, 3, 1).unwrap().is_zero());
        assert!(check_eigenstate(Dim::Two, 3, 0).unwrap().is_zero());
        let wrong = energy(Dim::Three, 2).unwrap();
        assert!(!eigenstate_residual(Dim::Three, 3, 1, &wrong).unwrap().is_zero());
    }

    #[test]
    fn csv_summary() {
        let csv = summary_csv(Dim::Three, 2).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("2,0,-1/8,"));
        assert!(lines[2].ends_with("-3/1;3/2"));
    }

    #[test]
    fn sweep_to_n6() {
        for d in [Dim::Two, Dim::Three] {
            for n in 1..=6u32 {
                let e = energy(d, n).unwrap();
                for s in 0..n as i64 {
                    let chain = run_chain(d, n, s).unwrap();
                    assert!(check_coefficient_ratios(&chain).holds(), "{d} n={n} s={s}");
                    assert!(compute_norm(d, n, s).unwrap().agree(), "{d} n={n} s={s}");
                    assert!(laguerre_identify(&chain).unwrap().holds(), "{d} n={n} s={s}");
                    assert!(eigenstate_residual(d, n, s, &e).unwrap().is_zero());
                }
                if d == Dim::Two {
                    for m in 1..n {
                        assert!(check_negative_m(n, m).unwrap().holds(), "n={n} m={m}");
                    }
                }
            }
        }
    }
}
