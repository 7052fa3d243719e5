//! Exact noncommutative algebra of Cartesian position and momentum operators.
//!
//! [`normal_order`] turns an [`Expr`] tree into an [`OpExpr`], where every
//! term is a position function to the left of an ordered momentum word. The
//! only rewriting input is `[r_α, p_β] = iħδ_αβ` together with the Leibniz
//! rule and the commutators of `p_α` with `r^{±1}` and `ρ^{±1}`.

pub mod catalog;
pub mod expr;
pub mod momenta;
pub mod position;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binomial, rational_string, Gauss, UnitCoeff, Units};

pub use catalog::{catalog, check_identity, Identity, IdentityReport};
pub use expr::{Expr, Generator};
pub use momenta::{build_planar_momentum, build_spherical_momentum, PlanarComponent, SphericalComponent};
pub use position::{Axis, Cart, PositionFn};

/// Exponents of the ordered product `p_x^a p_y^b p_z^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentumWord(pub [u32; 3]);

impl MomentumWord {
    pub const ONE: MomentumWord = MomentumWord([0, 0, 0]);

    pub fn single(axis: Axis) -> Self {
        MomentumWord(axis.unit())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(self, o: MomentumWord) -> MomentumWord {
        MomentumWord([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl fmt::Display for MomentumWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["p_x", "p_y", "p_z"];
        let mut first = true;
        for (n, &k) in names.iter().zip(&self.0) {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{k}")?;
            }
        }
        Ok(())
    }
}

/// One flattened term `coeff · r_x^a r_y^b r_z^c · r^r_exp · ρ^rho_exp · word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: UnitCoeff,
    pub cart: Cart,
    pub r_exp: i32,
    pub rho_exp: i32,
    pub word: MomentumWord,
}

impl Term {
    fn sort_key(&self) -> (Cart, i32, i32, MomentumWord, Units, u8) {
        (self.cart, self.r_exp, self.rho_exp, self.word, self.coeff.units, self.coeff.i_power)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coeff": rational_string(&self.coeff.rational),
            "i_power": self.coeff.i_power,
            "units": self.coeff.units.exponents_json(),
            "position": {
                "r_x": self.cart[0],
                "r_y": self.cart[1],
                "r_z": self.cart[2],
                "r": self.r_exp,
                "rho": self.rho_exp,
            },
            "momentum": self.word.0,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.cart != [0, 0, 0] || self.r_exp != 0 || self.rho_exp != 0 {
            write!(f, "·")?;
            position::fmt_cart(f, self.cart, self.r_exp, self.rho_exp)?;
        }
        if self.word != MomentumWord::ONE {
            write!(f, "·{}", self.word)?;
        }
        Ok(())
    }
}

/// Normal-ordered operator: position functions left of momentum words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpExpr {
    terms: BTreeMap<(MomentumWord, Units), PositionFn>,
}

impl OpExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(&UnitCoeff::one())
    }

    pub fn scalar(c: &UnitCoeff) -> Self {
        Self::position(PositionFn::constant(c.gauss()), c.units)
    }

    pub fn position(f: PositionFn, units: Units) -> Self {
        let mut out = Self::zero();
        out.add_term(MomentumWord::ONE, units, f);
        out
    }

    pub fn momentum(axis: Axis) -> Self {
        let mut out = Self::zero();
        out.add_term(MomentumWord::single(axis), Units::ONE, PositionFn::one());
        out
    }

    pub fn generator(g: Generator) -> Self {
        let pos = |f| Self::position(f, Units::ONE);
        match g {
            Generator::Rx => pos(PositionFn::coord(Axis::X)),
            Generator::Ry => pos(PositionFn::coord(Axis::Y)),
            Generator::Rz => pos(PositionFn::coord(Axis::Z)),
            Generator::R => pos(PositionFn::r_pow(1)),
            Generator::Rho => pos(PositionFn::rho_pow(1)),
            Generator::InvR => pos(PositionFn::r_pow(-1)),
            Generator::InvRho => pos(PositionFn::rho_pow(-1)),
            Generator::Px => Self::momentum(Axis::X),
            Generator::Py => Self::momentum(Axis::Y),
            Generator::Pz => Self::momentum(Axis::Z),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: MomentumWord, units: Units, f: PositionFn) {
        if f.is_zero() {
            return;
        }
        let key = (word, units);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, o: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        for ((w, u), f) in &o.terms {
            out.add_term(*w, *u, f.clone());
        }
        out
    }

    pub fn sub(&self, o: &OpExpr) -> OpExpr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> OpExpr {
        OpExpr { terms: self.terms.iter().map(|(k, f)| (*k, f.neg())).collect() }
    }

    pub fn scale(&self, c: &UnitCoeff) -> OpExpr {
        let mut out = OpExpr::zero();
        let g = c.gauss();
        for ((w, u), f) in &self.terms {
            let (units, factor) = u.combine(c.units);
            out.add_term(*w, units, f.scale(&(&g * &Gauss::real(factor))));
        }
        out
    }

    /// Operator product `self · o`, normal ordered.
    pub fn mul(&self, o: &OpExpr) -> OpExpr {
        let mut out = OpExpr::zero();
        for ((wb, ub), g) in &o.terms {
            let mut derivs = Derivatives::new(g.clone());
            for ((wa, ua), f) in &self.terms {
                let (units0, factor0) = ua.combine(*ub);
                let [a, b, c] = wa.0;
                for j1 in 0..=a {
                    for j2 in 0..=b {
                        for j3 in 0..=c {
                            let d = derivs.get([j1, j2, j3]);
                            if d.is_zero() {
                                continue;
                            }
                            let binom: BigInt = binomial(a, j1) * binomial(b, j2) * binomial(c, j3);
                            let (units, factor1) = units0.combine(Units { hbar: (j1 + j2 + j3) as i32, ..Units::ONE });
                            let q = BigRational::from_integer(binom) * &factor0 * factor1;
                            let word = MomentumWord([a - j1, b - j2, c - j3]).add(*wb);
                            out.add_term(word, units, f.mul(d).scale(&Gauss::real(q)));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> OpExpr {
        (0..k).fold(OpExpr::one(), |acc, _| acc.mul(self))
    }

    /// `[self, o] = self·o − o·self`
    pub fn commutator(&self, o: &OpExpr) -> OpExpr {
        self.mul(o).sub(&o.mul(self))
    }

    /// `(f, units)` when the operator has no momentum dependence and a single
    /// unit monomial.
    pub fn as_position(&self) -> Option<(&PositionFn, Units)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((w, u), f) = self.terms.iter().next()?;
        (*w == MomentumWord::ONE).then_some((f, *u))
    }

    /// Flattened terms in canonical order: position key, then momentum word.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for ((word, units), f) in &self.terms {
            for (c, cart, r_exp, rho_exp) in f.monomials() {
                for (q, ip) in [(c.re.clone(), 0), (c.im.clone(), 1)] {
                    if q.is_zero() {
                        continue;
                    }
                    out.push(Term { coeff: UnitCoeff::new(q, ip, *units), cart, r_exp, rho_exp, word: *word });
                }
            }
        }
        out.sort_by_key(|a| a.sort_key());
        out
    }

    pub fn term_count(&self) -> usize {
        self.terms().len()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().iter().map(Term::to_json).collect())
    }

    /// Rebuilds a raw expression tree denoting the same operator.
    pub fn to_expr(&self) -> Expr {
        let mut sum = Vec::new();
        for t in self.terms() {
            let mut factors = vec![Expr::Scalar(t.coeff.clone())];
            for (axis, &k) in Axis::ALL.iter().zip(&t.cart) {
                factors.extend(std::iter::repeat_n(Expr::Gen(Generator::coord(*axis)), k as usize));
            }
            let (rg, rk) = if t.r_exp >= 0 { (Generator::R, t.r_exp) } else { (Generator::InvR, -t.r_exp) };
            factors.extend(std::iter::repeat_n(Expr::Gen(rg), rk as usize));
            let (pg, pk) = if t.rho_exp >= 0 { (Generator::Rho, t.rho_exp) } else { (Generator::InvRho, -t.rho_exp) };
            factors.extend(std::iter::repeat_n(Expr::Gen(pg), pk as usize));
            for (axis, &k) in Axis::ALL.iter().zip(&t.word.0) {
                factors.extend(std::iter::repeat_n(Expr::Gen(Generator::momentum(*axis)), k as usize));
            }
            sum.push(Expr::Product(factors));
        }
        Expr::Sum(sum)
    }

    /// Numeric value of the coefficient function of `word` at a point, with
    /// ħ = μ = e = 1.
    pub fn coefficient_at(&self, word: MomentumWord, x: f64, y: f64, z: f64) -> num_complex::Complex64 {
        self.terms
            .iter()
            .filter(|((w, _), _)| *w == word)
            .map(|((_, u), f)| f.to_complex(x, y, z) * UnitCoeff::new(BigRational::one(), 0, *u).to_complex())
            .sum()
    }

    /// The momentum words that occur.
    pub fn words(&self) -> Vec<MomentumWord> {
        let mut w: Vec<_> = self.terms.keys().map(|(w, _)| *w).collect();
        w.dedup();
        w
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Memoized `ad_x^a ad_y^b ad_z^c (g) / ħ^(a+b+c)`.
struct Derivatives {
    cache: HashMap<[u32; 3], PositionFn>,
}

impl Derivatives {
    fn new(g: PositionFn) -> Self {
        let mut cache = HashMap::new();
        cache.insert([0, 0, 0], g);
        Derivatives { cache }
    }

    fn get(&mut self, j: [u32; 3]) -> &PositionFn {
        if !self.cache.contains_key(&j) {
            let axis = (0..3).rev().find(|&k| j[k] > 0).expect("base case is cached");
            let mut prev = j;
            prev[axis] -= 1;
            let d = self.get(prev).momentum_commutator(Axis::ALL[axis]);
            self.cache.insert(j, d);
        }
        &self.cache[&j]
    }
}

/// Normal form of a raw expression tree.
pub fn normal_order(e: &Expr) -> Result<OpExpr> {
    Ok(match e {
        Expr::Gen(g) => OpExpr::generator(*g),
        Expr::Scalar(c) => OpExpr::scalar(c),
        Expr::Sum(v) => {
            let mut acc = OpExpr::zero();
            for t in v {
                acc = acc.add(&normal_order(t)?);
            }
            acc
        }
        Expr::Product(v) => {
            let mut acc = OpExpr::one();
            for t in v {
                acc = acc.mul(&normal_order(t)?);
            }
            acc
        }
        Expr::Pow(a, k) => normal_order(a)?.pow(*k),
        Expr::Inv(a) => {
            let inner = normal_order(a)?;
            let unsupported = || Error::Unsupported(format!("cannot invert {a}"));
            let (f, units) = inner.as_position().ok_or_else(unsupported)?;
            let inv = f.try_inverse().ok_or_else(unsupported)?;
            let (u, factor) = units.inv();
            OpExpr::position(inv.scale(&Gauss::real(factor)), u)
        }
    })
}

/// Normal form of `[a, b]`.
pub fn commutator(a: &OpExpr, b: &OpExpr) -> OpExpr {
    a.commutator(b)
}

/// JSON term list for an expression; rationals as `num/den`.
pub fn to_json(e: &OpExpr) -> Value {
    e.to_json()
}
