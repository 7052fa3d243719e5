//! Raw, unordered operator expression trees.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::exact::{int, rat, UnitCoeff};

use super::position::Axis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Rx,
    Ry,
    Rz,
    R,
    Rho,
    InvR,
    InvRho,
    Px,
    Py,
    Pz,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::Rx,
        Generator::Ry,
        Generator::Rz,
        Generator::R,
        Generator::Rho,
        Generator::InvR,
        Generator::InvRho,
        Generator::Px,
        Generator::Py,
        Generator::Pz,
    ];

    pub fn coord(axis: Axis) -> Generator {
        [Generator::Rx, Generator::Ry, Generator::Rz][axis.index()]
    }

    pub fn momentum(axis: Axis) -> Generator {
        [Generator::Px, Generator::Py, Generator::Pz][axis.index()]
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Rx => "r_x",
            Generator::Ry => "r_y",
            Generator::Rz => "r_z",
            Generator::R => "r",
            Generator::Rho => "ρ",
            Generator::InvR => "r⁻¹",
            Generator::InvRho => "ρ⁻¹",
            Generator::Px => "p_x",
            Generator::Py => "p_y",
            Generator::Pz => "p_z",
        }
    }
}

/// An operator expression before normal ordering. Products keep their order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(Generator),
    Scalar(UnitCoeff),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Inverse; only defined when the argument is `c·r^a·ρ^b`.
    Inv(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn gen(g: Generator) -> Expr {
        Expr::Gen(g)
    }

    pub fn scalar(c: UnitCoeff) -> Expr {
        Expr::Scalar(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Scalar(UnitCoeff::rational(int(n)))
    }

    pub fn rational(q: BigRational) -> Expr {
        Expr::Scalar(UnitCoeff::rational(q))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::rational(rat(n, d))
    }

    pub fn i() -> Expr {
        Expr::Scalar(UnitCoeff::i())
    }

    pub fn hbar() -> Expr {
        Expr::Scalar(UnitCoeff::hbar())
    }

    /// `iħ`
    pub fn i_hbar() -> Expr {
        Expr::Scalar(UnitCoeff::i().mul(&UnitCoeff::hbar()))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn inv(self) -> Expr {
        Expr::Inv(Box::new(self))
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    /// Operator product in the given order.
    pub fn product(factors: Vec<Expr>) -> Expr {
        Expr::Product(factors)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum(terms)
    }

    /// `ab − ba`
    pub fn commutator(a: Expr, b: Expr) -> Expr {
        a.clone() * b.clone() - b * a
    }

    /// Tree depth, counting leaves as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Gen(_) | Expr::Scalar(_) => 1,
            Expr::Sum(v) | Expr::Product(v) => 1 + v.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Inv(a) | Expr::Pow(a, _) => 1 + a.depth(),
        }
    }

    /// Replaces every scalar coefficient by its complex conjugate and reverses
    /// every product. With self-adjoint generators this is the adjoint.
    pub fn adjoint(&self) -> Expr {
        match self {
            Expr::Gen(g) => Expr::Gen(*g),
            Expr::Scalar(c) => Expr::Scalar(c.conj()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(Expr::adjoint).collect()),
            Expr::Product(v) => Expr::Product(v.iter().rev().map(Expr::adjoint).collect()),
            Expr::Inv(a) => Expr::Inv(Box::new(a.adjoint())),
            Expr::Pow(a, k) => Expr::Pow(Box::new(a.adjoint()), *k),
        }
    }
}

pub fn rx() -> Expr {
    Expr::Gen(Generator::Rx)
}
pub fn ry() -> Expr {
    Expr::Gen(Generator::Ry)
}
pub fn rz() -> Expr {
    Expr::Gen(Generator::Rz)
}
pub fn r() -> Expr {
    Expr::Gen(Generator::R)
}
pub fn rho() -> Expr {
    Expr::Gen(Generator::Rho)
}
pub fn inv_r() -> Expr {
    Expr::Gen(Generator::InvR)
}
pub fn inv_rho() -> Expr {
    Expr::Gen(Generator::InvRho)
}
pub fn px() -> Expr {
    Expr::Gen(Generator::Px)
}
pub fn py() -> Expr {
    Expr::Gen(Generator::Py)
}
pub fn pz() -> Expr {
    Expr::Gen(Generator::Pz)
}

/// cosθ = r_z / r
pub fn cos_theta() -> Expr {
    rz() * inv_r()
}
/// sinθ = ρ / r
pub fn sin_theta() -> Expr {
    rho() * inv_r()
}
/// cosφ = r_x / ρ
pub fn cos_phi() -> Expr {
    rx() * inv_rho()
}
/// sinφ = r_y / ρ
pub fn sin_phi() -> Expr {
    ry() * inv_rho()
}
/// cotθ = r_z / ρ
pub fn cot_theta() -> Expr {
    rz() * inv_rho()
}

fn flatten(kind_sum: bool, a: Expr, b: Expr) -> Vec<Expr> {
    let mut out = Vec::new();
    for e in [a, b] {
        match (kind_sum, e) {
            (true, Expr::Sum(v)) | (false, Expr::Product(v)) => out.extend(v),
            (_, e) => out.push(e),
        }
    }
    out
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Sum(flatten(true, self, o))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        self + (-o)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::int(-1) * self
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Product(flatten(false, self, o))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{}", g.name()),
            Expr::Scalar(c) => write!(f, "({c})"),
            Expr::Sum(v) => {
                write!(f, "(")?;
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            Expr::Product(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Inv(a) => write!(f, "({a})⁻¹"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}
