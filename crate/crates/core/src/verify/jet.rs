//! Position-representation oracle: operators act on truncated Taylor jets
//! of test functions, with `p_α = −iħ ∂_α` and ħ = 1.
//!
//! Raw expression trees are applied right to left without any normal
//! ordering, so agreement with the exact engine is an independent check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::opcore::{Expr, Generator, Identity};

use super::ResidualReport;

/// Multi-indices of total degree at most `order` in three variables.
#[derive(Debug)]
struct JetSpace {
    order: usize,
    index: Vec<[usize; 3]>,
    lookup: Vec<usize>,
}

impl JetSpace {
    fn new(order: usize) -> Self {
        let side = order + 1;
        let mut index = Vec::new();
        let mut lookup = vec![usize::MAX; side * side * side];
        for d in 0..=order {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    let c = d - a - b;
                    lookup[(a * side + b) * side + c] = index.len();
                    index.push([a, b, c]);
                }
            }
        }
        JetSpace { order, index, lookup }
    }

    fn at(&self, m: [usize; 3]) -> Option<usize> {
        if m.iter().sum::<usize>() > self.order {
            return None;
        }
        let side = self.order + 1;
        Some(self.lookup[(m[0] * side + m[1]) * side + m[2]])
    }

    fn degree(&self, i: usize) -> usize {
        self.index[i].iter().sum()
    }
}

/// Taylor coefficients `∂^α f / α!` about a point, trusted up to `valid`.
#[derive(Clone, Debug)]
struct Jet {
    valid: usize,
    c: Vec<Complex64>,
}

struct Ctx<'a> {
    space: &'a JetSpace,
    point: [f64; 3],
}

impl Ctx<'_> {
    fn zero(&self) -> Jet {
        Jet { valid: self.space.order, c: vec![Complex64::new(0.0, 0.0); self.space.index.len()] }
    }

    fn constant(&self, v: Complex64) -> Jet {
        let mut j = self.zero();
        j.c[0] = v;
        j
    }

    fn coordinate(&self, axis: usize) -> Jet {
        let mut j = self.constant(self.point[axis].into());
        if self.space.order >= 1 {
            let mut m = [0; 3];
            m[axis] = 1;
            j.c[self.space.at(m).expect("order ≥ 1")] = Complex64::new(1.0, 0.0);
        }
        j
    }

    fn add(&self, a: &Jet, b: &Jet) -> Jet {
        Jet { valid: a.valid.min(b.valid), c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    fn scale(&self, a: &Jet, s: Complex64) -> Jet {
        Jet { valid: a.valid, c: a.c.iter().map(|x| x * s).collect() }
    }

    fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        let valid = a.valid.min(b.valid);
        let mut out = self.zero();
        out.valid = valid;
        for (i, x) in a.c.iter().enumerate() {
            let di = self.space.degree(i);
            if di > valid || *x == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mi = self.space.index[i];
            for (j, y) in b.c.iter().enumerate() {
                if di + self.space.degree(j) > valid {
                    continue;
                }
                let mj = self.space.index[j];
                let k = self.space.at([mi[0] + mj[0], mi[1] + mj[1], mi[2] + mj[2]]).expect("degree checked");
                out.c[k] += x * y;
            }
        }
        out
    }

    fn derivative(&self, a: &Jet, axis: usize) -> Result<Jet> {
        if a.valid == 0 {
            return Err(Error::Invalid("jet order exhausted".into()));
        }
        let mut out = self.zero();
        out.valid = a.valid - 1;
        for (i, m) in self.space.index.iter().enumerate() {
            let mut up = *m;
            up[axis] += 1;
            if let Some(k) = self.space.at(up) {
                out.c[i] = a.c[k] * up[axis] as f64;
            }
        }
        Ok(out)
    }

    /// `g(f)` from the derivatives `g^{(k)}(f₀)` for `k = 0..=order`.
    fn compose(&self, f: &Jet, derivs: &[Complex64]) -> Jet {
        let mut h = f.clone();
        h.c[0] = Complex64::new(0.0, 0.0);
        let mut out = self.constant(derivs[0]);
        out.valid = f.valid;
        let mut power = self.constant(Complex64::new(1.0, 0.0));
        let mut fact = 1.0;
        for (k, d) in derivs.iter().enumerate().skip(1) {
            power = self.mul(&power, &h);
            fact *= k as f64;
            out = self.add(&out, &self.scale(&power, d / fact));
        }
        out
    }

    fn powf(&self, f: &Jet, s: f64) -> Jet {
        let f0 = f.c[0];
        let mut derivs = Vec::new();
        let mut coeff = 1.0;
        for k in 0..=self.space.order {
            derivs.push(f0.powf(s - k as f64) * coeff);
            coeff *= s - k as f64;
        }
        self.compose(f, &derivs)
    }

    fn exp(&self, f: &Jet) -> Jet {
        let e = f.c[0].exp();
        self.compose(f, &vec![e; self.space.order + 1])
    }

    fn position(&self, g: Generator) -> Jet {
        let sq = |a: usize| self.mul(&self.coordinate(a), &self.coordinate(a));
        let rho2 = self.add(&sq(0), &sq(1));
        let r2 = self.add(&rho2, &sq(2));
        match g {
            Generator::Rx => self.coordinate(0),
            Generator::Ry => self.coordinate(1),
            Generator::Rz => self.coordinate(2),
            Generator::R => self.powf(&r2, 0.5),
            Generator::Rho => self.powf(&rho2, 0.5),
            Generator::InvR => self.powf(&r2, -0.5),
            Generator::InvRho => self.powf(&rho2, -0.5),
            _ => unreachable!("momentum generator"),
        }
    }

    fn apply(&self, e: &Expr, f: &Jet) -> Result<Jet> {
        Ok(match e {
            Expr::Gen(g) => match g {
                Generator::Px | Generator::Py | Generator::Pz => {
                    let axis =
                        [Generator::Px, Generator::Py, Generator::Pz].iter().position(|x| x == g).expect("momentum");
                    self.scale(&self.derivative(f, axis)?, Complex64::new(0.0, -1.0))
                }
                _ => self.mul(&self.position(*g), f),
            },
            Expr::Scalar(c) => self.scale(f, c.to_complex()),
            Expr::Sum(v) => {
                let mut acc = self.zero();
                for t in v {
                    acc = self.add(&acc, &self.apply(t, f)?);
                }
                acc
            }
            Expr::Product(v) => {
                let mut acc = f.clone();
                for t in v.iter().rev() {
                    acc = self.apply(t, &acc)?;
                }
                acc
            }
            Expr::Inv(inner) => {
                if momentum_degree(inner) > 0 {
                    return Err(Error::Unsupported(format!("inverse of momentum-dependent {inner}")));
                }
                let g = self.apply(inner, &self.constant(Complex64::new(1.0, 0.0)))?;
                self.mul(&self.powf(&g, -1.0), f)
            }
            Expr::Pow(inner, k) => {
                let mut acc = f.clone();
                for _ in 0..*k {
                    acc = self.apply(inner, &acc)?;
                }
                acc
            }
        })
    }
}

/// Upper bound on the number of derivatives `e` takes.
pub fn momentum_degree(e: &Expr) -> usize {
    match e {
        Expr::Gen(g) => usize::from(matches!(g, Generator::Px | Generator::Py | Generator::Pz)),
        Expr::Scalar(_) => 0,
        Expr::Sum(v) => v.iter().map(momentum_degree).max().unwrap_or(0),
        Expr::Product(v) => v.iter().map(momentum_degree).sum(),
        Expr::Inv(inner) => momentum_degree(inner),
        Expr::Pow(inner, k) => momentum_degree(inner) * *k as usize,
    }
}

/// A random smooth test function `exp(q(x))` with `q` quadratic.
#[derive(Clone, Debug)]
pub struct TestFunction {
    pub linear: [f64; 3],
    pub quadratic: [[f64; 3]; 3],
}

impl TestFunction {
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut linear = [0.0; 3];
        let mut quadratic = [[0.0; 3]; 3];
        for (i, (l, row)) in linear.iter_mut().zip(&mut quadratic).enumerate() {
            *l = rng.random_range(-1.0..1.0);
            for q in &mut row[i..] {
                *q = rng.random_range(-0.5..0.5);
            }
        }
        TestFunction { linear, quadratic }
    }
}

/// `(e f)(point)` evaluated through Taylor jets.
pub fn apply_at(e: &Expr, f: &TestFunction, point: [f64; 3]) -> Result<Complex64> {
    let space = JetSpace::new(momentum_degree(e));
    let ctx = Ctx { space: &space, point };
    let mut q = ctx.zero();
    for i in 0..3 {
        q = ctx.add(&q, &ctx.scale(&ctx.coordinate(i), f.linear[i].into()));
        for j in i..3 {
            let xy = ctx.mul(&ctx.coordinate(i), &ctx.coordinate(j));
            q = ctx.add(&q, &ctx.scale(&xy, f.quadratic[i][j].into()));
        }
    }
    let jet = ctx.apply(e, &ctx.exp(&q))?;
    Ok(jet.c[0])
}

/// Sample point with `r ∈ [0.5, 2]` and `θ` at least 0.3 from either pole.
pub fn random_point(rng: &mut impl Rng) -> [f64; 3] {
    let r: f64 = rng.random_range(0.5..2.0);
    let theta: f64 = rng.random_range(0.3..std::f64::consts::PI - 0.3);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    [r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()]
}

pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const ORACLE_SAMPLES: usize = 6;

/// Compares both sides of every equation at random points on random test
/// functions. Residual is `max |L − R| / max(|L|, |R|, 1)`.
pub fn differential_oracle(identity: &Identity, seed: u64) -> Result<ResidualReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..ORACLE_SAMPLES {
        let point = random_point(&mut rng);
        let f = TestFunction::random(&mut rng);
        for part in &identity.parts {
            let l = apply_at(&part.lhs, &f, point)?;
            let r = apply_at(&part.rhs, &f, point)?;
            let scale = l.norm().max(r.norm()).max(1.0);
            worst = worst.max((l - r).norm() / scale);
        }
    }
    Ok(ResidualReport::new(format!("oracle:{}", identity.key), worst, ORACLE_TOLERANCE))
}
