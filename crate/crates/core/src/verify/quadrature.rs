//! Gauss–Laguerre and Gauss–Legendre rules, nodes found by Newton
//! iteration on the three-term recurrences.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// `∫₀^∞ e^{−t} f(t) dt`
    GaussLaguerre,
    /// `∫_a^b f(t) dt`
    GaussLegendre,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub nodes: usize,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    /// `|I_N − I_{N/2}|` plus a rounding floor.
    pub error_estimate: f64,
}

impl Integral {
    pub fn within_tolerance(&self, spec: &QuadratureSpec) -> bool {
        self.error_estimate < spec.tolerance
    }
}

/// `(L_n(z), L_{n−1}(z))` by the three-term recurrence.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf + 1.0 - z) * p2 - jf * p3) / (jf + 1.0);
    }
    (p1, p2)
}

/// Nodes and weights for `∫₀^∞ e^{−t} f(t) dt`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "at least one node");
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z: f64 = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - x[i - 2])
            }
        };
        for _ in 0..100 {
            let (p1, p2) = laguerre_pair(n, z);
            let dz = p1 / (nf * (p1 - p2) / z);
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        let (p1, p2) = laguerre_pair(n, z);
        let pp = nf * (p1 - p2) / z;
        x[i] = z;
        w[i] = -1.0 / (pp * nf * p2);
    }
    (x, w)
}

/// Nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "at least one node");
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp;
        loop {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn apply_rule(spec: &QuadratureSpec, nodes: usize, a: f64, b: f64, f: &impl Fn(f64) -> f64) -> (f64, f64) {
    let (x, w) = match spec.rule {
        Rule::GaussLaguerre => gauss_laguerre(nodes),
        Rule::GaussLegendre => gauss_legendre(nodes),
    };
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut sum = 0.0;
    let mut abs = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let v = match spec.rule {
            Rule::GaussLaguerre => wi * f(*xi),
            Rule::GaussLegendre => half * wi * f(mid + half * xi),
        };
        sum += v;
        abs += v.abs();
    }
    (sum, abs)
}

impl QuadratureSpec {
    pub fn laguerre(nodes: usize, tolerance: f64) -> Self {
        QuadratureSpec { rule: Rule::GaussLaguerre, nodes, tolerance }
    }

    pub fn legendre(nodes: usize, tolerance: f64) -> Self {
        QuadratureSpec { rule: Rule::GaussLegendre, nodes, tolerance }
    }

    /// The same rule with twice the nodes.
    pub fn doubled(&self) -> Self {
        QuadratureSpec { nodes: 2 * self.nodes, ..*self }
    }

    /// `∫₀^∞ e^{−t} f(t) dt` for Gauss–Laguerre, `∫_a^b f(t) dt` for
    /// Gauss–Legendre (`a`, `b` ignored by Gauss–Laguerre).
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> Integral {
        let (value, abs) = apply_rule(self, self.nodes, a, b, &f);
        let (coarse, _) = apply_rule(self, self.nodes.div_ceil(2), a, b, &f);
        let floor = 64.0 * f64::EPSILON * abs;
        Integral { value, error_estimate: (value - coarse).abs() + floor }
    }
}
