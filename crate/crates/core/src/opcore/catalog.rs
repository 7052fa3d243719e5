//! Registry of operator identities checked by exact normal ordering.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::UnitCoeff;

use super::expr::*;
use super::momenta::{l_x, l_y, l_z, planar_explicit, planar_symmetrized, spherical_explicit, spherical_symmetrized};
use super::momenta::{PlanarComponent as Pl, SphericalComponent as Sp};
use super::{normal_order, OpExpr};

/// One equation `lhs = rhs` inside an identity.
#[derive(Clone, Debug)]
pub struct Part {
    pub label: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// A named operator identity, possibly made of several equations.
#[derive(Clone, Debug)]
pub struct Identity {
    pub key: &'static str,
    pub description: &'static str,
    pub parts: Vec<Part>,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub key: String,
    pub holds: bool,
    /// Normal form of `lhs − rhs` for each part.
    pub residuals: Vec<(String, OpExpr)>,
}

impl IdentityReport {
    /// Sum of the per-part residuals' term counts.
    pub fn residual_terms(&self) -> usize {
        self.residuals.iter().map(|(_, r)| r.term_count()).sum()
    }

    /// First nonzero residual, or zero.
    pub fn residual(&self) -> OpExpr {
        self.residuals.iter().map(|(_, r)| r).find(|r| !r.is_zero()).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.key,
            "holds": self.holds,
            "residuals": self.residuals.iter().map(|(l, r)| json!({
                "part": l,
                "text": r.to_string(),
                "terms": r.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn part(label: &str, lhs: Expr, rhs: Expr) -> Part {
    Part { label: label.to_string(), lhs, rhs }
}

fn ih() -> Expr {
    Expr::i_hbar()
}

fn mih() -> Expr {
    Expr::scalar(UnitCoeff::i().mul(&UnitCoeff::hbar()).neg())
}

fn comm(a: Expr, b: Expr) -> Expr {
    Expr::commutator(a, b)
}

fn p_r() -> Expr {
    spherical_explicit(Sp::Radial)
}
fn p_theta() -> Expr {
    spherical_explicit(Sp::Theta)
}
fn p_phi() -> Expr {
    spherical_explicit(Sp::Phi)
}
fn p_rho() -> Expr {
    planar_explicit(Pl::Radial)
}
fn p_phi_2d() -> Expr {
    planar_explicit(Pl::Phi)
}

const AXES: [&str; 3] = ["x", "y", "z"];

fn momenta() -> [Expr; 3] {
    [px(), py(), pz()]
}

fn coords() -> [Expr; 3] {
    [rx(), ry(), rz()]
}

/// `r·p` over the first `k` axes.
fn r_dot_p(k: usize) -> Expr {
    Expr::Sum(coords().into_iter().zip(momenta()).take(k).map(|(r, p)| r * p).collect())
}

fn per_axis(prefix: &str, rhs: [Expr; 3], f: impl Fn(Expr) -> Expr) -> Vec<Part> {
    momenta().into_iter().zip(rhs).zip(AXES).map(|((p, rhs), a)| part(&format!("{prefix}_{a}"), f(p), rhs)).collect()
}

/// `Σ_{α,β} r_α r_β p_α p_β` over the first `k` axes.
fn rr_pp(k: usize) -> Expr {
    let mut terms = Vec::new();
    for a in 0..k {
        for b in 0..k {
            terms.push(coords()[a].clone() * coords()[b].clone() * momenta()[a].clone() * momenta()[b].clone());
        }
    }
    Expr::Sum(terms)
}

/// The full identity registry in a fixed order.
pub fn catalog() -> Vec<Identity> {
    let mut v = Vec::new();
    let mut add = |key, description, parts| v.push(Identity { key, description, parts });

    let mut ccr = Vec::new();
    for (a, r) in coords().into_iter().enumerate() {
        for (b, p) in momenta().into_iter().enumerate() {
            let rhs = if a == b { ih() } else { Expr::zero() };
            ccr.push(part(&format!("r_{}_p_{}", AXES[a], AXES[b]), comm(r.clone(), p), rhs));
        }
    }
    add("ccr", "[r_α, p_β] = iħ δ_αβ", ccr);

    let mut pp = Vec::new();
    for (a, pa) in momenta().into_iter().enumerate() {
        for (b, pb) in momenta().into_iter().enumerate().skip(a + 1) {
            pp.push(part(&format!("p_{}_p_{}", AXES[a], AXES[b]), comm(pa.clone(), pb), Expr::zero()));
        }
    }
    add("momenta_commute", "[p_α, p_β] = 0", pp);

    let r2 = rx() * rx() + ry() * ry() + rz() * rz();
    add(
        "rsquared",
        "[p_α, r_x² + r_y² + r_z²] = −2iħ r_α",
        per_axis("p", coords().map(|c| Expr::int(-2) * ih() * c), |p| comm(p, r2.clone())),
    );
    add(
        "rsquared2",
        "r[p_α, r] + [p_α, r]r = −2iħ r_α",
        per_axis("p", coords().map(|c| Expr::int(-2) * ih() * c), |p| r() * comm(p.clone(), r()) + comm(p, r()) * r()),
    );
    add(
        "momentum_r_comm",
        "[p_α, r] = −iħ r_α / r",
        per_axis("p", coords().map(|c| mih() * c * inv_r()), |p| comm(p, r())),
    );
    add(
        "comm_trick",
        "[p_α, r·r⁻¹] = 0",
        per_axis("p", [Expr::zero(), Expr::zero(), Expr::zero()], |p| comm(p, r() * inv_r())),
    );
    add(
        "momentum_inv_r_comm",
        "[p_α, 1/r] = iħ r_α / r³",
        per_axis("p", coords().map(|c| ih() * c * inv_r().pow(3)), |p| comm(p, inv_r())),
    );
    add(
        "momentum_rho_comm",
        "[p_α, ρ] = −iħ r_α / ρ for α = x, y and 0 for z",
        per_axis("p", [mih() * rx() * inv_rho(), mih() * ry() * inv_rho(), Expr::zero()], |p| comm(p, rho())),
    );
    add(
        "momentum_inv_rho_comm",
        "[p_α, 1/ρ] = iħ r_α / ρ³ for α = x, y and 0 for z",
        per_axis("p", [ih() * rx() * inv_rho().pow(3), ih() * ry() * inv_rho().pow(3), Expr::zero()], |p| {
            comm(p, inv_rho())
        }),
    );
    add(
        "momentum_costheta_comm",
        "[p_α, cosθ]",
        per_axis(
            "p",
            [
                ih() * rx() * rz() * inv_r().pow(3),
                ih() * ry() * rz() * inv_r().pow(3),
                mih() * rho().pow(2) * inv_r().pow(3),
            ],
            |p| comm(p, cos_theta()),
        ),
    );
    add(
        "momentum_sintheta_comm",
        "[p_α, sinθ]",
        per_axis(
            "p",
            [
                mih() * rx() * rz().pow(2) * inv_rho() * inv_r().pow(3),
                mih() * ry() * rz().pow(2) * inv_rho() * inv_r().pow(3),
                ih() * rho() * rz() * inv_r().pow(3),
            ],
            |p| comm(p, sin_theta()),
        ),
    );
    add(
        "momentum_cosphi_comm",
        "[p_α, cosφ]",
        per_axis(
            "p",
            [mih() * ry().pow(2) * inv_rho().pow(3), ih() * rx() * ry() * inv_rho().pow(3), Expr::zero()],
            |p| comm(p, cos_phi()),
        ),
    );
    add(
        "momentum_sinphi_comm",
        "[p_α, sinφ]",
        per_axis(
            "p",
            [ih() * rx() * ry() * inv_rho().pow(3), mih() * rx().pow(2) * inv_rho().pow(3), Expr::zero()],
            |p| comm(p, sin_phi()),
        ),
    );

    let trig = [("cos_theta", cos_theta()), ("sin_theta", sin_theta()), ("cos_phi", cos_phi()), ("sin_phi", sin_phi())];
    let mut tp = Vec::new();
    for (k, (na, a)) in trig.iter().enumerate() {
        for (nb, b) in trig.iter().skip(k + 1).chain([("r", r()), ("rho", rho())].iter()) {
            tp.push(part(&format!("{na}_{nb}"), comm(a.clone(), b.clone()), Expr::zero()));
        }
    }
    add("trig_commute", "trig operators commute with each other and with r, ρ", tp);

    add(
        "trig_pythagoras",
        "cos²θ + sin²θ = 1 and cos²φ + sin²φ = 1",
        vec![
            part("theta", cos_theta().pow(2) + sin_theta().pow(2), Expr::one()),
            part("phi", cos_phi().pow(2) + sin_phi().pow(2), Expr::one()),
        ],
    );

    add(
        "radial_mom",
        "½(ê_r·p + p·ê_r) = sinθcosφ p_x + sinθsinφ p_y + cosθ p_z − iħ/r",
        vec![part("p_r", spherical_symmetrized(Sp::Radial), p_r())],
    );
    add(
        "theta_mom",
        "½(ê_θ·p + p·ê_θ) = cosθcosφ p_x + cosθsinφ p_y − sinθ p_z − iħ cotθ/(2r)",
        vec![part("p_theta", spherical_symmetrized(Sp::Theta), p_theta())],
    );
    add(
        "phi_mom",
        "½(ê_φ·p + p·ê_φ) = −sinφ p_x + cosφ p_y",
        vec![part("p_phi", spherical_symmetrized(Sp::Phi), p_phi())],
    );
    add("phi_mom_lz", "p_φ = L_z / ρ", vec![part("p_phi", p_phi(), inv_rho() * l_z())]);
    add("radial_mom_r_dot_p", "p_r = (1/r)(r·p − iħ)", vec![part("p_r", p_r(), inv_r() * (r_dot_p(3) - ih()))]);

    add(
        "radial_momentum_r_comm",
        "[p_r, r] = −iħ and [p_r, ρ] = −iħ sinθ",
        vec![part("r", comm(p_r(), r()), mih()), part("rho", comm(p_r(), rho()), mih() * sin_theta())],
    );
    add(
        "radial_momentum_trig_comm",
        "p_r commutes with cosθ, sinθ, cosφ, sinφ",
        trig.iter().map(|(n, t)| part(n, comm(p_r(), t.clone()), Expr::zero())).collect(),
    );
    add(
        "theta_momentum_commutes",
        "p_θ commutes with r, cosφ, sinφ",
        vec![
            part("r", comm(p_theta(), r()), Expr::zero()),
            part("inv_r", comm(p_theta(), inv_r()), Expr::zero()),
            part("cos_phi", comm(p_theta(), cos_phi()), Expr::zero()),
            part("sin_phi", comm(p_theta(), sin_phi()), Expr::zero()),
        ],
    );
    add(
        "theta_momentum_trig_comm",
        "[p_θ, cosθ] = iħ sinθ/r and [p_θ, sinθ] = −iħ cosθ/r",
        vec![
            part("cos_theta", comm(p_theta(), cos_theta()), ih() * sin_theta() * inv_r()),
            part("sin_theta", comm(p_theta(), sin_theta()), mih() * cos_theta() * inv_r()),
        ],
    );
    add("theta_mom_rho_comm", "[p_θ, ρ] = −iħ cosθ", vec![part("rho", comm(p_theta(), rho()), mih() * cos_theta())]);
    add(
        "phi_momentum_commutes",
        "p_φ commutes with cosθ, sinθ, r, ρ",
        vec![
            part("cos_theta", comm(p_phi(), cos_theta()), Expr::zero()),
            part("sin_theta", comm(p_phi(), sin_theta()), Expr::zero()),
            part("r", comm(p_phi(), r()), Expr::zero()),
            part("rho", comm(p_phi(), rho()), Expr::zero()),
        ],
    );
    add(
        "phi_momentum_trig_com",
        "[p_φ, cosφ] = iħ sinφ/ρ and [p_φ, sinφ] = −iħ cosφ/ρ",
        vec![
            part("cos_phi", comm(p_phi(), cos_phi()), ih() * sin_phi() * inv_rho()),
            part("sin_phi", comm(p_phi(), sin_phi()), mih() * cos_phi() * inv_rho()),
        ],
    );
    add(
        "radial_momentum_theta_momentum_comm",
        "[p_r, p_θ] = (iħ/r) p_θ",
        vec![part("p_r_p_theta", comm(p_r(), p_theta()), ih() * inv_r() * p_theta())],
    );
    add(
        "radial_momentum_phi_momentum_comm",
        "[p_r, p_φ] = (iħ/r) p_φ",
        vec![part("p_r_p_phi", comm(p_r(), p_phi()), ih() * inv_r() * p_phi())],
    );
    add(
        "theta_momentum_phi_momentum_comm",
        "[p_θ, p_φ] = iħ (cotθ/r) p_φ",
        vec![part("p_theta_p_phi", comm(p_theta(), p_phi()), ih() * cot_theta() * inv_r() * p_phi())],
    );

    add(
        "radial_momentum_2d",
        "½(ê_ρ·p + p·ê_ρ) = cosφ p_x + sinφ p_y − iħ/(2ρ)",
        vec![part("p_rho", planar_symmetrized(Pl::Radial), p_rho())],
    );
    add(
        "phi_momentum_2d",
        "½(ê_φ·p + p·ê_φ) = −sinφ p_x + cosφ p_y",
        vec![part("p_phi", planar_symmetrized(Pl::Phi), p_phi_2d())],
    );
    add("radial_momentum_rho_comm_2d", "[p_ρ, ρ] = −iħ", vec![part("rho", comm(p_rho(), rho()), mih())]);
    add(
        "radial_momentum_trig_comm_2d",
        "p_ρ commutes with cosφ and sinφ",
        vec![
            part("cos_phi", comm(p_rho(), cos_phi()), Expr::zero()),
            part("sin_phi", comm(p_rho(), sin_phi()), Expr::zero()),
        ],
    );
    add(
        "phi_momentum_trig_comm_2d",
        "[p_φ, cosφ] = iħ sinφ/ρ, [p_φ, sinφ] = −iħ cosφ/ρ, [p_φ, ρ] = 0",
        vec![
            part("cos_phi", comm(p_phi_2d(), cos_phi()), ih() * sin_phi() * inv_rho()),
            part("sin_phi", comm(p_phi_2d(), sin_phi()), mih() * cos_phi() * inv_rho()),
            part("rho", comm(p_phi_2d(), rho()), Expr::zero()),
        ],
    );
    add(
        "radial_momentum_phi_momentum_comm_2d",
        "[p_ρ, p_φ] = (iħ/ρ) p_φ",
        vec![part("p_rho_p_phi", comm(p_rho(), p_phi_2d()), ih() * inv_rho() * p_phi_2d())],
    );

    let d3 = r_dot_p(3);
    add(
        "radial_momentum_squared",
        "p_r² = (1/r)(r·p − iħ)(1/r)(r·p − iħ) = (1/r²)[Σ r_α r_β p_α p_β − 2iħ r·p]",
        vec![
            part("product", p_r() * p_r(), inv_r() * (d3.clone() - ih()) * inv_r() * (d3.clone() - ih())),
            part("expanded", p_r() * p_r(), inv_r().pow(2) * (rr_pp(3) + Expr::int(-2) * ih() * d3.clone())),
        ],
    );
    let l_dot_l = l_x() * l_x() + l_y() * l_y() + l_z() * l_z();
    let p2_3 = px() * px() + py() * py() + pz() * pz();
    let angular_expanded = (ry().pow(2) + rz().pow(2)) * px().pow(2)
        + (rx().pow(2) + rz().pow(2)) * py().pow(2)
        + (rx().pow(2) + ry().pow(2)) * pz().pow(2)
        + Expr::int(-2) * rx() * ry() * px() * py()
        + Expr::int(-2) * ry() * rz() * py() * pz()
        + Expr::int(-2) * rz() * rx() * pz() * px()
        + Expr::int(2) * ih() * d3.clone();
    add(
        "angular_momentum_squared",
        "L·L / r² in position-left form",
        vec![part("expanded", inv_r().pow(2) * l_dot_l.clone(), inv_r().pow(2) * angular_expanded)],
    );
    add(
        "ke_3d",
        "p_x² + p_y² + p_z² = p_r² + L·L / r²",
        vec![part("ke", p2_3, p_r() * p_r() + inv_r().pow(2) * l_dot_l)],
    );

    let d2 = r_dot_p(2);
    let half_ih = Expr::frac(1, 2) * ih();
    let hbar2_4 = Expr::frac(1, 4) * Expr::hbar() * Expr::hbar();
    add(
        "radial_momentum_squared_2d",
        "p_ρ² = (1/ρ)(r·p − iħ/2)(1/ρ)(r·p − iħ/2) = (1/ρ²)[Σ r_α r_β p_α p_β − iħ r·p + ħ²/4]",
        vec![
            part(
                "product",
                p_rho() * p_rho(),
                inv_rho() * (d2.clone() - half_ih.clone()) * inv_rho() * (d2.clone() - half_ih),
            ),
            part("expanded", p_rho() * p_rho(), inv_rho().pow(2) * (rr_pp(2) - ih() * d2.clone() + hbar2_4.clone())),
        ],
    );
    add(
        "phi_momentum_squared_2d",
        "L_z² / ρ² in position-left form",
        vec![part(
            "expanded",
            inv_rho().pow(2) * l_z() * l_z(),
            inv_rho().pow(2)
                * (ry().pow(2) * px().pow(2)
                    + rx().pow(2) * py().pow(2)
                    + Expr::int(-2) * rx() * ry() * px() * py()
                    + ih() * d2),
        )],
    );
    add(
        "ke_2d",
        "p_x² + p_y² = p_ρ² + (L_z² − ħ²/4) / ρ²",
        vec![part("ke", px() * px() + py() * py(), p_rho() * p_rho() + inv_rho().pow(2) * (l_z() * l_z() - hbar2_4))],
    );

    add(
        "pz_decomposition",
        "p_z = (p_r − iħ/(2r)) cosθ − p_θ sinθ",
        vec![part("p_z", pz(), (p_r() - half_ih_over_r()) * cos_theta() - p_theta() * sin_theta())],
    );
    add(
        "px_2d",
        "p_x = (p_ρ − iħ/(2ρ)) cosφ − p_φ sinφ",
        vec![part("p_x", px(), (p_rho() - half_ih_over_rho()) * cos_phi() - p_phi_2d() * sin_phi())],
    );
    add(
        "py_2d",
        "p_y = (p_ρ − iħ/(2ρ)) sinφ + p_φ cosφ",
        vec![part("p_y", py(), (p_rho() - half_ih_over_rho()) * sin_phi() + p_phi_2d() * cos_phi())],
    );
    let l_dot_e_phi = -(l_x() * sin_phi()) + l_y() * cos_phi();
    add(
        "p_theta_via_l",
        "p_θ = (1/r)(L·ê_φ + (iħ/2) cotθ)",
        vec![part("p_theta", p_theta(), inv_r() * (l_dot_e_phi + Expr::frac(1, 2) * ih() * cot_theta()))],
    );

    v
}

/// `iħ/(2r)`
fn half_ih_over_r() -> Expr {
    Expr::frac(1, 2) * ih() * inv_r()
}

/// `iħ/(2ρ)`
fn half_ih_over_rho() -> Expr {
    Expr::frac(1, 2) * ih() * inv_rho()
}

pub fn lookup(key: &str) -> Result<Identity> {
    catalog().into_iter().find(|i| i.key == key).ok_or_else(|| Error::UnknownIdentity(key.to_string()))
}

pub fn keys() -> Vec<&'static str> {
    catalog().iter().map(|i| i.key).collect()
}

pub fn check(identity: &Identity) -> Result<IdentityReport> {
    let mut residuals = Vec::new();
    for p in &identity.parts {
        let res = normal_order(&p.lhs)?.sub(&normal_order(&p.rhs)?);
        residuals.push((p.label.clone(), res));
    }
    let holds = residuals.iter().all(|(_, r)| r.is_zero());
    Ok(IdentityReport { key: identity.key.to_string(), holds, residuals })
}

/// Normal form of `lhs − rhs` for every equation of a catalog entry.
pub fn check_identity(key: &str) -> Result<IdentityReport> {
    check(&lookup(key)?)
}

/// A copy of the identity with a sign flipped, used to confirm that checks
/// can fail. The last summand of each lhs that is not identically zero is
/// negated; an lhs that is not a sum gets `iħ` added instead.
pub fn corrupted(identity: &Identity) -> Identity {
    let mut out = identity.clone();
    for p in out.parts.iter_mut() {
        let flip = match &p.lhs {
            Expr::Sum(v) if v.len() >= 2 => v.iter().rposition(|t| normal_order(t).map_or(true, |n| !n.is_zero())),
            _ => None,
        };
        p.lhs = match (&p.lhs, flip) {
            (Expr::Sum(v), Some(k)) => {
                let mut v = v.clone();
                v[k] = -v[k].clone();
                Expr::Sum(v)
            }
            (other, _) => other.clone() + ih(),
        };
    }
    out
}
