//! Momentum components along spherical and plane-polar unit vectors.
//!
//! Each component is built as the symmetrized product `½(ê·p + p·ê)` and
//! normal ordered; the ordering produces the `iħ` corrections.

use crate::exact::UnitCoeff;

use super::expr::*;
use super::{normal_order, OpExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SphericalComponent {
    Radial,
    Theta,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarComponent {
    Radial,
    Phi,
}

fn unit_vector_3d(which: SphericalComponent) -> [Expr; 3] {
    match which {
        SphericalComponent::Radial => [sin_theta() * cos_phi(), sin_theta() * sin_phi(), cos_theta()],
        SphericalComponent::Theta => [cos_theta() * cos_phi(), cos_theta() * sin_phi(), -sin_theta()],
        SphericalComponent::Phi => [-sin_phi(), cos_phi(), Expr::zero()],
    }
}

fn unit_vector_2d(which: PlanarComponent) -> [Expr; 2] {
    match which {
        PlanarComponent::Radial => [cos_phi(), sin_phi()],
        PlanarComponent::Phi => [-sin_phi(), cos_phi()],
    }
}

fn symmetrized(e: &[Expr]) -> Expr {
    let p = [px(), py(), pz()];
    let mut terms = Vec::new();
    for (ea, pa) in e.iter().zip(p) {
        terms.push(Expr::frac(1, 2) * ea.clone() * pa.clone());
        terms.push(Expr::frac(1, 2) * pa * ea.clone());
    }
    Expr::Sum(terms)
}

/// `½(ê·p + p·ê)` as a raw tree.
pub fn spherical_symmetrized(which: SphericalComponent) -> Expr {
    symmetrized(&unit_vector_3d(which))
}

/// `½(ê·p + p·ê)` in the plane.
pub fn planar_symmetrized(which: PlanarComponent) -> Expr {
    symmetrized(&unit_vector_2d(which))
}

fn minus_i_hbar() -> Expr {
    Expr::scalar(UnitCoeff::i().mul(&UnitCoeff::hbar()).neg())
}

/// Explicit position-left form with its quantum correction.
pub fn spherical_explicit(which: SphericalComponent) -> Expr {
    let [ex, ey, ez] = unit_vector_3d(which);
    let classical = ex * px() + ey * py() + ez * pz();
    match which {
        SphericalComponent::Radial => classical + minus_i_hbar() * inv_r(),
        SphericalComponent::Theta => classical + minus_i_hbar() * Expr::frac(1, 2) * cot_theta() * inv_r(),
        SphericalComponent::Phi => classical,
    }
}

pub fn planar_explicit(which: PlanarComponent) -> Expr {
    let [ex, ey] = unit_vector_2d(which);
    let classical = ex * px() + ey * py();
    match which {
        PlanarComponent::Radial => classical + minus_i_hbar() * Expr::frac(1, 2) * inv_rho(),
        PlanarComponent::Phi => classical,
    }
}

/// `p_r`, `p_θ` or `p_φ` in normal form.
///
/// Panics if the symmetrized construction disagrees with the explicit form,
/// which would mean the ordering engine is broken.
pub fn build_spherical_momentum(which: SphericalComponent) -> OpExpr {
    let built = normal_order(&spherical_symmetrized(which)).expect("unit vectors only invert r and ρ");
    let explicit = normal_order(&spherical_explicit(which)).expect("explicit form is well defined");
    assert_eq!(built, explicit, "symmetrized {which:?} momentum disagrees with its explicit form");
    built
}

/// `p_ρ` or `p_φ` in the plane, in normal form.
pub fn build_planar_momentum(which: PlanarComponent) -> OpExpr {
    let built = normal_order(&planar_symmetrized(which)).expect("unit vectors only invert ρ");
    let explicit = normal_order(&planar_explicit(which)).expect("explicit form is well defined");
    assert_eq!(built, explicit, "symmetrized planar {which:?} momentum disagrees with its explicit form");
    built
}

/// Orbital angular momentum components `L = r × p`.
pub fn l_x() -> Expr {
    ry() * pz() - rz() * py()
}
pub fn l_y() -> Expr {
    rz() * px() - rx() * pz()
}
pub fn l_z() -> Expr {
    rx() * py() - ry() * px()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Units;
    use crate::opcore::PositionFn;

    #[test]
    fn phi_component_has_no_correction() {
        let p_phi = build_spherical_momentum(SphericalComponent::Phi);
        let classical = normal_order(&(-sin_phi() * px() + cos_phi() * py())).unwrap();
        assert_eq!(p_phi, classical);
    }

    #[test]
    fn radial_correction_is_minus_i_hbar_over_r() {
        let p_r = build_spherical_momentum(SphericalComponent::Radial);
        let classical =
            normal_order(&(sin_theta() * cos_phi() * px() + sin_theta() * sin_phi() * py() + cos_theta() * pz()))
                .unwrap();
        let correction = p_r.sub(&classical);
        let expected = OpExpr::position(PositionFn::r_pow(-1), Units::hbar()).scale(&UnitCoeff::i().neg());
        assert_eq!(correction, expected);
    }

    #[test]
    fn theta_and_planar_corrections() {
        let p_t = build_spherical_momentum(SphericalComponent::Theta);
        let [ex, ey, ez] = unit_vector_3d(SphericalComponent::Theta);
        let correction = p_t.sub(&normal_order(&(ex * px() + ey * py() + ez * pz())).unwrap());
        assert_eq!(correction, normal_order(&(minus_i_hbar() * cot_theta() * Expr::frac(1, 2) * inv_r())).unwrap());
        let p_rho = build_planar_momentum(PlanarComponent::Radial);
        let classical = normal_order(&(cos_phi() * px() + sin_phi() * py())).unwrap();
        assert_eq!(p_rho.sub(&classical), normal_order(&(minus_i_hbar() * Expr::frac(1, 2) * inv_rho())).unwrap());
    }

    #[test]
    fn planar_commutator() {
        let p_rho = build_planar_momentum(PlanarComponent::Radial);
        let p_phi = build_planar_momentum(PlanarComponent::Phi);
        let lhs = p_rho.commutator(&p_phi);
        let rhs = normal_order(&(Expr::i_hbar() * inv_rho())).unwrap().mul(&p_phi);
        assert_eq!(lhs, rhs);
    }
}
