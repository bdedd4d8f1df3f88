//! The unit-multiplicity specialization of the Laplace density: the density
//! H_1 coincides, up to the explicit factor 2 (y1^2 - y2^2) y1 y2, with the
//! Duistermaat-Heckman measure of the order-eight dihedral group, and the
//! supporting chain-inequality pattern of sp(4, C) is provided for
//! exploratory comparison.

use super::laplace::integrate_e_adaptive;
use super::{convex_hull_contains, Multiplicity};
use crate::error::{Error, Result};
use crate::point::PlanarPoint;
use crate::quadrature::EvalResult;

fn require_chamber(y: PlanarPoint) -> Result<()> {
    if !(y.c1 > y.c2 && y.c2 > 0.0) {
        return Err(Error::ChamberViolation(y));
    }
    Ok(())
}

/// The Duistermaat-Heckman form of the density at k1 = k2 = 1:
///   H_1(y, z) = 3/(4 pi) int_{E_{y,z}} sqrt(bracket) / A du dv
/// for y in the open chamber y1 > y2 > 0. Coincides with
/// `density_h(y, z, (1,1))`; evaluated from its own printed constants.
pub fn dh_density(y: PlanarPoint, z: PlanarPoint, tol: f64) -> Result<EvalResult> {
    require_chamber(y)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    if !convex_hull_contains(y, z) {
        return Ok(EvalResult::exact(0.0));
    }
    // sqrt(bracket)/A is the chord integrand at gamma = 2 with unit weights
    let k = Multiplicity::new(1.0, 1.0).expect("unit multiplicity");
    let raw = integrate_e_adaptive(y, z, &k, &|_, _| 1.0, tol)?;
    let prefactor = 3.0 / (4.0 * std::f64::consts::PI);
    Ok(EvalResult {
        value: prefactor * raw.value,
        ..raw
    })
}

/// Density of the Duistermaat-Heckman measure itself:
///   m_DH(y, dz) = 2 (y1^2 - y2^2) y1 y2 H_1(y, z) dz,
/// with total mass 2 (y1^2 - y2^2) y1 y2.
pub fn dh_measure_density(y: PlanarPoint, z: PlanarPoint, tol: f64) -> Result<EvalResult> {
    let scale = 2.0 * (y.c1 * y.c1 - y.c2 * y.c2) * y.c1 * y.c2;
    let r = dh_density(y, z, tol)?;
    Ok(EvalResult {
        value: scale * r.value,
        ..r
    })
}

/// Closed chain of inequalities of the Gelfand-Tsetlin pattern of sp(4, C):
/// y1 >= w1 >= y2 >= w2 >= 0 and w1 >= t >= w2.
pub fn gt_pattern_contains(y: PlanarPoint, w1: f64, w2: f64, t: f64) -> Result<bool> {
    if !(y.c1 >= y.c2 && y.c2 >= 0.0) {
        return Err(Error::ChamberViolation(y));
    }
    Ok(y.c1 >= w1 && w1 >= y.c2 && y.c2 >= w2 && w2 >= 0.0 && w1 >= t && t >= w2)
}

/// Three-volume of the pattern:
///   int_{y2}^{y1} int_0^{y2} (w1 - w2) dw2 dw1 = y1 y2 (y1 - y2) / 2.
pub fn gt_pattern_volume(y: PlanarPoint) -> Result<f64> {
    if !(y.c1 >= y.c2 && y.c2 >= 0.0) {
        return Err(Error::ChamberViolation(y));
    }
    Ok(y.c1 * y.c2 * (y.c1 - y.c2) / 2.0)
}
