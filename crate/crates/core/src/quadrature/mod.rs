//! Quadrature engines: 1D Gauss rule generation, the tensorized weighted
//! square integral, adaptive integration over implicitly-defined plane
//! regions, and integration over convex polygons.

pub mod polygon;
pub mod region;
pub mod rules;

pub use polygon::{integrate_polygon, integrate_polygon_try, PolygonOptions};
pub use region::{integrate_region, integrate_region_opts, ImplicitRegion2D, Rect, RegionOptions};
pub use rules::{cached_jacobi, gauss_jacobi, gauss_legendre, QuadratureRule1D, RuleKind};

use crate::error::Result;
use crate::gbf::Multiplicity;

/// A computed value together with an a-posteriori accuracy report.
///
/// `err_estimate` is the scaled estimate |delta| / (1 + |value|) from the
/// last two refinement levels, so `converged` implies
/// `err_estimate <= requested tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub converged: bool,
    pub evaluations: u64,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            err_estimate: 0.0,
            converged: true,
            evaluations: 0,
        }
    }
}

/// Tensor Gauss-Jacobi approximation of
///   int int f(u,v) (1-u^2)^{k1-1} (1-v^2)^{k2-1} du dv
/// over [-1,1]^2 with n nodes per axis. Summation runs in ascending (i, j)
/// order so identical inputs give bit-identical results.
pub fn integrate_uv_weighted(
    mut f: impl FnMut(f64, f64) -> f64,
    k: &Multiplicity,
    n: usize,
) -> Result<f64> {
    let ru = cached_jacobi(n, k.k1() - 1.0, k.k1() - 1.0)?;
    let rv = cached_jacobi(n, k.k2() - 1.0, k.k2() - 1.0)?;
    let mut total = 0.0;
    for (ui, wu) in ru.nodes.iter().zip(ru.weights.iter()) {
        let mut row = 0.0;
        for (vj, wv) in rv.nodes.iter().zip(rv.weights.iter()) {
            row += wv * f(*ui, *vj);
        }
        total += wu * row;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn unit_weight_square() {
        let k = Multiplicity::new(1.0, 1.0).unwrap();
        let v = integrate_uv_weighted(|_, _| 1.0, &k, 4).unwrap();
        assert_abs_diff_eq!(v, 4.0, epsilon = 1e-14);
    }

    #[test]
    fn constant_gives_reciprocal_normalizing_constant() {
        // int int (1-u^2)^{k1-1}(1-v^2)^{k2-1} = pi G(k1)G(k2)/(G(k1+1/2)G(k2+1/2))
        use crate::specfun::ln_gamma;
        for &(k1, k2) in &[(1.0, 1.0), (0.5, 0.5), (2.3, 0.8), (1.7, 1.7)] {
            let k = Multiplicity::new(k1, k2).unwrap();
            let v = integrate_uv_weighted(|_, _| 1.0, &k, 4).unwrap();
            let expect = std::f64::consts::PI
                * (ln_gamma(k1).unwrap() + ln_gamma(k2).unwrap()
                    - ln_gamma(k1 + 0.5).unwrap()
                    - ln_gamma(k2 + 0.5).unwrap())
                .exp();
            assert_relative_eq!(v, expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn odd_integrand_vanishes() {
        for &(k1, k2) in &[(1.0, 1.0), (0.6, 2.2)] {
            let k = Multiplicity::new(k1, k2).unwrap();
            let v = integrate_uv_weighted(|u, _| u, &k, 4).unwrap();
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn deterministic() {
        let k = Multiplicity::new(1.3, 0.9).unwrap();
        let f = |u: f64, v: f64| (u * v + 0.3 * u).cos();
        let a = integrate_uv_weighted(f, &k, 32).unwrap();
        let b = integrate_uv_weighted(f, &k, 32).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
