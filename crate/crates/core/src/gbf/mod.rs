//! The generalized Bessel function of type B2 and its Laplace-type density:
//! the double-integral representation over [-1,1]^2, the density of the
//! representing measure, the support polygon, and the Duistermaat-Heckman
//! specialization at unit multiplicities.

pub mod dh;
pub mod laplace;

pub use dh::{dh_density, dh_measure_density, gt_pattern_contains, gt_pattern_volume};
pub use laplace::{density_h, density_h_region, gbf_laplace, GbfLaplace};

use crate::error::{Error, Result};
use crate::point::PlanarPoint;
use crate::quadrature::{integrate_uv_weighted, EvalResult};
use crate::specfun::{bessel_i_norm, ln_gamma, BesselOrder, SeriesControl, T_MAX};
use std::cell::Cell;

/// Multiplicity pair (k1, k2) of the two root orbits, with the derived sum
/// gamma = k1 + k2 and the normalizing constant
/// c_k = Gamma(k1+1/2) Gamma(k2+1/2) / (pi Gamma(k1) Gamma(k2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplicity {
    k1: f64,
    k2: f64,
    gamma: f64,
    c_k: f64,
}

impl Multiplicity {
    pub fn new(k1: f64, k2: f64) -> Result<Self> {
        if !(k1 > 0.0) || !(k2 > 0.0) || !k1.is_finite() || !k2.is_finite() {
            return Err(Error::Domain(format!(
                "multiplicities must be positive, got ({k1}, {k2})"
            )));
        }
        let c_k = (ln_gamma(k1 + 0.5)? + ln_gamma(k2 + 0.5)? - ln_gamma(k1)? - ln_gamma(k2)?)
            .exp()
            / std::f64::consts::PI;
        Ok(Multiplicity {
            k1,
            k2,
            gamma: k1 + k2,
            c_k,
        })
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn c_k(&self) -> f64 {
        self.c_k
    }

    pub fn shifted(&self, d1: f64, d2: f64) -> Result<Multiplicity> {
        Multiplicity::new(self.k1 + d1, self.k2 + d2)
    }
}

/// The normalizing constant c_k of the double-integral representation.
pub fn normalizing_c(k: &Multiplicity) -> f64 {
    k.c_k()
}

/// The six-variable polynomial under the Bessel argument:
/// Z_{x,y}(u,v) = |x|^2 |y|^2 + u (x1^2-x2^2)(y1^2-y2^2) + 4 v x1 x2 y1 y2.
pub fn z_poly(x: PlanarPoint, y: PlanarPoint, u: f64, v: f64) -> f64 {
    let sx = x.c1 * x.c1 - x.c2 * x.c2;
    let sy = y.c1 * y.c1 - y.c2 * y.c2;
    x.norm_sq() * y.norm_sq() + u * sx * sy + 4.0 * v * x.c1 * x.c2 * y.c1 * y.c2
}

/// The (a, b, c) change-of-variable coefficients of the Laplace construction:
/// for all x, sqrt(Z_{x,y}(u,v)/2) = a sqrt((x1 + c x2)^2 + b^2 x2^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ABCCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// denom = y1^2 + y2^2 + u (y1^2 - y2^2) = 2 a^2
    pub denom: f64,
}

pub fn abc(y: PlanarPoint, u: f64, v: f64) -> Result<ABCCoefficients> {
    let sy = y.c1 * y.c1 - y.c2 * y.c2;
    let denom = y.norm_sq() + u * sy;
    let delta = 1e-12 * y.norm_sq();
    if denom <= delta {
        return Err(Error::Domain(format!(
            "degenerate abc coefficients: denom = {denom:e} at u = {u}"
        )));
    }
    let big_a = sy * sy * (1.0 - u * u) + 4.0 * y.c1 * y.c1 * y.c2 * y.c2 * (1.0 - v * v);
    Ok(ABCCoefficients {
        a: (denom / 2.0).sqrt(),
        b: big_a.max(0.0).sqrt() / denom,
        c: 2.0 * v * y.c1 * y.c2 / denom,
        denom,
    })
}

/// The bracket of the Laplace density:
/// (|y|^2-|z|^2)^2 - (z1^2-z2^2 - u(y1^2-y2^2))^2 - 4 (z1 z2 - v y1 y2)^2,
/// positive exactly on the interior of the region E_{y,z}.
pub fn bracket(y: PlanarPoint, z: PlanarPoint, u: f64, v: f64) -> f64 {
    let d = y.norm_sq() - z.norm_sq();
    let p = z.c1 * z.c1 - z.c2 * z.c2 - u * (y.c1 * y.c1 - y.c2 * y.c2);
    let q = 2.0 * (z.c1 * z.c2 - v * y.c1 * y.c2);
    d * d - p * p - q * q
}

/// Membership test for E_{y,z} = {(u,v) in [-1,1]^2 : bracket >= 0}.
pub fn region_e_contains(y: PlanarPoint, z: PlanarPoint, u: f64, v: f64) -> bool {
    u >= -1.0 && u <= 1.0 && v >= -1.0 && v <= 1.0 && bracket(y, z, u, v) >= 0.0
}

/// Closed membership test for the convex hull of the orbit of y:
/// |z1| + |z2| <= |y1| + |y2| and max(|z1|,|z2|) <= max(|y1|,|y2|).
pub fn convex_hull_contains(y: PlanarPoint, z: PlanarPoint) -> bool {
    let tol = 1e-12 * (1.0 + y.norm());
    let s = y.c1.abs() + y.c2.abs();
    let m = y.c1.abs().max(y.c2.abs());
    z.c1.abs() + z.c2.abs() <= s + tol && z.c1.abs().max(z.c2.abs()) <= m + tol
}

/// The convex hull of the orbit of y under the order-eight reflection group:
/// an octagon for regular y, a square or diamond on the mirror lines.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHullB2 {
    pub y: PlanarPoint,
    /// Extreme points in counterclockwise order.
    pub vertices: Vec<PlanarPoint>,
    /// |y1| + |y2|
    pub s: f64,
    /// max(|y1|, |y2|)
    pub m: f64,
}

pub fn convex_hull_polygon(y: PlanarPoint) -> Result<ConvexHullB2> {
    if y.norm_sq() == 0.0 {
        return Err(Error::Domain("convex hull of the zero vector is a point".into()));
    }
    // the orbit consists of all sign choices of (y1, y2) and of (y2, y1)
    let mut pts: Vec<PlanarPoint> = Vec::with_capacity(8);
    for &(a, b) in &[(y.c1, y.c2), (y.c2, y.c1)] {
        for &s1 in &[1.0, -1.0] {
            for &s2 in &[1.0, -1.0] {
                let p = PlanarPoint::new(s1 * a, s2 * b);
                if !pts.iter().any(|q| (*q - p).norm() <= 1e-14 * (1.0 + y.norm())) {
                    pts.push(p);
                }
            }
        }
    }
    pts.sort_by(|p, q| {
        p.c2.atan2(p.c1)
            .partial_cmp(&q.c2.atan2(q.c1))
            .unwrap()
    });
    Ok(ConvexHullB2 {
        y,
        vertices: pts,
        s: y.c1.abs() + y.c2.abs(),
        m: y.c1.abs().max(y.c2.abs()),
    })
}

pub(crate) fn require_regular(y: PlanarPoint) -> Result<()> {
    let delta = 1e-9 * y.norm_sq();
    let sy = (y.c1 * y.c1 - y.c2 * y.c2).abs();
    let py = (y.c1 * y.c2).abs();
    if sy < delta || py < delta || y.norm_sq() == 0.0 {
        return Err(Error::DegenerateY(y));
    }
    Ok(())
}

const GBF_LADDER: [usize; 4] = [16, 32, 64, 128];

/// The generalized Bessel function via the double-integral representation:
/// D_k^W(x,y) = c_k int int I_{gamma-1/2}(sqrt(Z_{x,y}(u,v)/2)) dmu(u,v),
/// evaluated by tensor Gauss-Jacobi rules with order doubling.
pub fn gbf(x: PlanarPoint, y: PlanarPoint, k: &Multiplicity, tol: f64) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain("non-finite point".into()));
    }
    // Z is bilinear in (u,v), so its maximum over the square sits at a corner
    let sx = (x.c1 * x.c1 - x.c2 * x.c2).abs();
    let sy = (y.c1 * y.c1 - y.c2 * y.c2).abs();
    let z_max = x.norm_sq() * y.norm_sq() + sx * sy + 4.0 * (x.c1 * x.c2 * y.c1 * y.c2).abs();
    if (z_max / 2.0).sqrt() > T_MAX {
        return Err(Error::Overflow {
            quantity: "Bessel argument sqrt(Z/2)",
            value: (z_max / 2.0).sqrt(),
            limit: T_MAX,
        });
    }
    let order = BesselOrder::new(k.gamma() - 0.5)?;
    let ctrl = SeriesControl::default();
    let stash: Cell<Option<Error>> = Cell::new(None);
    let integrand = |u: f64, v: f64| -> f64 {
        let t = (z_poly(x, y, u, v).max(0.0) / 2.0).sqrt();
        match bessel_i_norm(order, t, &ctrl) {
            Ok(val) => val,
            Err(e) => {
                if stash.take().is_none() {
                    stash.set(Some(e));
                }
                0.0
            }
        }
    };

    let mut prev = f64::NAN;
    let mut evals = 0u64;
    let mut delta = f64::INFINITY;
    for &n in &GBF_LADDER {
        let cur = k.c_k() * integrate_uv_weighted(&integrand, k, n)?;
        if let Some(e) = stash.take() {
            return Err(e);
        }
        evals += (n * n) as u64;
        delta = (cur - prev).abs();
        prev = cur;
        if delta <= tol * (1.0 + cur.abs()) {
            return Ok(EvalResult {
                value: cur,
                err_estimate: delta / (1.0 + cur.abs()),
                converged: true,
                evaluations: evals,
            });
        }
    }
    Ok(EvalResult {
        value: prev,
        err_estimate: delta / (1.0 + prev.abs()),
        converged: false,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn p(a: f64, b: f64) -> PlanarPoint {
        PlanarPoint::new(a, b)
    }

    #[test]
    fn multiplicity_invariants() {
        let k = Multiplicity::new(1.0, 1.0).unwrap();
        assert_eq!(k.gamma(), 2.0);
        assert_relative_eq!(k.c_k(), 0.25, max_relative = 1e-14);
        let k = Multiplicity::new(0.5, 0.5).unwrap();
        assert_relative_eq!(
            k.c_k(),
            1.0 / (std::f64::consts::PI * std::f64::consts::PI),
            max_relative = 1e-14
        );
        assert!(Multiplicity::new(0.0, 1.0).is_err());
        assert!(Multiplicity::new(1.0, -0.2).is_err());
    }

    #[test]
    fn normalizing_constant_moment_identity() {
        for &(k1, k2) in &[(1.0, 1.0), (0.7, 2.1), (1.5, 1.0)] {
            let k = Multiplicity::new(k1, k2).unwrap();
            let moment = integrate_uv_weighted(|_, _| 1.0, &k, 64).unwrap();
            assert_relative_eq!(normalizing_c(&k) * moment, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn z_poly_special_values() {
        let y = p(1.7, -0.4);
        assert_eq!(z_poly(p(0.0, 0.0), y, 0.3, -0.8), 0.0);
        let x = p(1.3, 0.7);
        assert_relative_eq!(
            z_poly(x, y, 0.0, 0.0),
            x.norm_sq() * y.norm_sq(),
            max_relative = 1e-15
        );
        // u = v = 1 collapses to 2 <x,y>^2
        assert_relative_eq!(
            z_poly(x, y, 1.0, 1.0),
            2.0 * x.dot(y) * x.dot(y),
            max_relative = 1e-12,
            epsilon = 1e-12
        );
    }

    #[test]
    fn abc_printed_examples() {
        let r = abc(p(1.0, 1.0), 0.37, 0.0).unwrap();
        assert_relative_eq!(r.a, 1.0, max_relative = 1e-15);
        assert_relative_eq!(r.b, 1.0, max_relative = 1e-15);
        assert_abs_diff_eq!(r.c, 0.0);
        assert_relative_eq!(r.denom, 2.0, max_relative = 1e-15);

        let r = abc(p(1.0, 0.0), 0.0, 0.5).unwrap();
        assert_relative_eq!(r.a, 0.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(r.b, 1.0, max_relative = 1e-15);
        assert_abs_diff_eq!(r.c, 0.0);
    }

    #[test]
    fn abc_degenerate_rejected() {
        // y on the diagonal with u = -1: denom = 0
        assert!(abc(p(1.0, 0.0), -1.0, 0.0).is_err());
    }

    fn xorshift(state: &mut u64) -> f64 {
        let mut s = *state;
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        *state = s;
        (s.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn norm_identity_randomized() {
        let mut st = 0x9E3779B97F4A7C15u64;
        let mut r = || 4.0 * xorshift(&mut st) - 2.0;
        for _ in 0..1000 {
            let x = p(r(), r());
            let y = p(r(), r());
            let u = 0.5 * r();
            let v = 0.5 * r();
            let coeff = match abc(y, u, v) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let lhs = (z_poly(x, y, u, v).max(0.0) / 2.0).sqrt();
            let t = x.c1 + coeff.c * x.c2;
            let rhs = coeff.a * (t * t + coeff.b * coeff.b * x.c2 * x.c2).sqrt();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs),
                "norm identity failed: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn bracket_identity_randomized() {
        // bracket = 2 denom (a^2 b^2 - b^2 z1^2 - (z2 - c z1)^2)
        let mut st = 0xDEADBEEFCAFEF00Du64;
        let mut r = || 4.0 * xorshift(&mut st) - 2.0;
        for _ in 0..1000 {
            let y = p(r(), r());
            let z = p(r(), r());
            let u = 0.5 * r();
            let v = 0.5 * r();
            let coeff = match abc(y, u, v) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let lhs = bracket(y, z, u, v);
            let ab2 = coeff.a * coeff.a * coeff.b * coeff.b;
            let w = z.c2 - coeff.c * z.c1;
            let rhs = 2.0 * coeff.denom * (ab2 - coeff.b * coeff.b * z.c1 * z.c1 - w * w);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()),
                "bracket identity failed: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn bracket_special_cases() {
        let y = p(1.1, 0.6);
        // z = y, u = v = 1: all three squares vanish
        assert_abs_diff_eq!(bracket(y, y, 1.0, 1.0), 0.0, epsilon = 1e-12);
        // z = 0: (|y|^2)^2 - u^2 (y1^2-y2^2)^2 - 4 v^2 y1^2 y2^2 >= 0 on the square
        for i in 0..11 {
            for j in 0..11 {
                let u = -1.0 + 0.2 * i as f64;
                let v = -1.0 + 0.2 * j as f64;
                assert!(bracket(y, p(0.0, 0.0), u, v) >= -1e-12);
            }
        }
    }

    #[test]
    fn region_e_full_square_at_origin() {
        let y = p(2.0, 1.0);
        for i in 0..21 {
            for j in 0..21 {
                let u = -1.0 + 0.1 * i as f64;
                let v = -1.0 + 0.1 * j as f64;
                assert!(region_e_contains(y, p(0.0, 0.0), u, v));
            }
        }
        assert!(region_e_contains(y, y, 1.0, 1.0));
        assert!(!region_e_contains(y, y, 1.5, 1.0));
    }

    #[test]
    fn region_e_empty_outside_hull() {
        let y = p(2.0, 1.0);
        let z = p(3.0, 0.0);
        for i in 0..101 {
            for j in 0..101 {
                let u = -1.0 + 0.02 * i as f64;
                let v = -1.0 + 0.02 * j as f64;
                assert!(!region_e_contains(y, z, u, v));
            }
        }
    }

    #[test]
    fn hull_membership() {
        let y = p(2.0, 1.0);
        assert!(convex_hull_contains(y, y));
        assert!(!convex_hull_contains(y, p(3.0, 0.0)));
        assert!(convex_hull_contains(y, p(1.5, 1.5)));
        assert!(convex_hull_contains(y, p(2.0, -1.0)));
        assert!(!convex_hull_contains(y, p(1.9, 1.2)));
    }

    #[test]
    fn hull_polygon_shapes() {
        let hull = convex_hull_polygon(p(1.0, 0.0)).unwrap();
        assert_eq!(hull.vertices.len(), 4);
        let hull = convex_hull_polygon(p(1.0, 1.0)).unwrap();
        assert_eq!(hull.vertices.len(), 4);
        assert_relative_eq!(hull.s, 2.0);
        let hull = convex_hull_polygon(p(2.0, 1.0)).unwrap();
        assert_eq!(hull.vertices.len(), 8);
        assert_relative_eq!(hull.m, 2.0);
        // ccw ordering and all orbit points inside their own hull bounds
        for w in hull.vertices.windows(2) {
            let a = w[0].c2.atan2(w[0].c1);
            let b = w[1].c2.atan2(w[1].c1);
            assert!(b > a);
        }
        for v in &hull.vertices {
            assert!(convex_hull_contains(p(2.0, 1.0), *v));
        }
        assert!(convex_hull_polygon(p(0.0, 0.0)).is_err());
    }

    #[test]
    fn gbf_normalization_at_origin() {
        for &(k1, k2) in &[(1.0, 1.0), (1.5, 1.0), (2.0, 0.5), (0.6, 0.6)] {
            let k = Multiplicity::new(k1, k2).unwrap();
            let r = gbf(p(0.0, 0.0), p(2.0, 1.0), &k, 1e-10).unwrap();
            assert!(r.converged);
            assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn gbf_symmetry_in_arguments() {
        let k = Multiplicity::new(1.3, 0.8).unwrap();
        let x = p(0.7, -0.3);
        let y = p(1.2, 0.4);
        let a = gbf(x, y, &k, 1e-10).unwrap().value;
        let b = gbf(y, x, &k, 1e-10).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn gbf_overflow_guard() {
        let k = Multiplicity::new(1.0, 1.0).unwrap();
        match gbf(p(30.0, 0.0), p(30.0, 0.0), &k, 1e-8) {
            Err(Error::Overflow { .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }
}
