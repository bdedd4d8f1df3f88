//! The rank-two Dunkl operator apparatus: the order-eight reflection group,
//! the alternating polynomials and shift constants, the Dunkl derivative in
//! the first coordinate direction, and the Dunkl kernel through the
//! differential-recursion route (`dunkl_kernel_prop2`) and the Laplace
//! integral route (`dunkl_kernel`).

pub mod laplace;

pub use laplace::{density_l, dunkl_kernel, eigen_residual, KernelEvaluator};

use crate::error::{Error, Result};
use crate::gbf::{gbf, Multiplicity};
use crate::point::PlanarPoint;

/// One of the eight elements of the reflection group of B2, a signed
/// permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupElementB2 {
    pub matrix: [[i32; 2]; 2],
    pub name: &'static str,
}

impl GroupElementB2 {
    pub fn apply(&self, p: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(
            self.matrix[0][0] as f64 * p.c1 + self.matrix[0][1] as f64 * p.c2,
            self.matrix[1][0] as f64 * p.c1 + self.matrix[1][1] as f64 * p.c2,
        )
    }

    pub fn compose(&self, other: &GroupElementB2) -> [[i32; 2]; 2] {
        let a = &self.matrix;
        let b = &other.matrix;
        [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ]
    }
}

/// The eight group elements: four reflections, the rotations r, r^2, r^3,
/// and the identity.
pub fn group_elements() -> [GroupElementB2; 8] {
    [
        GroupElementB2 {
            matrix: [[-1, 0], [0, 1]],
            name: "sigma1",
        },
        GroupElementB2 {
            matrix: [[1, 0], [0, -1]],
            name: "sigma2",
        },
        GroupElementB2 {
            matrix: [[0, 1], [1, 0]],
            name: "sigma3",
        },
        GroupElementB2 {
            matrix: [[0, -1], [-1, 0]],
            name: "sigma4",
        },
        GroupElementB2 {
            matrix: [[0, 1], [-1, 0]],
            name: "r",
        },
        GroupElementB2 {
            matrix: [[-1, 0], [0, -1]],
            name: "r2",
        },
        GroupElementB2 {
            matrix: [[0, -1], [1, 0]],
            name: "r3",
        },
        GroupElementB2 {
            matrix: [[1, 0], [0, 1]],
            name: "id",
        },
    ]
}

/// The alternating polynomials of the two root orbits and of the full
/// root system: S1 = x1^2 - x2^2, S2 = x1 x2, S3 = S1 S2.
pub fn alternating_polys(x: PlanarPoint) -> (f64, f64, f64) {
    let s1 = x.c1 * x.c1 - x.c2 * x.c2;
    let s2 = x.c1 * x.c2;
    (s1, s2, s1 * s2)
}

/// Normalizing constants of the shift principle for the two orbits and the
/// full root system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftConstants {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl ShiftConstants {
    /// Coefficient of the S3 S3 term in the even-part combination; the
    /// full-orbit signed sum over the group carries 4 d3 (see
    /// tests/kernel_oracle.rs for the identity check against the kernel's
    /// defining power series).
    pub fn d3_orbit_sum(&self) -> f64 {
        4.0 * self.d3
    }
}

pub fn shift_constants(k: &Multiplicity) -> ShiftConstants {
    let g = k.gamma();
    ShiftConstants {
        d1: 2.0 / ((2.0 * k.k1() + 1.0) * (2.0 * g + 1.0)),
        d2: 8.0 / ((2.0 * k.k2() + 1.0) * (2.0 * g + 1.0)),
        d3: 1.0
            / (2.0 * (2.0 * k.k1() + 1.0) * (2.0 * k.k2() + 1.0) * (2.0 * g + 1.0) * (2.0 * g + 3.0)),
    }
}

/// Step and mirror-distance control for the finite-difference part of the
/// Dunkl derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDControl {
    pub h: f64,
    pub mirror_margin: f64,
}

impl FDControl {
    pub fn new(h: f64, mirror_margin: f64) -> Result<Self> {
        if !(h > 0.0) || !(mirror_margin > 0.0) {
            return Err(Error::Domain(format!(
                "FD control requires positive h and margin, got ({h}, {mirror_margin})"
            )));
        }
        Ok(FDControl { h, mirror_margin })
    }

    /// Defaults scaled to the evaluation point: h = 1e-4 (1 + |x|),
    /// margin = 1e-3 (1 + |x|).
    pub fn for_point(x: PlanarPoint) -> Self {
        let scale = 1.0 + x.norm();
        FDControl {
            h: 1e-4 * scale,
            mirror_margin: 1e-3 * scale,
        }
    }
}

/// The Dunkl derivative in the direction e1 applied to f at x:
///   T1 f(x) = d1 f(x) + k2 (f(x) - f(sigma1 x))/x1
///     + k1 [ (f(x) - f(sigma3 x))/(x1 - x2) + (f(x) - f(sigma4 x))/(x1 + x2) ],
/// with the partial derivative replaced by a central difference of step
/// ctrl.h and the reflection terms evaluated exactly.
pub fn apply_t1(
    mut f: impl FnMut(PlanarPoint) -> Result<f64>,
    x: PlanarPoint,
    k: &Multiplicity,
    ctrl: &FDControl,
) -> Result<f64> {
    let dist = x
        .c1
        .abs()
        .min((x.c1 - x.c2).abs())
        .min((x.c1 + x.c2).abs());
    if dist < ctrl.mirror_margin {
        return Err(Error::MirrorProximity {
            x,
            margin: ctrl.mirror_margin,
        });
    }
    let h = ctrl.h;
    let fx = f(x)?;
    let d1 = (f(PlanarPoint::new(x.c1 + h, x.c2))? - f(PlanarPoint::new(x.c1 - h, x.c2))?)
        / (2.0 * h);
    let refl1 = (fx - f(PlanarPoint::new(-x.c1, x.c2))?) / x.c1;
    let refl3 = (fx - f(PlanarPoint::new(x.c2, x.c1))?) / (x.c1 - x.c2);
    let refl4 = (fx - f(PlanarPoint::new(-x.c2, -x.c1))?) / (x.c1 + x.c2);
    Ok(d1 + k.k2() * refl1 + k.k1() * (refl3 + refl4))
}

/// The even part of the kernel in the second argument, expressed through
/// shifted generalized Bessel functions:
///   D_k(x,y) + D_k(x,-y) =
///     1/4 ( d1 S1(x) S1(y) D^W_{(k1+1,k2)} + d2 S2(x) S2(y) D^W_{(k1,k2+1)}
///           + 4 d3 S3(x) S3(y) D^W_{(k1+1,k2+1)} ) + 2 D^W_{(k1,k2)}.
pub fn gbf_combination(x: PlanarPoint, y: PlanarPoint, k: &Multiplicity, tol: f64) -> Result<f64> {
    let d = shift_constants(k);
    let (s1x, s2x, s3x) = alternating_polys(x);
    let (s1y, s2y, s3y) = alternating_polys(y);
    let w1 = gbf(x, y, &k.shifted(1.0, 0.0)?, tol)?.value;
    let w2 = gbf(x, y, &k.shifted(0.0, 1.0)?, tol)?.value;
    let w3 = gbf(x, y, &k.shifted(1.0, 1.0)?, tol)?.value;
    let w0 = gbf(x, y, k, tol)?.value;
    Ok(0.25
        * (d.d1 * s1x * s1y * w1 + d.d2 * s2x * s2y * w2 + d.d3_orbit_sum() * s3x * s3y * w3)
        + 2.0 * w0)
}

/// The Dunkl kernel through the differential recursion
///   2 y1 D_k(x, y) = (T1 + y1) { even-part combination as a function of x }.
/// Serves as the independent cross-check of the Laplace route.
pub fn dunkl_kernel_prop2(
    x: PlanarPoint,
    y: PlanarPoint,
    k: &Multiplicity,
    tol: f64,
    ctrl: &FDControl,
) -> Result<f64> {
    if y.c1.abs() < 1e-6 * y.norm() {
        return Err(Error::DegenerateFirstCoordinate(y));
    }
    let g = |xi: PlanarPoint| gbf_combination(xi, y, k, tol);
    let t1 = apply_t1(g, x, k, ctrl)?;
    let gx = gbf_combination(x, y, k, tol)?;
    Ok((t1 + y.c1 * gx) / (2.0 * y.c1))
}
