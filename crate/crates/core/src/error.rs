use crate::point::PlanarPoint;
use std::fmt;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A value exceeds the range where evaluation stays within f64 scale.
    Overflow {
        quantity: &'static str,
        value: f64,
        limit: f64,
    },
    /// An iterative or adaptive scheme did not reach the requested tolerance.
    NonConvergence {
        what: &'static str,
        best: f64,
        err_estimate: f64,
    },
    /// `y` is too close to a mirror line for the density formulas
    /// (requires y1^2 != y2^2 and y1*y2 != 0).
    DegenerateY(PlanarPoint),
    /// The first coordinate of `y` is too small for the Proposition-2 route.
    DegenerateFirstCoordinate(PlanarPoint),
    /// `x` is too close to a mirror of the reflection group for the
    /// difference quotients of the Dunkl operator.
    MirrorProximity { x: PlanarPoint, margin: f64 },
    /// The operation requires y1 > y2 > 0.
    ChamberViolation(PlanarPoint),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow {
                quantity,
                value,
                limit,
            } => write!(f, "overflow: {quantity} = {value:e} exceeds limit {limit:e}"),
            Error::NonConvergence {
                what,
                best,
                err_estimate,
            } => write!(
                f,
                "{what} did not converge (best estimate {best:e}, error estimate {err_estimate:e})"
            ),
            Error::DegenerateY(y) => write!(
                f,
                "y = ({}, {}) lies on a mirror line; the density is not defined there",
                y.c1, y.c2
            ),
            Error::DegenerateFirstCoordinate(y) => {
                write!(f, "y = ({}, {}) has first coordinate too close to zero", y.c1, y.c2)
            }
            Error::MirrorProximity { x, margin } => write!(
                f,
                "x = ({}, {}) is within {margin:e} of a mirror line",
                x.c1, x.c2
            ),
            Error::ChamberViolation(y) => write!(
                f,
                "y = ({}, {}) violates the chamber condition y1 > y2 > 0",
                y.c1, y.c2
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
