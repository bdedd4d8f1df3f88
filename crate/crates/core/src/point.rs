/// A point of the plane R^2 in the canonical basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPoint {
    pub c1: f64,
    pub c2: f64,
}

impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { c1: 0.0, c2: 0.0 };

    pub fn new(c1: f64, c2: f64) -> Self {
        PlanarPoint { c1, c2 }
    }

    pub fn dot(self, other: PlanarPoint) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2
    }

    pub fn norm_sq(self) -> f64 {
        self.c1 * self.c1 + self.c2 * self.c2
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }

    /// Coordinate swap, the reflection across the line x1 = x2.
    pub fn swapped(self) -> PlanarPoint {
        PlanarPoint::new(self.c2, self.c1)
    }
}

impl From<(f64, f64)> for PlanarPoint {
    fn from((c1, c2): (f64, f64)) -> Self {
        PlanarPoint { c1, c2 }
    }
}

impl std::ops::Add for PlanarPoint {
    type Output = PlanarPoint;
    fn add(self, rhs: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl std::ops::Sub for PlanarPoint {
    type Output = PlanarPoint;
    fn sub(self, rhs: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl std::ops::Mul<PlanarPoint> for f64 {
    type Output = PlanarPoint;
    fn mul(self, rhs: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(self * rhs.c1, self * rhs.c2)
    }
}

impl std::ops::Neg for PlanarPoint {
    type Output = PlanarPoint;
    fn neg(self) -> PlanarPoint {
        PlanarPoint::new(-self.c1, -self.c2)
    }
}
