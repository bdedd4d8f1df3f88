//! Gamma-family utilities and the normalized modified Bessel function of the
//! first kind, evaluated through three independent routes: the power series,
//! a periodic integral in the angle, and a two-dimensional integral over the
//! unit disk. The routes are cross-checked against each other in the tests
//! and in the validation suite.

use crate::error::{Error, Result};
use crate::point::PlanarPoint;
use crate::quadrature::rules::cached_jacobi;

/// Largest |t| accepted by the Bessel series; partial sums reach magnitude
/// ~e^t and evaluation is kept in plain f64 scale.
pub const T_MAX: f64 = 600.0;

/// Truncation control for the Bessel power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Relative tolerance on the truncated tail.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::Domain(format!("rel_tol must be > 0, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be >= 1".into()));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

/// Real order of a modified Bessel function, restricted to nu > -1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= -0.5 {
            return Err(Error::Domain(format!("Bessel order must be > -1/2, got {nu}")));
        }
        Ok(BesselOrder { nu })
    }

    pub fn get(self) -> f64 {
        self.nu
    }
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos coefficients for g = 7, 9 terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// zeta(2), zeta(3), ..., zeta(40) for the series of ln Gamma(1+s).
const ZETA_2_40: [f64; 39] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_369_9,
    1.017_343_061_984_449_1,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818_1,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308_05,
    1.000_122_713_347_578_49,
    1.000_061_248_135_058_705,
    1.000_030_588_236_307_02,
    1.000_015_282_259_408_652,
    1.000_007_637_197_637_9,
    1.000_003_817_293_265,
    1.000_001_908_212_716_554,
    1.000_000_953_962_033_873,
    1.000_000_476_932_986_787_8,
    1.000_000_238_450_502_727_7,
    1.000_000_119_219_925_965_3,
    1.000_000_059_608_189_051_3,
    1.000_000_029_803_503_514_7,
    1.000_000_014_901_554_828_4,
    1.000_000_007_450_711_789_8,
    1.000_000_003_725_334_024_8,
    1.000_000_001_862_659_723_5,
    1.000_000_000_931_327_432_4,
    1.000_000_000_465_662_906_5,
    1.000_000_000_232_831_183_4,
    1.000_000_000_116_415_501_7,
    1.000_000_000_058_207_720_9,
    1.000_000_000_029_103_850_4,
    1.000_000_000_014_551_921_9,
    1.000_000_000_007_275_959_8,
    1.000_000_000_003_637_979_5,
    1.000_000_000_001_818_989_7,
    1.000_000_000_000_909_494_8,
];

// ln Gamma(1+s) for |s| <= 0.3, by the zeta series. Keeps full relative
// accuracy near the zeros of ln Gamma at x = 1 and x = 2, where the Lanczos
// form loses digits to cancellation.
fn ln_gamma_1p(s: f64) -> f64 {
    debug_assert!(s.abs() <= 0.3 + 1e-12);
    let mut total = -EULER_GAMMA * s;
    let mut power = s;
    for (i, zeta) in ZETA_2_40.iter().enumerate() {
        let j = i + 2;
        power *= s;
        let term = if j % 2 == 0 {
            zeta / j as f64 * power
        } else {
            -zeta / j as f64 * power
        };
        total += term;
        if term.abs() < 1e-18 * total.abs().max(1e-300) {
            break;
        }
    }
    total
}

/// Natural logarithm of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return LN_PI - (std::f64::consts::PI * x).sin().ln() - ln_gamma_positive(1.0 - x);
    }
    if (x - 1.0).abs() <= 0.3 {
        return ln_gamma_1p(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.3 {
        return ln_gamma_1p(x - 2.0) + (x - 1.0).ln();
    }
    let xm = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm + 0.5) * t.ln() - t + acc.ln()
}

/// Normalized modified Bessel function of the first kind,
/// I_nu(t) = Gamma(nu+1) * sum_n (t/2)^{2n} / (n! Gamma(n+nu+1)),
/// normalized so that I_nu(0) = 1. Power-series route.
pub fn bessel_i_norm(nu: BesselOrder, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(ctrl.rel_tol > 0.0) || ctrl.max_terms == 0 {
        return Err(Error::Domain("invalid SeriesControl".into()));
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("t must be finite, got {t}")));
    }
    if t.abs() > T_MAX {
        return Err(Error::Overflow {
            quantity: "bessel argument |t|",
            value: t.abs(),
            limit: T_MAX,
        });
    }
    let nu = nu.get();
    let q = t * t / 4.0; // (t/2)^2, the series is even in t
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut small_streak = 0;
    for n in 0..ctrl.max_terms {
        let nf = n as f64;
        term *= q / ((nf + 1.0) * (nf + 1.0 + nu));
        let yv = term - comp;
        let tv = sum + yv;
        comp = (tv - sum) - yv;
        sum = tv;
        if term.abs() <= ctrl.rel_tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_i_norm series",
        best: sum,
        err_estimate: (term / sum).abs(),
    })
}

/// Normalized modified Bessel function through the angular integral
/// I_nu(t) = Gamma(nu+1) / (2 sqrt(pi) Gamma(nu+1/2)) *
///           int_0^{2pi} e^{t cos(theta)} |sin(theta)|^{2 nu} dtheta,
/// for nu > 0. Uses the periodic trapezoid rule for nu >= 1/2 and a
/// Gauss-Jacobi rule in cos(theta) for smaller orders.
pub fn bessel_i_norm_theta(nu: BesselOrder, t: f64) -> Result<f64> {
    let v = nu.get();
    if v <= 0.0 {
        return Err(Error::Domain(format!("theta route requires nu > 0, got {v}")));
    }
    if t.abs() > T_MAX {
        return Err(Error::Overflow {
            quantity: "bessel argument |t|",
            value: t.abs(),
            limit: T_MAX,
        });
    }
    let t = t.abs();
    let prefactor = (ln_gamma_positive(v + 1.0) - ln_gamma_positive(v + 0.5)).exp()
        / (2.0 * std::f64::consts::PI.sqrt());
    let tol = 5e-12;

    if v >= 0.5 {
        // periodic trapezoid, doubling the grid; the integrand is only
        // C^{floor(2 nu)} at theta = 0 and pi, so for orders near 1/2 the
        // grid cap can be reached first and the cos-substituted rule below
        // finishes the job
        let mut n = 64usize;
        let mut prev = trapezoid_theta(v, t, n);
        while n < (1 << 21) {
            n *= 2;
            let cur = trapezoid_theta(v, t, n);
            if (cur - prev).abs() <= tol * (1.0 + cur.abs()) {
                return Ok(prefactor * cur);
            }
            prev = cur;
        }
    }

    // c = cos(theta): int_0^{2pi} = 2 int_{-1}^{1} e^{t c} (1-c^2)^{nu-1/2} dc
    let mut prev = f64::NAN;
    let mut delta = f64::INFINITY;
    for &n in &[16usize, 32, 64, 128, 256, 512] {
        let rule = cached_jacobi(n, v - 0.5, v - 0.5)?;
        let mut s = 0.0;
        for (c, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            s += w * (t * c).exp();
        }
        let cur = 2.0 * s;
        delta = (cur - prev).abs();
        if delta <= tol * (1.0 + cur.abs()) {
            return Ok(prefactor * cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        what: "bessel_i_norm_theta",
        best: prefactor * prev,
        err_estimate: delta / (1.0 + prev.abs()),
    })
}

fn trapezoid_theta(v: f64, t: f64, n: usize) -> f64 {
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let mut s = 0.0;
    for j in 0..n {
        let theta = j as f64 * h;
        let (sin_t, cos_t) = theta.sin_cos();
        s += (t * cos_t).exp() * sin_t.abs().powf(2.0 * v);
    }
    s * h
}

/// Normalized modified Bessel function through the disk integral
/// I_nu(|z|) = (nu/pi) * int_{|y|<=1} e^{<z,y>} (1-|y|^2)^{nu-1} dy,
/// for nu > 0, by tensor quadrature in polar coordinates: Gauss-Jacobi in
/// the radial variable (absorbing the (1-s^2)^{nu-1} endpoint behaviour)
/// and the periodic trapezoid rule in the angle.
pub fn bessel_i_norm_disk(nu: BesselOrder, z: PlanarPoint) -> Result<f64> {
    let v = nu.get();
    if v <= 0.0 {
        return Err(Error::Domain(format!("disk route requires nu > 0, got {v}")));
    }
    if z.norm() > T_MAX {
        return Err(Error::Overflow {
            quantity: "bessel argument |z|",
            value: z.norm(),
            limit: T_MAX,
        });
    }
    let tol = 1e-12;
    let mut prev = f64::NAN;
    let mut n_radial = 16usize;
    let mut n_theta = 64usize;
    loop {
        let cur = disk_tensor(v, z, n_radial, n_theta)?;
        if (cur - prev).abs() <= tol * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        if n_radial >= 512 {
            return Err(Error::NonConvergence {
                what: "bessel_i_norm_disk",
                best: cur,
                err_estimate: (cur - prev).abs() / (1.0 + cur.abs()),
            });
        }
        prev = cur;
        n_radial *= 2;
        n_theta *= 2;
    }
}

fn disk_tensor(v: f64, z: PlanarPoint, n_radial: usize, n_theta: usize) -> Result<f64> {
    // radial substitution s = sqrt((1+t)/2):
    //   int_0^1 g(s) s (1-s^2)^{nu-1} ds = 2^{-nu-1} sum_i w_i g(s_i)
    // over a Jacobi(alpha = nu-1, beta = 0) rule in t.
    let rule = cached_jacobi(n_radial, v - 1.0, 0.0)?;
    let h = 2.0 * std::f64::consts::PI / n_theta as f64;
    let mut total = 0.0;
    for (ti, wi) in rule.nodes.iter().zip(rule.weights.iter()) {
        let s = ((1.0 + ti) / 2.0).sqrt();
        let mut ang = 0.0;
        for j in 0..n_theta {
            let theta = j as f64 * h;
            let (sin_t, cos_t) = theta.sin_cos();
            ang += (s * (z.c1 * cos_t + z.c2 * sin_t)).exp();
        }
        total += wi * ang * h;
    }
    Ok(v / std::f64::consts::PI * 2.0f64.powf(-v - 1.0) * total)
}

/// Exact derivative of t -> I_nu(sqrt(t/2)):
///   d/dt I_nu(sqrt(t/2)) = I_{nu+1}(sqrt(t/2)) / (8 (nu+1)).
pub fn bessel_sqrt_halves_derivative(nu: BesselOrder, t: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("requires t > 0, got {t}")));
    }
    let v = nu.get();
    let shifted = BesselOrder::new(v + 1.0)?;
    let value = bessel_i_norm(shifted, (t / 2.0).sqrt(), ctrl)?;
    Ok(value / (8.0 * (v + 1.0)))
}
