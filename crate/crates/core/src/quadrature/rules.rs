//! Gauss-Legendre and Gauss-Jacobi rule generation by the Golub-Welsch
//! algorithm: the nodes are the eigenvalues of the symmetric tridiagonal
//! Jacobi matrix of the recurrence coefficients, the weights come from the
//! first components of the normalized eigenvectors. The eigenproblem is
//! solved with the implicit-shift QL iteration.

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MAX_RULE_SIZE: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    Legendre,
    Jacobi { alpha: f64, beta: f64 },
}

/// One-dimensional Gauss rule on [-1, 1].
///
/// A `Jacobi { alpha, beta }` rule integrates f(u) (1-u)^alpha (1+u)^beta;
/// `Legendre` is the special case alpha = beta = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule1D {
    /// Applies the rule to f on [-1, 1] (weight included by the rule).
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule1D> {
    let mut rule = gauss_jacobi(n, 0.0, 0.0)?;
    rule.kind = RuleKind::Legendre;
    Ok(rule)
}

/// n-point Gauss-Jacobi rule for the weight (1-u)^alpha (1+u)^beta.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule1D> {
    if n == 0 || n > MAX_RULE_SIZE {
        return Err(Error::Domain(format!(
            "rule size must be in 1..={MAX_RULE_SIZE}, got {n}"
        )));
    }
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::Domain(format!(
            "Jacobi exponents must be > -1, got alpha={alpha}, beta={beta}"
        )));
    }

    // total mass of the weight: 2^{a+b+1} B(a+1, b+1)
    let mu0 = ((alpha + beta + 1.0) * 2.0f64.ln() + ln_gamma(alpha + 1.0)?
        + ln_gamma(beta + 1.0)?
        - ln_gamma(alpha + beta + 2.0)?)
        .exp();

    let mut diag = vec![0.0f64; n];
    let mut off = vec![0.0f64; n]; // off[j] couples rows j-1 and j, off[0] unused
    let ab = alpha + beta;
    diag[0] = (beta - alpha) / (ab + 2.0);
    for j in 1..n {
        let jf = j as f64;
        let den = 2.0 * jf + ab;
        diag[j] = (beta * beta - alpha * alpha) / (den * (den + 2.0));
        let b2 = if j == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            4.0 * jf * (jf + alpha) * (jf + beta) * (jf + ab)
                / (den * den * (den + 1.0) * (den - 1.0))
        };
        off[j] = b2.sqrt();
    }

    let mut first_row = vec![0.0f64; n];
    first_row[0] = 1.0;
    tql_implicit_shift(&mut diag, &mut off, &mut first_row)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let nodes: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let weights: Vec<f64> = order
        .iter()
        .map(|&i| mu0 * first_row[i] * first_row[i])
        .collect();

    Ok(QuadratureRule1D {
        nodes,
        weights,
        kind: RuleKind::Jacobi { alpha, beta },
    })
}

// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
// accumulating only the first row of the eigenvector matrix.
// diag: diagonal; off[1..n]: subdiagonal; z: first-row accumulator.
fn tql_implicit_shift(diag: &mut [f64], off: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    // shift the subdiagonal so that e[i] couples rows i and i+1
    let mut e = vec![0.0f64; n];
    for i in 1..n {
        e[i - 1] = off[i];
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::NonConvergence {
                    what: "tridiagonal QL eigenvalue iteration",
                    best: diag[l],
                    err_estimate: e[l].abs(),
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut broke_early = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // recover from underflow: drop the shift and restart
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    broke_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if broke_early {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

type RuleCache = Mutex<HashMap<(usize, u64, u64), Arc<QuadratureRule1D>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached Gauss-Jacobi rule lookup; rule generation is deterministic so the
/// cache is purely a speed-up.
pub fn cached_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Arc<QuadratureRule1D>> {
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(rule) = rule_cache().lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_jacobi(n, alpha, beta)?);
    rule_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| rule.clone());
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn legendre_one_point() {
        let rule = gauss_legendre(1).unwrap();
        assert_abs_diff_eq!(rule.nodes[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.weights[0], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn legendre_two_point() {
        let rule = gauss_legendre(2).unwrap();
        let x = 1.0 / 3.0f64.sqrt();
        assert_abs_diff_eq!(rule.nodes[0], -x, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.nodes[1], x, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.weights[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.weights[1], 1.0, epsilon = 1e-15);
        // exactness on u^2 and u^3
        assert_abs_diff_eq!(rule.apply(|u| u * u), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rule.apply(|u| u * u * u), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn legendre_degree_exactness() {
        // 16 points integrate u^30 exactly: 2/31
        let rule = gauss_legendre(16).unwrap();
        assert_relative_eq!(rule.apply(|u| u.powi(30)), 2.0 / 31.0, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_zero_exponents_is_legendre() {
        let gj = gauss_jacobi(7, 0.0, 0.0).unwrap();
        let gl = gauss_legendre(7).unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(gj.nodes[i], gl.nodes[i], epsilon = 1e-14);
            assert_abs_diff_eq!(gj.weights[i], gl.weights[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn jacobi_weight_sum_is_beta_integral() {
        // sum of weights = 2^{a+b+1} B(a+1, b+1)
        let (a, b) = (0.5, 1.5);
        let rule = gauss_jacobi(12, a, b).unwrap();
        let total: f64 = rule.weights.iter().sum();
        let expect = (2.0f64.powf(a + b + 1.0))
            * ((ln_gamma(a + 1.0).unwrap() + ln_gamma(b + 1.0).unwrap()
                - ln_gamma(a + b + 2.0).unwrap())
            .exp());
        assert_relative_eq!(total, expect, max_relative = 1e-13);
    }

    #[test]
    fn jacobi_half_exponent_moment() {
        // int_{-1}^{1} u^2 (1-u^2)^{1/2} du = pi/8
        let rule = gauss_jacobi(8, 0.5, 0.5).unwrap();
        assert_relative_eq!(
            rule.apply(|u| u * u),
            std::f64::consts::PI / 8.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn jacobi_singular_weight() {
        // alpha = beta = -0.5 (Chebyshev): sum of weights = pi
        let rule = gauss_jacobi(10, -0.5, -0.5).unwrap();
        let total: f64 = rule.weights.iter().sum();
        assert_relative_eq!(total, std::f64::consts::PI, max_relative = 1e-13);
    }

    #[test]
    fn nodes_sorted_weights_positive() {
        for &(n, a, b) in &[(5usize, 0.0, 0.0), (33, 2.5, -0.3), (128, -0.9, 4.0), (512, 1.0, 1.0)] {
            let rule = gauss_jacobi(n, a, b).unwrap();
            assert_eq!(rule.nodes.len(), n);
            for i in 1..n {
                assert!(rule.nodes[i] > rule.nodes[i - 1], "nodes not increasing");
            }
            for &w in &rule.weights {
                assert!(w > 0.0, "nonpositive weight in ({n},{a},{b})");
            }
            assert!(rule.nodes[0] > -1.0 && rule.nodes[n - 1] < 1.0);
        }
    }

    #[test]
    fn degree_exactness_weighted() {
        // int u^k (1-u)^a (1+u)^b du against直 recursive closed form via moments:
        // check exactness by comparing n and n+3 point rules on degree 2n-1.
        for &(n, a, b) in &[(6usize, 1.25, 0.0), (9, -0.5, 2.0)] {
            let deg = 2 * n - 1;
            let lo = gauss_jacobi(n, a, b).unwrap();
            let hi = gauss_jacobi(n + 3, a, b).unwrap();
            let f = |u: f64| (0.3 + u).powi(deg as i32);
            assert_relative_eq!(lo.apply(f), hi.apply(f), max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gauss_jacobi(0, 0.0, 0.0).is_err());
        assert!(gauss_jacobi(513, 0.0, 0.0).is_err());
        assert!(gauss_jacobi(4, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(4, 0.0, -1.5).is_err());
    }

    #[test]
    fn deterministic_generation() {
        let a = gauss_jacobi(41, 0.7, -0.2).unwrap();
        let b = gauss_jacobi(41, 0.7, -0.2).unwrap();
        assert_eq!(a, b);
    }
}
