//! Adaptive integration of a weighted integrand over an implicitly-defined
//! plane region inside [-1,1]^2. Cells whose sample points all lie outside
//! the region contribute zero, cells whose corners disagree on membership
//! are subdivided, and cells that still straddle the boundary at the depth
//! floor are integrated with the boundary located by bisection along each
//! inner line of the tensor rule.

use super::rules::{cached_jacobi, QuadratureRule1D};
use super::EvalResult;
use crate::gbf::Multiplicity;

/// Axis-aligned rectangle [u0, u1] x [v0, v1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Rect { u0, u1, v0, v1 }
    }

    pub fn square() -> Self {
        Rect::new(-1.0, 1.0, -1.0, 1.0)
    }

    fn intersect(&self, other: &Rect) -> Rect {
        Rect {
            u0: self.u0.max(other.u0),
            u1: self.u1.min(other.u1),
            v0: self.v0.max(other.v0),
            v1: self.v1.min(other.v1),
        }
    }
}

/// A plane region {g >= 0} inside a bounding box contained in [-1,1]^2.
pub struct ImplicitRegion2D<'a> {
    pub bounds: Rect,
    /// Boundary function; the region is {(u,v) : g(u,v) >= 0}.
    pub boundary: &'a dyn Fn(f64, f64) -> f64,
}

impl ImplicitRegion2D<'_> {
    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.bounds.u0
            && u <= self.bounds.u1
            && v >= self.bounds.v0
            && v <= self.bounds.v1
            && (self.boundary)(u, v) >= 0.0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RegionOptions {
    /// Total cell budget for the adaptive subdivision.
    pub max_cells: usize,
    /// Per-cell tensor rule sizes, escalated until the cell settles.
    pub ladder: [usize; 4],
    /// Depth below which straddling cells are split rather than resolved.
    pub split_depth: u32,
}

impl Default for RegionOptions {
    fn default() -> Self {
        RegionOptions {
            max_cells: 4096,
            ladder: [8, 16, 32, 64],
            split_depth: 3,
        }
    }
}

/// Adaptive weighted integral of f over region /\ [-1,1]^2 with the weight
/// (1-u^2)^{k1-1} (1-v^2)^{k2-1}.
pub fn integrate_region(
    f: impl Fn(f64, f64) -> f64,
    region: &ImplicitRegion2D<'_>,
    k: &Multiplicity,
    tol: f64,
) -> EvalResult {
    integrate_region_opts(f, region, k, tol, &RegionOptions::default())
}

pub fn integrate_region_opts(
    f: impl Fn(f64, f64) -> f64,
    region: &ImplicitRegion2D<'_>,
    k: &Multiplicity,
    tol: f64,
    opts: &RegionOptions,
) -> EvalResult {
    let root = region.bounds.intersect(&Rect::square());
    if root.u0 >= root.u1 || root.v0 >= root.v1 || !(tol > 0.0) {
        return EvalResult::exact(0.0);
    }
    let mut stack: Vec<(Rect, u32)> = vec![(root, 0)];
    let mut cells_used = 1usize;
    let mut value = 0.0;
    let mut err_abs = 0.0;
    let mut evals = 0u64;
    let mut budget_hit = false;

    while let Some((cell, depth)) = stack.pop() {
        match classify(region, &cell, &mut evals) {
            Class::Outside => {}
            Class::Inside => {
                let cell_tol = tol / 512.0;
                let (v, e) = cell_ladder(&f, k, &cell, cell_tol, &opts.ladder, &mut evals);
                value += v;
                err_abs += e;
            }
            Class::Straddle => {
                let can_split = cells_used + 4 <= opts.max_cells && depth < 26;
                if depth < opts.split_depth && can_split {
                    split_cell(&cell, depth, &mut stack);
                    cells_used += 4;
                } else {
                    let cell_tol = tol / 512.0;
                    let (v, e, settled) =
                        straddle_ladder(&f, region, k, &cell, cell_tol, &opts.ladder, &mut evals);
                    if !settled && can_split {
                        split_cell(&cell, depth, &mut stack);
                        cells_used += 4;
                    } else {
                        if !settled {
                            budget_hit = true;
                        }
                        value += v;
                        err_abs += e;
                    }
                }
            }
        }
    }

    let err_estimate = err_abs / (1.0 + value.abs());
    EvalResult {
        value,
        err_estimate,
        converged: !budget_hit && err_estimate <= tol,
        evaluations: evals,
    }
}

enum Class {
    Inside,
    Outside,
    Straddle,
}

// Corners plus a 5x5 lattice of interior sample points.
fn classify(region: &ImplicitRegion2D<'_>, cell: &Rect, evals: &mut u64) -> Class {
    let mut inside = 0usize;
    let mut total = 0usize;
    let probe = |u: f64, v: f64, inside: &mut usize, total: &mut usize| {
        *total += 1;
        if region.contains(u, v) {
            *inside += 1;
        }
    };
    for &u in &[cell.u0, cell.u1] {
        for &v in &[cell.v0, cell.v1] {
            probe(u, v, &mut inside, &mut total);
        }
    }
    for i in 0..5 {
        let u = cell.u0 + (cell.u1 - cell.u0) * (i as f64 + 0.5) / 5.0;
        for j in 0..5 {
            let v = cell.v0 + (cell.v1 - cell.v0) * (j as f64 + 0.5) / 5.0;
            probe(u, v, &mut inside, &mut total);
        }
    }
    *evals += total as u64;
    if inside == total {
        Class::Inside
    } else if inside == 0 {
        Class::Outside
    } else {
        Class::Straddle
    }
}

fn split_cell(cell: &Rect, depth: u32, stack: &mut Vec<(Rect, u32)>) {
    let um = 0.5 * (cell.u0 + cell.u1);
    let vm = 0.5 * (cell.v0 + cell.v1);
    // fixed child order keeps the reduction deterministic
    stack.push((Rect::new(cell.u0, um, cell.v0, vm), depth + 1));
    stack.push((Rect::new(um, cell.u1, cell.v0, vm), depth + 1));
    stack.push((Rect::new(cell.u0, um, vm, cell.v1), depth + 1));
    stack.push((Rect::new(um, cell.u1, vm, cell.v1), depth + 1));
}

// Nodes and weights in physical coordinates for int_a^b phi(u) (1-u^2)^kexp du.
// When the interval touches u = +-1 the singular factor goes into a Jacobi
// weight; the smooth complement is folded into the returned weights.
fn axis_rule(a: f64, b: f64, kexp: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    const EDGE: f64 = 1e-14;
    let touches_hi = (b - 1.0).abs() < EDGE;
    let touches_lo = (a + 1.0).abs() < EDGE;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let (alpha, beta) = (
        if touches_hi { kexp } else { 0.0 },
        if touches_lo { kexp } else { 0.0 },
    );
    let rule = cached_jacobi(n, alpha, beta).expect("axis rule generation");
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (&t, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let u = mid + half * t;
        // mapped Jacobi weight supplies (b-u)^alpha (u-a)^beta scaled by half^(alpha+beta);
        // multiply the complement factors of (1-u^2)^kexp not already absorbed
        let mut wphys = w * half.powf(alpha + beta + 1.0);
        if touches_hi && touches_lo {
            // weight (1-u)^k (1+u)^k fully absorbed
        } else if touches_hi {
            wphys *= (1.0 + u).powf(kexp);
        } else if touches_lo {
            wphys *= (1.0 - u).powf(kexp);
        } else {
            wphys *= (1.0 - u * u).powf(kexp);
        }
        nodes.push(u);
        weights.push(wphys);
    }
    (nodes, weights)
}

fn tensor_cell(
    f: &impl Fn(f64, f64) -> f64,
    k: &Multiplicity,
    cell: &Rect,
    n: usize,
    evals: &mut u64,
) -> f64 {
    let (un, uw) = axis_rule(cell.u0, cell.u1, k.k1() - 1.0, n);
    let (vn, vw) = axis_rule(cell.v0, cell.v1, k.k2() - 1.0, n);
    let mut total = 0.0;
    for (u, wu) in un.iter().zip(uw.iter()) {
        let mut row = 0.0;
        for (v, wv) in vn.iter().zip(vw.iter()) {
            row += wv * f(*u, *v);
        }
        total += wu * row;
    }
    *evals += (n * n) as u64;
    total
}

fn cell_ladder(
    f: &impl Fn(f64, f64) -> f64,
    k: &Multiplicity,
    cell: &Rect,
    cell_tol: f64,
    ladder: &[usize],
    evals: &mut u64,
) -> (f64, f64) {
    let mut prev = tensor_cell(f, k, cell, ladder[0], evals);
    let mut delta = f64::INFINITY;
    for &n in &ladder[1..] {
        let cur = tensor_cell(f, k, cell, n, evals);
        delta = (cur - prev).abs();
        prev = cur;
        if delta <= cell_tol {
            break;
        }
    }
    (prev, delta.min(prev.abs()))
}

// Straddling cell at the depth floor. The inner profile
//   F(u) = int over {v in cell : g(u,v) >= 0} of the weighted integrand
// has kinks exactly where the boundary curve crosses the cell's horizontal
// edges, so those u are located first by bisection and the outer rule runs
// panel by panel; inside each panel the v-intervals are located by scanning
// and bisection along the vertical line.
fn straddle_cell(
    f: &impl Fn(f64, f64) -> f64,
    region: &ImplicitRegion2D<'_>,
    k: &Multiplicity,
    cell: &Rect,
    n: usize,
    evals: &mut u64,
) -> f64 {
    let g = region.boundary;
    // u-breakpoints from boundary crossings of the two horizontal edges
    let mut breaks = vec![cell.u0, cell.u1];
    let scan_edges = 2 * n + 1;
    for &v_edge in &[cell.v0, cell.v1] {
        let mut prev_u = cell.u0;
        let mut prev_g = g(prev_u, v_edge);
        *evals += 1;
        for j in 1..scan_edges {
            let u = cell.u0 + (cell.u1 - cell.u0) * j as f64 / (scan_edges - 1) as f64;
            let gu = g(u, v_edge);
            *evals += 1;
            if (prev_g >= 0.0) != (gu >= 0.0) {
                let (mut lo, mut hi) = (prev_u, u);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let gm = g(mid, v_edge);
                    *evals += 1;
                    if (gm >= 0.0) == (prev_g >= 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 * (1.0 + hi.abs()) {
                        break;
                    }
                }
                breaks.push(0.5 * (lo + hi));
            }
            prev_u = u;
            prev_g = gu;
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-13 * (1.0 + b.abs()));

    let inner = cached_jacobi(n, 0.0, 0.0).expect("inner rule");
    let scan = 2 * n + 1;
    let mut total = 0.0;
    for panel in breaks.windows(2) {
        let (pa, pb) = (panel[0], panel[1]);
        if pb - pa <= 1e-14 {
            continue;
        }
        let (un, uw) = axis_rule(pa, pb, k.k1() - 1.0, n);
        for (u, wu) in un.iter().zip(uw.iter()) {
            let u = *u;
            // scan g(u, .) for sign changes along the vertical line
            let mut vs = Vec::with_capacity(scan);
            let mut gs = Vec::with_capacity(scan);
            for j in 0..scan {
                let v = cell.v0 + (cell.v1 - cell.v0) * j as f64 / (scan - 1) as f64;
                vs.push(v);
                gs.push(g(u, v));
            }
            *evals += scan as u64;
            let mut row = 0.0;
            let mut j = 0;
            while j < scan {
                if gs[j] >= 0.0 {
                    let lo = if j == 0 {
                        vs[0]
                    } else {
                        bisect(g, u, vs[j - 1], vs[j], evals)
                    };
                    let mut jend = j;
                    while jend + 1 < scan && gs[jend + 1] >= 0.0 {
                        jend += 1;
                    }
                    let hi = if jend == scan - 1 {
                        vs[scan - 1]
                    } else {
                        bisect(g, u, vs[jend + 1], vs[jend], evals)
                    };
                    if hi > lo {
                        row += segment_integral(f, k, u, lo, hi, &inner, evals);
                    }
                    j = jend + 1;
                } else {
                    j += 1;
                }
            }
            total += wu * row;
        }
    }
    total
}

// Root of g(u, .) between v_out (g < 0) and v_in (g >= 0).
fn bisect(g: &dyn Fn(f64, f64) -> f64, u: f64, mut v_out: f64, mut v_in: f64, evals: &mut u64) -> f64 {
    for _ in 0..60 {
        let mid = 0.5 * (v_out + v_in);
        if g(u, mid) >= 0.0 {
            v_in = mid;
        } else {
            v_out = mid;
        }
        *evals += 1;
        if (v_in - v_out).abs() < 1e-15 * (1.0 + v_in.abs()) {
            break;
        }
    }
    v_in
}

fn segment_integral(
    f: &impl Fn(f64, f64) -> f64,
    k: &Multiplicity,
    u: f64,
    lo: f64,
    hi: f64,
    inner: &QuadratureRule1D,
    evals: &mut u64,
) -> f64 {
    const EDGE: f64 = 1e-14;
    let kexp = k.k2() - 1.0;
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    // use a Jacobi rule when the segment reaches the singular edges +-1
    let touches_hi = (hi - 1.0).abs() < EDGE;
    let touches_lo = (lo + 1.0).abs() < EDGE;
    if touches_hi || touches_lo {
        let rule = cached_jacobi(
            inner.nodes.len(),
            if touches_hi { kexp } else { 0.0 },
            if touches_lo { kexp } else { 0.0 },
        )
        .expect("segment rule");
        let mut s = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
            let v = mid + half * t;
            let mut wphys = w
                * half.powf(
                    1.0 + if touches_hi { kexp } else { 0.0 } + if touches_lo { kexp } else { 0.0 },
                );
            if touches_hi && !touches_lo {
                wphys *= (1.0 + v).powf(kexp);
            } else if touches_lo && !touches_hi {
                wphys *= (1.0 - v).powf(kexp);
            }
            s += wphys * f(u, v);
        }
        *evals += rule.nodes.len() as u64;
        s
    } else {
        let mut s = 0.0;
        for (&t, &w) in inner.nodes.iter().zip(inner.weights.iter()) {
            let v = mid + half * t;
            s += w * half * (1.0 - v * v).powf(kexp) * f(u, v);
        }
        *evals += inner.nodes.len() as u64;
        s
    }
}

fn straddle_ladder(
    f: &impl Fn(f64, f64) -> f64,
    region: &ImplicitRegion2D<'_>,
    k: &Multiplicity,
    cell: &Rect,
    cell_tol: f64,
    ladder: &[usize],
    evals: &mut u64,
) -> (f64, f64, bool) {
    let mut prev = straddle_cell(f, region, k, cell, ladder[0], evals);
    let mut delta = f64::INFINITY;
    for &n in &ladder[1..] {
        let cur = straddle_cell(f, region, k, cell, n, evals);
        delta = (cur - prev).abs();
        prev = cur;
        if delta <= cell_tol {
            return (prev, delta, true);
        }
    }
    (prev, delta, false)
}
