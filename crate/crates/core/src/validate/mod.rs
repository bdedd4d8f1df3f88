//! Cross-representation validation harness: every quantity is computed
//! along at least two independent routes on seeded random inputs, and the
//! outcomes are collected into a machine-readable report.

pub mod report;
pub mod rng;

use crate::dunkl::{
    alternating_polys, apply_t1, density_l, dunkl_kernel, dunkl_kernel_prop2, eigen_residual,
    gbf_combination, group_elements, shift_constants, FDControl, KernelEvaluator,
};
use crate::error::Result;
use crate::gbf::{
    abc, bracket, convex_hull_contains, convex_hull_polygon, density_h, density_h_region,
    dh_density, dh_measure_density, gbf, gt_pattern_contains, gt_pattern_volume, normalizing_c,
    z_poly, GbfLaplace, Multiplicity,
};
use crate::point::PlanarPoint;
use crate::quadrature::integrate_uv_weighted;
use crate::specfun::{
    bessel_i_norm, bessel_i_norm_disk, bessel_i_norm_theta, bessel_sqrt_halves_derivative,
    ln_gamma, BesselOrder, SeriesControl,
};
use rng::Xorshift64Star;
use std::collections::BTreeMap;

/// The validation suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Bessel,
    Gbf,
    Laplace,
    Kernel,
    Dh,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Bessel, Suite::Gbf, Suite::Laplace, Suite::Kernel, Suite::Dh];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bessel => "bessel",
            Suite::Gbf => "gbf",
            Suite::Laplace => "laplace",
            Suite::Kernel => "kernel",
            Suite::Dh => "dh",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "bessel" => Some(Suite::Bessel),
            "gbf" => Some(Suite::Gbf),
            "laplace" => Some(Suite::Laplace),
            "kernel" => Some(Suite::Kernel),
            "dh" => Some(Suite::Dh),
            _ => None,
        }
    }

    fn default_tolerance(&self) -> f64 {
        match self {
            Suite::Bessel => 1e-7,
            Suite::Gbf => 1e-10,
            Suite::Laplace => 1e-5,
            Suite::Kernel => 2e-5,
            Suite::Dh => 1e-6,
        }
    }

    fn default_samples(&self) -> usize {
        match self {
            Suite::Bessel => 100,
            Suite::Gbf => 20,
            Suite::Laplace => 2,
            Suite::Kernel => 2,
            Suite::Dh => 4,
        }
    }
}

/// Configuration of a validation run. The same configuration always yields
/// the same report, byte for byte.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Per-suite tolerance overrides.
    pub tolerances: BTreeMap<Suite, f64>,
    /// Per-suite sample-count overrides.
    pub sample_counts: BTreeMap<Suite, usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64, suites: &[Suite]) -> Self {
        let mut sorted: Vec<Suite> = suites.to_vec();
        sorted.sort();
        sorted.dedup();
        SuiteConfig {
            seed,
            suites: sorted,
            tolerances: BTreeMap::new(),
            sample_counts: BTreeMap::new(),
        }
    }

    pub fn all(seed: u64) -> Self {
        SuiteConfig::new(seed, &Suite::ALL)
    }

    fn tolerance(&self, suite: Suite) -> f64 {
        *self
            .tolerances
            .get(&suite)
            .unwrap_or(&suite.default_tolerance())
    }

    fn samples(&self, suite: Suite) -> usize {
        *self
            .sample_counts
            .get(&suite)
            .unwrap_or(&suite.default_samples())
    }
}

/// Outcome of a single two-route comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Names of the two representations compared; always distinct.
    pub route_pair: (String, String),
}

fn record(
    name: impl Into<String>,
    inputs: String,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
    route_lhs: &str,
    route_rhs: &str,
) -> CheckRecord {
    let abs_err = (lhs - rhs).abs();
    let scale = lhs.abs().max(rhs.abs());
    let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
    CheckRecord {
        name: name.into(),
        inputs,
        lhs,
        rhs,
        abs_err,
        rel_err,
        tolerance,
        passed: abs_err <= tolerance || rel_err <= tolerance,
        route_pair: (route_lhs.to_string(), route_rhs.to_string()),
    }
}

struct SampleStream {
    rng: Xorshift64Star,
}

impl SampleStream {
    fn new(seed: u64) -> Self {
        SampleStream {
            rng: Xorshift64Star::new(seed),
        }
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.next_unit()
    }

    /// k_i in [0.6, 2.5]
    fn multiplicity(&mut self) -> Multiplicity {
        Multiplicity::new(self.uniform(0.6, 2.5), self.uniform(0.6, 2.5)).expect("valid k range")
    }

    /// |x| <= 2
    fn point_x(&mut self) -> PlanarPoint {
        loop {
            let p = PlanarPoint::new(self.uniform(-2.0, 2.0), self.uniform(-2.0, 2.0));
            if p.norm() <= 2.0 {
                return p;
            }
        }
    }

    /// |y| in [0.5, 2.5], regular with margin 0.05:
    /// min(|y1|, |y2|, ||y1| - |y2||) >= 0.05 |y|
    fn point_y_regular(&mut self) -> PlanarPoint {
        loop {
            let p = PlanarPoint::new(self.uniform(-2.5, 2.5), self.uniform(-2.5, 2.5));
            let n = p.norm();
            if !(0.5..=2.5).contains(&n) {
                continue;
            }
            let margin = 0.05 * n;
            if p.c1.abs() >= margin
                && p.c2.abs() >= margin
                && (p.c1.abs() - p.c2.abs()).abs() >= margin
            {
                return p;
            }
        }
    }

    /// off-mirror x for difference quotients
    fn point_x_off_mirror(&mut self) -> PlanarPoint {
        loop {
            let p = self.point_x();
            let margin = 1e-2 * (1.0 + p.norm());
            if p.c1.abs() >= margin
                && p.c2.abs() >= margin
                && (p.c1 - p.c2).abs() >= margin
                && (p.c1 + p.c2).abs() >= margin
            {
                return p;
            }
        }
    }

    /// interior point of co(y)
    fn point_in_hull(&mut self, y: PlanarPoint) -> PlanarPoint {
        let m = y.c1.abs().max(y.c2.abs());
        loop {
            let z = PlanarPoint::new(self.uniform(-m, m), self.uniform(-m, m));
            if convex_hull_contains(y, 0.999 * z) && z.norm() < 0.95 * y.norm() {
                return z;
            }
        }
    }

    /// point outside co(y) but inside an enclosing box
    fn point_outside_hull(&mut self, y: PlanarPoint) -> PlanarPoint {
        let m = 1.6 * (y.c1.abs() + y.c2.abs());
        loop {
            let z = PlanarPoint::new(self.uniform(-m, m), self.uniform(-m, m));
            if !convex_hull_contains(y, z) {
                return z;
            }
        }
    }
}

/// Runs the enabled suites and returns all records, ordered by check name
/// and input index. Individual check failures never abort the run; numeric
/// errors are recorded as failed checks with NaN values.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckRecord> {
    let mut records: Vec<CheckRecord> = Vec::new();
    for &suite in &config.suites {
        let tol = config.tolerance(suite);
        let samples = config.samples(suite);
        // distinct deterministic stream per suite
        let seed = config
            .seed
            .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(1 + suite as u64));
        let mut stream = SampleStream::new(seed);
        let result = match suite {
            Suite::Bessel => bessel_suite(&mut records, &mut stream, tol, samples),
            Suite::Gbf => gbf_suite(&mut records, &mut stream, tol, samples),
            Suite::Laplace => laplace_suite(&mut records, &mut stream, tol, samples),
            Suite::Kernel => kernel_suite(&mut records, &mut stream, tol, samples),
            Suite::Dh => dh_suite(&mut records, &mut stream, tol, samples),
        };
        if let Err(e) = result {
            records.push(record(
                format!("{}.suite_error", suite.name()),
                format!("{e}"),
                f64::NAN,
                f64::NAN,
                tol,
                "evaluation",
                "expected",
            ));
        }
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));
    records
}

fn bessel_suite(
    records: &mut Vec<CheckRecord>,
    stream: &mut SampleStream,
    tol: f64,
    samples: usize,
) -> Result<()> {
    let ctrl = SeriesControl::default();
    for i in 0..samples {
        let nu = stream.uniform(0.1, 5.0);
        let t = stream.uniform(0.0, 20.0);
        let order = BesselOrder::new(nu)?;
        let series = bessel_i_norm(order, t, &ctrl)?;
        let theta = bessel_i_norm_theta(order, t)?;
        let angle = stream.uniform(0.0, std::f64::consts::TAU);
        let z = PlanarPoint::new(t * angle.cos(), t * angle.sin());
        let disk = bessel_i_norm_disk(order, z)?;
        let inputs = format!("nu={nu:.6e} t={t:.6e}");
        records.push(record(
            format!("bessel_i_norm_theta.vs_series[{i:03}]"),
            inputs.clone(),
            series,
            theta,
            tol,
            "bessel_i_norm series",
            "bessel_i_norm_theta angular integral",
        ));
        records.push(record(
            format!("bessel_i_norm_disk.vs_series[{i:03}]"),
            inputs.clone(),
            series,
            disk,
            tol,
            "bessel_i_norm series",
            "bessel_i_norm_disk polar integral",
        ));
        records.push(record(
            format!("bessel_i_norm_disk.vs_theta[{i:03}]"),
            inputs,
            theta,
            disk,
            tol,
            "bessel_i_norm_theta angular integral",
            "bessel_i_norm_disk polar integral",
        ));
    }
    // derivative rule against a central finite difference
    for (i, &nu) in [0.5f64, 1.5, 3.0].iter().enumerate() {
        let order = BesselOrder::new(nu)?;
        let t = 6.0 + i as f64;
        let h = 1e-4;
        let f = |tt: f64| bessel_i_norm(order, (tt / 2.0).sqrt(), &ctrl);
        let fd = (f(t + h)? - f(t - h)?) / (2.0 * h);
        let exact = bessel_sqrt_halves_derivative(order, t, &ctrl)?;
        records.push(record(
            format!("bessel_sqrt_halves_derivative.fd[{i:03}]"),
            format!("nu={nu} t={t} h={h:e}"),
            fd,
            exact,
            tol,
            "finite-difference",
            "shifted-order identity",
        ));
    }
    // ln_gamma against the factorial recurrence
    for i in 0..5usize {
        let x = stream.uniform(0.2, 60.0);
        let lhs = ln_gamma(x + 1.0)?;
        let rhs = ln_gamma(x)? + x.ln();
        records.push(record(
            format!("ln_gamma.recurrence[{i:03}]"),
            format!("x={x:.6e}"),
            lhs,
            rhs,
            1e-12,
            "ln_gamma(x+1)",
            "ln_gamma(x)+ln x",
        ));
    }
    Ok(())
}

fn gbf_suite(
    records: &mut Vec<CheckRecord>,
    stream: &mut SampleStream,
    tol: f64,
    samples: usize,
) -> Result<()> {
    let quad_tol = 1e-12;
    for i in 0..samples {
        let k = stream.multiplicity();
        let x = stream.point_x();
        let y = stream.point_y_regular();
        let inputs = format!(
            "x=({:.4e},{:.4e}) y=({:.4e},{:.4e}) k=({:.4e},{:.4e})",
            x.c1, x.c2, y.c1, y.c2, k.k1(), k.k2()
        );
        let base = gbf(x, y, &k, quad_tol)?.value;
        // normalization at the origin
        if i < 3 {
            let origin = gbf(PlanarPoint::ORIGIN, y, &k, quad_tol)?.value;
            records.push(record(
                format!("gbf.normalization_at_origin[{i:03}]"),
                inputs.clone(),
                origin,
                1.0,
                1e-12,
                "double-integral at x=0",
                "spectral normalization",
            ));
        }
        // argument symmetry
        let swapped = gbf(y, x, &k, quad_tol)?.value;
        records.push(record(
            format!("gbf.argument_symmetry[{i:03}]"),
            inputs.clone(),
            base,
            swapped,
            tol,
            "gbf(x,y)",
            "gbf(y,x)",
        ));
        // invariance under one group element per sample
        let elems = group_elements();
        let w = &elems[i % 8];
        let moved = gbf(w.apply(x), y, &k, quad_tol)?.value;
        records.push(record(
            format!("gbf.group_invariance[{i:03}]"),
            format!("{inputs} w={}", w.name),
            moved,
            base,
            tol,
            "gbf(wx,y)",
            "gbf(x,y)",
        ));
        // norm identity of the abc coefficients
        let u = stream.uniform(-0.999, 0.999);
        let v = stream.uniform(-0.999, 0.999);
        if let Ok(coeff) = abc(y, u, v) {
            let lhs = (z_poly(x, y, u, v).max(0.0) / 2.0).sqrt();
            let t = x.c1 + coeff.c * x.c2;
            let rhs = coeff.a * (t * t + coeff.b * coeff.b * x.c2 * x.c2).sqrt();
            records.push(record(
                format!("abc.z_poly_norm_identity[{i:03}]"),
                format!("{inputs} u={u:.4e} v={v:.4e}"),
                lhs,
                rhs,
                1e-12,
                "z_poly square root",
                "abc planar norm",
            ));
            // bracket factorization
            let z = stream.point_in_hull(y);
            let lhs_b = bracket(y, z, u, v);
            let w2 = z.c2 - coeff.c * z.c1;
            let rhs_b = 2.0
                * coeff.denom
                * (coeff.a * coeff.a * coeff.b * coeff.b - coeff.b * coeff.b * z.c1 * z.c1 - w2 * w2);
            records.push(record(
                format!("bracket.ellipse_identity[{i:03}]"),
                format!("{inputs} z=({:.4e},{:.4e})", z.c1, z.c2),
                lhs_b,
                rhs_b,
                1e-10,
                "bracket polynomial",
                "abc ellipse form",
            ));
        }
    }
    // normalizing constant against the moment integral
    for i in 0..3usize {
        let k = stream.multiplicity();
        let moment = integrate_uv_weighted(|_, _| 1.0, &k, 64)?;
        records.push(record(
            format!("normalizing_c.moment_identity[{i:03}]"),
            format!("k=({:.4e},{:.4e})", k.k1(), k.k2()),
            normalizing_c(&k) * moment,
            1.0,
            1e-12,
            "gamma-function constant",
            "weighted moment",
        ));
    }
    Ok(())
}

fn laplace_suite(
    records: &mut Vec<CheckRecord>,
    stream: &mut SampleStream,
    tol: f64,
    samples: usize,
) -> Result<()> {
    for i in 0..samples {
        // one guaranteed sub-3/2 gamma case per run, relaxed tolerance
        let (k, case_tol) = if i == samples.saturating_sub(1) {
            (Multiplicity::new(0.65, 0.55)?, 1e-3)
        } else {
            (stream.multiplicity(), tol)
        };
        let y = stream.point_y_regular();
        let x = stream.point_x();
        let inputs = format!(
            "x=({:.4e},{:.4e}) y=({:.4e},{:.4e}) k=({:.4e},{:.4e})",
            x.c1, x.c2, y.c1, y.c2, k.k1(), k.k2()
        );
        let evaluator = GbfLaplace::new(y, &k, case_tol / 10.0)?;
        let norm = evaluator.normalization(case_tol)?;
        records.push(record(
            format!("density_h.normalization[{i:03}]"),
            inputs.clone(),
            norm.value,
            1.0,
            case_tol.max(norm.err_estimate * 2.0),
            "hull integral of H",
            "unit mass",
        ));
        let lap = evaluator.eval(x, case_tol)?;
        let direct = gbf(x, y, &k, 1e-12)?.value;
        records.push(record(
            format!("gbf.laplace_vs_quadrature[{i:03}]"),
            inputs.clone(),
            lap.value,
            direct,
            case_tol.max(lap.err_estimate * 2.0),
            "Laplace integral of H",
            "double-integral",
        ));
        // support: H vanishes outside the hull
        let z_out = stream.point_outside_hull(y);
        let outside = density_h(y, z_out, &k, 1e-6)?.value;
        records.push(record(
            format!("density_h.support[{i:03}]"),
            format!("{inputs} z=({:.4e},{:.4e})", z_out.c1, z_out.c2),
            outside,
            0.0,
            0.0,
            "density outside hull",
            "exact zero",
        ));
        // chord evaluation against the adaptive-region evaluation
        let z_in = stream.point_in_hull(y);
        let chord = density_h(y, z_in, &k, 1e-9)?.value;
        let region = density_h_region(y, z_in, &k, 1e-6)?;
        records.push(record(
            format!("density_h.chord_vs_region[{i:03}]"),
            format!("{inputs} z=({:.4e},{:.4e})", z_in.c1, z_in.c2),
            chord,
            region.value,
            1e-4f64.max(region.err_estimate * 4.0),
            "chord quadrature",
            "adaptive cells",
        ));
        // membership of the integration region matches the hull test
        let grid_consistent = (0..21).all(|a| {
            (0..21).all(|b| {
                let u = -1.0 + 0.1 * a as f64;
                let v = -1.0 + 0.1 * b as f64;
                !crate::gbf::region_e_contains(y, z_out, u, v)
            })
        });
        records.push(record(
            format!("region_e_contains.empty_outside_hull[{i:03}]"),
            format!("{inputs} z=({:.4e},{:.4e})", z_out.c1, z_out.c2),
            if grid_consistent { 1.0 } else { 0.0 },
            1.0,
            0.0,
            "region grid scan",
            "hull support",
        ));
        // hull polygon vertices all satisfy the hull inequalities
        let hull = convex_hull_polygon(y)?;
        let ok = hull
            .vertices
            .iter()
            .all(|vtx| convex_hull_contains(y, *vtx));
        records.push(record(
            format!("convex_hull_contains.polygon_vertices[{i:03}]"),
            inputs,
            if ok { 1.0 } else { 0.0 },
            1.0,
            0.0,
            "convex_hull_polygon orbit enumeration",
            "convex_hull_contains inequalities",
        ));
    }
    Ok(())
}

fn kernel_suite(
    records: &mut Vec<CheckRecord>,
    stream: &mut SampleStream,
    tol: f64,
    samples: usize,
) -> Result<()> {
    let eval_tol = (tol * 0.05).clamp(1e-6, 1e-4);
    for i in 0..samples {
        let k = if i % 2 == 0 {
            Multiplicity::new(1.0, 1.0)?
        } else {
            Multiplicity::new(1.5, 0.8)?
        };
        let x = stream.point_x_off_mirror();
        let y = stream.point_y_regular();
        let inputs = format!(
            "x=({:.4e},{:.4e}) y=({:.4e},{:.4e}) k=({:.4e},{:.4e})",
            x.c1, x.c2, y.c1, y.c2, k.k1(), k.k2()
        );
        let evaluator = KernelEvaluator::new(y, &k, eval_tol / 10.0)?;
        let lap = evaluator.eval(x, eval_tol)?;
        let rec = dunkl_kernel_prop2(x, y, &k, 1e-10, &FDControl::for_point(x))?;
        records.push(record(
            format!("dunkl_kernel.corollary_vs_prop2[{i:03}]"),
            inputs.clone(),
            lap.value,
            rec,
            tol,
            "Laplace integral of density_l",
            "dunkl_kernel_prop2 shift recursion",
        ));
        // mass of L over the hull is 2 y1
        let mass = evaluator.mass(eval_tol.max(1e-5))?;
        records.push(record(
            format!("density_l.mass[{i:03}]"),
            inputs.clone(),
            mass.value,
            2.0 * y.c1,
            1e-4,
            "hull integral of L",
            "x=0 reduction",
        ));
        // pointwise sign of the representing density
        let z_in = stream.point_in_hull(y);
        let l_val = density_l(y, z_in, &k, 1e-7)?.value;
        records.push(record(
            format!("density_l.sign[{i:03}]"),
            format!("{inputs} z=({:.4e},{:.4e})", z_in.c1, z_in.c2),
            (y.c1.signum() * l_val).min(0.0),
            0.0,
            1e-6 * (1.0 + l_val.abs()),
            "signed density sample",
            "nonnegativity",
        ));
        // kernel bounds: 0 < D <= max_w e^{<x, wy>}
        let bound = group_elements()
            .iter()
            .map(|w| x.dot(w.apply(y)).exp())
            .fold(f64::MIN, f64::max);
        let pass_val = if lap.value > 0.0 && lap.value <= bound * (1.0 + 1e-6) {
            1.0
        } else {
            0.0
        };
        records.push(record(
            format!("dunkl_kernel.bounds[{i:03}]"),
            inputs.clone(),
            pass_val,
            1.0,
            0.0,
            "kernel value",
            "orbit exponential bound",
        ));
    }
    // shift identity for the first orbit: the signed orbit sum equals
    // d1 S1(x) S1(y) D^W_{(k1+1,k2)}
    {
        let k = Multiplicity::new(1.0, 1.0)?;
        let x = PlanarPoint::new(0.6, 0.2);
        let y = PlanarPoint::new(1.5, 0.7);
        let chi1: [f64; 8] = [1.0, 1.0, -1.0, -1.0, -1.0, 1.0, -1.0, 1.0];
        let mut lhs = 0.0;
        for (w, sign) in group_elements().iter().zip(chi1.iter()) {
            lhs += sign * dunkl_kernel(x, w.apply(y), &k, eval_tol)?.value;
        }
        let d = shift_constants(&k);
        let (s1x, _, _) = alternating_polys(x);
        let (s1y, _, _) = alternating_polys(y);
        let rhs = d.d1 * s1x * s1y * gbf(x, y, &k.shifted(1.0, 0.0)?, 1e-12)?.value;
        records.push(record(
            "shift_identity.first_orbit[000]",
            format!("x=({},{}) y=({},{})", x.c1, x.c2, y.c1, y.c2),
            lhs,
            rhs,
            (8.0 * eval_tol).max(2e-4),
            "group_elements signed kernel orbit sum",
            "shift_constants and alternating_polys times shifted gbf",
        ));
    }
    // gbf reconstruction and combination consistency
    {
        let k = Multiplicity::new(1.0, 1.0)?;
        let x = PlanarPoint::new(0.6, 0.2);
        let y = PlanarPoint::new(1.5, 0.7);
        let mut avg = 0.0;
        for w in &group_elements() {
            avg += dunkl_kernel(x, w.apply(y), &k, eval_tol)?.value;
        }
        avg /= 8.0;
        let direct = gbf(x, y, &k, 1e-12)?.value;
        records.push(record(
            "dunkl_kernel.orbit_average_is_gbf[000]",
            format!("x=({},{}) y=({},{})", x.c1, x.c2, y.c1, y.c2),
            avg,
            direct,
            (8.0 * eval_tol).max(1e-4),
            "kernel orbit average",
            "double-integral gbf",
        ));
        let combo = gbf_combination(x, y, &k, 1e-11)?;
        let even_part = dunkl_kernel(x, y, &k, eval_tol)?.value
            + dunkl_kernel(x, -y, &k, eval_tol)?.value;
        records.push(record(
            "gbf_combination.even_part[000]",
            format!("x=({},{}) y=({},{})", x.c1, x.c2, y.c1, y.c2),
            combo,
            even_part,
            (4.0 * eval_tol).max(2e-5),
            "shifted-gbf combination",
            "kernel even part",
        ));
        // spectral problem residual
        let resid = eigen_residual(x, y, &k, eval_tol, &FDControl::new(1e-4, 1e-3)?)?;
        records.push(record(
            "eigen_residual.spectral_problem[000]",
            format!("x=({},{}) y=({},{})", x.c1, x.c2, y.c1, y.c2),
            resid,
            0.0,
            (20.0 * eval_tol).max(1e-3),
            "T1 applied to kernel",
            "eigenvalue y1",
        ));
        // T1 on a coordinate function
        let t1 = apply_t1(|q| Ok(q.c1), x, &k, &FDControl::for_point(x))?;
        records.push(record(
            "apply_t1.linear_eigencheck[000]",
            format!("x=({},{})", x.c1, x.c2),
            t1,
            1.0 + 2.0 * k.gamma(),
            1e-9,
            "difference-quotient T1",
            "closed form",
        ));
        // small-k continuity toward the exponential kernel
        let ks = Multiplicity::new(0.01, 0.01)?;
        let xk = PlanarPoint::new(0.3, 0.1);
        let yk = PlanarPoint::new(1.0, 0.4);
        let smoke = dunkl_kernel(xk, yk, &ks, 1e-8)?.value;
        records.push(record(
            "dunkl_kernel.small_k_exponential[000]",
            format!("x=({},{}) y=({},{})", xk.c1, xk.c2, yk.c1, yk.c2),
            smoke,
            xk.dot(yk).exp(),
            5e-2,
            "shift recursion at small k",
            "plain exponential",
        ));
    }
    Ok(())
}

fn dh_suite(
    records: &mut Vec<CheckRecord>,
    stream: &mut SampleStream,
    tol: f64,
    samples: usize,
) -> Result<()> {
    let y = PlanarPoint::new(2.0, 1.0);
    let k1 = Multiplicity::new(1.0, 1.0)?;
    let mass_scale = 2.0 * (y.c1 * y.c1 - y.c2 * y.c2) * y.c1 * y.c2;
    for i in 0..samples {
        let z = stream.point_in_hull(y);
        let inputs = format!("y=(2,1) z=({:.4e},{:.4e})", z.c1, z.c2);
        let dh = dh_density(y, z, 1e-10)?.value;
        let h = density_h(y, z, &k1, 1e-10)?.value;
        records.push(record(
            format!("dh_density.matches_unit_multiplicity[{i:03}]"),
            inputs.clone(),
            dh,
            h,
            1e-8,
            "Duistermaat-Heckman form",
            "general density at k=(1,1)",
        ));
        let m = dh_measure_density(y, z, 1e-10)?.value;
        records.push(record(
            format!("dh_measure_density.constant_ratio[{i:03}]"),
            inputs,
            m,
            mass_scale * dh,
            1e-12,
            "measure density",
            "scaled density",
        ));
    }
    // total mass of the measure
    {
        let hull = convex_hull_polygon(y)?;
        let mass_tol = (tol * 10.0).clamp(1e-5, 1e-2);
        let mass = crate::quadrature::polygon::integrate_polygon_try(
            |z| Ok(dh_measure_density(y, z, mass_tol / 10.0)?.value),
            &hull.vertices,
            mass_tol,
            &crate::quadrature::polygon::PolygonOptions::default(),
        )?;
        records.push(record(
            "dh_measure_density.total_mass[000]",
            "y=(2,1)".to_string(),
            mass.value,
            mass_scale,
            (mass_tol * 10.0).max(1e-4),
            "hull integral",
            "closed-form scale",
        ));
    }
    // pattern membership endpoints and volume
    {
        let yv = PlanarPoint::new(2.0, 1.0);
        let corners_ok = gt_pattern_contains(yv, yv.c1, 0.0, yv.c2)?
            && gt_pattern_contains(yv, yv.c2, yv.c2, yv.c2)?
            && !gt_pattern_contains(yv, yv.c1 + 0.1, 0.0, yv.c2)?;
        records.push(record(
            "gt_pattern_contains.chain_endpoints[000]",
            "y=(2,1)".to_string(),
            if corners_ok { 1.0 } else { 0.0 },
            1.0,
            0.0,
            "chain inequalities",
            "endpoint cases",
        ));
        let vol = gt_pattern_volume(yv)?;
        records.push(record(
            "gt_pattern_volume.closed_form[000]",
            "y=(2,1)".to_string(),
            vol,
            1.0,
            tol,
            "closed form",
            "elementary double integral",
        ));
    }
    Ok(())
}
