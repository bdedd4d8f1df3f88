//! Audit: the validation suites must reference every public operation of
//! the specfun, gbf and dunkl modules at least once, by name, in a record
//! name or route description. Runs a coarse-tolerance configuration so the
//! audit stays cheap; accuracy is covered elsewhere.

use dunkl_b2::validate::{run_suite, Suite, SuiteConfig};

const OPS: &[&str] = &[
    // specfun
    "ln_gamma",
    "bessel_i_norm",
    "bessel_i_norm_theta",
    "bessel_i_norm_disk",
    "bessel_sqrt_halves_derivative",
    // gbf
    "z_poly",
    "normalizing_c",
    "gbf",
    "abc",
    "bracket",
    "region_e_contains",
    "density_h",
    "convex_hull_contains",
    "convex_hull_polygon",
    "dh_density",
    "dh_measure_density",
    "gt_pattern_contains",
    "gt_pattern_volume",
    // dunkl
    "group_elements",
    "alternating_polys",
    "shift_constants",
    "apply_t1",
    "gbf_combination",
    "dunkl_kernel_prop2",
    "density_l",
    "dunkl_kernel",
    "eigen_residual",
];

#[test]
fn every_operation_is_referenced_by_the_suites() {
    let mut config = SuiteConfig::all(7);
    for suite in Suite::ALL {
        config.sample_counts.insert(suite, 1);
    }
    config.tolerances.insert(Suite::Laplace, 3e-3);
    config.tolerances.insert(Suite::Kernel, 2e-3);
    config.tolerances.insert(Suite::Dh, 1e-3);
    let records = run_suite(&config);
    assert!(
        !records
            .iter()
            .any(|r| r.name.ends_with("suite_error")),
        "a suite aborted: {:?}",
        records
            .iter()
            .filter(|r| r.name.ends_with("suite_error"))
            .map(|r| &r.inputs)
            .collect::<Vec<_>>()
    );
    let mut haystack = String::new();
    for r in &records {
        haystack.push_str(&r.name);
        haystack.push('\n');
        haystack.push_str(&r.route_pair.0);
        haystack.push('\n');
        haystack.push_str(&r.route_pair.1);
        haystack.push('\n');
    }
    let missing: Vec<&str> = OPS
        .iter()
        .copied()
        .filter(|op| !haystack.contains(op))
        .collect();
    assert!(
        missing.is_empty(),
        "operations never referenced by the validation suites: {missing:?}"
    );
    // and no check ever compares a route against itself
    for r in &records {
        assert_ne!(r.route_pair.0, r.route_pair.1, "self-comparison in {}", r.name);
    }
}
