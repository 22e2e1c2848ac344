//! Acceptance suite: every release gate in one place, one test per
//! criterion, each printing a pass line with the measured figure (run with
//! `--nocapture` to see them).
//!
//! Tolerances are pinned here and nowhere else looser.

use std::process::Command;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hcc::criteria::{
    admissible_t2, closed_t_t1, closed_t_t2, coeff_sum_f1, coeff_sum_f2,
    direction_convexity_check, pointwise_class_check, t2_sign_case, Case, MapClass,
};
use hcc::gallery;
use hcc::grid::GridSpec;
use hcc::mapping::{build_map, build_t1_map, build_t2_map, ConstructionParams, Variant};
use hcc::specfun::{beta, gamma, stirling_limit_class, StirlingLimit};
use hcc::surface::{geometry_residuals, sqrt_dilatation, t_closed_form};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pass(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS ({detail})");
}

/// Random points with |z| <= radius, area-uniform, deterministic seed.
fn interior_points(rng: &mut ChaCha8Rng, radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
            Complex64::from_polar(r, theta)
        })
        .collect()
}

#[test]
fn criterion_01_beta_special_values() {
    let b11 = beta(re(1.0), re(1.0)).unwrap().re;
    let b23 = beta(re(2.0), re(3.0)).unwrap().re;
    let b1h = beta(re(1.0), re(0.5)).unwrap().re;
    assert!((b11 - 1.0).abs() < 1e-14, "B(1,1) = {b11}");
    assert!((b23 - 1.0 / 12.0).abs() < 1e-13, "B(2,3) = {b23}");
    assert!((b1h - 2.0).abs() < 1e-12, "B(1,1/2) = {b1h}");
    pass(
        "1 (beta special values)",
        format!(
            "|B(1,1)-1| = {:.1e}, |B(2,3)-1/12| = {:.1e}, |B(1,1/2)-2| = {:.1e}",
            (b11 - 1.0).abs(),
            (b23 - 1.0 / 12.0).abs(),
            (b1h - 2.0).abs()
        ),
    );
}

#[test]
fn criterion_02_log_family_coefficients() {
    // g-coefficients of the a = b = 1 family equal alpha/n for n >= m+1
    let alphas = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.3, -0.4),
        Complex64::new(0.0, 0.75),
        Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
    ];
    let mut worst = 0.0f64;
    for (&m, &alpha) in [1u32, 2, 3, 4, 6].iter().zip(alphas.iter()) {
        let p = ConstructionParams::new(re(1.0), re(1.0), m, alpha, Variant::T1, 201).unwrap();
        let f = build_t1_map(&p).unwrap();
        for n in 0..=200usize {
            let want = if n > m as usize { alpha / n as f64 } else { Complex64::ZERO };
            let err = (f.g().coeff(n) - want).norm();
            worst = worst.max(err);
            assert!(err < 1e-13, "m = {m}, n = {n}: err = {err}");
        }
    }
    pass("2 (log-family g-coefficients)", format!("max coefficient error {worst:.1e}"));
}

#[test]
fn criterion_03_partial_sum_vs_closed_t1() {
    let n_sum = 10_000usize;
    let sets = [
        (1.0, 1.0, 2u32, 1.0, Case::CaseA),
        (0.5, 0.5, 2, 0.1, Case::CaseA),
        (2.0, 3.0, 1, 0.5, Case::CaseB),
    ];
    let mut details = Vec::new();
    for (a, b, m, alpha, case) in sets {
        let p = ConstructionParams::new(re(a), re(b), m, re(alpha), Variant::T1, n_sum + 1)
            .unwrap();
        let f = build_t1_map(&p).unwrap();
        let closed = closed_t_t1(p.a, p.b, p.alpha, case).unwrap();
        let report = coeff_sum_f1(&f, n_sum).unwrap();
        // tolerance scales with T: the partial sums converge like C/N with
        // C proportional to 1/B(a,b), so for the T = 17 stress set the
        // 1e-3 agreement is relative to the limit's size
        let gap = (report.value - closed).abs() / closed.abs().max(1.0);
        assert!(gap < 1e-3, "(a,b,m,|alpha|) = ({a},{b},{m},{alpha}): gap = {gap}");
        if a == 1.0 && b == 1.0 {
            // terms vanish identically: exact agreement already at small N
            let small = coeff_sum_f1(&f, 100).unwrap();
            let small_gap = (small.value - closed).abs();
            assert!(small_gap < 1e-12, "small-N gap = {small_gap}");
        }
        details.push(format!("({a},{b}): |S_N - T| = {gap:.2e}"));
    }
    pass("3 (closed vs partial sums, full family)", details.join(", "));
}

#[test]
fn criterion_04_partial_sum_vs_closed_t2_and_admissibility() {
    let n_sum = 10_000usize;
    let mut details = Vec::new();
    for base in gallery::t2_examples() {
        let p = ConstructionParams::new(
            base.a,
            base.b,
            base.m,
            base.alpha,
            Variant::T2,
            n_sum + 1,
        )
        .unwrap();
        let f = build_t2_map(&p).unwrap();
        let case = t2_sign_case(p.ab(), p.a_plus_b()).expect("example sets have a sign case");
        let closed = closed_t_t2(p.a, p.b, p.alpha, case).unwrap();
        let report = coeff_sum_f2(&f, n_sum).unwrap();
        let gap = (report.value - closed).abs();
        assert!(gap < 1e-3, "{p:?}: gap = {gap}");
        let adm = admissible_t2(p.a, p.b, p.alpha).unwrap();
        assert!(adm.satisfied(), "{p:?} fails admissibility");
        details.push(format!("({}, {}): {gap:.2e}", p.a.re, p.b.re));
    }
    pass("4 (closed vs partial sums, odd family; admissibility)", details.join(", "));
}

#[test]
fn criterion_05_dilatation_identity() {
    let grid = GridSpec::new(0.8, 32, 32).unwrap();
    let mut worst = 0.0f64;
    for p in gallery::all_examples() {
        let f = build_map(&p).unwrap();
        for z in grid.nodes() {
            let residual = (f.dilatation(z).unwrap() - p.alpha * z.powu(p.m)).norm();
            worst = worst.max(residual);
        }
    }
    assert!(worst < 1e-10, "max residual {worst}");
    pass("5 (dilatation identity)", format!("max |g'/h' - alpha z^m| = {worst:.2e}"));
}

#[test]
fn criterion_06_jacobian_positive() {
    let grid = GridSpec::new(0.95, 64, 64).unwrap();
    let mut min_j = f64::INFINITY;
    for p in gallery::all_examples() {
        let f = build_map(&p).unwrap();
        for z in grid.nodes() {
            let j = f.jacobian(z).unwrap();
            assert!(j > 0.0, "{p:?} at z = {z}: J = {j}");
            min_j = min_j.min(j);
        }
    }
    pass("6 (sense preservation)", format!("min Jacobian = {min_j:.3e}"));
}

#[test]
fn criterion_07_pointwise_class_margins() {
    let grid = GridSpec::new(0.95, 64, 64).unwrap();
    let mut min_margin = f64::INFINITY;
    for p in gallery::t1_examples() {
        let f = build_map(&p).unwrap();
        let r = pointwise_class_check(&f, MapClass::F1, grid, 0.0).unwrap();
        assert!(r.pass, "{p:?}: F1 margin {}", r.margin);
        min_margin = min_margin.min(r.margin);
    }
    for p in gallery::t2_examples() {
        let f = build_map(&p).unwrap();
        let r = pointwise_class_check(&f, MapClass::F2, grid, 0.0).unwrap();
        assert!(r.pass, "{p:?}: F2 margin {}", r.margin);
        min_margin = min_margin.min(r.margin);
        let dc = direction_convexity_check(&f.pre_shear(), grid).unwrap();
        assert!(dc.pass, "{p:?}: pre-shear convexity margin {}", dc.margin);
        min_margin = min_margin.min(dc.margin);
    }
    pass("7 (pointwise class inequalities)", format!("min margin = {min_margin:.3e}"));
}

#[test]
fn criterion_08_surface_dual_path() {
    let grid = GridSpec::new(0.9, 24, 32).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for p in gallery::all_examples().into_iter().filter(|p| p.m.is_multiple_of(2)) {
        let f = build_map(&p).unwrap();
        let spec = sqrt_dilatation(p.alpha, p.m, p.variant).unwrap();
        let potential = f
            .h_prime()
            .scale(spec.q_coefficient)
            .shift(spec.k as usize)
            .antiderivative();
        let mut points = grid.nodes();
        points.extend(interior_points(&mut rng, 0.9, 200));
        for z in points {
            let t_series = 2.0 * potential.eval(z).unwrap().0.im;
            let t_closed = t_closed_form(&p, z).unwrap();
            worst = worst.max((t_series - t_closed).abs());
        }
    }
    assert!(worst < 1e-8, "max gap {worst}");
    pass("8 (surface dual path)", format!("max |t_series - t_closed| = {worst:.2e}"));
}

#[test]
fn criterion_09_differential_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_iso = 0.0f64;
    let mut worst_h = 0.0f64;
    let mut worst_lap = 0.0f64;
    for p in gallery::all_examples().into_iter().filter(|p| p.m.is_multiple_of(2)) {
        let f = build_map(&p).unwrap();
        let spec = sqrt_dilatation(p.alpha, p.m, p.variant).unwrap();
        let points = interior_points(&mut rng, 0.7, 200);
        for &z in &points {
            let r = geometry_residuals(&f, &spec, z, 1e-4).unwrap();
            assert!(r.isothermal_e_minus_g < 1e-6, "{p:?} at {z}: {r:?}");
            assert!(r.isothermal_f < 1e-6, "{p:?} at {z}: {r:?}");
            assert!(r.mean_curvature.abs() < 1e-4, "{p:?} at {z}: {r:?}");
            assert!(r.laplacian_max < 1e-5, "{p:?} at {z}: laplacian {}", r.laplacian_max);
            worst_iso = worst_iso.max(r.isothermal_e_minus_g).max(r.isothermal_f);
            worst_h = worst_h.max(r.mean_curvature.abs());
            worst_lap = worst_lap.max(r.laplacian_max);
        }
    }
    pass(
        "9 (isothermal / minimal / harmonic residuals)",
        format!("|E-G|,|F| <= {worst_iso:.1e}, |H| <= {worst_h:.1e}, lap <= {worst_lap:.1e}"),
    );
}

#[test]
fn criterion_10_stirling_classification() {
    assert_eq!(
        stirling_limit_class(re(1.0), re(1.0), re(2.0)).unwrap(),
        StirlingLimit::Zero
    );
    match stirling_limit_class(re(1.0), re(2.0), re(2.0)).unwrap() {
        StirlingLimit::Finite(v) => assert!((v.re - 1.0).abs() < 1e-13),
        other => panic!("expected Finite(1), got {other:?}"),
    }
    assert_eq!(
        stirling_limit_class(re(2.0), re(2.0), re(2.0)).unwrap(),
        StirlingLimit::Divergent
    );

    // randomized real triples against the numeric quotient at n = 1e5
    let quotient = |a: f64, b: f64, c: f64, n: usize| -> f64 {
        let mut r = 1.0f64;
        for j in 0..n {
            let jf = j as f64;
            r *= (a + jf) * (b + jf) / ((c + jf) * (1.0 + jf));
        }
        r
    };
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut finite_worst = 0.0f64;
    for i in 0..10 {
        let a = rng.gen_range(1.0..3.0);
        let b = rng.gen_range(1.0..3.0);
        let (c, want_kind) = match i % 3 {
            0 => (a + b - 1.0, 0),
            1 => (a + b - 1.0 + rng.gen_range(0.6..1.5), 1),
            _ => (a + b - 1.0 - rng.gen_range(0.6..(a + b - 1.3)), 2),
        };
        let class = stirling_limit_class(re(a), re(b), re(c)).unwrap();
        let ratio = quotient(a, b, c, n);
        // normalize by the would-be finite constant Gamma(c)/(Gamma(a)Gamma(b))
        let scale = (gamma(re(c)) / (gamma(re(a)) * gamma(re(b)))).re;
        match (want_kind, class) {
            (0, StirlingLimit::Finite(v)) => {
                let rel = (ratio / v.re - 1.0).abs();
                assert!(rel < 0.01, "({a},{b},{c}): ratio {ratio} vs {v}");
                finite_worst = finite_worst.max(rel);
            }
            (1, StirlingLimit::Zero) => {
                assert!(ratio / scale < 0.05, "({a},{b},{c}): normalized {}", ratio / scale);
            }
            (2, StirlingLimit::Divergent) => {
                assert!(ratio / scale > 20.0, "({a},{b},{c}): normalized {}", ratio / scale);
            }
            (_, got) => panic!("({a},{b},{c}): classified {got:?}"),
        }
    }
    pass(
        "10 (Stirling trichotomy)",
        format!("table exact; finite cases within {finite_worst:.2e} of the n=1e5 quotient"),
    );
}

fn hcc_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hcc"))
}

fn complex_arg(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn verify_args(p: &ConstructionParams, alpha: Complex64) -> Vec<String> {
    vec![
        "verify".into(),
        "--variant".into(),
        p.variant.to_string(),
        "--a".into(),
        complex_arg(p.a),
        "--b".into(),
        complex_arg(p.b),
        "--m".into(),
        p.m.to_string(),
        "--alpha".into(),
        complex_arg(alpha),
    ]
}

#[test]
fn criterion_11_cli_end_to_end() {
    // verify exits 0 for every admissible example set
    for p in gallery::all_examples() {
        let out = hcc_bin().args(verify_args(&p, p.alpha)).output().unwrap();
        assert!(
            out.status.success(),
            "verify failed for {p:?}:\n{}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }

    // inflating |alpha| 10% beyond the first condition's cap must fail
    for p in gallery::all_examples() {
        let cap = match p.variant {
            Variant::T1 => {
                let b = beta(p.a, p.b).unwrap().re;
                1.0 / (2.0 * b - 1.0)
            }
            Variant::T2 => {
                let b = beta(p.a, p.b).unwrap().re;
                1.0 / (b - 1.0)
            }
        };
        let inflated = p.alpha / p.alpha.norm() * (1.1 * cap);
        let out = hcc_bin().args(verify_args(&p, inflated)).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(1),
            "inflated alpha should fail verify for {p:?}:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
    }

    // construct -> serialize -> parse -> check reproduces the sum to 1e-12
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("map.json");
    let p = gallery::t1_examples()[0];
    let out = hcc_bin()
        .args([
            "construct",
            "--variant",
            "t1",
            "--a",
            &complex_arg(p.a),
            "--b",
            &complex_arg(p.b),
            "--m",
            &p.m.to_string(),
            "--alpha",
            &complex_arg(p.alpha),
            "--out",
            doc.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = hcc_bin()
        .args(["check", "--in", doc.to_str().unwrap(), "--class", "coeff-f1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let cli_value: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("value: "))
        .expect("check prints a value line")
        .trim()
        .parse()
        .unwrap();

    let f = build_map(&p).unwrap();
    let in_memory = coeff_sum_f1(&f, p.trunc_order - 1).unwrap().value;
    assert!(
        (cli_value - in_memory).abs() <= 1e-12,
        "CLI value {cli_value} vs in-memory {in_memory}"
    );
    pass(
        "11 (CLI end-to-end)",
        format!("8 verifies green, 8 inflated-alpha rejections, round-trip gap {:.1e}",
            (cli_value - in_memory).abs()),
    );
}
