//! Command-line driver: construct maps, check class membership, lift to
//! minimal surfaces, and export planar grid images.
//!
//! Exit codes: 0 on success / all checks passing, 1 on a failed check (or a
//! map that cannot be lifted), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use hcc::criteria::{
    admissible_t1, admissible_t2, closed_t_t1, closed_t_t2, coeff_sum_f1, coeff_sum_f2,
    direction_convexity_check, pointwise_class_check, t1_sign_case, t2_sign_case, AdmissibleCase,
    MapClass,
};
use hcc::error::Error;
use hcc::grid::GridSpec;
use hcc::io::{export_obj, export_planar, parse_map, planar_csv, planar_svg, serialize_map};
use hcc::mapping::{
    build_map, ConstructionParams, HarmonicMap, Variant, DEFAULT_TRUNC_ORDER,
};
use hcc::series::PowerSeries;
use hcc::surface::{geometry_residuals, lift, sqrt_dilatation, t_closed_form};

#[derive(Parser)]
#[command(
    name = "hcc",
    version,
    about = "Hypergeometric harmonic maps: construct, certify, lift, export"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    T1,
    T2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::T1 => Variant::T1,
            VariantArg::T2 => Variant::T2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    /// Pointwise close-to-convexity inequality.
    F,
    /// Pointwise disk-covering form of the close-to-convexity inequality.
    F1,
    /// Pointwise vertical-direction convexity inequality.
    F2,
    /// Coefficient-sum certificate for close-to-convexity.
    CoeffF1,
    /// Coefficient-sum certificate for vertical-direction convexity.
    CoeffF2,
}

/// Construction parameters shared by `construct` and `verify`.
#[derive(Args)]
struct ConstructArgs {
    /// Map family: t1 (series in z) or t2 (series in z^2).
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// First hypergeometric parameter, "RE" or "RE,IM".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Complex64,
    /// Second hypergeometric parameter, "RE" or "RE,IM".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Complex64,
    /// Dilatation power (the dilatation is alpha z^m).
    #[arg(long)]
    m: u32,
    /// Dilatation coefficient, "RE" or "RE,IM".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Complex64,
    /// Series truncation order (default 400; HCC_TRUNC overrides).
    #[arg(long)]
    trunc: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a map and write its JSON document.
    Construct {
        #[command(flatten)]
        params: ConstructArgs,
        /// Output document path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a class-membership criterion for a stored map.
    Check {
        /// Input document path.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Grid radius for the pointwise checks.
        #[arg(long, default_value_t = 0.95)]
        radius: f64,
        /// Polar grid as CIRCLESxSPOKES.
        #[arg(long, default_value = "64x64", value_parser = parse_grid_dims)]
        grid: (usize, usize),
        /// Rotation angle applied to the real-part inequalities.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
    },
    /// Lift an even-power map to a minimal surface and write an OBJ mesh.
    Lift {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.9)]
        radius: f64,
        #[arg(long, default_value = "200x64", value_parser = parse_grid_dims)]
        grid: (usize, usize),
        /// Output OBJ path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the images of a polar grid under the map (CSV or SVG).
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.98)]
        radius: f64,
        #[arg(long, default_value_t = 20)]
        circles: usize,
        #[arg(long, default_value_t = 32)]
        spokes: usize,
        /// Output path; the extension selects .csv or .svg.
        #[arg(long)]
        out: PathBuf,
        /// Plot the conformal pre-shear h + g instead of the map itself.
        #[arg(long = "pre-shear")]
        pre_shear: bool,
    },
    /// Construct a map and run the full certificate battery.
    Verify {
        #[command(flatten)]
        params: ConstructArgs,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| -> Result<f64, String> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{t}` is not a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("`{s}` is not RE or RE,IM")),
    }
}

fn parse_grid_dims(s: &str) -> Result<(usize, usize), String> {
    let (c, sp) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("`{s}` is not CIRCLESxSPOKES"))?;
    let c = c.trim().parse().map_err(|_| format!("`{c}` is not a count"))?;
    let sp = sp.trim().parse().map_err(|_| format!("`{sp}` is not a count"))?;
    Ok((c, sp))
}

fn resolve_trunc(cli: Option<usize>) -> Result<usize, String> {
    if let Some(t) = cli {
        return Ok(t);
    }
    match std::env::var("HCC_TRUNC") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("HCC_TRUNC=`{s}` is not a truncation order")),
        Err(_) => Ok(DEFAULT_TRUNC_ORDER),
    }
}

/// Failure that should end the process with the given code.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Fail {
        Fail { code: 2, message: message.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        // a map that cannot be lifted is a failed check, not a usage error
        let code = match e {
            Error::OddDilatationPower(_) => 1,
            _ => 2,
        };
        Fail { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Fail {
        Fail::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Fail> {
    match cli.command {
        Cmd::Construct { params, out } => {
            let p = construction_params(&params)?;
            let f = build_map(&p)?;
            std::fs::write(&out, serialize_map(&f)?)?;
            println!(
                "wrote {} ({} map, trunc_order {})",
                out.display(),
                p.variant,
                p.trunc_order
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { input, class, radius, grid, theta } => {
            let f = read_map(&input)?;
            let report = match class {
                ClassArg::CoeffF1 => coeff_sum_f1(&f, f.trunc_order() - 1)?,
                ClassArg::CoeffF2 => coeff_sum_f2(&f, f.trunc_order() - 1)?,
                ClassArg::F | ClassArg::F1 | ClassArg::F2 => {
                    let kind = match class {
                        ClassArg::F => MapClass::F,
                        ClassArg::F1 => MapClass::F1,
                        _ => MapClass::F2,
                    };
                    let grid = GridSpec::new(radius, grid.0, grid.1)?;
                    pointwise_class_check(&f, kind, grid, theta)?
                }
            };
            println!("{report}");
            Ok(exit_pass(report.pass))
        }
        Cmd::Lift { input, radius, grid, out } => {
            let f = read_map(&input)?;
            let p = f.params().copied().ok_or_else(|| {
                Fail::usage("document coefficients do not come from a known construction; lift needs one")
            })?;
            let spec = sqrt_dilatation(p.alpha, p.m, p.variant)?;
            let grid = GridSpec::new(radius, grid.0, grid.1)?;
            let mesh = lift(&f, &spec, grid)?;
            std::fs::write(&out, export_obj(&mesh))?;
            println!(
                "wrote {} ({} vertices, {} faces)",
                out.display(),
                mesh.vertices.len(),
                mesh.faces.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Plot { input, radius, circles, spokes, out, pre_shear } => {
            let f = read_map(&input)?;
            let subject = if pre_shear {
                let phi = f.pre_shear();
                let zero = PowerSeries::zero(phi.trunc_order());
                HarmonicMap::new(phi, zero)
                    .map_err(|e| Fail::usage(format!("pre-shear is not normalized: {e}")))?
            } else {
                f
            };
            let grid = GridSpec::new(radius, circles, spokes)?;
            let img = export_planar(&subject, grid)?;
            let text = match out.extension().and_then(|e| e.to_str()) {
                Some("csv") => planar_csv(&img),
                Some("svg") => planar_svg(&img),
                _ => return Err(Fail::usage("output extension must be .csv or .svg")),
            };
            std::fs::write(&out, text)?;
            println!("wrote {} ({} polylines)", out.display(), img.polylines.len());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { params } => {
            let p = construction_params(&params)?;
            let all_pass = verify(&p)?;
            println!("verify: {}", if all_pass { "PASS" } else { "FAIL" });
            Ok(exit_pass(all_pass))
        }
    }
}

fn construction_params(args: &ConstructArgs) -> Result<ConstructionParams, Fail> {
    let trunc = resolve_trunc(args.trunc).map_err(Fail::usage)?;
    Ok(ConstructionParams::new(
        args.a,
        args.b,
        args.m,
        args.alpha,
        args.variant.into(),
        trunc,
    )?)
}

fn read_map(path: &Path) -> Result<HarmonicMap, Fail> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    Ok(parse_map(&text)?)
}

fn exit_pass(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

struct Battery {
    all_pass: bool,
}

impl Battery {
    fn new() -> Battery {
        Battery { all_pass: true }
    }

    fn step(&mut self, name: &str, pass: bool, detail: String) {
        self.all_pass &= pass;
        println!("{name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    }
}

/// The full certificate battery for one parameter tuple: admissibility, the
/// coefficient sum against its closed form, the dilatation identity, the
/// Jacobian scan, the pointwise inequalities, and (for even m) the surface
/// residual suite.
fn verify(p: &ConstructionParams) -> Result<bool, Fail> {
    let f = build_map(p)?;
    let mut battery = Battery::new();

    // 1. admissibility
    let adm: AdmissibleCase = match p.variant {
        Variant::T1 => admissible_t1(p.a, p.b, p.alpha)?,
        Variant::T2 => admissible_t2(p.a, p.b, p.alpha)?,
    };
    battery.step(
        "admissibility",
        adm.satisfied(),
        format!(
            "case_a {} case_b {}, ab = {:.6}, B(a,b) = {:.6}, alpha_bound = {:.6}",
            adm.case_a, adm.case_b, adm.ab, adm.beta, adm.alpha_bound
        ),
    );

    // 2. coefficient sum vs closed form
    let report = match p.variant {
        Variant::T1 => coeff_sum_f1(&f, p.trunc_order - 1)?,
        Variant::T2 => coeff_sum_f2(&f, p.trunc_order - 1)?,
    };
    let sign_case = match p.variant {
        Variant::T1 => t1_sign_case(p.ab(), p.a_plus_b()),
        Variant::T2 => t2_sign_case(p.ab(), p.a_plus_b()),
    };
    let closed = match (p.variant, sign_case) {
        (Variant::T1, Some(case)) => Some(closed_t_t1(p.a, p.b, p.alpha, case)?),
        (Variant::T2, Some(case)) => Some(closed_t_t2(p.a, p.b, p.alpha, case)?),
        _ => None,
    };
    let (closed_ok, closed_detail) = match closed {
        Some(t) => (
            t <= report.bound && report.value <= t + 1e-12,
            format!("closed T = {t:.12}"),
        ),
        None => (true, "no single-sign closed form".to_string()),
    };
    battery.step(
        &report.criterion_name,
        report.pass && closed_ok,
        format!(
            "value {:.12} + tail {:.3e} vs bound {:.12}; {closed_detail}",
            report.value, report.tail_estimate, report.bound
        ),
    );

    // 3. dilatation identity on a 32x32 grid, |z| <= 0.8
    let mut worst = 0.0f64;
    for z in GridSpec::new(0.8, 32, 32)?.nodes() {
        let residual = (f.dilatation(z)? - p.alpha * z.powu(p.m)).norm();
        worst = worst.max(residual);
    }
    battery.step(
        "dilatation_identity",
        worst < 1e-10,
        format!("max |g'/h' - alpha z^m| = {worst:.3e}"),
    );

    // 4. Jacobian scan on a 64x64 grid, |z| <= 0.95
    let mut min_j = f64::INFINITY;
    for z in GridSpec::new(0.95, 64, 64)?.nodes() {
        min_j = min_j.min(f.jacobian(z)?);
    }
    battery.step("jacobian_positive", min_j > 0.0, format!("min J = {min_j:.6e}"));

    // 5. pointwise class inequality (and pre-shear convexity for t2)
    let grid = GridSpec::new(0.95, 64, 64)?;
    let kind = match p.variant {
        Variant::T1 => MapClass::F1,
        Variant::T2 => MapClass::F2,
    };
    let pw = pointwise_class_check(&f, kind, grid, 0.0)?;
    battery.step(
        &pw.criterion_name,
        pw.pass,
        format!("min margin = {:.6e}", pw.margin),
    );
    if p.variant == Variant::T2 {
        let dc = direction_convexity_check(&f.pre_shear(), grid)?;
        battery.step(
            "direction_convexity",
            dc.pass,
            format!("min Re{{(1-z^2) phi'}} = {:.6e}", dc.margin),
        );
    }

    // 6. surface residual suite for even m
    if p.m.is_multiple_of(2) {
        let spec = sqrt_dilatation(p.alpha, p.m, p.variant)?;

        let mut worst_gap = 0.0f64;
        let potential =
            f.h_prime().scale(spec.q_coefficient).shift(spec.k as usize).antiderivative();
        for z in GridSpec::new(0.9, 16, 24)?.nodes() {
            let t_series = 2.0 * potential.eval(z)?.0.im;
            let gap = (t_series - t_closed_form(p, z)?).abs();
            worst_gap = worst_gap.max(gap);
        }
        battery.step(
            "surface_dual_path",
            worst_gap < 1e-8,
            format!("max |t_series - t_closed| = {worst_gap:.3e}"),
        );

        let samples = [
            Complex64::new(0.3, 0.2),
            Complex64::new(-0.5, 0.1),
            Complex64::new(0.05, -0.62),
            Complex64::new(-0.2, -0.4),
            Complex64::new(0.65, 0.15),
        ];
        let mut iso = 0.0f64;
        let mut curvature = 0.0f64;
        let mut laplacian = 0.0f64;
        for &z in &samples {
            let r = geometry_residuals(&f, &spec, z, 1e-4)?;
            iso = iso.max(r.isothermal_e_minus_g).max(r.isothermal_f);
            curvature = curvature.max(r.mean_curvature.abs());
            laplacian = laplacian.max(r.laplacian_max);
        }
        battery.step(
            "surface_isothermal",
            iso < 1e-6,
            format!("max normalized |E-G|, |F| = {iso:.3e}"),
        );
        battery.step(
            "surface_minimality",
            curvature < 1e-4,
            format!("max |H| = {curvature:.3e}"),
        );
        battery.step(
            "surface_harmonicity",
            laplacian < 1e-5,
            format!("max normalized Laplacian = {laplacian:.3e}"),
        );
    }

    Ok(battery.all_pass)
}
