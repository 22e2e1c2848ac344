//! Minimal-surface lifts of maps with even dilatation power.
//!
//! A sense-preserving harmonic map whose dilatation is the square of an
//! analytic function `q` lifts to a minimal graph
//! `(u, v, t) = (Re f, Im f, 2 Im integral_0^z q h' dz)` in isothermal
//! parameters. Here `omega = alpha z^m` with even `m = 2k` gives
//! `q(z) = sqrt(alpha) z^k`. The third coordinate is computed two ways: by
//! integrating the series `q h'` term by term, and from the closed-form
//! Hadamard-product expression; the pair is a build-time cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, MAX_RADIUS};
use crate::mapping::{ConstructionParams, HarmonicMap, Variant};
use crate::series::PowerSeries;
use crate::specfun::{hyp2f1_coeffs, HypParams};

/// Data of the lift `q(z) = q_coefficient * z^k` for a dilatation
/// `alpha z^{2k}`; `c_offset` translates the third coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftSpec {
    pub k: u32,
    pub q_coefficient: Complex64,
    pub variant: Variant,
    pub c_offset: f64,
}

/// Builds the lift data for a dilatation `alpha z^m`.
///
/// `q_coefficient` is the principal square root of `alpha` (argument in
/// `(-pi/2, pi/2]`). Odd `m` is an error: the dilatation is then not the
/// square of an analytic function and no isothermal lift exists.
pub fn sqrt_dilatation(alpha: Complex64, m: u32, variant: Variant) -> Result<LiftSpec> {
    if !m.is_multiple_of(2) {
        return Err(Error::OddDilatationPower(m));
    }
    Ok(LiftSpec { k: m / 2, q_coefficient: alpha.sqrt(), variant, c_offset: 0.0 })
}

impl LiftSpec {
    pub fn with_offset(self, c_offset: f64) -> Self {
        LiftSpec { c_offset, ..self }
    }

    /// Same surface with the free sign choice flipped: `t` is negated.
    pub fn negated(self) -> Self {
        LiftSpec { q_coefficient: -self.q_coefficient, ..self }
    }
}

/// Triangulated minimal graph over a polar grid.
///
/// Vertex 0 is the center; ring `i`, spoke `j` sits at index
/// `1 + (i-1) * n_spokes + j`. Faces are counterclockwise in the `(u, v)`
/// projection.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub grid: GridSpec,
    pub params: ConstructionParams,
}

fn validate_lift(f: &HarmonicMap, spec: &LiftSpec) -> Result<ConstructionParams> {
    let p = *f.params().ok_or_else(|| {
        Error::Domain("lifting needs a constructed map with parameters".into())
    })?;
    if !p.m.is_multiple_of(2) {
        return Err(Error::OddDilatationPower(p.m));
    }
    if p.m != 2 * spec.k || p.variant != spec.variant {
        return Err(Error::Domain(format!(
            "lift data (k = {}, variant {}) does not match the map (m = {}, variant {})",
            spec.k, spec.variant, p.m, p.variant
        )));
    }
    let q2 = spec.q_coefficient * spec.q_coefficient;
    if (q2 - p.alpha).norm() > 1e-14 * (1.0 + p.alpha.norm()) {
        return Err(Error::Domain(format!(
            "q_coefficient^2 = {q2} does not square to alpha = {}",
            p.alpha
        )));
    }
    Ok(p)
}

// antiderivative of q(z) h'(z), the analytic potential of the height t/2
fn height_potential(f: &HarmonicMap, spec: &LiftSpec) -> PowerSeries {
    f.h_prime()
        .scale(spec.q_coefficient)
        .shift(spec.k as usize)
        .antiderivative()
}

/// Lifts a constructed even-power map to a triangulated minimal graph.
///
/// Every vertex is `(Re f(z), Im f(z), 2 Im P(z) + c)` with `P` the series
/// antiderivative of `q h'`. Quads between rings split along the shorter
/// diagonal in `(u, v)`; the first ring closes with a center fan. Errors if
/// the series tails at the rim exceed 1e-6 (raise the truncation order or
/// shrink the radius).
pub fn lift(f: &HarmonicMap, spec: &LiftSpec, grid: GridSpec) -> Result<SurfaceMesh> {
    let params = validate_lift(f, spec)?;
    let potential = height_potential(f, spec);

    let s = grid.n_spokes();
    let c = grid.n_circles();
    let mut vertices = Vec::with_capacity(c * s + 1);
    let mut worst_tail = 0.0f64;
    for z in grid.nodes() {
        let w = f.evaluate(z)?;
        let (pv, tail_p) = potential.eval(z)?;
        let (_, tail_h) = f.h().eval(z)?;
        let (_, tail_g) = f.g().eval(z)?;
        worst_tail = worst_tail.max(tail_p).max(tail_h + tail_g);
        vertices.push([w.re, w.im, 2.0 * pv.im + spec.c_offset]);
    }
    if !(worst_tail <= 1e-6) {
        return Err(Error::Domain(format!(
            "series tail {worst_tail:e} at radius {} exceeds 1e-6; increase trunc_order",
            grid.radius()
        )));
    }

    let idx = |i: usize, j: usize| 1 + (i - 1) * s + (j % s);
    let mut faces = Vec::with_capacity(s + (c - 1) * s * 2);
    for j in 0..s {
        faces.push(orient(&vertices, [0, idx(1, j), idx(1, j + 1)]));
    }
    for i in 1..c {
        for j in 0..s {
            let p00 = idx(i, j);
            let p10 = idx(i + 1, j);
            let p11 = idx(i + 1, j + 1);
            let p01 = idx(i, j + 1);
            let d0 = planar_dist(&vertices, p00, p11);
            let d1 = planar_dist(&vertices, p10, p01);
            if d0 <= d1 {
                faces.push(orient(&vertices, [p00, p10, p11]));
                faces.push(orient(&vertices, [p00, p11, p01]));
            } else {
                faces.push(orient(&vertices, [p00, p10, p01]));
                faces.push(orient(&vertices, [p10, p11, p01]));
            }
        }
    }

    Ok(SurfaceMesh { vertices, faces, grid, params })
}

fn planar_dist(v: &[[f64; 3]], i: usize, j: usize) -> f64 {
    let (a, b) = (v[i], v[j]);
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

// flip the face if its (u, v) projection winds clockwise
fn orient(v: &[[f64; 3]], f: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = [v[f[0]], v[f[1]], v[f[2]]];
    let area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if area2 < 0.0 {
        [f[0], f[2], f[1]]
    } else {
        f
    }
}

/// Closed-form third coordinate (with `c = 0`):
/// `t(z) = 2 Im{ sqrt(alpha) z^{k+1}/(k+1) [F(a,b;a+b;.) * F(2,k+1;k+2;.)] }`
/// where the product is the coefficient-wise Hadamard convolution and the
/// first factor is the `z^2`-series for the odd family.
pub fn t_closed_form(params: &ConstructionParams, z: Complex64) -> Result<f64> {
    if !params.m.is_multiple_of(2) {
        return Err(Error::OddDilatationPower(params.m));
    }
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z.norm()));
    }
    let k = params.m / 2;
    let n = params.trunc_order;
    let kf = k as f64;
    let gfac = hyp2f1_coeffs(
        HypParams::new(Complex64::new(2.0, 0.0), Complex64::new(kf + 1.0, 0.0), Complex64::new(kf + 2.0, 0.0))?,
        n,
    );
    let series = match params.variant {
        Variant::T1 => {
            let f = hyp2f1_coeffs(HypParams::new(params.a, params.b, params.a + params.b)?, n);
            f.hadamard(&gfac)
        }
        Variant::T2 => {
            let f = hyp2f1_coeffs(HypParams::new(params.a, params.b, params.a + params.b)?, n / 2);
            let mut coeffs = vec![Complex64::ZERO; n + 1];
            for j in 0..=n / 2 {
                coeffs[2 * j] = f.coeff(j) * gfac.coeff(2 * j);
            }
            PowerSeries::new(coeffs)
        }
    };
    let (sv, _) = series.eval(z)?;
    let q = params.alpha.sqrt();
    let t = 2.0 * (q * z.powu(k + 1) / (kf + 1.0) * sv).im;

    #[cfg(debug_assertions)]
    if params.a == Complex64::ONE && params.b == Complex64::ONE {
        if let Some(t_log) = t_log_form(params.m, params.alpha, z) {
            debug_assert!(
                (t - t_log).abs() < 1e-8,
                "closed forms disagree at z = {z}: {t} vs {t_log}"
            );
        }
    }

    Ok(t)
}

/// Logarithmic special form of `t` for `a = b = 1` and `m` in {2, 4, 6}.
pub fn t_log_form(m: u32, alpha: Complex64, z: Complex64) -> Option<f64> {
    let q = alpha.sqrt();
    let log1mz = (Complex64::ONE - z).ln();
    let z2 = z * z;
    match m {
        2 => Some(-2.0 * (q * (z + log1mz)).im),
        4 => Some(-(q * (2.0 * z + z2 + 2.0 * log1mz)).im),
        6 => Some(-(q * (6.0 * z + 3.0 * z2 + 2.0 * z2 * z + 6.0 * log1mz)).im / 3.0),
        _ => None,
    }
}

/// Differential-geometry residuals of the lifted surface at `z`.
///
/// First derivatives are analytic (assembled from `h'`, `g'`, `q h'`);
/// second derivatives use central finite differences of width `step`. The
/// isothermal residuals are normalized by `E + G`, the Laplacian by `E`; the
/// mean curvature is reported raw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryResiduals {
    /// `|E - G| / (E + G)`; zero for exact isothermal parameters.
    pub isothermal_e_minus_g: f64,
    /// `|F| / (E + G)`; zero for exact isothermal parameters.
    pub isothermal_f: f64,
    /// Mean curvature `H`; zero for an exact minimal surface.
    pub mean_curvature: f64,
    /// Largest 5-point-stencil Laplacian of the three coordinates over `E`.
    pub laplacian_max: f64,
}

/// Evaluates the residuals at an interior point `z` with finite-difference
/// step `step`. Requires `|z| + 2 step` to stay inside the evaluation disk.
pub fn geometry_residuals(
    f: &HarmonicMap,
    spec: &LiftSpec,
    z: Complex64,
    step: f64,
) -> Result<GeometryResiduals> {
    validate_lift(f, spec)?;
    if !(step > 0.0) {
        return Err(Error::Domain("step must be positive".into()));
    }
    let reach = z.norm() + 2.0 * step;
    if reach >= MAX_RADIUS {
        return Err(Error::StepTooLarge { step, reach, radius: MAX_RADIUS });
    }

    let potential = height_potential(f, spec);
    let hp = f.h_prime().eval(z)?.0;
    let gp = f.g_prime().eval(z)?.0;
    let w = spec.q_coefficient * z.powu(spec.k) * hp; // q(z) h'(z)

    let x_u = [hp.re + gp.re, hp.im - gp.im, 2.0 * w.im];
    let x_v = [-(hp.im + gp.im), hp.re - gp.re, 2.0 * w.re];
    let e = dot(x_u, x_u);
    let g = dot(x_v, x_v);
    let fff = dot(x_u, x_v);

    let coord = |z: Complex64| -> Result<[f64; 3]> {
        let w = f.evaluate(z)?;
        let (pv, _) = potential.eval(z)?;
        Ok([w.re, w.im, 2.0 * pv.im + spec.c_offset])
    };

    let s = step;
    let c0 = coord(z)?;
    let cxp = coord(z + s)?;
    let cxm = coord(z - s)?;
    let cyp = coord(z + Complex64::new(0.0, s))?;
    let cym = coord(z - Complex64::new(0.0, s))?;
    let cpp = coord(z + Complex64::new(s, s))?;
    let cpm = coord(z + Complex64::new(s, -s))?;
    let cmp = coord(z + Complex64::new(-s, s))?;
    let cmm = coord(z + Complex64::new(-s, -s))?;

    let mut x_uu = [0.0; 3];
    let mut x_vv = [0.0; 3];
    let mut x_uv = [0.0; 3];
    let mut laplacian: f64 = 0.0;
    for i in 0..3 {
        x_uu[i] = (cxp[i] - 2.0 * c0[i] + cxm[i]) / (s * s);
        x_vv[i] = (cyp[i] - 2.0 * c0[i] + cym[i]) / (s * s);
        x_uv[i] = (cpp[i] - cpm[i] - cmp[i] + cmm[i]) / (4.0 * s * s);
        laplacian = laplacian.max((x_uu[i] + x_vv[i]).abs());
    }

    let n = cross(x_u, x_v);
    let n_len = dot(n, n).sqrt();
    if n_len == 0.0 {
        return Err(Error::NonFinite("degenerate tangent plane".into()));
    }
    let n = [n[0] / n_len, n[1] / n_len, n[2] / n_len];

    let denom = 2.0 * (e * g - fff * fff);
    let h_mean = (e * dot(n, x_vv) - 2.0 * fff * dot(n, x_uv) + g * dot(n, x_uu)) / denom;

    Ok(GeometryResiduals {
        isothermal_e_minus_g: (e - g).abs() / (e + g),
        isothermal_f: fff.abs() / (e + g),
        mean_curvature: h_mean,
        laplacian_max: laplacian / e,
    })
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
