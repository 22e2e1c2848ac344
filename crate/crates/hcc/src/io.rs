//! Serialization: map documents (JSON), OBJ meshes, and planar grid images
//! (CSV and SVG).
//!
//! Documents store the construction parameters alongside the coefficient
//! arrays. On parse the coefficients are authoritative: the parameters are
//! attached to the returned map only when rebuilding from them reproduces
//! the stored coefficients to 1e-12, so hand-written documents with foreign
//! coefficients are accepted and simply checked by the generic routes.

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::mapping::{build_map, ConstructionParams, HarmonicMap, Variant};
use crate::series::PowerSeries;
use crate::surface::SurfaceMesh;

pub const SCHEMA_VERSION: &str = "1";

/// On-disk form of a harmonic map. Complex numbers are `[re, im]` pairs;
/// floats are written with 17 significant digits so the document round-trips
/// doubles exactly.
#[derive(Debug, Clone, Deserialize)]
pub struct MapDocument {
    pub schema_version: String,
    pub variant: String,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub m: u32,
    pub alpha: [f64; 2],
    pub trunc_order: usize,
    pub h_coeffs: Vec<[f64; 2]>,
    pub g_coeffs: Vec<[f64; 2]>,
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_pair(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn fmt_coeffs(s: &PowerSeries) -> String {
    let items: Vec<String> = s.coeffs().iter().map(|&c| fmt_pair(c)).collect();
    format!("[{}]", items.join(", "))
}

/// Serializes a constructed map to the JSON document format.
pub fn serialize_map(f: &HarmonicMap) -> Result<String> {
    let p = f.params().ok_or_else(|| {
        Error::Document("only constructed maps carry the parameters the schema stores".into())
    })?;
    Ok(format!(
        "{{\n  \"schema_version\": \"{SCHEMA_VERSION}\",\n  \"variant\": \"{}\",\n  \"a\": {},\n  \"b\": {},\n  \"m\": {},\n  \"alpha\": {},\n  \"trunc_order\": {},\n  \"h_coeffs\": {},\n  \"g_coeffs\": {}\n}}\n",
        p.variant,
        fmt_pair(p.a),
        fmt_pair(p.b),
        p.m,
        fmt_pair(p.alpha),
        p.trunc_order,
        fmt_coeffs(f.h()),
        fmt_coeffs(f.g()),
    ))
}

fn to_series(pairs: &[[f64; 2]], field: &str) -> Result<PowerSeries> {
    if pairs.is_empty() {
        return Err(Error::Document(format!("{field} must not be empty")));
    }
    for (i, p) in pairs.iter().enumerate() {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return Err(Error::Document(format!("{field}[{i}] is not finite")));
        }
    }
    Ok(PowerSeries::new(
        pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
    ))
}

/// Parses a JSON document back into a harmonic map.
pub fn parse_map(text: &str) -> Result<HarmonicMap> {
    let doc: MapDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Document(format!(
            "schema_version: expected \"{SCHEMA_VERSION}\", got \"{}\"",
            doc.schema_version
        )));
    }
    let variant = match doc.variant.as_str() {
        "t1" => Variant::T1,
        "t2" => Variant::T2,
        other => {
            return Err(Error::Document(format!(
                "variant: expected \"t1\" or \"t2\", got \"{other}\""
            )))
        }
    };
    if doc.h_coeffs.len() != doc.trunc_order + 1 {
        return Err(Error::Document(format!(
            "h_coeffs: expected trunc_order + 1 = {} entries, got {}",
            doc.trunc_order + 1,
            doc.h_coeffs.len()
        )));
    }
    if doc.g_coeffs.len() != doc.trunc_order + 1 {
        return Err(Error::Document(format!(
            "g_coeffs: expected trunc_order + 1 = {} entries, got {}",
            doc.trunc_order + 1,
            doc.g_coeffs.len()
        )));
    }
    let h = to_series(&doc.h_coeffs, "h_coeffs")?;
    let g = to_series(&doc.g_coeffs, "g_coeffs")?;
    let map = HarmonicMap::new(h, g).map_err(|e| Error::Document(e.to_string()))?;

    // attach the parameters only when they reproduce the coefficients
    let a = Complex64::new(doc.a[0], doc.a[1]);
    let b = Complex64::new(doc.b[0], doc.b[1]);
    let alpha = Complex64::new(doc.alpha[0], doc.alpha[1]);
    if let Ok(params) =
        ConstructionParams::new(a, b, doc.m, alpha, variant, doc.trunc_order)
    {
        if let Ok(rebuilt) = build_map(&params) {
            let matches = (0..=doc.trunc_order).all(|n| {
                (rebuilt.h().coeff(n) - map.h().coeff(n)).norm() <= 1e-12
                    && (rebuilt.g().coeff(n) - map.g().coeff(n)).norm() <= 1e-12
            });
            if matches {
                return Ok(rebuilt);
            }
        }
    }
    Ok(map)
}

/// ASCII OBJ export: one `v u v t` line per vertex in grid order, then
/// 1-based `f i j k` faces. Byte-identical for identical meshes.
pub fn export_obj(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolylineKind {
    CircleImage,
    SpokeImage,
}

impl PolylineKind {
    fn name(&self) -> &'static str {
        match self {
            PolylineKind::CircleImage => "circle_image",
            PolylineKind::SpokeImage => "spoke_image",
        }
    }
}

/// Image of one grid line under the map.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub kind: PolylineKind,
    pub points: Vec<(f64, f64)>,
}

/// Images of the concentric circles and radial spokes of a polar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarImage {
    pub polylines: Vec<Polyline>,
}

const PLANAR_SAMPLES: usize = 256;

/// Samples the images of the grid's circles and spokes under `f`.
pub fn export_planar(f: &HarmonicMap, grid: GridSpec) -> Result<PlanarImage> {
    let mut polylines = Vec::with_capacity(grid.n_circles() + grid.n_spokes());
    for i in 1..=grid.n_circles() {
        let r = grid.ring_radius(i);
        let mut points = Vec::with_capacity(PLANAR_SAMPLES + 1);
        for s in 0..=PLANAR_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * s as f64 / PLANAR_SAMPLES as f64;
            let w = f.evaluate(Complex64::from_polar(r, theta))?;
            points.push((w.re, w.im));
        }
        polylines.push(Polyline { kind: PolylineKind::CircleImage, points });
    }
    for j in 0..grid.n_spokes() {
        let theta = grid.spoke_angle(j);
        let mut points = Vec::with_capacity(PLANAR_SAMPLES + 1);
        for s in 0..=PLANAR_SAMPLES {
            let rho = grid.radius() * s as f64 / PLANAR_SAMPLES as f64;
            let w = f.evaluate(Complex64::from_polar(rho, theta))?;
            points.push((w.re, w.im));
        }
        polylines.push(Polyline { kind: PolylineKind::SpokeImage, points });
    }
    Ok(PlanarImage { polylines })
}

/// CSV rows `polyline_id,kind,u,v`.
pub fn planar_csv(img: &PlanarImage) -> String {
    let mut out = String::from("polyline_id,kind,u,v\n");
    for (id, line) in img.polylines.iter().enumerate() {
        for (u, v) in &line.points {
            out.push_str(&format!("{id},{},{u},{v}\n", line.kind.name()));
        }
    }
    out
}

/// SVG 1.1 document with one stroked path per polyline. The y axis is
/// flipped so +v renders upward.
pub fn planar_svg(img: &PlanarImage) -> String {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for line in &img.polylines {
        for &(u, v) in &line.points {
            min_x = min_x.min(u);
            max_x = max_x.max(u);
            min_y = min_y.min(-v);
            max_y = max_y.max(-v);
        }
    }
    if !(min_x.is_finite() && min_y.is_finite()) {
        (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let pad = 0.02 * span;
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let stroke = 0.003 * span;

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\" width=\"800\" height=\"{}\">\n",
        800.0 * h / w
    );
    for line in &img.polylines {
        let color = match line.kind {
            PolylineKind::CircleImage => "#1f77b4",
            PolylineKind::SpokeImage => "#d62728",
        };
        let mut d = String::new();
        for (i, &(u, v)) in line.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let y = if v == 0.0 { 0.0 } else { -v };
            d.push_str(&format!("{cmd}{u} {y} "));
        }
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke}\"/>\n",
            d.trim_end()
        ));
    }
    out.push_str("</svg>\n");
    out
}
