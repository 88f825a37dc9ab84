//! SVG, CSV and raster-hash output for Cannon–Thurston polylines.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geom::CMat2;

use super::CTPolyline;

type C = Complex64;

/// Where the sphere is viewed from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    /// Apply the frame normalization before projecting.
    pub normalize: bool,
    /// Extra Möbius map applied after normalization (e.g. a rotation of
    /// the sphere to move the pole).
    pub view: CMat2,
    /// Points farther than this from the origin are treated as the pole.
    pub clip_radius: f64,
}

impl Default for Projection {
    fn default() -> Projection {
        Projection {
            normalize: true,
            view: CMat2::identity(),
            clip_radius: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    pub stroke: String,
    pub stroke_width: f64,
    /// Output width in pixels; height follows the data aspect ratio.
    pub width: u32,
}

impl Default for Style {
    fn default() -> Style {
        Style {
            stroke: "#1f3b73".into(),
            stroke_width: 0.002,
            width: 800,
        }
    }
}

/// Plane coordinates (SVG orientation, y down) of the visible points.
fn projected(poly: &CTPolyline, proj: &Projection) -> Result<Vec<(f64, f64)>> {
    let m = if proj.normalize {
        proj.view * poly.normalizer()?
    } else {
        proj.view
    };
    let pts: Vec<(f64, f64)> = poly
        .points
        .iter()
        .filter_map(|p| m.apply(p.image))
        .filter(|z: &C| z.norm() <= proj.clip_radius && z.re.is_finite() && z.im.is_finite())
        .map(|z| (z.re, -z.im))
        .collect();
    if pts.is_empty() {
        return Err(Error::Projection("every point lies at the projection pole".into()));
    }
    Ok(pts)
}

fn bounds(pts: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = 0.02 * (x1 - x0).max(y1 - y0).max(1e-9);
    (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad)
}

/// One `<polyline>` through the visible points, viewBox fitted to the data.
pub fn render_svg(poly: &CTPolyline, proj: &Projection, style: &Style) -> Result<Vec<u8>> {
    if poly.is_empty() {
        return Err(Error::domain("empty polyline"));
    }
    let pts = projected(poly, proj)?;
    let (x, y, w, h) = bounds(&pts);
    let height = (style.width as f64 * h / w).round().max(1.0) as u32;
    let mut coords = String::with_capacity(pts.len() * 20);
    for (i, (px, py)) in pts.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        write!(coords, "{px:.6},{py:.6}").expect("writing to a string");
    }
    let svg = format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\" points=\"{}\"/>\n",
            "</svg>\n"
        ),
        style.width, height, x, y, w, h, style.stroke, style.stroke_width, coords
    );
    Ok(svg.into_bytes())
}

/// SHA-256 (hex) of a `size × size` one-bit rasterization of the polyline.
pub fn raster_hash(poly: &CTPolyline, proj: &Projection, size: usize) -> Result<String> {
    let pts = projected(poly, proj)?;
    let (x0, y0, w, h) = bounds(&pts);
    let scale = (size as f64 - 1.0) / w.max(h);
    let pix = |(x, y): (f64, f64)| (((x - x0) * scale).round() as i64, ((y - y0) * scale).round() as i64);
    let mut bits = vec![0u8; size * size];
    let mut plot = |x: i64, y: i64| {
        if (0..size as i64).contains(&x) && (0..size as i64).contains(&y) {
            bits[y as usize * size + x as usize] = 1;
        }
    };
    let mut prev = pix(pts[0]);
    plot(prev.0, prev.1);
    for &p in &pts[1..] {
        let cur = pix(p);
        // Bresenham.
        let (mut x, mut y) = prev;
        let (dx, dy) = ((cur.0 - x).abs(), -(cur.1 - y).abs());
        let (sx, sy) = ((cur.0 - x).signum(), (cur.1 - y).signum());
        let mut err = dx + dy;
        loop {
            plot(x, y);
            if (x, y) == cur {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
        prev = cur;
    }
    let digest = Sha256::digest(&bits);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// `anchor,re,im` rows; the point at infinity is written as `inf,inf`.
pub fn write_csv<W: Write>(poly: &CTPolyline, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["anchor", "re", "im"]).map_err(io)?;
    for p in &poly.points {
        let (re, im) = match p.image {
            Some(z) => (format!("{:.15e}", z.re), format!("{:.15e}", z.im)),
            None => ("inf".into(), "inf".into()),
        };
        w.write_record([p.anchor.to_string(), re, im]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
