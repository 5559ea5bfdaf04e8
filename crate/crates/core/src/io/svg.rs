use std::fmt::Write;
use std::str::FromStr;

use crate::Vec3;

/// Coordinate plane for orthogonal projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Xy,
    Yz,
    Xz,
}

impl Plane {
    fn project(self, p: &Vec3) -> (f64, f64) {
        match self {
            Plane::Xy => (p.x, p.y),
            Plane::Yz => (p.y, p.z),
            Plane::Xz => (p.x, p.z),
        }
    }
}

impl FromStr for Plane {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "xy" => Ok(Plane::Xy),
            "yz" => Ok(Plane::Yz),
            "xz" => Ok(Plane::Xz),
            _ => Err(format!("unknown plane `{s}` (expected xy, yz or xz)")),
        }
    }
}

/// A single polyline of the projected points, fitted into a `size` x `size` viewport.
pub fn svg_projection(points: &[Vec3], plane: Plane, size: f64) -> String {
    let uv: Vec<(f64, f64)> = points.iter().map(|p| plane.project(p)).collect();
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for &(u, v) in &uv {
        lo = (lo.0.min(u), lo.1.min(v));
        hi = (hi.0.max(u), hi.1.max(v));
    }
    let margin = 0.05 * size;
    let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-300);
    let scale = (size - 2.0 * margin) / extent;
    let mut pts = String::new();
    for (i, &(u, v)) in uv.iter().enumerate() {
        if i > 0 {
            pts.push(' ');
        }
        // SVG y grows downward.
        let _ = write!(pts, "{:.3},{:.3}", margin + (u - lo.0) * scale, size - margin - (v - lo.1) * scale);
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{pts}\"/>\n</svg>\n"
    )
}
