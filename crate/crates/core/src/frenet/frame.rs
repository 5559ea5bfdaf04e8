use nalgebra::Matrix3;

use crate::error::{CurveError, Result};
use crate::Vec3;

/// Tolerance for accepting a caller-supplied frame.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// Largest Gram-matrix deviation `reorthonormalize` will repair.
pub const REPAIR_LIMIT: f64 = 0.1;

/// Right-handed orthonormal triple (T, N, B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    tangent: Vec3,
    normal: Vec3,
    binormal: Vec3,
}

impl FrenetFrame {
    /// Validates orthonormality and handedness to [`FRAME_TOLERANCE`].
    pub fn new(tangent: Vec3, normal: Vec3, binormal: Vec3) -> Result<Self> {
        let deviation = gram_deviation(&tangent, &normal, &binormal);
        let det = tangent.dot(&normal.cross(&binormal));
        let worst = deviation.max((det - 1.0).abs());
        if !worst.is_finite() || worst > FRAME_TOLERANCE {
            return Err(CurveError::InvalidFrame { deviation: worst });
        }
        Ok(FrenetFrame {
            tangent,
            normal,
            binormal,
        })
    }

    /// T = e1, N = e2, B = e3.
    pub fn canonical() -> Self {
        FrenetFrame {
            tangent: Vec3::x(),
            normal: Vec3::y(),
            binormal: Vec3::z(),
        }
    }

    /// Frame with the given unit tangent and an arbitrary completion.
    pub fn completing(tangent: Vec3) -> Result<Self> {
        let norm = tangent.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(CurveError::DegenerateCurve("tangent has zero length".into()));
        }
        let t = tangent / norm;
        let helper = if t.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
        let n = (helper - t * t.dot(&helper)).normalize();
        Ok(FrenetFrame {
            tangent: t,
            normal: n,
            binormal: t.cross(&n),
        })
    }

    pub fn tangent(&self) -> Vec3 {
        self.tangent
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn binormal(&self) -> Vec3 {
        self.binormal
    }

    /// Matrix with columns T, N, B.
    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.tangent, self.normal, self.binormal])
    }

    pub fn determinant(&self) -> f64 {
        self.tangent.dot(&self.normal.cross(&self.binormal))
    }

    pub fn orthonormality_error(&self) -> f64 {
        gram_deviation(&self.tangent, &self.normal, &self.binormal)
    }

    /// Applies a rotation to all three vectors.
    pub fn rotated(&self, rotation: &Matrix3<f64>) -> Self {
        FrenetFrame {
            tangent: rotation * self.tangent,
            normal: rotation * self.normal,
            binormal: rotation * self.binormal,
        }
    }
}

/// Max-norm deviation of the Gram matrix of `(a, b, c)` from the identity.
pub fn gram_deviation(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let m = Matrix3::from_columns(&[*a, *b, *c]);
    (m.transpose() * m - Matrix3::identity()).abs().max()
}

/// Gram–Schmidt in the order T, N, then `B = T x N`.
pub fn reorthonormalize(tangent: Vec3, normal: Vec3, binormal: Vec3) -> Result<FrenetFrame> {
    let deviation = gram_deviation(&tangent, &normal, &binormal);
    if !(deviation <= REPAIR_LIMIT) {
        return Err(CurveError::TooDegenerate { deviation });
    }
    let t = tangent / tangent.norm();
    let n = normal - t * t.dot(&normal);
    let n = n / n.norm();
    Ok(FrenetFrame {
        tangent: t,
        normal: n,
        binormal: t.cross(&n),
    })
}
