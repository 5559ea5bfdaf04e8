use nalgebra::{DMatrix, Matrix3, SymmetricEigen};

use crate::error::{CurveError, Result};
use crate::Vec3;

/// Best-fit general quadric `x^T Q x + l^T x + c = 0` through a point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricFit {
    /// `[xx, yy, zz, xy, xz, yz, x, y, z, 1]` in the original coordinates, unit norm.
    pub coefficients: [f64; 10],
    /// Eigenvalues of `Q`, sign-normalised so that at least two are positive, sorted descending.
    pub eigenvalues: [f64; 3],
    /// Counts of positive and negative eigenvalues (relative threshold 1e-6).
    pub signature: (usize, usize),
    /// Smallest over second-smallest singular value of the design matrix.
    pub conditioning: f64,
    /// Centre of the quadric (when `Q` is invertible).
    pub center: Option<Vec3>,
    /// With `Q` scaled so the mean of the positive eigenvalues is 1: `-lambda_min`.
    pub axial_ratio: f64,
    /// With the same scaling: the constant on the right of `y^T Q y = C` about the centre.
    pub constant: f64,
}

impl QuadricFit {
    /// Eigenvalue signature (+, +, -).
    pub fn is_hyperboloid_signature(&self) -> bool {
        self.signature == (2, 1)
    }
}

/// Fits a quadric by the smallest right singular vector of the normalised design matrix.
pub fn fit_quadric(points: &[Vec3]) -> Result<QuadricFit> {
    if points.len() < 10 {
        return Err(CurveError::TooFewSamples {
            needed: 10,
            got: points.len(),
        });
    }
    let centroid = points.iter().sum::<Vec3>() / points.len() as f64;
    let scale = (points.iter().map(|p| (p - centroid).norm_squared()).sum::<f64>() / points.len() as f64).sqrt();
    if !(scale > 0.0) {
        return Err(CurveError::DegenerateCurve("points coincide".into()));
    }
    let rows: Vec<[f64; 10]> = points
        .iter()
        .map(|p| {
            let q = (p - centroid) / scale;
            [q.x * q.x, q.y * q.y, q.z * q.z, q.x * q.y, q.x * q.z, q.y * q.z, q.x, q.y, q.z, 1.0]
        })
        .collect();
    let design = DMatrix::from_fn(rows.len(), 10, |i, j| rows[i][j]);
    let svd = design.svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or_else(|| CurveError::DegenerateCurve("SVD failed".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let (k0, k1) = (order[0], order[1]);
    let conditioning = svd.singular_values[k0] / svd.singular_values[k1];
    let w: Vec<f64> = (0..10).map(|j| v_t[(k0, j)]).collect();

    // Quadric in normalised coordinates q = (x - centroid) / scale.
    let qn = Matrix3::new(
        w[0], w[3] / 2.0, w[4] / 2.0, //
        w[3] / 2.0, w[1], w[5] / 2.0, //
        w[4] / 2.0, w[5] / 2.0, w[2],
    );
    let ln = Vec3::new(w[6], w[7], w[8]);
    let cn = w[9];
    // Back to original coordinates.
    let q = qn / (scale * scale);
    let l = ln / scale - q * centroid * 2.0;
    let c = cn - ln.dot(&centroid) / scale + centroid.dot(&(qn * centroid)) / (scale * scale);
    let mut coefficients = [
        q[(0, 0)],
        q[(1, 1)],
        q[(2, 2)],
        2.0 * q[(0, 1)],
        2.0 * q[(0, 2)],
        2.0 * q[(1, 2)],
        l.x,
        l.y,
        l.z,
        c,
    ];
    let norm = coefficients.iter().map(|v| v * v).sum::<f64>().sqrt();
    coefficients.iter_mut().for_each(|v| *v /= norm);

    let eig = SymmetricEigen::new(qn);
    let mut ev = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
    let big = ev.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let positives = ev.iter().filter(|v| **v > 1e-6 * big).count();
    let negatives = ev.iter().filter(|v| **v < -1e-6 * big).count();
    let flip = negatives > positives;
    if flip {
        ev.iter_mut().for_each(|v| *v = -*v);
    }
    ev.sort_by(|a, b| b.total_cmp(a));
    let signature = if flip { (negatives, positives) } else { (positives, negatives) };

    let sign = if flip { -1.0 } else { 1.0 };
    let (qs, ls, cs) = (qn * sign, ln * sign, cn * sign);
    let center_n = qs.try_inverse().map(|inv| inv * ls * -0.5);
    let pos: Vec<f64> = ev.iter().copied().filter(|v| *v > 1e-6 * big).collect();
    let unit = if pos.is_empty() { 1.0 } else { pos.iter().sum::<f64>() / pos.len() as f64 };
    let (center, constant) = match center_n {
        Some(cn_) => {
            let rhs = -(cs + 0.5 * ls.dot(&cn_));
            (Some(centroid + cn_ * scale), rhs * scale * scale / unit)
        }
        None => (None, f64::NAN),
    };
    Ok(QuadricFit {
        coefficients,
        eigenvalues: ev,
        signature,
        conditioning,
        center,
        axial_ratio: -ev[2] / unit,
        constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_hyperboloid_of_one_sheet() {
        // x^2 + y^2 - 4 z^2 = 9, rotated and shifted.
        let rot = nalgebra::Rotation3::from_euler_angles(0.3, -0.2, 0.7);
        let shift = Vec3::new(1.0, -2.0, 0.5);
        let mut pts = Vec::new();
        for i in 0..40 {
            for j in 0..10 {
                let z = -1.0 + 0.2 * j as f64;
                let r = (9.0 + 4.0 * z * z).sqrt();
                let a = i as f64 * 0.157;
                pts.push(rot * Vec3::new(r * a.cos(), r * a.sin(), z) + shift);
            }
        }
        let fit = fit_quadric(&pts).unwrap();
        assert!(fit.is_hyperboloid_signature());
        assert!((fit.axial_ratio - 4.0).abs() < 1e-8, "{}", fit.axial_ratio);
        assert!((fit.constant - 9.0).abs() < 1e-7, "{}", fit.constant);
        assert!((fit.center.unwrap() - shift).norm() < 1e-8);
        assert!(fit.conditioning < 1e-8);
    }

    #[test]
    fn sphere_has_definite_signature() {
        let mut pts = Vec::new();
        for i in 0..20 {
            for j in 1..10 {
                let (t, p) = (i as f64 * 0.314, j as f64 * 0.314);
                pts.push(Vec3::new(p.sin() * t.cos(), p.sin() * t.sin(), p.cos()) * 2.0);
            }
        }
        let fit = fit_quadric(&pts).unwrap();
        assert_eq!(fit.signature, (3, 0));
        assert!((fit.constant - 4.0).abs() < 1e-8);
    }
}
