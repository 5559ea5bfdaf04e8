//! Built-in verification suites for `simcurve verify`.

use std::f64::consts::PI;

use serde_json::Value;

use simcurve::analysis::{classify, estimate_frames, ClassifyTolerances, CurveClass};
use simcurve::frenet::tangent_ode_residual;
use simcurve::generators::{gen_plane_curve, gen_salkowski};
use simcurve::io::verify_json;
use simcurve::similarity::{check_similar, partner_domain, similar_partner, SimilarityTolerances};
use simcurve::{
    integrate_frenet, precession_profile, FrenetFrame, Interval, IntrinsicProfile, PrecessionParams, ScalarField, Vec3,
};

use crate::CliError;

type Items = Vec<(String, f64, bool)>;
type Suite = fn() -> Result<Items, CliError>;

/// Suite names with their implementations.
pub const SUITES: [(&str, Suite); 6] = [
    ("circle", circle),
    ("helix-order", helix_order),
    ("salkowski", salkowski),
    ("tangent-ode", tangent_ode),
    ("similarity", similarity),
    ("precession", precession),
];

/// Runs the named suite; `None` for unknown names.
pub fn run_suite(name: &str) -> Option<Result<Value, CliError>> {
    let (_, suite) = SUITES.iter().find(|(n, _)| *n == name)?;
    Some(suite().map(|items| verify_json(name, &items)))
}

fn item(name: &str, value: f64, pass: bool) -> (String, f64, bool) {
    (name.to_string(), value, pass)
}

fn interval(a: f64, b: f64) -> Result<Interval, CliError> {
    Ok(Interval::new(a, b)?)
}

fn circle() -> Result<Items, CliError> {
    let c = gen_plane_curve(&ScalarField::constant(1.0), interval(0.0, 2.0 * PI)?, 1e-3)?;
    let err = c
        .samples()
        .iter()
        .map(|p| (p.position - Vec3::new(p.s.sin(), 1.0 - p.s.cos(), 0.0)).norm())
        .fold(0.0, f64::max);
    Ok(vec![item("max_position_error", err, err <= 1e-9)])
}

/// Circular helix with `kappa = 0.8`, `tau = 0.6` started on its closed form.
fn helix_endpoint_error(h: f64, len: f64) -> Result<f64, CliError> {
    let (k, t) = (0.8, 0.6);
    let c = f64::hypot(k, t);
    let (r, b) = (k / (c * c), t / (c * c));
    let pos = |s: f64| Vec3::new(r * (c * s).cos(), r * (c * s).sin(), b * c * s);
    let tangent = Vec3::new(0.0, k / c, t / c);
    let frame = FrenetFrame::new(tangent, Vec3::new(-1.0, 0.0, 0.0), Vec3::new(0.0, -t / c, k / c))?;
    let profile = IntrinsicProfile::new(ScalarField::constant(k), ScalarField::constant(t), interval(0.0, len)?)?;
    let curve = integrate_frenet(&profile, frame, pos(0.0), h)?;
    let last = &curve.samples()[curve.len() - 1];
    Ok((last.position - pos(last.s)).norm())
}

fn helix_order() -> Result<Items, CliError> {
    let fine = helix_endpoint_error(1e-3, 20.0)?;
    let ratio = helix_endpoint_error(0.1, 20.0)? / helix_endpoint_error(0.05, 20.0)?;
    Ok(vec![
        item("endpoint_error", fine, fine <= 1e-6),
        item("halving_ratio", ratio, ratio >= 12.0),
    ])
}

fn salkowski() -> Result<Items, CliError> {
    let n: f64 = 0.8;
    let m = n / (1.0 - n * n).sqrt();
    let t_range = interval((m * 0.05).asin() / n, (m * 0.7).asin() / n)?;
    let curve = gen_salkowski(n, t_range, 1301)?;
    let est = estimate_frames(&curve)?;
    let (mut dk, mut dn): (f64, f64) = (0.0, 0.0);
    for e in est.valid() {
        dk = dk.max((e.kappa - 1.0).abs());
        dn = dn.max((e.frame.normal().z - n).abs());
    }
    Ok(vec![
        item("curvature_deviation", dk, dk <= 1e-3),
        item("normal_axis_deviation", dn, dn <= 5e-3),
    ])
}

fn tangent_ode() -> Result<Items, CliError> {
    let profile = IntrinsicProfile::new(ScalarField::constant(0.8), ScalarField::constant(0.6), interval(0.0, 5.0)?)?;
    let curve = integrate_frenet(&profile, FrenetFrame::canonical(), Vec3::zeros(), 3.125e-4)?;
    let r = tangent_ode_residual(&curve, 1e-2)?.max();
    Ok(vec![item("helix_residual", r, r <= 1e-3)])
}

fn similarity() -> Result<Items, CliError> {
    let alpha = IntrinsicProfile::new(
        ScalarField::sinusoid(1.0, 0.3, 1.5, 0.0)?,
        ScalarField::polynomial(vec![0.4, 0.2]),
        interval(0.0, 2.0)?,
    )?;
    let lambda = ScalarField::polynomial(vec![1.0, 0.0, 1.0]);
    let domain = partner_domain(&lambda, alpha.domain(), 0.0)?;
    let (beta, t) = similar_partner(&alpha, lambda, domain)?;
    let ca = integrate_frenet(&alpha, FrenetFrame::canonical(), Vec3::zeros(), 1e-3)?;
    let cb = integrate_frenet(&beta, FrenetFrame::canonical(), Vec3::zeros(), 1e-3)?;
    let tol = SimilarityTolerances::default();
    let r = check_similar(&ca, &cb, &t, &tol)?;
    Ok(vec![
        item("tangent_dev", r.tangent_dev, r.verdict.tangent),
        item("normal_dev", r.normal_dev, r.verdict.normal),
        item("binormal_dev", r.binormal_dev, r.verdict.binormal),
        item("ratio_dev", r.ratio_dev, r.ratio_dev < tol.ratio),
        item("theta_dev", r.theta_dev, r.theta_dev < tol.theta),
    ])
}

fn precession() -> Result<Items, CliError> {
    let params = PrecessionParams::new(1.0, 1.0, false)?;
    let profile = precession_profile(params, interval(0.1, PI - 0.1)?)?;
    let curve = integrate_frenet(&profile, FrenetFrame::canonical(), Vec3::zeros(), 1e-3)?;
    let report = classify(&curve, &ClassifyTolerances::default())?;
    let sigma = report.sigma_stats.map_or(f64::NAN, |s| s.mean);
    let labelled = report.has(CurveClass::SlantHelix) && report.has(CurveClass::ConstantPrecession);
    Ok(vec![
        item("sigma_mean_deviation", (sigma + 1.0).abs(), (sigma + 1.0).abs() <= 1e-3),
        item("labels_slant_and_precession", f64::from(u8::from(labelled)), labelled),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for (name, _) in SUITES {
            let v = run_suite(name).unwrap().unwrap();
            assert_eq!(v["verdicts"]["overall"], true, "{name}: {v}");
        }
        assert!(run_suite("nope").is_none());
    }
}
