use std::f64::consts::PI;

use simcurve::analysis::{classify, estimate_frames, ClassifyTolerances, CurveClass};
use simcurve::generators::{gen_general_helix, gen_plane_curve, gen_salkowski, gen_slant_helix};
use simcurve::{
    integrate_frenet, precession_profile, slant_torsion_from_curvature, CurveError, Interval, IntrinsicProfile,
    PrecessionParams, SampledCurve, ScalarField, Sign, Vec3,
};

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

/// Adaptive Simpson to absolute tolerance `tol`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 40)
}

#[test]
fn cornu_spiral_matches_fresnel_oracle() {
    let curve = gen_plane_curve(&ScalarField::polynomial(vec![0.0, 1.0]), iv(0.0, 3.0), 1e-3).unwrap();
    let mut worst: f64 = 0.0;
    for p in curve.samples().iter().step_by(150) {
        let x = adaptive_simpson(&|u| (u * u / 2.0).cos(), 0.0, p.s, 1e-14);
        let y = adaptive_simpson(&|u| (u * u / 2.0).sin(), 0.0, p.s, 1e-14);
        worst = worst.max((p.position - Vec3::new(x, y, 0.0)).norm());
    }
    assert!(worst <= 1e-8, "{worst}");
}

/// Integrates `profile` from the generator's first sample and compares positions.
fn equivalence_error(curve: &SampledCurve, profile: &IntrinsicProfile) -> f64 {
    let first = &curve.samples()[0];
    let again = integrate_frenet(profile, first.frame, first.position, curve.step()).unwrap();
    curve
        .samples()
        .iter()
        .zip(again.samples())
        .map(|(a, b)| (a.position - b.position).norm())
        .fold(0.0, f64::max)
}

#[test]
fn generators_agree_with_integrator() {
    let kappa = ScalarField::sinusoid(1.0, 0.3, 2.0, 0.4).unwrap();
    let domain = iv(0.0, 1.0);

    let plane = gen_plane_curve(&kappa, domain, 1e-3).unwrap();
    let p = IntrinsicProfile::new(kappa.clone(), ScalarField::zero(), domain).unwrap();
    assert!(equivalence_error(&plane, &p) < 1e-5);

    let n: f64 = 0.6;
    let helix = gen_general_helix(&kappa, n, domain, 1e-3).unwrap();
    let r = helix.samples()[0].tau / helix.samples()[0].kappa;
    assert!((r.abs() - n / (1.0 - n * n).sqrt()).abs() < 1e-12);
    let p = IntrinsicProfile::new(kappa.clone(), ScalarField::sinusoid(r, 0.3 * r, 2.0, 0.4).unwrap(), domain).unwrap();
    assert!(equivalence_error(&helix, &p) < 1e-5);

    let slant = gen_slant_helix(&kappa, n, iv(0.0, 0.9), 1e-3).unwrap();
    let sign = if slant.samples()[10].tau > 0.0 { Sign::Plus } else { Sign::Minus };
    let m = n / (1.0 - n * n).sqrt();
    let tau = slant_torsion_from_curvature(&kappa, m, sign, iv(0.0, 0.9)).unwrap();
    let p = IntrinsicProfile::new(kappa.clone(), tau, iv(0.0, 0.9)).unwrap();
    assert!(equivalence_error(&slant, &p) < 1e-5);

    let n: f64 = 0.8;
    let m = n / (1.0 - n * n).sqrt();
    let salk = gen_salkowski(n, iv(0.0, (m * 0.7).asin() / n), 701).unwrap();
    let one = ScalarField::constant(1.0);
    let tau = slant_torsion_from_curvature(&one, m, Sign::Plus, iv(0.0, 0.7)).unwrap();
    let p = IntrinsicProfile::new(one, tau, iv(0.0, 0.7)).unwrap();
    assert!(equivalence_error(&salk, &p) < 1e-5);
}

#[test]
fn general_helix_flattens_as_n_vanishes() {
    let kappa = ScalarField::sinusoid(1.0, 0.3, 2.0, 0.0).unwrap();
    let plane = gen_plane_curve(&kappa, iv(0.0, 2.0), 1e-3).unwrap();
    let helix = gen_general_helix(&kappa, 1e-4, iv(0.0, 2.0), 1e-3).unwrap();
    // Compare shapes up to the rigid motion fixed by the first frames.
    let (fp, fh) = (plane.samples()[0].frame.matrix(), helix.samples()[0].frame.matrix());
    let rot = fp * fh.transpose();
    let worst = plane
        .samples()
        .iter()
        .zip(helix.samples())
        .map(|(a, b)| (a.position - rot * b.position).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-3, "{worst}");
}

#[test]
fn slant_helix_normal_constant_through_estimates() {
    let curve = gen_slant_helix(&ScalarField::constant(1.0), 0.8, iv(0.0, 0.7), 1e-3).unwrap();
    let est = estimate_frames(&curve).unwrap();
    for e in est.valid() {
        assert!((e.kappa - 1.0).abs() < 1e-3);
        assert!((e.frame.normal().z - 0.8).abs() < 2e-3);
    }
    let m: f64 = 4.0 / 3.0;
    let n = m / (1.0 + m * m).sqrt();
    assert!(gen_slant_helix(&ScalarField::constant(1.0), n, iv(0.0, 0.74), 1e-3).is_ok());
    match gen_slant_helix(&ScalarField::constant(1.0), n, iv(0.0, 0.8), 1e-3) {
        Err(CurveError::DomainViolation { at, .. }) => assert!((at - 0.75).abs() < 1e-6, "{at}"),
        other => panic!("{other:?}"),
    }
}

fn labels(curve: &SampledCurve) -> Vec<CurveClass> {
    classify(curve, &ClassifyTolerances::default()).unwrap().labels.into_iter().collect()
}

fn integrated(kappa: ScalarField, tau: ScalarField, domain: Interval) -> SampledCurve {
    let p = IntrinsicProfile::new(kappa, tau, domain).unwrap();
    integrate_frenet(&p, simcurve::FrenetFrame::canonical(), Vec3::zeros(), 1e-3).unwrap()
}

#[test]
fn classification_labels() {
    use CurveClass::*;
    let kappa = ScalarField::sinusoid(1.0, 0.3, 2.0, 0.0).unwrap();
    assert_eq!(labels(&gen_plane_curve(&kappa, iv(0.0, 3.0), 1e-3).unwrap()), vec![PlaneCurve]);
    assert_eq!(
        labels(&integrated(ScalarField::constant(0.8), ScalarField::constant(0.6), iv(0.0, 4.0))),
        vec![CircularHelix, GeneralHelix]
    );
    assert_eq!(labels(&gen_general_helix(&kappa, 0.5, iv(0.0, 3.0), 1e-3).unwrap()), vec![GeneralHelix]);
    let n: f64 = 0.8;
    let m = n / (1.0 - n * n).sqrt();
    let salk = gen_salkowski(n, iv((m * 0.1).asin() / n, (m * 0.7).asin() / n), 601).unwrap();
    let report = classify(&salk, &ClassifyTolerances::default()).unwrap();
    assert_eq!(report.labels.iter().copied().collect::<Vec<_>>(), vec![SlantHelix, Salkowski]);
    assert!((report.sigma_stats.unwrap().mean - m).abs() < 1e-3);
    assert!((report.angle.unwrap() - n.acos()).abs() < 1e-3);

    let prec = precession_profile(PrecessionParams::new(1.0, 1.0, false).unwrap(), iv(0.1, PI - 0.1)).unwrap();
    let c = integrate_frenet(&prec, simcurve::FrenetFrame::canonical(), Vec3::zeros(), 1e-3).unwrap();
    let report = classify(&c, &ClassifyTolerances::default()).unwrap();
    assert!(report.has(SlantHelix) && report.has(ConstantPrecession));
    let fit = report.precession.unwrap();
    assert!((fit.mu - 1.0).abs() < 1e-3 && (fit.m - 1.0).abs() < 1e-3);

    let generic = integrated(kappa, ScalarField::polynomial(vec![0.2, 0.5]), iv(0.0, 3.0));
    assert_eq!(labels(&generic), vec![Generic]);

    let line = SampledCurve::straight_line(Vec3::zeros(), Vec3::x(), iv(0.0, 1.0), 1e-2).unwrap();
    assert_eq!(labels(&line), vec![StraightLine]);
}
