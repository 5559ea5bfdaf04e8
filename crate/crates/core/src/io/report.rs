use serde_json::{json, Map, Value};

use crate::analysis::{ClassificationReport, SeriesStats};
use crate::similarity::SimilarityReport;

fn stats(s: &Option<SeriesStats>) -> Value {
    match s {
        Some(s) => json!({"mean": s.mean, "min": s.min, "max": s.max, "spread": s.spread}),
        None => Value::Null,
    }
}

/// `{"labels": [...], "stats": {...}, "verdicts": {}}`.
pub fn classification_json(r: &ClassificationReport) -> Value {
    let labels: Vec<&str> = r.labels.iter().map(|c| c.name()).collect();
    let axis = r.axis.map_or(Value::Null, |a| {
        json!({"direction": [a.direction.x, a.direction.y, a.direction.z], "residual": a.residual})
    });
    let precession = r.precession.map_or(Value::Null, |p| {
        json!({
            "amplitude": p.amplitude,
            "mu": p.mu,
            "m": p.m,
            "phase": p.phase,
            "phase_swapped": p.phase_swapped,
            "residual": p.residual,
        })
    });
    json!({
        "labels": labels,
        "stats": {
            "kappa": stats(&r.kappa_stats),
            "tau": stats(&r.tau_stats),
            "ratio": stats(&r.ratio_stats),
            "sigma": stats(&r.sigma_stats),
            "axis": axis,
            "angle": r.angle,
            "precession": precession,
            "stride": r.stride,
            "samples_used": r.samples_used,
        },
        "verdicts": {},
    })
}

/// `{"labels": [], "stats": {deviations}, "verdicts": {predicates}}`.
pub fn similarity_json(r: &SimilarityReport) -> Value {
    let v = r.verdict;
    json!({
        "labels": [],
        "stats": {
            "tangent_dev": r.tangent_dev,
            "normal_dev": r.normal_dev,
            "binormal_dev": r.binormal_dev,
            "ratio_dev": r.ratio_dev,
            "theta_dev": r.theta_dev,
            "samples": r.samples,
        },
        "verdicts": {
            "tangent": v.tangent,
            "normal": v.normal,
            "binormal": v.binormal,
            "ratio": v.ratio,
            "overall": v.overall,
        },
    })
}

/// Report for a named check: one verdict and one measured value per item.
pub fn verify_json(name: &str, items: &[(String, f64, bool)]) -> Value {
    let mut stats = Map::new();
    let mut verdicts = Map::new();
    for (key, value, pass) in items {
        stats.insert(key.clone(), json!(value));
        verdicts.insert(key.clone(), json!(pass));
    }
    verdicts.insert("overall".into(), json!(items.iter().all(|i| i.2)));
    json!({"labels": [name], "stats": stats, "verdicts": verdicts})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_report_shape() {
        let v = verify_json("demo", &[("a".into(), 1e-9, true), ("b".into(), 2.0, false)]);
        assert_eq!(v["labels"][0], "demo");
        assert_eq!(v["verdicts"]["overall"], false);
        assert_eq!(v["stats"]["b"], 2.0);
    }
}
