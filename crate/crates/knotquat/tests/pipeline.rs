use knotquat::affine::affine_ideal;
use knotquat::classify::{classify, Reducibility, Region, Tolerances};
use knotquat::numerics::{ideal_residual, region_profile, sample_variety};
use knotquat::polyalg::{groebner, MonomialOrder};
use knotquat::presentation::{figure_eight, trefoil};
use knotquat::variety::c_ideal;
use knotquat::{parse_presentation, two_bridge, Ideal, Presentation};

const KNOTS: [(u64, u64); 5] = [(3, 1), (5, 3), (7, 3), (7, 5), (9, 5)];

fn sampled(p: &Presentation, step: f64) -> Vec<(f64, f64)> {
    let ideal = c_ideal(p).simplified;
    sample_variety(&ideal, -2.0, 2.0, step, 1e-9)
        .unwrap()
        .into_iter()
        .flat_map(|s| s.points.into_iter().map(move |b| (s.x, b.y)))
        .collect()
}

#[test]
fn named_presentations_match_two_bridge() {
    assert_eq!(c_ideal(&trefoil()).simplified, c_ideal(&two_bridge(3, 1).unwrap()).simplified);
    assert_eq!(c_ideal(&figure_eight()).simplified, c_ideal(&two_bridge(5, 3).unwrap()).simplified);
}

#[test]
fn two_bridge_ideals_are_nontrivial() {
    for (p, q) in KNOTS {
        let ci = c_ideal(&two_bridge(p, q).unwrap());
        assert!(!ci.is_everything(), "({p},{q})");
        assert!(ci.simplified.gens().iter().all(|g| !g.is_constant()), "({p},{q})");
        assert!(ci.warnings.is_empty(), "({p},{q}): {:?}", ci.warnings);
    }
}

#[test]
fn sampled_points_lie_on_the_ideal() {
    for (p, q) in KNOTS {
        let pres = two_bridge(p, q).unwrap();
        let ideal = c_ideal(&pres).simplified;
        let pts = sampled(&pres, 0.05);
        assert!(!pts.is_empty(), "({p},{q})");
        for (x, y) in pts {
            let r = ideal_residual(&ideal, x, y).unwrap();
            assert!(r < 1e-8, "({p},{q}) at ({x},{y}): {r}");
        }
    }
}

#[test]
fn sampled_points_satisfy_the_relator() {
    let tol = Tolerances::default();
    for (p, q) in KNOTS {
        let pres = two_bridge(p, q).unwrap();
        for (x, y) in sampled(&pres, 0.05) {
            let cp = classify(x, y, Some(&pres), tol).unwrap();
            if cp.region == Region::Degenerate_x2_1_y0 {
                continue;
            }
            let r = cp.residual.unwrap();
            assert!(r < tol.verify, "({p},{q}) at ({x},{y}) [{}]: {r}", cp.region.label());
            if !cp.region.is_boundary() {
                assert_eq!(cp.reducibility, cp.region.expected_reducibility(), "({p},{q}) at ({x},{y})");
            }
        }
    }
}

#[test]
fn profile_rows_follow_samples() {
    let ideal = c_ideal(&trefoil()).simplified;
    let samples = sample_variety(&ideal, -1.0, 1.0, 0.25, 1e-9).unwrap();
    let rows = region_profile(&samples);
    assert_eq!(rows.len(), samples.iter().map(|s| s.points.len()).sum::<usize>());
    assert!(rows.iter().all(|r| (2.0 * r.x * r.x - 2.0 * r.y - 1.0).abs() < 1e-12));
}

#[test]
fn classified_point_json() {
    let cp = classify(0.0, -0.5, Some(&trefoil()), Tolerances::default()).unwrap();
    let v = serde_json::to_value(&cp).unwrap();
    assert_eq!(v["region"], "1");
    assert_eq!(v["x"], 0.0);
    assert_eq!(v["y"], -0.5);
    let text = serde_json::to_string(&cp).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(close(&back, &v));
}

fn close(a: &serde_json::Value, b: &serde_json::Value) -> bool {
    use serde_json::Value;
    match (a, b) {
        (Value::Number(m), Value::Number(n)) => (m.as_f64().unwrap() - n.as_f64().unwrap()).abs() <= 1e-15,
        (Value::Array(m), Value::Array(n)) => m.len() == n.len() && m.iter().zip(n).all(|(m, n)| close(m, n)),
        (Value::Object(m), Value::Object(n)) => {
            m.len() == n.len() && m.iter().all(|(k, m)| n.get(k).is_some_and(|n| close(m, n)))
        }
        _ => a == b,
    }
}

#[test]
fn presentation_json_round_trip() {
    for (p, q) in KNOTS {
        let pres = two_bridge(p, q).unwrap();
        let text = serde_json::to_string(&pres).unwrap();
        let back: Presentation = serde_json::from_str(&text).unwrap();
        assert_eq!(c_ideal(&back).simplified, c_ideal(&pres).simplified);
    }
}

#[test]
fn degenerate_corner_without_relator() {
    for x in [1.0, -1.0] {
        let cp = classify(x, 0.0, None, Tolerances::default()).unwrap();
        assert_eq!(cp.region, Region::Degenerate_x2_1_y0);
        assert!(cp.construction.is_none());
        assert_eq!(cp.reducibility, Reducibility::None);
    }
}

#[test]
fn affine_groebner_contains_linear_ideal() {
    for pres in [trefoil(), figure_eight()] {
        let a = affine_ideal(&pres);
        let with_p = groebner(&Ideal::new(a.groebner.gens().iter().chain(a.p_gens.gens()).cloned()), MonomialOrder::GradedLex);
        assert_eq!(with_p, a.groebner);
    }
}

#[test]
fn parsed_and_built_presentations_agree() {
    let parsed = parse_presentation("a b a = b a b").unwrap();
    assert_eq!(c_ideal(&parsed).simplified, c_ideal(&trefoil()).simplified);
}
