mod common;

use common::*;
use projatlas::atlas::{
    analyze, build_atlas, quadrant, render_svg, scene_markers, write_report_json, MarkerOrigin, SvgOptions,
};
use projatlas::flow::IntegratorConfig;
use projatlas::{parse_polynomial, ChartId};

const CENTER: &str = "x' = -y; y' = x";

fn quick() -> IntegratorConfig {
    IntegratorConfig { max_arc_length: 8.0, ..IntegratorConfig::default() }
}

#[test]
fn rendering_is_deterministic() {
    let s = sys(CENTER);
    let a = render_svg(&build_atlas(&s, &quick(), 4).unwrap(), &SvgOptions::default());
    let b = render_svg(&build_atlas(&s, &quick(), 4).unwrap(), &SvgOptions::default());
    assert_eq!(a, b);
    assert_eq!(a.matches(r#"class="scene""#).count(), 3);
}

#[test]
fn center_shows_closed_curves() {
    let doc = build_atlas(&sys(CENTER), &quick(), 4).unwrap();
    let xy = &doc.scenes[0];
    assert_eq!(xy.chart, ChartId::XY);
    let center: Vec<_> = xy.markers.iter().filter(|m| m.origin == MarkerOrigin::FiniteEquilibrium).collect();
    assert_eq!(center.len(), 1);
    assert_eq!(center[0].pos, (0.0, 0.0));
    // every XY polyline keeps a constant distance from the center
    let mut closed = 0;
    for c in &xy.curves {
        let r: Vec<f64> = c.iter().map(|p| p.0.hypot(p.1)).collect();
        let (lo, hi) = r.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(hi - lo < 1e-6, "{lo} {hi}");
        let (first, last) = (c[0], *c.last().unwrap());
        let turned: f64 = c.windows(2).map(|w| (w[0].0 * w[1].1 - w[0].1 * w[1].0).atan2(w[0].0 * w[1].0 + w[0].1 * w[1].1)).sum();
        if turned.abs() >= std::f64::consts::TAU - 1e-6 || (first.0 - last.0).hypot(first.1 - last.1) < 1e-6 {
            closed += 1;
        }
    }
    assert!(closed > 0);
}

#[test]
fn constant_field_gives_vertical_lines() {
    let doc = build_atlas(&sys("x' = 0; y' = 1"), &quick(), 4).unwrap();
    for c in &doc.scenes[0].curves {
        // invert the disc embedding where that is well conditioned
        let xs: Vec<f64> = c
            .iter()
            .filter(|d| d.0.hypot(d.1) < 0.9)
            .map(|d| d.0 / (1.0 - d.0 * d.0 - d.1 * d.1).sqrt())
            .collect();
        if xs.is_empty() {
            continue;
        }
        let spread = xs.iter().fold(f64::MIN, |a, &b| a.max(b)) - xs.iter().fold(f64::MAX, |a, &b| a.min(b));
        assert!(spread < 1e-6 * (1.0 + xs[0].abs()), "{spread}");
    }
    assert!(!doc.scenes[0].curves.is_empty());
}

#[test]
fn circle_node_markers() {
    let doc = build_atlas(&sys(CIRCLE_NODE), &quick(), 3).unwrap();
    let xy = &doc.scenes[0];
    let count = |o: MarkerOrigin| xy.markers.iter().filter(|m| m.origin == o).count();
    assert_eq!(count(MarkerOrigin::FiniteEquilibrium), 0);
    let inf: Vec<_> = xy.markers.iter().filter(|m| m.origin == MarkerOrigin::InfiniteEquilibrium).collect();
    assert_eq!(inf.len(), 2);
    assert!(inf.iter().all(|m| m.on_boundary && m.pos.1 == 0.0 && (m.pos.0.abs() - 1.0).abs() < 1e-12));
    let oy: Vec<_> = xy.markers.iter().filter(|m| m.origin == MarkerOrigin::AxisContact).collect();
    assert_eq!(oy.len(), 2);
    assert!(oy.iter().all(|m| m.pos.0 == 0.0));
    for scene in &doc.scenes {
        for c in &scene.curves {
            assert!(c.iter().all(|p| p.0 * p.0 + p.1 * p.1 <= 1.0 + 1e-9));
        }
    }
    assert!(doc.issues.is_empty(), "{:?}", doc.issues);
}

#[test]
fn cubic_focus_boundary_equilibria() {
    let doc = build_atlas(&sys(CUBIC_FOCUS), &quick(), 3).unwrap();
    let svg = render_svg(&doc, &SvgOptions::default());
    assert_eq!(svg.matches("eq infinite boundary").count(), 4);
    for (i, scene) in doc.scenes.iter().enumerate() {
        let n = scene.markers.iter().filter(|m| m.origin == MarkerOrigin::InfiniteEquilibrium && m.on_boundary).count();
        assert_eq!(n, if i < 2 { 2 } else { 0 });
    }
}

const CORPUS: &[&str] = &[
    CUBIC_FOCUS,
    CIRCLE_NODE,
    CIRCLE_SADDLE,
    CUBIC_ROTATION,
    QUINTIC_THREE_POINTS,
    SEPTIC_SADDLE,
    LINE_CYCLE,
    UNIT_CIRCLE_CYCLE,
    CONIC_CYCLES,
    AFFINE_GENERIC,
];

#[test]
fn quadrant_correspondence() {
    let mut checked = 0;
    for s in CORPUS {
        let a = analyze(&sys(s)).unwrap();
        let xy = scene_markers(&a, ChartId::XY);
        let xt = scene_markers(&a, ChartId::XiTheta);
        for m in xy.iter().filter(|m| m.origin == MarkerOrigin::FiniteEquilibrium) {
            let Some(q) = quadrant(m.pos) else { continue };
            let other: Vec<_> = xt
                .iter()
                .filter(|n| n.origin == MarkerOrigin::FiniteEquilibrium && n.source == m.source)
                .collect();
            assert_eq!(other.len(), 1);
            let expected = [1, 3, 4, 2][q as usize - 1];
            assert_eq!(quadrant(other[0].pos), Some(expected), "{s}");
            checked += 1;
        }
    }
    assert!(checked >= 3, "{checked}");
}

fn report(s: &str) -> serde_json::Value {
    serde_json::from_str(&write_report_json(&analyze(&sys(s)).unwrap())).unwrap()
}

#[test]
fn report_contents() {
    let r = report(CUBIC_FOCUS);
    assert_eq!(r["projective_type"], "P-singular");
    assert_eq!(r["W_n"], "0");
    let text = write_report_json(&analyze(&sys(CUBIC_FOCUS)).unwrap());
    let keys = [
        "system", "projective_type", "W_n", "reduced", "degrees", "equilibria", "contacts", "symmetry",
        "divergence", "invariant_lines", "line_families", "cycles",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(&format!("\n  \"{k}\":")).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");

    let r = report(CIRCLE_NODE);
    assert_eq!(r["degrees"]["actual"]["first"], 3);
    assert_eq!(r["degrees"]["predicted"]["first"], 3);
    assert_eq!(r["reduced"]["first"]["m"], 1);

    let r = report(LINE_CYCLE);
    let y1 = parse_polynomial("y + 1", ["x", "y"]).unwrap();
    let lines = r["invariant_lines"].as_array().unwrap();
    assert!(lines.iter().any(|l| parse_polynomial(l.as_str().unwrap(), ["x", "y"]).unwrap() == y1));
}

#[test]
fn report_polynomials_round_trip() {
    for s in CORPUS {
        let a = analyze(&sys(s)).unwrap();
        let r: serde_json::Value = serde_json::from_str(&write_report_json(&a)).unwrap();
        let xy = ["x", "y"];
        let p = |v: &serde_json::Value, vars: [&str; 2]| parse_polynomial(v.as_str().unwrap(), vars).unwrap();
        assert_eq!(p(&r["system"]["X"], xy), a.system.x);
        assert_eq!(p(&r["system"]["Y"], xy), a.system.y);
        assert_eq!(p(&r["W_n"], xy), a.projective.w_n);
        assert_eq!(p(&r["reduced"]["first"]["Xi"], ["xi", "theta"]), a.first.system.x);
        assert_eq!(p(&r["reduced"]["first"]["Theta"], ["xi", "theta"]), a.first.system.y);
        assert_eq!(p(&r["reduced"]["second"]["H"], ["eta", "zeta"]), a.second.system.x);
        assert_eq!(p(&r["reduced"]["second"]["Z"], ["eta", "zeta"]), a.second.system.y);
        assert_eq!(p(&r["divergence"], xy), a.divergence);
    }
}
