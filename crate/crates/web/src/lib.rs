//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns JSON strings; errors come back as a thrown
//! string.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use posray::injection::{self, Color};
use posray::lediagram::parse_diagram_unchecked;
use posray::rayleigh::sample_rayleigh;
use posray::weights::plain_string;
use posray::{parse_diagram, LabelSet, LeDiagram, Positroid};

#[derive(Serialize)]
struct EdgeView {
    name: String,
    tail: String,
    head: String,
    kind: &'static str,
}

fn diagram_view(d: &LeDiagram) -> serde_json::Value {
    let g = d.build_graph();
    let p = Positroid::enumerate(&g);
    let edges: Vec<EdgeView> = (0..g.edge_count())
        .map(|e| {
            let edge = g.edge(e);
            EdgeView {
                name: g.edge_name(e),
                tail: g.vertex_name(edge.tail),
                head: g.vertex_name(edge.head),
                kind: match edge.kind {
                    posray::lediagram::EdgeKind::Left => "left",
                    posray::lediagram::EdgeKind::Down => "down",
                },
            }
        })
        .collect();
    json!({
        "diagram": serde_json::from_str::<serde_json::Value>(&d.to_json()).expect("canonical json"),
        "ascii": d.ascii(),
        "boundary_basis": d.boundary_basis(),
        "edges": edges,
        "bases": p.bases().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
    })
}

/// A random diagram with its graph and bases.
pub fn random_view(n: usize, r: usize, density: f64, seed: u64) -> Result<String, String> {
    let d = LeDiagram::random(n, r, density, seed).map_err(|e| e.to_string())?;
    Ok(diagram_view(&d).to_string())
}

/// Validation result plus, for valid input, the graph and bases.
pub fn analyze_view(diagram: &str) -> Result<String, String> {
    let d = parse_diagram_unchecked(diagram).map_err(|e| e.to_string())?;
    let violations: Vec<String> = d.validate().iter().map(|v| v.to_string()).collect();
    if !violations.is_empty() {
        return Ok(json!({ "violations": violations }).to_string());
    }
    let mut view = diagram_view(&d);
    view["violations"] = json!([]);
    Ok(view.to_string())
}

fn label_list(text: &str) -> Result<LabelSet, String> {
    LabelSet::parse_list(text).ok_or_else(|| format!("bad label list {text:?}"))
}

/// One injection run with its colourings before and after, and the trace.
pub fn inject_view(diagram: &str, e: usize, f: usize, b1: &str, b2: &str) -> Result<String, String> {
    let d = parse_diagram(diagram).map_err(|e| e.to_string())?;
    let g = d.build_graph();
    let out = injection::run_injection(&g, e, f, label_list(b1)?, label_list(b2)?).map_err(|e| e.to_string())?;
    let colors = |c: &injection::ColoredConfig| -> Vec<serde_json::Value> {
        c.describe(&g)
            .into_iter()
            .map(|x| json!({ "edge": x.edge, "blue": x.colors.contains(&Color::Blue), "green": x.colors.contains(&Color::Green) }))
            .collect()
    };
    Ok(json!({
        "output": [out.output.0.to_string(), out.output.1.to_string()],
        "before": colors(&out.initial),
        "after": colors(&out.config),
        "trace": out.trace.render(&g),
        "summary": out.trace.compact(&g),
    })
    .to_string())
}

/// Minimum sampled difference per ordered pair, as text.
pub fn rayleigh_view(diagram: &str, trials: usize, seed: u64) -> Result<String, String> {
    let d = parse_diagram(diagram).map_err(|e| e.to_string())?;
    let p = Positroid::enumerate(&d.build_graph());
    let reports = sample_rayleigh(&p, trials, seed, true).map_err(|e| e.to_string())?;
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            json!({
                "pair": r.pair,
                "at_ones": r.delta_at_ones.as_ref().map(plain_string),
                "min": r.min_delta.as_ref().map(plain_string),
                "violations": r.violations.len(),
            })
        })
        .collect();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    Ok(json!({ "rows": rows, "violations": violations }).to_string())
}

#[wasm_bindgen(js_name = randomDiagram)]
pub fn random_diagram(n: usize, r: usize, density: f64, seed: u32) -> Result<String, String> {
    random_view(n, r, density, seed as u64)
}

#[wasm_bindgen]
pub fn analyze(diagram: &str) -> Result<String, String> {
    analyze_view(diagram)
}

#[wasm_bindgen]
pub fn inject(diagram: &str, e: usize, f: usize, b1: &str, b2: &str) -> Result<String, String> {
    inject_view(diagram, e, f, b1, b2)
}

#[wasm_bindgen]
pub fn rayleigh(diagram: &str, trials: usize, seed: u32) -> Result<String, String> {
    rayleigh_view(diagram, trials, seed as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"n":7,"r":3,"steps":"HVVHVHH","dots":[[1,2],[2,1],[2,2],[2,3],[3,2]]}"#;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn analyze_example() {
        let view = parse(&analyze_view(EXAMPLE).unwrap());
        assert_eq!(view["bases"].as_array().unwrap().len(), 13);
        assert_eq!(view["edges"].as_array().unwrap().len(), 10);
        let bad = parse(&analyze_view(r#"{"n":7,"r":3,"steps":"HVVHVHH","dots":[[1,2],[2,1],[2,3],[3,2]]}"#).unwrap());
        assert_eq!(bad["violations"][0], "Le-violation at box (2,2)");
        assert!(analyze_view("nope").is_err());
    }

    #[test]
    fn inject_worked_example() {
        let view = parse(&inject_view(EXAMPLE, 2, 7, "2,6,7", "3,5,6").unwrap());
        assert_eq!(view["output"], json!(["256", "367"]));
        assert_eq!(view["summary"], "b7 -> d2.1 -> d2.2[green] -> d3.2[blue] -> b5");
        assert!(inject_view(EXAMPLE, 2, 7, "3,5,6", "2,6,7").is_err());
    }

    #[test]
    fn random_and_rayleigh() {
        let view = parse(&random_view(8, 4, 0.5, 3).unwrap());
        let diagram = view["diagram"].to_string();
        assert_eq!(random_view(8, 4, 0.5, 3).unwrap(), random_view(8, 4, 0.5, 3).unwrap());
        let sampled = parse(&rayleigh_view(&diagram, 20, 1).unwrap());
        assert_eq!(sampled["violations"], 0);
        assert_eq!(sampled["rows"].as_array().unwrap().len(), 56);
    }
}
