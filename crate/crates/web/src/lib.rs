//! Browser bindings. Each export takes plain strings and returns a JSON
//! document; failures surface as a JS `Error` carrying the message.

use multicirc::circulant::{CirculantGraph, JumpSet, Mode};
use multicirc::dimension::analyze;
use multicirc::intmat::{parse_vectors, smith_normal_form, IntMatrix};
use multicirc::quotient::QuotientGroup;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct NormalForms {
    smith: Vec<String>,
    u: Vec<Vec<String>>,
    v: Vec<Vec<String>>,
    hermite: Vec<Vec<String>>,
    group: String,
    order: u64,
}

#[derive(Serialize)]
struct Drawing {
    group: String,
    labels: Vec<String>,
    /// Smith-coordinate position of each vertex, used for layout.
    coords: Vec<Vec<i64>>,
    factors: Vec<u64>,
    directed: bool,
    edges: Vec<[usize; 2]>,
    components: u64,
}

fn rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn build(matrix: &str, jumps: &str, mode: &str) -> Result<CirculantGraph, String> {
    let m = IntMatrix::parse(matrix).map_err(|e| e.to_string())?;
    let mode: Mode = mode.parse()?;
    let g = QuotientGroup::new(&m).map_err(|e| e.to_string())?;
    if g.order() > 400 {
        return Err(format!("{} vertices is too many to draw", g.order()));
    }
    let a = parse_vectors(jumps).map_err(|e| e.to_string())?;
    let set = JumpSet::new(&g, &a, mode).map_err(|e| e.to_string())?;
    CirculantGraph::build(g, set).map_err(|e| e.to_string())
}

pub fn normal_forms_json(matrix: &str) -> Result<String, String> {
    let m = IntMatrix::parse(matrix).map_err(|e| e.to_string())?;
    let sd = smith_normal_form(&m).map_err(|e| e.to_string())?;
    let g = QuotientGroup::with_smith(&m, sd.clone()).map_err(|e| e.to_string())?;
    let out = NormalForms {
        smith: sd.s.diagonal().iter().map(ToString::to_string).collect(),
        u: rows(&sd.u),
        v: rows(&sd.v),
        hermite: rows(&g.hermite().h),
        group: g.to_string(),
        order: g.order(),
    };
    Ok(serde_json::to_string(&out).expect("plain data"))
}

pub fn circulant_json(matrix: &str, jumps: &str, mode: &str) -> Result<String, String> {
    let c = build(matrix, jumps, mode)?;
    let g = c.group();
    let out = Drawing {
        group: g.to_string(),
        labels: c.vertex_labels(),
        coords: c.vertices().iter().map(|v| g.to_snf_coords(v)).collect(),
        factors: g.snf_factors().to_vec(),
        directed: c.graph().is_directed(),
        edges: c.graph().to_edge_list().edges,
        components: c.components().map_err(|e| e.to_string())?.alpha,
    };
    Ok(serde_json::to_string(&out).expect("plain data"))
}

pub fn dimension_json(matrix: &str, jumps: &str, mode: &str) -> Result<String, String> {
    let c = build(matrix, jumps, mode)?;
    let report = analyze(&c).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&report).expect("plain data"))
}

/// Smith and Hermite forms of a matrix in `a,b;c,d` form.
#[wasm_bindgen]
pub fn normal_forms(matrix: &str) -> Result<String, JsError> {
    normal_forms_json(matrix).map_err(|e| JsError::new(&e))
}

/// Vertices, Smith coordinates and edges of `G(M; A)`.
#[wasm_bindgen]
pub fn circulant(matrix: &str, jumps: &str, mode: &str) -> Result<String, JsError> {
    circulant_json(matrix, jumps, mode).map_err(|e| JsError::new(&e))
}

/// Dimension bounds and closed-form verdicts.
#[wasm_bindgen]
pub fn dimension(matrix: &str, jumps: &str, mode: &str) -> Result<String, JsError> {
    dimension_json(matrix, jumps, mode).map_err(|e| JsError::new(&e))
}
