//! Browser bindings. Every export takes plain strings or numbers and returns
//! a JSON string; the `*_json` functions hold the logic so they can be tested
//! natively.

use mdeg::classify::{classify, Certificate, Verdict};
use mdeg::polymap::realize_factors;
use mdeg::realizer::{realize, DegreeTuple};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest degree and grid size accepted from the page.
pub const MAX_DEGREE: u32 = 200;
pub const MAX_GRID: u32 = 60;

#[derive(Serialize)]
struct ClassifyView {
    degrees: Vec<u32>,
    verdict: &'static str,
    lines: Vec<String>,
    evidence: Verdict,
}

#[derive(Serialize)]
struct ConstructView {
    degrees: Vec<u32>,
    factors: Vec<String>,
    components: Vec<String>,
}

#[derive(Serialize)]
struct GridView {
    d1: u32,
    max: u32,
    /// `cells[i][j]` is the verdict for `(d1, d1 + i, d1 + i + j)`.
    cells: Vec<Vec<&'static str>>,
}

fn parse_degrees(text: &str) -> Result<Vec<u32>, String> {
    let degrees = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| format!("not a positive integer: {s}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(d) = degrees.iter().find(|&&d| d == 0 || d > MAX_DEGREE) {
        return Err(format!("degrees must lie in 1..={MAX_DEGREE}, got {d}"));
    }
    Ok(degrees)
}

fn factor_lines(factors: &mdeg::FactorList) -> Vec<String> {
    factors.factors().iter().map(|f| f.to_string()).collect()
}

pub fn classify_json(text: &str) -> Result<String, String> {
    let degrees = parse_degrees(text)?;
    let verdict = classify(&degrees).map_err(|e| e.to_string())?;
    let mut sorted = degrees.clone();
    sorted.sort_unstable();
    let lines = match &verdict {
        Verdict::Realizable { factors } => factor_lines(factors),
        Verdict::NotTame {
            certificate: Certificate::Spatial(c),
        } => c.explain(),
        Verdict::NotTame {
            certificate: Certificate::Planar(p),
        } => vec![format!(
            "neither {} nor {} divides the other",
            p.degrees[0], p.degrees[1]
        )],
        Verdict::Unknown { reason } => vec![format!("undecided: {}", reason.as_str())],
    };
    let view = ClassifyView {
        degrees: sorted,
        verdict: verdict.kind(),
        lines,
        evidence: verdict,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn construct_json(text: &str) -> Result<String, String> {
    let degrees = parse_degrees(text)?;
    let tuple = DegreeTuple::new(&degrees).map_err(|e| e.to_string())?;
    let sorted = realize(&tuple).ok_or_else(|| "no construction found".to_string())?;
    let factors = tuple.restore_order(&sorted).map_err(|e| e.to_string())?;
    let map = realize_factors(&factors).map_err(|e| e.to_string())?;
    let view = ConstructView {
        degrees,
        factors: factor_lines(&factors),
        components: map.components().iter().map(|c| c.to_string()).collect(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn grid_json(d1: u32, max: u32) -> Result<String, String> {
    if d1 == 0 || d1 > max || max > MAX_GRID {
        return Err(format!("need 1 <= d1 <= max <= {MAX_GRID}"));
    }
    let cells = (d1..=max)
        .map(|d2| {
            (d2..=max)
                .map(|d3| classify(&[d1, d2, d3]).map(|v| v.kind()))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&GridView { d1, max, cells }).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(degrees: &str) -> Result<String, JsError> {
    classify_json(degrees).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = construct)]
pub fn construct_js(degrees: &str) -> Result<String, JsError> {
    construct_json(degrees).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = grid)]
pub fn grid_js(d1: u32, max: u32) -> Result<String, JsError> {
    grid_json(d1, max).map_err(|e| JsError::new(&e))
}
