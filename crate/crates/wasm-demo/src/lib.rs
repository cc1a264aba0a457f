//! wasm-bindgen entry points for the static demo page in `www/`.
//! Every function returns a JSON string; failures are reported inside it.

use polargerm::cli::{self, JobSpec, Overrides, Params, RingSpec, Task};
use polargerm::cohomology::{jacobian_ideal, milnor_number};
use polargerm::gb::{staircase_monomials, Length};
use polargerm::{parse_poly, Engine, Ring};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Side of the box in which the staircase is drawn.
const BOX: u32 = 16;

fn job(task: Task, ring: Option<RingSpec>, f: Option<&str>, params: Params) -> String {
    let spec = JobSpec { ring, f: f.map(str::to_string), task, params, budgets: Default::default(), order: None };
    cli::run_job(&spec, &Overrides::default()).to_canonical_string()
}

/// Full report for `y^2 - x^b - s^m x^a + t x^a`.
#[wasm_bindgen]
pub fn family_report(a: u32, b: u32, m: u32) -> String {
    let params = Params { a: Some(a), b: Some(b), m: Some(m), ..Default::default() };
    job(Task::Family, None, None, params)
}

/// Relative polar curve of `f(t, x, y)` with respect to `t`.
#[wasm_bindgen]
pub fn polar_report(f: &str) -> String {
    let ring = RingSpec { variables: vec!["t".into(), "x".into(), "y".into()], parameter: Some("t".into()) };
    job(Task::Polar, Some(ring), Some(f), Params::default())
}

/// Milnor number of a plane curve `f(x, y)` together with the leading
/// monomials of the Jacobian ideal and the staircase they cut out.
#[wasm_bindgen]
pub fn milnor_staircase(f: &str) -> String {
    match staircase(f) {
        Ok(v) => v.to_string(),
        Err(msg) => json!({ "error": msg }).to_string(),
    }
}

fn staircase(f: &str) -> Result<Value, String> {
    let ring = Ring::new(&["x", "y"], None).map_err(|e| e.to_string())?;
    let g = parse_poly(f, &ring).map_err(|e| e.to_string())?;
    let engine = Engine::default();
    let mu = milnor_number(&g, &["x", "y"], &engine).map_err(|e| e.to_string())?;
    let ideal = jacobian_ideal(&g, &["x", "y"]).map_err(|e| e.to_string())?;
    let basis = engine.basis(&ideal).map_err(|e| e.to_string())?;
    let leading = basis.leading_monomials();
    let cells = staircase_monomials(leading, 2, &[BOX, BOX], Some((BOX * BOX) as usize));
    let pair = |e: &[u32]| json!([e[0], e[1]]);
    Ok(json!({
        "f": g.to_string(),
        "mu": match mu { Length::Finite(n) => json!(n), Length::Infinite => json!("infinite") },
        "basis": basis.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "leading": leading.iter().map(|m| pair(m.exponents())).collect::<Vec<_>>(),
        "staircase": cells.iter().map(|m| pair(m.exponents())).collect::<Vec<_>>(),
        "box": BOX,
    }))
}
