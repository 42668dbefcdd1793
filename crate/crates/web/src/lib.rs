//! Browser bindings for the interactive demo in `web/`.
//!
//! The computations live in plain functions so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors to strings.

use emb_core::closedform::{commutator_condition, CommutatorClass, StandardFormParams};
use emb_core::emb::{e_hmin, emb_tripartite, split_first_party, BranchMatrices};
use emb_core::geometric::geometric_measure_general;
use emb_core::measures::max_bipartite_entanglement;
use emb_core::state::named_state;
use emb_core::sweep::{ghz_w_sweep, SweepRow};
use emb_core::{Budget, OptimizerConfig, StateTensor};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest landscape side accepted from the page.
pub const MAX_RESOLUTION: usize = 400;

/// Hierarchy entropy over a `resolution × resolution` grid with `θ ∈ [0, π/2]`
/// down the rows and `φ ∈ [0, 2π)` along the columns, row-major.
pub fn landscape(s: &StateTensor, first: usize, resolution: usize) -> emb_core::Result<Vec<f64>> {
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return Err(emb_core::Error::InvalidParams(format!("resolution must lie in 2..={MAX_RESOLUTION}")));
    }
    let (a0, a1) = split_first_party(s, first)?;
    let mut out = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (resolution - 1) as f64;
        for j in 0..resolution {
            let phi = std::f64::consts::TAU * j as f64 / resolution as f64;
            out.push(BranchMatrices::new(&a0, &a1, theta, phi).objective());
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub emb: f64,
    /// Measured party (1-based) and its optimal `(θ, φ)`.
    pub first_party: usize,
    pub theta: f64,
    pub phi: f64,
    pub ehmin: f64,
    pub egeom: f64,
    pub ebi: f64,
    /// Commutator class of the standard-form parameters, when they were given.
    pub class: Option<String>,
}

/// Demo budget: smaller grids than the library defaults keep the page responsive.
fn demo_budget() -> Budget {
    Budget::from_config(OptimizerConfig { grid_resolution: 32, restart_count: 3, ..OptimizerConfig::default() })
}

pub fn summary(s: &StateTensor, standard: Option<&StandardFormParams>) -> emb_core::Result<Summary> {
    let budget = demo_budget();
    let e = emb_tripartite(s, &budget.emb)?;
    let geometric = emb_core::geometric::GeometricConfig { starts: 8, ..budget.geometric.clone() };
    Ok(Summary {
        emb: e.value,
        first_party: e.parties[0] + 1,
        theta: e.argmin[0],
        phi: e.argmin[1],
        ehmin: e_hmin(s, &budget)?.value,
        egeom: geometric_measure_general(s, &geometric)?.value,
        ebi: max_bipartite_entanglement(s)?,
        class: standard.map(|p| {
            match commutator_condition(p).class {
                CommutatorClass::Omega1 => "Omega1",
                CommutatorClass::Omega2 => "Omega2",
                CommutatorClass::None => "none",
            }
            .to_owned()
        }),
    })
}

pub fn sweep_rows(points: usize) -> emb_core::Result<Vec<SweepRow>> {
    ghz_w_sweep(points, &demo_budget())
}

fn state_and_params(name: &str, params: &[f64]) -> emb_core::Result<(StateTensor, Option<StandardFormParams>)> {
    let s = named_state(name, params)?;
    let standard = match name.to_ascii_lowercase().as_str() {
        "standard" if params.len() == 6 => {
            Some(StandardFormParams::new([params[0], params[1], params[2], params[3], params[4]], params[5])?)
        }
        _ => None,
    };
    Ok((s, standard))
}

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Entropy landscape of a named state for the heat map.
#[wasm_bindgen(js_name = landscape)]
pub fn landscape_js(name: &str, params: &[f64], first_party: usize, resolution: usize) -> Result<Vec<f64>, JsValue> {
    let (s, _) = state_and_params(name, params).map_err(js_err)?;
    let first = first_party.checked_sub(1).ok_or_else(|| js_err("parties are numbered from 1"))?;
    landscape(&s, first, resolution).map_err(js_err)
}

/// Measures of a named three-qubit state as JSON.
#[wasm_bindgen(js_name = measures)]
pub fn measures_js(name: &str, params: &[f64]) -> Result<String, JsValue> {
    let (s, standard) = state_and_params(name, params).map_err(js_err)?;
    let out = summary(&s, standard.as_ref()).map_err(js_err)?;
    serde_json::to_string(&out).map_err(js_err)
}

/// GHZ–W′ sweep rows as JSON.
#[wasm_bindgen(js_name = sweep)]
pub fn sweep_js(points: usize) -> Result<String, JsValue> {
    let rows = sweep_rows(points).map_err(js_err)?;
    serde_json::to_string(&rows).map_err(js_err)
}
