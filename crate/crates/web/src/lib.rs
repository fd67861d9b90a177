//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The exported functions are thin adapters over [`api`], which holds the
//! logic in plain Rust so it can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api {
    use std::str::FromStr;

    use dqd_core::sweep::{run_sweep, Axis, GridSpec};
    use dqd_core::thermo::{run_cycle_closed_form, run_cycle_matrix};
    use dqd_core::{regimes, BranchKind, CycleInputs, DotParams, Mode, DEFAULT_TOL};
    use serde_json::json;

    /// Mode codes and performance on a row-major grid, detuning outer.
    #[derive(Debug, Clone, PartialEq)]
    pub struct PhaseMapData {
        pub strength_steps: usize,
        pub epsilon_steps: usize,
        pub modes: Vec<u8>,
        /// `NaN` where the mode is undefined.
        pub performance: Vec<f64>,
        pub fractions: [f64; 5],
    }

    fn branch(name: &str) -> Result<BranchKind, String> {
        BranchKind::from_str(name)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn phase_map(
        branch_name: &str,
        temperature: f64,
        tau: f64,
        strength_steps: usize,
        epsilon_min: f64,
        epsilon_max: f64,
        epsilon_steps: usize,
    ) -> Result<PhaseMapData, String> {
        let spec = GridSpec::new(branch(branch_name)?, temperature, tau).with_axes(
            Axis::new(0.0, 1.0, strength_steps),
            Axis::new(epsilon_min, epsilon_max, epsilon_steps),
        );
        let result = run_sweep(&spec).map_err(|e| e.to_string())?;
        let mut fractions = [0.0; 5];
        for m in Mode::ALL {
            fractions[m.code() as usize] = result.fraction(m);
        }
        Ok(PhaseMapData {
            strength_steps,
            epsilon_steps,
            modes: result.cells.iter().map(|c| c.mode.code()).collect(),
            performance: result
                .cells
                .iter()
                .map(|c| c.performance.unwrap_or(f64::NAN))
                .collect(),
            fractions,
        })
    }

    pub fn cycle_ledger(
        epsilon: f64,
        tau: f64,
        temperature: f64,
        a: f64,
        b: f64,
    ) -> Result<String, String> {
        let run = || -> dqd_core::Result<String> {
            let inputs = CycleInputs::new(DotParams::new(epsilon, tau)?, temperature, a, b)?;
            let matrix = run_cycle_matrix(&inputs)?;
            let closed = run_cycle_closed_form(&inputs)?;
            Ok(json!({
                "dU": matrix.energies(),
                "dS": matrix.entropies(),
                "closed_form": { "dU": closed.energies(), "dS": closed.entropies() },
                "max_discrepancy": matrix.max_discrepancy(&closed),
                "states": [matrix.rho1, matrix.rho2, matrix.rho3],
            })
            .to_string())
        };
        run().map_err(|e| e.to_string())
    }

    pub fn classify_point(
        branch_name: &str,
        epsilon: f64,
        tau: f64,
        temperature: f64,
        strength: f64,
    ) -> Result<String, String> {
        let kind = branch(branch_name)?;
        let run = || -> dqd_core::Result<String> {
            let p = DotParams::new(epsilon, tau)?;
            let c = regimes::classify(kind, &p, temperature, strength, DEFAULT_TOL)?;
            let thresholds = kind.threshold_values(&p, temperature)?;
            let (a, b) = kind.strengths(&p, temperature, strength)?;
            Ok(json!({
                "branch": kind,
                "a": a,
                "b": b,
                "classification": c,
                "thresholds": thresholds,
            })
            .to_string())
        };
        run().map_err(|e| e.to_string())
    }
}

#[wasm_bindgen]
pub struct PhaseMap(api::PhaseMapData);

#[wasm_bindgen]
impl PhaseMap {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.0.strength_steps
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.0.epsilon_steps
    }

    /// 0 engine, 1 refrigerator, 2 accelerator, 3 heater, 4 undefined.
    pub fn modes(&self) -> Vec<u8> {
        self.0.modes.clone()
    }

    pub fn performance(&self) -> Vec<f64> {
        self.0.performance.clone()
    }

    /// Area fraction per mode code.
    pub fn fractions(&self) -> Vec<f64> {
        self.0.fractions.to_vec()
    }
}

#[wasm_bindgen]
pub fn phase_map(
    branch: &str,
    temperature: f64,
    tau: f64,
    strength_steps: usize,
    epsilon_min: f64,
    epsilon_max: f64,
    epsilon_steps: usize,
) -> Result<PhaseMap, JsError> {
    api::phase_map(
        branch,
        temperature,
        tau,
        strength_steps,
        epsilon_min,
        epsilon_max,
        epsilon_steps,
    )
    .map(PhaseMap)
    .map_err(|e| JsError::new(&e))
}

/// JSON: `{dU, dS, closed_form, max_discrepancy, states}`.
#[wasm_bindgen]
pub fn cycle_ledger(
    epsilon: f64,
    tau: f64,
    temperature: f64,
    a: f64,
    b: f64,
) -> Result<String, JsError> {
    api::cycle_ledger(epsilon, tau, temperature, a, b).map_err(|e| JsError::new(&e))
}

/// JSON: `{branch, a, b, classification, thresholds}`.
#[wasm_bindgen]
pub fn classify_point(
    branch: &str,
    epsilon: f64,
    tau: f64,
    temperature: f64,
    strength: f64,
) -> Result<String, JsError> {
    api::classify_point(branch, epsilon, tau, temperature, strength).map_err(|e| JsError::new(&e))
}
