//! Operating-mode classification on the three isentropic branches.
//!
//! * Engine branch: `b = a` makes the channel-B stroke isentropic. Then
//!   `Q_c = ΔU₁`, `Q_h = ΔU₂`, `W = ΔU₃`.
//! * Refrigerator branches: `a = ½[1 ± tanh βE]` makes the channel-A stroke
//!   isentropic. Then `Q_c = ΔU₁`, `W = ΔU₂`, `Q_h = ΔU₃`.
//!
//! Modes follow the sign table
//!
//! | mode         | Q_h | Q_c | W | figure of merit |
//! |--------------|-----|-----|---|-----------------|
//! | Engine       |  +  |  −  | − | η = \|W/Q_h\|   |
//! | Refrigerator |  −  |  +  | + | COP = \|Q_c/W\| |
//! | Accelerator  |  +  |  −  | + | COP = \|Q_h/W\| |
//! | Heater       |  −  |  −  | + | COP = \|Q_h/W\| |
//!
//! and any other pattern, or any quantity within `zero_tol` of zero, is
//! [`Mode::Undefined`]. COP modes report `κ = COP/(1+COP)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::check_strength;
use crate::error::{Error, Result};
use crate::qdot::{beta, DotParams};
use crate::thermo::{run_cycle_matrix, CycleInputs, StrokeLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Engine,
    Refrigerator,
    Accelerator,
    Heater,
    Undefined,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Engine,
        Mode::Refrigerator,
        Mode::Accelerator,
        Mode::Heater,
        Mode::Undefined,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Engine => "engine",
            Mode::Refrigerator => "refrigerator",
            Mode::Accelerator => "accelerator",
            Mode::Heater => "heater",
            Mode::Undefined => "undefined",
        }
    }

    /// Small integer code, stable across releases (used by the web demo).
    pub fn code(&self) -> u8 {
        match self {
            Mode::Engine => 0,
            Mode::Refrigerator => 1,
            Mode::Accelerator => 2,
            Mode::Heater => 3,
            Mode::Undefined => 4,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    /// `b = a`.
    Engine,
    /// `a = ½[1 + tanh βE]`.
    RefrigeratorPlus,
    /// `a = ½[1 − tanh βE]`.
    RefrigeratorMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefrigeratorSign {
    Plus,
    Minus,
}

impl BranchKind {
    pub fn name(&self) -> &'static str {
        match self {
            BranchKind::Engine => "engine",
            BranchKind::RefrigeratorPlus => "refrigerator-plus",
            BranchKind::RefrigeratorMinus => "refrigerator-minus",
        }
    }

    /// Name of the free strength on this branch (`a` or `b`).
    pub fn strength_label(&self) -> &'static str {
        match self {
            BranchKind::Engine => "a",
            _ => "b",
        }
    }

    /// The `(a, b)` pair this branch pins for a given free strength.
    pub fn strengths(
        &self,
        params: &DotParams,
        temperature: f64,
        strength: f64,
    ) -> Result<(f64, f64)> {
        check_strength(strength)?;
        let t = tanh_beta_e(params, temperature)?;
        Ok(match self {
            BranchKind::Engine => (strength, strength),
            BranchKind::RefrigeratorPlus => (0.5 * (1.0 + t), strength),
            BranchKind::RefrigeratorMinus => (0.5 * (1.0 - t), strength),
        })
    }

    /// Closed-form `(Q_h, Q_c, W)` on this branch.
    pub fn quantities(
        &self,
        params: &DotParams,
        temperature: f64,
        strength: f64,
    ) -> Result<HeatWork> {
        match self {
            BranchKind::Engine => engine_branch_quantities(params, temperature, strength),
            BranchKind::RefrigeratorPlus => {
                refrigerator_plus_quantities(params, temperature, strength)
            }
            BranchKind::RefrigeratorMinus => {
                refrigerator_minus_quantities(params, temperature, strength)
            }
        }
    }

    /// Full stroke ledger via the density-matrix route.
    pub fn ledger(
        &self,
        params: &DotParams,
        temperature: f64,
        strength: f64,
    ) -> Result<StrokeLedger> {
        let (a, b) = self.strengths(params, temperature, strength)?;
        run_cycle_matrix(&CycleInputs::new(*params, temperature, a, b)?)
    }

    /// `(Q_h, Q_c, W)` read off a ledger according to this branch's stroke roles.
    pub fn assign(&self, ledger: &StrokeLedger) -> HeatWork {
        match self {
            BranchKind::Engine => HeatWork {
                qh: ledger.du2,
                qc: ledger.du1,
                w: ledger.du3,
            },
            _ => HeatWork {
                qh: ledger.du3,
                qc: ledger.du1,
                w: ledger.du2,
            },
        }
    }

    /// Mode from the analytic threshold intervals (open intervals; points on a
    /// threshold are `Undefined`).
    pub fn analytic_mode(
        &self,
        params: &DotParams,
        temperature: f64,
        strength: f64,
    ) -> Result<Mode> {
        params.require_positive_detuning()?;
        check_strength(strength)?;
        let t = tanh_beta_e(params, temperature)?;
        let ratio = params.gap() / params.epsilon;
        let s = strength;
        let mode = match self {
            BranchKind::Engine => {
                let lo = 0.5 * (1.0 - ratio * t);
                let hi = 0.5 * (1.0 + ratio * t);
                if s < lo {
                    Mode::Heater
                } else if s > lo && s < 0.5 {
                    Mode::Accelerator
                } else if s > 0.5 && s < hi {
                    Mode::Engine
                } else {
                    Mode::Undefined
                }
            }
            BranchKind::RefrigeratorPlus | BranchKind::RefrigeratorMinus => {
                let minus = *self == BranchKind::RefrigeratorMinus;
                if minus && params.tau == 0.0 {
                    return Ok(Mode::Undefined);
                }
                let accel = if minus {
                    0.5 * (1.0 + t)
                } else {
                    0.5 * (1.0 - t)
                };
                let refrig = 0.5 * (1.0 + ratio * t);
                if s < accel {
                    Mode::Accelerator
                } else if s > accel && s < refrig {
                    Mode::Heater
                } else if s > refrig {
                    Mode::Refrigerator
                } else {
                    Mode::Undefined
                }
            }
        };
        Ok(mode)
    }

    /// Unclamped analytic thresholds in the free strength.
    pub fn threshold_values(&self, params: &DotParams, temperature: f64) -> Result<Vec<f64>> {
        Ok(match self {
            BranchKind::Engine => {
                let th = engine_branch_thresholds_raw(params, temperature)?;
                vec![th.heater_max, th.engine_min, th.engine_max]
            }
            BranchKind::RefrigeratorPlus => {
                let th = refrigerator_thresholds_raw(params, temperature, RefrigeratorSign::Plus)?;
                vec![th.accel_max, th.refrig_min]
            }
            BranchKind::RefrigeratorMinus => {
                let th = refrigerator_thresholds_raw(params, temperature, RefrigeratorSign::Minus)?;
                vec![th.accel_max, th.refrig_min]
            }
        })
    }

    /// Distance from `strength` to the nearest analytic threshold.
    pub fn distance_to_boundary(
        &self,
        params: &DotParams,
        temperature: f64,
        strength: f64,
    ) -> Result<f64> {
        Ok(self
            .threshold_values(params, temperature)?
            .into_iter()
            .map(|th| (strength - th).abs())
            .fold(f64::INFINITY, f64::min))
    }
}

impl fmt::Display for BranchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BranchKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "engine" => Ok(BranchKind::Engine),
            "refrigerator-plus" | "plus" => Ok(BranchKind::RefrigeratorPlus),
            "refrigerator-minus" | "minus" => Ok(BranchKind::RefrigeratorMinus),
            other => Err(format!(
                "unknown branch `{other}` (expected engine, refrigerator-plus or refrigerator-minus)"
            )),
        }
    }
}

/// Heat from the measurement side, heat to the bath, and work, per cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatWork {
    #[serde(rename = "Qh")]
    pub qh: f64,
    #[serde(rename = "Qc")]
    pub qc: f64,
    #[serde(rename = "W")]
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub mode: Mode,
    #[serde(flatten)]
    pub heat_work: HeatWork,
    /// `η` for engines, `κ` for the COP modes, absent when undefined.
    pub performance: Option<f64>,
    pub raw_cop: Option<f64>,
    /// Why the point is `Undefined`, when it is.
    pub reason: Option<String>,
}

impl Classification {
    pub fn from_heat_work(hw: HeatWork, zero_tol: f64) -> Self {
        let mode = classify_from_signs(hw.qh, hw.qc, hw.w, zero_tol);
        let raw_cop = raw_cop(mode, &hw, zero_tol);
        let mut performance = performance(mode, &hw, zero_tol);
        let mut mode = mode;
        if performance.is_none() && mode != Mode::Undefined {
            mode = Mode::Undefined;
            performance = None;
        }
        let reason = (mode == Mode::Undefined).then(|| undefined_reason(&hw, zero_tol).to_string());
        Classification {
            mode,
            heat_work: hw,
            performance,
            raw_cop: if mode == Mode::Undefined {
                None
            } else {
                raw_cop
            },
            reason,
        }
    }
}

fn undefined_reason(hw: &HeatWork, zero_tol: f64) -> &'static str {
    if hw.w.abs() <= zero_tol {
        "W=0 on a regime boundary"
    } else if hw.qh.abs() <= zero_tol || hw.qc.abs() <= zero_tol {
        "heat vanishes on a regime boundary"
    } else {
        "sign pattern matches no operating mode"
    }
}

/// Classifies a branch point: closed-form quantities, sign table, performance.
pub fn classify(
    branch: BranchKind,
    params: &DotParams,
    temperature: f64,
    strength: f64,
    zero_tol: f64,
) -> Result<Classification> {
    let hw = branch.quantities(params, temperature, strength)?;
    let mut c = Classification::from_heat_work(hw, zero_tol);
    if branch == BranchKind::RefrigeratorMinus && params.tau == 0.0 {
        c.reason = Some("W=0 at zero tunneling".to_string());
    }
    Ok(c)
}

/// Sign-table lookup; anything within `zero_tol` of zero is indeterminate.
pub fn classify_from_signs(qh: f64, qc: f64, w: f64, zero_tol: f64) -> Mode {
    let sign = |x: f64| {
        if x.is_nan() || x.abs() <= zero_tol {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    match (sign(qh), sign(qc), sign(w)) {
        (1, -1, -1) => Mode::Engine,
        (-1, 1, 1) => Mode::Refrigerator,
        (1, -1, 1) => Mode::Accelerator,
        (-1, -1, 1) => Mode::Heater,
        _ => Mode::Undefined,
    }
}

/// `κ = COP / (1 + COP)`; `+∞` maps to 1.
pub fn kappa(cop: f64) -> Result<f64> {
    if cop.is_nan() || cop <= 0.0 {
        return Err(Error::NonPositiveCop(cop));
    }
    if cop.is_infinite() {
        return Ok(1.0);
    }
    Ok(cop / (1.0 + cop))
}

fn ratio(num: f64, den: f64, zero_tol: f64) -> Option<f64> {
    (den.abs() > zero_tol).then(|| (num / den).abs())
}

fn raw_cop(mode: Mode, hw: &HeatWork, zero_tol: f64) -> Option<f64> {
    match mode {
        Mode::Refrigerator => ratio(hw.qc, hw.w, zero_tol),
        Mode::Accelerator | Mode::Heater => ratio(hw.qh, hw.w, zero_tol),
        Mode::Engine | Mode::Undefined => None,
    }
}

/// `η = |W/Q_h|` for engines, `κ(COP)` for the other modes.
pub fn performance(mode: Mode, hw: &HeatWork, zero_tol: f64) -> Option<f64> {
    match mode {
        Mode::Engine => ratio(hw.w, hw.qh, zero_tol),
        Mode::Undefined => None,
        _ => raw_cop(mode, hw, zero_tol).and_then(|cop| kappa(cop).ok()),
    }
}

fn tanh_beta_e(params: &DotParams, temperature: f64) -> Result<f64> {
    Ok((beta(temperature)? * params.gap()).tanh())
}

/// `Q_c = −E tanh βE + ε(2a−1)`, `Q_h = E tanh βE + ε(2a−1)`, `W = 2ε(1−2a)`.
pub fn engine_branch_quantities(params: &DotParams, temperature: f64, a: f64) -> Result<HeatWork> {
    params.require_positive_detuning()?;
    check_strength(a)?;
    let t = tanh_beta_e(params, temperature)?;
    let (e, eps) = (params.gap(), params.epsilon);
    Ok(HeatWork {
        qh: e * t + eps * (2.0 * a - 1.0),
        qc: -e * t + eps * (2.0 * a - 1.0),
        w: 2.0 * eps * (1.0 - 2.0 * a),
    })
}

/// `Q_c = −E tanh βE + ε(2b−1)`, `W = (E+ε) tanh βE`, `Q_h = ε(1 − tanh βE − 2b)`.
pub fn refrigerator_plus_quantities(
    params: &DotParams,
    temperature: f64,
    b: f64,
) -> Result<HeatWork> {
    params.require_positive_detuning()?;
    check_strength(b)?;
    let t = tanh_beta_e(params, temperature)?;
    let (e, eps) = (params.gap(), params.epsilon);
    Ok(HeatWork {
        qh: eps * (1.0 - t - 2.0 * b),
        qc: -e * t + eps * (2.0 * b - 1.0),
        w: (e + eps) * t,
    })
}

/// `Q_c = −E tanh βE + ε(2b−1)`, `W = (E−ε) tanh βE`, `Q_h = ε(1 + tanh βE − 2b)`.
///
/// `W` vanishes identically at `τ = 0`.
pub fn refrigerator_minus_quantities(
    params: &DotParams,
    temperature: f64,
    b: f64,
) -> Result<HeatWork> {
    params.require_positive_detuning()?;
    check_strength(b)?;
    let t = tanh_beta_e(params, temperature)?;
    let (e, eps) = (params.gap(), params.epsilon);
    Ok(HeatWork {
        qh: eps * (1.0 + t - 2.0 * b),
        qc: -e * t + eps * (2.0 * b - 1.0),
        w: (e - eps) * t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineThresholds {
    /// Heater for `a` below this.
    pub heater_max: f64,
    /// `½`; work changes sign here.
    pub engine_min: f64,
    /// Engine for `½ < a` below this.
    pub engine_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefrigeratorThresholds {
    /// Accelerator for `b` below this.
    pub accel_max: f64,
    /// Refrigerator for `b` above this; heater in between.
    pub refrig_min: f64,
}

fn engine_branch_thresholds_raw(params: &DotParams, temperature: f64) -> Result<EngineThresholds> {
    params.require_positive_detuning()?;
    let x = params.gap() / params.epsilon * tanh_beta_e(params, temperature)?;
    Ok(EngineThresholds {
        heater_max: 0.5 * (1.0 - x),
        engine_min: 0.5,
        engine_max: 0.5 * (1.0 + x),
    })
}

/// Heater/accelerator/engine boundaries in `a`, clamped to `[0, 1]`.
pub fn engine_branch_thresholds(params: &DotParams, temperature: f64) -> Result<EngineThresholds> {
    let th = engine_branch_thresholds_raw(params, temperature)?;
    Ok(EngineThresholds {
        heater_max: th.heater_max.clamp(0.0, 1.0),
        engine_min: th.engine_min,
        engine_max: th.engine_max.clamp(0.0, 1.0),
    })
}

fn refrigerator_thresholds_raw(
    params: &DotParams,
    temperature: f64,
    sign: RefrigeratorSign,
) -> Result<RefrigeratorThresholds> {
    params.require_positive_detuning()?;
    let t = tanh_beta_e(params, temperature)?;
    let ratio = params.gap() / params.epsilon;
    let accel_max = match sign {
        RefrigeratorSign::Plus => 0.5 * (1.0 - t),
        RefrigeratorSign::Minus => 0.5 * (1.0 + t),
    };
    Ok(RefrigeratorThresholds {
        accel_max,
        refrig_min: 0.5 * (1.0 + ratio * t),
    })
}

/// Accelerator/heater/refrigerator boundaries in `b`, clamped to `[0, 1]`.
pub fn refrigerator_branch_thresholds(
    params: &DotParams,
    temperature: f64,
    sign: RefrigeratorSign,
) -> Result<RefrigeratorThresholds> {
    let th = refrigerator_thresholds_raw(params, temperature, sign)?;
    Ok(RefrigeratorThresholds {
        accel_max: th.accel_max.clamp(0.0, 1.0),
        refrig_min: th.refrig_min.clamp(0.0, 1.0),
    })
}
