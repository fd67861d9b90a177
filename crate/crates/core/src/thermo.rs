//! The three-stroke cycle and its per-stroke energy/entropy ledger.
//!
//! Stroke 1 is thermalization (`ρ⁽³⁾ → ρ⁽¹⁾`, closing the cycle), stroke 2 is
//! channel A (`ρ⁽¹⁾ → ρ⁽²⁾`), stroke 3 is channel B (`ρ⁽²⁾ → ρ⁽³⁾`). Each
//! `ΔUᵢ = U⁽ⁱ⁾ − U⁽ⁱ⁻¹⁾` with the index taken cyclically.

use serde::{Deserialize, Serialize};

use crate::channels::{check_strength, MeasurementChannel};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::qdot::{
    self, beta, gibbs_state, hamiltonian, internal_energy, von_neumann_entropy, DotParams,
};

/// Binary Shannon entropy `h(u) = −u ln u − (1−u) ln(1−u)` in nats.
pub fn binary_entropy(u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::ProbabilityOutOfRange(u));
    }
    Ok(qdot::xlogx_neg(u) + qdot::xlogx_neg(1.0 - u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleInputs {
    pub params: DotParams,
    pub temperature: f64,
    pub a: f64,
    pub b: f64,
}

impl CycleInputs {
    pub fn new(params: DotParams, temperature: f64, a: f64, b: f64) -> Result<Self> {
        beta(temperature)?;
        check_strength(a)?;
        check_strength(b)?;
        Ok(CycleInputs {
            params,
            temperature,
            a,
            b,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrokeLedger {
    pub du1: f64,
    pub du2: f64,
    pub du3: f64,
    pub ds1: f64,
    pub ds2: f64,
    pub ds3: f64,
    pub rho1: DensityMatrix,
    pub rho2: DensityMatrix,
    pub rho3: DensityMatrix,
}

impl StrokeLedger {
    pub fn energies(&self) -> [f64; 3] {
        [self.du1, self.du2, self.du3]
    }

    pub fn entropies(&self) -> [f64; 3] {
        [self.ds1, self.ds2, self.ds3]
    }

    fn scalars(&self) -> [f64; 6] {
        [self.du1, self.du2, self.du3, self.ds1, self.ds2, self.ds3]
    }

    /// `ΣΔU`, zero up to roundoff for a closed cycle.
    pub fn energy_closure(&self) -> f64 {
        self.energies().iter().sum()
    }

    pub fn entropy_closure(&self) -> f64 {
        self.entropies().iter().sum()
    }

    /// Largest absolute difference over all scalar fields and state entries.
    pub fn max_discrepancy(&self, other: &StrokeLedger) -> f64 {
        let (mine, theirs) = (self.scalars(), other.scalars());
        let scalars = mine.iter().zip(theirs.iter()).map(|(x, y)| (x - y).abs());
        let states = [
            self.rho1.matrix().distance(other.rho1.matrix()),
            self.rho2.matrix().distance(other.rho2.matrix()),
            self.rho3.matrix().distance(other.rho3.matrix()),
        ];
        scalars.chain(states).fold(0.0, f64::max)
    }
}

/// Runs the cycle through explicit density matrices and Kraus sums.
pub fn run_cycle_matrix(inputs: &CycleInputs) -> Result<StrokeLedger> {
    let h = hamiltonian(&inputs.params);
    let rho1 = gibbs_state(&inputs.params, inputs.temperature)?;
    let rho2 = MeasurementChannel::a(inputs.a)?.apply(&rho1);
    let rho3 = MeasurementChannel::b(inputs.b)?.apply(&rho2);

    let [u1, u2, u3] = [&rho1, &rho2, &rho3].map(|r| internal_energy(&h, r));
    let [s1, s2, s3] = [&rho1, &rho2, &rho3].map(von_neumann_entropy);

    Ok(StrokeLedger {
        du1: u1 - u3,
        du2: u2 - u1,
        du3: u3 - u2,
        ds1: s1 - s3,
        ds2: s2 - s1,
        ds3: s3 - s2,
        rho1,
        rho2,
        rho3,
    })
}

/// Runs the cycle through the closed-form stroke expressions.
pub fn run_cycle_closed_form(inputs: &CycleInputs) -> Result<StrokeLedger> {
    let CycleInputs {
        params,
        temperature,
        a,
        b,
    } = *inputs;
    let eps = params.epsilon;
    let e = params.gap();
    let t = (beta(temperature)? * e).tanh();
    let h_thermal = binary_entropy(0.5 * (1.0 - t))?;
    let (h_a, h_b) = (binary_entropy(a)?, binary_entropy(b)?);

    Ok(StrokeLedger {
        du1: -e * t + eps * (2.0 * b - 1.0),
        du2: e * t + eps * (2.0 * a - 1.0),
        du3: 2.0 * eps * (1.0 - a - b),
        ds1: h_thermal - h_b,
        ds2: h_a - h_thermal,
        ds3: h_b - h_a,
        rho1: gibbs_state(&params, temperature)?,
        rho2: DensityMatrix::diagonal(1.0 - a)?,
        rho3: DensityMatrix::diagonal(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    fn inputs(eps: f64, tau: f64, t: f64, a: f64, b: f64) -> CycleInputs {
        CycleInputs::new(DotParams::new(eps, tau).unwrap(), t, a, b).unwrap()
    }

    #[test]
    fn binary_entropy_examples() {
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), LN_2, epsilon = 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            binary_entropy(0.119_203).unwrap(),
            0.365_334,
            epsilon = 1e-6
        );
        assert_eq!(binary_entropy(1.5), Err(Error::ProbabilityOutOfRange(1.5)));
        assert!(binary_entropy(-1e-9).is_err());
    }

    #[test]
    fn unbiased_channels_ledger() {
        let l = run_cycle_matrix(&inputs(1.0, 0.0, 1.0, 0.5, 0.5)).unwrap();
        assert_abs_diff_eq!(l.du3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.ds3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.du2, 1.0f64.tanh(), epsilon = 1e-15);
        assert_abs_diff_eq!(l.du2, 0.761_594, epsilon = 1e-6);
    }

    #[test]
    fn equal_strength_ledger_values() {
        let inp = inputs(1.0, 0.0, 1.0, 0.7, 0.7);
        let m = run_cycle_matrix(&inp).unwrap();
        let c = run_cycle_closed_form(&inp).unwrap();
        for l in [&m, &c] {
            assert_abs_diff_eq!(l.du1, -0.361_594, epsilon = 1e-6);
            assert_abs_diff_eq!(l.du2, 1.161_594, epsilon = 1e-6);
            assert_abs_diff_eq!(l.du3, -0.8, epsilon = 1e-12);
            assert!(l.energy_closure().abs() < 1e-12);
        }
        assert_eq!(c.ds3, 0.0);
        assert!(m.max_discrepancy(&c) < 1e-12);
    }

    #[test]
    fn complementary_strengths_annihilate_third_stroke() {
        let c = run_cycle_closed_form(&inputs(2.0, 0.5, 2.0, 0.1, 0.9)).unwrap();
        assert_eq!(c.du3, 0.0);
    }

    #[test]
    fn invalid_inputs_rejected() {
        let p = DotParams::new(1.0, 0.0).unwrap();
        assert!(CycleInputs::new(p, 0.0, 0.5, 0.5).is_err());
        assert!(CycleInputs::new(p, 1.0, 1.5, 0.5).is_err());
        assert!(CycleInputs::new(p, 1.0, 0.5, -0.5).is_err());
    }

    #[test]
    fn stroke_states_match_reset_forms() {
        let inp = inputs(0.8, 0.3, 1.5, 0.2, 0.65);
        let m = run_cycle_matrix(&inp).unwrap();
        assert!(m.rho2.matrix().distance(&crate::Mat2::diag(0.8, 0.2)) < 1e-12);
        assert!(m.rho3.matrix().distance(&crate::Mat2::diag(0.65, 0.35)) < 1e-12);
    }
}
