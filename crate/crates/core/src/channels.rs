//! The two nonselective generalized measurement channels, as explicit
//! four-operator Kraus sets applied through `ρ ↦ Σₖ Mₖ ρ Mₖ†`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Mat2};

/// Which of the two channels: `A` pumps toward `|1⟩` with weight `a`,
/// `B` pumps toward `|0⟩` with weight `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementChannel {
    strength: f64,
    orientation: Orientation,
}

impl MeasurementChannel {
    pub fn new(orientation: Orientation, strength: f64) -> Result<Self> {
        check_strength(strength)?;
        Ok(MeasurementChannel {
            strength,
            orientation,
        })
    }

    pub fn a(strength: f64) -> Result<Self> {
        Self::new(Orientation::A, strength)
    }

    pub fn b(strength: f64) -> Result<Self> {
        Self::new(Orientation::B, strength)
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Kraus operators in the fixed order `M₁..M₄`.
    pub fn kraus_operators(&self) -> KrausSet {
        let p = self.strength;
        let (keep, flip) = ((1.0 - p).sqrt(), p.sqrt());
        let u = Mat2::unit;
        let ops = match self.orientation {
            Orientation::A => [
                u(0, 0).scale_real(keep),
                u(0, 1).scale_real(keep),
                u(1, 1).scale_real(flip),
                u(1, 0).scale_real(flip),
            ],
            Orientation::B => [
                u(1, 1).scale_real(keep),
                u(1, 0).scale_real(keep),
                u(0, 0).scale_real(flip),
                u(0, 1).scale_real(flip),
            ],
        };
        KrausSet { operators: ops }
    }

    /// Generic Kraus sum `Σₖ Mₖ ρ Mₖ†`.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::new_unchecked(self.kraus_operators().apply(rho.matrix()))
    }

    /// The input-independent output in closed form: `diag(1−a, a)` for `A`,
    /// `diag(b, 1−b)` for `B`.
    pub fn reset_state(&self) -> DensityMatrix {
        let p = self.strength;
        let m = match self.orientation {
            Orientation::A => Mat2::diag(1.0 - p, p),
            Orientation::B => Mat2::diag(p, 1.0 - p),
        };
        DensityMatrix::new_unchecked(m)
    }
}

pub(crate) fn check_strength(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::StrengthOutOfRange(p))
    }
}

/// An ordered list of four Kraus operators.
///
/// Built by [`MeasurementChannel::kraus_operators`]; [`KrausSet::from_operators`]
/// admits arbitrary (possibly incomplete) sets for verification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KrausSet {
    operators: [Mat2; 4],
}

impl KrausSet {
    pub fn from_operators(operators: [Mat2; 4]) -> Self {
        KrausSet { operators }
    }

    pub fn operators(&self) -> &[Mat2; 4] {
        &self.operators
    }

    pub fn operators_mut(&mut self) -> &mut [Mat2; 4] {
        &mut self.operators
    }

    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        self.operators.iter().map(|m| m.sandwich(rho)).sum()
    }

    /// `Σₖ Mₖ†Mₖ`.
    pub fn completeness_sum(&self) -> Mat2 {
        self.operators.iter().map(|m| m.adjoint() * *m).sum()
    }

    /// `‖Σₖ Mₖ†Mₖ − I‖_max`.
    pub fn completeness_residual(&self) -> f64 {
        self.completeness_sum().distance(&Mat2::identity())
    }
}
