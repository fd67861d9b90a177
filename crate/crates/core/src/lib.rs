//! Three-stroke thermal machine powered by nonselective generalized measurements,
//! with a double quantum dot (DQD) as the working substance.
//!
//! The cycle is: thermalization with a single bath (Gibbs state), a measurement
//! channel of strength `a`, then a second channel of strength `b`. Every stroke
//! quantity is available through two independent routes, an explicit
//! density-matrix pipeline and the closed-form expressions, and the two are
//! cross-checked in [`verify`].
//!
//! Natural units are used throughout (`k_B = ħ = 1`).

pub mod channels;
pub mod error;
pub mod linalg;
pub mod qdot;
pub mod regimes;
pub mod sweep;
pub mod thermo;
pub mod verify;

pub use channels::{KrausSet, MeasurementChannel, Orientation};
pub use error::{Error, Result};
pub use linalg::{DensityMatrix, HermitianMatrix, Mat2, DEFAULT_TOL};
pub use qdot::{DotParams, Spectrum};
pub use regimes::{BranchKind, Classification, HeatWork, Mode};
pub use sweep::{Axis, GridSpec, SweepCell, SweepResult};
pub use thermo::{CycleInputs, StrokeLedger};
