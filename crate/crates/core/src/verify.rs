//! Seeded self-verification suite: runs the invariant checks of every module
//! on random inputs and reports the worst residual per suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channels::{MeasurementChannel, Orientation};
use crate::linalg::{DensityMatrix, Mat2};
use crate::qdot::DotParams;
use crate::regimes::{classify, BranchKind};
use crate::thermo::{run_cycle_closed_form, run_cycle_matrix, CycleInputs};

pub const COMPLETENESS_TOL: f64 = 1e-14;
pub const STATE_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-10;
pub const CLOSURE_TOL: f64 = 1e-12;
/// Cells closer than this to an analytic threshold are not compared.
pub const BOUNDARY_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Negative control: drop the fourth Kraus operator of every set.
    pub corrupt_kraus: bool,
}

impl VerifyOptions {
    pub fn new(seed: u64, trials: usize) -> Self {
        VerifyOptions {
            seed,
            trials,
            corrupt_kraus: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Inputs of the worst failing case.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

/// Tracks the worst residual of one suite.
struct Suite {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    max_residual: f64,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Suite {
            name,
            tolerance,
            cases: 0,
            max_residual: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, residual: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        if residual > self.max_residual {
            self.max_residual = residual;
            if residual >= self.tolerance {
                self.failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            passed: self.max_residual < self.tolerance,
            failure: self.failure,
        }
    }
}

/// Uniform state in the Bloch ball.
pub fn random_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    loop {
        let r = [
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0f64..=1.0),
        ];
        if r.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return DensityMatrix::from_bloch(r).expect("point inside the Bloch ball");
        }
    }
}

/// `ε ∈ (0, 3]`, `τ ∈ [0, 1]`, `T ∈ [0.5, 6]`, `a, b ∈ [0, 1]`.
pub fn random_cycle_inputs<R: Rng>(rng: &mut R) -> CycleInputs {
    let epsilon = 3.0 * (1.0 - rng.gen::<f64>());
    let tau = rng.gen_range(0.0..=1.0);
    let temperature = rng.gen_range(0.5..=6.0);
    let a = rng.gen_range(0.0..=1.0);
    let b = rng.gen_range(0.0..=1.0);
    CycleInputs::new(
        DotParams::new(epsilon, tau).expect("finite"),
        temperature,
        a,
        b,
    )
    .expect("sampled inside the valid domain")
}

fn channel_for(orientation: Orientation, strength: f64) -> MeasurementChannel {
    MeasurementChannel::new(orientation, strength).expect("strength sampled in [0, 1]")
}

pub fn run_verification(opts: &VerifyOptions) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = opts.trials;
    let orientations = [Orientation::A, Orientation::B];

    let kraus_for = |o: Orientation, p: f64| {
        let mut k = channel_for(o, p).kraus_operators();
        if opts.corrupt_kraus {
            k.operators_mut()[3] = Mat2::zeros();
        }
        k
    };

    let mut completeness = Suite::new("completeness", COMPLETENESS_TOL);
    for _ in 0..n {
        for o in orientations {
            let p: f64 = rng.gen_range(0.0..=1.0);
            let r = kraus_for(o, p).completeness_residual();
            completeness.record(r, || {
                format!("orientation={o:?} strength={p:?} residual={r:e}")
            });
        }
    }

    let mut cptp = Suite::new("cptp", STATE_TOL);
    for _ in 0..n {
        let rho = random_state(&mut rng);
        let o = orientations[rng.gen_range(0..2)];
        let p: f64 = rng.gen_range(0.0..=1.0);
        let out = kraus_for(o, p).apply(rho.matrix());
        let trace_err = (out.trace() - 1.0).norm();
        let negativity = (-out.hermitian_eigenvalues()[0]).max(0.0);
        let herm = out.hermiticity_residual();
        let r = trace_err.max(negativity).max(herm);
        cptp.record(r, || {
            format!("orientation={o:?} strength={p:?} rho={:?}", rho.matrix())
        });
    }

    let mut reset = Suite::new("reset", STATE_TOL);
    for _ in 0..n {
        let (rho, sigma) = (random_state(&mut rng), random_state(&mut rng));
        for o in orientations {
            let p: f64 = rng.gen_range(0.0..=1.0);
            let k = kraus_for(o, p);
            let out_rho = k.apply(rho.matrix());
            let out_sigma = k.apply(sigma.matrix());
            let closed = channel_for(o, p).reset_state();
            let r = out_rho
                .distance(&out_sigma)
                .max(out_rho.distance(closed.matrix()));
            reset.record(r, || {
                format!(
                    "orientation={o:?} strength={p:?} rho={:?} sigma={:?}",
                    rho.matrix(),
                    sigma.matrix()
                )
            });
        }
    }

    let mut oracle = Suite::new("oracle-equivalence", ORACLE_TOL);
    let mut closure = Suite::new("closure", CLOSURE_TOL);
    for _ in 0..n {
        let inputs = random_cycle_inputs(&mut rng);
        let describe = || format!("{inputs:?}");
        match (run_cycle_matrix(&inputs), run_cycle_closed_form(&inputs)) {
            (Ok(m), Ok(c)) => {
                oracle.record(m.max_discrepancy(&c), describe);
                let r = [
                    m.energy_closure(),
                    m.entropy_closure(),
                    c.energy_closure(),
                    c.entropy_closure(),
                ]
                .iter()
                .fold(0.0f64, |acc, x| acc.max(x.abs()));
                closure.record(r, describe);
            }
            (m, c) => {
                let msg = format!("{inputs:?}: {:?} / {:?}", m.err(), c.err());
                oracle.record(f64::INFINITY, || msg.clone());
                closure.record(f64::INFINITY, || msg);
            }
        }
    }

    // Residual is 1 for a mismatch between sign-table and threshold modes.
    let mut thresholds = Suite::new("threshold-consistency", 0.5);
    let mut isentropy = Suite::new("branch-isentropy", ORACLE_TOL);
    let branches = [
        BranchKind::Engine,
        BranchKind::RefrigeratorPlus,
        BranchKind::RefrigeratorMinus,
    ];
    for _ in 0..n {
        let inputs = random_cycle_inputs(&mut rng);
        let (p, t, s) = (inputs.params, inputs.temperature, inputs.a);
        let branch = branches[rng.gen_range(0..3)];
        let describe = || format!("branch={branch} params={p:?} T={t:?} strength={s:?}");
        let near = branch
            .distance_to_boundary(&p, t, s)
            .map(|d| d <= BOUNDARY_BAND)
            .unwrap_or(false);
        if !near {
            let got = classify(branch, &p, t, s, crate::linalg::DEFAULT_TOL).map(|c| c.mode);
            let want = branch.analytic_mode(&p, t, s);
            let r = match (got, want) {
                (Ok(g), Ok(w)) if g == w => 0.0,
                _ => 1.0,
            };
            thresholds.record(r, describe);
        }
        match branch.ledger(&p, t, s) {
            Ok(l) => {
                let r = match branch {
                    BranchKind::Engine => l.ds3.abs(),
                    _ => l.ds2.abs(),
                };
                isentropy.record(r, describe);
            }
            Err(_) => isentropy.record(f64::INFINITY, describe),
        }
    }

    VerifyReport {
        seed: opts.seed,
        trials: n,
        suites: vec![
            completeness.finish(),
            cptp.finish(),
            reset.finish(),
            oracle.finish(),
            closure.finish(),
            thresholds.finish(),
            isentropy.finish(),
        ],
    }
}
