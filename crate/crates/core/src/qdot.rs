//! The double-quantum-dot working substance: Hamiltonian, spectrum, Gibbs state,
//! and the energy/entropy functionals evaluated on density matrices.
//!
//! Localized basis `{|0⟩, |1⟩}` with `σ_z|0⟩ = +|0⟩`, so that
//! `H = −ε σ_z + τ σ_x = [[−ε, τ], [τ, ε]]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HermitianMatrix, Mat2, C64};

/// Detuning `ε` and interdot tunneling `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DotParams {
    pub epsilon: f64,
    pub tau: f64,
}

impl DotParams {
    pub fn new(epsilon: f64, tau: f64) -> Result<Self> {
        check_finite("epsilon", epsilon)?;
        check_finite("tau", tau)?;
        Ok(DotParams { epsilon, tau })
    }

    /// Level half-splitting `E = √(ε² + τ²)`.
    pub fn gap(&self) -> f64 {
        self.epsilon.hypot(self.tau)
    }

    /// Branch formulas divide by `ε`; they require it strictly positive.
    pub fn require_positive_detuning(&self) -> Result<()> {
        if self.epsilon > 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositiveDetuning(self.epsilon))
        }
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NotFinite { name, value })
    }
}

/// Inverse temperature `β = 1/T`, rejecting `T ≤ 0` and NaN.
pub fn beta(temperature: f64) -> Result<f64> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    Ok(1.0 / temperature)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    /// `E ≥ 0`.
    pub gap: f64,
    /// Mixing angle `θ` in radians.
    pub theta: f64,
    /// `(E₁, E₂) = (+E, −E)`.
    pub eigenvalues: [f64; 2],
    /// `|φ₁⟩ = (cos θ, sin θ)`, `|φ₂⟩ = (sin θ, −cos θ)`.
    pub eigenvectors: [[f64; 2]; 2],
    /// Set at `ε = τ = 0`, where `H = 0`.
    pub degenerate: bool,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> [C64; 2] {
        let v = self.eigenvectors[k];
        [C64::new(v[0], 0.0), C64::new(v[1], 0.0)]
    }
}

pub fn hamiltonian(params: &DotParams) -> HermitianMatrix {
    let DotParams { epsilon, tau } = *params;
    HermitianMatrix::new_unchecked(Mat2::from_real([[-epsilon, tau], [tau, epsilon]]))
}

/// Exact diagonalization using the half-angle of `Θ = atan2(τ, −ε)`.
///
/// This agrees with `θ = arctan(τ / (E − ε))` wherever that quotient is defined,
/// and gives the limit `θ = π/2` at `τ = 0, ε > 0`.
pub fn spectrum(params: &DotParams) -> Spectrum {
    let gap = params.gap();
    let degenerate = gap == 0.0;
    let theta = if degenerate {
        0.0
    } else {
        0.5 * params.tau.atan2(-params.epsilon)
    };
    let (s, c) = theta.sin_cos();
    Spectrum {
        gap,
        theta,
        eigenvalues: [gap, -gap],
        eigenvectors: [[c, s], [s, -c]],
        degenerate,
    }
}

/// Thermal populations `(p₁, p₂) = (e^{−βE}, e^{βE}) / Z` of the upper and lower level.
///
/// Evaluated through `tanh` so that large `βE` does not overflow.
pub fn thermal_populations(gap: f64, temperature: f64) -> Result<(f64, f64)> {
    let t = (beta(temperature)? * gap).tanh();
    Ok((0.5 * (1.0 - t), 0.5 * (1.0 + t)))
}

/// `Z = e^{−βE} + e^{βE} = 2 cosh(βE)`.
pub fn partition_function(gap: f64, temperature: f64) -> Result<f64> {
    Ok(2.0 * (beta(temperature)? * gap).cosh())
}

/// `e^{−βH}/Z`, built spectrally as `p₁|φ₁⟩⟨φ₁| + p₂|φ₂⟩⟨φ₂|`.
pub fn gibbs_state(params: &DotParams, temperature: f64) -> Result<DensityMatrix> {
    let spec = spectrum(params);
    let (p1, p2) = thermal_populations(spec.gap, temperature)?;
    let phi1 = spec.eigenvector(0);
    let phi2 = spec.eigenvector(1);
    let m = Mat2::outer(phi1, phi1).scale_real(p1) + Mat2::outer(phi2, phi2).scale_real(p2);
    Ok(DensityMatrix::new_unchecked(m))
}

/// `U = Tr[Hρ]`; the imaginary roundoff is discarded.
pub fn internal_energy(h: &HermitianMatrix, rho: &DensityMatrix) -> f64 {
    (*h.matrix() * *rho.matrix()).trace().re
}

/// `S = −Σ λ ln λ` over the eigenvalues of `ρ`, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.populations().iter().map(|&l| xlogx_neg(l)).sum()
}

/// `−x ln x` with the continuous extension at zero.
pub(crate) fn xlogx_neg(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

    /// Scaling-and-squaring Taylor exponential, independent of the spectral route.
    fn expm(m: &Mat2) -> Mat2 {
        let squarings = 10;
        let a = m.scale_real(1.0 / f64::from(1 << squarings));
        let mut term = Mat2::identity();
        let mut sum = Mat2::identity();
        for k in 1..30 {
            term = (term * a).scale_real(1.0 / k as f64);
            sum = sum + term;
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }

    fn gibbs_by_expm(params: &DotParams, temperature: f64) -> Mat2 {
        let h = hamiltonian(params);
        let e = expm(&h.matrix().scale_real(-1.0 / temperature));
        e.scale_real(1.0 / e.trace().re)
    }

    #[test]
    fn hamiltonian_entries() {
        let cases = [
            ((1.0, 0.0), [[-1.0, 0.0], [0.0, 1.0]]),
            ((0.0, 1.0), [[0.0, 1.0], [1.0, 0.0]]),
            ((1.0, 0.5), [[-1.0, 0.5], [0.5, 1.0]]),
        ];
        for ((eps, tau), expected) in cases {
            let h = hamiltonian(&DotParams::new(eps, tau).unwrap());
            assert_eq!(*h.matrix(), Mat2::from_real(expected));
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&DotParams::new(1.0, 0.0).unwrap());
        assert_eq!(s.gap, 1.0);
        assert_abs_diff_eq!(s.theta, FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvectors[0][0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvectors[0][1], 1.0, epsilon = 1e-15);

        let s = spectrum(&DotParams::new(0.0, 1.0).unwrap());
        assert_eq!(s.gap, 1.0);
        assert_abs_diff_eq!(s.theta, FRAC_PI_4, epsilon = 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.eigenvectors[0][0], r, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvectors[0][1], r, epsilon = 1e-15);

        let s = spectrum(&DotParams::new(1.0, 0.5).unwrap());
        assert_abs_diff_eq!(s.gap, 1.118_033_988_749_895, epsilon = 1e-15);
        assert_eq!(s.eigenvalues, [s.gap, -s.gap]);
        assert!(!s.degenerate);
    }

    #[test]
    fn degenerate_point_is_flagged() {
        let p = DotParams::new(0.0, 0.0).unwrap();
        let s = spectrum(&p);
        assert!(s.degenerate);
        assert_eq!(s.theta, 0.0);
        let g = gibbs_state(&p, 1.0).unwrap();
        assert!(g.matrix().distance(&Mat2::diag(0.5, 0.5)) < 1e-15);
    }

    #[test]
    fn eigen_equation_and_half_angle_agree_with_arctan_form() {
        for &(eps, tau) in &[
            (1.0, 0.5),
            (0.3, 2.0),
            (-1.5, 0.2),
            (2.0, -0.7),
            (1e-8, 1.0),
        ] {
            let p = DotParams::new(eps, tau).unwrap();
            let s = spectrum(&p);
            let h = hamiltonian(&p);
            for k in 0..2 {
                let v = s.eigenvector(k);
                let hv = h.matrix().apply(v);
                for i in 0..2 {
                    assert!((hv[i] - v[i] * s.eigenvalues[k]).norm() < 1e-12);
                }
            }
            let denom = s.gap - eps;
            if denom > 1e-300 {
                assert!((s.theta.tan() * denom - tau).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gibbs_examples() {
        let p = DotParams::new(1.0, 0.0).unwrap();
        let g = gibbs_state(&p, 1e12).unwrap();
        assert!(g.matrix().distance(&Mat2::diag(0.5, 0.5)) < 1e-10);

        // e^{∓1}/(e^{−1}+e^{1}); |0⟩ is the ground level at ε > 0.
        let upper = (-1.0f64).exp() / ((-1.0f64).exp() + 1.0f64.exp());
        let g = gibbs_state(&p, 1.0).unwrap();
        assert!(g.matrix().distance(&Mat2::diag(1.0 - upper, upper)) < 1e-15);
        assert_abs_diff_eq!(upper, 0.119_203, epsilon = 1e-6);
    }

    #[test]
    fn gibbs_matches_matrix_exponential() {
        for &(eps, tau, t) in &[
            (1.0, 0.5, 2.0),
            (0.2, 1.0, 0.5),
            (3.0, 0.1, 6.0),
            (1.0, 0.0, 1.0),
        ] {
            let p = DotParams::new(eps, tau).unwrap();
            let g = gibbs_state(&p, t).unwrap();
            assert!(g.matrix().distance(&gibbs_by_expm(&p, t)) < 1e-12);
            let z = partition_function(p.gap(), t).unwrap();
            let e = p.gap();
            assert_abs_diff_eq!(z, (-e / t).exp() + (e / t).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn temperature_must_be_positive() {
        let p = DotParams::new(1.0, 0.0).unwrap();
        assert_eq!(
            gibbs_state(&p, 0.0),
            Err(Error::NonPositiveTemperature(0.0))
        );
        assert!(gibbs_state(&p, -1.0).is_err());
        assert!(gibbs_state(&p, f64::NAN).is_err());
        assert!(DotParams::new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn internal_energy_examples() {
        let h = hamiltonian(&DotParams::new(1.0, 0.0).unwrap());
        assert_eq!(internal_energy(&h, &DensityMatrix::maximally_mixed()), 0.0);

        let p = DotParams::new(1.0, 0.0).unwrap();
        let g = gibbs_state(&p, 1.0).unwrap();
        assert_abs_diff_eq!(internal_energy(&h, &g), -1.0f64.tanh(), epsilon = 1e-15);
        assert_abs_diff_eq!(internal_energy(&h, &g), -0.761_594, epsilon = 1e-6);

        let h = hamiltonian(&DotParams::new(1.0, 0.5).unwrap());
        let ground = DensityMatrix::diagonal(1.0).unwrap();
        assert_eq!(internal_energy(&h, &ground), -1.0);
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&DensityMatrix::maximally_mixed()),
            LN_2,
            epsilon = 1e-15
        );
        assert_eq!(
            von_neumann_entropy(&DensityMatrix::diagonal(1.0).unwrap()),
            0.0
        );
        let rho = DensityMatrix::diagonal(0.119_203).unwrap();
        // h(u) evaluated directly
        let u: f64 = 0.119_203;
        let h = -u * u.ln() - (1.0 - u) * (1.0 - u).ln();
        assert_abs_diff_eq!(von_neumann_entropy(&rho), h, epsilon = 1e-14);
        assert_abs_diff_eq!(h, 0.365_334, epsilon = 1e-6);
    }
}
