//! Dense 2×2 complex matrices and the two validated wrappers built on them.
//!
//! All comparisons use the max-norm (largest absolute entry).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for Hermiticity, trace and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-12;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Plain 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn zeros() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2([
            [C64::new(m[0][0], 0.0), C64::new(m[0][1], 0.0)],
            [C64::new(m[1][0], 0.0), C64::new(m[1][1], 0.0)],
        ])
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Mat2::from_real([[d0, 0.0], [0.0, d1]])
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: [C64; 2], bra: [C64; 2]) -> Self {
        Mat2(ket.map(|k| bra.map(|b| k * b.conj())))
    }

    /// Basis projector/transition `|i⟩⟨j|` in the localized basis.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Mat2::zeros();
        m.0[i][j] = ONE;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.0;
        Mat2([
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `‖A − B‖_max`.
    pub fn distance(&self, other: &Mat2) -> f64 {
        (*self - *other).max_norm()
    }

    /// `‖A − A†‖_max`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.distance(&self.adjoint())
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Mat2) -> Self {
        *self * *other - *other * *self
    }

    /// `A v`.
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let a = &self.0;
        [
            a[0][0] * v[0] + a[0][1] * v[1],
            a[1][0] * v[0] + a[1][1] * v[1],
        ]
    }

    /// `M X M†`.
    pub fn sandwich(&self, x: &Mat2) -> Self {
        *self * *x * self.adjoint()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    ///
    /// Closed form for 2×2: mean of the diagonal plus/minus the half-gap
    /// `√(((a−d)/2)² + |b|²)`, evaluated with `hypot` to avoid cancellation.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = 0.5 * (self.0[0][1] + self.0[1][0].conj());
        let mean = 0.5 * (a + d);
        let half_gap = (0.5 * (a - d)).hypot(b.norm());
        [mean - half_gap, mean + half_gap]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_real(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let b = &rhs.0;
        Mat2(
            self.0
                .map(|row| [0, 1].map(|j| row[0] * b[0][j] + row[1] * b[1][j])),
        )
    }
}

impl std::iter::Sum for Mat2 {
    fn sum<I: Iterator<Item = Mat2>>(iter: I) -> Mat2 {
        iter.fold(Mat2::zeros(), Add::add)
    }
}

/// Serialized as `{"re": [[..],[..]], "im": [[..],[..]]}`.
#[derive(Serialize, Deserialize)]
struct SplitMat2 {
    re: [[f64; 2]; 2],
    im: [[f64; 2]; 2],
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let re = [
            [self.0[0][0].re, self.0[0][1].re],
            [self.0[1][0].re, self.0[1][1].re],
        ];
        let im = [
            [self.0[0][0].im, self.0[0][1].im],
            [self.0[1][0].im, self.0[1][1].im],
        ];
        SplitMat2 { re, im }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let SplitMat2 { re, im } = SplitMat2::deserialize(d)?;
        let mut m = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = C64::new(re[i][j], im[i][j]);
            }
        }
        Ok(m)
    }
}

/// A 2×2 matrix that is Hermitian within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HermitianMatrix(Mat2);

impl HermitianMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tol(m, DEFAULT_TOL)
    }

    pub fn with_tol(m: Mat2, tol: f64) -> Result<Self> {
        let r = m.hermiticity_residual();
        if r > tol {
            return Err(Error::NotHermitian(r));
        }
        Ok(HermitianMatrix(m))
    }

    pub(crate) fn new_unchecked(m: Mat2) -> Self {
        HermitianMatrix(m)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues()
    }
}

/// A valid qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tol(m, DEFAULT_TOL)
    }

    pub fn with_tol(m: Mat2, tol: f64) -> Result<Self> {
        let r = m.hermiticity_residual();
        if r > tol {
            return Err(Error::NotHermitian(r));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::TraceNotOne(tr.re));
        }
        let [lo, _] = m.hermitian_eigenvalues();
        if lo < -tol {
            return Err(Error::NotPositive(lo));
        }
        Ok(DensityMatrix(m))
    }

    pub(crate) fn new_unchecked(m: Mat2) -> Self {
        DensityMatrix(m)
    }

    /// `diag(p0, 1 − p0)` in the localized basis.
    pub fn diagonal(p0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::ProbabilityOutOfRange(p0));
        }
        Ok(DensityMatrix(Mat2::diag(p0, 1.0 - p0)))
    }

    /// `½(I + r·σ)` for a Bloch vector with `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let [x, y, z] = r;
        let m = Mat2([
            [C64::new(0.5 * (1.0 + z), 0.0), C64::new(0.5 * x, -0.5 * y)],
            [C64::new(0.5 * x, 0.5 * y), C64::new(0.5 * (1.0 - z), 0.0)],
        ]);
        DensityMatrix::new(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat2::diag(0.5, 0.5))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Eigenvalues clamped to `[0, 1]`, ascending.
    pub fn populations(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues().map(|l| l.clamp(0.0, 1.0))
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Mat2::deserialize(d)?;
        DensityMatrix::new(m).map_err(serde::de::Error::custom)
    }
}
