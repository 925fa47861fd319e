//! Model parameters and the quantities derived from them.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = ω K₃ + Ω₁ K₊ + Ω₁* K₋ + Ω₂ a† + Ω₂* a
//! K₃ = ½(a†a + ½),  K₊ = a†²/2,  K₋ = a²/2
//! ```
//!
//! so the free level spacing is ω/2. A mode-pair Hamiltonian written as
//! `ω' a†a + Ω₁' (a†² + a²) + ...` maps onto this one with ω = 2ω', Ω₁ = 2Ω₁'.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hamiltonian coefficients plus the amplitude of the initial coherent state.
///
/// JSON form: `{"omega": 1.0, "omega1": [re, im], "omega2": [re, im], "lambda0": [re, im]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de> + Zero"))]
pub struct ModelParams<T> {
    pub omega: T,
    pub omega1: Complex<T>,
    #[serde(default = "zero_complex")]
    pub omega2: Complex<T>,
    #[serde(default = "zero_complex")]
    pub lambda0: Complex<T>,
}

fn zero_complex<T: Zero>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Real> ModelParams<T> {
    pub fn new(omega: T, omega1: Complex<T>, omega2: Complex<T>, lambda0: Complex<T>) -> Self {
        Self { omega, omega1, omega2, lambda0 }
    }

    /// Real Ω₁ and Ω₂, vacuum initial state.
    pub fn real(omega: T, omega1: T, omega2: T) -> Self {
        Self::new(omega, Complex::new(omega1, T::zero()), Complex::new(omega2, T::zero()), zero_complex())
    }

    pub fn with_lambda(mut self, lambda0: Complex<T>) -> Self {
        self.lambda0 = lambda0;
        self
    }

    pub fn validate(self) -> Result<ValidatedParams<T>> {
        validate(self)
    }
}

/// Parameters that passed [`validate`], together with their derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedParams<T> {
    params: ModelParams<T>,
    derived: DerivedParams<T>,
}

impl<T: Real> ValidatedParams<T> {
    #[inline]
    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    #[inline]
    pub fn derived(&self) -> &DerivedParams<T> {
        &self.derived
    }

    #[inline]
    pub fn omega(&self) -> T {
        self.params.omega
    }

    #[inline]
    pub fn omega1(&self) -> Complex<T> {
        self.params.omega1
    }

    #[inline]
    pub fn omega2(&self) -> Complex<T> {
        self.params.omega2
    }

    #[inline]
    pub fn lambda0(&self) -> Complex<T> {
        self.params.lambda0
    }

    #[inline]
    pub fn phi(&self) -> T {
        self.derived.phi
    }

    /// Same Hamiltonian, different initial coherent amplitude.
    pub fn with_lambda(self, lambda0: Complex<T>) -> Self {
        Self { params: self.params.with_lambda(lambda0), derived: self.derived }
    }
}

/// Quantities fixed by the Hamiltonian alone.
///
/// `alpha` is the displacement that removes the linear drive and `c = Ω̃†A⁻¹Ω̃`.
/// Under `D(α)` the Hamiltonian becomes `P − c/2`, where `P` is the pure SU(1,1)
/// part; [`DerivedParams::energy_shift`] returns that offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<T> {
    pub phi: T,
    pub alpha: Complex<T>,
    pub c: T,
    pub tau: T,
}

impl<T: Real> DerivedParams<T> {
    /// `D(α) H D†(α) = P − energy_shift()`.
    #[inline]
    pub fn energy_shift(&self) -> T {
        self.c / T::lit(2.0)
    }
}

/// Checks the regime in which every closed form holds: ω > 0 and |Ω₁| < ω/2.
pub fn validate<T: Real>(params: ModelParams<T>) -> Result<ValidatedParams<T>> {
    let finite = |z: Complex<T>| z.re.is_finite() && z.im.is_finite();
    if !finite(params.omega1) {
        return Err(Error::NonFiniteParameter { name: "omega1" });
    }
    if !finite(params.omega2) {
        return Err(Error::NonFiniteParameter { name: "omega2" });
    }
    if !finite(params.lambda0) {
        return Err(Error::NonFiniteParameter { name: "lambda0" });
    }
    if params.omega <= T::zero() || !params.omega.is_finite() {
        return Err(Error::NonPositiveFrequency { omega: params.omega.as_f64() });
    }
    let half = params.omega / T::lit(2.0);
    let abs1 = params.omega1.norm();
    // phi² = (ω/2 − |Ω₁|)(ω/2 + |Ω₁|) must be strictly positive
    if abs1 >= half || (half - abs1) * (half + abs1) <= T::zero() {
        return Err(Error::DegenerateSpectrum { omega1_abs: abs1.as_f64(), half_omega: half.as_f64() });
    }
    let derived = derive_unchecked(&params);
    Ok(ValidatedParams { params, derived })
}

/// φ, α, c and τ for validated parameters.
pub fn derive<T: Real>(params: &ValidatedParams<T>) -> DerivedParams<T> {
    params.derived
}

fn derive_unchecked<T: Real>(p: &ModelParams<T>) -> DerivedParams<T> {
    let two = T::lit(2.0);
    let half = p.omega / two;
    let abs1 = p.omega1.norm();
    let phi2 = (half - abs1) * (half + abs1);
    let phi = phi2.sqrt();
    // A = [[ω/2, Ω₁], [Ω₁*, ω/2]], det A = φ²
    let alpha = (p.omega2.scale(half) - p.omega1 * p.omega2.conj()) / phi2;
    let c = (p.omega * p.omega2.norm_sqr() - two * (p.omega1.conj() * p.omega2 * p.omega2).re) / phi2;
    let tau = two * T::PI() / phi;
    DerivedParams { phi, alpha, c, tau }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn validation_regime() {
        assert!(ModelParams::real(1.0, 0.1, 0.05).validate().is_ok());
        assert!(matches!(ModelParams::real(1.0, 0.5, 0.0).validate(), Err(Error::DegenerateSpectrum { .. })));
        assert!(matches!(ModelParams::real(1.0, 0.6, 0.0).validate(), Err(Error::DegenerateSpectrum { .. })));
        assert!(matches!(ModelParams::real(0.0, 0.0, 0.0).validate(), Err(Error::NonPositiveFrequency { .. })));
        assert!(matches!(ModelParams::real(-1.0, 0.0, 0.0).validate(), Err(Error::NonPositiveFrequency { .. })));
        assert!(matches!(ModelParams::real(f64::NAN, 0.0, 0.0).validate(), Err(Error::NonPositiveFrequency { .. })));
        assert!(matches!(
            ModelParams::real(1.0, f64::INFINITY, 0.0).validate(),
            Err(Error::NonFiniteParameter { name: "omega1" })
        ));
        // complex Ω₁ on the boundary
        let p = ModelParams::new(1.0, Complex::new(0.0, 0.5), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        assert!(matches!(p.validate(), Err(Error::DegenerateSpectrum { .. })));
    }

    #[test]
    fn derive_free_drive() {
        let d = *ModelParams::real(2.0, 0.0, 1.0).validate().unwrap().derived();
        assert_relative_eq!(d.phi, 1.0);
        assert_relative_eq!(d.alpha.re, 1.0);
        assert_relative_eq!(d.alpha.im, 0.0);
        assert_relative_eq!(d.c, 2.0);
    }

    #[test]
    fn derive_reference_point() {
        let d = *ModelParams::real(1.0, 0.1, 0.05).validate().unwrap().derived();
        assert_relative_eq!(d.phi, 0.24f64.sqrt(), epsilon = 1e-15);
        assert!((d.phi - 0.489898).abs() < 1e-6);
        assert!((d.tau - 12.8255).abs() < 1e-4);
        assert!((d.c - 0.008333).abs() < 1e-6);
    }

    /// Solves A·x = Ω̃ by Cramer's rule on the full complex 2×2 system, then
    /// forms Ω̃†x; no conjugate symmetry is assumed.
    fn c_by_solve(p: &ModelParams<f64>) -> (Complex<f64>, Complex<f64>, Complex<f64>) {
        let h = Complex::new(p.omega / 2.0, 0.0);
        let (a11, a12, a21, a22) = (h, p.omega1, p.omega1.conj(), h);
        let (b1, b2) = (p.omega2, p.omega2.conj());
        let det = a11 * a22 - a12 * a21;
        let x1 = (b1 * a22 - a12 * b2) / det;
        let x2 = (a11 * b2 - a21 * b1) / det;
        let c = p.omega2.conj() * x1 + p.omega2 * x2;
        (x1, x2, c)
    }

    #[test]
    fn c_is_real_and_alpha_solves_linear_system() {
        let p = ModelParams::new(1.0, Complex::new(0.0, 0.1), Complex::new(0.2, 0.1), Complex::new(0.0, 0.0));
        let v = p.validate().unwrap();
        let (x1, x2, c) = c_by_solve(&p);
        assert!(c.im.abs() < 1e-12);
        assert!((c.re - v.derived().c).abs() < 1e-12);
        assert!((x1 - v.derived().alpha).norm() < 1e-12);
        assert!((x2 - v.derived().alpha.conj()).norm() < 1e-12);
        // A·(α, α*) = (Ω₂, Ω₂*)
        let a = v.derived().alpha;
        let r1 = a.scale(0.5) + p.omega1 * a.conj();
        assert!((r1 - p.omega2).norm() < 1e-12);
    }

    #[test]
    fn json_roundtrip_uses_pairs() {
        let p = ModelParams::new(1.0, Complex::new(0.1, -0.2), Complex::new(0.05, 0.0), Complex::new(0.5, 0.25));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"omega":1.0,"omega1":[0.1,-0.2],"omega2":[0.05,0.0],"lambda0":[0.5,0.25]}"#);
        let back: ModelParams<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let partial: ModelParams<f64> = serde_json::from_str(r#"{"omega":2.0,"omega1":[0.0,0.0]}"#).unwrap();
        assert_eq!(partial.omega2, Complex::new(0.0, 0.0));
    }

    #[test]
    fn single_precision() {
        let d = *ModelParams::<f32>::real(1.0, 0.1, 0.05).validate().unwrap().derived();
        assert!((d.phi - 0.489898).abs() < 1e-6);
        assert!((d.c - 0.008333).abs() < 1e-5);
    }
}
