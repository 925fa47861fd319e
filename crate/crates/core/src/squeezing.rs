//! k-th order amplitude squeezing from ordered moments.
//!
//! With `Xₖ(θ) = ½(aᵏ e^{−iθ} + a†ᵏ e^{iθ})` and `Cₖ = ⟨[aᵏ, a†ᵏ]⟩`,
//! `Dₖ(θ) = (ΔXₖ(θ))² − ¼|Cₖ|`. [`SqueezingReport::dk`] is the minimum over θ,
//! [`SqueezingReport::dk_zhang`] its value at θ = 0.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::moments::MomentSet;
use crate::scalar::Real;

const ZERO_COMMUTATOR: f64 = 1e-12;

/// `⟨[aᵏ, a†ᵏ]⟩ = ⟨aᵏa†ᵏ⟩ − ⟨a†ᵏaᵏ⟩`.
pub fn commutator_expectation<T: Real>(m: &MomentSet<T>, k: u32) -> Result<T> {
    Ok(m.get(k, k)?.re - m.normal_diagonal(k)?)
}

/// Second-order pieces of `Xₖ` shared by the variance and the report.
#[derive(Debug, Clone, Copy, PartialEq)]
struct QuadratureParts<T> {
    mean: Complex<T>,
    /// `(Δaᵏ)² = ⟨a^{2k}⟩ − ⟨aᵏ⟩²`
    spread: Complex<T>,
    anti: T,
    normal: T,
}

impl<T: Real> QuadratureParts<T> {
    fn new(m: &MomentSet<T>, k: u32) -> Result<Self> {
        let mean = m.get(k, 0)?;
        let spread = m.get(2 * k, 0)? - mean * mean;
        Ok(Self { mean, spread, anti: m.get(k, k)?.re, normal: m.normal_diagonal(k)? })
    }

    fn variance(&self, theta: T) -> T {
        let rot = Complex::from_polar(T::one(), T::lit(-2.0) * theta);
        let two = T::lit(2.0);
        (two * (self.spread * rot).re + self.anti + self.normal - two * self.mean.norm_sqr()) / T::lit(4.0)
    }
}

/// `(ΔXₖ(θ))²`.
pub fn quadrature_variance<T: Real>(m: &MomentSet<T>, k: u32, theta_phase: T) -> Result<T> {
    Ok(QuadratureParts::new(m, k)?.variance(theta_phase))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingReport<T> {
    pub k: u32,
    /// Phase-minimised squeezing parameter; negative means squeezed.
    pub dk: T,
    /// The same quantity at θ = 0.
    pub dk_zhang: T,
    /// Quadrature phase in [0, π) at which `Dₖ(θ) = dk`.
    pub dk_theta_min_phase: T,
    pub commutator_expect: T,
    parts: QuadratureParts<T>,
}

impl<T: Real> SqueezingReport<T> {
    pub fn variance_at(&self, theta_phase: T) -> T {
        self.parts.variance(theta_phase)
    }

    /// `Dₖ(θ) = (ΔXₖ(θ))² − ¼|Cₖ|`.
    pub fn dk_at(&self, theta_phase: T) -> T {
        self.variance_at(theta_phase) - self.commutator_expect.abs() / T::lit(4.0)
    }

    /// `|(Δaᵏ)²|`.
    pub fn spread_abs(&self) -> T {
        self.parts.spread.norm()
    }

    pub fn is_squeezed(&self) -> bool {
        self.dk < T::zero()
    }
}

pub fn squeezing_report<T: Real>(m: &MomentSet<T>, k: u32) -> Result<SqueezingReport<T>> {
    let parts = QuadratureParts::new(m, k)?;
    let comm = parts.anti - parts.normal;
    if comm.abs() < T::lit(ZERO_COMMUTATOR) {
        return Err(Error::ZeroCommutatorExpectation { k, value: comm.as_f64() });
    }
    // ⟨aᵏa†ᵏ⟩ + ⟨a†ᵏaᵏ⟩ − |Cₖ| keeps the smaller of the two orderings
    let base = if comm > T::zero() { parts.normal } else { parts.anti };
    let half = T::lit(0.5);
    let connected = base - parts.mean.norm_sqr();
    let dk = half * (connected - parts.spread.norm());
    let dk_zhang = half * (connected + parts.spread.re);
    let pi = T::PI();
    let mut theta_min = (parts.spread.arg() - pi) * half;
    theta_min = theta_min - pi * (theta_min / pi).floor();
    Ok(SqueezingReport { k, dk, dk_zhang, dk_theta_min_phase: theta_min, commutator_expect: comm, parts })
}
