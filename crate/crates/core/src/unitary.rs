//! Short-time evolution of a coherent state, `U(t) = e^{−iHt}`.

use num_complex::Complex;

use crate::algebra::{disentangle_unitary, evolution_matrix, Branch};
use crate::moments::{moments_from_cumulants, GaussianCumulants, MomentSet, MomentSource};
use crate::params::ValidatedParams;
use crate::scalar::{c, Real};

/// Coefficients of the coherent-state kernel `⟨χ|U(t)|ζ⟩`.
///
/// ```text
/// p = 2(e^{γ/2} − 1)α + 2βα*
/// q = 2(e^{γ/2} − 1)α* + 2δα
/// r = βα*² + δα² + 2(e^{γ/2} − 1)|α|²
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryKernelCoeffs<T> {
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
    pub delta: Complex<T>,
    pub p: Complex<T>,
    pub q: Complex<T>,
    pub r: Complex<T>,
    /// Rate of the global phase `e^{i·phase_rate·t}`.
    pub phase_rate: T,
    pub t: T,
}

pub fn kernel_coeffs<T: Real>(params: &ValidatedParams<T>, t: T) -> UnitaryKernelCoeffs<T> {
    let form = disentangle_unitary(params, t, Branch::Continuous);
    let alpha = params.derived().alpha;
    let two = T::lit(2.0);
    let em1 = form.half_exp_gamma() - T::one();
    let p = (em1 * alpha + form.beta * alpha.conj()) * two;
    let q = (em1 * alpha.conj() + form.delta * alpha) * two;
    let r = form.beta * alpha.conj() * alpha.conj() + form.delta * alpha * alpha + em1 * alpha.norm_sqr() * two;
    UnitaryKernelCoeffs {
        beta: form.beta,
        gamma: form.gamma,
        delta: form.delta,
        p,
        q,
        r,
        phase_rate: params.derived().energy_shift(),
        t,
    }
}

impl<T: Real> UnitaryKernelCoeffs<T> {
    /// `⟨χ|U(t)|ζ⟩` for coherent states `|χ⟩`, `|ζ⟩`.
    pub fn kernel(&self, chi: Complex<T>, zeta: Complex<T>) -> Complex<T> {
        let half = T::lit(0.5);
        let two = T::lit(2.0);
        let cs = chi.conj();
        let e = (self.gamma * half).exp();
        let quad =
            self.beta * cs * cs + self.delta * zeta * zeta + e * cs * zeta * two + self.p * cs + self.q * zeta + self.r;
        let overlap = -(chi.norm_sqr() + zeta.norm_sqr()) * half;
        let phase = c(T::zero(), self.phase_rate * self.t);
        (self.gamma / T::lit(4.0) + phase + quad * half + overlap).exp()
    }
}

/// `⟨χ|U(t)|ζ⟩`, global phase included. The sign of `e^{γ/4}` follows the
/// continuous branch, so the kernel is the matrix element of `e^{−iHt}` itself
/// at every t.
pub fn coherent_kernel<T: Real>(params: &ValidatedParams<T>, chi: Complex<T>, zeta: Complex<T>, t: T) -> Complex<T> {
    kernel_coeffs(params, t).kernel(chi, zeta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PFunctionNote {
    /// `β = 0`: the evolved state is coherent and its P-function is a delta function.
    DeltaFunction,
    /// `β ≠ 0`: the Fourier integrand is a Gaussian with quadratic-form
    /// eigenvalues `±|β|`, so the integral diverges.
    DivergentGaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PFunctionVerdict<T> {
    pub beta_at_t: Complex<T>,
    pub nonclassical: bool,
    pub note: PFunctionNote,
}

impl<T: Real> PFunctionVerdict<T> {
    /// Eigenvalues of the real quadratic form `β₁(ζ₁² − ζ₂²) + 2β₂ζ₁ζ₂`.
    pub fn quadratic_form_eigenvalues(&self) -> (T, T) {
        let b = self.beta_at_t.norm();
        (-b, b)
    }
}

pub const P_FUNCTION_ZERO_TOL: f64 = 1e-12;

pub fn p_function_witness_unitary<T: Real>(params: &ValidatedParams<T>, t: T) -> PFunctionVerdict<T> {
    let beta = disentangle_unitary(params, t, Branch::Principal).beta;
    let nonclassical = beta.norm() > T::lit(P_FUNCTION_ZERO_TOL);
    let note = if nonclassical { PFunctionNote::DivergentGaussian } else { PFunctionNote::DeltaFunction };
    PFunctionVerdict { beta_at_t: beta, nonclassical, note }
}

/// First-order squeezing `D₁(t) = ½|g|(|g| − |f|)` of the evolved coherent state.
/// Independent of λ and Ω₂, never positive.
pub fn d1_unitary<T: Real>(params: &ValidatedParams<T>, t: T) -> T {
    let m = evolution_matrix(params, t);
    let (f, g) = (m.f().norm(), m.g().norm());
    T::lit(0.5) * g * (g - f)
}

/// Gaussian cumulants of `U(t)|λ⟩`. In the Heisenberg picture
/// `U†aU = f*(a + α) − g(a† + α*) − α`.
pub fn evolved_cumulants<T: Real>(params: &ValidatedParams<T>, t: T) -> GaussianCumulants<T> {
    let m = evolution_matrix(params, t);
    let (f, g) = (m.f(), m.g());
    let alpha = params.derived().alpha;
    let lam = params.lambda0();
    let mean = f.conj() * (lam + alpha) - g * (lam + alpha).conj() - alpha;
    GaussianCumulants::from_connected(mean, -f.conj() * g, f.norm_sqr())
}

/// Ordered moments of `U(t)|λ⟩` up to total order `max_total`.
pub fn evolved_moments<T: Real>(params: &ValidatedParams<T>, t: T, max_total: u32) -> MomentSet<T> {
    moments_from_cumulants(&evolved_cumulants(params, t), max_total, MomentSource::ClosedFormUnitary)
}
