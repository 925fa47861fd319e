//! SU(1,1) group elements generated by `P = ω K₃ + Ω₁ K₊ + Ω₁* K₋`.
//!
//! The adjoint action of `e^{−iPt}` on `(a, a†)` is the 2×2 matrix
//! [`EvolutionMatrix`]; the ordered factorisation
//! `e^{−iPt} = e^{βK₊} e^{γK₃} e^{δK₋}` is a [`DisentangledForm`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::params::ValidatedParams;
use crate::scalar::{c, csinc, re, sinc, Real};

/// `e^{−itP̃}` acting on `(a, a†)ᵀ`:
///
/// ```text
/// [ f   g  ]
/// [ g*  f* ]      f = cos φt + i(ω/2φ) sin φt,  g = i(Ω₁/φ) sin φt
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMatrix<T> {
    pub entries: [[Complex<T>; 2]; 2],
}

impl<T: Real> EvolutionMatrix<T> {
    #[inline]
    pub fn f(&self) -> Complex<T> {
        self.entries[0][0]
    }

    #[inline]
    pub fn g(&self) -> Complex<T> {
        self.entries[0][1]
    }

    pub fn det(&self) -> Complex<T> {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `|f|² − |g|²`, equal to one for every t.
    pub fn bogoliubov_norm(&self) -> T {
        self.f().norm_sqr() - self.g().norm_sqr()
    }
}

pub fn evolution_matrix<T: Real>(params: &ValidatedParams<T>, t: T) -> EvolutionMatrix<T> {
    let phi = params.phi();
    let x = phi * t;
    // sin(φt)/φ written as t·sinc(φt)
    let s = t * sinc(x);
    let cos = x.cos();
    let half = params.omega() / T::lit(2.0);
    let f = c(cos, half * s);
    let g = params.omega1() * c(T::zero(), s);
    EvolutionMatrix { entries: [[f, g], [g.conj(), f.conj()]] }
}

/// Which parameter the disentangled form was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormKind<T> {
    /// Real time, `e^{−iPt}`.
    Unitary(T),
    /// Temperature θ, `e^{−P/θ}`.
    Thermal(T),
    /// Arbitrary complex time, `e^{−iPt}` continued off the real axis.
    ComplexTime(Complex<T>),
}

/// Coefficients of `e^{βK₊} e^{γK₃} e^{δK₋}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisentangledForm<T> {
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
    pub delta: Complex<T>,
    pub kind: FormKind<T>,
}

impl<T: Real> DisentangledForm<T> {
    pub fn identity(kind: FormKind<T>) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { beta: z, gamma: z, delta: z, kind }
    }

    /// `e^{γ/2}`; independent of the logarithm branch.
    #[inline]
    pub fn half_exp_gamma(&self) -> Complex<T> {
        (self.gamma / T::lit(2.0)).exp()
    }

    /// `e^{γ/4}`, the vacuum-to-vacuum factor of `e^{γK₃}`. Its sign depends on
    /// the branch of γ.
    #[inline]
    pub fn quarter_exp_gamma(&self) -> Complex<T> {
        (self.gamma / T::lit(4.0)).exp()
    }

    /// Adjoint action `V (a, a†)ᵀ V⁻¹` of the factorised element:
    ///
    /// ```text
    /// V a  V⁻¹ = e^{−γ/2} a − β e^{−γ/2} a†
    /// V a† V⁻¹ = δ e^{−γ/2} a + (e^{γ/2} − βδ e^{−γ/2}) a†
    /// ```
    ///
    /// For a unitary form this is the [`EvolutionMatrix`] at the same time.
    pub fn transfer_matrix(&self) -> [[Complex<T>; 2]; 2] {
        let e = self.half_exp_gamma();
        let ei = e.inv();
        [[ei, -self.beta * ei], [self.delta * ei, e - self.beta * self.delta * ei]]
    }
}

/// How the logarithm in `γ = −2 ln f` is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// `ln` with argument in (−π, π].
    #[default]
    Principal,
    /// Argument continued from `arg f(0) = 0`, i.e. the branch that makes
    /// `e^{βK₊}e^{γK₃}e^{δK₋}` equal `e^{−iPt}` including its sign.
    Continuous,
}

fn unitary_core<T: Real>(params: &ValidatedParams<T>, t: T) -> (Complex<T>, Complex<T>, Complex<T>, T) {
    let phi = params.phi();
    let x = phi * t;
    let s = t * sinc(x);
    let half = params.omega() / T::lit(2.0);
    // f = cos φt + i(ω/2) sin(φt)/φ ; β = −iΩ₁ (sin φt/φ) / f
    let f = c(x.cos(), half * s);
    let num = c(T::zero(), -s);
    let beta = params.omega1() * num / f;
    let delta = params.omega1().conj() * num / f;
    (f, beta, delta, x)
}

/// Wei–Norman coefficients of `e^{−iPt}` at real time `t`.
pub fn disentangle_unitary<T: Real>(params: &ValidatedParams<T>, t: T, branch: Branch) -> DisentangledForm<T> {
    let (f, beta, delta, x) = unitary_core(params, t);
    let mut arg = f.arg();
    if branch == Branch::Continuous {
        arg = continue_arg(arg, x);
    }
    let gamma = c(f.norm().ln(), arg) * T::lit(-2.0);
    DisentangledForm { beta, gamma, delta, kind: FormKind::Unitary(t) }
}

/// `arg f` moves through the same quadrant as `φt`, so the continuous argument
/// is the representative of `arg` closest to `φt`.
fn continue_arg<T: Real>(arg: T, x: T) -> T {
    let two_pi = T::TAU();
    arg + two_pi * ((x - arg) / two_pi).round()
}

/// Disentangles along a time grid, unwrapping `arg f` between successive points
/// so that γ is continuous in t. The grid must start at a point where the
/// principal branch is correct (|φt| < π) and sample each half period at least
/// twice.
pub fn disentangle_unitary_path<T: Real>(params: &ValidatedParams<T>, times: &[T]) -> Vec<DisentangledForm<T>> {
    let two_pi = T::TAU();
    let mut prev: Option<T> = None;
    times
        .iter()
        .map(|&t| {
            let (f, beta, delta, _) = unitary_core(params, t);
            let mut arg = f.arg();
            if let Some(p) = prev {
                arg = arg + two_pi * ((p - arg) / two_pi).round();
            }
            prev = Some(arg);
            let gamma = c(f.norm().ln(), arg) * T::lit(-2.0);
            DisentangledForm { beta, gamma, delta, kind: FormKind::Unitary(t) }
        })
        .collect()
}

/// The unitary coefficients at complex time, principal branch. At `t = −i/θ` this
/// reproduces [`disentangle_thermal`] while no exponential overflows.
pub fn disentangle_complex_time<T: Real>(params: &ValidatedParams<T>, t: Complex<T>) -> DisentangledForm<T> {
    let z = t.scale(params.phi());
    let s = t * csinc(z);
    let half = params.omega() / T::lit(2.0);
    let f = z.cos() + c(T::zero(), half) * s;
    let num = s * c(T::zero(), -T::one());
    let beta = params.omega1() * num / f;
    let delta = params.omega1().conj() * num / f;
    let gamma = f.ln() * T::lit(-2.0);
    DisentangledForm { beta, gamma, delta, kind: FormKind::ComplexTime(t) }
}

pub(crate) fn check_temperature<T: Real>(theta: T) -> Result<()> {
    if theta > T::zero() && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature { theta: theta.as_f64() })
    }
}

/// Wei–Norman coefficients of `e^{−P/θ}`.
///
/// Evaluated with `e^{φ/θ}` factored out:
///
/// ```text
/// β = −Ω₁ / (φ coth(φ/θ) + ω/2),   δ = β*
/// γ = −2 [ φ/θ + ln( (1 + e^{−2φ/θ})/2 + (ω/2φ)(1 − e^{−2φ/θ})/2 ) ]
/// ```
pub fn disentangle_thermal<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<DisentangledForm<T>> {
    check_temperature(theta)?;
    let two = T::lit(2.0);
    let phi = params.phi();
    let half = params.omega() / two;
    let x = phi / theta;
    let beta = -params.omega1() / (phi / x.tanh() + half);
    let e = (-two * x).exp();
    // (1 − e^{−2x})/2 via expm1 to keep precision at high temperature
    let sinh_part = -(-two * x).exp_m1() / two;
    let cosh_part = (T::one() + e) / two;
    let gamma = -two * (x + (cosh_part + half / phi * sinh_part).ln());
    Ok(DisentangledForm { beta, gamma: re(gamma), delta: beta.conj(), kind: FormKind::Thermal(theta) })
}
