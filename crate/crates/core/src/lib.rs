//! Non-classical properties of a single radiation mode driven by
//!
//! ```text
//! H = ω K₃ + Ω₁ K₊ + Ω₁* K₋ + Ω₂ a† + Ω₂* a
//! ```
//!
//! in closed form: SU(1,1) disentanglement, the evolved coherent state and its
//! P-function witness, the thermal state with its classicality witness and
//! critical temperature, and k-th order squeezing from ordered moments.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`); the `*64` aliases below fix `f64`.
//!
//! ```
//! use nonclassical::{critical_temperatures, d1_unitary, thermal_squeezing, ModelParams};
//!
//! let params = ModelParams::real(1.0, 0.1, 0.05).validate()?;
//! let phi = params.phi();
//! // deepest first-order squeezing of the evolved coherent state, at φt = π/2
//! let d1 = d1_unitary(&params, std::f64::consts::FRAC_PI_2 / phi);
//! assert!((d1 + 1.0 / 12.0).abs() < 1e-12);
//!
//! // the thermal state is squeezed below θ*
//! let star = critical_temperatures(&params).theta_star.unwrap();
//! assert!(thermal_squeezing(&params, 0.9 * star)?.d1 < 0.0);
//! assert!(thermal_squeezing(&params, 1.1 * star)?.d1 > 0.0);
//! # Ok::<(), nonclassical::Error>(())
//! ```

pub mod algebra;
pub mod error;
pub mod moments;
pub mod params;
pub mod roots;
pub mod scalar;
pub mod squeezing;
pub mod thermal;
pub mod unitary;

pub use algebra::{
    disentangle_complex_time, disentangle_thermal, disentangle_unitary, disentangle_unitary_path, evolution_matrix,
    Branch, DisentangledForm, EvolutionMatrix, FormKind,
};
pub use error::{Error, Result};
pub use moments::{moments_from_cumulants, GaussianCumulants, MomentSet, MomentSource};
pub use params::{derive, validate, DerivedParams, ModelParams, ValidatedParams};
pub use scalar::Real;
pub use squeezing::{commutator_expectation, quadrature_variance, squeezing_report, SqueezingReport};
pub use thermal::{
    critical_temperatures, cumulants, d1_thermal, mandel_excess, mean_photon_number, thermal_moments,
    thermal_squeezing, witness_matrix, CriticalTemps, GaussianWitness, ThermalCumulants, ThermalSqueezing,
};
pub use unitary::{
    coherent_kernel, d1_unitary, evolved_moments, kernel_coeffs, p_function_witness_unitary, PFunctionNote,
    PFunctionVerdict, UnitaryKernelCoeffs,
};

pub use num_complex::Complex;

pub type Complex64 = num_complex::Complex<f64>;

pub type ModelParams64 = ModelParams<f64>;
pub type ValidatedParams64 = ValidatedParams<f64>;
pub type DerivedParams64 = DerivedParams<f64>;
pub type DisentangledForm64 = DisentangledForm<f64>;
pub type EvolutionMatrix64 = EvolutionMatrix<f64>;
pub type MomentSet64 = MomentSet<f64>;
pub type SqueezingReport64 = SqueezingReport<f64>;
pub type ThermalCumulants64 = ThermalCumulants<f64>;
pub type GaussianWitness64 = GaussianWitness<f64>;
pub type CriticalTemps64 = CriticalTemps<f64>;

pub type ModelParams32 = ModelParams<f32>;
pub type ValidatedParams32 = ValidatedParams<f32>;
pub type MomentSet32 = MomentSet<f32>;
