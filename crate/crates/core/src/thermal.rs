//! The thermalised mode, `ρ = e^{−H/θ}/Z`.

use crate::algebra::{check_temperature, disentangle_thermal};
use crate::error::Result;
use crate::moments::{moments_from_cumulants, GaussianCumulants, MomentSet, MomentSource};
use crate::params::ValidatedParams;
use crate::scalar::Real;
use crate::squeezing::squeezing_report;

/// Quadratic-form matrix of `⟨−ζ|ρ|ζ⟩e^{|ζ|²}` in `(Re ζ, Im ζ)`:
///
/// ```text
/// M = [ e^{γ/2} − Re β    −Im β          ]
///     [ −Im β             e^{γ/2} + Re β ]
/// ```
///
/// The P-function exists as a Fourier transform only while `det M ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWitness<T> {
    pub m: [[T; 2]; 2],
    pub det: T,
    pub trace: T,
    /// `det ≥ 0`.
    pub classical: bool,
    /// `det` vanishes to rounding; classified as classical.
    pub on_boundary: bool,
}

pub fn witness_matrix<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<GaussianWitness<T>> {
    let form = disentangle_thermal(params, theta)?;
    let e = form.half_exp_gamma().re;
    let (b1, b2) = (form.beta.re, form.beta.im);
    let m = [[e - b1, -b2], [-b2, e + b1]];
    let det = (e - b1) * (e + b1) - b2 * b2;
    let scale = e * e + form.beta.norm_sqr();
    let on_boundary = det.abs() <= T::lit(64.0) * T::epsilon() * scale;
    Ok(GaussianWitness { m, det, trace: e + e, classical: det >= T::zero() || on_boundary, on_boundary })
}

/// Temperatures at which the thermal state turns non-classical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTemps<T> {
    /// Exact zero of `det M`, `φ / asinh(φ/|Ω₁|)`.
    pub theta_star: Option<T>,
    /// Leading-log estimate `ω / (2 ln(ω/|Ω₁|))`.
    pub theta_c: Option<T>,
    pub defined: bool,
}

pub fn critical_temperatures<T: Real>(params: &ValidatedParams<T>) -> CriticalTemps<T> {
    let abs1 = params.omega1().norm();
    if abs1 == T::zero() {
        return CriticalTemps { theta_star: None, theta_c: None, defined: false };
    }
    let phi = params.phi();
    let w = params.omega();
    let theta_star = phi / (phi / abs1).asinh();
    let theta_c = w / (T::lit(2.0) * (w / abs1).ln());
    CriticalTemps { theta_star: Some(theta_star), theta_c: Some(theta_c), defined: true }
}

/// Cumulants of the sourced partition function
/// `Z(ε, η) = Tr[e^{ε(a†−α*)} e^{−P/θ} e^{η(a−α)}]·e^{c/2θ}`:
///
/// ```text
/// t_η = −α,   t_ηη = −(Ω₁/2φ) coth(φ/2θ),   t_εη = ½(1 + (ω/2φ) coth(φ/2θ))
/// ```
pub type ThermalCumulants<T> = GaussianCumulants<T>;

pub fn cumulants<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<ThermalCumulants<T>> {
    check_temperature(theta)?;
    let two = T::lit(2.0);
    let phi = params.phi();
    let coth = T::one() / (phi / (two * theta)).tanh();
    let mean = -params.derived().alpha;
    let pair = -params.omega1() * (coth / (two * phi));
    let anti = (T::one() + params.omega() / (two * phi) * coth) / two;
    Ok(GaussianCumulants::from_connected(mean, pair, anti))
}

/// Ordered thermal moments up to `max_total` (at least 4 for second-order metrics).
pub fn thermal_moments<T: Real>(params: &ValidatedParams<T>, theta: T, max_total: u32) -> Result<MomentSet<T>> {
    Ok(moments_from_cumulants(&cumulants(params, theta)?, max_total, MomentSource::ClosedFormThermal))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSqueezing<T> {
    pub d1: T,
    pub d1_zhang: T,
    pub d2: T,
    pub d2_zhang: T,
}

/// First-order parameters straight from the cumulants; second order through
/// the generic moment machinery.
pub fn thermal_squeezing<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<ThermalSqueezing<T>> {
    let t = cumulants(params, theta)?;
    let half = T::lit(0.5);
    let d1 = half * (t.t_epseta - t.t_etaeta.norm() - T::one());
    let d1_zhang = half * (t.t_epseta + t.t_etaeta.re - T::one());
    let second = squeezing_report(&moments_from_cumulants(&t, 4, MomentSource::ClosedFormThermal), 2)?;
    Ok(ThermalSqueezing { d1, d1_zhang, d2: second.dk, d2_zhang: second.dk_zhang })
}

/// `D₁(θ)` alone.
pub fn d1_thermal<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<T> {
    let t = cumulants(params, theta)?;
    Ok(T::lit(0.5) * (t.t_epseta - t.t_etaeta.norm() - T::one()))
}

/// `(Δn)² − ⟨n⟩` of the thermal state.
pub fn mandel_excess<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<T> {
    let m = thermal_moments(params, theta, 4)?;
    let excess = m.mandel_excess()?;
    if params.omega1().im == T::zero() {
        // with real Ω₁ the variance excess is the θ = 0 second-order parameter
        debug_assert!({
            let z = squeezing_report(&m, 2)?.dk_zhang;
            (z - excess).abs() <= T::lit(1e-10) * (T::one() + excess.abs())
        });
    }
    Ok(excess)
}

/// Mean photon number `⟨a†a⟩ = t_εη − 1 + |α|²`.
pub fn mean_photon_number<T: Real>(params: &ValidatedParams<T>, theta: T) -> Result<T> {
    let t = cumulants(params, theta)?;
    Ok(t.t_epseta - T::one() + t.t_eta.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::roots::bisect;
    use num_complex::Complex64;

    fn p(o1: f64, o2: f64) -> ValidatedParams<f64> {
        ModelParams::real(1.0, o1, o2).validate().unwrap()
    }

    /// `e^γ (1 − |Ω₁|² sinh²(φ/θ)/φ²)` with plain hyperbolic functions.
    fn det_closed(v: &ValidatedParams<f64>, theta: f64) -> f64 {
        let phi = v.phi();
        let x = phi / theta;
        let f = x.cosh() + v.omega() / (2.0 * phi) * x.sinh();
        (1.0 / (f * f)) * (1.0 - v.omega1().norm_sqr() * x.sinh().powi(2) / (phi * phi))
    }

    #[test]
    fn witness_free_field_always_classical() {
        let v = p(0.0, 0.3);
        for &theta in &[0.01, 0.1, 1.0, 10.0] {
            let w = witness_matrix(&v, theta).unwrap();
            assert!(w.classical && w.det > 0.0);
            let e_gamma = disentangle_thermal(&v, theta).unwrap().gamma.re.exp();
            assert!((w.det - e_gamma).abs() <= 1e-14 * e_gamma);
        }
    }

    #[test]
    fn witness_sign_around_critical_temperature() {
        let v = p(0.01, 0.0);
        let hot = witness_matrix(&v, 0.2).unwrap();
        assert!(hot.det > 0.0 && hot.classical);
        let cold = witness_matrix(&v, 0.05).unwrap();
        assert!(cold.det < 0.0 && !cold.classical);
        for &theta in &[0.05, 0.1, 0.2, 1.0, 3.0] {
            let w = witness_matrix(&v, theta).unwrap();
            assert!(w.trace > 0.0);
            assert!((w.det - det_closed(&v, theta)).abs() < 1e-10);
        }
    }

    #[test]
    fn critical_values() {
        let ct = critical_temperatures(&p(0.0, 0.0));
        assert!(!ct.defined && ct.theta_star.is_none());
        let ct = critical_temperatures(&p(0.01, 0.0));
        let phi = (0.25f64 - 1e-4).sqrt();
        let star = ct.theta_star.unwrap();
        assert!((star - phi / (phi / 0.01).asinh()).abs() < 1e-15);
        assert!((star - 0.108564).abs() < 2e-5);
        assert!((ct.theta_c.unwrap() - 0.108574).abs() < 1e-6);
        let root = bisect(|t| witness_matrix(&p(0.01, 0.0), t).unwrap().det, 0.05, 0.3, 1e-14).unwrap();
        assert!((root - star).abs() < 1e-10);
        let ct = critical_temperatures(&p(0.1, 0.0));
        assert!((ct.theta_star.unwrap() - 0.24f64.sqrt() / (0.24f64.sqrt() / 0.1).asinh()).abs() < 1e-15);
        assert!((ct.theta_star.unwrap() - 0.21370).abs() < 1e-5);
    }

    #[test]
    fn cumulants_free_field() {
        let v = p(0.0, 0.0);
        let t = cumulants(&v, 0.25).unwrap();
        assert_eq!(t.t_eta, Complex64::new(0.0, 0.0));
        assert_eq!(t.t_etaeta, Complex64::new(0.0, 0.0));
        let expect = 0.5 * (1.0 + 1.0 / 1f64.tanh());
        assert!((t.t_epseta - expect).abs() < 1e-15);
        assert!((t.t_epseta - 1.156518).abs() < 1e-6);
        // ⟨aa†⟩ = n̄ + 1 for level spacing ω/2
        let nbar = 1.0 / (2f64.exp() - 1.0);
        assert!((t.t_epseta - (nbar + 1.0)).abs() < 1e-14);
    }

    #[test]
    fn cumulant_symmetry_and_monotonicity() {
        let v = ModelParams::new(1.0, Complex64::new(0.05, -0.08), Complex64::new(0.1, 0.02), Complex64::new(0.0, 0.0))
            .validate()
            .unwrap();
        let phi = v.phi();
        let floor = 0.5 * (1.0 + 0.5 / phi);
        let mut prev = floor;
        for i in 1..60 {
            let theta = 0.02 * i as f64;
            let t = cumulants(&v, theta).unwrap();
            assert_eq!(t.t_eps, t.t_eta.conj());
            assert_eq!(t.t_epseps, t.t_etaeta.conj());
            // coth(φ/2θ) grows with θ, so t_εη rises from its θ → 0 floor
            assert!(t.t_epseta >= 1.0);
            assert!(t.t_epseta >= prev);
            prev = t.t_epseta;
        }
        assert!(p(0.0, 0.1).derived().alpha.norm() > 0.0);
        let t = cumulants(&p(0.01, 0.0), 0.3).unwrap();
        assert_eq!(t.t_eta.norm(), 0.0);
    }

    #[test]
    fn squeezing_free_field() {
        let s = thermal_squeezing(&p(0.0, 0.0), 0.25).unwrap();
        let expect = 0.25 * (1.0 / 1f64.tanh() - 1.0);
        assert!((s.d1 - expect).abs() < 1e-14);
        assert!((s.d1 - 0.078259).abs() < 1e-6);
    }

    #[test]
    fn squeezing_negative_omega1_escapes_zhang() {
        let s = thermal_squeezing(&p(0.01, 0.0), 0.05).unwrap();
        assert!(s.d1 < 0.0);
        let s = thermal_squeezing(&p(-0.01, 0.0), 0.05).unwrap();
        assert!(s.d1 < 0.0);
        assert!(s.d1_zhang >= 0.0);
        assert!(s.d2 <= s.d2_zhang);
    }

    #[test]
    fn d1_formula_matches_simplified_expression() {
        let v = p(0.03, 0.0);
        for &theta in &[0.05, 0.2, 0.9] {
            let phi = v.phi();
            let expect = 0.5 * ((1.0 / (4.0 * phi) - 0.03 / (2.0 * phi)) / (phi / (2.0 * theta)).tanh() - 0.5);
            assert!((d1_thermal(&v, theta).unwrap() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn mandel_free_field() {
        let v = p(0.0, 0.0);
        let theta = 0.3;
        let nbar = 1.0 / ((0.5f64 / theta).exp() - 1.0);
        assert!((mandel_excess(&v, theta).unwrap() - nbar * nbar).abs() < 1e-13);
        assert!((mean_photon_number(&v, theta).unwrap() - nbar).abs() < 1e-13);
    }

    #[test]
    fn mandel_positive_reference_points() {
        let v = p(0.01, 0.05);
        let m = mandel_excess(&v, 0.2).unwrap();
        assert!(m > 0.0);
        let z = thermal_squeezing(&v, 0.2).unwrap().d2_zhang;
        assert!((m - z).abs() < 1e-10);
        let v = p(0.01, 0.0);
        assert!(mandel_excess(&v, 0.03).unwrap() > 0.0);
        assert!(thermal_squeezing(&v, 0.03).unwrap().d1 < 0.0);
    }

    #[test]
    fn displaced_state_turns_sub_poissonian_when_cold() {
        // a displaced, squeezed ground state is sub-Poissonian once |α|² outweighs
        // the pair correlations; the drive-free model never is
        let v = p(0.01, 0.05);
        assert!(mandel_excess(&v, 0.02).unwrap() < 0.0);
        assert!(mandel_excess(&p(0.01, 0.0), 0.02).unwrap() > 0.0);
    }

    #[test]
    fn bad_temperature() {
        let v = p(0.01, 0.0);
        assert!(witness_matrix(&v, 0.0).is_err());
        assert!(cumulants(&v, -1.0).is_err());
        assert!(thermal_squeezing(&v, f64::NAN).is_err());
        assert!(mandel_excess(&v, 0.0).is_err());
    }
}
