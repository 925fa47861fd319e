use nonclassical::{ThermalCumulants64, ValidatedParams64};
use num_complex::Complex64;

use crate::error::Result;
use crate::state::{thermal_state, TruncatedState};
use crate::{CMatrix, TruncationConfig};

/// `e^{ηa}` on the ladder, from its exact (upper-triangular) elements.
fn exp_lowering(eta: Complex64, dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        // ⟨j−s| e^{ηa} |j⟩ = ηˢ/s! · √(j!/(j−s)!)
        let mut coeff = Complex64::new(1.0, 0.0);
        for s in 0..=j {
            m[(j - s, j)] = coeff;
            coeff *= eta * ((j - s) as f64).sqrt() / (s + 1) as f64;
        }
    }
    m
}

/// `ln Tr[ρ e^{ηa} e^{εa†}]`, the generating function of the antinormally
/// ordered cumulants of `state`.
pub fn sourced_log_partition(state: &TruncatedState, eps: Complex64, eta: Complex64) -> Complex64 {
    let up = exp_lowering(eps, state.dim).transpose();
    let down = exp_lowering(eta, state.dim);
    // Tr[(ρ e^{ηa}) e^{εa†}] without forming the second product
    let left = &state.rho * down;
    left.component_mul(&up.transpose()).sum().ln()
}

/// Thermal cumulants by central differences of [`sourced_log_partition`]
/// with step `h`.
pub fn finite_difference_cumulants(
    params: &ValidatedParams64,
    theta: f64,
    h: f64,
    cfg: &TruncationConfig,
) -> Result<ThermalCumulants64> {
    Ok(state_cumulants(&thermal_state(params, theta, cfg)?, h))
}

/// Cumulants of any truncated state by central differences with step `h`.
pub fn state_cumulants(state: &TruncatedState, h: f64) -> ThermalCumulants64 {
    let f = |e: f64, n: f64| sourced_log_partition(state, Complex64::new(e, 0.0), Complex64::new(n, 0.0));
    let f0 = f(0.0, 0.0);
    let (fe_p, fe_m) = (f(h, 0.0), f(-h, 0.0));
    let (fn_p, fn_m) = (f(0.0, h), f(0.0, -h));
    let mixed = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    ThermalCumulants64 {
        t_eta: (fn_p - fn_m) / (2.0 * h),
        t_eps: (fe_p - fe_m) / (2.0 * h),
        t_etaeta: (fn_p - 2.0 * f0 + fn_m) / (h * h),
        t_epseps: (fe_p - 2.0 * f0 + fe_m) / (h * h),
        t_epseta: mixed.re,
    }
}
