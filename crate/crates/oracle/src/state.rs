use nalgebra::DVector;
use nonclassical::{MomentSet64, MomentSource, ValidatedParams64};
use num_complex::Complex64;

use crate::error::{OracleError, Result};
use crate::ladder::{build_hamiltonian, build_su11_part, coherent_vector, Spectrum};
use crate::{CMatrix, TruncationConfig};

/// Moments up to this total order decide convergence of a state.
const CONVERGENCE_ORDER: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Pure(DVector<Complex64>),
    Mixed,
}

/// Density matrix on a `dim`-level ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    pub dim: usize,
    pub rho: CMatrix,
    pub kind: StateKind,
}

impl TruncatedState {
    pub fn pure(psi: DVector<Complex64>) -> Self {
        let rho = &psi * psi.adjoint();
        Self { dim: psi.len(), rho, kind: StateKind::Pure(psi) }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.rho - self.rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        Spectrum::of(&self.rho).values[0]
    }

    /// `Tr(ρ aⁿ a†ᵐ)` with the truncated operators, requiring `n + m ≤ dim/4`.
    pub fn moment(&self, n: u32, m: u32) -> Result<Complex64> {
        if (n + m) as usize > self.dim / 4 {
            return Err(OracleError::OrderTooHighForTruncation { n, m, dim: self.dim });
        }
        let (n, m) = (n as usize, m as usize);
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..self.dim {
            // a†ᵐ|j⟩ leaves the ladder at the top, aⁿ at the bottom
            if j + m >= self.dim || j + m < n {
                continue;
            }
            let i = j + m - n;
            let up: f64 = (j + 1..=j + m).map(|x| x as f64).product();
            let down: f64 = (j + m + 1 - n..=j + m).map(|x| x as f64).product();
            sum += self.rho[(j, i)] * (up * down).sqrt();
        }
        Ok(sum)
    }

    pub fn moments(&self, max_total: u32) -> Result<MomentSet64> {
        MomentSet64::from_fn(max_total, MomentSource::Oracle, |n, m| self.moment(n, m))
    }
}

fn moment_change(a: &MomentSet64, b: &MomentSet64) -> f64 {
    a.iter()
        .map(|(k, v)| {
            let w = b.get(k.0, k.1).expect("same order");
            (v - w).norm() / v.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Builds states on growing ladders until every moment up to order 4 settles,
/// and returns the smaller of the two ladders that agree.
fn escalate_state(cfg: &TruncationConfig, mut build: impl FnMut(usize) -> TruncatedState) -> Result<TruncatedState> {
    cfg.validate()?;
    let floor = 4 * CONVERGENCE_ORDER as usize;
    let mut prev: Option<(TruncatedState, MomentSet64)> = None;
    let mut last_change = f64::INFINITY;
    for dim in cfg.ladder(floor) {
        let state = build(dim);
        let moments = state.moments(CONVERGENCE_ORDER)?;
        if let Some((ps, pm)) = prev.take() {
            last_change = moment_change(&moments, &pm);
            if last_change < cfg.rel_tol {
                // the smaller ladder is already accurate to `last_change`
                return Ok(ps);
            }
        }
        prev = Some((state, moments));
    }
    let dim = prev.map_or(cfg.n_max, |(s, _)| s.dim);
    Err(OracleError::TruncationNotConverged { dim, change: last_change })
}

/// `U(t)|λ⟩` with `U = e^{−iHt}` from the dense spectrum of H.
pub fn evolve_coherent(params: &ValidatedParams64, t: f64, cfg: &TruncationConfig) -> Result<TruncatedState> {
    escalate_state(cfg, |dim| {
        let spec = Spectrum::of(&build_hamiltonian(params, dim));
        let c = coherent_vector(params.lambda0(), dim);
        let mut coeff = spec.vectors.adjoint() * c;
        for (k, z) in coeff.iter_mut().enumerate() {
            *z *= Complex64::from_polar(1.0, -spec.values[k] * t);
        }
        TruncatedState::pure(&spec.vectors * coeff)
    })
}

/// `e^{−H/θ}/Z`, trace-normalised on the ladder.
pub fn thermal_state(params: &ValidatedParams64, theta: f64, cfg: &TruncationConfig) -> Result<TruncatedState> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(nonclassical::Error::NonPositiveTemperature { theta }.into());
    }
    escalate_state(cfg, |dim| {
        let spec = Spectrum::of(&build_hamiltonian(params, dim));
        let e0 = spec.values[0];
        let z: f64 = spec.values.iter().map(|&e| (-(e - e0) / theta).exp()).sum();
        let rho = spec.apply(|e| Complex64::new((-(e - e0) / theta).exp() / z, 0.0));
        TruncatedState { dim, rho, kind: StateKind::Mixed }
    })
}

/// Evaluates `eval` on growing ladders until the leading `block × block`
/// corner of every returned matrix settles.
fn escalate_blocks(
    cfg: &TruncationConfig,
    block: usize,
    relative: bool,
    build: impl Fn(usize) -> CMatrix,
    eval: impl Fn(&Spectrum) -> Vec<CMatrix>,
) -> Result<Vec<CMatrix>> {
    cfg.validate()?;
    let mut prev: Option<Vec<CMatrix>> = None;
    let mut last_change = f64::INFINITY;
    let mut last_dim = cfg.n_max;
    for dim in cfg.ladder(block.max(4)) {
        last_dim = dim;
        let spec = Spectrum::of(&build(dim));
        let mats: Vec<CMatrix> = eval(&spec).into_iter().map(|m| m.view((0, 0), (block, block)).into_owned()).collect();
        if let Some(p) = &prev {
            last_change = mats
                .iter()
                .zip(p)
                .map(|(a, b)| {
                    if relative {
                        crate::max_rel_deviation(a, b, block, block)
                    } else {
                        crate::max_abs_deviation(a, b, block, block)
                    }
                })
                .fold(0.0, f64::max);
            if last_change < cfg.rel_tol {
                return Ok(mats);
            }
        }
        prev = Some(mats);
    }
    Err(OracleError::TruncationNotConverged { dim: last_dim, change: last_change })
}

/// Leading `block × block` corner of `e^{−iPt}` for each time.
pub fn su11_evolution_blocks(
    params: &ValidatedParams64,
    times: &[f64],
    block: usize,
    cfg: &TruncationConfig,
) -> Result<Vec<CMatrix>> {
    escalate_blocks(
        cfg,
        block,
        false,
        |d| build_su11_part(params, d),
        |s| times.iter().map(|&t| s.exp_time(t)).collect(),
    )
}

/// Leading corner of `e^{−P/θ}` for each temperature; convergence is judged
/// relative to the largest entry.
pub fn su11_thermal_blocks(
    params: &ValidatedParams64,
    thetas: &[f64],
    block: usize,
    cfg: &TruncationConfig,
) -> Result<Vec<CMatrix>> {
    for &theta in thetas {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(nonclassical::Error::NonPositiveTemperature { theta }.into());
        }
    }
    escalate_blocks(
        cfg,
        block,
        true,
        |d| build_su11_part(params, d),
        |s| thetas.iter().map(|&th| s.exp_thermal(th)).collect(),
    )
}

/// Leading corner of the full `e^{−iHt}` for each time.
pub fn evolution_operator_blocks(
    params: &ValidatedParams64,
    times: &[f64],
    block: usize,
    cfg: &TruncationConfig,
) -> Result<Vec<CMatrix>> {
    escalate_blocks(
        cfg,
        block,
        false,
        |d| build_hamiltonian(params, d),
        |s| times.iter().map(|&t| s.exp_time(t)).collect(),
    )
}
