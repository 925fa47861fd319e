//! Brute-force reference for the closed forms in `nonclassical`.
//!
//! Operators live on the first `dim` Fock states. Exponentials of Hermitian
//! generators go through a dense eigendecomposition; exponentials of `K₊`, `K₋`
//! and `K₃` use their exact matrix elements. Every quantity that depends on the
//! ladder size is recomputed on a doubled ladder until it stops changing.

mod error;
mod ladder;
mod sourced;
mod state;

pub use error::{OracleError, Result};
pub use ladder::{
    annihilation, build_hamiltonian, build_su11_part, coherent_vector, exp_k_minus, exp_k_plus, exp_k_three,
    kernel_element, recompose_disentangled, Spectrum,
};
pub use sourced::{finite_difference_cumulants, sourced_log_partition, state_cumulants};
pub use state::{
    evolution_operator_blocks, evolve_coherent, su11_evolution_blocks, su11_thermal_blocks, thermal_state, StateKind,
    TruncatedState,
};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Ladder-size escalation policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    pub n_start: usize,
    pub n_max: usize,
    pub rel_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self { n_start: 32, n_max: 512, rel_tol: 1e-8 }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_start < 4 || self.n_start > self.n_max {
            return Err(OracleError::InvalidTruncation(format!(
                "need 4 <= n_start <= n_max, got n_start = {}, n_max = {}",
                self.n_start, self.n_max
            )));
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return Err(OracleError::InvalidTruncation(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        Ok(())
    }

    /// Ladder sizes tried in order: `n_start`, doubled until `n_max`, then `n_max`.
    pub(crate) fn ladder(&self, floor: usize) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut d = self.n_start.max(floor);
        while d < self.n_max {
            dims.push(d);
            d *= 2;
        }
        dims.push(self.n_max.max(floor));
        dims.dedup();
        dims
    }
}

/// Largest entrywise deviation between two matrices over the leading
/// `rows × cols` block.
pub fn max_abs_deviation(a: &CMatrix, b: &CMatrix, rows: usize, cols: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..rows {
        for j in 0..cols {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

/// [`max_abs_deviation`] divided by the largest entry of `b` in the same block.
pub fn max_rel_deviation(a: &CMatrix, b: &CMatrix, rows: usize, cols: usize) -> f64 {
    let mut scale = 0.0f64;
    for i in 0..rows {
        for j in 0..cols {
            scale = scale.max(b[(i, j)].norm());
        }
    }
    max_abs_deviation(a, b, rows, cols) / scale
}
