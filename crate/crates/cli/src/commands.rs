use nonclassical::roots::bisect;
use nonclassical::{
    coherent_kernel, critical_temperatures, d1_unitary, disentangle_thermal, disentangle_unitary, evolved_moments,
    mandel_excess, mean_photon_number, p_function_witness_unitary, squeezing_report, thermal_moments,
    thermal_squeezing, witness_matrix, Branch, MomentSet64, ValidatedParams64,
};
use nonclassical_oracle::{
    evolution_operator_blocks, evolve_coherent, kernel_element, max_abs_deviation, max_rel_deviation,
    recompose_disentangled, su11_evolution_blocks, su11_thermal_blocks, thermal_state, TruncationConfig,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SweepKind};
use crate::format::{csv, flag, sci};
use crate::Result;

const EVOLVE_COLUMNS: [&str; 4] = ["beta_re", "beta_im", "D1", "nonclassical"];
const EVOLVE_ORACLE_COLUMNS: [&str; 2] = ["D1_oracle", "D2_oracle"];
const THERMAL_COLUMNS: [&str; 8] = ["detM", "classical", "D1", "D1_zhang", "D2", "D2_zhang", "mandel_excess", "n_mean"];

/// Picks `cols` out of a row keyed by column name.
fn select(cols: &[&str], named: &[(&str, String)]) -> Vec<String> {
    cols.iter().map(|c| named.iter().find(|(n, _)| n == c).expect("known column").1.clone()).collect()
}

/// Time sweep of the evolved coherent state as CSV.
pub fn evolve(cfg: &RunConfig, with_oracle: bool) -> Result<String> {
    let params = cfg.validated_params()?;
    let sweep = cfg.sweep_for(SweepKind::Time)?;
    let trunc = cfg.truncation()?;
    let mut available: Vec<&str> = EVOLVE_COLUMNS.to_vec();
    if with_oracle {
        available.extend(EVOLVE_ORACLE_COLUMNS);
    }
    let cols = cfg.columns("t", &available)?;
    let rows = sweep
        .grid()
        .par_iter()
        .map(|&t| {
            let verdict = p_function_witness_unitary(&params, t);
            let mut named = vec![
                ("t", sci(t)),
                ("beta_re", sci(verdict.beta_at_t.re)),
                ("beta_im", sci(verdict.beta_at_t.im)),
                ("D1", sci(d1_unitary(&params, t))),
                ("nonclassical", flag(verdict.nonclassical).to_string()),
            ];
            if with_oracle {
                let m = evolve_coherent(&params, t, &trunc)?.moments(4)?;
                named.push(("D1_oracle", sci(squeezing_report(&m, 1)?.dk)));
                named.push(("D2_oracle", sci(squeezing_report(&m, 2)?.dk)));
            }
            Ok(select(&cols, &named))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(csv(&cols, &rows))
}

/// Temperature sweep of the thermal state as CSV.
pub fn thermal(cfg: &RunConfig) -> Result<String> {
    let params = cfg.validated_params()?;
    let sweep = cfg.sweep_for(SweepKind::Temperature)?;
    let cols = cfg.columns("theta", &THERMAL_COLUMNS)?;
    let rows = sweep
        .grid()
        .par_iter()
        .map(|&theta| {
            let w = witness_matrix(&params, theta)?;
            let sq = thermal_squeezing(&params, theta)?;
            let named = [
                ("theta", sci(theta)),
                ("detM", sci(w.det)),
                ("classical", flag(w.classical).to_string()),
                ("D1", sci(sq.d1)),
                ("D1_zhang", sci(sq.d1_zhang)),
                ("D2", sci(sq.d2)),
                ("D2_zhang", sci(sq.d2_zhang)),
                ("mandel_excess", sci(mandel_excess(&params, theta)?)),
                ("n_mean", sci(mean_photon_number(&params, theta)?)),
            ];
            Ok(select(&cols, &named))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(csv(&cols, &rows))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalReport {
    pub theta_star: Option<f64>,
    pub theta_c: Option<f64>,
    pub defined: bool,
    /// Zero of `det M(θ)` found by bisection, independent of the closed form.
    pub theta_star_bisection: Option<f64>,
    /// `|theta_star_bisection − theta_star|`.
    pub bisection_residual: Option<f64>,
}

pub fn critical(cfg: &RunConfig) -> Result<CriticalReport> {
    let params = cfg.validated_params()?;
    let temps = critical_temperatures(&params);
    let bisection = match temps.theta_star {
        Some(star) => bisect(
            |th: f64| witness_matrix(&params, th).map(|w| w.det).unwrap_or(f64::NAN),
            0.25 * star,
            4.0 * star,
            1e-14 * star,
        ),
        None => None,
    };
    Ok(CriticalReport {
        theta_star: temps.theta_star,
        theta_c: temps.theta_c,
        defined: temps.defined,
        theta_star_bisection: bisection,
        bisection_residual: bisection.zip(temps.theta_star).map(|(b, s)| (b - s).abs()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub t: f64,
    pub theta: f64,
    pub checks: Vec<VerifyCheck>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("verify at t = {}, theta = {}\n", sci(self.t), sci(self.theta));
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            out.push_str(&format!("{:<24} {} (tol {}) {status}\n", c.name, sci(c.max_deviation), sci(c.tolerance)));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "verification failed\n" });
        out
    }
}

pub const VERIFY_TOLERANCE: f64 = 1e-6;
const RECOMPOSE_BLOCK: usize = 40;
const THERMAL_BLOCK: usize = 60;
const KERNEL_BLOCK: usize = 60;

fn moment_deviation(closed: &MomentSet64, oracle: &MomentSet64) -> f64 {
    closed
        .iter()
        .map(|((n, m), v)| {
            let o = oracle.get(n, m).expect("same order");
            (v - o).norm() / o.norm().max(1.0)
        })
        .fold(0.0, f64::max)
}

/// Largest closed-form vs oracle difference in `Dₖ`, k ∈ {1, 2}.
fn squeezing_deviation(closed: &MomentSet64, oracle: &MomentSet64) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in [1, 2] {
        let (a, b) = (squeezing_report(closed, k)?, squeezing_report(oracle, k)?);
        worst = worst.max((a.dk - b.dk).abs()).max((a.dk_zhang - b.dk_zhang).abs());
    }
    Ok(worst)
}

/// Runs every closed-form/oracle cross-check at time `t` and temperature `theta`.
pub fn verify(cfg: &RunConfig, t: f64, theta: f64) -> Result<VerifyReport> {
    let params = cfg.validated_params()?;
    let trunc = cfg.truncation()?;
    if !t.is_finite() {
        return Err(crate::CliError::ConfigInvalid(format!("time must be finite, got {t}")));
    }
    let checks = run_checks(&params, t, theta, &trunc)?;
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { t, theta, checks, passed })
}

fn run_checks(params: &ValidatedParams64, t: f64, theta: f64, trunc: &TruncationConfig) -> Result<Vec<VerifyCheck>> {
    let mut out = Vec::new();
    let mut push = |name, dev: f64| {
        out.push(VerifyCheck { name, max_deviation: dev, tolerance: VERIFY_TOLERANCE, passed: dev < VERIFY_TOLERANCE })
    };

    let exact = &su11_evolution_blocks(params, &[t], RECOMPOSE_BLOCK, trunc)?[0];
    let rec = recompose_disentangled(&disentangle_unitary(params, t, Branch::Continuous), RECOMPOSE_BLOCK);
    push("recompose_unitary", max_abs_deviation(&rec, exact, 30, 30));

    let form = disentangle_thermal(params, theta)?;
    let exact = &su11_thermal_blocks(params, &[theta], THERMAL_BLOCK, trunc)?[0];
    push("recompose_thermal", max_rel_deviation(&recompose_disentangled(&form, THERMAL_BLOCK), exact, 40, 40));

    let u = &evolution_operator_blocks(params, &[t], KERNEL_BLOCK, trunc)?[0];
    let points = [(Complex64::new(0.3, -0.2), Complex64::new(0.0, 0.5)), (params.lambda0(), params.lambda0())];
    let kernel_dev = points
        .iter()
        .map(|&(chi, zeta)| (coherent_kernel(params, chi, zeta, t) - kernel_element(u, chi, zeta)).norm())
        .fold(0.0, f64::max);
    push("kernel", kernel_dev);

    let unitary_oracle = evolve_coherent(params, t, trunc)?.moments(4)?;
    let unitary_closed = evolved_moments(params, t, 4);
    push("moments_unitary", moment_deviation(&unitary_closed, &unitary_oracle));

    let thermal_oracle = thermal_state(params, theta, trunc)?.moments(4)?;
    let thermal_closed = thermal_moments(params, theta, 4)?;
    push("moments_thermal", moment_deviation(&thermal_closed, &thermal_oracle));

    push("squeezing_unitary", squeezing_deviation(&unitary_closed, &unitary_oracle)?);
    push("squeezing_thermal", squeezing_deviation(&thermal_closed, &thermal_oracle)?);
    Ok(out)
}
