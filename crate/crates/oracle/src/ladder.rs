use nalgebra::{DMatrix, DVector, SymmetricEigen};
use nonclassical::{DisentangledForm64, ValidatedParams64};
use num_complex::Complex64;

use crate::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncated annihilation operator, `a|n⟩ = √n |n−1⟩`.
pub fn annihilation(dim: usize) -> CMatrix {
    let mut a = DMatrix::from_element(dim, dim, ZERO);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// `(ω/2)(a†a + ½) + (Ω₁/2)a†² + (Ω₁*/2)a² + Ω₂a† + Ω₂*a`, written entry by entry.
pub fn build_hamiltonian(params: &ValidatedParams64, dim: usize) -> CMatrix {
    assert!(dim >= 4, "ladder needs at least 4 levels");
    let mut h = build_su11_part(params, dim);
    let o2 = params.omega2();
    for n in 0..dim - 1 {
        let s = ((n + 1) as f64).sqrt();
        // ⟨n+1|a†|n⟩ = √(n+1)
        h[(n + 1, n)] += o2 * s;
        h[(n, n + 1)] += o2.conj() * s;
    }
    h
}

/// `P = ω K₃ + Ω₁ K₊ + Ω₁* K₋`.
pub fn build_su11_part(params: &ValidatedParams64, dim: usize) -> CMatrix {
    assert!(dim >= 4, "ladder needs at least 4 levels");
    let w = params.omega();
    let o1 = params.omega1();
    let mut h = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        h[(n, n)] = Complex64::new(0.5 * w * (n as f64 + 0.5), 0.0);
        if n + 2 < dim {
            // ⟨n+2|a†²|n⟩ = √((n+1)(n+2))
            let s = (((n + 1) * (n + 2)) as f64).sqrt();
            h[(n + 2, n)] = o1 * (0.5 * s);
            h[(n, n + 2)] = o1.conj() * (0.5 * s);
        }
    }
    h
}

/// Eigendecomposition of a Hermitian ladder operator.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn of(h: &CMatrix) -> Self {
        let eig = SymmetricEigen::new(h.clone());
        // ascending order so that index 0 is the ground state
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
        let vectors = eig.eigenvectors.select_columns(&order);
        Self { values, vectors }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(E)) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (k, &e) in self.values.iter().enumerate() {
            let w = f(e);
            for z in scaled.column_mut(k).iter_mut() {
                *z *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// `e^{−iHt}`.
    pub fn exp_time(&self, t: f64) -> CMatrix {
        self.apply(|e| Complex64::from_polar(1.0, -e * t))
    }

    /// `e^{−H/θ}`.
    pub fn exp_thermal(&self, theta: f64) -> CMatrix {
        self.apply(|e| Complex64::new((-e / theta).exp(), 0.0))
    }
}

/// Coherent state `|λ⟩` on the ladder, from `cₙ₊₁ = cₙ λ/√(n+1)`.
pub fn coherent_vector(lambda: Complex64, dim: usize) -> DVector<Complex64> {
    let mut v = DVector::from_element(dim, ZERO);
    let mut c = Complex64::new((-0.5 * lambda.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        v[n] = c;
        c = c * lambda / ((n + 1) as f64).sqrt();
    }
    v
}

/// `e^{βK₊}`: `⟨n+2k|·|n⟩ = (β/2)ᵏ/k! √((n+2k)!/n!)`. Exact on the ladder because
/// `K₊` only raises.
pub fn exp_k_plus(beta: Complex64, dim: usize) -> CMatrix {
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for n in 0..dim {
        let mut entry = Complex64::new(1.0, 0.0);
        let mut k = 0usize;
        loop {
            let row = n + 2 * k;
            if row >= dim {
                break;
            }
            m[(row, n)] = entry;
            k += 1;
            let grow = (((n + 2 * k - 1) * (n + 2 * k)) as f64).sqrt();
            entry = entry * beta * 0.5 * grow / k as f64;
        }
    }
    m
}

/// `e^{δK₋}`, the transpose pattern of [`exp_k_plus`].
pub fn exp_k_minus(delta: Complex64, dim: usize) -> CMatrix {
    exp_k_plus(delta, dim).transpose()
}

/// `e^{γK₃} = diag(e^{γ(n+½)/2})`.
pub fn exp_k_three(gamma: Complex64, dim: usize) -> CMatrix {
    DMatrix::from_fn(dim, dim, |i, j| if i == j { (gamma * 0.5 * (i as f64 + 0.5)).exp() } else { ZERO })
}

/// `e^{βK₊} e^{γK₃} e^{δK₋}` on a `dim`-level ladder.
pub fn recompose_disentangled(form: &DisentangledForm64, dim: usize) -> CMatrix {
    let mut left = exp_k_plus(form.beta, dim);
    // right-multiplying by a diagonal scales columns
    for j in 0..dim {
        let d = (form.gamma * 0.5 * (j as f64 + 0.5)).exp();
        for z in left.column_mut(j).iter_mut() {
            *z *= d;
        }
    }
    left * exp_k_minus(form.delta, dim)
}

/// `⟨χ|U|ζ⟩` from Fock amplitudes of the two coherent states.
pub fn kernel_element(u: &CMatrix, chi: Complex64, zeta: Complex64) -> Complex64 {
    let dim = u.nrows();
    let cv = coherent_vector(chi, dim);
    let zv = coherent_vector(zeta, dim);
    (cv.adjoint() * u * zv)[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use nonclassical::{FormKind, ModelParams};

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_spectrum_is_ladder() {
        let v = ModelParams::real(1.0, 0.0, 0.0).validate().unwrap();
        let s = Spectrum::of(&build_hamiltonian(&v, 12));
        for n in 0..12 {
            assert!((s.values[n] - 0.5 * (n as f64 + 0.5)).abs() < 1e-13);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let v = ModelParams::new(1.0, z(0.1, -0.2), z(0.3, 0.05), z(0.0, 0.0)).validate().unwrap();
        let h = build_hamiltonian(&v, 20);
        assert_eq!((&h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max), 0.0);
    }

    #[test]
    fn spectrum_is_shifted_su11_ladder() {
        let v = ModelParams::real(1.0, 0.1, 0.05).validate().unwrap();
        let s = Spectrum::of(&build_hamiltonian(&v, 80));
        let (phi, shift) = (v.phi(), v.derived().energy_shift());
        for n in 0..30 {
            let expect = phi * (n as f64 + 0.5) - shift;
            assert!((s.values[n] - expect).abs() < 1e-8, "level {n}: {} vs {}", s.values[n], expect);
        }
        assert!((0.4898979 * 0.5 - 0.0083333 / 2.0 - s.values[0]).abs() < 1e-6);
    }

    #[test]
    fn operator_matrices() {
        let a = annihilation(6);
        let n = a.adjoint() * &a;
        for k in 0..6 {
            assert!((n[(k, k)].re - k as f64).abs() < 1e-14);
        }
        let c = coherent_vector(z(0.5, 0.0), 40);
        assert!((c.norm() - 1.0).abs() < 1e-14);
        let mean = (c.adjoint() * &annihilation(40) * &c)[(0, 0)];
        assert!((mean - z(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_form_is_identity() {
        let form = DisentangledForm64::identity(FormKind::Unitary(0.0));
        let r = recompose_disentangled(&form, 10);
        assert!((r - CMatrix::identity(10, 10)).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn exp_k_plus_matches_series() {
        // Σ (βK₊)ᵏ/k! with K₊ = a†²/2; nilpotent on the ladder so the sum is finite
        let dim = 14;
        let beta = z(0.3, -0.2);
        let ad = annihilation(dim).adjoint();
        let kp = &ad * &ad * Complex64::new(0.5, 0.0);
        let mut term = CMatrix::identity(dim, dim);
        let mut sum = term.clone();
        for k in 1..dim {
            term = &term * &kp * (beta / k as f64);
            sum += &term;
        }
        let closed = exp_k_plus(beta, dim);
        assert!((sum - closed).iter().all(|z| z.norm() < 1e-13));
    }

    #[test]
    fn apply_recovers_operator() {
        let v = ModelParams::new(1.0, z(0.1, -0.2), z(0.3, 0.05), z(0.0, 0.0)).validate().unwrap();
        let h = build_hamiltonian(&v, 16);
        let s = Spectrum::of(&h);
        let back = s.apply(|e| Complex64::new(e, 0.0));
        assert!((back - h).iter().all(|z| z.norm() < 1e-12));
    }
}
