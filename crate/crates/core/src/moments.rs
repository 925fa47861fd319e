//! Anti-normally ordered moments `⟨aⁿ a†ᵐ⟩` and the Gaussian generating function.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

/// Where a [`MomentSet`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    ClosedFormThermal,
    ClosedFormUnitary,
    Oracle,
    /// Analytic coherent-state moments.
    Coherent,
}

/// `⟨aⁿ a†ᵐ⟩` for every `n + m ≤ max_total`, operators in exactly that order.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet<T> {
    values: BTreeMap<(u32, u32), Complex<T>>,
    max_total: u32,
    source: MomentSource,
}

impl<T: Real> MomentSet<T> {
    /// Fills every ordered pair up to total order `max_total` from `f(n, m)`.
    pub fn from_fn<E>(
        max_total: u32,
        source: MomentSource,
        mut f: impl FnMut(u32, u32) -> Result<Complex<T>, E>,
    ) -> Result<Self, E> {
        let mut values = BTreeMap::new();
        for total in 0..=max_total {
            for n in 0..=total {
                let m = total - n;
                values.insert((n, m), f(n, m)?);
            }
        }
        Ok(Self { values, max_total, source })
    }

    /// Moments of the coherent state `|λ⟩`, via
    /// `aⁿa†ᵐ = Σⱼ j! C(n,j) C(m,j) a†^{m−j} a^{n−j}`.
    pub fn coherent(lambda: Complex<T>, max_total: u32) -> Self {
        let ok: Result<Self, ()> = Self::from_fn(max_total, MomentSource::Coherent, |n, m| {
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..=n.min(m) {
                let w = T::lit(factorial(j) * binomial(n, j) * binomial(m, j));
                sum = sum + lambda.conj().powu(m - j) * lambda.powu(n - j) * w;
            }
            Ok(sum)
        });
        ok.expect("infallible")
    }

    pub fn vacuum(max_total: u32) -> Self {
        Self::coherent(Complex::new(T::zero(), T::zero()), max_total)
    }

    #[inline]
    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    #[inline]
    pub fn source(&self) -> MomentSource {
        self.source
    }

    /// `⟨aⁿ a†ᵐ⟩`.
    pub fn get(&self, n: u32, m: u32) -> Result<Complex<T>> {
        self.values.get(&(n, m)).copied().ok_or(Error::MissingMoments { n, m })
    }

    /// Normally ordered `⟨a†ᵏ aᵏ⟩ = Σⱼ (−1)ʲ C(k,j)² j! ⟨a^{k−j} a†^{k−j}⟩`.
    pub fn normal_diagonal(&self, k: u32) -> Result<T> {
        let mut sum = T::zero();
        for j in 0..=k {
            let w = factorial(j) * binomial(k, j) * binomial(k, j);
            let sign = if j % 2 == 0 { T::one() } else { -T::one() };
            sum = sum + sign * T::lit(w) * self.get(k - j, k - j)?.re;
        }
        Ok(sum)
    }

    /// Mean photon number `⟨a†a⟩`.
    pub fn mean_photon_number(&self) -> Result<T> {
        self.normal_diagonal(1)
    }

    /// Photon-number variance excess `(Δn)² − ⟨n⟩ = ⟨a†²a²⟩ − ⟨a†a⟩²`;
    /// positive for super-Poissonian light.
    pub fn mandel_excess(&self) -> Result<T> {
        let n = self.mean_photon_number()?;
        Ok(self.normal_diagonal(2)? - n * n)
    }

    /// Applies `a → a e^{−iχ}`, i.e. multiplies `⟨aⁿa†ᵐ⟩` by `e^{i(m−n)χ}`.
    pub fn rotated(&self, chi: T) -> Self {
        let values = self
            .values
            .iter()
            .map(|(&(n, m), &v)| {
                let d = T::lit(f64::from(m) - f64::from(n));
                ((n, m), v * Complex::from_polar(T::one(), d * chi))
            })
            .collect();
        Self { values, max_total: self.max_total, source: self.source }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), Complex<T>)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Derivatives of `ln Z(ε, η)` at the origin for a Gaussian state, where
/// `⟨aⁿ a†ᵐ⟩ = ∂ⁿ_η ∂ᵐ_ε Z / Z`. All higher derivatives vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianCumulants<T> {
    pub t_eta: Complex<T>,
    pub t_eps: Complex<T>,
    pub t_etaeta: Complex<T>,
    pub t_epseps: Complex<T>,
    pub t_epseta: T,
}

impl<T: Real> GaussianCumulants<T> {
    /// Cumulants of a state with mean `⟨a⟩ = mean`, connected `⟨a²⟩ = pair` and
    /// connected `⟨aa†⟩ = anti`.
    pub fn from_connected(mean: Complex<T>, pair: Complex<T>, anti: T) -> Self {
        Self { t_eta: mean, t_eps: mean.conj(), t_etaeta: pair, t_epseps: pair.conj(), t_epseta: anti }
    }

    /// `⟨aⁿ a†ᵐ⟩ = n! m! [ηⁿ εᵐ] exp(t_η η + t_ε ε + ½t_ηη η² + ½t_εε ε² + t_εη εη)`.
    pub fn moment(&self, n: u32, m: u32) -> Complex<T> {
        let half = T::lit(0.5);
        let mut sum = Complex::new(T::zero(), T::zero());
        for w in 0..=n.min(m) {
            let mut r = 0;
            while 2 * r + w <= n {
                let p = n - 2 * r - w;
                let mut u = 0;
                while 2 * u + w <= m {
                    let q = m - 2 * u - w;
                    let denom = factorial(p) * factorial(q) * factorial(r) * factorial(u) * factorial(w);
                    let term = self.t_eta.powu(p)
                        * self.t_eps.powu(q)
                        * (self.t_etaeta * half).powu(r)
                        * (self.t_epseps * half).powu(u)
                        * re(self.t_epseta.powi(w as i32));
                    sum = sum + term / T::lit(denom);
                    u += 1;
                }
                r += 1;
            }
        }
        sum * T::lit(factorial(n) * factorial(m))
    }
}

/// Assembles every ordered moment up to `max_total` from Gaussian cumulants.
pub fn moments_from_cumulants<T: Real>(
    cumulants: &GaussianCumulants<T>,
    max_total: u32,
    source: MomentSource,
) -> MomentSet<T> {
    let ok: Result<MomentSet<T>, ()> = MomentSet::from_fn(max_total, source, |n, m| Ok(cumulants.moment(n, m)));
    ok.expect("infallible")
}
