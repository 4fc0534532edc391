//! Semisimple data: minimal-model S-matrix and fusion, Heisenberg and Π(0)
//! kernels with their quantum-dimension characters.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::labels::{FockLabel, GrothendieckVector, MinimalLabel, PiLabel};
use crate::scalar::{expi_pi, round_to_integer, RationalPhase, SpectralPoint, Tolerance};
use crate::theory::Kac;
use crate::{Error, Real, Result};

/// Modular S-matrix entry S_{(r,s)(r',s')}.
pub fn vir_s<T: Real>(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel) -> T {
    let (u, v) = (kac.u, kac.v);
    let pref = -T::n(2) * (T::n(2) / T::n(u * v)).sqrt();
    let sign = if (a.r * b.s + b.r * a.s) % 2 == 0 { T::one() } else { -T::one() };
    let x = (T::PI() * T::n(v * a.r * b.r) / T::n(u)).sin();
    let y = (T::PI() * T::n(u * a.s * b.s) / T::n(v)).sin();
    pref * sign * x * y
}

/// Full S-matrix over the canonical labels of [`Kac::labels`].
pub fn vir_s_matrix<T: Real>(kac: &Kac) -> Vec<Vec<T>> {
    let labels = kac.labels();
    labels
        .iter()
        .map(|a| labels.iter().map(|b| vir_s(kac, a, b)).collect())
        .collect()
}

/// su(2) fusion window N^{(n)}_{a,b}{}^{c} at truncation n.
pub fn window(n: i64, a: i64, b: i64, c: i64) -> i64 {
    if a < 1 || b < 1 || c < 1 || a >= n || b >= n || c >= n {
        return 0;
    }
    let lo = (a - b).abs() + 1;
    let hi = (a + b - 1).min(2 * n - a - b - 1);
    i64::from(c >= lo && c <= hi && (a + b + c) % 2 == 1)
}

fn raw_coefficient(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel, r: i64, s: i64) -> i64 {
    window(kac.u, a.r, b.r, r) * window(kac.v, a.s, b.s, s)
}

/// Closed-form fusion coefficient, summed over both representatives of `c`.
pub fn vir_fusion_closed(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel, c: &MinimalLabel) -> i64 {
    raw_coefficient(kac, a, b, c.r, c.s) + raw_coefficient(kac, a, b, kac.u - c.r, kac.v - c.s)
}

/// The Verlinde sum as a float, before rounding.
pub fn vir_verlinde_sum<T: Real>(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel, c: &MinimalLabel) -> T {
    let one = MinimalLabel::vacuum();
    kac.labels().iter().fold(T::zero(), |acc, d| {
        acc + vir_s::<T>(kac, a, d) * vir_s::<T>(kac, b, d) * vir_s::<T>(kac, c, d) / vir_s::<T>(kac, &one, d)
    })
}

/// Fusion coefficient from the Verlinde sum, rounded.
pub fn vir_fusion_verlinde<T: Real>(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel, c: &MinimalLabel, tol: &Tolerance<T>) -> Result<i64> {
    round_to_integer(Complex::new(vir_verlinde_sum::<T>(kac, a, b, c), T::zero()), tol)
}

/// a ⊗ b as a combination of canonical classes.
pub fn vir_fusion_product(kac: &Kac, a: &MinimalLabel, b: &MinimalLabel) -> GrothendieckVector<MinimalLabel> {
    GrothendieckVector::from_terms(kac.labels().into_iter().map(|c| (c, vir_fusion_closed(kac, a, b, &c))))
}

/// Quantum dimension S_{a,d}/S_{1,d} at the Kac point d.
pub fn vir_qdim<T: Real>(kac: &Kac, a: &MinimalLabel, d: &MinimalLabel) -> T {
    vir_s::<T>(kac, a, d) / vir_s::<T>(kac, &MinimalLabel::vacuum(), d)
}

/// Rank-n Heisenberg VOA with Gram matrix M and shift vector b.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergTheory<T> {
    n: usize,
    m: Vec<T>,
    b: Vec<T>,
    m_inv: Vec<T>,
    det: T,
}

impl<T: Real> HeisenbergTheory<T> {
    /// `m` is row-major n×n, symmetric and nondegenerate.
    pub fn new(m: Vec<T>, b: Vec<T>) -> Result<Self> {
        let n = b.len();
        if n == 0 || m.len() != n * n {
            return Err(Error::Precondition(format!("M must be {n}x{n} for a shift vector of length {n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if (m[i * n + j] - m[j * n + i]).abs() > T::c(1e-12) {
                    return Err(Error::Precondition("M must be symmetric".into()));
                }
            }
        }
        let mat = DMatrix::from_row_slice(n, n, &m.iter().map(|x| x.f64()).collect::<Vec<_>>());
        let det = mat.determinant();
        if det.abs() < 1e-12 {
            return Err(Error::SingularMatrix);
        }
        let inv = mat.try_inverse().ok_or(Error::SingularMatrix)?;
        let m_inv = (0..n * n).map(|k| T::c(inv[(k / n, k % n)])).collect();
        Ok(Self { n, m, b, m_inv, det: T::c(det) })
    }

    /// M = (1), b = 0.
    pub fn standard_rank_one() -> Self {
        Self::new(vec![T::one()], vec![T::zero()]).expect("identity is invertible")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn det(&self) -> T {
        self.det
    }

    pub fn gram(&self) -> &[T] {
        &self.m
    }

    pub fn shift(&self) -> &[T] {
        &self.b
    }

    /// (x, M⁻¹ y).
    pub fn pairing(&self, x: &[T], y: &[T]) -> T {
        let n = self.n;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + x[i] * self.m_inv[i * n + j] * y[j];
            }
        }
        acc
    }

    fn check(&self, x: &[T]) -> Result<()> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(Error::Precondition(format!("weight of length {} for rank {}", x.len(), self.n)))
        }
    }
}

/// S_{λ,μ} = e^{−2πi(λ+b, M⁻¹(μ+b))}/√(det M).
pub fn heis_s_kernel<T: Real>(th: &HeisenbergTheory<T>, lambda: &[T], mu: &[T]) -> Result<Complex<T>> {
    th.check(lambda)?;
    th.check(mu)?;
    let lb: Vec<T> = lambda.iter().zip(th.shift()).map(|(x, b)| *x + *b).collect();
    let mb: Vec<T> = mu.iter().zip(th.shift()).map(|(x, b)| *x + *b).collect();
    let root = Complex::new(th.det(), T::zero()).sqrt();
    Ok(expi_pi(-T::n(2) * th.pairing(&lb, &mb)) / root)
}

/// q_λ(ρ) = e^{−2πi(λ, M⁻¹(ρ+b))}.
pub fn heis_qdim<T: Real>(th: &HeisenbergTheory<T>, lambda: &[T], rho: &[T]) -> Result<Complex<T>> {
    th.check(lambda)?;
    th.check(rho)?;
    let rb: Vec<T> = rho.iter().zip(th.shift()).map(|(x, b)| *x + *b).collect();
    Ok(expi_pi(-T::n(2) * th.pairing(lambda, &rb)))
}

pub fn heis_fusion<T: Real>(x: &FockLabel<T>, y: &FockLabel<T>) -> FockLabel<T> {
    FockLabel::new(x.lambda.iter().zip(&y.lambda).map(|(a, b)| *a + *b).collect())
}

/// Π(0) kernel e^{−iπ(kℓℓ' − k + 2λ'(ℓ+1) + 2λ(ℓ'+1))}, exactly as displayed.
pub fn pi0_s_kernel<T: Real>(kac: &Kac, x: &PiLabel<T>, y: &PiLabel<T>) -> Complex<T> {
    let k = kac.k();
    let exact = RationalPhase::from_ratio(-(k * (x.ell * y.ell) - k));
    let real = T::n(2) * y.lambda * T::n(x.ell + 1) + T::n(2) * x.lambda * T::n(y.ell + 1);
    exact.eval::<T>() * expi_pi(-real)
}

/// q_{ℓ,λ}(ℓ',λ') = e^{−iπ(kℓℓ' + 2λ'ℓ + 2λ(ℓ'+1))}.
pub fn pi0_qdim<T: Real>(kac: &Kac, x: &PiLabel<T>, y: &PiLabel<T>) -> Complex<T> {
    pi0_qdim_raw(kac, x.ell, x.lambda, y.ell, y.lambda)
}

/// [`pi0_qdim`] on unreduced weights (λ is not taken mod 1).
pub fn pi0_qdim_raw<T: Real>(kac: &Kac, ell: i64, lambda: T, ell_p: i64, lambda_p: T) -> Complex<T> {
    let exact = RationalPhase::from_ratio(-(kac.k() * Rational64::from_integer(ell * ell_p)));
    let real = T::n(2) * lambda_p * T::n(ell) + T::n(2) * lambda * T::n(ell_p + 1);
    exact.eval::<T>() * expi_pi(-real)
}

pub fn pi0_fusion<T: Real>(x: &PiLabel<T>, y: &PiLabel<T>) -> PiLabel<T> {
    PiLabel::new(x.ell + y.ell, x.lambda + y.lambda)
}

/// Normalized qdim of a Heisenberg or Π(0) label at a spectral point of the right shape.
pub fn pi0_qdim_at<T: Real>(kac: &Kac, x: &PiLabel<T>, sp: &SpectralPoint<T>) -> Result<Complex<T>> {
    match sp {
        SpectralPoint::Pi { ell, lambda } => Ok(pi0_qdim(kac, x, &PiLabel { ell: *ell, lambda: *lambda })),
        _ => Err(Error::Precondition("Π(0) quantum dimension needs a Pi spectral point".into())),
    }
}
