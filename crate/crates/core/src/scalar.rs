//! Phases, Chebyshev quotients, integer rounding and deterministic sampling
//! of spectral points.

use std::ops::Mul;

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::theory::TheoryConfig;
use crate::{Error, Real, Result};

/// The unit complex number e^{iπ·num/den}, exponent reduced into [0, 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPhase {
    num: i64,
    den: i64,
}

impl RationalPhase {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Precondition("phase denominator is zero".into()));
        }
        Ok(Self::from_ratio(Rational64::new(num, den)))
    }

    pub fn from_ratio(q: Rational64) -> Self {
        let den = *q.denom();
        let num = q.numer().rem_euclid(2 * den);
        let g = num.gcd(&den).max(1);
        Self { num: num / g, den: den / g }
    }

    pub fn one() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Exponent q in e^{iπq}, in [0, 2).
    pub fn exponent(&self) -> Rational64 {
        Rational64::new(self.num, self.den)
    }

    pub fn conj(&self) -> Self {
        Self::from_ratio(-self.exponent())
    }

    pub fn pow(&self, n: i64) -> Self {
        Self::from_ratio(self.exponent() * n)
    }

    pub fn eval<T: Real>(&self) -> Complex<T> {
        match (self.num, self.den) {
            (0, _) => Complex::new(T::one(), T::zero()),
            (1, 1) => Complex::new(-T::one(), T::zero()),
            (1, 2) => Complex::new(T::zero(), T::one()),
            (3, 2) => Complex::new(T::zero(), -T::one()),
            _ => {
                let a = T::PI() * T::n(self.num) / T::n(self.den);
                Complex::new(a.cos(), a.sin())
            }
        }
    }
}

impl Mul for RationalPhase {
    type Output = RationalPhase;
    fn mul(self, rhs: Self) -> Self {
        Self::from_ratio(self.exponent() + rhs.exponent())
    }
}

/// e^{iπq}.
pub fn phase<T: Real>(q: Rational64) -> Complex<T> {
    RationalPhase::from_ratio(q).eval()
}

/// e^{iπx} for a real exponent.
pub fn expi_pi<T: Real>(x: T) -> Complex<T> {
    let a = T::PI() * x;
    Complex::new(a.cos(), a.sin())
}

/// Numerical tolerances used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance<T> {
    pub eps_round: T,
    pub eps_limit: T,
    pub eps_exclusion: T,
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            eps_round: T::c(1e-6),
            eps_limit: T::c(1e-8),
            eps_exclusion: T::c(1e-9),
        }
    }
}

impl<T: Real> Tolerance<T> {
    pub fn new(eps_round: T, eps_limit: T, eps_exclusion: T) -> Result<Self> {
        for (name, v) in [
            ("eps_round", eps_round),
            ("eps_limit", eps_limit),
            ("eps_exclusion", eps_exclusion),
        ] {
            if !(v > T::zero()) {
                return Err(Error::Precondition(format!("{name} must be positive")));
            }
        }
        Ok(Self { eps_round, eps_limit, eps_exclusion })
    }
}

/// χ_s(x) = sin(πsx)/sin(πx).
pub fn trig_quotient<T: Real>(s: i64, x: T, tol: &Tolerance<T>) -> Result<T> {
    let d = (T::PI() * x).sin();
    if d.abs() < tol.eps_exclusion {
        return Err(Error::ExceptionalPoint(format!("sin(pi x) vanishes at x = {x}")));
    }
    Ok((T::PI() * T::n(s) * x).sin() / d)
}

/// Nearest integer to `z` if it lies within `eps_round`.
pub fn round_to_integer<T: Real>(z: Complex<T>, tol: &Tolerance<T>) -> Result<i64> {
    let n = z.re.round();
    let distance = (z - Complex::new(n, T::zero())).norm();
    if distance < tol.eps_round {
        Ok(n.f64() as i64)
    } else {
        Err(Error::NotNearInteger { re: z.re.f64(), im: z.im.f64(), distance: distance.f64() })
    }
}

/// Argument of a quantum dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpectralPoint<T> {
    Real(T),
    Sl2 { ell: i64, lambda: T, r: i64, s: i64 },
    Kac { r: i64, s: i64 },
    Vector(Vec<T>),
    Pi { ell: i64, lambda: T },
}

/// Distance from x to the nearest integer.
pub fn dist_to_integer<T: Real>(x: T) -> T {
    (x - x.round()).abs()
}

/// Width of the band around exceptional loci that sampling keeps clear of.
pub const SAMPLE_GUARD: f64 = 0.02;

/// Additive-recurrence (Kronecker) increments for dimension d.
fn kronecker_steps(d: usize) -> Vec<f64> {
    // the unique positive root of x^{d+1} = x + 1
    let mut g = 2.0f64;
    for _ in 0..64 {
        g = (1.0 + g).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|i| (1.0 / g.powi(i as i32)).fract()).collect()
}

struct LowDiscrepancy {
    offset: Vec<f64>,
    step: Vec<f64>,
    n: u64,
}

impl LowDiscrepancy {
    fn new(d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let offset = (0..d).map(|_| rng.gen::<f64>()).collect();
        Self { offset, step: kronecker_steps(d), n: 0 }
    }

    fn next(&mut self) -> Vec<f64> {
        self.n += 1;
        let n = self.n as f64;
        self.offset
            .iter()
            .zip(&self.step)
            .map(|(o, a)| (o + n * a).fract())
            .collect()
    }
}

fn pick(x: f64, lo: i64, hi: i64) -> i64 {
    let span = (hi - lo + 1) as f64;
    (lo + (x * span).floor() as i64).min(hi)
}

/// Deterministic low-discrepancy sample of `n` non-exceptional points.
pub fn sample_points<T: Real>(theory: &TheoryConfig<T>, n: usize, seed: u64) -> Result<Vec<SpectralPoint<T>>> {
    if n == 0 {
        return Err(Error::Precondition("sample count must be at least 1".into()));
    }
    let guard = SAMPLE_GUARD;
    let mut out = Vec::with_capacity(n);
    match theory {
        TheoryConfig::Minimal(kac) => {
            let labels = kac.labels();
            let mut seq = LowDiscrepancy::new(1, seed);
            while out.len() < n {
                let x = seq.next()[0];
                let l = labels[pick(x, 0, labels.len() as i64 - 1) as usize];
                out.push(SpectralPoint::Kac { r: l.r, s: l.s });
            }
        }
        TheoryConfig::Heisenberg(h) => {
            let mut seq = LowDiscrepancy::new(h.rank(), seed);
            while out.len() < n {
                let x = seq.next();
                out.push(SpectralPoint::Vector(x.iter().map(|c| T::c(2.0 * c - 1.0)).collect()));
            }
        }
        TheoryConfig::Pi0(_) => {
            let mut seq = LowDiscrepancy::new(2, seed);
            while out.len() < n {
                let x = seq.next();
                let lambda = 0.02 + 0.96 * x[1];
                out.push(SpectralPoint::Pi { ell: pick(x[0], -2, 2), lambda: T::c(lambda) });
            }
        }
        TheoryConfig::Singlet(th) => {
            let ap = th.alpha_plus::<f64>();
            let am = th.alpha_minus::<f64>();
            let mut seq = LowDiscrepancy::new(1, seed);
            while out.len() < n {
                let mu = 0.05 + 0.9 * seq.next()[0];
                if dist_to_integer(ap * mu) > guard && dist_to_integer(am * mu) > guard {
                    out.push(SpectralPoint::Real(T::c(mu)));
                }
            }
        }
        TheoryConfig::Sl2(kac) => {
            let k = kac.k_f64();
            let v = kac.v as f64;
            let mut seq = LowDiscrepancy::new(4, seed);
            while out.len() < n {
                let x = seq.next();
                let ell = pick(x[0], -2, 2);
                let lambda = 2.0 * x[1];
                let r = pick(x[2], 1, kac.u - 1);
                let s = pick(x[3], 1, kac.v - 1);
                let c1 = 2.0 * (std::f64::consts::PI * lambda).cos();
                let c2 = 2.0 * (k * std::f64::consts::PI * s as f64).cos();
                let clear = (c1 + c2).abs() > 5.0 * guard
                    && (c1 - c2).abs() > 5.0 * guard
                    && dist_to_integer(v * lambda) > guard
                    && dist_to_integer(lambda) > guard;
                if clear {
                    out.push(SpectralPoint::Sl2 { ell, lambda: T::c(lambda), r, s });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_quarter_turns() {
        let one: Complex<f64> = phase(Rational64::new(0, 1));
        assert_eq!(one, Complex::new(1.0, 0.0));
        let m: Complex<f64> = phase(Rational64::new(1, 1));
        assert_eq!(m, Complex::new(-1.0, 0.0));
        let i: Complex<f64> = phase(Rational64::new(1, 2));
        assert_eq!(i, Complex::new(0.0, 1.0));
        let j: Complex<f64> = phase(Rational64::new(-5, 2));
        assert_eq!(j, Complex::new(0.0, -1.0));
    }

    #[test]
    fn phase_is_reduced() {
        let p = RationalPhase::new(14, 4).unwrap();
        assert_eq!((p.numerator(), p.denominator()), (3, 2));
        assert!(RationalPhase::new(1, 0).is_err());
        assert_eq!(p * p.conj(), RationalPhase::one());
    }

    #[test]
    fn trig_quotient_examples() {
        let tol = Tolerance::<f64>::default();
        assert!((trig_quotient(1, 0.37, &tol).unwrap() - 1.0).abs() < 1e-14);
        assert!((trig_quotient(2, 0.25, &tol).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert!((trig_quotient(3, 0.25, &tol).unwrap() - 1.0).abs() < 1e-14);
        assert!(matches!(trig_quotient(2, 1.0, &tol), Err(Error::ExceptionalPoint(_))));
        let t32 = Tolerance::<f32>::default();
        assert!((trig_quotient(2, 0.25f32, &t32).unwrap() - 2f32.sqrt()).abs() < 1e-5);
    }

    #[test]
    fn rounding_examples() {
        let tol = Tolerance::<f64>::default();
        assert_eq!(round_to_integer(Complex::new(0.9999999, 2e-8), &tol).unwrap(), 1);
        assert_eq!(round_to_integer(Complex::new(-3.0000002, 0.0), &tol).unwrap(), -3);
        assert!(matches!(
            round_to_integer(Complex::new(0.4, 0.0), &tol),
            Err(Error::NotNearInteger { .. })
        ));
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(Tolerance::new(1e-6, 0.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-6, 1e-8, 1e-9).is_ok());
    }
}
