//! Parameter sets of the supported theories.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::labels::MinimalLabel;
use crate::semisimple::HeisenbergTheory;
use crate::{Error, Real, Result};

/// Coprime pair (u, v) with u, v ≥ 2. Shared by the minimal model, Π(0) and
/// admissible sl2 at level k = −2 + u/v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Kac {
    pub u: i64,
    pub v: i64,
}

pub type MinimalModelTheory = Kac;
pub type PiTheory = Kac;
pub type Sl2Theory = Kac;

impl Kac {
    pub fn new(u: i64, v: i64) -> Result<Self> {
        if u < 2 || v < 2 {
            return Err(Error::OutOfRange(format!("u = {u}, v = {v} must both be at least 2")));
        }
        if u.gcd(&v) != 1 {
            return Err(Error::OutOfRange(format!("u = {u}, v = {v} are not coprime")));
        }
        Ok(Self { u, v })
    }

    /// Level k = −2 + u/v.
    pub fn k(&self) -> Rational64 {
        Rational64::new(self.u, self.v) - 2
    }

    pub fn k_f64(&self) -> f64 {
        self.u as f64 / self.v as f64 - 2.0
    }

    pub fn k_real<T: Real>(&self) -> T {
        T::q(self.k())
    }

    /// Virasoro central charge 13 − 6/(k+2) − 6(k+2).
    pub fn central_charge(&self) -> Rational64 {
        let t = Rational64::new(self.u, self.v);
        Rational64::from_integer(13) - Rational64::from_integer(6) / t - t * 6
    }

    /// Canonical Kac labels in table order (s, then r).
    pub fn labels(&self) -> Vec<MinimalLabel> {
        let mut out = Vec::new();
        for s in 1..self.v {
            for r in 1..self.u {
                let l = MinimalLabel::canonical(self, r, s).expect("in range");
                if l.r == r && l.s == s {
                    out.push(l);
                }
            }
        }
        out
    }

    pub fn in_range(&self, r: i64, s: i64) -> bool {
        (1..self.u).contains(&r) && (1..self.v).contains(&s)
    }

    pub fn check(&self, r: i64, s: i64) -> Result<()> {
        if self.in_range(r, s) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "(r,s) = ({r},{s}) outside 1..{} x 1..{}",
                self.u - 1,
                self.v - 1
            )))
        }
    }
}

/// Singlet algebra M(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingletTheory {
    pub p: i64,
}

impl SingletTheory {
    pub fn new(p: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::OutOfRange(format!("p = {p} must be at least 2")));
        }
        Ok(Self { p })
    }

    /// α₊ = √(2p).
    pub fn alpha_plus<T: Real>(&self) -> T {
        T::n(2 * self.p).sqrt()
    }

    /// α₋ = −√(2/p).
    pub fn alpha_minus<T: Real>(&self) -> T {
        -(T::n(2) / T::n(self.p)).sqrt()
    }

    pub fn alpha_zero<T: Real>(&self) -> T {
        self.alpha_plus::<T>() + self.alpha_minus::<T>()
    }

    /// α_{r,s} = (1−r)/2·α₊ + (1−s)/2·α₋.
    pub fn alpha_rs<T: Real>(&self, r: i64, s: i64) -> T {
        let half = T::c(0.5);
        T::n(1 - r) * half * self.alpha_plus::<T>() + T::n(1 - s) * half * self.alpha_minus::<T>()
    }

    /// ρ-degree of a Fock weight, α₊λ.
    pub fn rho<T: Real>(&self, lambda: T) -> T {
        self.alpha_plus::<T>() * lambda
    }

    /// ρ(F_{r,s}) = s − 1 − p(r − 1), exactly.
    pub fn rho_rs(&self, r: i64, s: i64) -> i64 {
        s - 1 - self.p * (r - 1)
    }
}

/// One theory instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TheoryConfig<T> {
    Minimal(MinimalModelTheory),
    Heisenberg(HeisenbergTheory<T>),
    Pi0(PiTheory),
    Singlet(SingletTheory),
    Sl2(Sl2Theory),
}

impl<T> TheoryConfig<T> {
    pub fn name(&self) -> &'static str {
        match self {
            TheoryConfig::Minimal(_) => "minimal",
            TheoryConfig::Heisenberg(_) => "heisenberg",
            TheoryConfig::Pi0(_) => "pi0",
            TheoryConfig::Singlet(_) => "singlet",
            TheoryConfig::Sl2(_) => "sl2",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kac_validation() {
        assert!(Kac::new(4, 2).is_err());
        assert!(Kac::new(1, 3).is_err());
        let k = Kac::new(5, 2).unwrap();
        assert_eq!(k.k(), Rational64::new(1, 2));
        assert_eq!(k.central_charge(), Rational64::new(-22, 5));
        assert_eq!(Kac::new(4, 3).unwrap().central_charge(), Rational64::new(1, 2));
    }

    #[test]
    fn singlet_constants() {
        let th = SingletTheory::new(3).unwrap();
        let ap: f64 = th.alpha_plus();
        let am: f64 = th.alpha_minus();
        assert!((ap * am + 2.0).abs() < 1e-14);
        for r in -3..4 {
            for s in 1..3 {
                let rho = th.rho(th.alpha_rs::<f64>(r, s));
                assert!((rho - th.rho_rs(r, s) as f64).abs() < 1e-12);
            }
        }
    }
}
