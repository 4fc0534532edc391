use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{clean_mod, cmp_real, dist_mod, fmt_real, int_field, parse_bracket, real_field, weight_tol, ClassLabel};
use crate::theory::Kac;
use crate::{Error, Real, Result};

/// Kac label (r, s) of a minimal-model simple, stored canonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalLabel {
    pub r: i64,
    pub s: i64,
}

impl MinimalLabel {
    /// Representative of {(r,s), (u−r,v−s)} with smaller s, then smaller r.
    pub fn canonical(kac: &Kac, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        let (r2, s2) = (kac.u - r, kac.v - s);
        Ok(if (s2, r2) < (s, r) {
            Self { r: r2, s: s2 }
        } else {
            Self { r, s }
        })
    }

    pub fn vacuum() -> Self {
        Self { r: 1, s: 1 }
    }

    pub fn parse(kac: &Kac, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (r,s), got {t:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (r,s), got {t:?}")))?;
        let r = a.trim().parse().map_err(|_| Error::Parse(format!("bad r in {t:?}")))?;
        let s = b.trim().parse().map_err(|_| Error::Parse(format!("bad s in {t:?}")))?;
        Self::canonical(kac, r, s)
    }
}

impl fmt::Display for MinimalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

impl ClassLabel for MinimalLabel {
    fn same_class(&self, other: &Self) -> bool {
        self == other
    }
    fn order(&self, other: &Self) -> Ordering {
        (self.s, self.r).cmp(&(other.s, other.r))
    }
}

/// Δ_{r,s} = ((vr − us)² − v²)/(4uv).
pub fn delta_rs(u: i64, v: i64, r: i64, s: i64) -> Rational64 {
    let a = v * r - u * s;
    Rational64::new(a * a - v * v, 4 * u * v)
}

/// λ_{r,s} = r − 1 − (u/v)s.
pub fn lambda_rs(u: i64, v: i64, r: i64, s: i64) -> Rational64 {
    Rational64::from_integer(r - 1) - Rational64::new(u * s, v)
}

/// Heisenberg Fock module π_λ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockLabel<T> {
    pub lambda: Vec<T>,
}

impl<T: Real> FockLabel<T> {
    pub fn new(lambda: Vec<T>) -> Self {
        Self { lambda }
    }

    pub fn zero(n: usize) -> Self {
        Self { lambda: vec![T::zero(); n] }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (name, f) = parse_bracket(text)?;
        if name != "pi" {
            return Err(Error::Parse(format!("expected pi[lam=..], got {text:?}")));
        }
        let v = super::field(&f, "lam")?;
        let lambda = v.split(':').map(super::parse_real).collect::<Result<Vec<T>>>()?;
        Ok(Self { lambda })
    }
}

impl<T: Real> fmt::Display for FockLabel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(|x| fmt_real(x.f64())).collect();
        write!(f, "pi[lam={}]", parts.join(":"))
    }
}

impl<T: Real> ClassLabel for FockLabel<T> {
    fn same_class(&self, other: &Self) -> bool {
        self.lambda.len() == other.lambda.len()
            && self
                .lambda
                .iter()
                .zip(&other.lambda)
                .all(|(a, b)| (*a - *b).abs() < weight_tol::<T>())
    }
    fn order(&self, other: &Self) -> Ordering {
        for (a, b) in self.lambda.iter().zip(&other.lambda) {
            if (*a - *b).abs() >= weight_tol::<T>() {
                return cmp_real(*a, *b);
            }
        }
        self.lambda.len().cmp(&other.lambda.len())
    }
}

/// Π_ℓ(λ) with λ taken modulo 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiLabel<T> {
    pub ell: i64,
    pub lambda: T,
}

impl<T: Real> PiLabel<T> {
    pub fn new(ell: i64, lambda: T) -> Self {
        Self { ell, lambda: clean_mod(lambda, T::one()) }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (name, f) = parse_bracket(text)?;
        if name != "Pi" {
            return Err(Error::Parse(format!("expected Pi[l=..;lam=..], got {text:?}")));
        }
        Ok(Self::new(int_field(&f, "l")?, real_field(&f, "lam")?))
    }
}

impl<T: Real> fmt::Display for PiLabel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi[l={};lam={}]", self.ell, fmt_real(self.lambda.f64()))
    }
}

impl<T: Real> ClassLabel for PiLabel<T> {
    fn same_class(&self, other: &Self) -> bool {
        self.ell == other.ell && dist_mod(self.lambda, other.lambda, T::one()) < weight_tol::<T>()
    }
    fn order(&self, other: &Self) -> Ordering {
        self.ell
            .cmp(&other.ell)
            .then_with(|| cmp_real(self.lambda, other.lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        let k = Kac::new(5, 2).unwrap();
        assert_eq!(MinimalLabel::canonical(&k, 3, 1).unwrap(), MinimalLabel { r: 2, s: 1 });
        assert!(MinimalLabel::canonical(&k, 5, 1).is_err());
        let ising = Kac::new(4, 3).unwrap();
        assert_eq!(MinimalLabel::canonical(&ising, 3, 2).unwrap(), MinimalLabel { r: 1, s: 1 });
        assert_eq!(ising.labels().len(), 3);
        assert_eq!(MinimalLabel::parse(&ising, "(2, 2)").unwrap(), MinimalLabel { r: 2, s: 1 });
        assert!(MinimalLabel::parse(&ising, "2,2").is_err());
    }

    #[test]
    fn conformal_weights() {
        assert_eq!(delta_rs(3, 2, 1, 1), Rational64::new(-1, 8));
        assert_eq!(delta_rs(5, 2, 1, 1), Rational64::new(1, 8));
        assert_eq!(lambda_rs(3, 2, 1, 1), Rational64::new(-3, 2));
        assert_eq!(lambda_rs(5, 2, 2, 1), Rational64::new(-3, 2));
    }

    #[test]
    fn weight_identities_exhaustive() {
        for u in 2..=7 {
            for v in 2..=7 {
                let Ok(k) = Kac::new(u, v) else { continue };
                for r in 1..u {
                    for s in 1..v {
                        assert!(k.in_range(r, s));
                        assert_eq!(delta_rs(u, v, r, s), delta_rs(u, v, u - r, v - s));
                        assert_eq!(lambda_rs(u, v, u - r, v - s), -lambda_rs(u, v, r, s) - 2);
                    }
                }
            }
        }
    }

    #[test]
    fn pi_label_mod_one() {
        let p = PiLabel::new(2, 1.2f64);
        assert!((p.lambda - 0.2).abs() < 1e-12);
        assert!(p.same_class(&PiLabel::new(2, -0.8)));
        assert_eq!(PiLabel::<f64>::parse("Pi[l=2;lam=0.2]").unwrap().ell, 2);
        let f = FockLabel::<f64>::parse("pi[lam=0.5:-1]").unwrap();
        assert_eq!(f.to_string(), "pi[lam=0.5:-1]");
    }
}
