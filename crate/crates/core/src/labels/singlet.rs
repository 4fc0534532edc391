use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cmp_real, fmt_real, int_field, parse_bracket, real_field, weight_tol, ClassLabel};
use crate::theory::SingletTheory;
use crate::{Error, Real, Result};

/// Module names of the singlet algebra M(p).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SingletLabel<T> {
    /// Fock module at a weight that is not of the form α_{r,s}, 1 ≤ s ≤ p−1.
    F { lambda: T },
    /// Atypical Fock module F_{r,s} = F_{α_{r,s}}.
    Frs { r: i64, s: i64 },
    /// Simple atypical module M_{r,s}.
    M { r: i64, s: i64 },
    /// The second extension of M_{r−1,p−s} by M_{r,s}.
    Fbar { r: i64, s: i64 },
}

fn check_s(th: &SingletTheory, s: i64) -> Result<()> {
    if (1..th.p).contains(&s) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("s = {s} outside 1..{}", th.p - 1)))
    }
}

impl<T: Real> SingletLabel<T> {
    /// Fock module of weight λ, snapped to F_{r,s} on the atypical lattice.
    pub fn fock(th: &SingletTheory, lambda: T) -> Self {
        let n = th.rho(lambda);
        let nr = n.round();
        if (n - nr).abs() < weight_tol::<T>() * T::n(4 * th.p) {
            let n = nr.f64() as i64;
            let rem = n.rem_euclid(th.p);
            if rem != th.p - 1 {
                let s = rem + 1;
                let r = 1 + (s - 1 - n) / th.p;
                return SingletLabel::Frs { r, s };
            }
        }
        SingletLabel::F { lambda }
    }

    pub fn atypical(th: &SingletTheory, r: i64, s: i64) -> Result<Self> {
        check_s(th, s)?;
        Ok(SingletLabel::Frs { r, s })
    }

    pub fn m(th: &SingletTheory, r: i64, s: i64) -> Result<Self> {
        check_s(th, s)?;
        Ok(SingletLabel::M { r, s })
    }

    pub fn fbar(th: &SingletTheory, r: i64, s: i64) -> Result<Self> {
        check_s(th, s)?;
        Ok(SingletLabel::Fbar { r, s })
    }

    pub fn vacuum() -> Self {
        SingletLabel::M { r: 1, s: 1 }
    }

    pub fn is_fock(&self) -> bool {
        matches!(self, SingletLabel::F { .. } | SingletLabel::Frs { .. })
    }

    /// Fock weight, for F and F_{r,s}.
    pub fn weight(&self, th: &SingletTheory) -> Option<T> {
        match *self {
            SingletLabel::F { lambda } => Some(lambda),
            SingletLabel::Frs { r, s } => Some(th.alpha_rs(r, s)),
            _ => None,
        }
    }

    pub fn canonicalize(&self, th: &SingletTheory) -> Result<Self> {
        match *self {
            SingletLabel::F { lambda } => Ok(Self::fock(th, lambda)),
            SingletLabel::Frs { r, s } => Self::atypical(th, r, s),
            SingletLabel::M { r, s } => Self::m(th, r, s),
            SingletLabel::Fbar { r, s } => Self::fbar(th, r, s),
        }
    }

    /// The Fock label reached by adding `delta` to the weight.
    pub fn shifted_weight(&self, th: &SingletTheory, delta: T) -> Result<Self> {
        let w = self
            .weight(th)
            .ok_or_else(|| Error::Precondition(format!("{self} is not a Fock module")))?;
        Ok(Self::fock(th, w + delta))
    }

    pub fn parse(th: &SingletTheory, text: &str) -> Result<Self> {
        let (name, f) = parse_bracket(text)?;
        match name.as_str() {
            "F" if f.iter().any(|(k, _)| k == "lam") => Ok(Self::fock(th, real_field(&f, "lam")?)),
            "F" => Self::atypical(th, int_field(&f, "r")?, int_field(&f, "s")?),
            "M" => Self::m(th, int_field(&f, "r")?, int_field(&f, "s")?),
            "Fbar" => Self::fbar(th, int_field(&f, "r")?, int_field(&f, "s")?),
            _ => Err(Error::Parse(format!("unknown singlet label {text:?}"))),
        }
    }

    fn kind(&self) -> u8 {
        match self {
            SingletLabel::F { .. } => 0,
            SingletLabel::Frs { .. } => 1,
            SingletLabel::M { .. } => 2,
            SingletLabel::Fbar { .. } => 3,
        }
    }

    fn rs(&self) -> (i64, i64) {
        match *self {
            SingletLabel::F { .. } => (0, 0),
            SingletLabel::Frs { r, s } | SingletLabel::M { r, s } | SingletLabel::Fbar { r, s } => (r, s),
        }
    }
}

impl<T: Real> fmt::Display for SingletLabel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SingletLabel::F { lambda } => write!(f, "F[lam={}]", fmt_real(lambda.f64())),
            SingletLabel::Frs { r, s } => write!(f, "F[r={r},s={s}]"),
            SingletLabel::M { r, s } => write!(f, "M[r={r},s={s}]"),
            SingletLabel::Fbar { r, s } => write!(f, "Fbar[r={r},s={s}]"),
        }
    }
}

impl<T: Real> ClassLabel for SingletLabel<T> {
    fn same_class(&self, other: &Self) -> bool {
        match (self, other) {
            (SingletLabel::F { lambda: a }, SingletLabel::F { lambda: b }) => (*a - *b).abs() < weight_tol::<T>(),
            _ => self.kind() == other.kind() && self.kind() != 0 && self.rs() == other.rs(),
        }
    }
    fn order(&self, other: &Self) -> Ordering {
        self.kind().cmp(&other.kind()).then_with(|| match (self, other) {
            (SingletLabel::F { lambda: a }, SingletLabel::F { lambda: b }) => cmp_real(*a, *b),
            _ => {
                let (r1, s1) = self.rs();
                let (r2, s2) = other.rs();
                (s1, r1).cmp(&(s2, r2))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atypical_snapping() {
        let th = SingletTheory::new(3).unwrap();
        for r in -4..5 {
            for s in 1..3 {
                let w: f64 = th.alpha_rs(r, s);
                assert_eq!(SingletLabel::fock(&th, w + 1e-12), SingletLabel::Frs { r, s });
            }
            // s = p is typical
            let w: f64 = th.alpha_rs(r, 3);
            assert!(matches!(SingletLabel::fock(&th, w), SingletLabel::F { .. }));
        }
        assert!(matches!(SingletLabel::fock(&th, 0.123f64), SingletLabel::F { .. }));
        assert_eq!(SingletLabel::<f64>::fock(&th, 0.0), SingletLabel::Frs { r: 1, s: 1 });
    }

    #[test]
    fn parse_and_render() {
        let th = SingletTheory::new(2).unwrap();
        for t in ["M[r=2,s=1]", "F[r=0,s=1]", "Fbar[r=1,s=1]", "F[lam=0.3]"] {
            let l = SingletLabel::<f64>::parse(&th, t).unwrap();
            assert_eq!(l.to_string(), t);
        }
        assert!(SingletLabel::<f64>::parse(&th, "M[r=1,s=2]").is_err());
    }
}
