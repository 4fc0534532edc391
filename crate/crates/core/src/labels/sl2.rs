use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{clean_mod, cmp_real, dist_mod, fmt_real, int_field, lambda_rs, parse_bracket, real_field, weight_tol, ClassLabel, MinimalLabel};
use crate::theory::Kac;
use crate::{Error, Real, Result};

/// Spectrally flowed module names of L_k(sl2); `ell` is the flow index ℓ in σ^ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Sl2Label<T> {
    /// Generic relaxed module σ^ℓ E_{λ;Δ_{r,s}}, λ taken modulo 2.
    Std { ell: i64, lambda: T, r: i64, s: i64 },
    EPlus { ell: i64, r: i64, s: i64 },
    EMinus { ell: i64, r: i64, s: i64 },
    DPlus { ell: i64, r: i64, s: i64 },
    DMinus { ell: i64, r: i64, s: i64 },
    /// σ^ℓ L_{r,0}.
    L { ell: i64, r: i64 },
    /// Staggered projective σ^ℓ S_{r,s}.
    Stag { ell: i64, r: i64, s: i64 },
}

fn check_r(kac: &Kac, r: i64) -> Result<()> {
    if (1..kac.u).contains(&r) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("r = {r} outside 1..{}", kac.u - 1)))
    }
}

impl<T: Real> Sl2Label<T> {
    /// λ_{r,s} as a float reduced modulo 2.
    pub fn atypical_weight(kac: &Kac, r: i64, s: i64) -> T {
        clean_mod(T::q(lambda_rs(kac.u, kac.v, r, s)), T::n(2))
    }

    /// σ^ℓ E_{λ;Δ_{r,s}}, replaced by the appropriate E⁺ at atypical weight.
    pub fn standard(kac: &Kac, ell: i64, lambda: T, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        let two = T::n(2);
        let tol = weight_tol::<T>() * T::c(16.0);
        if dist_mod(lambda, Self::atypical_weight(kac, r, s), two) < tol {
            return Ok(Sl2Label::EPlus { ell, r, s });
        }
        let (r2, s2) = (kac.u - r, kac.v - s);
        if dist_mod(lambda, Self::atypical_weight(kac, r2, s2), two) < tol {
            return Ok(Sl2Label::EPlus { ell, r: r2, s: s2 });
        }
        let c = MinimalLabel::canonical(kac, r, s)?;
        Ok(Sl2Label::Std { ell, lambda: clean_mod(lambda, two), r: c.r, s: c.s })
    }

    pub fn e_plus(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        Ok(Sl2Label::EPlus { ell, r, s })
    }

    pub fn d_minus(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        Ok(Sl2Label::DMinus { ell, r, s })
    }

    pub fn stag(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        Ok(Sl2Label::Stag { ell, r, s })
    }

    /// The vacuum module L_{1,0} in canonical form.
    pub fn vacuum(kac: &Kac) -> Self {
        Sl2Label::DMinus { ell: 1, r: kac.u - 1, s: kac.v - 1 }
    }

    /// Rewrites D⁺ and L in terms of D⁻ and validates ranges.
    pub fn canonicalize(&self, kac: &Kac) -> Result<Self> {
        let (u, v) = (kac.u, kac.v);
        match *self {
            Sl2Label::Std { ell, lambda, r, s } => Self::standard(kac, ell, lambda, r, s),
            Sl2Label::EPlus { ell, r, s } => Self::e_plus(kac, ell, r, s),
            Sl2Label::EMinus { ell, r, s } => {
                kac.check(r, s)?;
                Ok(Sl2Label::EMinus { ell, r, s })
            }
            Sl2Label::DMinus { ell, r, s } => Self::d_minus(kac, ell, r, s),
            Sl2Label::DPlus { ell, r, s } => {
                kac.check(r, s)?;
                if s == v - 1 {
                    Ok(Sl2Label::DMinus { ell: ell + 2, r, s: v - 1 })
                } else {
                    Ok(Sl2Label::DMinus { ell: ell + 1, r: u - r, s: v - 1 - s })
                }
            }
            Sl2Label::L { ell, r } => {
                check_r(kac, r)?;
                Ok(Sl2Label::DMinus { ell: ell + 1, r: u - r, s: v - 1 })
            }
            Sl2Label::Stag { ell, r, s } => Self::stag(kac, ell, r, s),
        }
    }

    /// Writes a simple atypical module as σ^ℓ D⁺_{r,s} (inverse of the D⁺ rewriting).
    pub fn as_d_plus(&self, kac: &Kac) -> Result<(i64, i64, i64)> {
        let (u, v) = (kac.u, kac.v);
        match self.canonicalize(kac)? {
            Sl2Label::DMinus { ell, r, s } => {
                if s == v - 1 {
                    // σ^ℓ D⁻_{r,v−1} = σ^{ℓ−2} D⁺_{r,v−1}
                    Ok((ell - 2, r, v - 1))
                } else {
                    Ok((ell - 1, u - r, v - 1 - s))
                }
            }
            other => Err(Error::Precondition(format!("{other} is not a simple atypical module"))),
        }
    }

    /// Representative of the Grothendieck class: E⁻_{r,s} ↦ E⁺_{u−r,v−s}, D⁺ and L ↦ D⁻.
    pub fn class_rep(&self, kac: &Kac) -> Result<Self> {
        match self.canonicalize(kac)? {
            Sl2Label::EMinus { ell, r, s } => Ok(Sl2Label::EPlus { ell, r: kac.u - r, s: kac.v - s }),
            other => Ok(other),
        }
    }

    pub fn ell(&self) -> i64 {
        match *self {
            Sl2Label::Std { ell, .. }
            | Sl2Label::EPlus { ell, .. }
            | Sl2Label::EMinus { ell, .. }
            | Sl2Label::DPlus { ell, .. }
            | Sl2Label::DMinus { ell, .. }
            | Sl2Label::L { ell, .. }
            | Sl2Label::Stag { ell, .. } => ell,
        }
    }

    /// The same module with the flow index moved by `d`.
    pub fn flowed(&self, d: i64) -> Self {
        let mut x = *self;
        match &mut x {
            Sl2Label::Std { ell, .. }
            | Sl2Label::EPlus { ell, .. }
            | Sl2Label::EMinus { ell, .. }
            | Sl2Label::DPlus { ell, .. }
            | Sl2Label::DMinus { ell, .. }
            | Sl2Label::L { ell, .. }
            | Sl2Label::Stag { ell, .. } => *ell += d,
        }
        x
    }

    /// sl2 weight λ (mod 2) and Kac pair of a standard label.
    pub fn standard_data(&self, kac: &Kac) -> Option<(i64, T, i64, i64)> {
        match *self {
            Sl2Label::Std { ell, lambda, r, s } => Some((ell, lambda, r, s)),
            Sl2Label::EPlus { ell, r, s } => Some((ell, Self::atypical_weight(kac, r, s), r, s)),
            Sl2Label::EMinus { ell, r, s } => Some((ell, Self::atypical_weight(kac, kac.u - r, kac.v - s), r, s)),
            _ => None,
        }
    }

    pub fn is_standard(&self) -> bool {
        matches!(self, Sl2Label::Std { .. } | Sl2Label::EPlus { .. } | Sl2Label::EMinus { .. })
    }

    pub fn is_simple_atypical(&self) -> bool {
        matches!(self, Sl2Label::DPlus { .. } | Sl2Label::DMinus { .. } | Sl2Label::L { .. })
    }

    /// Twist by the Chevalley involution ω.
    pub fn omega(&self, kac: &Kac) -> Result<Self> {
        Ok(match *self {
            Sl2Label::Std { ell, lambda, r, s } => Self::standard(kac, -ell, -lambda, r, s)?,
            Sl2Label::EPlus { ell, r, s } => Sl2Label::EMinus { ell: -ell, r, s },
            Sl2Label::EMinus { ell, r, s } => Sl2Label::EPlus { ell: -ell, r, s },
            Sl2Label::DPlus { ell, r, s } => Sl2Label::DMinus { ell: -ell, r, s },
            Sl2Label::DMinus { ell, r, s } => Sl2Label::DPlus { ell: -ell, r, s },
            Sl2Label::L { ell, r } => Sl2Label::L { ell: -ell, r },
            Sl2Label::Stag { .. } => return Err(Error::Unsupported("omega twist of a staggered module".into())),
        })
    }

    pub fn parse(kac: &Kac, text: &str) -> Result<Self> {
        let (name, f) = parse_bracket(text)?;
        let ell = int_field(&f, "l")?;
        let rs = || -> Result<(i64, i64)> { Ok((int_field(&f, "r")?, int_field(&f, "s")?)) };
        let label = match name.as_str() {
            "E" => {
                let (r, s) = rs()?;
                Sl2Label::Std { ell, lambda: real_field(&f, "lam")?, r, s }
            }
            "E+" => {
                let (r, s) = rs()?;
                Sl2Label::EPlus { ell, r, s }
            }
            "E-" => {
                let (r, s) = rs()?;
                Sl2Label::EMinus { ell, r, s }
            }
            "D+" => {
                let (r, s) = rs()?;
                Sl2Label::DPlus { ell, r, s }
            }
            "D-" => {
                let (r, s) = rs()?;
                Sl2Label::DMinus { ell, r, s }
            }
            "L" => Sl2Label::L { ell, r: int_field(&f, "r")? },
            "S" => {
                let (r, s) = rs()?;
                Sl2Label::Stag { ell, r, s }
            }
            _ => return Err(Error::Parse(format!("unknown sl2 label {text:?}"))),
        };
        label.canonicalize(kac)
    }

    fn kind(&self) -> u8 {
        match self {
            Sl2Label::Std { .. } => 0,
            Sl2Label::EPlus { .. } => 1,
            Sl2Label::EMinus { .. } => 2,
            Sl2Label::DPlus { .. } => 3,
            Sl2Label::DMinus { .. } => 4,
            Sl2Label::L { .. } => 5,
            Sl2Label::Stag { .. } => 6,
        }
    }

    fn rs(&self) -> (i64, i64) {
        match *self {
            Sl2Label::Std { r, s, .. }
            | Sl2Label::EPlus { r, s, .. }
            | Sl2Label::EMinus { r, s, .. }
            | Sl2Label::DPlus { r, s, .. }
            | Sl2Label::DMinus { r, s, .. }
            | Sl2Label::Stag { r, s, .. } => (r, s),
            Sl2Label::L { r, .. } => (r, 0),
        }
    }
}

impl<T: Real> fmt::Display for Sl2Label<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sl2Label::Std { ell, lambda, r, s } => {
                write!(f, "E[l={ell};lam={};r={r},s={s}]", fmt_real(lambda.f64()))
            }
            Sl2Label::EPlus { ell, r, s } => write!(f, "E+[l={ell};r={r},s={s}]"),
            Sl2Label::EMinus { ell, r, s } => write!(f, "E-[l={ell};r={r},s={s}]"),
            Sl2Label::DPlus { ell, r, s } => write!(f, "D+[l={ell};r={r},s={s}]"),
            Sl2Label::DMinus { ell, r, s } => write!(f, "D-[l={ell};r={r},s={s}]"),
            Sl2Label::L { ell, r } => write!(f, "L[l={ell};r={r}]"),
            Sl2Label::Stag { ell, r, s } => write!(f, "S[l={ell};r={r},s={s}]"),
        }
    }
}

impl<T: Real> ClassLabel for Sl2Label<T> {
    fn same_class(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Sl2Label::Std { ell: a, lambda: x, r: r1, s: s1 },
                Sl2Label::Std { ell: b, lambda: y, r: r2, s: s2 },
            ) => a == b && r1 == r2 && s1 == s2 && dist_mod(*x, *y, T::n(2)) < weight_tol::<T>() * T::c(16.0),
            _ => self.kind() == other.kind() && self.ell() == other.ell() && self.rs() == other.rs(),
        }
    }
    fn order(&self, other: &Self) -> Ordering {
        self.kind()
            .cmp(&other.kind())
            .then(self.ell().cmp(&other.ell()))
            .then(self.rs().1.cmp(&other.rs().1))
            .then(self.rs().0.cmp(&other.rs().0))
            .then_with(|| match (self, other) {
                (Sl2Label::Std { lambda: x, .. }, Sl2Label::Std { lambda: y, .. }) => cmp_real(*x, *y),
                _ => Ordering::Equal,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(u: i64, v: i64) -> Kac {
        Kac::new(u, v).unwrap()
    }

    #[test]
    fn d_plus_rewriting() {
        let k = th(3, 2);
        let d = Sl2Label::<f64>::DPlus { ell: 0, r: 1, s: 1 }.canonicalize(&k).unwrap();
        assert_eq!(d, Sl2Label::DMinus { ell: 2, r: 1, s: 1 });
        let k = th(4, 3);
        let d = Sl2Label::<f64>::DPlus { ell: 0, r: 1, s: 1 }.canonicalize(&k).unwrap();
        assert_eq!(d, Sl2Label::DMinus { ell: 1, r: 3, s: 1 });
        let l = Sl2Label::<f64>::L { ell: 0, r: 1 }.canonicalize(&k).unwrap();
        assert_eq!(l, Sl2Label::vacuum(&k));
    }

    #[test]
    fn d_plus_form_round_trip() {
        for (u, v) in [(3, 2), (5, 2), (4, 3), (5, 3)] {
            let k = th(u, v);
            for ell in -3..4 {
                for r in 1..u {
                    for s in 1..v {
                        let d = Sl2Label::<f64>::DMinus { ell, r, s };
                        let (l2, r2, s2) = d.as_d_plus(&k).unwrap();
                        let back = Sl2Label::<f64>::DPlus { ell: l2, r: r2, s: s2 }.canonicalize(&k).unwrap();
                        assert_eq!(back, d);
                    }
                }
            }
        }
    }

    #[test]
    fn standard_snaps_to_e_plus() {
        let k = th(3, 2);
        let e = Sl2Label::<f64>::standard(&k, 0, -1.5, 1, 1).unwrap();
        assert_eq!(e, Sl2Label::EPlus { ell: 0, r: 1, s: 1 });
        // λ_{2,1} = −1/2 ≡ 3/2
        let e = Sl2Label::<f64>::standard(&k, 0, 1.5 + 1e-13, 1, 1).unwrap();
        assert_eq!(e, Sl2Label::EPlus { ell: 0, r: 2, s: 1 });
        let g = Sl2Label::<f64>::standard(&k, 0, 2.31, 2, 1).unwrap();
        match g {
            Sl2Label::Std { lambda, r, s, .. } => {
                assert!((lambda - 0.31).abs() < 1e-12);
                assert_eq!((r, s), (1, 1));
            }
            _ => panic!("expected generic standard"),
        }
    }

    #[test]
    fn text_round_trip() {
        let k = th(5, 3);
        for t in [
            "E[l=1;lam=0.25;r=2,s=1]",
            "D-[l=0;r=1,s=1]",
            "E+[l=-2;r=3,s=2]",
            "E-[l=1;r=1,s=1]",
            "S[l=0;r=1,s=2]",
        ] {
            assert_eq!(Sl2Label::<f64>::parse(&k, t).unwrap().to_string(), t);
        }
        assert_eq!(Sl2Label::<f64>::parse(&k, "L[l=0;r=1]").unwrap().to_string(), "D-[l=1;r=4,s=2]");
        assert!(Sl2Label::<f64>::parse(&k, "D-[l=0;r=5,s=1]").is_err());
        assert!(Sl2Label::<f64>::parse(&k, "Q[l=0;r=1,s=1]").is_err());
    }

    #[test]
    fn omega_is_involutive() {
        let k = th(5, 3);
        let xs = [
            Sl2Label::<f64>::standard(&k, 2, 0.37, 2, 1).unwrap(),
            Sl2Label::EPlus { ell: 1, r: 2, s: 2 },
            Sl2Label::DMinus { ell: -1, r: 3, s: 1 },
        ];
        for x in xs {
            let y = x.omega(&k).unwrap().omega(&k).unwrap();
            assert!(y.class_rep(&k).unwrap().same_class(&x.class_rep(&k).unwrap()));
        }
    }
}
