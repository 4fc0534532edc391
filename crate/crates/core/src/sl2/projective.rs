use std::fmt;

use serde::{Deserialize, Serialize};

use crate::labels::{ClassLabel, GrothendieckVector, Sl2Label};
use crate::theory::Kac;
use crate::{Error, Real, Result};

/// Indecomposable projective: a generic standard or a staggered σ^ℓS_{r,s}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProjectiveObject<T> {
    Standard { ell: i64, lambda: T, r: i64, s: i64 },
    Staggered { ell: i64, r: i64, s: i64 },
}

/// The E⁺ glued above σ^ℓE⁺_{r,s} in σ^ℓS_{r,s}.
pub fn staggered_partner<T: Real>(kac: &Kac, ell: i64, r: i64, s: i64) -> Sl2Label<T> {
    if s != kac.v - 1 {
        Sl2Label::EPlus { ell: ell + 1, r, s: s + 1 }
    } else {
        Sl2Label::EPlus { ell: ell + 2, r: kac.u - r, s: 1 }
    }
}

impl<T: Real> ProjectiveObject<T> {
    pub fn standard(kac: &Kac, ell: i64, lambda: T, r: i64, s: i64) -> Result<Self> {
        match Sl2Label::standard(kac, ell, lambda, r, s)? {
            Sl2Label::Std { ell, lambda, r, s } => Ok(ProjectiveObject::Standard { ell, lambda, r, s }),
            other => Err(Error::NotProjectiveClass(format!("{other} is not projective"))),
        }
    }

    pub fn staggered(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<Self> {
        kac.check(r, s)?;
        Ok(ProjectiveObject::Staggered { ell, r, s })
    }

    pub fn from_label(kac: &Kac, label: &Sl2Label<T>) -> Result<Self> {
        match label.canonicalize(kac)? {
            Sl2Label::Std { ell, lambda, r, s } => Ok(ProjectiveObject::Standard { ell, lambda, r, s }),
            Sl2Label::Stag { ell, r, s } => Ok(ProjectiveObject::Staggered { ell, r, s }),
            other => Err(Error::NotProjectiveClass(format!("{other} is not projective"))),
        }
    }

    pub fn label(&self) -> Sl2Label<T> {
        match *self {
            ProjectiveObject::Standard { ell, lambda, r, s } => Sl2Label::Std { ell, lambda, r, s },
            ProjectiveObject::Staggered { ell, r, s } => Sl2Label::Stag { ell, r, s },
        }
    }

    pub fn grothendieck_image(&self, kac: &Kac) -> Result<GrothendieckVector<Sl2Label<T>>> {
        Ok(match *self {
            ProjectiveObject::Standard { .. } => GrothendieckVector::single(self.label()),
            ProjectiveObject::Staggered { ell, r, s } => {
                kac.check(r, s)?;
                GrothendieckVector::from_terms([(Sl2Label::EPlus { ell, r, s }, 1), (staggered_partner(kac, ell, r, s), 1)])
            }
        })
    }
}

impl<T: Real> fmt::Display for ProjectiveObject<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label().fmt(f)
    }
}

/// Σ [P] over a multiset of projectives.
pub fn grothendieck_image<T: Real>(kac: &Kac, objects: &[ProjectiveObject<T>]) -> Result<GrothendieckVector<Sl2Label<T>>> {
    let mut v = GrothendieckVector::new();
    for p in objects {
        v.add(&p.grothendieck_image(kac)?);
    }
    Ok(v)
}

/// The projective object with the given Grothendieck class, as a sorted
/// multiset of indecomposables. E⁺ classes are paired bottom-up in ℓ.
pub fn projective_lift<T: Real>(kac: &Kac, vec: &GrothendieckVector<Sl2Label<T>>) -> Result<Vec<ProjectiveObject<T>>> {
    let mut out = Vec::new();
    let mut atyp: GrothendieckVector<Sl2Label<T>> = GrothendieckVector::new();
    for (label, c) in vec.terms() {
        if *c < 0 {
            return Err(Error::NotProjectiveClass(format!("negative coefficient {c} of {label}")));
        }
        match label.class_rep(kac)? {
            Sl2Label::Std { ell, lambda, r, s } => {
                out.extend(std::iter::repeat(ProjectiveObject::Standard { ell, lambda, r, s }).take(*c as usize))
            }
            e @ Sl2Label::EPlus { .. } => atyp.add_term(e, *c),
            Sl2Label::Stag { ell, r, s } => {
                out.extend(std::iter::repeat(ProjectiveObject::Staggered { ell, r, s }).take(*c as usize))
            }
            other => return Err(Error::NotProjectiveClass(format!("{other} has no projective lift"))),
        }
    }
    while let Some((bottom, c)) = atyp
        .terms()
        .iter()
        .filter(|(_, c)| *c > 0)
        .min_by_key(|(l, _)| l.ell())
        .cloned()
    {
        let Sl2Label::EPlus { ell, r, s } = bottom else { unreachable!() };
        let top = staggered_partner::<T>(kac, ell, r, s);
        let have = atyp.coefficient(&top);
        if have < c {
            return Err(Error::NotProjectiveClass(format!("{bottom} is not matched by {top}: remainder {atyp}")));
        }
        atyp.add_term(bottom, -c);
        atyp.add_term(top, -c);
        out.extend(std::iter::repeat(ProjectiveObject::Staggered { ell, r, s }).take(c as usize));
    }
    if !atyp.is_zero() {
        return Err(Error::NotProjectiveClass(format!("unmatched remainder {atyp}")));
    }
    out.sort_by(|a, b| a.label().order(&b.label()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_standard_lifts_to_itself() {
        let k = Kac::new(3, 2).unwrap();
        let e = Sl2Label::<f64>::standard(&k, 0, 0.3, 1, 1).unwrap();
        let p = projective_lift(&k, &GrothendieckVector::single(e)).unwrap();
        assert_eq!(p, vec![ProjectiveObject::Standard { ell: 0, lambda: 0.3, r: 1, s: 1 }]);
    }

    #[test]
    fn staggered_round_trip() {
        let k = Kac::new(3, 2).unwrap();
        let s = ProjectiveObject::<f64>::staggered(&k, 0, 1, 1).unwrap();
        let img = s.grothendieck_image(&k).unwrap();
        assert_eq!(img.to_string(), "E+[l=0;r=1,s=1] + E+[l=2;r=2,s=1]");
        assert_eq!(projective_lift(&k, &img).unwrap(), vec![s]);
    }

    #[test]
    fn chains_pair_from_the_bottom() {
        let k = Kac::new(5, 3).unwrap();
        let objs = [
            ProjectiveObject::<f64>::Staggered { ell: 0, r: 1, s: 1 },
            ProjectiveObject::Staggered { ell: 1, r: 1, s: 2 },
            ProjectiveObject::Staggered { ell: 3, r: 4, s: 1 },
        ];
        let img = grothendieck_image(&k, &objs).unwrap();
        let mut back = projective_lift(&k, &img).unwrap();
        back.sort_by(|a, b| a.label().order(&b.label()));
        assert_eq!(back, objs.to_vec());
    }

    #[test]
    fn remainders_are_rejected() {
        let k = Kac::new(4, 3).unwrap();
        let lone = GrothendieckVector::<Sl2Label<f64>>::single(Sl2Label::EPlus { ell: 0, r: 1, s: 1 });
        assert!(matches!(projective_lift(&k, &lone), Err(Error::NotProjectiveClass(_))));
        let d = GrothendieckVector::<Sl2Label<f64>>::single(Sl2Label::DMinus { ell: 0, r: 1, s: 1 });
        assert!(matches!(projective_lift(&k, &d), Err(Error::NotProjectiveClass(_))));
        let neg = GrothendieckVector::from_terms([(Sl2Label::<f64>::standard(&k, 0, 0.3, 1, 1).unwrap(), -1)]);
        assert!(projective_lift(&k, &neg).is_err());
    }
}
