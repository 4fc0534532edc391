use serde::Serialize;

use crate::labels::{lambda_rs, ClassLabel, GrothendieckVector, Sl2Label};
use crate::semisimple::window;
use crate::theory::Kac;
use crate::{Error, Real, Result};

use super::projective::{grothendieck_image, projective_lift, ProjectiveObject};

type Vector<T> = GrothendieckVector<Sl2Label<T>>;

/// Raw Virasoro window N^{(r'',s'')}_{(r,s)(r',s')}; 0 outside the Kac table.
fn ncoef(kac: &Kac, a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    window(kac.u, a.0, b.0, c.0) * window(kac.v, a.1, b.1, c.1)
}

fn kac_pairs(kac: &Kac) -> impl Iterator<Item = (i64, i64)> + '_ {
    (1..kac.v).flat_map(move |s| (1..kac.u).map(move |r| (r, s)))
}

fn lam<T: Real>(kac: &Kac, r: i64, s: i64) -> T {
    T::q(lambda_rs(kac.u, kac.v, r, s))
}

fn standard_of<T: Real>(kac: &Kac, x: &Sl2Label<T>) -> Result<(i64, T, i64, i64)> {
    x.class_rep(kac)?
        .standard_data(kac)
        .ok_or_else(|| Error::Precondition(format!("{x} is not a standard module")))
}

/// [σ^ℓE_{λ;Δ_{r,s}}] × [σ^{ℓ'}E_{λ';Δ_{r',s'}}] as the three displayed families.
pub fn gr_fusion_standard<T: Real>(kac: &Kac, x: &Sl2Label<T>, y: &Sl2Label<T>) -> Result<Vector<T>> {
    let (l1, a, r1, s1) = standard_of(kac, x)?;
    let (l2, b, r2, s2) = standard_of(kac, y)?;
    let k = kac.k_real::<T>();
    let mut out = Vector::new();
    for (r, s) in kac_pairs(kac) {
        let n = ncoef(kac, (r1, s1), (r2, s2), (r, s));
        if n != 0 {
            out.add_term(Sl2Label::standard(kac, l1 + l2 + 1, a + b - k, r, s)?, n);
            out.add_term(Sl2Label::standard(kac, l1 + l2 - 1, a + b + k, r, s)?, n);
        }
        let m = ncoef(kac, (r1, s1), (r2, s2 - 1), (r, s)) + ncoef(kac, (r1, s1), (r2, s2 + 1), (r, s));
        if m != 0 {
            out.add_term(Sl2Label::standard(kac, l1 + l2, a + b, r, s)?, m);
        }
    }
    Ok(out)
}

/// [σ^ℓE_{λ;Δ_{r,s}}] × [σ^{ℓ'}D⁺_{r',s'}], the D⁺ given as (ℓ', r', s').
pub fn gr_fusion_with_dplus<T: Real>(kac: &Kac, x: &Sl2Label<T>, d: (i64, i64, i64)) -> Result<Vector<T>> {
    let (l1, a, r1, s1) = standard_of(kac, x)?;
    let (l2, r2, s2) = d;
    kac.check(r2, s2)?;
    let mut out = Vector::new();
    for (r, s) in kac_pairs(kac) {
        let n = ncoef(kac, (r1, s1), (r2, s2 + 1), (r, s));
        if n != 0 {
            out.add_term(Sl2Label::standard(kac, l1 + l2, a + lam::<T>(kac, r2, s2), r, s)?, n);
        }
        let m = ncoef(kac, (r1, s1), (r2, s2), (r, s));
        if m != 0 {
            out.add_term(Sl2Label::standard(kac, l1 + l2 + 1, a + lam::<T>(kac, r2, s2 + 1), r, s)?, m);
        }
    }
    Ok(out)
}

/// [σ^ℓD⁺_{r,s}] × [σ^{ℓ'}D⁺_{r',s'}] with the split at s + s' = v.
pub fn gr_fusion_dplus_dplus<T: Real>(kac: &Kac, x: (i64, i64, i64), y: (i64, i64, i64)) -> Result<Vector<T>> {
    let (l1, r1, s1) = x;
    let (l2, r2, s2) = y;
    kac.check(r1, s1)?;
    kac.check(r2, s2)?;
    let (u, v) = (kac.u, kac.v);
    let low = s1 + s2 < v;
    let (a, b) = if low { ((r1, s1), (r2, s2)) } else { ((r1, s1 + 1), (r2, s2 + 1)) };
    let mut out = Vector::new();
    for (r, s) in kac_pairs(kac) {
        let n = ncoef(kac, a, b, (r, s));
        if n != 0 {
            out.add_term(Sl2Label::standard(kac, l1 + l2 + 1, lam::<T>(kac, r, s1 + s2 + 1), r, s)?, n);
        }
    }
    for r in 1..u {
        let n = window(u, r1, r2, r);
        if n == 0 {
            continue;
        }
        let d = if low {
            Sl2Label::DPlus { ell: l1 + l2, r, s: s1 + s2 }
        } else {
            Sl2Label::DPlus { ell: l1 + l2 + 1, r: u - r, s: s1 + s2 - v + 1 }
        };
        out.add_term(d.canonicalize(kac)?, n);
    }
    Ok(out)
}

/// Grothendieck product of two classes. Staggered classes are expanded.
pub fn gr_fusion<T: Real>(kac: &Kac, x: &Sl2Label<T>, y: &Sl2Label<T>) -> Result<Vector<T>> {
    let x = x.class_rep(kac)?;
    let y = y.class_rep(kac)?;
    if matches!(x, Sl2Label::Stag { .. }) || matches!(y, Sl2Label::Stag { .. }) {
        return gr_fusion_vectors(kac, &class_vector(kac, &x)?, &class_vector(kac, &y)?);
    }
    match (x.is_standard(), y.is_standard()) {
        (true, true) => gr_fusion_standard(kac, &x, &y),
        (true, false) => gr_fusion_with_dplus(kac, &x, y.as_d_plus(kac)?),
        (false, true) => gr_fusion_with_dplus(kac, &y, x.as_d_plus(kac)?),
        (false, false) => gr_fusion_dplus_dplus(kac, x.as_d_plus(kac)?, y.as_d_plus(kac)?),
    }
}

/// Class of a single label in the basis of standards and simple atypicals.
fn class_vector<T: Real>(kac: &Kac, x: &Sl2Label<T>) -> Result<Vector<T>> {
    match x.class_rep(kac)? {
        s @ Sl2Label::Stag { .. } => ProjectiveObject::from_label(kac, &s)?.grothendieck_image(kac),
        other => Ok(Vector::single(other)),
    }
}

/// Bilinear extension of [`gr_fusion`].
pub fn gr_fusion_vectors<T: Real>(kac: &Kac, a: &Vector<T>, b: &Vector<T>) -> Result<Vector<T>> {
    let mut out = Vector::new();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            out.add_scaled(&gr_fusion(kac, x, y)?, c * d);
        }
    }
    Ok(out)
}

/// ω-twist of a class.
pub fn omega_class<T: Real>(kac: &Kac, x: &Sl2Label<T>) -> Result<Sl2Label<T>> {
    x.omega(kac)?.class_rep(kac)
}

pub fn omega_vector<T: Real>(kac: &Kac, v: &Vector<T>) -> Result<Vector<T>> {
    v.flat_map(|x| Ok(Vector::single(omega_class(kac, x)?)))
}

/// An actual fusion product and its Grothendieck image.
#[derive(Clone, Debug, Serialize)]
pub struct FusionReport<T> {
    /// which rule produced the summands: vacuum, projective or discrete
    pub rule: &'static str,
    pub summands: Vec<(Sl2Label<T>, i64)>,
    #[serde(skip)]
    pub grothendieck: Vector<T>,
}

impl<T: Real> FusionReport<T> {
    pub fn summands_text(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands
            .iter()
            .map(|(l, n)| if *n == 1 { l.to_string() } else { format!("{n}*{l}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn is_projective<T: Real>(x: &Sl2Label<T>) -> bool {
    matches!(x, Sl2Label::Std { .. } | Sl2Label::Stag { .. })
}

/// X ⊗ Y for simple or projective X, Y. Pairs whose product the fusion
/// rules do not determine as a module are reported as Unsupported.
pub fn fuse<T: Real>(kac: &Kac, x: &Sl2Label<T>, y: &Sl2Label<T>) -> Result<FusionReport<T>> {
    let x = x.canonicalize(kac)?;
    let y = y.canonicalize(kac)?;
    let vac = Sl2Label::vacuum(kac);
    for (a, b) in [(x, y), (y, x)] {
        if a == vac {
            return Ok(FusionReport { rule: "vacuum", summands: vec![(b, 1)], grothendieck: class_vector(kac, &b)? });
        }
    }
    let gr = gr_fusion(kac, &x, &y)?;
    let mixed_e = matches!((x, y), (Sl2Label::EPlus { .. }, Sl2Label::EMinus { .. }) | (Sl2Label::EMinus { .. }, Sl2Label::EPlus { .. }));
    if is_projective(&x) || is_projective(&y) || mixed_e {
        let objs = projective_lift(kac, &gr).map_err(|e| Error::FusionUndecomposable(e.to_string()))?;
        if grothendieck_image(kac, &objs)? != gr {
            return Err(Error::FusionUndecomposable(format!("lift of {gr} does not reproduce it")));
        }
        let mut summands: Vec<(Sl2Label<T>, i64)> = Vec::new();
        for p in objs {
            let l = p.label();
            match summands.last_mut() {
                Some((m, n)) if m.same_class(&l) => *n += 1,
                _ => summands.push((l, 1)),
            }
        }
        return Ok(FusionReport { rule: "projective", summands, grothendieck: gr });
    }
    if x.is_simple_atypical() && y.is_simple_atypical() {
        let mut summands = Vec::new();
        for (l, n) in gr.terms() {
            if matches!(l, Sl2Label::EPlus { .. } | Sl2Label::EMinus { .. }) {
                return Err(Error::Unsupported(format!("{x} x {y}: summand {l} is not simple projective")));
            }
            summands.push((*l, *n));
        }
        return Ok(FusionReport { rule: "discrete", summands, grothendieck: gr });
    }
    Err(Error::Unsupported(format!("module-level product {x} x {y}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{sample_points, SpectralPoint, Tolerance};
    use crate::sl2::{qdim_a, qdim_a_vector, qdim_vacuum_a};
    use crate::theory::TheoryConfig;
    use num_complex::Complex;

    fn kac(u: i64, v: i64) -> Kac {
        Kac::new(u, v).unwrap()
    }

    fn std(k: &Kac, ell: i64, lambda: f64, r: i64, s: i64) -> Sl2Label<f64> {
        Sl2Label::standard(k, ell, lambda, r, s).unwrap()
    }

    fn homomorphic(k: &Kac, x: &Sl2Label<f64>, y: &Sl2Label<f64>, v: &Vector<f64>) -> f64 {
        let tol = Tolerance::default();
        let mut worst = 0.0f64;
        for sp in sample_points::<f64>(&TheoryConfig::Sl2(*k), 6, 11).unwrap() {
            let lhs = qdim_a_vector(k, v, &sp, &tol).unwrap();
            let rhs: Complex<f64> =
                qdim_a(k, x, &sp, &tol).unwrap() * qdim_a(k, y, &sp, &tol).unwrap() / qdim_vacuum_a(k, &sp, &tol).unwrap();
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
        worst
    }

    #[test]
    fn generic_product_has_two_summands() {
        let k = kac(3, 2);
        let x = std(&k, 0, 0.31, 1, 1);
        let y = std(&k, 0, 0.17, 1, 1);
        let v = gr_fusion(&k, &x, &y).unwrap();
        assert_eq!(v.len(), 2);
        // λ + λ' ∓ k with k = −1/2
        assert_eq!(v.to_string(), "E[l=-1;lam=1.98;r=1,s=1] + E[l=1;lam=0.98;r=1,s=1]");
        let rep = fuse(&k, &x, &y).unwrap();
        assert_eq!(rep.rule, "projective");
        assert_eq!(rep.summands.len(), 2);
        assert!(homomorphic(&k, &x, &y, &v) < 1e-9);
    }

    #[test]
    fn displayed_rules_are_homomorphic() {
        for (u, v) in [(3, 2), (5, 2), (4, 3), (5, 3)] {
            let k = kac(u, v);
            for (r1, s1, r2, s2) in [(1, 1, 1, 1), (u - 1, 1, 1, v - 1), (2, v - 1, u - 1, 1)] {
                let x = std(&k, 1, 0.23, r1, s1);
                let y = std(&k, -1, 0.71, r2, s2);
                assert!(homomorphic(&k, &x, &y, &gr_fusion(&k, &x, &y).unwrap()) < 1e-8);
                let d = Sl2Label::DPlus { ell: 1, r: r2, s: s2 }.canonicalize(&k).unwrap();
                assert!(homomorphic(&k, &x, &d, &gr_fusion(&k, &x, &d).unwrap()) < 1e-8);
                let e = Sl2Label::DPlus { ell: 0, r: r1, s: s1 }.canonicalize(&k).unwrap();
                assert!(homomorphic(&k, &e, &d, &gr_fusion(&k, &e, &d).unwrap()) < 1e-8);
                let p = Sl2Label::EPlus { ell: 0, r: r1, s: s1 };
                assert!(homomorphic(&k, &p, &y, &gr_fusion(&k, &p, &y).unwrap()) < 1e-8);
            }
        }
    }

    #[test]
    fn vacuum_is_a_unit_of_the_displayed_rules() {
        let k = kac(5, 3);
        let vac = Sl2Label::vacuum(&k);
        let xs = [std(&k, 2, 0.4, 2, 1), Sl2Label::DMinus { ell: -1, r: 3, s: 2 }, Sl2Label::EPlus { ell: 1, r: 4, s: 1 }];
        for x in xs {
            assert_eq!(gr_fusion(&k, &vac, &x).unwrap(), GrothendieckVector::single(x));
            assert_eq!(gr_fusion(&k, &x, &vac).unwrap(), GrothendieckVector::single(x));
            assert_eq!(fuse(&k, &x, &vac).unwrap().summands, vec![(x, 1)]);
        }
    }

    #[test]
    fn discrete_product_example() {
        let k = kac(3, 2);
        let d = Sl2Label::<f64>::DPlus { ell: 0, r: 1, s: 1 };
        let rep = fuse(&k, &d, &d).unwrap();
        assert_eq!(rep.rule, "discrete");
        assert_eq!(rep.grothendieck, gr_fusion(&k, &d, &d).unwrap());
        let e = Sl2Label::EPlus { ell: 0, r: 1, s: 1 };
        assert!(matches!(fuse(&k, &e, &e), Err(Error::Unsupported(_))));
        assert!(matches!(fuse(&k, &e, &d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn colliding_weights_give_staggered_modules() {
        // λ + λ' − k = λ_{1,1} while λ + λ' itself is generic
        let k = kac(3, 2);
        let target = Sl2Label::<f64>::atypical_weight(&k, 1, 1) + k.k_f64();
        let x = std(&k, 0, 0.4, 1, 1);
        let y = std(&k, 0, target - 0.4, 1, 1);
        let rep = fuse(&k, &x, &y).unwrap();
        assert!(rep.summands.iter().any(|(l, _)| matches!(l, Sl2Label::Stag { .. })), "{}", rep.summands_text());
        assert_eq!(grothendieck_image(&k, &projective_lift(&k, &rep.grothendieck).unwrap()).unwrap(), rep.grothendieck);
    }

    #[test]
    fn omega_commutes_with_products() {
        let k = kac(4, 3);
        let x = std(&k, 1, 0.3, 1, 2);
        let y = std(&k, 0, 0.55, 2, 1);
        let d = Sl2Label::DMinus { ell: 1, r: 1, s: 1 };
        for (a, b) in [(x, y), (x, d), (d, d)] {
            let lhs = gr_fusion(&k, &omega_class(&k, &a).unwrap(), &omega_class(&k, &b).unwrap()).unwrap();
            let rhs = omega_vector(&k, &gr_fusion(&k, &a, &b).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{a} x {b}");
        }
    }

    #[test]
    fn spectral_point_shape_is_checked() {
        let k = kac(3, 2);
        let bad = SpectralPoint::Real(0.3);
        assert!(qdim_a(&k, &std(&k, 0, 0.3, 1, 1), &bad, &Tolerance::default()).is_err());
    }
}
