//! L_k(sl2) at admissible level k = −2 + u/v: spectral flow, exact
//! sequences of E⁺, resolutions of the simple atypicals, quantum dimensions
//! and Grothendieck and actual fusion.

mod fusion;
mod projective;

pub use fusion::{
    fuse, gr_fusion, gr_fusion_dplus_dplus, gr_fusion_standard, gr_fusion_vectors, gr_fusion_with_dplus, omega_class,
    omega_vector, FusionReport,
};
pub use projective::{grothendieck_image, projective_lift, staggered_partner, ProjectiveObject};

use num_complex::Complex;
use serde::Serialize;

use crate::labels::{GrothendieckVector, MinimalLabel, Sl2Label};
use crate::resolution::{closed_form, LabelShift, PeriodicResolution, QEvaluation, StandardTerm};
use crate::scalar::{expi_pi, SpectralPoint, Tolerance};
use crate::semisimple::{pi0_qdim_raw, vir_s};
use crate::theory::Kac;
use crate::{Error, Real, Result};

/// Spectral flow σ^d per period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlowShift {
    pub d: i64,
}

impl<T: Real> LabelShift<Sl2Label<T>> for FlowShift {
    fn apply(&self, label: &Sl2Label<T>, times: i64) -> Result<Sl2Label<T>> {
        Ok(label.flowed(self.d * times))
    }
}

pub type Sl2Resolution<T> = PeriodicResolution<Sl2Label<T>, FlowShift, T>;

/// ρ orientation recorded with serialized sl2 resolutions.
pub const RHO_CONVENTION: &str = "rho = +l (spectral-flow index), so resolutions are strictly increasing";

/// The short exact sequence with middle term σ^ℓE⁺_{r,s}: (sub, mid, quot).
pub fn ses_eplus<T: Real>(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<(Sl2Label<T>, Sl2Label<T>, Sl2Label<T>)> {
    let (u, v) = (kac.u, kac.v);
    let mid = Sl2Label::e_plus(kac, ell, r, s)?;
    if s != v - 1 {
        Ok((Sl2Label::d_minus(kac, ell + 1, u - r, v - s - 1)?, mid, Sl2Label::d_minus(kac, ell, u - r, v - s)?))
    } else {
        Ok((Sl2Label::d_minus(kac, ell + 2, r, v - 1)?, mid, Sl2Label::d_minus(kac, ell, u - r, 1)?))
    }
}

fn term<T: Real>(label: Sl2Label<T>) -> StandardTerm<Sl2Label<T>, T> {
    let d = T::n(label.ell());
    StandardTerm::new(label, d)
}

/// Periodic E⁺ resolution of σ^ℓD⁻_{r,s}, spliced from the E⁺ sequences:
/// 2(v−1) slots per period, spectral flow and ρ-degree +2v per period.
pub fn resolution_of_d_minus<T: Real>(kac: &Kac, ell: i64, r: i64, s: i64) -> Result<Sl2Resolution<T>> {
    kac.check(r, s)?;
    let (u, v) = (kac.u, kac.v);
    let mut block = Vec::with_capacity(2 * (v as usize - 1));
    let (mut l, mut rr, mut ss) = (ell, r, s);
    for _ in 0..2 * (v - 1) {
        block.push(vec![term(Sl2Label::EPlus { ell: l, r: u - rr, s: v - ss })]);
        if ss != 1 {
            l += 1;
            ss -= 1;
        } else {
            l += 2;
            rr = u - rr;
            ss = v - 1;
        }
    }
    Ok(PeriodicResolution::periodic(Vec::new(), block, T::n(2 * v), FlowShift { d: 2 * v })?.with_note(RHO_CONVENTION))
}

/// Resolution of σ^ℓL_{r,0} = σ^{ℓ+1}D⁻_{u−r,v−1}: slots σ^{ℓ+s}E⁺_{r,s}, then σ^{ℓ+v+s}E⁺_{u−r,s}.
pub fn resolution_of_l<T: Real>(kac: &Kac, ell: i64, r: i64) -> Result<Sl2Resolution<T>> {
    if !(1..kac.u).contains(&r) {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..{}", kac.u - 1)));
    }
    resolution_of_d_minus(kac, ell + 1, kac.u - r, kac.v - 1)
}

fn sl2_point<T: Real>(kac: &Kac, sp: &SpectralPoint<T>) -> Result<(i64, T, i64, i64)> {
    match *sp {
        SpectralPoint::Sl2 { ell, lambda, r, s } => {
            kac.check(r, s)?;
            Ok((ell, lambda, r, s))
        }
        _ => Err(Error::Precondition("sl2 quantum dimensions need an sl2 spectral point".into())),
    }
}

/// S^Vir_{(r,s)(r',s')}/S^Vir_{(1,1)(r',s')} for any integer (r,s).
fn vir_ratio<T: Real>(kac: &Kac, r: i64, s: i64, rp: i64, sp: i64) -> T {
    let d = MinimalLabel { r: rp, s: sp };
    vir_s::<T>(kac, &MinimalLabel { r, s }, &d) / vir_s::<T>(kac, &MinimalLabel::vacuum(), &d)
}

/// q^A of σ^ℓE_{λ;Δ_{r,s}}: the Π(0) character of Π_{−ℓ−1}((k−λ)/2) at
/// Π_{−ℓ'−1}((k−λ')/2) times the Virasoro ratio.
pub fn qdim_standard_a<T: Real>(kac: &Kac, label: &Sl2Label<T>, sp: &SpectralPoint<T>) -> Result<Complex<T>> {
    let (ell, lambda, r, s) = label
        .standard_data(kac)
        .ok_or_else(|| Error::Precondition(format!("{label} is not a standard module")))?;
    let (lp, lamp, rp, spp) = sl2_point(kac, sp)?;
    let k = kac.k_real::<T>();
    let half = T::c(0.5);
    let pi = pi0_qdim_raw(kac, -ell - 1, (k - lambda) * half, -lp - 1, (k - lamp) * half);
    Ok(pi * vir_ratio::<T>(kac, r, s, rp, spp))
}

/// 2cos(πλ') + 2(−1)^{r'}cos(kπs'), guarded against zero.
fn vacuum_denominator<T: Real>(kac: &Kac, lamp: T, rp: i64, sp: i64, tol: &Tolerance<T>) -> Result<T> {
    let sign = if rp % 2 == 0 { T::one() } else { -T::one() };
    let d = T::n(2) * (T::PI() * lamp).cos() + T::n(2) * sign * (kac.k_real::<T>() * T::PI() * T::n(sp)).cos();
    if d.abs() < tol.eps_exclusion {
        return Err(Error::ExceptionalPoint(format!("vacuum denominator vanishes at lambda' = {lamp}")));
    }
    Ok(d)
}

/// Closed form of q^A_{σ^ℓL_{r,0}}(ℓ',λ',r',s').
pub fn qdim_l_closed<T: Real>(kac: &Kac, ell: i64, r: i64, sp: &SpectralPoint<T>, tol: &Tolerance<T>) -> Result<Complex<T>> {
    if !(1..kac.u).contains(&r) {
        return Err(Error::OutOfRange(format!("r = {r} outside 1..{}", kac.u - 1)));
    }
    let (lp, lamp, rp, spp) = sl2_point(kac, sp)?;
    let d = vacuum_denominator(kac, lamp, rp, spp, tol)?;
    let k = kac.k_real::<T>();
    // σ^ℓ contributes e^{−iπ(kℓℓ'+λ'ℓ)}
    let flow = expi_pi(-(k * T::n(ell * lp) + lamp * T::n(ell)));
    let phase = expi_pi(-(lamp + T::n(lp * (r - 1))));
    Ok(flow * phase * vir_ratio::<T>(kac, r, 1, rp, spp) / d)
}

/// q^A_V of the vacuum module.
pub fn qdim_vacuum_a<T: Real>(kac: &Kac, sp: &SpectralPoint<T>, tol: &Tolerance<T>) -> Result<Complex<T>> {
    qdim_l_closed(kac, 0, 1, sp, tol)
}

/// Closed rational form of the q^A series of a resolution.
pub fn resolution_closed_form<T: Real>(kac: &Kac, res: &Sl2Resolution<T>, sp: &SpectralPoint<T>) -> Result<QEvaluation<T>> {
    let eval = |l: &Sl2Label<T>, p: &SpectralPoint<T>| qdim_standard_a(kac, l, p);
    closed_form(res, &eval, sp)
}

/// Unnormalized q^A of any label. Simple atypicals go through their
/// resolution, whose closed form is continuous at t = z = 1.
pub fn qdim_a<T: Real>(kac: &Kac, label: &Sl2Label<T>, sp: &SpectralPoint<T>, tol: &Tolerance<T>) -> Result<Complex<T>> {
    match label.canonicalize(kac)? {
        x @ (Sl2Label::Std { .. } | Sl2Label::EPlus { .. } | Sl2Label::EMinus { .. }) => qdim_standard_a(kac, &x, sp),
        Sl2Label::DMinus { ell, r, s } => {
            let res = resolution_of_d_minus(kac, ell, r, s)?;
            resolution_closed_form(kac, &res, sp)?.value_at_one(tol)
        }
        x @ Sl2Label::Stag { .. } => {
            let p = ProjectiveObject::from_label(kac, &x)?;
            qdim_a_vector(kac, &p.grothendieck_image(kac)?, sp, tol)
        }
        other => Err(Error::Precondition(format!("{other} did not canonicalize"))),
    }
}

/// Σ c·q^A over a Grothendieck vector.
pub fn qdim_a_vector<T: Real>(
    kac: &Kac,
    vec: &GrothendieckVector<Sl2Label<T>>,
    sp: &SpectralPoint<T>,
    tol: &Tolerance<T>,
) -> Result<Complex<T>> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for (l, c) in vec.terms() {
        acc = acc + qdim_a(kac, l, sp, tol)? * T::n(*c);
    }
    Ok(acc)
}

/// Vacuum-normalized quantum dimension q_X = q^A_X/q^A_V.
pub fn qdim<T: Real>(kac: &Kac, label: &Sl2Label<T>, sp: &SpectralPoint<T>, tol: &Tolerance<T>) -> Result<Complex<T>> {
    Ok(qdim_a(kac, label, sp, tol)? / qdim_vacuum_a(kac, sp, tol)?)
}
