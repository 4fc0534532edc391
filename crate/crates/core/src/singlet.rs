//! The singlet algebra M(p): exact sequences, Fock resolutions of the
//! atypical simples, closed-form quantum dimensions and sampled
//! Grothendieck decomposition.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use serde::Serialize;

use crate::labels::{ClassLabel, GrothendieckVector, SingletLabel};
use crate::resolution::{closed_form, double_limit, LabelShift, LimitOrder, PeriodicResolution, QdimFn, StandardTerm};
use crate::scalar::{expi_pi, round_to_integer, sample_points, trig_quotient, SpectralPoint, Tolerance};
use crate::semisimple::{heis_qdim, HeisenbergTheory};
use crate::theory::{SingletTheory, TheoryConfig};
use crate::{Error, Real, Result};

/// Fock weight translation by `delta` per period.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightShift<T> {
    pub p: i64,
    pub delta: T,
}

impl<T: Real + Serialize> LabelShift<SingletLabel<T>> for WeightShift<T> {
    fn apply(&self, label: &SingletLabel<T>, times: i64) -> Result<SingletLabel<T>> {
        let th = SingletTheory { p: self.p };
        label.shifted_weight(&th, self.delta * T::n(times))
    }
}

pub type SingletResolution<T> = PeriodicResolution<SingletLabel<T>, WeightShift<T>, T>;

/// 0 → M_{r−1,p−s} → F_{r−1,p−s} → M_{r,s} → 0.
pub fn ses_f<T: Real>(th: &SingletTheory, r: i64, s: i64) -> Result<(SingletLabel<T>, SingletLabel<T>, SingletLabel<T>)> {
    let p = th.p;
    Ok((
        SingletLabel::m(th, r - 1, p - s)?,
        SingletLabel::atypical(th, r - 1, p - s)?,
        SingletLabel::m(th, r, s)?,
    ))
}

/// 0 → M_{r,s} → F̄_{r,s} → M_{r−1,p−s} → 0.
pub fn ses_fbar<T: Real>(th: &SingletTheory, r: i64, s: i64) -> Result<(SingletLabel<T>, SingletLabel<T>, SingletLabel<T>)> {
    let p = th.p;
    Ok((SingletLabel::m(th, r, s)?, SingletLabel::fbar(th, r, s)?, SingletLabel::m(th, r - 1, p - s)?))
}

/// ρ-degree α₊λ of a Fock label (exact on the atypical lattice).
pub fn rho_degree<T: Real>(th: &SingletTheory, label: &SingletLabel<T>) -> Result<T> {
    match *label {
        SingletLabel::Frs { r, s } => Ok(T::n(th.rho_rs(r, s))),
        SingletLabel::F { lambda } => Ok(th.rho(lambda)),
        _ => Err(Error::Precondition(format!("{label} is not a basic standard module"))),
    }
}

fn term<T: Real>(th: &SingletTheory, label: SingletLabel<T>) -> Result<StandardTerm<SingletLabel<T>, T>> {
    let d = rho_degree(th, &label)?;
    Ok(StandardTerm::new(label, d))
}

fn shift<T: Real>(th: &SingletTheory) -> WeightShift<T> {
    WeightShift { p: th.p, delta: th.alpha_plus() }
}

/// ⋯ → F_{r−2,s} → F_{r−1,p−s} → M_{r,s}: block of length 2, weight +α₊ and
/// ρ-degree +2p per period.
pub fn resolution_of_m<T: Real + Serialize>(th: &SingletTheory, r: i64, s: i64) -> Result<SingletResolution<T>> {
    SingletLabel::<T>::m(th, r, s)?;
    let p = th.p;
    let block = vec![
        vec![term(th, SingletLabel::atypical(th, r - 1, p - s)?)?],
        vec![term(th, SingletLabel::atypical(th, r - 2, s)?)?],
    ];
    PeriodicResolution::periodic(Vec::new(), block, T::n(2 * p), shift(th))
}

/// The one-term resolution of a Fock module.
pub fn trivial_resolution<T: Real + Serialize>(th: &SingletTheory, label: SingletLabel<T>) -> Result<SingletResolution<T>> {
    PeriodicResolution::finite(vec![vec![term(th, label)?]])
}

/// Resolution of F_{r−1,p−s} obtained by adding the resolutions of M_{r,s}
/// and M_{r−1,p−s} slot by slot (the second is the first shifted by one step).
pub fn spliced_resolution_of_f<T: Real + Serialize>(th: &SingletTheory, r: i64, s: i64) -> Result<SingletResolution<T>> {
    SingletLabel::<T>::m(th, r, s)?;
    let p = th.p;
    let a0 = term(th, SingletLabel::atypical(th, r - 1, p - s)?)?;
    let a1 = term(th, SingletLabel::atypical(th, r - 2, s)?)?;
    let a2 = term(th, SingletLabel::atypical(th, r - 3, p - s)?)?;
    let block = vec![vec![a0, a1.clone()], vec![a1, a2]];
    PeriodicResolution::periodic(Vec::new(), block, T::n(2 * p), shift(th))
}

fn real_point<T: Real>(sp: &SpectralPoint<T>) -> Result<T> {
    match sp {
        SpectralPoint::Real(mu) => Ok(*mu),
        _ => Err(Error::Precondition("singlet quantum dimensions need a real spectral point".into())),
    }
}

/// q^A of a Fock module at μ + α₀/2: e^{−2πiλμ}.
pub fn qdim_a_fock<T: Real>(th: &SingletTheory, label: &SingletLabel<T>, sp: &SpectralPoint<T>) -> Result<Complex<T>> {
    let mu = real_point(sp)?;
    let lambda = label
        .weight(th)
        .ok_or_else(|| Error::Precondition(format!("{label} is not a Fock module")))?;
    Ok(expi_pi(-T::n(2) * lambda * mu))
}

/// ζ_μ = e^{−πiα₊μ}.
pub fn zeta<T: Real>(th: &SingletTheory, mu: T) -> Complex<T> {
    expi_pi(-th.alpha_plus::<T>() * mu)
}

fn zeta_pow<T: Real>(th: &SingletTheory, mu: T, x: T) -> Complex<T> {
    expi_pi(-th.alpha_plus::<T>() * mu * x)
}

fn check_mu<T: Real>(th: &SingletTheory, mu: T, tol: &Tolerance<T>) -> Result<()> {
    if (T::PI() * th.alpha_plus::<T>() * mu).sin().abs() < tol.eps_exclusion {
        return Err(Error::ExceptionalPoint(format!("mu = {mu} lies in (1/alpha_+)Z")));
    }
    Ok(())
}

/// Closed form q^A_{M_{r,s}} = −ζ^{2−r−1/p} sin(πsα₋μ)/sin(πα₊μ).
pub fn qdim_a_m<T: Real>(th: &SingletTheory, r: i64, s: i64, mu: T, tol: &Tolerance<T>) -> Result<Complex<T>> {
    check_mu(th, mu, tol)?;
    let p = T::n(th.p);
    let ratio = (T::PI() * T::n(s) * th.alpha_minus::<T>() * mu).sin() / (T::PI() * th.alpha_plus::<T>() * mu).sin();
    Ok(-zeta_pow(th, mu, T::n(2 - r) - T::one() / p) * ratio)
}

/// q_{F_λ}(μ) = −(sin(πα₊μ)/sin(πα₋μ))·e^{−2πiλμ}·ζ^{1/p−1}.
pub fn qdim_f<T: Real>(th: &SingletTheory, lambda: T, mu: T, tol: &Tolerance<T>) -> Result<Complex<T>> {
    check_mu(th, mu, tol)?;
    let am = th.alpha_minus::<T>();
    let d = (T::PI() * am * mu).sin();
    if d.abs() < tol.eps_exclusion {
        return Err(Error::ExceptionalPoint(format!("sin(pi alpha_- mu) vanishes at mu = {mu}")));
    }
    let ratio = -(T::PI() * th.alpha_plus::<T>() * mu).sin() / d;
    let p = T::n(th.p);
    Ok(expi_pi(-T::n(2) * lambda * mu) * zeta_pow(th, mu, T::one() / p - T::one()) * ratio)
}

/// q_{M_{r,s}}(μ) = sin(πsα₋μ)/sin(πα₋μ)·ζ^{1−r}.
pub fn qdim_m<T: Real>(th: &SingletTheory, r: i64, s: i64, mu: T, tol: &Tolerance<T>) -> Result<Complex<T>> {
    check_mu(th, mu, tol)?;
    let chi = trig_quotient(s, th.alpha_minus::<T>() * mu, tol)?;
    Ok(zeta_pow(th, mu, T::n(1 - r)) * chi)
}

/// Normalized quantum dimension of any singlet label.
pub fn qdim<T: Real>(th: &SingletTheory, label: &SingletLabel<T>, mu: T, tol: &Tolerance<T>) -> Result<Complex<T>> {
    match *label {
        SingletLabel::F { lambda } => qdim_f(th, lambda, mu, tol),
        SingletLabel::Frs { r, s } => qdim_f(th, th.alpha_rs(r, s), mu, tol),
        SingletLabel::M { r, s } => qdim_m(th, r, s, mu, tol),
        SingletLabel::Fbar { r, s } => qdim_f(th, th.alpha_rs(r - 1, th.p - s), mu, tol),
    }
}

/// Engine value of q^A via the closed form of a resolution at t = z = 1.
pub fn engine_qdim_a<T: Real + Serialize>(
    th: &SingletTheory,
    res: &SingletResolution<T>,
    mu: T,
    tol: &Tolerance<T>,
) -> Result<Complex<T>> {
    let eval = |l: &SingletLabel<T>, sp: &SpectralPoint<T>| qdim_a_fock(th, l, sp);
    let q = closed_form(res, &eval as &QdimFn<'_, _, _>, &SpectralPoint::Real(mu))?;
    double_limit(&q, LimitOrder::TThenZ, tol)
}

/// Composition factors of N = ℱ(F_{1,1}) as Heisenberg weights: 0, α₋, …, (p−1)α₋.
pub fn n_composition_weights<T: Real>(th: &SingletTheory) -> Vec<T> {
    (0..th.p).map(|j| T::n(j) * th.alpha_minus::<T>()).collect()
}

/// q^A_N assembled from Heisenberg characters at μ + α₀/2.
pub fn qdim_a_n<T: Real>(th: &SingletTheory, mu: T) -> Result<Complex<T>> {
    let half = T::c(0.5) * th.alpha_zero::<T>();
    let heis = HeisenbergTheory::new(vec![T::one()], vec![-half])?;
    let mut acc = Complex::new(T::zero(), T::zero());
    for w in n_composition_weights::<T>(th) {
        acc = acc + heis_qdim(&heis, &[w], &[mu + half])?;
    }
    Ok(acc)
}

/// F_λ ⊗ F_μ = Σ_{j<p} F_{λ+μ+jα₋} in the Grothendieck group.
pub fn standard_fusion<T: Real>(th: &SingletTheory, x: &SingletLabel<T>, y: &SingletLabel<T>) -> Result<Vec<(SingletLabel<T>, i64)>> {
    let (a, b) = match (x.weight(th), y.weight(th)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition(format!("{x} x {y}: standard fusion needs Fock modules"))),
    };
    let mut v = GrothendieckVector::new();
    for w in n_composition_weights::<T>(th) {
        v.add_term(SingletLabel::fock(th, a + b + w), 1);
    }
    Ok(v.into_terms())
}

/// τ-weight: the highest Fock weight underlying a label.
fn tau_weight<T: Real>(th: &SingletTheory, x: &SingletLabel<T>) -> T {
    match *x {
        SingletLabel::F { lambda } => lambda,
        SingletLabel::Frs { r, s } => th.alpha_rs(r, s),
        SingletLabel::M { r, s } | SingletLabel::Fbar { r, s } => th.alpha_rs(r - 1, th.p - s),
    }
}

/// Candidate constituents of x ⊗ y: Fock weights τ(x)+τ(y)+jα₋, |j| < p,
/// atypical weights being replaced by the two simple factors of F_{a,b}.
pub fn fusion_candidates<T: Real>(th: &SingletTheory, x: &SingletLabel<T>, y: &SingletLabel<T>) -> Vec<SingletLabel<T>> {
    let base = tau_weight(th, x) + tau_weight(th, y);
    let mut out: Vec<SingletLabel<T>> = Vec::new();
    let mut push = |l: SingletLabel<T>| {
        if !out.iter().any(|c| c.same_class(&l)) {
            out.push(l);
        }
    };
    for j in -(th.p - 1)..th.p {
        match SingletLabel::fock(th, base + T::n(j) * th.alpha_minus::<T>()) {
            SingletLabel::Frs { r, s } => {
                push(SingletLabel::M { r, s });
                push(SingletLabel::M { r: r + 1, s: th.p - s });
            }
            f => push(f),
        }
    }
    out.sort_by(|a, b| a.order(b));
    out
}

/// Result of a sampled decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition<T> {
    pub vector: GrothendieckVector<SingletLabel<T>>,
    pub residual: f64,
    pub singular_ratio: f64,
}

/// Integer coefficients c with Σ c_i q_{cand_i} = f on the samples.
pub fn grothendieck_decompose<T: Real>(
    th: &SingletTheory,
    f: &dyn Fn(T) -> Result<Complex<T>>,
    candidates: &[SingletLabel<T>],
    samples: &[T],
    tol: &Tolerance<T>,
) -> Result<Decomposition<T>> {
    let n = candidates.len();
    let m = samples.len();
    if n == 0 {
        return Err(Error::Precondition("empty candidate set".into()));
    }
    if m < 2 * n {
        return Err(Error::Precondition(format!("{m} samples for {n} candidates; need at least {}", 2 * n)));
    }
    let mut a = DMatrix::<Complex<f64>>::zeros(m, n);
    let mut b = DVector::<Complex<f64>>::zeros(m);
    let mut scale = DVector::<f64>::zeros(m);
    for (i, mu) in samples.iter().enumerate() {
        let fi = f(*mu)?;
        let w = 1.0 / fi.norm().f64().max(1.0);
        scale[i] = w;
        b[i] = Complex::new(fi.re.f64(), fi.im.f64()) * w;
        for (k, c) in candidates.iter().enumerate() {
            let q = qdim(th, c, *mu, tol)?;
            a[(i, k)] = Complex::new(q.re.f64(), q.im.f64()) * w;
        }
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    if ratio < 1e-10 {
        return Err(Error::IllConditioned { ratio });
    }
    let x = svd.solve(&b, 1e-14).map_err(|e| Error::Precondition(e.to_string()))?;
    let float_res = (&a * &x - &b).camax();
    if float_res > tol.eps_round.f64() {
        return Err(Error::IncompleteBasis { residual: float_res });
    }
    let round_tol = Tolerance::<f64>::new(tol.eps_round.f64(), tol.eps_limit.f64(), tol.eps_exclusion.f64())?;
    let mut ints = DVector::<Complex<f64>>::zeros(n);
    let mut vector = GrothendieckVector::new();
    for (k, c) in candidates.iter().enumerate() {
        let ck = round_to_integer(x[k], &round_tol)?;
        ints[k] = Complex::new(ck as f64, 0.0);
        vector.add_term(*c, ck);
    }
    let residual = (&a * &ints - &b).camax();
    if residual > tol.eps_round.f64() {
        return Err(Error::IncompleteBasis { residual });
    }
    Ok(Decomposition { vector, residual, singular_ratio: ratio })
}

/// x ⊗ y in K(C) by sampled decomposition against [`fusion_candidates`].
pub fn fuse<T: Real>(th: &SingletTheory, x: &SingletLabel<T>, y: &SingletLabel<T>, seed: u64, tol: &Tolerance<T>) -> Result<Decomposition<T>> {
    let x = x.canonicalize(th)?;
    let y = y.canonicalize(th)?;
    let candidates = fusion_candidates(th, &x, &y);
    let pts = sample_points::<T>(&TheoryConfig::Singlet(*th), 2 * candidates.len() + 6, seed)?;
    let samples: Vec<T> = pts
        .iter()
        .filter_map(|p| match p {
            SpectralPoint::Real(mu) => Some(*mu),
            _ => None,
        })
        .collect();
    let f = |mu: T| -> Result<Complex<T>> { Ok(qdim(th, &x, mu, tol)? * qdim(th, &y, mu, tol)?) };
    grothendieck_decompose(th, &f, &candidates, &samples, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::series_truncation;

    fn th(p: i64) -> SingletTheory {
        SingletTheory::new(p).unwrap()
    }

    #[test]
    fn exact_sequence_substitutions() {
        let (a, b, c) = ses_f::<f64>(&th(2), 1, 1).unwrap();
        assert_eq!((a.to_string(), b.to_string(), c.to_string()), ("M[r=0,s=1]".into(), "F[r=0,s=1]".into(), "M[r=1,s=1]".into()));
        let (a, b, c) = ses_f::<f64>(&th(3), 2, 2).unwrap();
        assert_eq!((a.to_string(), b.to_string(), c.to_string()), ("M[r=1,s=1]".into(), "F[r=1,s=1]".into(), "M[r=2,s=2]".into()));
        let (a, b, c) = ses_fbar::<f64>(&th(3), 2, 2).unwrap();
        assert_eq!((a.to_string(), b.to_string(), c.to_string()), ("M[r=2,s=2]".into(), "Fbar[r=2,s=2]".into(), "M[r=1,s=1]".into()));
        assert!(ses_f::<f64>(&th(3), 1, 3).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let tol = Tolerance::default();
        let t2 = th(2);
        let q = qdim_f(&t2, 0.0, 0.3, &tol).unwrap();
        let e = expi_pi(0.3) * (2.0 * (0.3 * std::f64::consts::PI).cos());
        assert!((q - e).norm() < 1e-13);
        let q = qdim_m(&t2, 2, 1, 0.3, &tol).unwrap();
        assert!((q - expi_pi(0.6)).norm() < 1e-13);
        let t3 = th(3);
        for r in -2..3 {
            let q = qdim_m(&t3, r, 2, 0.41, &tol).unwrap();
            let am: f64 = t3.alpha_minus();
            let e = zeta_pow(&t3, 0.41, (1 - r) as f64) * (2.0 * (std::f64::consts::PI * am * 0.41).cos());
            assert!((q - e).norm() < 1e-13);
        }
        assert!((qdim_m(&t3, 1, 1, 0.2, &tol).unwrap() - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!(matches!(qdim_m(&t2, 1, 1, 0.5, &tol), Err(Error::ExceptionalPoint(_))));
    }

    #[test]
    fn slots_of_vacuum_resolution() {
        let t2 = th(2);
        let res = resolution_of_m::<f64>(&t2, 1, 1).unwrap();
        let names: Vec<String> = (0..3).map(|i| res.slot(i).unwrap()[0].label.to_string()).collect();
        assert_eq!(names, ["F[r=0,s=1]", "F[r=-1,s=1]", "F[r=-2,s=1]"]);
        let eval = |l: &SingletLabel<f64>, sp: &SpectralPoint<f64>| qdim_a_fock(&t2, l, sp);
        let sp = SpectralPoint::Real(0.3);
        let c = series_truncation(&res, &eval, &sp, 1, 0.7).unwrap();
        let z = zeta(&t2, 0.3);
        assert!((c[0] - z).norm() < 1e-13);
        assert!((c[1] + z * z * 0.49).norm() < 1e-13);
    }

    #[test]
    fn vacuum_double_limit_is_one_after_normalization() {
        let t2 = th(2);
        let tol = Tolerance::default();
        let res = resolution_of_m::<f64>(&t2, 1, 1).unwrap();
        let v = engine_qdim_a(&t2, &res, 0.3, &tol).unwrap();
        let closed = qdim_a_m(&t2, 1, 1, 0.3, &tol).unwrap();
        assert!((v / closed - Complex::new(1.0, 0.0)).norm() < 1e-9);
        assert!(matches!(engine_qdim_a(&t2, &res, 0.5, &tol), Err(Error::ExceptionalPoint(_))));
    }

    #[test]
    fn decomposition_examples() {
        let tol = Tolerance::default();
        let t2 = th(2);
        let d = fuse(&t2, &SingletLabel::M { r: 1, s: 1 }, &SingletLabel::M { r: 1, s: 1 }, 3, &tol).unwrap();
        assert_eq!(d.vector.to_string(), "M[r=1,s=1]");
        let d = fuse(&t2, &SingletLabel::M { r: 2, s: 1 }, &SingletLabel::M { r: 2, s: 1 }, 3, &tol).unwrap();
        assert_eq!(d.vector.to_string(), "M[r=3,s=1]");
        let f0 = SingletLabel::fock(&t2, 0.0);
        let d = fuse(&t2, &f0, &f0, 3, &tol).unwrap();
        assert!(d.residual < 1e-8);
        // F_0 + F_{α₋} in the simple basis
        assert_eq!(d.vector.to_string(), "M[r=1,s=1] + 2*M[r=2,s=1] + M[r=3,s=1]");
    }

    #[test]
    fn decomposition_detects_missing_constituent() {
        let tol = Tolerance::default();
        let t2 = th(2);
        let samples: Vec<f64> = (0..8).map(|i| 0.07 + 0.05 * i as f64).collect();
        let f = |mu: f64| qdim_m(&t2, 3, 1, mu, &tol);
        let cands = [SingletLabel::M { r: 1, s: 1 }, SingletLabel::M { r: 2, s: 1 }];
        assert!(matches!(grothendieck_decompose(&t2, &f, &cands, &samples, &tol), Err(Error::IncompleteBasis { .. })));
        let dup = [SingletLabel::M { r: 1, s: 1 }, SingletLabel::M { r: 1, s: 1 }];
        assert!(matches!(grothendieck_decompose(&t2, &f, &dup, &samples, &tol), Err(Error::IllConditioned { .. })));
    }
}
