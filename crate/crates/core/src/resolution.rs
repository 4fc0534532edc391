//! Eventually periodic standard resolutions, their quantum-dimension
//! generating functions q(t, z), closed rational forms and double limits.
//!
//! A resolution is stored as a list of cones. Each cone has seed terms at
//! fixed homological degree and a set of period generators; the slots of the
//! complex are all seeds translated by non-negative combinations of the
//! generators. A prefix/block resolution has two cones (the prefix with no
//! generator, the first block with one), a total complex of two such
//! resolutions has four.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use serde::Serialize;
use serde_json::{json, Value};

use crate::labels::{fmt_real, ClassLabel};
use crate::scalar::{SpectralPoint, Tolerance};
use crate::{Error, Real, Result};

/// Label translation applied once per period.
pub trait LabelShift<L>: Clone + Debug + Serialize {
    fn apply(&self, label: &L, times: i64) -> Result<L>;
}

/// A basic standard module together with its ρ-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardTerm<L, T> {
    pub label: L,
    pub z_degree: T,
}

impl<L, T> StandardTerm<L, T> {
    pub fn new(label: L, z_degree: T) -> Self {
        Self { label, z_degree }
    }
}

/// Period generator: homological length b, ρ-shift Z and label shift.
#[derive(Clone, Debug, Serialize)]
pub struct Period<S, T> {
    pub length: usize,
    pub z_shift: T,
    pub shift: S,
}

#[derive(Clone, Debug)]
pub struct Cone<L, T> {
    /// (homological degree, term)
    pub seeds: Vec<(usize, StandardTerm<L, T>)>,
    /// indices into the resolution's generator list
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PeriodicResolution<L, S, T> {
    generators: Vec<Period<S, T>>,
    cones: Vec<Cone<L, T>>,
    note: Option<String>,
}

impl<L, S, T> PeriodicResolution<L, S, T>
where
    L: ClassLabel,
    S: LabelShift<L>,
    T: Real,
{
    /// A finite complex (no period), slot i in homological degree i.
    pub fn finite(slots: Vec<Vec<StandardTerm<L, T>>>) -> Result<Self> {
        let seeds = flatten(slots, 0);
        Self::from_cones(Vec::new(), vec![Cone { seeds, generators: Vec::new() }])
    }

    /// Prefix slots followed by a block repeated forever, each repetition
    /// shifting labels by `shift` and ρ-degrees by `z_shift`.
    pub fn periodic(
        prefix: Vec<Vec<StandardTerm<L, T>>>,
        block: Vec<Vec<StandardTerm<L, T>>>,
        z_shift: T,
        shift: S,
    ) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::Precondition("periodic block must have at least one slot".into()));
        }
        let p = prefix.len();
        let b = block.len();
        let cones = vec![
            Cone { seeds: flatten(prefix, 0), generators: Vec::new() },
            Cone { seeds: flatten(block, p), generators: vec![0] },
        ];
        Self::from_cones(vec![Period { length: b, z_shift, shift }], cones)
    }

    pub fn from_cones(generators: Vec<Period<S, T>>, cones: Vec<Cone<L, T>>) -> Result<Self> {
        for c in &cones {
            if c.generators.iter().any(|g| *g >= generators.len()) {
                return Err(Error::Precondition("cone refers to a missing generator".into()));
            }
        }
        if generators.iter().any(|g| g.length == 0) {
            return Err(Error::Precondition("period length must be positive".into()));
        }
        Ok(Self { generators, cones, note: None })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn generators(&self) -> &[Period<S, T>] {
        &self.generators
    }

    pub fn cones(&self) -> &[Cone<L, T>] {
        &self.cones
    }

    /// Period length when there is a single generator.
    pub fn period_length(&self) -> Option<usize> {
        match self.generators.as_slice() {
            [g] => Some(g.length),
            _ => None,
        }
    }

    /// All terms in homological degree i.
    pub fn slot(&self, i: usize) -> Result<Vec<StandardTerm<L, T>>> {
        let mut out = Vec::new();
        for cone in &self.cones {
            for (h, term) in &cone.seeds {
                if *h > i {
                    continue;
                }
                let lens: Vec<usize> = cone.generators.iter().map(|g| self.generators[*g].length).collect();
                for combo in compositions(i - h, &lens) {
                    let mut label = term.label.clone();
                    let mut z = term.z_degree;
                    for (n, g) in combo.iter().zip(&cone.generators) {
                        if *n > 0 {
                            let gen = &self.generators[*g];
                            label = gen.shift.apply(&label, *n as i64)?;
                            z = z + gen.z_shift * T::n(*n as i64);
                        }
                    }
                    out.push(StandardTerm::new(label, z));
                }
            }
        }
        Ok(out)
    }

    /// d(Y_i): the minimal ρ-degree in slot i, if the slot is nonempty.
    pub fn slot_degree(&self, i: usize) -> Result<Option<T>> {
        Ok(self.slot(i)?.iter().map(|t| t.z_degree).fold(None, |m: Option<T>, d| {
            Some(match m {
                Some(x) if x <= d => x,
                _ => d,
            })
        }))
    }

    /// Strict increase of d(Y_i) over the first `depth` slots.
    pub fn is_strictly_rho_ordered(&self, depth: usize) -> Result<bool> {
        let mut prev: Option<T> = None;
        for i in 0..depth {
            let Some(d) = self.slot_degree(i)? else { return Ok(false) };
            if let Some(p) = prev {
                if d <= p {
                    return Ok(false);
                }
            }
            prev = Some(d);
        }
        Ok(true)
    }

    /// Σ_{i<depth} (−1)^i [Y_i : label].
    pub fn index(&self, depth: usize, label: &L) -> Result<i64> {
        let mut acc = 0;
        for i in 0..depth {
            let m = self.slot(i)?.iter().filter(|t| t.label.same_class(label)).count() as i64;
            acc += if i % 2 == 0 { m } else { -m };
        }
        Ok(acc)
    }

    /// Moves one period of every single-generator cone into a fixed prefix cone.
    pub fn unrolled(&self) -> Result<Self> {
        let mut cones = Vec::new();
        for cone in &self.cones {
            match cone.generators.as_slice() {
                [] => cones.push(cone.clone()),
                [g] => {
                    let gen = &self.generators[*g];
                    cones.push(Cone { seeds: cone.seeds.clone(), generators: Vec::new() });
                    let mut seeds = Vec::new();
                    for (h, t) in &cone.seeds {
                        let label = gen.shift.apply(&t.label, 1)?;
                        seeds.push((h + gen.length, StandardTerm::new(label, t.z_degree + gen.z_shift)));
                    }
                    cones.push(Cone { seeds, generators: vec![*g] });
                }
                _ => return Err(Error::Unsupported("unrolling a cone with several generators".into())),
            }
        }
        Ok(Self { generators: self.generators.clone(), cones, note: self.note.clone() })
    }

    /// Serializable description: generators, cones and, for prefix/block
    /// resolutions, the first slots spelled out.
    pub fn to_json(&self, preview: usize) -> Result<Value>
    where
        L: Display,
    {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                json!({
                    "length": g.length,
                    "z_shift": fmt_real(g.z_shift.f64()),
                    "shift": serde_json::to_value(&g.shift).unwrap_or(Value::Null),
                })
            })
            .collect();
        let cones: Vec<Value> = self
            .cones
            .iter()
            .map(|c| {
                json!({
                    "generators": c.generators,
                    "seeds": c.seeds.iter().map(|(h, t)| json!({
                        "degree": h,
                        "label": t.label.to_string(),
                        "z_degree": fmt_real(t.z_degree.f64()),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut slots = Vec::new();
        for i in 0..preview {
            let terms: Vec<Value> = self
                .slot(i)?
                .iter()
                .map(|t| json!({"label": t.label.to_string(), "z_degree": fmt_real(t.z_degree.f64())}))
                .collect();
            slots.push(Value::Array(terms));
        }
        let mut doc = json!({"generators": gens, "cones": cones, "slots": slots});
        if let Some(n) = &self.note {
            doc["convention"] = Value::String(n.clone());
        }
        Ok(doc)
    }
}

fn flatten<L, T>(slots: Vec<Vec<StandardTerm<L, T>>>, offset: usize) -> Vec<(usize, StandardTerm<L, T>)> {
    slots
        .into_iter()
        .enumerate()
        .flat_map(|(i, s)| s.into_iter().map(move |t| (i + offset, t)))
        .collect()
}

/// All (n_1..n_k) ≥ 0 with Σ n_a·len_a = total.
fn compositions(total: usize, lens: &[usize]) -> Vec<Vec<usize>> {
    match lens.split_first() {
        None => {
            if total == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        }
        Some((first, rest)) => {
            let mut out = Vec::new();
            for n in 0..=total / first {
                for mut tail in compositions(total - n * first, rest) {
                    tail.insert(0, n);
                    out.push(tail);
                }
            }
            out
        }
    }
}

/// Factor 1/(1 − c t^b z^Z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole<T> {
    pub c: Complex<T>,
    pub b: usize,
    pub z: T,
}

/// One cone of the closed form: Σ coeff·t^i z^e over Π poles.
#[derive(Clone, Debug, PartialEq)]
pub struct QCone<T> {
    pub numerator: Vec<(usize, T, Complex<T>)>,
    pub poles: Vec<Pole<T>>,
}

/// Closed rational form of q(t, z) at one spectral point.
#[derive(Clone, Debug, PartialEq)]
pub struct QEvaluation<T> {
    pub point: SpectralPoint<T>,
    pub cones: Vec<QCone<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitOrder {
    /// lim_{z→1} lim_{t→1}
    TThenZ,
    /// lim_{t→1} lim_{z→1}
    ZThenT,
}

impl<T: Real> QEvaluation<T> {
    pub fn value(&self, t: T, z: T) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for cone in &self.cones {
            let mut num = Complex::new(T::zero(), T::zero());
            for (i, e, c) in &cone.numerator {
                num = num + *c * (t.powi(*i as i32) * z.powf(*e));
            }
            let mut den = Complex::new(T::one(), T::zero());
            for p in &cone.poles {
                den = den * (Complex::new(T::one(), T::zero()) - p.c * (t.powi(p.b as i32) * z.powf(p.z)));
            }
            acc = acc + num / den;
        }
        acc
    }

    /// The unique pole factor c when there is exactly one distinct pole.
    pub fn pole_factor(&self) -> Option<Pole<T>> {
        let mut poles = self.cones.iter().flat_map(|c| c.poles.iter());
        let first = *poles.next()?;
        poles.all(|p| p.b == first.b && (p.c - first.c).norm() < T::c(1e-12)).then_some(first)
    }

    fn check_poles(&self, tol: &Tolerance<T>) -> Result<()> {
        for cone in &self.cones {
            if cone.numerator.iter().all(|(_, _, c)| c.norm() == T::zero()) {
                continue;
            }
            for p in &cone.poles {
                let d = (Complex::new(T::one(), T::zero()) - p.c).norm();
                if d <= tol.eps_exclusion {
                    return Err(Error::ExceptionalPoint(format!("pole factor 1 - c = {:e} at t = z = 1", d.f64())));
                }
            }
        }
        Ok(())
    }

    /// The value at t = z = 1 by direct substitution.
    pub fn value_at_one(&self, tol: &Tolerance<T>) -> Result<Complex<T>> {
        self.check_poles(tol)?;
        Ok(self.value(T::one(), T::one()))
    }

    /// Iterated limit along 1 − 2^{−j}, extrapolated to 0 by Neville's scheme.
    pub fn nested_limit(&self, order: LimitOrder, tol: &Tolerance<T>) -> Result<Complex<T>> {
        self.check_poles(tol)?;
        let inner = |outer: T| -> Complex<T> {
            extrapolate(|h| match order {
                LimitOrder::TThenZ => self.value(T::one() - h, outer),
                LimitOrder::ZThenT => self.value(outer, T::one() - h),
            })
        };
        Ok(extrapolate(|h| inner(T::one() - h)))
    }

    /// Power series in t at fixed z, to order n inclusive.
    pub fn t_series(&self, z: T, n: usize) -> Vec<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut total = vec![zero; n + 1];
        for cone in &self.cones {
            let mut s = vec![zero; n + 1];
            for (i, e, c) in &cone.numerator {
                if *i <= n {
                    s[*i] = s[*i] + *c * z.powf(*e);
                }
            }
            for p in &cone.poles {
                // multiply by Σ_m (c z^Z)^m t^{mb}
                let w = p.c * z.powf(p.z);
                for i in p.b..=n {
                    let prev = s[i - p.b];
                    s[i] = s[i] + w * prev;
                }
            }
            for i in 0..=n {
                total[i] = total[i] + s[i];
            }
        }
        total
    }
}

const LIMIT_NODES: std::ops::RangeInclusive<i32> = 10..=21;

fn extrapolate<T: Real>(f: impl Fn(T) -> Complex<T>) -> Complex<T> {
    let hs: Vec<T> = LIMIT_NODES.map(|j| T::n(2).powi(-j)).collect();
    let mut p: Vec<Complex<T>> = hs.iter().map(|h| f(*h)).collect();
    let n = hs.len();
    for m in 1..n {
        for i in 0..n - m {
            // Neville step towards h = 0
            let (hi, hj) = (hs[i], hs[i + m]);
            p[i] = (p[i + 1] * hi - p[i] * hj) / (hi - hj);
        }
    }
    p[0]
}

/// Quantum dimension of a basic standard label at a spectral point.
pub type QdimFn<'a, L, T> = dyn Fn(&L, &SpectralPoint<T>) -> Result<Complex<T>> + 'a;

/// Σ_{i≤n} (−t)^i z^{d(Y_i)−d(Y_0)} q(Y_i): the t-coefficients at fixed z.
pub fn series_truncation<L, S, T>(
    res: &PeriodicResolution<L, S, T>,
    qdim: &QdimFn<'_, L, T>,
    sp: &SpectralPoint<T>,
    n: usize,
    z: T,
) -> Result<Vec<Complex<T>>>
where
    L: ClassLabel,
    S: LabelShift<L>,
    T: Real,
{
    let d0 = res
        .slot_degree(0)?
        .ok_or_else(|| Error::Precondition("resolution has an empty zeroth slot".into()))?;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = Complex::new(T::zero(), T::zero());
        for t in res.slot(i)? {
            acc = acc + qdim(&t.label, sp)? * z.powf(t.z_degree - d0);
        }
        out.push(if i % 2 == 0 { acc } else { -acc });
    }
    Ok(out)
}

/// Closed rational form of q(t, z), pole factors read off from the ratio of
/// quantum dimensions across one period.
pub fn closed_form<L, S, T>(
    res: &PeriodicResolution<L, S, T>,
    qdim: &QdimFn<'_, L, T>,
    sp: &SpectralPoint<T>,
) -> Result<QEvaluation<T>>
where
    L: ClassLabel,
    S: LabelShift<L>,
    T: Real,
{
    let d0 = res
        .slot_degree(0)?
        .ok_or_else(|| Error::Precondition("resolution has an empty zeroth slot".into()))?;
    let mut cones = Vec::new();
    for cone in res.cones() {
        let mut numerator = Vec::new();
        let mut base = Vec::new();
        for (h, t) in &cone.seeds {
            let q = qdim(&t.label, sp)?;
            base.push(q);
            let sign = if h % 2 == 0 { T::one() } else { -T::one() };
            numerator.push((*h, t.z_degree - d0, q * sign));
        }
        let mut poles = Vec::new();
        for g in &cone.generators {
            let gen = &res.generators()[*g];
            let shifted = cone
                .seeds
                .iter()
                .map(|(_, t)| qdim(&gen.shift.apply(&t.label, 1)?, sp))
                .collect::<Result<Vec<_>>>()?;
            let ratio = uniform_ratio(&base, &shifted)?;
            let sign = if gen.length % 2 == 0 { T::one() } else { -T::one() };
            poles.push(Pole { c: ratio * sign, b: gen.length, z: gen.z_shift });
        }
        cones.push(QCone { numerator, poles });
    }
    Ok(QEvaluation { point: sp.clone(), cones })
}

fn uniform_ratio<T: Real>(base: &[Complex<T>], shifted: &[Complex<T>]) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let (imax, qmax) = base
        .iter()
        .enumerate()
        .map(|(i, q)| (i, q.norm()))
        .fold((0, T::zero()), |a, b| if b.1 > a.1 { b } else { a });
    let scale = shifted.iter().fold(qmax, |m, q| m.max(q.norm())).max(T::min_positive_value());
    if qmax <= scale * T::c(1e-13) {
        if shifted.iter().all(|q| q.norm() <= scale * T::c(1e-13)) {
            return Ok(zero);
        }
        return Err(Error::NonUniformPeriod("period shift maps vanishing terms to nonvanishing ones".into()));
    }
    let ratio = shifted[imax] / base[imax];
    for (q0, q1) in base.iter().zip(shifted) {
        if (*q1 - ratio * *q0).norm() > T::c(1e-9) * scale {
            return Err(Error::NonUniformPeriod(format!(
                "ratio {:?} does not hold across the block",
                (ratio.re.f64(), ratio.im.f64())
            )));
        }
    }
    Ok(ratio)
}

fn pair<T: Real>(z: Complex<T>) -> (f64, f64) {
    (z.re.f64(), z.im.f64())
}

/// Mixed absolute/relative deviation |a − b|/max(1, |b|).
pub fn deviation<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    (a - b).norm() / T::one().max(b.norm())
}

/// Double limit in the requested order; the other order is computed too and
/// must agree within eps_limit.
pub fn double_limit<T: Real>(q: &QEvaluation<T>, order: LimitOrder, tol: &Tolerance<T>) -> Result<Complex<T>> {
    let tz = q.nested_limit(LimitOrder::TThenZ, tol)?;
    let zt = q.nested_limit(LimitOrder::ZThenT, tol)?;
    if deviation(tz, zt) > tol.eps_limit {
        return Err(Error::LimitDisagreement { tz: pair(tz), zt: pair(zt) });
    }
    Ok(match order {
        LimitOrder::TThenZ => tz,
        LimitOrder::ZThenT => zt,
    })
}

/// Outcome of comparing two resolutions of the same object.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport<T> {
    pub points: usize,
    pub max_deviation: T,
    pub agree: bool,
}

/// Double limits of two resolutions agree at every sample.
pub fn resolution_equivalence<L, S, T>(
    res1: &PeriodicResolution<L, S, T>,
    res2: &PeriodicResolution<L, S, T>,
    qdim: &QdimFn<'_, L, T>,
    samples: &[SpectralPoint<T>],
    tol: &Tolerance<T>,
) -> Result<EquivalenceReport<T>>
where
    L: ClassLabel,
    S: LabelShift<L>,
    T: Real,
{
    let mut worst = T::zero();
    for sp in samples {
        let a = double_limit(&closed_form(res1, qdim, sp)?, LimitOrder::TThenZ, tol)?;
        let b = double_limit(&closed_form(res2, qdim, sp)?, LimitOrder::TThenZ, tol)?;
        worst = worst.max(deviation(a, b));
    }
    Ok(EquivalenceReport { points: samples.len(), max_deviation: worst, agree: worst <= tol.eps_limit })
}

/// Bookkeeping of a total complex.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalComplexReport<T> {
    /// min over seed products of d(out) − d(X_i) − d(Y_j): the d(N) offset
    pub degree_offset: T,
}

/// Fusion of two basic standards into a combination of basic standards.
pub type FusionFn<'a, L> = dyn Fn(&L, &L) -> Result<Vec<(L, i64)>> + 'a;

/// Tot(X_• ⊗ Y_•): slot k is ⊕_{i+j=k} X_i ⊗ Y_j. The fusion callback must
/// commute with the period shifts of both factors.
pub fn total_complex<L, S, T>(
    res1: &PeriodicResolution<L, S, T>,
    res2: &PeriodicResolution<L, S, T>,
    fusion: &FusionFn<'_, L>,
    degree: &dyn Fn(&L) -> T,
) -> Result<(PeriodicResolution<L, S, T>, TotalComplexReport<T>)>
where
    L: ClassLabel,
    S: LabelShift<L>,
    T: Real,
{
    let offset = res1.generators().len();
    let mut generators: Vec<Period<S, T>> = res1.generators().to_vec();
    generators.extend(res2.generators().iter().cloned());
    let mut cones = Vec::new();
    let mut min_offset: Option<T> = None;
    for c1 in res1.cones() {
        for c2 in res2.cones() {
            let mut seeds = Vec::new();
            for (h1, t1) in &c1.seeds {
                for (h2, t2) in &c2.seeds {
                    let out = fusion(&t1.label, &t2.label).map_err(|e| Error::FusionUndecomposable(e.to_string()))?;
                    for (label, coeff) in out {
                        if coeff < 0 {
                            return Err(Error::FusionUndecomposable(format!(
                                "negative multiplicity {coeff} of {label} in {} x {}",
                                t1.label, t2.label
                            )));
                        }
                        let d = degree(&label);
                        let off = d - t1.z_degree - t2.z_degree;
                        min_offset = Some(match min_offset {
                            Some(m) if m <= off => m,
                            _ => off,
                        });
                        for _ in 0..coeff {
                            seeds.push((h1 + h2, StandardTerm::new(label.clone(), d)));
                        }
                    }
                }
            }
            let mut gens = c1.generators.clone();
            gens.extend(c2.generators.iter().map(|g| g + offset));
            cones.push(Cone { seeds, generators: gens });
        }
    }
    let res = PeriodicResolution::from_cones(generators, cones)?;
    let res = match res1.note() {
        Some(n) => res.with_note(n),
        None => res,
    };
    Ok((res, TotalComplexReport { degree_offset: min_offset.unwrap_or_else(T::zero) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(4, &[2]), vec![vec![2]]);
        assert!(compositions(3, &[2]).is_empty());
        assert_eq!(compositions(4, &[2, 2]).len(), 3);
        assert_eq!(compositions(0, &[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn neville_recovers_polynomial_limit() {
        let v: Complex<f64> = extrapolate(|h| Complex::new(3.0 + 2.0 * h - h * h * 5.0, h));
        assert!((v - Complex::new(3.0, 0.0)).norm() < 1e-12);
        let w: Complex<f64> = extrapolate(|h| Complex::new(1.0 / (1.3 - h), 0.0));
        assert!((w.re - 1.0 / 1.3).abs() < 1e-13);
    }
}
