//! Executable consistency checks grouped into named suites. Each check is a
//! pure function of the theory and [`VerifyOptions`], so suites can be run
//! in any order or in parallel with identical results.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::labels::{ClassLabel, MinimalLabel, PiLabel, SingletLabel, Sl2Label};
use crate::resolution::{closed_form, deviation, series_truncation, LimitOrder, QdimFn};
use crate::scalar::{sample_points, SpectralPoint, Tolerance};
use crate::semisimple::{
    heis_qdim, heis_s_kernel, pi0_fusion, pi0_qdim, pi0_s_kernel, vir_fusion_closed, vir_fusion_product, vir_qdim,
    vir_s_matrix, vir_verlinde_sum, HeisenbergTheory,
};
use crate::singlet;
use crate::sl2;
use crate::theory::{Kac, SingletTheory, TheoryConfig};
use crate::{Error, Result};

/// Named groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Smatrix,
    VerlindeVsClosed,
    ResolutionLimits,
    Euler,
    Homomorphism,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["smatrix", "verlinde-vs-closed", "resolution-limits", "euler", "homomorphism", "all"];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "smatrix" => Suite::Smatrix,
            "verlinde-vs-closed" => Suite::VerlindeVsClosed,
            "resolution-limits" => Suite::ResolutionLimits,
            "euler" => Suite::Euler,
            "homomorphism" => Suite::Homomorphism,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::Smatrix => 0,
            Suite::VerlindeVsClosed => 1,
            Suite::ResolutionLimits => 2,
            Suite::Euler => 3,
            Suite::Homomorphism => 4,
            Suite::All => 5,
        };
        f.write_str(Suite::NAMES[i])
    }
}

/// sl2 pair kinds of the homomorphism check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairKind {
    StdStd,
    StdD,
    DD,
}

/// One executable check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckId {
    Smatrix,
    VerlindeClosed,
    MinimalHomomorphism,
    HeisenbergKernel,
    HeisenbergHomomorphism,
    Pi0Kernel,
    Pi0Homomorphism,
    SingletLimits,
    SingletLimitOrder,
    SingletEquivalence,
    SingletQnQv,
    SingletEuler,
    SingletHomomorphism,
    SingletDecomposition,
    Sl2Series,
    Sl2Limits,
    Sl2Euler,
    Sl2Homomorphism(PairKind),
    Sl2ProjectiveRoundTrip,
}

impl CheckId {
    pub fn name(&self) -> &'static str {
        match self {
            CheckId::Smatrix => "s-matrix-orthogonality",
            CheckId::VerlindeClosed => "verlinde-vs-closed",
            CheckId::MinimalHomomorphism => "qdim-homomorphism",
            CheckId::HeisenbergKernel => "s-kernel-symmetry",
            CheckId::HeisenbergHomomorphism => "qdim-homomorphism",
            CheckId::Pi0Kernel => "s-kernel-symmetry",
            CheckId::Pi0Homomorphism => "qdim-homomorphism",
            CheckId::SingletLimits => "engine-vs-closed",
            CheckId::SingletLimitOrder => "limit-order",
            CheckId::SingletEquivalence => "resolution-equivalence",
            CheckId::SingletQnQv => "qN-times-qV",
            CheckId::SingletEuler => "euler-additivity",
            CheckId::SingletHomomorphism => "qdim-homomorphism",
            CheckId::SingletDecomposition => "sampled-decomposition",
            CheckId::Sl2Series => "series-vs-closed-form",
            CheckId::Sl2Limits => "double-limit-vs-closed",
            CheckId::Sl2Euler => "euler-additivity",
            CheckId::Sl2Homomorphism(PairKind::StdStd) => "qdim-homomorphism-std-std",
            CheckId::Sl2Homomorphism(PairKind::StdD) => "qdim-homomorphism-std-dplus",
            CheckId::Sl2Homomorphism(PairKind::DD) => "qdim-homomorphism-dplus-dplus",
            CheckId::Sl2ProjectiveRoundTrip => "projective-round-trip",
        }
    }

    pub fn suite(&self) -> Suite {
        match self {
            CheckId::Smatrix | CheckId::HeisenbergKernel | CheckId::Pi0Kernel => Suite::Smatrix,
            CheckId::VerlindeClosed => Suite::VerlindeVsClosed,
            CheckId::SingletLimits
            | CheckId::SingletLimitOrder
            | CheckId::SingletEquivalence
            | CheckId::SingletQnQv
            | CheckId::Sl2Series
            | CheckId::Sl2Limits => Suite::ResolutionLimits,
            CheckId::SingletEuler | CheckId::Sl2Euler => Suite::Euler,
            _ => Suite::Homomorphism,
        }
    }
}

/// Sample counts, seed and thresholds shared by all checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// random pairs per kind in the sl2 homomorphism checks
    pub pairs: usize,
    /// random multisets in the projective round trip
    pub multisets: usize,
    #[serde(skip)]
    pub tol: Tolerance<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { samples: 20, seed: 42, pairs: 50, multisets: 1000, tol: Tolerance::default() }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub max_deviation: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

struct Acc {
    cases: usize,
    worst: f64,
}

impl Acc {
    fn record(&mut self, d: f64) {
        self.cases += 1;
        if d.is_nan() || d > self.worst {
            self.worst = if d.is_nan() { f64::INFINITY } else { d };
        }
    }

    fn mismatch(&mut self, equal: bool) {
        self.record(if equal { 0.0 } else { 1.0 });
    }
}

fn run(id: CheckId, threshold: f64, body: impl FnOnce(&mut Acc) -> Result<()>) -> CheckResult {
    let mut acc = Acc { cases: 0, worst: 0.0 };
    let outcome = body(&mut acc);
    let error = outcome.err().map(|e| e.to_string());
    CheckResult {
        suite: id.suite().to_string(),
        name: id.name().to_string(),
        passed: error.is_none() && acc.worst <= threshold,
        cases: acc.cases,
        max_deviation: acc.worst,
        threshold,
        error,
    }
}

/// Checks that apply to a theory, restricted to a suite.
pub fn plan(theory: &TheoryConfig<f64>, suite: Suite) -> Vec<CheckId> {
    let all: Vec<CheckId> = match theory {
        TheoryConfig::Minimal(_) => vec![CheckId::Smatrix, CheckId::VerlindeClosed, CheckId::MinimalHomomorphism],
        TheoryConfig::Heisenberg(_) => vec![CheckId::HeisenbergKernel, CheckId::HeisenbergHomomorphism],
        TheoryConfig::Pi0(_) => vec![CheckId::Pi0Kernel, CheckId::Pi0Homomorphism],
        TheoryConfig::Singlet(_) => vec![
            CheckId::SingletLimits,
            CheckId::SingletLimitOrder,
            CheckId::SingletEquivalence,
            CheckId::SingletQnQv,
            CheckId::SingletEuler,
            CheckId::SingletHomomorphism,
            CheckId::SingletDecomposition,
        ],
        TheoryConfig::Sl2(_) => vec![
            CheckId::Sl2Series,
            CheckId::Sl2Limits,
            CheckId::Sl2Euler,
            CheckId::Sl2Homomorphism(PairKind::StdStd),
            CheckId::Sl2Homomorphism(PairKind::StdD),
            CheckId::Sl2Homomorphism(PairKind::DD),
            CheckId::Sl2ProjectiveRoundTrip,
        ],
    };
    all.into_iter().filter(|c| suite == Suite::All || c.suite() == suite).collect()
}

/// Runs one planned check.
pub fn run_check(theory: &TheoryConfig<f64>, id: CheckId, opts: &VerifyOptions) -> CheckResult {
    match (theory, id) {
        (TheoryConfig::Minimal(k), CheckId::Smatrix) => check_smatrix(k),
        (TheoryConfig::Minimal(k), CheckId::VerlindeClosed) => check_verlinde(k),
        (TheoryConfig::Minimal(k), CheckId::MinimalHomomorphism) => check_minimal_homomorphism(k),
        (TheoryConfig::Heisenberg(h), CheckId::HeisenbergKernel) => check_heisenberg_kernel(h, opts),
        (TheoryConfig::Heisenberg(h), CheckId::HeisenbergHomomorphism) => check_heisenberg_homomorphism(h, opts),
        (TheoryConfig::Pi0(k), CheckId::Pi0Kernel) => check_pi0_kernel(k, opts),
        (TheoryConfig::Pi0(k), CheckId::Pi0Homomorphism) => check_pi0_homomorphism(k, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletLimits) => check_singlet_limits(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletLimitOrder) => check_singlet_limit_order(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletEquivalence) => check_singlet_equivalence(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletQnQv) => check_singlet_qn_qv(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletEuler) => check_singlet_euler(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletHomomorphism) => check_singlet_homomorphism(t, opts),
        (TheoryConfig::Singlet(t), CheckId::SingletDecomposition) => check_singlet_decomposition(t, opts),
        (TheoryConfig::Sl2(k), CheckId::Sl2Series) => check_sl2_series(k, opts),
        (TheoryConfig::Sl2(k), CheckId::Sl2Limits) => check_sl2_limits(k, opts),
        (TheoryConfig::Sl2(k), CheckId::Sl2Euler) => check_sl2_euler(k, opts),
        (TheoryConfig::Sl2(k), CheckId::Sl2Homomorphism(kind)) => check_sl2_homomorphism(k, kind, opts),
        (TheoryConfig::Sl2(k), CheckId::Sl2ProjectiveRoundTrip) => check_projective_round_trip(k, opts),
        (t, id) => run(id, 0.0, |_| Err(Error::Precondition(format!("{} does not apply to {}", id.name(), t.name())))),
    }
}

/// Runs a whole suite sequentially.
pub fn verify(theory: &TheoryConfig<f64>, suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    plan(theory, suite).into_iter().map(|id| run_check(theory, id, opts)).collect()
}

// minimal models

pub fn check_smatrix(kac: &Kac) -> CheckResult {
    run(CheckId::Smatrix, 1e-10, |acc| {
        let s = vir_s_matrix::<f64>(kac);
        let n = s.len();
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|m| s[i][m] * s[j][m]).sum();
                acc.record((dot - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        Ok(())
    })
}

pub fn check_verlinde(kac: &Kac) -> CheckResult {
    run(CheckId::VerlindeClosed, 1e-9, |acc| {
        let labels = kac.labels();
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    let sum = vir_verlinde_sum::<f64>(kac, a, b, c);
                    acc.record((sum - vir_fusion_closed(kac, a, b, c) as f64).abs());
                }
            }
        }
        Ok(())
    })
}

pub fn check_minimal_homomorphism(kac: &Kac) -> CheckResult {
    run(CheckId::MinimalHomomorphism, 1e-9, |acc| {
        let labels = kac.labels();
        for a in &labels {
            for b in &labels {
                let prod = vir_fusion_product(kac, a, b);
                for d in &labels {
                    let lhs: f64 = prod.terms().iter().map(|(c, n)| *n as f64 * vir_qdim::<f64>(kac, c, d)).sum();
                    let rhs = vir_qdim::<f64>(kac, a, d) * vir_qdim::<f64>(kac, b, d);
                    acc.record((lhs - rhs).abs() / rhs.abs().max(1.0));
                }
            }
        }
        Ok(())
    })
}

// Heisenberg and Π(0)

fn vectors(h: &HeisenbergTheory<f64>, opts: &VerifyOptions) -> Result<Vec<Vec<f64>>> {
    sample_points(&TheoryConfig::Heisenberg(h.clone()), opts.samples, opts.seed)?
        .into_iter()
        .map(|p| match p {
            SpectralPoint::Vector(v) => Ok(v),
            _ => Err(Error::Precondition("expected vector samples".into())),
        })
        .collect()
}

pub fn check_heisenberg_kernel(h: &HeisenbergTheory<f64>, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::HeisenbergKernel, 1e-12, |acc| {
        let pts = vectors(h, opts)?;
        for (x, y) in pts.iter().zip(pts.iter().rev()) {
            let a = heis_s_kernel(h, x, y)?;
            let b = heis_s_kernel(h, y, x)?;
            acc.record((a - b).norm());
            acc.record((a.norm() * h.det().abs().sqrt() - 1.0).abs());
        }
        Ok(())
    })
}

pub fn check_heisenberg_homomorphism(h: &HeisenbergTheory<f64>, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::HeisenbergHomomorphism, 1e-10, |acc| {
        let pts = vectors(h, opts)?;
        for i in 0..pts.len() {
            let x = &pts[i];
            let y = &pts[(i + 1) % pts.len()];
            let rho = &pts[(i + 2) % pts.len()];
            let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let lhs = heis_qdim(h, &xy, rho)?;
            let rhs = heis_qdim(h, x, rho)? * heis_qdim(h, y, rho)?;
            acc.record(deviation(lhs, rhs));
        }
        Ok(())
    })
}

fn pi_points(kac: &Kac, opts: &VerifyOptions) -> Result<Vec<PiLabel<f64>>> {
    sample_points(&TheoryConfig::<f64>::Pi0(*kac), opts.samples, opts.seed)?
        .into_iter()
        .map(|p| match p {
            SpectralPoint::Pi { ell, lambda } => Ok(PiLabel::new(ell, lambda)),
            _ => Err(Error::Precondition("expected Pi samples".into())),
        })
        .collect()
}

pub fn check_pi0_kernel(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Pi0Kernel, 1e-12, |acc| {
        let pts = pi_points(kac, opts)?;
        for (x, y) in pts.iter().zip(pts.iter().rev()) {
            let a = pi0_s_kernel(kac, x, y);
            acc.record((a - pi0_s_kernel(kac, y, x)).norm());
            acc.record((a.norm() - 1.0).abs());
        }
        Ok(())
    })
}

pub fn check_pi0_homomorphism(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Pi0Homomorphism, 1e-10, |acc| {
        let pts = pi_points(kac, opts)?;
        let n = pts.len();
        for i in 0..n {
            let (x, y, sp) = (&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
            let lhs = pi0_qdim(kac, &pi0_fusion(x, y), sp);
            let rhs = pi0_qdim(kac, x, sp) * pi0_qdim(kac, y, sp);
            acc.record(deviation(lhs, rhs));
        }
        Ok(())
    })
}

// singlet

fn mus(th: &SingletTheory, opts: &VerifyOptions) -> Result<Vec<f64>> {
    Ok(sample_points(&TheoryConfig::<f64>::Singlet(*th), opts.samples, opts.seed)?
        .into_iter()
        .filter_map(|p| match p {
            SpectralPoint::Real(m) => Some(m),
            _ => None,
        })
        .collect())
}

const SINGLET_R: std::ops::RangeInclusive<i64> = -3..=3;

fn singlet_limits(
    th: &SingletTheory,
    res: &singlet::SingletResolution<f64>,
    mu: f64,
    tol: &Tolerance<f64>,
) -> Result<(Complex<f64>, Complex<f64>)> {
    let eval = |l: &SingletLabel<f64>, sp: &SpectralPoint<f64>| singlet::qdim_a_fock(th, l, sp);
    let q = closed_form(res, &eval as &QdimFn<'_, _, _>, &SpectralPoint::Real(mu))?;
    Ok((q.nested_limit(LimitOrder::TThenZ, tol)?, q.nested_limit(LimitOrder::ZThenT, tol)?))
}

/// Engine double limits of M_{r,s}, normalized by the engine vacuum, against
/// sin(πsα₋μ)/sin(πα₋μ)·ζ^{1−r}.
pub fn check_singlet_limits(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletLimits, opts.tol.eps_limit, |acc| {
        let vac = singlet::resolution_of_m::<f64>(th, 1, 1)?;
        for mu in mus(th, opts)? {
            let (v_tz, v_zt) = singlet_limits(th, &vac, mu, &opts.tol)?;
            for r in SINGLET_R {
                for s in 1..th.p {
                    let res = singlet::resolution_of_m::<f64>(th, r, s)?;
                    let (tz, zt) = singlet_limits(th, &res, mu, &opts.tol)?;
                    let closed = singlet::qdim_m(th, r, s, mu, &opts.tol)?;
                    acc.record(deviation(tz / v_tz, closed));
                    acc.record(deviation(zt / v_zt, closed));
                }
            }
        }
        Ok(())
    })
}

/// The two orders of the double limit agree.
pub fn check_singlet_limit_order(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletLimitOrder, opts.tol.eps_limit, |acc| {
        for mu in mus(th, opts)? {
            for r in SINGLET_R {
                for s in 1..th.p {
                    let res = singlet::resolution_of_m::<f64>(th, r, s)?;
                    let (tz, zt) = singlet_limits(th, &res, mu, &opts.tol)?;
                    acc.record(deviation(tz, zt));
                }
            }
        }
        Ok(())
    })
}

/// Two ρ-ordered resolutions of F_{r−1,p−s} have the same double limit.
pub fn check_singlet_equivalence(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletEquivalence, opts.tol.eps_limit, |acc| {
        let samples: Vec<SpectralPoint<f64>> = mus(th, opts)?.into_iter().map(SpectralPoint::Real).collect();
        let eval = |l: &SingletLabel<f64>, sp: &SpectralPoint<f64>| singlet::qdim_a_fock(th, l, sp);
        for r in SINGLET_R {
            for s in 1..th.p {
                let spliced = singlet::spliced_resolution_of_f::<f64>(th, r, s)?;
                let trivial = singlet::trivial_resolution(th, SingletLabel::atypical(th, r - 1, th.p - s)?)?;
                let rep = crate::resolution::resolution_equivalence(&spliced, &trivial, &eval, &samples, &opts.tol)?;
                acc.cases += rep.points - 1;
                acc.record(rep.max_deviation);
            }
        }
        Ok(())
    })
}

/// Engine vacuum q^A_V times the Heisenberg assembly of q^A_N equals 1.
pub fn check_singlet_qn_qv(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletQnQv, opts.tol.eps_limit, |acc| {
        let vac = singlet::resolution_of_m::<f64>(th, 1, 1)?;
        for mu in mus(th, opts)? {
            let qv = singlet::engine_qdim_a(th, &vac, mu, &opts.tol)?;
            let qn = singlet::qdim_a_n(th, mu)?;
            acc.record(deviation(qv * qn, Complex::new(1.0, 0.0)));
        }
        Ok(())
    })
}

pub fn check_singlet_euler(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletEuler, 1e-10, |acc| {
        for mu in mus(th, opts)? {
            for r in SINGLET_R {
                for s in 1..th.p {
                    for (a, b, c) in [singlet::ses_f::<f64>(th, r, s)?, singlet::ses_fbar::<f64>(th, r, s)?] {
                        let mid = singlet::qdim(th, &b, mu, &opts.tol)?;
                        let sum = singlet::qdim(th, &a, mu, &opts.tol)? + singlet::qdim(th, &c, mu, &opts.tol)?;
                        acc.record(deviation(mid, sum));
                    }
                }
            }
        }
        Ok(())
    })
}

/// Fock fusion F_λ ⊗ F_μ = Σ_j F_{λ+μ+jα₋} is multiplicative on normalized qdims.
pub fn check_singlet_homomorphism(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletHomomorphism, opts.tol.eps_limit, |acc| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5167);
        let pts = mus(th, opts)?;
        for mu in &pts {
            let x = SingletLabel::fock(th, rng.gen_range(-1.5..1.5));
            let y = SingletLabel::fock(th, rng.gen_range(-1.5..1.5));
            let mut lhs = Complex::new(0.0, 0.0);
            for (l, n) in singlet::standard_fusion(th, &x, &y)? {
                lhs += singlet::qdim(th, &l, *mu, &opts.tol)? * n as f64;
            }
            let rhs = singlet::qdim(th, &x, *mu, &opts.tol)? * singlet::qdim(th, &y, *mu, &opts.tol)?;
            acc.record(deviation(lhs, rhs));
        }
        Ok(())
    })
}

/// Simple-by-simple products decompose with integer coefficients.
pub fn check_singlet_decomposition(th: &SingletTheory, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::SingletDecomposition, opts.tol.eps_round, |acc| {
        for (r1, r2) in [(1, 1), (2, 1), (0, 2), (-1, 3)] {
            for s1 in 1..th.p {
                for s2 in 1..th.p {
                    let d = singlet::fuse(th, &SingletLabel::M { r: r1, s: s1 }, &SingletLabel::M { r: r2, s: s2 }, opts.seed, &opts.tol)?;
                    acc.record(d.residual);
                }
            }
        }
        Ok(())
    })
}

// sl2

fn sl2_points(kac: &Kac, opts: &VerifyOptions) -> Result<Vec<SpectralPoint<f64>>> {
    sample_points(&TheoryConfig::<f64>::Sl2(*kac), opts.samples, opts.seed)
}

/// Truncated series of the resolution of L_{r,0} against the closed form:
/// t-coefficients to order 40 at z = 0.9 and the partial sum at t = z = 0.9.
pub fn check_sl2_series(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Sl2Series, 1e-10, |acc| {
        let eval = |l: &Sl2Label<f64>, sp: &SpectralPoint<f64>| sl2::qdim_standard_a(kac, l, sp);
        for sp in sl2_points(kac, opts)? {
            for r in 1..kac.u {
                let res = sl2::resolution_of_l::<f64>(kac, 0, r)?;
                if !res.is_strictly_rho_ordered(4 * kac.v as usize)? {
                    return Err(Error::Precondition(format!("resolution of L_{r},0 is not strictly rho-ordered")));
                }
                let q = sl2::resolution_closed_form(kac, &res, &sp)?;
                let trunc = series_truncation(&res, &eval, &sp, 40, 0.9)?;
                for (a, b) in trunc.iter().zip(q.t_series(0.9, 40)) {
                    acc.record(deviation(*a, b));
                }
                let long = series_truncation(&res, &eval, &sp, 400, 0.9)?;
                let partial = long.iter().rev().fold(Complex::new(0.0, 0.0), |s, c| s * 0.9 + c);
                acc.record(deviation(partial, q.value(0.9, 0.9)));
            }
        }
        Ok(())
    })
}

/// Double limit of the resolution of L_{r,0} against its closed form.
pub fn check_sl2_limits(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Sl2Limits, opts.tol.eps_limit, |acc| {
        for sp in sl2_points(kac, opts)? {
            for r in 1..kac.u {
                let res = sl2::resolution_of_l::<f64>(kac, 0, r)?;
                let q = sl2::resolution_closed_form(kac, &res, &sp)?;
                let tz = q.nested_limit(LimitOrder::TThenZ, &opts.tol)?;
                let zt = q.nested_limit(LimitOrder::ZThenT, &opts.tol)?;
                let closed = sl2::qdim_l_closed(kac, 0, r, &sp, &opts.tol)?;
                acc.record(deviation(tz, closed));
                acc.record(deviation(zt, closed));
            }
        }
        Ok(())
    })
}

pub fn check_sl2_euler(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Sl2Euler, 1e-10, |acc| {
        for sp in sl2_points(kac, opts)? {
            for ell in -2..=2 {
                for r in 1..kac.u {
                    for s in 1..kac.v {
                        let (a, b, c) = sl2::ses_eplus::<f64>(kac, ell, r, s)?;
                        let mid = sl2::qdim(kac, &b, &sp, &opts.tol)?;
                        let sum = sl2::qdim(kac, &a, &sp, &opts.tol)? + sl2::qdim(kac, &c, &sp, &opts.tol)?;
                        acc.record(deviation(mid, sum));
                    }
                }
            }
        }
        Ok(())
    })
}

fn random_std(kac: &Kac, rng: &mut ChaCha8Rng) -> Result<Sl2Label<f64>> {
    let ell = rng.gen_range(-3..=3);
    let lambda = rng.gen_range(0.0..2.0);
    Sl2Label::standard(kac, ell, lambda, rng.gen_range(1..kac.u), rng.gen_range(1..kac.v))
}

fn random_dplus(kac: &Kac, rng: &mut ChaCha8Rng) -> Result<Sl2Label<f64>> {
    let ell = rng.gen_range(-3..=3);
    Sl2Label::DPlus { ell, r: rng.gen_range(1..kac.u), s: rng.gen_range(1..kac.v) }.canonicalize(kac)
}

/// Σ c·q(term) = q(X)·q(Y) for random pairs of one kind at every sample.
pub fn check_sl2_homomorphism(kac: &Kac, kind: PairKind, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Sl2Homomorphism(kind), opts.tol.eps_limit, |acc| {
        let salt = match kind {
            PairKind::StdStd => 1,
            PairKind::StdD => 2,
            PairKind::DD => 3,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(31).wrapping_add(salt));
        let pts = sl2_points(kac, opts)?;
        for _ in 0..opts.pairs {
            let (x, y) = match kind {
                PairKind::StdStd => (random_std(kac, &mut rng)?, random_std(kac, &mut rng)?),
                PairKind::StdD => (random_std(kac, &mut rng)?, random_dplus(kac, &mut rng)?),
                PairKind::DD => (random_dplus(kac, &mut rng)?, random_dplus(kac, &mut rng)?),
            };
            let prod = sl2::gr_fusion(kac, &x, &y)?;
            for sp in &pts {
                let qv = sl2::qdim_vacuum_a(kac, sp, &opts.tol)?;
                let lhs = sl2::qdim_a_vector(kac, &prod, sp, &opts.tol)? / qv;
                let rhs = sl2::qdim(kac, &x, sp, &opts.tol)? * sl2::qdim(kac, &y, sp, &opts.tol)?;
                acc.record(deviation(lhs, rhs));
            }
        }
        Ok(())
    })
}

/// A random multiset of indecomposable projectives.
pub fn random_projectives(kac: &Kac, rng: &mut ChaCha8Rng) -> Result<Vec<sl2::ProjectiveObject<f64>>> {
    let n = rng.gen_range(1..=6);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let ell = rng.gen_range(-4..=4);
        let r = rng.gen_range(1..kac.u);
        let s = rng.gen_range(1..kac.v);
        if rng.gen_bool(0.3) {
            // a generic weight, off both atypical values
            let lambda = rng.gen_range(0.0..2.0);
            out.push(sl2::ProjectiveObject::standard(kac, ell, lambda, r, s)?);
        } else {
            out.push(sl2::ProjectiveObject::staggered(kac, ell, r, s)?);
        }
    }
    out.sort_by(|a, b| a.label().order(&b.label()));
    Ok(out)
}

/// projective_lift inverts the Grothendieck image on random multisets.
pub fn check_projective_round_trip(kac: &Kac, opts: &VerifyOptions) -> CheckResult {
    run(CheckId::Sl2ProjectiveRoundTrip, 0.0, |acc| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37);
        for _ in 0..opts.multisets {
            let objs = random_projectives(kac, &mut rng)?;
            let back = sl2::projective_lift(kac, &sl2::grothendieck_image(kac, &objs)?)?;
            acc.mismatch(back == objs);
        }
        Ok(())
    })
}

/// Labels of the minimal model used in reports.
pub fn minimal_labels(kac: &Kac) -> Vec<MinimalLabel> {
    kac.labels()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().to_string(), n);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn minimal_suites_pass() {
        let t = TheoryConfig::Minimal(Kac::new(5, 2).unwrap());
        let res = verify(&t, Suite::All, &VerifyOptions::default());
        assert_eq!(res.len(), 3);
        assert!(res.iter().all(|c| c.passed), "{res:?}");
    }

    #[test]
    fn plan_filters_by_suite() {
        let t = TheoryConfig::<f64>::Singlet(SingletTheory::new(2).unwrap());
        assert_eq!(plan(&t, Suite::Euler), vec![CheckId::SingletEuler]);
        assert!(plan(&TheoryConfig::<f64>::Minimal(Kac::new(3, 2).unwrap()), Suite::Euler).is_empty());
    }

    #[test]
    fn mismatched_check_reports_error() {
        let t = TheoryConfig::<f64>::Minimal(Kac::new(3, 2).unwrap());
        let r = run_check(&t, CheckId::Sl2Euler, &VerifyOptions::default());
        assert!(!r.passed && r.error.is_some());
    }
}
