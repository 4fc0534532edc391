//! Command implementations behind the `verlinde` binary. Every command is a
//! pure function of a [`RunConfig`] and its arguments returning the rendered
//! output and an exit code, so runs with equal inputs are byte-identical.

pub mod config;
pub mod output;

use rayon::prelude::*;
use serde_json::{json, Value};
use verlinde::checks::{plan, run_check, Suite, VerifyOptions};
use verlinde::labels::{fmt_real, ClassLabel, FockLabel, GrothendieckVector, MinimalLabel, PiLabel, SingletLabel, Sl2Label};
use verlinde::resolution::{deviation, LabelShift, PeriodicResolution};
use verlinde::scalar::{sample_points, SpectralPoint};
use verlinde::semisimple::{heis_fusion, heis_qdim, pi0_fusion, pi0_qdim_at, vir_fusion_product, vir_qdim};
use verlinde::theory::TheoryConfig;
use verlinde::{singlet, sl2, Complex, Error, Real, Result};

pub use config::{Format, RunConfig, Window};
use output::{num, render, Report};

/// Rendered command output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: 0 }
    }

    fn error(e: &Error) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(e) }
    }
}

/// 2 for malformed input, 3 for unsupported requests, 4 for failed numerical
/// verification.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) | Error::NotProjectiveClass(_) => 3,
        Error::IncompleteBasis { .. }
        | Error::IllConditioned { .. }
        | Error::FusionUndecomposable(_)
        | Error::NotNearInteger { .. }
        | Error::LimitDisagreement { .. } => 4,
        _ => 2,
    }
}

fn finish(cfg: &RunConfig, report: Result<Report>) -> Outcome {
    match report.and_then(|r| render(cfg, &r)) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::error(&e),
    }
}

type Terms = Vec<(String, i64)>;

fn terms<L: ClassLabel>(v: &GrothendieckVector<L>) -> Terms {
    v.terms().iter().map(|(l, n)| (l.to_string(), *n)).collect()
}

fn terms_json(t: &Terms) -> Value {
    Value::Array(t.iter().map(|(l, n)| json!({"label": l, "coefficient": n})).collect())
}

fn terms_text(t: &Terms) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter()
        .map(|(l, n)| if *n == 1 { l.clone() } else { format!("{n}*{l}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

// fuse

struct QdimCheck {
    samples: usize,
    max_deviation: f64,
    passed: bool,
}

struct Product {
    x: String,
    y: String,
    rule: Option<&'static str>,
    grothendieck: Terms,
    decomposition: Option<Terms>,
    check: Option<QdimCheck>,
    unsupported: Option<Error>,
}

fn qdim_check(cfg: &RunConfig, pairs: impl IntoIterator<Item = Result<(Complex<f64>, Complex<f64>)>>) -> Result<QdimCheck> {
    let mut worst = 0.0f64;
    let mut samples = 0;
    for p in pairs {
        let (lhs, rhs) = p?;
        worst = worst.max(deviation(lhs, rhs));
        samples += 1;
    }
    Ok(QdimCheck { samples, max_deviation: worst, passed: worst <= cfg.tol.eps_limit })
}

fn samples(cfg: &RunConfig, salt: u64) -> Result<Vec<SpectralPoint<f64>>> {
    sample_points(&cfg.theory, cfg.samples, cfg.seed.wrapping_add(salt))
}

fn real(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0)
}

fn fock(rank: usize, text: &str) -> Result<FockLabel<f64>> {
    let l = FockLabel::parse(text)?;
    if l.rank() != rank {
        return Err(Error::Parse(format!("{text:?} has rank {} but the theory has rank {rank}", l.rank())));
    }
    Ok(l)
}

fn compute_product(cfg: &RunConfig, x: &str, y: &str) -> Result<Product> {
    let check = cfg.qdim_check;
    match &cfg.theory {
        TheoryConfig::Minimal(k) => {
            let (a, b) = (MinimalLabel::parse(k, x)?, MinimalLabel::parse(k, y)?);
            let prod = vir_fusion_product(k, &a, &b);
            let qc = check
                .then(|| {
                    qdim_check(
                        cfg,
                        k.labels().iter().map(|d| {
                            let lhs: f64 = prod.terms().iter().map(|(c, n)| *n as f64 * vir_qdim::<f64>(k, c, d)).sum();
                            Ok((real(lhs), real(vir_qdim::<f64>(k, &a, d) * vir_qdim::<f64>(k, &b, d))))
                        }),
                    )
                })
                .transpose()?;
            let t = terms(&prod);
            Ok(Product { x: a.to_string(), y: b.to_string(), rule: None, decomposition: Some(t.clone()), grothendieck: t, check: qc, unsupported: None })
        }
        TheoryConfig::Heisenberg(h) => {
            let (a, b) = (fock(h.rank(), x)?, fock(h.rank(), y)?);
            let c = heis_fusion(&a, &b);
            let qc = check
                .then(|| {
                    let pts = samples(cfg, 1)?;
                    qdim_check(
                        cfg,
                        pts.iter().map(|p| {
                            let SpectralPoint::Vector(rho) = p else { unreachable!() };
                            Ok((heis_qdim(h, &c.lambda, rho)?, heis_qdim(h, &a.lambda, rho)? * heis_qdim(h, &b.lambda, rho)?))
                        }),
                    )
                })
                .transpose()?;
            let t = terms(&GrothendieckVector::single(c));
            Ok(Product { x: a.to_string(), y: b.to_string(), rule: None, decomposition: Some(t.clone()), grothendieck: t, check: qc, unsupported: None })
        }
        TheoryConfig::Pi0(k) => {
            let (a, b) = (PiLabel::parse(x)?, PiLabel::parse(y)?);
            let c = pi0_fusion(&a, &b);
            let qc = check
                .then(|| {
                    let pts = samples(cfg, 1)?;
                    qdim_check(cfg, pts.iter().map(|p| Ok((pi0_qdim_at(k, &c, p)?, pi0_qdim_at(k, &a, p)? * pi0_qdim_at(k, &b, p)?))))
                })
                .transpose()?;
            let t = terms(&GrothendieckVector::single(c));
            Ok(Product { x: a.to_string(), y: b.to_string(), rule: None, decomposition: Some(t.clone()), grothendieck: t, check: qc, unsupported: None })
        }
        TheoryConfig::Singlet(th) => {
            let (a, b) = (SingletLabel::parse(th, x)?, SingletLabel::parse(th, y)?);
            let d = singlet::fuse(th, &a, &b, cfg.seed, &cfg.tol)?;
            let qc = check
                .then(|| {
                    let pts = samples(cfg, 1)?;
                    qdim_check(
                        cfg,
                        pts.iter().map(|p| {
                            let SpectralPoint::Real(mu) = *p else { unreachable!() };
                            let mut lhs = Complex::new(0.0, 0.0);
                            for (l, n) in d.vector.terms() {
                                lhs += singlet::qdim(th, l, mu, &cfg.tol)? * *n as f64;
                            }
                            Ok((lhs, singlet::qdim(th, &a, mu, &cfg.tol)? * singlet::qdim(th, &b, mu, &cfg.tol)?))
                        }),
                    )
                })
                .transpose()?;
            Ok(Product { x: a.to_string(), y: b.to_string(), rule: None, grothendieck: terms(&d.vector), decomposition: None, check: qc, unsupported: None })
        }
        TheoryConfig::Sl2(k) => {
            let (a, b) = (Sl2Label::parse(k, x)?, Sl2Label::parse(k, y)?);
            let (rule, decomposition, gr, unsupported) = match sl2::fuse(k, &a, &b) {
                Ok(rep) => {
                    let summands = rep.summands.iter().map(|(l, n)| (l.to_string(), *n)).collect();
                    (Some(rep.rule), Some(summands), rep.grothendieck, None)
                }
                Err(e @ Error::Unsupported(_)) => (None, None, sl2::gr_fusion(k, &a, &b)?, Some(e)),
                Err(e) => return Err(e),
            };
            let qc = check
                .then(|| {
                    let pts = samples(cfg, 1)?;
                    qdim_check(
                        cfg,
                        pts.iter().map(|p| {
                            let lhs = sl2::qdim_a_vector(k, &gr, p, &cfg.tol)? / sl2::qdim_vacuum_a(k, p, &cfg.tol)?;
                            Ok((lhs, sl2::qdim(k, &a, p, &cfg.tol)? * sl2::qdim(k, &b, p, &cfg.tol)?))
                        }),
                    )
                })
                .transpose()?;
            Ok(Product { x: a.to_string(), y: b.to_string(), rule, grothendieck: terms(&gr), decomposition, check: qc, unsupported })
        }
    }
}

/// X ⊗ Y: the Grothendieck product and, where defined, the direct-sum
/// decomposition, cross-checked against quantum dimensions.
pub fn cmd_fuse(cfg: &RunConfig, x: &str, y: &str) -> Outcome {
    let p = match compute_product(cfg, x, y) {
        Ok(p) => p,
        Err(e) => return Outcome::error(&e),
    };
    let check_json = p.check.as_ref().map(|c| json!({"samples": c.samples, "max_deviation": num(c.max_deviation), "passed": c.passed}));
    let result = json!({
        "x": p.x,
        "y": p.y,
        "rule": p.rule,
        "grothendieck": terms_json(&p.grothendieck),
        "decomposition": p.decomposition.as_ref().map(terms_json),
        "qdim_check": check_json,
    });
    let mut text = format!("{}\n", terms_text(&p.grothendieck));
    match (&p.decomposition, p.rule) {
        (Some(d), Some(rule)) => text.push_str(&format!("decomposition ({rule}): {}\n", terms_text(d))),
        (Some(d), None) => text.push_str(&format!("decomposition: {}\n", terms_text(d))),
        (None, _) if p.unsupported.is_some() => text.push_str("decomposition: unsupported\n"),
        (None, _) => text.push_str("decomposition: Grothendieck class only\n"),
    }
    if let Some(c) = &p.check {
        text.push_str(&format!(
            "qdim check: {} (max deviation {} over {} samples)\n",
            if c.passed { "passed" } else { "FAILED" },
            fmt_real(c.max_deviation),
            c.samples
        ));
    }
    let mut rows: Vec<Vec<String>> =
        p.grothendieck.iter().map(|(l, n)| vec![p.x.clone(), p.y.clone(), "grothendieck".into(), l.clone(), n.to_string()]).collect();
    if let Some(d) = &p.decomposition {
        rows.extend(d.iter().map(|(l, n)| vec![p.x.clone(), p.y.clone(), "decomposition".into(), l.clone(), n.to_string()]));
    }
    let report = Report {
        command: "fuse",
        result,
        csv_header: vec!["x", "y", "kind", "term", "coefficient"],
        csv_rows: rows,
        text,
        text_metadata: false,
    };
    let mut out = finish(cfg, Ok(report));
    if out.code != 0 {
        return out;
    }
    if let Some(e) = &p.unsupported {
        out.stderr = format!("error: {e}\n");
        out.code = exit_code(e);
    } else if let Some(c) = p.check.as_ref().filter(|c| !c.passed) {
        out.stderr = format!("error: qdim cross-check failed (max deviation {})\n", fmt_real(c.max_deviation));
        out.code = 4;
    }
    out
}

// table

fn dedupe<L: ClassLabel>(labels: Vec<L>) -> Vec<L> {
    let mut out: Vec<L> = Vec::new();
    for l in labels {
        if !out.iter().any(|m| m.same_class(&l)) {
            out.push(l);
        }
    }
    out
}

fn range((a, b): (i64, i64)) -> std::ops::RangeInclusive<i64> {
    a..=b
}

type Entry = (String, String, Terms);

fn pair_table<L, M, F>(labels: &[L], f: F) -> Result<Vec<Entry>>
where
    L: ClassLabel + Sync,
    M: ClassLabel,
    F: Fn(&L, &L) -> Result<GrothendieckVector<M>> + Sync,
{
    let n = labels.len();
    (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (&labels[i / n], &labels[i % n]);
            Ok((a.to_string(), b.to_string(), terms(&f(a, b)?)))
        })
        .collect()
}

fn lam_grid(w: &Window, default: &[&str]) -> Vec<String> {
    w.lam.clone().unwrap_or_else(|| default.iter().map(|s| s.to_string()).collect())
}

fn table_entries(cfg: &RunConfig) -> Result<(Vec<String>, Vec<Entry>)> {
    let w = &cfg.window;
    if !matches!(cfg.theory, TheoryConfig::Minimal(_)) && !w.is_set() {
        return Err(Error::Parse(format!(
            "{} is not finite: supply a window with --r-range, --s-range, --l-range or --lam-grid",
            cfg.theory.name()
        )));
    }
    fn names<L: ClassLabel>(v: &[L]) -> Vec<String> {
        v.iter().map(|l| l.to_string()).collect()
    }
    match &cfg.theory {
        TheoryConfig::Minimal(k) => {
            let labels = k.labels();
            Ok((names(&labels), pair_table(&labels, |a, b| Ok(vir_fusion_product(k, a, b)))?))
        }
        TheoryConfig::Heisenberg(h) => {
            let mut labels = Vec::new();
            for g in lam_grid(w, &["0"]) {
                let parts = if h.rank() > 1 && !g.contains(':') { vec![g.as_str(); h.rank()].join(":") } else { g };
                labels.push(fock(h.rank(), &format!("pi[lam={parts}]"))?);
            }
            let labels = dedupe(labels);
            Ok((names(&labels), pair_table(&labels, |a, b| Ok(GrothendieckVector::single(heis_fusion(a, b))))?))
        }
        TheoryConfig::Pi0(_) => {
            let mut labels = Vec::new();
            for ell in range(w.l.unwrap_or((0, 0))) {
                for g in lam_grid(w, &["0"]) {
                    labels.push(PiLabel::new(ell, verlinde::labels::parse_real::<f64>(&g)?));
                }
            }
            let labels = dedupe(labels);
            Ok((names(&labels), pair_table(&labels, |a, b| Ok(GrothendieckVector::single(pi0_fusion(a, b))))?))
        }
        TheoryConfig::Singlet(th) => {
            let mut labels = Vec::new();
            for r in range(w.r.unwrap_or((1, 1))) {
                for s in range(w.s.unwrap_or((1, th.p - 1))) {
                    labels.push(SingletLabel::m(th, r, s).map_err(|e| Error::Parse(e.to_string()))?);
                }
            }
            for g in lam_grid(w, &[]) {
                labels.push(SingletLabel::fock(th, verlinde::labels::parse_real::<f64>(&g)?));
            }
            let labels = dedupe(labels);
            Ok((names(&labels), pair_table(&labels, |a, b| Ok(singlet::fuse(th, a, b, cfg.seed, &cfg.tol)?.vector))?))
        }
        TheoryConfig::Sl2(k) => {
            let mut labels = Vec::new();
            let lams = lam_grid(w, &[]);
            for ell in range(w.l.unwrap_or((0, 0))) {
                for r in range(w.r.unwrap_or((1, k.u - 1))) {
                    for s in range(w.s.unwrap_or((1, k.v - 1))) {
                        for g in &lams {
                            let lam = verlinde::labels::parse_real::<f64>(g)?;
                            labels.push(Sl2Label::standard(k, ell, lam, r, s).map_err(|e| Error::Parse(e.to_string()))?);
                        }
                        let d = Sl2Label::DPlus { ell, r, s };
                        labels.push(d.canonicalize(k).map_err(|e| Error::Parse(e.to_string()))?);
                    }
                }
            }
            let labels = dedupe(labels);
            Ok((names(&labels), pair_table(&labels, |a, b| sl2::gr_fusion(k, a, b))?))
        }
    }
}

/// Full fusion table over the finite label set or the supplied window.
pub fn cmd_table(cfg: &RunConfig) -> Outcome {
    let report = table_entries(cfg).map(|(labels, entries)| {
        let result = json!({
            "labels": labels,
            "entries": entries.iter().map(|(x, y, t)| json!({"x": x, "y": y, "product": terms_json(t)})).collect::<Vec<_>>(),
        });
        let mut text = String::new();
        for (x, y, t) in &entries {
            text.push_str(&format!("{x} x {y} = {}\n", terms_text(t)));
        }
        let csv_rows = entries
            .iter()
            .flat_map(|(x, y, t)| t.iter().map(move |(l, n)| vec![x.clone(), y.clone(), l.clone(), n.to_string()]))
            .collect();
        Report { command: "table", result, csv_header: vec!["x", "y", "term", "coefficient"], csv_rows, text, text_metadata: true }
    });
    finish(cfg, report)
}

// qdim

fn sl2_point(k: &verlinde::theory::Kac, text: &str) -> Result<SpectralPoint<f64>> {
    match Sl2Label::<f64>::parse(k, text)? {
        Sl2Label::Std { ell, lambda, r, s } => Ok(SpectralPoint::Sl2 { ell, lambda, r, s }),
        other => Err(Error::Parse(format!("spectral point {other} must be a generic E[l=..;lam=..;r=..,s=..]"))),
    }
}

fn point_text(p: &SpectralPoint<f64>) -> String {
    match p {
        SpectralPoint::Real(x) => fmt_real(*x),
        SpectralPoint::Sl2 { ell, lambda, r, s } => format!("E[l={ell};lam={};r={r},s={s}]", fmt_real(*lambda)),
        SpectralPoint::Kac { r, s } => format!("({r},{s})"),
        SpectralPoint::Vector(v) => format!("pi[lam={}]", v.iter().map(|x| fmt_real(*x)).collect::<Vec<_>>().join(":")),
        SpectralPoint::Pi { ell, lambda } => format!("Pi[l={ell};lam={}]", fmt_real(*lambda)),
    }
}

fn qdim_points(cfg: &RunConfig, at: Option<&str>) -> Result<Vec<SpectralPoint<f64>>> {
    let Some(text) = at else {
        return match &cfg.theory {
            TheoryConfig::Minimal(k) => Ok(k.labels().iter().map(|l| SpectralPoint::Kac { r: l.r, s: l.s }).collect()),
            _ => samples(cfg, 0),
        };
    };
    Ok(vec![match &cfg.theory {
        TheoryConfig::Minimal(k) => {
            let l = MinimalLabel::parse(k, text)?;
            SpectralPoint::Kac { r: l.r, s: l.s }
        }
        TheoryConfig::Heisenberg(h) => SpectralPoint::Vector(fock(h.rank(), text)?.lambda),
        TheoryConfig::Pi0(_) => {
            let l = PiLabel::<f64>::parse(text)?;
            SpectralPoint::Pi { ell: l.ell, lambda: l.lambda }
        }
        TheoryConfig::Singlet(_) => SpectralPoint::Real(verlinde::labels::parse_real(text)?),
        TheoryConfig::Sl2(k) => sl2_point(k, text)?,
    }])
}

fn qdim_values(cfg: &RunConfig, label: &str, at: Option<&str>) -> Result<(String, Vec<(String, Complex<f64>)>)> {
    let points = qdim_points(cfg, at)?;
    let eval = |f: &dyn Fn(&SpectralPoint<f64>) -> Result<Complex<f64>>| -> Result<Vec<(String, Complex<f64>)>> {
        points.iter().map(|p| Ok((point_text(p), f(p)?))).collect()
    };
    match &cfg.theory {
        TheoryConfig::Minimal(k) => {
            let a = MinimalLabel::parse(k, label)?;
            let v = eval(&|p| {
                let SpectralPoint::Kac { r, s } = *p else { unreachable!() };
                Ok(real(vir_qdim::<f64>(k, &a, &MinimalLabel { r, s })))
            })?;
            Ok((a.to_string(), v))
        }
        TheoryConfig::Heisenberg(h) => {
            let a = fock(h.rank(), label)?;
            let v = eval(&|p| {
                let SpectralPoint::Vector(rho) = p else { unreachable!() };
                heis_qdim(h, &a.lambda, rho)
            })?;
            Ok((a.to_string(), v))
        }
        TheoryConfig::Pi0(k) => {
            let a = PiLabel::parse(label)?;
            Ok((a.to_string(), eval(&|p| pi0_qdim_at(k, &a, p))?))
        }
        TheoryConfig::Singlet(th) => {
            let a = SingletLabel::parse(th, label)?;
            let v = eval(&|p| {
                let SpectralPoint::Real(mu) = *p else { unreachable!() };
                singlet::qdim(th, &a, mu, &cfg.tol)
            })?;
            Ok((a.to_string(), v))
        }
        TheoryConfig::Sl2(k) => {
            let a = Sl2Label::parse(k, label)?;
            Ok((a.to_string(), eval(&|p| sl2::qdim(k, &a, p, &cfg.tol))?))
        }
    }
}

/// Normalized quantum dimension of a label at a point, or at the sample points.
pub fn cmd_qdim(cfg: &RunConfig, label: &str, at: Option<&str>) -> Outcome {
    let report = qdim_values(cfg, label, at).map(|(label, values)| {
        let result = json!({
            "label": label,
            "values": values.iter().map(|(p, z)| json!({"point": p, "re": num(z.re), "im": num(z.im)})).collect::<Vec<_>>(),
        });
        let mut text = format!("q[{label}]\n");
        for (p, z) in &values {
            text.push_str(&format!("{p}  re={} im={}\n", fmt_real(z.re), fmt_real(z.im)));
        }
        let csv_rows = values.iter().map(|(p, z)| vec![label.clone(), p.clone(), fmt_real(z.re), fmt_real(z.im)]).collect();
        Report { command: "qdim", result, csv_header: vec!["label", "point", "re", "im"], csv_rows, text, text_metadata: false }
    });
    finish(cfg, report)
}

// resolve

fn resolution_report<L, S, T>(label: String, res: &PeriodicResolution<L, S, T>, depth: usize) -> Result<Report>
where
    L: ClassLabel + std::fmt::Display,
    S: LabelShift<L>,
    T: Real,
{
    let ordered = res.is_strictly_rho_ordered(depth.max(1))?;
    let doc = res.to_json(depth)?;
    let mut text = format!("{label}\nstrictly rho-ordered to depth {depth}: {}\n", if ordered { "yes" } else { "no" });
    let mut rows = Vec::new();
    for i in 0..depth {
        let slot = res.slot(i)?;
        let names: Vec<String> = slot.iter().map(|t| format!("{} @ z^{}", t.label, fmt_real(t.z_degree.f64()))).collect();
        text.push_str(&format!("slot {i}: {}\n", if names.is_empty() { "0".into() } else { names.join(" + ") }));
        for t in &slot {
            rows.push(vec![label.clone(), i.to_string(), t.label.to_string(), fmt_real(t.z_degree.f64())]);
        }
    }
    if let Some(n) = res.note() {
        text.push_str(&format!("convention: {n}\n"));
    }
    Ok(Report {
        command: "resolve",
        result: json!({"label": label, "depth": depth, "strictly_rho_ordered": ordered, "resolution": doc}),
        csv_header: vec!["label", "slot", "term", "z_degree"],
        csv_rows: rows,
        text,
        text_metadata: false,
    })
}

fn resolve(cfg: &RunConfig, label: &str, depth: usize) -> Result<Report> {
    match &cfg.theory {
        TheoryConfig::Singlet(th) => {
            let a = SingletLabel::<f64>::parse(th, label)?;
            let res = match a {
                SingletLabel::M { r, s } => singlet::resolution_of_m(th, r, s)?,
                SingletLabel::Frs { r, s } => singlet::spliced_resolution_of_f(th, r + 1, th.p - s)?,
                SingletLabel::F { .. } => singlet::trivial_resolution(th, a)?,
                SingletLabel::Fbar { .. } => return Err(Error::Unsupported(format!("no standard resolution of {a} is implemented"))),
            };
            resolution_report(a.to_string(), &res, depth)
        }
        TheoryConfig::Sl2(k) => {
            let a = Sl2Label::<f64>::parse(k, label)?;
            match a {
                Sl2Label::DMinus { ell, r, s } => resolution_report(a.to_string(), &sl2::resolution_of_d_minus::<f64>(k, ell, r, s)?, depth),
                other => Err(Error::Unsupported(format!("{other} is not a simple atypical module"))),
            }
        }
        t => Err(Error::Unsupported(format!("{} is semisimple; every module is its own resolution", t.name()))),
    }
}

/// Standard resolution of a label, spelled out to `depth` slots.
pub fn cmd_resolve(cfg: &RunConfig, label: &str, depth: usize) -> Outcome {
    finish(cfg, resolve(cfg, label, depth))
}

// verify

/// Runs a verification suite in parallel; results keep plan order.
pub fn cmd_verify(cfg: &RunConfig, suite: &str) -> Outcome {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return Outcome::error(&e),
    };
    let opts = VerifyOptions { samples: cfg.samples, seed: cfg.seed, tol: cfg.tol, ..VerifyOptions::default() };
    let ids = plan(&cfg.theory, suite);
    let results: Vec<_> = ids.par_iter().map(|id| run_check(&cfg.theory, *id, &opts)).collect();
    let passed = results.iter().all(|c| c.passed);
    let checks: Vec<Value> = results
        .iter()
        .map(|c| {
            let mut v = json!({
                "suite": c.suite,
                "name": c.name,
                "passed": c.passed,
                "cases": c.cases,
                "max_deviation": num(c.max_deviation),
                "threshold": num(c.threshold),
            });
            if let Some(e) = &c.error {
                v["error"] = json!(e);
            }
            v
        })
        .collect();
    let mut text = String::new();
    for c in &results {
        text.push_str(&format!(
            "{} {}/{} cases={} max_deviation={} threshold={}{}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.cases,
            fmt_real(c.max_deviation),
            fmt_real(c.threshold),
            c.error.as_ref().map(|e| format!(" error: {e}")).unwrap_or_default()
        ));
    }
    if results.is_empty() {
        text.push_str(&format!("no {suite} checks apply to {}\n", cfg.theory.name()));
    }
    text.push_str(&format!("{}\n", if passed { "all checks passed" } else { "some checks FAILED" }));
    let csv_rows = results
        .iter()
        .map(|c| {
            vec![
                c.suite.clone(),
                c.name.clone(),
                c.passed.to_string(),
                c.cases.to_string(),
                fmt_real(c.max_deviation),
                fmt_real(c.threshold),
                c.error.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let report = Report {
        command: "verify",
        result: json!({"suite": suite.to_string(), "passed": passed, "checks": checks}),
        csv_header: vec!["suite", "check", "passed", "cases", "max_deviation", "threshold", "error"],
        csv_rows,
        text,
        text_metadata: true,
    };
    let mut out = finish(cfg, Ok(report));
    if out.code == 0 && !passed {
        out.code = 1;
    }
    out
}
