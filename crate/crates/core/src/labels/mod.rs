//! Module labels, their identifications, and integer combinations of classes.

mod minimal;
mod singlet;
mod sl2;

use std::cmp::Ordering;
use std::fmt;

pub use minimal::{delta_rs, lambda_rs, FockLabel, MinimalLabel, PiLabel};
pub use singlet::SingletLabel;
pub use sl2::Sl2Label;

use crate::{Error, Real, Result};

/// Comparison width for real weights: eps_exclusion, widened for f32.
pub fn weight_tol<T: Real>() -> T {
    T::c(1e-9).max(T::epsilon() * T::c(1024.0))
}

/// Representative of x modulo m in [0, m).
pub fn reduce_mod<T: Real>(x: T, m: T) -> T {
    let y = x - (x / m).floor() * m;
    if y >= m || y < T::zero() {
        T::zero()
    } else {
        y
    }
}

/// |x − y| measured on ℝ/mℤ.
pub fn dist_mod<T: Real>(x: T, y: T, m: T) -> T {
    let d = reduce_mod(x - y, m);
    d.min(m - d)
}

/// Snaps a reduced weight that sits within tolerance of the period back to zero.
pub(crate) fn clean_mod<T: Real>(x: T, m: T) -> T {
    let y = reduce_mod(x, m);
    if (m - y) < weight_tol::<T>() || y < weight_tol::<T>() {
        T::zero()
    } else {
        y
    }
}

/// A label that can live in a [`GrothendieckVector`].
pub trait ClassLabel: Clone + fmt::Debug + fmt::Display {
    fn same_class(&self, other: &Self) -> bool;
    fn order(&self, other: &Self) -> Ordering;
}

/// Finite integer combination of labels; zero coefficients are removed and
/// terms kept in a deterministic order.
#[derive(Clone, Debug)]
pub struct GrothendieckVector<L> {
    terms: Vec<(L, i64)>,
}

impl<L: ClassLabel> Default for GrothendieckVector<L> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<L: ClassLabel> GrothendieckVector<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: L) -> Self {
        let mut v = Self::new();
        v.add_term(label, 1);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (L, i64)>) -> Self {
        let mut v = Self::new();
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    pub fn add_term(&mut self, label: L, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let Some(i) = self.terms.iter().position(|(l, _)| l.same_class(&label)) {
            self.terms[i].1 += coeff;
            if self.terms[i].1 == 0 {
                self.terms.remove(i);
            }
            return;
        }
        let pos = self
            .terms
            .iter()
            .position(|(l, _)| label.order(l) == Ordering::Less)
            .unwrap_or(self.terms.len());
        self.terms.insert(pos, (label, coeff));
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, 1);
    }

    pub fn add_scaled(&mut self, other: &Self, k: i64) {
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c * k);
        }
    }

    pub fn terms(&self) -> &[(L, i64)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(L, i64)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &L) -> i64 {
        self.terms
            .iter()
            .find(|(l, _)| l.same_class(label))
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// Applies a linear map term-wise.
    pub fn flat_map<M: ClassLabel>(&self, mut f: impl FnMut(&L) -> Result<GrothendieckVector<M>>) -> Result<GrothendieckVector<M>> {
        let mut out = GrothendieckVector::new();
        for (l, c) in &self.terms {
            out.add_scaled(&f(l)?, *c);
        }
        Ok(out)
    }
}

impl<L: ClassLabel> PartialEq for GrothendieckVector<L> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(l, c)| other.coefficient(l) == *c)
    }
}

impl<L: ClassLabel> fmt::Display for GrothendieckVector<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            let a = c.abs();
            match (i, *c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Renders a float with 12 significant digits, trailing zeros trimmed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let s = format!("{:.11e}", x);
        let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
        format!("{}e{}", trim_zeros(m.to_string()), e)
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Splits `Name[k1=v1;k2=v2,k3=v3]` into the name and key/value pairs.
pub(crate) fn parse_bracket(text: &str) -> Result<(String, Vec<(String, String)>)> {
    let text = text.trim();
    let open = text
        .find('[')
        .ok_or_else(|| Error::Parse(format!("expected '[' in label {text:?}")))?;
    if !text.ends_with(']') {
        return Err(Error::Parse(format!("expected trailing ']' in label {text:?}")));
    }
    let name = text[..open].trim().to_string();
    let body = &text[open + 1..text.len() - 1];
    let mut fields = Vec::new();
    for part in body.split([';', ',']) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("field {part:?} is not key=value")))?;
        fields.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok((name, fields))
}

pub(crate) fn field<'a>(fields: &'a [(String, String)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Parse(format!("missing field {key}")))
}

pub(crate) fn int_field(fields: &[(String, String)], key: &str) -> Result<i64> {
    let v = field(fields, key)?;
    v.parse()
        .map_err(|_| Error::Parse(format!("field {key} = {v:?} is not an integer")))
}

/// Parses a real number, accepting rationals such as `-3/2`.
pub fn parse_real<T: Real>(v: &str) -> Result<T> {
    let v = v.trim();
    if let Some((a, b)) = v.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad number {v:?}")))?;
        let b: f64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad number {v:?}")))?;
        if b == 0.0 {
            return Err(Error::Parse(format!("zero denominator in {v:?}")));
        }
        return Ok(T::c(a / b));
    }
    v.parse::<f64>()
        .map(T::c)
        .map_err(|_| Error::Parse(format!("bad number {v:?}")))
}

pub(crate) fn real_field<T: Real>(fields: &[(String, String)], key: &str) -> Result<T> {
    parse_real(field(fields, key)?)
}

pub(crate) fn cmp_real<T: Real>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(0.25), "0.25");
        assert_eq!(fmt_real(-1.5), "-1.5");
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_real(2.0), "2");
        assert_eq!(fmt_real(-1e-20), "-1e-20");
        assert_eq!(fmt_real(-0.0), "0");
    }

    #[test]
    fn modular_reduction() {
        assert!((reduce_mod(-0.5f64, 2.0) - 1.5).abs() < 1e-15);
        assert!((dist_mod(1.99f64, 0.01, 2.0) - 0.02).abs() < 1e-12);
        assert_eq!(clean_mod(2.0 - 1e-13, 2.0f64), 0.0);
    }

    #[test]
    fn bracket_parsing() {
        let (n, f) = parse_bracket("E[l=1;lam=0.25;r=2,s=1]").unwrap();
        assert_eq!(n, "E");
        assert_eq!(int_field(&f, "l").unwrap(), 1);
        assert_eq!(real_field::<f64>(&f, "lam").unwrap(), 0.25);
        assert!(parse_bracket("E[l=1").is_err());
        assert_eq!(parse_real::<f64>("-3/2").unwrap(), -1.5);
    }
}
