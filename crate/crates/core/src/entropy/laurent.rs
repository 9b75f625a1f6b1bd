//! Two-variable Laurent polynomials with real coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Σ c_{a,b} z^a w^b`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), f64>,
}

impl LaurentPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (f64, i64, i64)>) -> Self {
        let mut p = LaurentPoly2::new();
        for (c, a, b) in terms {
            p.add_term(c, a, b);
        }
        p
    }

    pub fn add_term(&mut self, c: f64, a: i64, b: i64) {
        let entry = self.terms.entry((a, b)).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(c, a, b)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (f64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (c, a, b))
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms()
            .map(|(c, a, b)| c * z.powi(a as i32) * w.powi(b as i32))
            .sum()
    }

    pub fn mul(&self, other: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::new();
        for (c, a, b) in self.terms() {
            for (d, e, f) in other.terms() {
                out.add_term(c * d, a + e, b + f);
            }
        }
        out
    }

    /// Range of `w`-exponents.
    pub fn w_degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Coefficients of the one-variable polynomial `w^{-b_min} p(e^{iθ}, w)`,
    /// lowest degree first.
    pub fn w_coefficients(&self, theta: f64) -> Vec<Complex64> {
        let Some((lo, hi)) = self.w_degree_range() else {
            return Vec::new();
        };
        let mut out = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (c, a, b) in self.terms() {
            out[(b - lo) as usize] += c * Complex64::from_polar(1.0, a as f64 * theta);
        }
        out
    }

    /// Parses lines `c a b` meaning `c·z^a·w^b`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = LaurentPoly2::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected `c a b`, found `{line}`")));
            }
            let c: f64 = fields[0]
                .parse()
                .map_err(|_| err(format!("bad coefficient `{}`", fields[0])))?;
            if !c.is_finite() {
                return Err(err(format!("coefficient `{}` is not finite", fields[0])));
            }
            let a: i64 = fields[1]
                .parse()
                .map_err(|_| err(format!("bad z exponent `{}`", fields[1])))?;
            let b: i64 = fields[2]
                .parse()
                .map_err(|_| err(format!("bad w exponent `{}`", fields[2])))?;
            p.add_term(c, a, b);
        }
        Ok(p)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        LaurentPoly2::parse(&text)
    }
}

impl fmt::Display for LaurentPoly2 {
    /// The same `c a b` line format accepted by [`LaurentPoly2::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, a, b) in self.terms() {
            writeln!(f, "{c} {a} {b}")?;
        }
        Ok(())
    }
}
