//! Two-variable Mahler measure via Jensen's formula in `w`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::cubature::integrate_1d;
use super::laurent::LaurentPoly2;
use super::{EntropyEstimate, Method};
use crate::error::{Error, Result};

pub const DEFAULT_MAHLER_TOL: f64 = 1e-5;
const MAX_EVALS: usize = 20_000_000;

/// Roots of `Σ c_k w^k` (lowest degree first, nonzero leading coefficient)
/// as eigenvalues of the companion matrix.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let mut c = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        c[(i, n - 1)] = -coeffs[i] / lead;
    }
    c.eigenvalues()
        .map(|v| v.iter().copied().collect())
        .unwrap_or_else(|| {
            c.schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
        })
}

/// `∫ log|q(e^{iφ})| dφ/2π` for a one-variable polynomial, by Jensen.
fn jensen(coeffs: &[Complex64]) -> f64 {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
    }
    // Normalise by whichever end coefficient is larger; reversing the
    // polynomial inverts its roots and leaves the measure unchanged.
    if c[0].norm() > c[c.len() - 1].norm() {
        c.reverse();
    }
    let lead = c[c.len() - 1].norm();
    if lead == 0.0 {
        return f64::NEG_INFINITY;
    }
    lead.ln()
        + polynomial_roots(&c)
            .iter()
            .map(|r| r.norm().max(1.0).ln())
            .sum::<f64>()
}

/// `m(p) = (2π)⁻² ∫∫ log|p(e^{iθ}, e^{iφ})|`.
pub fn mahler_measure(p: &LaurentPoly2, tol: f64) -> Result<EntropyEstimate> {
    if p.is_zero() {
        return Err(Error::DegeneratePolynomial("polynomial is identically zero".into()));
    }
    let f = |theta: f64| jensen(&p.w_coefficients(theta));
    let res = integrate_1d(f, 0.0, 2.0 * PI, 8, tol * 2.0 * PI, MAX_EVALS)
        .map_err(|e| match e {
            Error::BudgetExceeded { estimate, error, evaluations } => Error::BudgetExceeded {
                estimate: estimate / (2.0 * PI),
                error: error / (2.0 * PI),
                evaluations,
            },
            other => other,
        })?;
    if !res.value.is_finite() {
        return Err(Error::DegeneratePolynomial(
            "log|p| is not integrable on the torus".into(),
        ));
    }
    Ok(EntropyEstimate {
        value: res.value / (2.0 * PI),
        method: Method::Mahler,
        error: res.error / (2.0 * PI),
        samples: res.evaluations,
        sequence: Vec::new(),
    })
}
