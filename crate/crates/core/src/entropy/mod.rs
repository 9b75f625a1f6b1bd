//! Spanning tree entropy per fundamental domain, `z^fd = |V| z`.

mod cubature;
mod laurent;
mod mahler;
mod symbol;
mod tau;

pub use cubature::{integrate_1d, integrate_2d, QuadResult};
pub use laurent::LaurentPoly2;
pub use mahler::{mahler_measure, polynomial_roots, DEFAULT_MAHLER_TOL};
pub use symbol::LaplacianSymbol;
pub use tau::{bareiss_det, ln_big, tau_exact, tau_log_fourier};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::ToroidalMap;

pub const DEFAULT_LOGDET_TOL: f64 = 1e-4;
pub const DEFAULT_MAX_N: usize = 64;
pub const LOGDET_MAX_EVALS: usize = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Logdet,
    Mahler,
    FiniteSize,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Logdet => "logdet",
            Method::Mahler => "mahler",
            Method::FiniteSize => "finite-size",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: Method,
    pub error: f64,
    pub samples: usize,
    /// `(n, log τ_n / (n²|V|))` for finite-size estimates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence: Vec<(usize, f64)>,
}

/// `z^fd = (2π)⁻² ∫∫ log det L(e^{iθ}, e^{iφ})` over `[-π, π]²`.
///
/// The integrable singularity at the origin sits on the corners of the four
/// initial cells; adaptive subdivision refines towards it until the summed
/// error estimate drops below `tol`.
pub fn entropy_logdet(map: &ToroidalMap, tol: f64) -> Result<EntropyEstimate> {
    entropy_logdet_budget(map, tol, LOGDET_MAX_EVALS)
}

/// [`entropy_logdet`] with an explicit cap on symbol evaluations.
pub fn entropy_logdet_budget(map: &ToroidalMap, tol: f64, max_evals: usize) -> Result<EntropyEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let sym = LaplacianSymbol::new(map);
    let norm = 4.0 * PI * PI;
    let res = integrate_2d(
        |t, p| sym.log_det(t, p),
        [-PI, PI],
        [-PI, PI],
        2,
        tol * norm,
        max_evals,
    )
    .map_err(|e| match e {
        Error::BudgetExceeded { estimate, error, evaluations } => Error::BudgetExceeded {
            estimate: estimate / norm,
            error: error / norm,
            evaluations,
        },
        other => other,
    })?;
    Ok(EntropyEstimate {
        value: res.value / norm,
        method: Method::Logdet,
        error: res.error / norm,
        samples: res.evaluations,
        sequence: Vec::new(),
    })
}

/// Default cover sizes: powers of two from 8 up to `max_n`.
pub fn default_sizes(max_n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = 8;
    while n <= max_n.max(8) {
        out.push(n);
        n *= 2;
    }
    out
}

/// Fits `z_n = z + c log n / n² + d / n²` to three cover sizes.
fn fit3(pts: &[(usize, f64)]) -> f64 {
    let rows: Vec<[f64; 4]> = pts
        .iter()
        .map(|&(n, zn)| {
            let n = n as f64;
            [1.0, n.ln() / (n * n), 1.0 / (n * n), zn]
        })
        .collect();
    let m = nalgebra::Matrix3::from_fn(|i, j| rows[i][j]);
    let rhs = nalgebra::Vector3::from_fn(|i, _| rows[i][3]);
    m.lu().solve(&rhs).map(|x| x[0]).unwrap_or(f64::NAN)
}

/// Extrapolates `log τ(cover(m, n, n)) / n²` over increasing sizes. The error
/// estimate compares the fit on the largest three sizes with a fit on the
/// preceding three (or a two-term fit when fewer sizes are given).
pub fn entropy_finite_size(map: &ToroidalMap, sizes: &[usize]) -> Result<EntropyEstimate> {
    if sizes.len() < 3 || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return Err(Error::InvalidInput(
            "finite-size extrapolation needs at least three increasing sizes".into(),
        ));
    }
    let sequence: Vec<(usize, f64)> = sizes
        .iter()
        .map(|&n| (n, tau_log_fourier(map, n) / (n * n) as f64))
        .collect();
    if sequence.iter().any(|s| !s.1.is_finite()) {
        return Err(Error::InvalidInput("cover is disconnected".into()));
    }
    let k = sequence.len();
    let value = fit3(&sequence[k - 3..]);
    let alt = if k >= 4 {
        fit3(&sequence[k - 4..k - 1])
    } else {
        let (n1, z1) = sequence[k - 2];
        let (n2, z2) = sequence[k - 1];
        let (a, b) = ((n1 * n1) as f64, (n2 * n2) as f64);
        (b * z2 - a * z1) / (b - a)
    };
    Ok(EntropyEstimate {
        value,
        method: Method::FiniteSize,
        error: (value - alt).abs(),
        samples: sizes.iter().map(|n| n * n).sum(),
        sequence,
    })
}
