//! Lobachevsky function and volumes of regular ideal hyperbolic bipyramids.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of power-series terms kept for the Clausen function on `[0, π]`.
/// The ratio between consecutive terms is at most `1/4` there.
const SERIES_TERMS: usize = 30;

fn zeta_even(n: usize) -> f64 {
    // ζ(2n) by direct summation with an Euler-Maclaurin tail.
    if n == 1 {
        return PI * PI / 6.0;
    }
    let s = (2 * n) as f64;
    let big_n = 64.0_f64;
    let mut sum = 0.0;
    for k in (1..64).rev() {
        sum += (k as f64).powf(-s);
    }
    let tail = big_n.powf(1.0 - s) / (s - 1.0)
        + 0.5 * big_n.powf(-s)
        + s * big_n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * big_n.powf(-s - 3.0) / 720.0;
    sum + tail
}

/// `c_k` in `Cl₂(x) = x − x log x + Σ c_k x^{2k+1}`.
fn clausen_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut c = [0.0; SERIES_TERMS];
        let two_pi_sq = (2.0 * PI) * (2.0 * PI);
        let mut scale = 1.0;
        for (i, slot) in c.iter_mut().enumerate() {
            let k = i + 1;
            scale /= two_pi_sq;
            *slot = zeta_even(k) / ((k * (2 * k + 1)) as f64) * scale;
        }
        c
    })
}

/// Clausen function `Cl₂(x)` for `x ∈ [0, π]`.
fn clausen_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let coeffs = clausen_coefficients();
    // Horner in x² from the smallest terms upward.
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x2 + c;
    }
    x - x * x.ln() + acc * x2 * x
}

/// Lobachevsky function `L(θ) = −∫₀^θ log|2 sin t| dt`.
///
/// Odd and π-periodic. Non-finite input yields NaN; use
/// [`try_lobachevsky`] to get an error instead.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let mut t = theta.rem_euclid(PI);
    let mut sign = 1.0;
    if t > PI / 2.0 {
        t = PI - t;
        sign = -1.0;
    }
    sign * 0.5 * clausen_reduced(2.0 * t)
}

pub fn try_lobachevsky(theta: f64) -> Result<f64> {
    if theta.is_finite() {
        Ok(lobachevsky(theta))
    } else {
        Err(Error::InvalidInput(format!("non-finite angle {theta}")))
    }
}

/// Volume of the regular ideal hyperbolic `n`-bipyramid, `2n L(π/n)`.
///
/// The degenerate bigon bipyramid has volume zero.
pub fn bipyramid_volume(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "bipyramid needs n >= 2, got {n}"
        )));
    }
    if n == 2 {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok(2.0 * nf * lobachevsky(PI / nf))
}

/// Same as [`bipyramid_volume`] for face/vertex degrees known to be valid.
/// Degrees below 2 contribute nothing.
pub(crate) fn bipyramid_volume_of_degree(n: usize) -> f64 {
    bipyramid_volume(n as u64).unwrap_or(0.0)
}

/// Regular ideal tetrahedron and octahedron volumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeConstants {
    pub v_tet: f64,
    pub v_oct: f64,
}

impl VolumeConstants {
    pub fn get() -> Self {
        VolumeConstants {
            v_tet: v_tet(),
            v_oct: v_oct(),
        }
    }
}

pub fn v_tet() -> f64 {
    3.0 * lobachevsky(PI / 3.0)
}

pub fn v_oct() -> f64 {
    8.0 * lobachevsky(PI / 4.0)
}
