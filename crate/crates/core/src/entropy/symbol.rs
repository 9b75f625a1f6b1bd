//! Fourier symbol of the periodic graph Laplacian.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::map::ToroidalMap;

/// `L(e^{iθ}, e^{iφ}) = D − A(θ, φ)`, where every dart from `u` to `v` with
/// shift `(a, b)` adds `e^{i(aθ + bφ)}` to `A[u][v]`.
#[derive(Debug, Clone)]
pub struct LaplacianSymbol {
    dim: usize,
    degree: Vec<f64>,
    /// `(tail, head, a, b)` for every dart.
    darts: Vec<(usize, usize, f64, f64)>,
}

impl LaplacianSymbol {
    pub fn new(map: &ToroidalMap) -> Self {
        let darts = (0..map.dart_count())
            .map(|d| {
                let s = map.shift(d);
                (map.vertex_of(d), map.head(d), s[0] as f64, s[1] as f64)
            })
            .collect();
        LaplacianSymbol {
            dim: map.vertex_count(),
            degree: map.vertex_degrees().into_iter().map(|d| d as f64).collect(),
            darts,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dense row-major matrix at `(θ, φ)`.
    pub fn matrix(&self, theta: f64, phi: f64) -> Vec<Complex64> {
        let n = self.dim;
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &d) in self.degree.iter().enumerate() {
            m[i * n + i] = Complex64::new(d, 0.0);
        }
        for &(u, v, a, b) in &self.darts {
            m[u * n + v] -= Complex64::from_polar(1.0, a * theta + b * phi);
        }
        m
    }

    pub fn to_dmatrix(&self, theta: f64, phi: f64) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.matrix(theta, phi))
    }

    /// `log det L(θ, φ)`; `-∞` where the symbol is singular.
    pub fn log_det(&self, theta: f64, phi: f64) -> f64 {
        let mut m = self.matrix(theta, phi);
        match cholesky_log_det(&mut m, self.dim) {
            Some(v) => v,
            None => self.eigen_log_det(theta, phi),
        }
    }

    fn eigen_log_det(&self, theta: f64, phi: f64) -> f64 {
        let eig = self.eigenvalues(theta, phi);
        let scale = eig.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
        if eig.iter().any(|&l| l <= 1e-14 * scale) {
            return f64::NEG_INFINITY;
        }
        eig.iter().map(|l| l.ln()).sum()
    }

    /// Eigenvalues of the Hermitian symbol, ascending.
    pub fn eigenvalues(&self, theta: f64, phi: f64) -> Vec<f64> {
        let eig = self.to_dmatrix(theta, phi).symmetric_eigenvalues();
        let mut v: Vec<f64> = eig.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// In-place Cholesky of a Hermitian matrix; `None` if a pivot is not
/// comfortably positive.
fn cholesky_log_det(m: &mut [Complex64], n: usize) -> Option<f64> {
    let mut log_det = 0.0;
    let scale = (0..n).map(|i| m[i * n + i].re).fold(0.0, f64::max).max(1.0);
    for j in 0..n {
        let mut diag = m[j * n + j].re;
        for k in 0..j {
            diag -= m[j * n + k].norm_sqr();
        }
        if diag.is_nan() || diag <= 1e-11 * scale {
            return None;
        }
        let ljj = diag.sqrt();
        m[j * n + j] = Complex64::new(ljj, 0.0);
        log_det += 2.0 * ljj.ln();
        for i in j + 1..n {
            let mut s = m[i * n + j];
            for k in 0..j {
                s -= m[i * n + k] * m[j * n + k].conj();
            }
            m[i * n + j] = s / ljj;
        }
    }
    Some(log_det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::fixtures::{hexagonal, square};

    #[test]
    fn square_symbol() {
        let s = LaplacianSymbol::new(&square());
        for &(t, p) in &[(0.3, 1.1), (2.0, -0.4)] {
            let m = s.matrix(t, p);
            let expect = 4.0 - 2.0 * f64::cos(t) - 2.0 * f64::cos(p);
            assert!((m[0].re - expect).abs() < 1e-14 && m[0].im.abs() < 1e-14);
            assert!((s.log_det(t, p) - expect.ln()).abs() < 1e-13);
        }
    }

    #[test]
    fn hexagonal_symbol() {
        let s = LaplacianSymbol::new(&hexagonal());
        let (t, p) = (0.7, -1.3);
        let m = s.matrix(t, p);
        assert_eq!((m[0].re, m[3].re), (3.0, 3.0));
        // Darts from vertex 0 to vertex 1 have shifts 0, (-1,0), (0,-1).
        let off = -(Complex64::new(1.0, 0.0)
            + Complex64::from_polar(1.0, -t)
            + Complex64::from_polar(1.0, -p));
        assert!((m[1] - off).norm() < 1e-14);
        assert!((m[2] - off.conj()).norm() < 1e-14);
    }

    #[test]
    fn singular_at_origin() {
        let s = LaplacianSymbol::new(&hexagonal());
        let eig = s.eigenvalues(0.0, 0.0);
        assert!(eig[0].abs() < 1e-12);
        assert!(eig[1] > 1.0);
        assert_eq!(s.log_det(0.0, 0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn cholesky_matches_eigen() {
        let s = LaplacianSymbol::new(&hexagonal());
        let (t, p) = (1.9, 0.2);
        let via_eigen: f64 = s.eigenvalues(t, p).iter().map(|l| l.ln()).sum();
        assert!((s.log_det(t, p) - via_eigen).abs() < 1e-12);
    }
}
