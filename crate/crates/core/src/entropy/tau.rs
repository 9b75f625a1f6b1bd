//! Spanning tree counts: exact by the matrix-tree theorem, and in log form
//! for torus covers via the Fourier block decomposition.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::symbol::LaplacianSymbol;
use crate::map::{MultiGraph, ToroidalMap};

/// Number of spanning trees. Loops are ignored and parallel edges counted
/// with multiplicity; a disconnected graph has none.
pub fn tau_exact(g: &MultiGraph) -> BigInt {
    let n = g.vertex_count;
    if n <= 1 {
        return BigInt::one();
    }
    if !g.is_connected() {
        return BigInt::zero();
    }
    let m = n - 1;
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for &(u, v) in &g.edges {
        if u == v {
            continue;
        }
        if u < m {
            a[u][u] += 1;
        }
        if v < m {
            a[v][v] += 1;
        }
        if u < m && v < m {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    bareiss_det(a)
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Natural log of a positive big integer (`-∞` for zero).
pub fn ln_big(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let drop = bits.saturating_sub(60);
    let top: BigInt = x >> drop;
    let mantissa: f64 = top.to_string().parse().expect("decimal digits");
    mantissa.ln() + drop as f64 * std::f64::consts::LN_2
}

/// `log τ` of the `n × n` cover, assembled from the Fourier blocks of the
/// Laplacian. Returns `-∞` when the cover is disconnected.
pub fn tau_log_fourier(map: &ToroidalMap, n: usize) -> f64 {
    assert!(n >= 1, "cover size must be positive");
    let sym = LaplacianSymbol::new(map);
    let step = 2.0 * PI / n as f64;
    let blocks: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .filter(|&jk| jk != (0, 0))
        .collect();
    let logs: Vec<f64> = blocks
        .par_iter()
        .map(|&(j, k)| sym.log_det(step * j as f64, step * k as f64))
        .collect();
    let eig = sym.eigenvalues(0.0, 0.0);
    let scale = eig.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let nonzero: Vec<f64> = eig.into_iter().filter(|&l| l > 1e-9 * scale).collect();
    if nonzero.len() + 1 != sym.dim() {
        return f64::NEG_INFINITY;
    }
    let total: f64 = logs.iter().sum::<f64>() + nonzero.iter().map(|l| l.ln()).sum::<f64>();
    total - ((n * n * sym.dim()) as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::cover;
    use crate::map::fixtures::{hexagonal, square};

    /// Counts spanning trees by checking every `(n-1)`-subset of edges.
    fn brute_force(g: &MultiGraph) -> u64 {
        let n = g.vertex_count;
        let e = g.edges.len();
        let mut count = 0;
        for mask in 0u32..(1 << e) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            let mut ok = true;
            for (k, &(u, v)) in g.edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a == b {
                        ok = false;
                        break;
                    }
                    parent[a] = b;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn small_graphs_against_enumeration() {
        let c4 = MultiGraph::cycle(4);
        let k4 = MultiGraph::complete(4);
        assert_eq!(brute_force(&c4), 4);
        assert_eq!(brute_force(&k4), 16);
        assert_eq!(tau_exact(&c4), BigInt::from(4));
        assert_eq!(tau_exact(&k4), BigInt::from(16));
        let sq = cover(&square(), 2, 2);
        assert_eq!(brute_force(&sq), 32);
        assert_eq!(tau_exact(&sq), BigInt::from(32));
    }

    #[test]
    fn disconnected_and_trivial() {
        assert_eq!(tau_exact(&MultiGraph::new(2, vec![])), BigInt::zero());
        assert_eq!(tau_exact(&MultiGraph::new(1, vec![(0, 0)])), BigInt::one());
    }

    #[test]
    fn fourier_matches_exact() {
        assert!((tau_log_fourier(&square(), 2) - 32f64.ln()).abs() < 1e-10);
        assert!(tau_log_fourier(&square(), 1).abs() < 1e-12);
        let h = hexagonal();
        for n in 1..=4 {
            let exact = ln_big(&tau_exact(&cover(&h, n, n)));
            assert!((tau_log_fourier(&h, n) - exact).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(3u8).pow(500);
        assert!((ln_big(&x) - 500.0 * 3f64.ln()).abs() < 1e-10);
        assert_eq!(ln_big(&BigInt::from(1)), 0.0);
    }

    #[test]
    fn bareiss_with_pivoting() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-6));
    }
}
