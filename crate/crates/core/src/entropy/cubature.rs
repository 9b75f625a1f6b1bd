//! Globally adaptive Gauss-Kronrod quadrature in one and two dimensions.
//!
//! The region with the largest error estimate is refined first. Refinement
//! works in fixed-size batches, so the sequence of subdivisions (and hence
//! the result) does not depend on the number of worker threads.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights for the nodes `XGK[1]`, `XGK[3]`, `XGK[5]`, `XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// The 15 Kronrod nodes on `[-1, 1]` with Kronrod and embedded Gauss weights.
fn rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for i in 0..7 {
        let g = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        out[i] = (-XGK[i], WGK[i], g);
        out[14 - i] = (XGK[i], WGK[i], g);
    }
    out[7] = (0.0, WGK[7], WG[3]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Scored<R> {
    region: R,
    value: f64,
    error: f64,
    id: u64,
}

impl<R> PartialEq for Scored<R> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<R> Eq for Scored<R> {}
impl<R> PartialOrd for Scored<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<R> Ord for Scored<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

const BATCH: usize = 8;

/// Generic driver: `eval` returns `(value, error)` for a region, `split`
/// subdivides it (or declines when it is too small). `max_evals` counts
/// region evaluations.
fn refine<R, E, S>(initial: Vec<R>, eval: E, split: S, tol: f64, max_evals: usize) -> Result<QuadResult>
where
    R: Send + Sync,
    E: Fn(&R) -> (f64, f64) + Sync,
    S: Fn(&R) -> Option<Vec<R>>,
{
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Scored<R>> = Vec::new();
    let mut next_id = 0u64;
    let mut evaluations = 0usize;
    let scored: Vec<(f64, f64)> = initial.par_iter().map(&eval).collect();
    for (region, (value, error)) in initial.into_iter().zip(scored) {
        heap.push(Scored { region, value, error, id: next_id });
        next_id += 1;
        evaluations += 1;
    }
    loop {
        let total_err: f64 = heap.iter().chain(&frozen).map(|s| s.error).sum();
        if total_err <= tol || heap.is_empty() {
            break;
        }
        if evaluations >= max_evals {
            let (value, error) = totals(&heap, &frozen);
            return Err(Error::BudgetExceeded {
                estimate: value,
                error,
                evaluations,
            });
        }
        let mut children = Vec::new();
        while children.len() < BATCH {
            let Some(worst) = heap.pop() else { break };
            match split(&worst.region) {
                Some(parts) => children.extend(parts),
                None => frozen.push(worst),
            }
        }
        let scored: Vec<(f64, f64)> = children.par_iter().map(&eval).collect();
        for (region, (value, error)) in children.into_iter().zip(scored) {
            heap.push(Scored { region, value, error, id: next_id });
            next_id += 1;
            evaluations += 1;
        }
    }
    let (value, error) = totals(&heap, &frozen);
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

/// Sums in creation order so the result is independent of heap layout.
fn totals<R>(heap: &BinaryHeap<Scored<R>>, frozen: &[Scored<R>]) -> (f64, f64) {
    let mut all: Vec<(u64, f64, f64)> = heap
        .iter()
        .chain(frozen)
        .map(|s| (s.id, s.value, s.error))
        .collect();
    all.sort_by_key(|x| x.0);
    all.iter().fold((0.0, 0.0), |(v, e), x| (v + x.1, e + x.2))
}

/// `∫_a^b f`, split into `pieces` equal intervals before adapting.
/// `max_evals` counts integrand calls.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, pieces: usize, tol: f64, max_evals: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let r = rule();
    let eval = |&(lo, hi): &(f64, f64)| {
        let c = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        let (mut k, mut g) = (0.0, 0.0);
        for &(x, wk, wg) in &r {
            let y = f(c + h * x);
            k += wk * y;
            g += wg * y;
        }
        (k * h, ((k - g) * h).abs())
    };
    let split = |&(lo, hi): &(f64, f64)| {
        let mid = 0.5 * (lo + hi);
        (hi - lo > 1e-13 * (1.0 + lo.abs())).then(|| vec![(lo, mid), (mid, hi)])
    };
    let step = (b - a) / pieces as f64;
    let initial = (0..pieces)
        .map(|i| (a + i as f64 * step, a + (i + 1) as f64 * step))
        .collect();
    let mut res = refine(initial, eval, split, tol, max_evals.div_ceil(15).max(1))?;
    res.evaluations *= 15;
    Ok(res)
}

/// `∫∫ f(x, y)` over a rectangle split into `pieces × pieces` cells, each
/// integrated with the 15×15 tensor Kronrod rule.
pub fn integrate_2d<F>(
    f: F,
    x: [f64; 2],
    y: [f64; 2],
    pieces: usize,
    tol: f64,
    max_evals: usize,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let r = rule();
    let eval = |cell: &[f64; 4]| {
        let [x0, x1, y0, y1] = *cell;
        let (cx, hx) = (0.5 * (x0 + x1), 0.5 * (x1 - x0));
        let (cy, hy) = (0.5 * (y0 + y1), 0.5 * (y1 - y0));
        let (mut k, mut g) = (0.0, 0.0);
        for &(u, wku, wgu) in &r {
            for &(v, wkv, wgv) in &r {
                let val = f(cx + hx * u, cy + hy * v);
                k += wku * wkv * val;
                g += wgu * wgv * val;
            }
        }
        let scale = hx * hy;
        (k * scale, ((k - g) * scale).abs())
    };
    let split = |cell: &[f64; 4]| {
        let [x0, x1, y0, y1] = *cell;
        if x1 - x0 < 1e-12 {
            return None;
        }
        let (mx, my) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        Some(vec![
            [x0, mx, y0, my],
            [mx, x1, y0, my],
            [x0, mx, my, y1],
            [mx, x1, my, y1],
        ])
    };
    let sx = (x[1] - x[0]) / pieces as f64;
    let sy = (y[1] - y[0]) / pieces as f64;
    let mut initial = Vec::new();
    for j in 0..pieces {
        for i in 0..pieces {
            initial.push([
                x[0] + i as f64 * sx,
                x[0] + (i + 1) as f64 * sx,
                y[0] + j as f64 * sy,
                y[0] + (j + 1) as f64 * sy,
            ]);
        }
    }
    let mut res = refine(initial, eval, split, tol, max_evals.div_ceil(225).max(1))?;
    res.evaluations *= 225;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn weights_sum_to_two() {
        let r = rule();
        let k: f64 = r.iter().map(|x| x.1).sum();
        let g: f64 = r.iter().map(|x| x.2).sum();
        assert!((k - 2.0).abs() < 1e-14);
        assert!((g - 2.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_1d() {
        let res = integrate_1d(|x| x.sin(), 0.0, PI, 1, 1e-12, 100_000).unwrap();
        assert!((res.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_singular_1d() {
        // ∫_0^1 log x dx = -1
        let res = integrate_1d(|x| x.ln(), 0.0, 1.0, 1, 1e-10, 1_000_000).unwrap();
        assert!((res.value + 1.0).abs() < 1e-10, "{res:?}");
    }

    #[test]
    fn log_singular_2d() {
        // ∫∫_{[0,1]²} log(x² + y²) = log 2 - 3 + π/2
        let exact = 2f64.ln() - 3.0 + PI / 2.0;
        let res =
            integrate_2d(|x, y| (x * x + y * y).ln(), [0.0, 1.0], [0.0, 1.0], 1, 1e-8, 50_000_000)
                .unwrap();
        assert!((res.value - exact).abs() < 1e-8, "{res:?}");
        assert!(res.error <= 1e-8);
    }

    #[test]
    fn budget_reports_estimate() {
        let err = integrate_2d(|x, y| (x * x + y * y).ln(), [0.0, 1.0], [0.0, 1.0], 1, 1e-15, 2_000)
            .unwrap_err();
        match err {
            Error::BudgetExceeded { estimate, .. } => assert!(estimate.is_finite()),
            e => panic!("unexpected {e}"),
        }
    }
}
