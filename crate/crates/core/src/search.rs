//! Maximisation of smooth periodic functions on the circle: a dense scan
//! followed by golden-section refinement around the best sample.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

/// Samples used by the boundary scans unless told otherwise.
pub const DEFAULT_SCAN: usize = 4096;
/// Width in `t` at which golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMax {
    /// Maximising parameter in [0, 2pi).
    pub t_star: f64,
    pub value: f64,
    /// Number of scan samples the refinement started from.
    pub scan_resolution: usize,
}

/// Golden-section search for a maximum of a unimodal `f` on [lo, hi].
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of a 2pi-periodic function. Scan values are computed in parallel
/// and reduced in index order, so ties go to the smallest `t` and the result
/// does not depend on the thread count.
pub fn maximize_on_circle<F>(f: F, resolution: usize) -> CircleMax
where
    F: Fn(f64) -> f64 + Sync,
{
    let resolution = resolution.max(8);
    let h = TAU / resolution as f64;
    let values: Vec<f64> = (0..resolution).into_par_iter().map(|k| f(k as f64 * h)).collect();
    let (best_k, best_v) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bk, bv), (k, &v)| if v > bv { (k, v) } else { (bk, bv) });

    let center = best_k as f64 * h;
    let (t, v) = golden_section_max(&f, center - h, center + h, REFINE_TOL);
    // improvements at rounding level count as ties and keep the scan point
    let improved = v > best_v + 4.0 * f64::EPSILON * best_v.abs();
    let (t_star, value) = if improved { (t.rem_euclid(TAU), v) } else { (center, best_v) };
    CircleMax {
        t_star,
        value,
        scan_resolution: resolution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, v) = golden_section_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-10);
        // the value is flat to rounding within sqrt(eps) of the vertex
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn circle_max_refines_between_samples() {
        let m = maximize_on_circle(|t| (t - 1.234_567).cos(), 64);
        assert!((m.t_star - 1.234_567).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn flat_function_keeps_first_sample() {
        let m = maximize_on_circle(|_| 0.5, 128);
        assert_eq!(m.t_star, 0.0);
        assert_eq!(m.value, 0.5);
    }

    #[test]
    fn wraps_around_zero() {
        let m = maximize_on_circle(|t| (t + 0.001).cos(), 256);
        assert!((m.t_star - (TAU - 0.001)).abs() < 1e-7);
    }
}
