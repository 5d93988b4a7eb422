//! Banach iteration locating a zero of `q(z) = 1 - a_2 z + lambda z Omega(z)`,
//! `Omega = int_0^z omega`, inside the disk of radius `r`.

use num_complex::Complex64;
use serde::Serialize;

use crate::diskfun::DiskFunction;
use crate::error::{Error, Result};
use crate::search::CircleMax;

use super::antiderivative::v_of_omega;

pub const MAX_ITERATIONS: usize = 10_000;
pub const STEP_TOL: f64 = 1e-12;
/// Slack on the self-map test, which is an equality for the canonical `a_2`.
const SELF_MAP_SLACK: f64 = 1e-12;
/// Steps below this are rounding noise and are left out of the decay fit.
const FIT_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointWitness {
    pub z0: Complex64,
    pub iterations: usize,
    /// `|z_{k+1} - z_k|` for every iteration.
    pub steps: Vec<f64>,
    /// Lipschitz bound `lambda (r + v) / |a_2|` of the map on the closed `r`-disk.
    pub contraction_constant: f64,
    /// `(1 + lambda r v) / |a_2|`, at most `r` for a self-map.
    pub self_map_radius: f64,
    pub v: CircleMax,
    /// `|q(z0)|` with `Omega` by quadrature.
    pub residual: f64,
    /// `exp` of the least-squares slope of `log(step)` against the iteration
    /// index, when at least two steps are above rounding level.
    pub observed_ratio: Option<f64>,
}

/// Iterates `F(z) = (1 + lambda z Omega(z)) / a_2` from 0.
///
/// `F` maps the closed `r`-disk into itself when `(1 + lambda r v)/|a_2| <= r`
/// and contracts it when `lambda (r + v)/|a_2| < 1`, where `v = v(omega)`
/// bounds `|Omega|`. Both are checked before iterating.
pub fn fixed_point_zero(a2: Complex64, lambda: f64, omega: &DiskFunction, r: f64) -> Result<FixedPointWitness> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfRange { name: "r", value: r });
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda });
    }
    let a2_abs = a2.norm();
    if !(a2_abs > 0.0 && a2_abs.is_finite()) {
        return Err(Error::OutOfRange { name: "|a2|", value: a2_abs });
    }
    let v = v_of_omega(omega);
    let self_map_radius = (1.0 + lambda * r * v.value) / a2_abs;
    let contraction_constant = lambda * (r + v.value) / a2_abs;
    if self_map_radius > r + SELF_MAP_SLACK || contraction_constant >= 1.0 {
        return Err(Error::NotContractive {
            self_map: self_map_radius,
            lipschitz: contraction_constant,
        });
    }

    let q_at = |z: Complex64| 1.0 - a2 * z + lambda * z * omega.antiderivative_unchecked(z);
    let map = |z: Complex64| (1.0 + lambda * z * omega.antiderivative_unchecked(z)) / a2;

    let mut z = Complex64::new(0.0, 0.0);
    let mut steps = Vec::new();
    for it in 1..=MAX_ITERATIONS {
        let next = map(z);
        let step = (next - z).norm();
        steps.push(step);
        z = next;
        if step < STEP_TOL {
            return Ok(FixedPointWitness {
                z0: z,
                iterations: it,
                observed_ratio: decay_ratio(&steps),
                steps,
                contraction_constant,
                self_map_radius,
                v,
                residual: q_at(z).norm(),
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        last_step: steps.last().copied().unwrap_or(f64::NAN),
    })
}

fn decay_ratio(steps: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > FIT_FLOOR)
        .map(|(k, &s)| (k as f64, s.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some((sxy / sxx).exp())
}
