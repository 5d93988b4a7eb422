//! Functions attaining the refined bounds on `|a_2|`.
//!
//! Both constructions put a zero of `q` on the unit circle, so the bound is
//! reached by a member of the class with no zero of `q` inside the disk.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diskfun::{DiskFunction, DiskSpec};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};
use crate::uclass::{lipschitz_certificate, sup_u, winding_on_circle, GridSpec, MembershipReport, Provenance, UCandidate};

use super::antiderivative::{b_a, b_a_taylor, max_boundary_ba, v_of_x};

const CHECK_POINTS: usize = 100;
const WINDING_SAMPLES: usize = 8192;
const MAX_SERIES_ORDER: usize = 2048;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Truncation order at which `|a|^order` falls below double precision.
pub fn series_order_for(a_mod: f64) -> usize {
    if a_mod < 1e-3 {
        return DEFAULT_ORDER;
    }
    let needed = ((1e-17f64).ln() / a_mod.ln()).ceil() as usize + 8;
    needed.clamp(DEFAULT_ORDER, MAX_SERIES_ORDER)
}

/// Zero count inside the outer grid circle and the least modulus over the grid.
/// `lip` bounds `|f'|` on the disk.
fn interior_scan<F: Fn(Complex64) -> Complex64>(f: F, grid: &GridSpec, lip: f64) -> (f64, i32) {
    let mut min_abs = f64::INFINITY;
    for &r in &grid.radii {
        for k in 0..grid.angles {
            min_abs = min_abs.min(f(grid.point(r, k)).norm());
        }
    }
    let r_out = grid.outer_radius();
    let (zeros, ring_min) = winding_on_circle(f, r_out, WINDING_SAMPLES, lipschitz_certificate(lip));
    (min_abs.min(ring_min), zeros)
}

/// Deterministic points spread over the closed disk.
fn spread_points() -> impl Iterator<Item = Complex64> {
    (0..CHECK_POINTS).map(|k| Complex64::from_polar((k % 10 + 1) as f64 / 10.0, GOLDEN_ANGLE * k as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealBaseSharpness {
    pub lambda: f64,
    pub a: f64,
    pub a2: f64,
    pub bound: f64,
    pub v: f64,
    /// Largest disagreement between `1 - a_2 z + lambda z int_0^z omega` and
    /// `1 - z - lambda z int_z^1 omega` over sample points of the closed disk.
    pub expression_gap: f64,
    pub min_abs_g_interior: f64,
    pub interior_zero_count: i32,
    pub g_at_one: f64,
    pub bound_gap: f64,
    pub series_order: usize,
    pub membership: MembershipReport,
    #[serde(skip)]
    pub candidate: UCandidate,
}

/// `G(z) = 1 - (1 + lambda v(a)) z + lambda z int_0^z omega` for
/// `omega(z) = (z + a)/(1 + a z)`, which vanishes at `z = 1`.
pub fn sharp_a2_real_base(lambda: f64, a: f64) -> Result<RealBaseSharpness> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda });
    }
    let v = v_of_x(a);
    let bound = 1.0 + lambda * v;
    let a2 = bound;
    let ac = Complex64::new(a, 0.0);
    let omega = DiskFunction::moebius_shift(ac, 0.0)?;
    let one = Complex64::new(1.0, 0.0);

    let via_origin = |z: Complex64| 1.0 - a2 * z + lambda * z * omega.antiderivative_unchecked(z);
    let via_one = |z: Complex64| 1.0 - z - lambda * z * omega.integral_between(z, one);
    let expression_gap = spread_points()
        .map(|z| (via_origin(z) - via_one(z)).norm())
        .fold(0.0, f64::max);

    let closed = |z: Complex64| 1.0 - a2 * z + lambda * z * z * b_a(ac, z).expect("|a| < 1");
    let grid = GridSpec::default();
    let (min_abs_g_interior, interior_zero_count) = interior_scan(closed, &grid, a2 + 2.0 * lambda);
    let g_at_one = via_origin(one).norm();

    let series_order = series_order_for(a);
    let candidate = crate::uclass::q_from_omega(Complex64::new(a2, 0.0), lambda, &omega, series_order)?;
    let membership = sup_u(&candidate, &grid)?;
    Ok(RealBaseSharpness {
        lambda,
        a,
        a2,
        bound,
        v,
        expression_gap,
        min_abs_g_interior,
        interior_zero_count,
        g_at_one,
        bound_gap: (a2.abs() - bound).abs(),
        series_order,
        membership,
        candidate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryMaxSharpness {
    pub lambda: f64,
    pub a: Complex64,
    /// Maximiser of `|B_a(e^{it})|`.
    pub t0: f64,
    /// `arg B_a(e^{i t0})`.
    pub alpha: f64,
    pub theta: f64,
    pub psi: f64,
    pub omega: DiskSpec,
    pub a2: Complex64,
    pub ba_max: f64,
    pub bound: f64,
    pub bound_gap: f64,
    /// `|D(e^{i theta})|`.
    pub d_at_boundary: f64,
    pub min_abs_d_interior: f64,
    pub interior_zero_count: i32,
    /// Largest `|int_0^z omega - z B_a(z e^{i psi})|` over 100 seeded points.
    pub integral_identity_gap: f64,
    pub series_order: usize,
    pub membership: MembershipReport,
    #[serde(skip)]
    pub candidate: UCandidate,
}

impl BoundaryMaxSharpness {
    /// `D` as a truncated series.
    pub fn d_series(&self) -> &TruncatedSeries {
        self.candidate.q()
    }
}

/// `D(z) = 1 - a_2 z + lambda z^2 B_a(z e^{i psi})` with `2 theta = -alpha`,
/// `psi = t0 - theta` and `a_2 = e^{-i theta} + lambda e^{i theta} B_a(e^{i t0})`.
/// Then `D(e^{i theta}) = 0` and `|a_2| = 1 + lambda max_t |B_a(e^{it})|`.
pub fn sharp_a2_boundary_max(lambda: f64, a: Complex64) -> Result<BoundaryMaxSharpness> {
    if !(a.norm() < 1.0) {
        return Err(Error::BasePointOutsideClosedDisk(a));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda });
    }
    let peak = max_boundary_ba(a)?;
    let t0 = peak.t_star;
    let b_peak = b_a(a, Complex64::from_polar(1.0, t0))?;
    let alpha = b_peak.arg();
    let theta = -alpha / 2.0;
    let psi = t0 - theta;
    let e_theta = Complex64::from_polar(1.0, theta);
    let e_psi = Complex64::from_polar(1.0, psi);
    let a2 = e_theta.conj() + lambda * e_theta * b_peak;
    let ba_max = b_peak.norm();
    let bound = 1.0 + lambda * ba_max;

    let omega = DiskFunction::moebius_shift(a, psi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let integral_identity_gap = (0..CHECK_POINTS)
        .map(|_| {
            let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
            let closed = z * b_a(a, z * e_psi).expect("|a| < 1");
            (omega.antiderivative_unchecked(z) - closed).norm()
        })
        .fold(0.0, f64::max);

    let d = |z: Complex64| 1.0 - a2 * z + lambda * z * z * b_a(a, z * e_psi).expect("|a| < 1");
    let d_at_boundary = d(e_theta).norm();
    let grid = GridSpec::default();
    let (min_abs_d_interior, interior_zero_count) = interior_scan(d, &grid, a2.norm() + 2.0 * lambda);

    let series_order = series_order_for(a.norm());
    let tail = b_a_taylor(a, series_order)?
        .rescale_argument(e_psi)
        .mul_z()
        .mul_z()
        .scale(Complex64::new(lambda, 0.0))
        .truncate(series_order);
    let linear = TruncatedSeries::with_order(&[Complex64::new(1.0, 0.0), -a2], series_order)?;
    let candidate = UCandidate::new(linear.add(&tail), lambda)?.with_provenance(Provenance::Omega);
    let membership = sup_u(&candidate, &grid)?;

    Ok(BoundaryMaxSharpness {
        lambda,
        a,
        t0,
        alpha,
        theta,
        psi,
        omega: omega.to_spec(),
        a2,
        ba_max,
        bound,
        bound_gap: (a2.norm() - bound).abs(),
        d_at_boundary,
        min_abs_d_interior,
        interior_zero_count,
        integral_identity_gap,
        series_order,
        membership,
        candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uclass::Verdict;

    fn accepted(v: Verdict) -> bool {
        matches!(v, Verdict::Inside | Verdict::Inconclusive)
    }

    #[test]
    fn real_base_example() {
        let rep = sharp_a2_real_base(0.5, 0.5).unwrap();
        assert!((rep.a2 - 1.391_802_337_837_753_5).abs() < 1e-12);
        assert!(rep.expression_gap < 1e-10);
        assert!(rep.g_at_one < 1e-9);
        assert!(rep.min_abs_g_interior > 0.0);
        assert_eq!(rep.interior_zero_count, 0);
        assert_eq!(rep.bound_gap, 0.0);
        assert!(accepted(rep.membership.verdict));
    }

    #[test]
    fn real_base_small_a_tends_to_half() {
        let rep = sharp_a2_real_base(0.8, 1e-6).unwrap();
        assert!((rep.a2 - 1.4).abs() < 1e-6);
    }

    #[test]
    fn boundary_max_reduces_for_real_a() {
        let rep = sharp_a2_boundary_max(0.5, Complex64::new(0.5, 0.0)).unwrap();
        assert!(rep.theta.abs() < 1e-6 && rep.alpha.abs() < 1e-6);
        // t0 is only located to about sqrt(eps) on the flat top of |B_a|
        assert!((rep.a2 - Complex64::new(1.0 + 0.5 * v_of_x(0.5), 0.0)).norm() < 1e-7);
        assert!((rep.a2.norm() - (1.0 + 0.5 * v_of_x(0.5))).abs() < 1e-12);
        assert!(rep.d_at_boundary < 1e-8);
        assert!(rep.bound_gap < 1e-12);
        assert_eq!(rep.interior_zero_count, 0);
        assert!(rep.integral_identity_gap < 1e-9);
        assert!(accepted(rep.membership.verdict));
    }

    #[test]
    fn boundary_max_at_zero_base() {
        let rep = sharp_a2_boundary_max(0.6, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(rep.t0, 0.0);
        assert!((rep.a2 - Complex64::new(1.3, 0.0)).norm() < 1e-15);
        assert!(rep.d_at_boundary < 1e-15);
    }

    #[test]
    fn boundary_max_complex_base() {
        for &a in &[Complex64::new(-0.3, 0.5), Complex64::from_polar(0.9, 2.2)] {
            let rep = sharp_a2_boundary_max(0.7, a).unwrap();
            assert!(rep.d_at_boundary < 1e-8, "{a}: {}", rep.d_at_boundary);
            assert!(rep.bound_gap < 1e-12);
            assert_eq!(rep.interior_zero_count, 0);
            assert!(rep.integral_identity_gap < 1e-9);
            assert!(accepted(rep.membership.verdict), "{a}: {:?}", rep.membership.verdict);
            let on_series = rep.d_series().eval(Complex64::from_polar(1.0, rep.theta)).unwrap();
            assert!(on_series.norm() < 1e-8);
        }
    }

    #[test]
    fn order_grows_with_base_point() {
        assert_eq!(series_order_for(0.0), DEFAULT_ORDER);
        assert!(series_order_for(0.9) > 300);
        assert_eq!(series_order_for(0.999_999), MAX_SERIES_ORDER);
    }
}
