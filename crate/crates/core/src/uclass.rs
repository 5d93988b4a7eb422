//! The class U(lambda): normalized `f` with `|(z/f)^2 f' - 1| < lambda` on the disk.
//!
//! Candidates are stored through `q(z) = z / f(z)`, which is zero-free at the
//! origin. With that representation
//!
//! ```text
//! U_f(z) = q(z) - z q'(z) - 1
//! ```
//!
//! is an ordinary power series and membership reduces to a modulus bound on it
//! together with `q` having no zero in the disk.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diskfun::DiskFunction;
use crate::error::{Error, Result};
use crate::region::{BoundaryRegion, Containment, DEFAULT_CONTAINMENT_TOL};
use crate::series::{TruncatedSeries, EPS0};

/// Margin around lambda inside which a membership sweep is inconclusive.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-6;
/// Boundary samples used for a majorant curve in subordination checks.
pub const DEFAULT_MAJORANT_RESOLUTION: usize = 8192;
/// Angles per test radius in subordination checks.
pub const DEFAULT_SUBORDINATION_ANGLES: usize = 720;
pub const DEFAULT_TEST_RADII: [f64; 4] = [0.5, 0.9, 0.99, 0.999];

const BOUNDARY_HIT_TOL: f64 = 1e-9;
const Q_ZERO_FLOOR: f64 = 1e-13;

/// Concentric circles on which `|U_f|` is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.99, 0.999]);
        Self { radii, angles: 720 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::InvalidParameter("grid needs at least one radius".into()));
        }
        if let Some(&r) = self.radii.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::OutOfRange { name: "grid radius", value: r });
        }
        if self.angles == 0 {
            return Err(Error::InvalidParameter("grid needs at least one angle".into()));
        }
        Ok(())
    }

    pub fn outer_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    pub fn point(&self, radius: f64, k: usize) -> Complex64 {
        Complex64::from_polar(radius, TAU * k as f64 / self.angles as f64)
    }
}

/// Which constructor produced a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Extremal,
    Phi,
    Omega,
    Dilated,
    Explicit,
}

/// A normalized function `f(z) = z + a_2 z^2 + ...` held as `q = z / f`.
#[derive(Debug, Clone, PartialEq)]
pub struct UCandidate {
    q: TruncatedSeries,
    lambda: f64,
    provenance: Option<Provenance>,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "lambda", value: lambda })
    }
}

impl UCandidate {
    /// Requires `q(0) = 1`, i.e. `f'(0) = 1`.
    pub fn new(q: TruncatedSeries, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let q0 = q.coeffs()[0];
        if (q0 - 1.0).norm() > 1e-14 {
            return Err(Error::InvalidParameter(format!("q(0) must be 1, found {q0}")));
        }
        let mut c = q.coeffs().to_vec();
        c[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            q: TruncatedSeries::from_vec_unchecked(c),
            lambda,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    /// `f(z) = z / ((1 + e^{i theta} z)(1 + lambda e^{i theta} z))`, the family with `|a_2| = 1 + lambda`.
    pub fn extremal(lambda: f64, theta: f64, order: usize) -> Result<Self> {
        check_lambda(lambda)?;
        let e = Complex64::from_polar(1.0, theta);
        let q = TruncatedSeries::with_order(
            &[Complex64::new(1.0, 0.0), (1.0 + lambda) * e, lambda * e * e],
            order,
        )?;
        Ok(Self::new(q, lambda)?.with_provenance(Provenance::Extremal))
    }

    pub fn q(&self) -> &TruncatedSeries {
        &self.q
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn order(&self) -> usize {
        self.q.order()
    }

    /// Second coefficient of `f`, equal to `-q_1`.
    pub fn a2(&self) -> Complex64 {
        -self.q.coeff(1).unwrap_or_default()
    }

    /// Series of `U_f = q - z q' - 1`.
    pub fn u_series(&self) -> TruncatedSeries {
        let zq = self.q.differentiate().mul_z();
        let u = self.q.sub(&zq);
        u.sub(&TruncatedSeries::one(u.order()))
    }
}

/// `U_f(z)` at an interior point.
pub fn u_of_q(cand: &UCandidate, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z));
    }
    Ok(cand.u_series().eval_unchecked(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Inside,
    Outside,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialMax {
    pub radius: f64,
    pub max: f64,
    pub argmax: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub lambda: f64,
    pub sup_estimate: f64,
    pub argmax: Complex64,
    pub margin: f64,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// Zeros of `q` enclosed by the outermost grid circle. Any zero makes `f`
    /// singular in the disk, whatever `|U_f|` does.
    pub q_zero_count: i32,
    pub min_abs_q: f64,
    pub radial_maxima: Vec<RadialMax>,
    pub grid: GridSpec,
}

pub fn sup_u(cand: &UCandidate, grid: &GridSpec) -> Result<MembershipReport> {
    sup_u_with_tol(cand, grid, DEFAULT_MEMBERSHIP_TOL)
}

/// Samples `|U_f|` on every grid circle. The modulus of an analytic function
/// has nondecreasing circle maxima, so the outermost circle decides.
pub fn sup_u_with_tol(cand: &UCandidate, grid: &GridSpec, tol: f64) -> Result<MembershipReport> {
    grid.validate()?;
    let u = cand.u_series();
    let q = cand.q();

    let mut radial_maxima: Vec<RadialMax> = grid
        .radii
        .par_iter()
        .map(|&r| {
            let mut best = RadialMax { radius: r, max: -1.0, argmax: Complex64::new(r, 0.0) };
            for k in 0..grid.angles {
                let z = grid.point(r, k);
                let m = u.eval_unchecked(z).norm();
                if m > best.max {
                    best.max = m;
                    best.argmax = z;
                }
            }
            best
        })
        .collect();
    radial_maxima.sort_by(|a, b| a.radius.total_cmp(&b.radius));

    let outer = radial_maxima.last().expect("validated non-empty");
    let (sup_estimate, argmax) = (outer.max, outer.argmax);

    let r_out = grid.outer_radius();
    let (mut q_zero_count, min_abs_q) =
        series_winding(q, r_out, grid.angles.max(720));
    if min_abs_q < Q_ZERO_FLOOR && q_zero_count == 0 {
        q_zero_count = 1;
    }

    let lambda = cand.lambda();
    let verdict = if q_zero_count != 0 || sup_estimate > lambda + tol {
        Verdict::Outside
    } else if sup_estimate < lambda - tol {
        Verdict::Inside
    } else {
        Verdict::Inconclusive
    };
    Ok(MembershipReport {
        lambda,
        sup_estimate,
        argmax,
        margin: lambda - sup_estimate,
        verdict,
        tolerance: tol,
        q_zero_count,
        min_abs_q,
        radial_maxima,
        grid: grid.clone(),
    })
}

const MAX_BISECTIONS: u32 = 24;

/// Winding number of `f` on `|z| = r` around 0 and the least modulus seen.
///
/// `certified(z, len, f(z))` must guarantee that `f` stays within `|f(z)|/2`
/// of `f(z)` along the arc of length `len` starting at `z`; the phase step
/// over such an arc is then measured without aliasing. Other arcs are
/// bisected. An arc still uncertified at the depth limit sits on a zero and
/// shows up in the returned modulus.
pub(crate) fn winding_on_circle<F, C>(f: F, r: f64, base: usize, certified: C) -> (i32, f64)
where
    F: Fn(Complex64) -> Complex64,
    C: Fn(Complex64, f64, Complex64) -> bool,
{
    let at = |t: f64| f(Complex64::from_polar(r, t));
    let step = TAU / base as f64;
    let mut total = 0.0;
    let mut min_abs = f64::INFINITY;
    let mut stack = Vec::new();
    for k in 0..base {
        let t0 = step * k as f64;
        let v0 = at(t0);
        min_abs = min_abs.min(v0.norm());
        stack.push((t0, t0 + step, v0, at(t0 + step), 0u32));
        while let Some((ta, tb, va, vb, depth)) = stack.pop() {
            if depth >= MAX_BISECTIONS || certified(Complex64::from_polar(r, ta), r * (tb - ta), va) {
                total += (vb / va).arg();
                continue;
            }
            let tm = 0.5 * (ta + tb);
            let vm = at(tm);
            min_abs = min_abs.min(vm.norm());
            stack.push((tm, tb, vm, vb, depth + 1));
            stack.push((ta, tm, va, vm, depth + 1));
        }
    }
    ((total / TAU).round() as i32, min_abs)
}

/// Certificate for a function with `|f'| <= lip` on the disk.
pub(crate) fn lipschitz_certificate(lip: f64) -> impl Fn(Complex64, f64, Complex64) -> bool {
    move |_, len, v| 2.0 * lip * len < v.norm()
}

/// Winding number of a series on `|z| = r`, certified by the local slope
/// `|s'(z)| + len sup|s''|`.
pub(crate) fn series_winding(s: &TruncatedSeries, r: f64, base: usize) -> (i32, f64) {
    let ds = s.differentiate();
    let curvature = coefficient_bound(&ds.differentiate(), r);
    winding_on_circle(
        |z| s.eval_unchecked(z),
        r,
        base,
        |z, len, v| 2.0 * len * (ds.eval_unchecked(z).norm() + curvature * len) < v.norm(),
    )
}

/// `sup |s|` on `|z| = r` bounded by the coefficient moduli.
fn coefficient_bound(s: &TruncatedSeries, r: f64) -> f64 {
    s.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// `q = 1 - (1 + lambda) phi + lambda phi^2` for `phi` fixing the origin.
pub fn q_from_phi(lambda: f64, phi: &DiskFunction, order: usize) -> Result<UCandidate> {
    check_lambda(lambda)?;
    if phi.base_point().norm() > EPS0 {
        return Err(Error::BasePointNotZero(phi.base_point()));
    }
    let outer = TruncatedSeries::with_order(
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(-(1.0 + lambda), 0.0),
            Complex64::new(lambda, 0.0),
        ],
        order,
    )?;
    let q = TruncatedSeries::compose(&outer, &phi.taylor(order))?;
    Ok(UCandidate::new(q, lambda)?.with_provenance(Provenance::Phi))
}

/// `q = 1 - a_2 z + lambda z int_0^z omega`. Whether `q` vanishes in the disk
/// is left to [`sup_u`].
pub fn q_from_omega(a2: Complex64, lambda: f64, omega: &DiskFunction, order: usize) -> Result<UCandidate> {
    check_lambda(lambda)?;
    let big_omega = omega.taylor(order).integrate();
    let tail = big_omega.mul_z().scale(Complex64::new(lambda, 0.0)).truncate(order);
    let linear = TruncatedSeries::with_order(&[Complex64::new(1.0, 0.0), -a2], order)?;
    Ok(UCandidate::new(linear.add(&tail), lambda)?.with_provenance(Provenance::Omega))
}

/// Coefficients of `f`: index `n` holds `a_n`, with `a_0 = 0` and `a_1 = 1`.
pub fn taylor_of_f(cand: &UCandidate) -> Result<TruncatedSeries> {
    let f_over_z = cand.q().reciprocal()?;
    Ok(f_over_z.mul_z().truncate(cand.order()))
}

/// `f_R(z) = f(R z) / R`, i.e. `q_R(z) = q(R z)`.
pub fn dilate(cand: &UCandidate, r: f64) -> Result<UCandidate> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfRange { name: "R", value: r });
    }
    let q = cand.q().rescale_argument(Complex64::new(r, 0.0));
    Ok(UCandidate::new(q, cand.lambda())?.with_provenance(Provenance::Dilated))
}

/// `|-(1 + lambda)(phi - z phi') + lambda phi (phi - 2 z phi')|`, which equals
/// `|U_f(z)|` for the candidate built from `phi`.
pub fn l_of_phi(lambda: f64, phi: &DiskFunction, z: Complex64) -> Result<f64> {
    let p = phi.eval(z)?;
    let zdp = z * phi.derivative(z)?;
    Ok((-(1.0 + lambda) * (p - zdp) + lambda * p * (p - 2.0 * zdp)).norm())
}

/// `m(theta0) = z0 phi'(z0) / phi(z0)` at `z0 = e^{i theta0}`, a point where
/// `|phi|` reaches 1. The quotient is real there.
pub fn julia_quotient(phi: &DiskFunction, theta0: f64) -> Result<f64> {
    let z0 = Complex64::from_polar(1.0, theta0);
    let p = phi.eval(z0)?;
    if p.norm() < 1.0 - BOUNDARY_HIT_TOL {
        return Err(Error::NotBoundaryMax(p.norm()));
    }
    let m = z0 * phi.derivative(z0)? / p;
    if m.im.abs() > 1e-9 {
        return Err(Error::NonRealQuotient(m.im));
    }
    Ok(m.re)
}

/// `lambda + (1 + 3 lambda)(m - 1)`.
pub fn obstruction_formula(lambda: f64, m: f64) -> f64 {
    lambda + (1.0 + 3.0 * lambda) * (m - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub lambda: f64,
    pub theta0: f64,
    pub m: f64,
    pub value: f64,
    pub l_at_z0: f64,
    /// `value > lambda`: the candidate from `phi` is not in the class.
    pub excludes_membership: bool,
}

/// Boundary value of `|U_f|` at a point where `phi = -1`, computed through the
/// Julia quotient and cross-checked against [`l_of_phi`].
pub fn obstruction_value(lambda: f64, phi: &DiskFunction, theta0: f64) -> Result<ObstructionReport> {
    check_lambda(lambda)?;
    let z0 = Complex64::from_polar(1.0, theta0);
    let p = phi.eval(z0)?;
    if (p + 1.0).norm() > BOUNDARY_HIT_TOL {
        return Err(Error::HypothesisViolated(p));
    }
    let m = julia_quotient(phi, theta0)?;
    if m - 1.0 <= BOUNDARY_HIT_TOL {
        return Err(Error::ExcludedRotation);
    }
    let value = obstruction_formula(lambda, m);
    let l_at_z0 = l_of_phi(lambda, phi, z0)?;
    let deviation = (value - l_at_z0).abs();
    if deviation > 1e-8 {
        return Err(Error::ConsistencyCheck { what: "obstruction vs L(phi)(z0)", deviation });
    }
    Ok(ObstructionReport {
        lambda,
        theta0,
        m,
        value,
        l_at_z0,
        excludes_membership: value > lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SubordinationVerdict {
    Holds,
    /// `g(z)` lies outside the majorant's image (or `g(0) != h(0)` when `z = 0`).
    Fails { z: Complex64, value: Complex64 },
    /// `g(z)` is within the containment tolerance of the majorant curve.
    Inconclusive { z: Complex64, value: Complex64, distance: f64 },
}

impl SubordinationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

/// Tests `g ≺ h` for a univalent majorant `h` through `g(0) = h(0)` and
/// `g(|z| = r) ⊂ h(D)` on each test radius.
pub fn subordination_check(
    g: &TruncatedSeries,
    h_boundary: &BoundaryRegion,
    h_at_0: Complex64,
    test_radii: &[f64],
    angles: usize,
) -> SubordinationVerdict {
    let g0 = g.coeffs()[0];
    if (g0 - h_at_0).norm() > 1e-12 {
        return SubordinationVerdict::Fails { z: Complex64::new(0.0, 0.0), value: g0 };
    }
    let points: Vec<Complex64> = test_radii
        .iter()
        .flat_map(|&r| (0..angles).map(move |k| Complex64::from_polar(r, TAU * k as f64 / angles as f64)))
        .collect();
    let status: Vec<(Complex64, Complex64, Containment)> = points
        .par_iter()
        .map(|&z| {
            let w = g.eval_unchecked(z);
            (z, w, h_boundary.classify(w))
        })
        .collect();
    if let Some(&(z, value, _)) = status.iter().find(|s| matches!(s.2, Containment::Outside)) {
        return SubordinationVerdict::Fails { z, value };
    }
    if let Some(&(z, value, Containment::OnBoundary { distance })) =
        status.iter().find(|s| matches!(s.2, Containment::OnBoundary { .. }))
    {
        return SubordinationVerdict::Inconclusive { z, value, distance };
    }
    SubordinationVerdict::Holds
}

/// `1 + 2 lambda z + lambda z^2`, univalent on the disk since `h'` vanishes only at -1.
pub fn quadratic_majorant(lambda: f64, order: usize) -> TruncatedSeries {
    TruncatedSeries::with_order(
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0 * lambda, 0.0),
            Complex64::new(lambda, 0.0),
        ],
        order,
    )
    .expect("finite")
}

/// `(1 - z)(1 - lambda z)`, the reciprocal of `1 / ((1 - z)(1 - lambda z))`.
pub fn reciprocal_majorant(lambda: f64, order: usize) -> TruncatedSeries {
    TruncatedSeries::with_order(
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(-(1.0 + lambda), 0.0),
            Complex64::new(lambda, 0.0),
        ],
        order,
    )
    .expect("finite")
}

/// Boundary curve `h(e^{it})` of a polynomial majorant.
pub fn majorant_region(h: &TruncatedSeries, resolution: usize) -> Result<BoundaryRegion> {
    BoundaryRegion::from_parametrization(
        |t| h.eval_unchecked(Complex64::from_polar(1.0, t)),
        resolution,
        DEFAULT_CONTAINMENT_TOL,
    )
}

fn check_against(g: &TruncatedSeries, h: &TruncatedSeries, test_radii: &[f64]) -> Result<SubordinationVerdict> {
    let region = majorant_region(h, DEFAULT_MAJORANT_RESOLUTION)?;
    Ok(subordination_check(g, &region, h.coeffs()[0], test_radii, DEFAULT_SUBORDINATION_ANGLES))
}

/// `z/f + a_2 z ≺ 1 + 2 lambda z + lambda z^2`.
pub fn check_a2_shift_subordination(cand: &UCandidate, test_radii: &[f64]) -> Result<SubordinationVerdict> {
    let shift = TruncatedSeries::monomial(cand.a2(), 1, cand.order());
    let g = cand.q().add(&shift);
    check_against(&g, &quadratic_majorant(cand.lambda(), cand.order()), test_radii)
}

/// `f/z ≺ 1/((1 - z)(1 - lambda z))`. Both sides are zero-free, so this is
/// checked in the equivalent form `z/f ≺ (1 - z)(1 - lambda z)` whose majorant
/// is a bounded univalent polynomial.
pub fn check_quotient_subordination(cand: &UCandidate, test_radii: &[f64]) -> Result<SubordinationVerdict> {
    check_against(cand.q(), &reciprocal_majorant(cand.lambda(), cand.order()), test_radii)
}

/// `z/f - (1 - lambda) z ≺ 1 + 2 lambda z + lambda z^2`, valid when `z/f`
/// never equals `(1 - lambda)(1 + z)`.
pub fn check_real_shift_subordination(cand: &UCandidate, test_radii: &[f64]) -> Result<SubordinationVerdict> {
    let lambda = cand.lambda();
    let shift = TruncatedSeries::monomial(Complex64::new(1.0 - lambda, 0.0), 1, cand.order());
    let g = cand.q().sub(&shift);
    check_against(&g, &quadratic_majorant(lambda, cand.order()), test_radii)
}
