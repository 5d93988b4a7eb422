//! Analytic self-maps of the unit disk given by closed-form parametric families.
//!
//! Every constructor guarantees `|f| <= 1` on the closed disk by construction:
//! Möbius shifts and finite Blaschke products are inner or automorphic, and
//! polynomials are divided by a certified bound on their sup norm.

use std::f64::consts::TAU;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::series::{TruncatedSeries, DEFAULT_ORDER, DISK_SLACK};

const QUAD_TOL: f64 = 1e-15;

/// JSON form of a disk function, tagged by `kind`.
///
/// Complex numbers are written as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DiskSpec {
    /// `(a + z e^{i psi}) / (1 + conj(a) z e^{i psi})`
    Moebius {
        a: Complex64,
        #[serde(default)]
        psi: f64,
    },
    /// `e^{i rotation} prod (z - z_k) / (1 - conj(z_k) z)`
    Blaschke {
        zeros: Vec<Complex64>,
        #[serde(default)]
        rotation: f64,
    },
    /// `e^{i theta} z^k`
    Monomial {
        #[serde(default)]
        theta: f64,
        k: u32,
    },
    /// `sum c_j z^j / max(1, sum |c_j|)`
    Poly { coeffs: Vec<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
enum Family {
    MoebiusShift { a: Complex64, psi: f64 },
    Blaschke { zeros: Vec<Complex64>, rotation: f64 },
    Monomial { theta: f64, k: u32 },
    ScaledPolynomial { raw: Vec<Complex64>, normalizer: f64 },
}

#[derive(Debug, Clone)]
pub struct DiskFunction {
    family: Family,
    base_point: Complex64,
    taylor_cache: OnceLock<TruncatedSeries>,
}

impl PartialEq for DiskFunction {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

fn check_closed_disk(z: Complex64) -> Result<()> {
    if z.norm() > 1.0 + DISK_SLACK {
        Err(Error::OutsideDisk(z))
    } else {
        Ok(())
    }
}

fn check_finite(x: f64, name: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: x })
    }
}

/// Möbius coefficients with |a| this close to 1 are treated as the constant `a`.
const UNIMODULAR_SLACK: f64 = 1e-14;

impl DiskFunction {
    fn from_family(family: Family) -> Self {
        let mut f = Self {
            family,
            base_point: Complex64::new(0.0, 0.0),
            taylor_cache: OnceLock::new(),
        };
        f.base_point = f.value(Complex64::new(0.0, 0.0));
        f
    }

    /// `omega(z) = (a + z e^{i psi}) / (1 + conj(a) z e^{i psi})`, so `omega(0) = a`.
    pub fn moebius_shift(a: Complex64, psi: f64) -> Result<Self> {
        check_finite(psi, "psi")?;
        if !(a.norm() <= 1.0 + DISK_SLACK) {
            return Err(Error::BasePointOutsideClosedDisk(a));
        }
        Ok(Self::from_family(Family::MoebiusShift { a, psi }))
    }

    pub fn blaschke(zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        check_finite(rotation, "rotation")?;
        if let Some(&z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::ZeroOnOrOutsideBoundary(z));
        }
        Ok(Self::from_family(Family::Blaschke { zeros, rotation }))
    }

    pub fn monomial(theta: f64, k: u32) -> Result<Self> {
        check_finite(theta, "theta")?;
        if k == 0 {
            return Err(Error::InvalidParameter("monomial degree must be at least 1".into()));
        }
        Ok(Self::from_family(Family::Monomial { theta, k }))
    }

    /// The rotation `e^{i theta} z`.
    pub fn rotation(theta: f64) -> Result<Self> {
        Self::monomial(theta, 1)
    }

    /// Polynomial divided by `max(1, sum |c_j|)`.
    pub fn scaled_polynomial(raw: Vec<Complex64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs a coefficient".into()));
        }
        if let Some(k) = raw.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        let normalizer = raw.iter().map(|c| c.norm()).sum::<f64>().max(1.0);
        Ok(Self::from_family(Family::ScaledPolynomial { raw, normalizer }))
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        if !(c.norm() <= 1.0 + DISK_SLACK) {
            return Err(Error::BasePointOutsideClosedDisk(c));
        }
        Self::scaled_polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::from_family(Family::ScaledPolynomial {
            raw: vec![Complex64::new(0.0, 0.0)],
            normalizer: 1.0,
        })
    }

    pub fn from_spec(spec: &DiskSpec) -> Result<Self> {
        match spec {
            DiskSpec::Moebius { a, psi } => Self::moebius_shift(*a, *psi),
            DiskSpec::Blaschke { zeros, rotation } => Self::blaschke(zeros.clone(), *rotation),
            DiskSpec::Monomial { theta, k } => Self::monomial(*theta, *k),
            DiskSpec::Poly { coeffs } => Self::scaled_polynomial(coeffs.clone()),
        }
    }

    pub fn to_spec(&self) -> DiskSpec {
        match &self.family {
            Family::MoebiusShift { a, psi } => DiskSpec::Moebius { a: *a, psi: *psi },
            Family::Blaschke { zeros, rotation } => DiskSpec::Blaschke {
                zeros: zeros.clone(),
                rotation: *rotation,
            },
            Family::Monomial { theta, k } => DiskSpec::Monomial { theta: *theta, k: *k },
            Family::ScaledPolynomial { raw, .. } => DiskSpec::Poly { coeffs: raw.clone() },
        }
    }

    /// The value at the origin.
    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    /// Divisor used by a polynomial family, 1 otherwise.
    pub fn normalizer(&self) -> f64 {
        match &self.family {
            Family::ScaledPolynomial { normalizer, .. } => *normalizer,
            _ => 1.0,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_closed_disk(z)?;
        Ok(self.value(z))
    }

    pub(crate) fn value(&self, z: Complex64) -> Complex64 {
        match &self.family {
            Family::MoebiusShift { a, psi } => {
                if a.norm() >= 1.0 - UNIMODULAR_SLACK {
                    return *a;
                }
                let u = z * unit(*psi);
                (a + u) / (1.0 + a.conj() * u)
            }
            Family::Blaschke { zeros, rotation } => zeros
                .iter()
                .fold(unit(*rotation), |acc, zk| acc * (z - zk) / (1.0 - zk.conj() * z)),
            Family::Monomial { theta, k } => unit(*theta) * z.powu(*k),
            Family::ScaledPolynomial { raw, normalizer } => {
                raw.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c) / normalizer
            }
        }
    }

    /// Closed-form derivative on the closed disk.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        check_closed_disk(z)?;
        let d = match &self.family {
            Family::MoebiusShift { a, psi } => {
                if a.norm() >= 1.0 - UNIMODULAR_SLACK {
                    Complex64::new(0.0, 0.0)
                } else {
                    let e = unit(*psi);
                    let den = 1.0 + a.conj() * z * e;
                    e * (1.0 - a.norm_sqr()) / (den * den)
                }
            }
            Family::Blaschke { zeros, rotation } => {
                let factors: Vec<Complex64> =
                    zeros.iter().map(|zk| (z - zk) / (1.0 - zk.conj() * z)).collect();
                let mut sum = Complex64::new(0.0, 0.0);
                for (k, zk) in zeros.iter().enumerate() {
                    let den = 1.0 - zk.conj() * z;
                    let mut term = (1.0 - zk.norm_sqr()) / (den * den);
                    for (j, fj) in factors.iter().enumerate() {
                        if j != k {
                            term *= fj;
                        }
                    }
                    sum += term;
                }
                unit(*rotation) * sum
            }
            Family::Monomial { theta, k } => unit(*theta) * (*k as f64) * z.powu(k - 1),
            Family::ScaledPolynomial { raw, normalizer } => {
                raw.iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, (j, &c)| acc * z + c * j as f64)
                    / normalizer
            }
        };
        if d.re.is_finite() && d.im.is_finite() {
            Ok(d)
        } else {
            Err(Error::DerivativeUnavailable(z))
        }
    }

    /// Taylor coefficients about 0 up to `order`, from exact recurrences.
    pub fn taylor(&self, order: usize) -> TruncatedSeries {
        if order == DEFAULT_ORDER {
            return self.taylor_cache.get_or_init(|| self.compute_taylor(order)).clone();
        }
        self.compute_taylor(order)
    }

    fn compute_taylor(&self, order: usize) -> TruncatedSeries {
        match &self.family {
            Family::MoebiusShift { a, psi } => moebius_series(*a, unit(*psi), order),
            Family::Blaschke { zeros, rotation } => zeros
                .iter()
                .fold(TruncatedSeries::constant(unit(*rotation), order), |acc, zk| {
                    acc.mul(&moebius_series(-zk, Complex64::new(1.0, 0.0), order))
                }),
            Family::Monomial { theta, k } => TruncatedSeries::monomial(unit(*theta), *k as usize, order),
            Family::ScaledPolynomial { raw, normalizer } => {
                let scaled: Vec<Complex64> = raw.iter().map(|c| c / normalizer).collect();
                TruncatedSeries::with_order(&scaled, order).expect("coefficients checked finite")
            }
        }
    }

    /// `int_0^z f(t) dt` along the segment [0, z] by adaptive Gauss–Legendre.
    pub fn antiderivative(&self, z: Complex64) -> Result<Complex64> {
        check_closed_disk(z)?;
        Ok(self.antiderivative_unchecked(z))
    }

    pub(crate) fn antiderivative_unchecked(&self, z: Complex64) -> Complex64 {
        self.integral_between(Complex64::new(0.0, 0.0), z)
    }

    /// `int_{z1}^{z2} f(t) dt` along the straight segment.
    pub fn integral_between(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let segments = if (z2 - z1).norm() <= 0.5 { 1 } else { 2 };
        quad::integrate_segment(&|t| self.value(t), z1, z2, segments, QUAD_TOL)
    }

    /// Largest `|f|` over `samples` equally spaced boundary points.
    pub fn boundary_sup(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| self.value(unit(TAU * k as f64 / samples as f64)).norm())
            .fold(0.0, f64::max)
    }
}

/// Taylor series of `(a + u z) / (1 + conj(a) u z)` with `|u| = 1`.
fn moebius_series(a: Complex64, u: Complex64, order: usize) -> TruncatedSeries {
    let mut c = Vec::with_capacity(order + 1);
    c.push(a);
    let scale = 1.0 - a.norm_sqr();
    let ratio = -a.conj() * u;
    let mut p = u * scale;
    for _ in 1..=order {
        c.push(p);
        p *= ratio;
    }
    if a.norm() >= 1.0 - UNIMODULAR_SLACK {
        c.iter_mut().skip(1).for_each(|x| *x = Complex64::new(0.0, 0.0));
    }
    TruncatedSeries::new(c).expect("finite by construction")
}

/// Sharp bound `(|a| + r) / (1 + |a| r)` on `|omega(z)|` for `omega(0) = a`, `|z| = r`.
pub fn schwarz_pick_envelope(a_mod: f64, r: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&a_mod) && (0.0..=1.0).contains(&r));
    (a_mod + r) / (1.0 + a_mod * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn moebius_examples() {
        let id = DiskFunction::moebius_shift(c(0.0, 0.0), 0.0).unwrap();
        let z = c(0.3, -0.2);
        assert!((id.eval(z).unwrap() - z).norm() < 1e-16);

        let w = DiskFunction::moebius_shift(c(0.5, 0.0), 0.0).unwrap();
        assert_eq!(w.base_point(), c(0.5, 0.0));
        let v = w.eval(c(0.0, 0.5)).unwrap().norm();
        // |(0.5 + 0.5i)/(1 + 0.25i)| = sqrt(0.5)/sqrt(1.0625)
        assert!((v - (0.5f64 / 1.0625).sqrt()).abs() < 1e-15);
        assert!((v - 0.685_994_340_570_035_4).abs() < 1e-12);
        assert!(v <= schwarz_pick_envelope(0.5, 0.5));

        assert!(matches!(
            DiskFunction::moebius_shift(c(1.1, 0.0), 0.0),
            Err(Error::BasePointOutsideClosedDisk(_))
        ));
    }

    #[test]
    fn unimodular_base_point_is_constant() {
        let a = Complex64::from_polar(1.0, 0.4);
        let w = DiskFunction::moebius_shift(a, 0.3).unwrap();
        assert_eq!(w.eval(c(0.2, 0.7)).unwrap(), a);
        assert_eq!(w.derivative(c(0.2, 0.7)).unwrap(), c(0.0, 0.0));
        let t = w.taylor(5);
        assert_eq!(t.coeffs()[0], a);
        assert!(t.coeffs()[1..].iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn blaschke_examples() {
        let b = DiskFunction::blaschke(vec![c(0.0, 0.0), c(0.0, 0.0)], PI).unwrap();
        let z = c(0.3, 0.4);
        assert!((b.eval(z).unwrap() + z * z).norm() < 1e-15);

        let b = DiskFunction::blaschke(vec![c(0.0, 0.0), c(0.5, 0.0)], PI).unwrap();
        assert!((b.eval(c(1.0, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let z = c(-0.2, 0.6);
        let expected = -z * (z - 0.5) / (1.0 - 0.5 * z);
        assert!((b.eval(z).unwrap() - expected).norm() < 1e-15);

        let b = DiskFunction::blaschke(vec![c(0.3, -0.4), c(-0.7, 0.1), c(0.0, 0.8)], 1.1).unwrap();
        for k in 0..64 {
            let m = b.eval(unit(TAU * k as f64 / 64.0)).unwrap().norm();
            assert!((m - 1.0).abs() < 1e-12);
        }

        assert!(matches!(
            DiskFunction::blaschke(vec![c(1.0, 0.0)], 0.0),
            Err(Error::ZeroOnOrOutsideBoundary(_))
        ));
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(schwarz_pick_envelope(0.0, 0.37), 0.37);
        assert_eq!(schwarz_pick_envelope(0.42, 0.0), 0.42);
        assert!((schwarz_pick_envelope(0.5, 0.5) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn taylor_examples() {
        let id = DiskFunction::rotation(0.0).unwrap().taylor(4);
        assert_eq!(id, TruncatedSeries::identity(4));

        let m = DiskFunction::blaschke(vec![c(0.0, 0.0), c(0.0, 0.0)], PI).unwrap().taylor(5);
        assert!((m.coeffs()[2] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(m.coeffs().iter().enumerate().all(|(k, x)| k == 2 || x.norm() < 1e-15));

        let a = c(0.4, 0.3);
        let w = DiskFunction::moebius_shift(a, 0.0).unwrap();
        let t = w.taylor(DEFAULT_ORDER);
        let s = 1.0 - a.norm_sqr();
        assert_eq!(t.coeffs()[0], a);
        assert!((t.coeffs()[1] - s).norm() < 1e-15);
        assert!((t.coeffs()[2] + a.conj() * s).norm() < 1e-15);
        assert!((t.coeffs()[3] - a.conj() * a.conj() * s).norm() < 1e-15);
        for j in 0..8 {
            let z = Complex64::from_polar(0.1 + 0.05 * j as f64, 0.9 * j as f64);
            assert!((t.eval(z).unwrap() - w.eval(z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn taylor_matches_pointwise_for_every_family() {
        let families = vec![
            DiskFunction::moebius_shift(c(-0.3, 0.6), 2.0).unwrap(),
            DiskFunction::blaschke(vec![c(0.1, 0.2), c(-0.5, 0.0), c(0.0, 0.0)], 0.4).unwrap(),
            DiskFunction::monomial(1.0, 3).unwrap(),
            DiskFunction::scaled_polynomial(vec![c(0.1, 0.0), c(0.0, 2.0), c(-1.0, 1.0)]).unwrap(),
        ];
        for f in &families {
            let t = f.taylor(DEFAULT_ORDER);
            for j in 0..8 {
                let z = Complex64::from_polar(0.5, 0.8 * j as f64);
                assert!((t.eval(z).unwrap() - f.eval(z).unwrap()).norm() < 1e-13);
            }
            // necessary condition for membership of the unit ball of H-infinity
            assert!(t.coeffs().iter().all(|x| x.norm() <= 1.0 + 1e-9));
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let families = vec![
            DiskFunction::moebius_shift(c(0.2, -0.5), 0.7).unwrap(),
            DiskFunction::blaschke(vec![c(0.0, 0.0), c(0.5, 0.0), c(-0.2, 0.3)], PI).unwrap(),
            DiskFunction::monomial(0.3, 4).unwrap(),
            DiskFunction::scaled_polynomial(vec![c(0.0, 0.0), c(0.5, 0.0), c(0.0, -0.3)]).unwrap(),
        ];
        let h = 1e-6;
        for f in &families {
            for j in 0..10 {
                let z = Complex64::from_polar(0.8, 0.6 * j as f64);
                let fd = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
                assert!((f.derivative(z).unwrap() - fd).norm() < 1e-5);
            }
        }
    }

    #[test]
    fn scaled_polynomial_is_bounded() {
        let p = DiskFunction::scaled_polynomial(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 3.0)]).unwrap();
        assert_eq!(p.normalizer(), 6.0);
        assert!(p.boundary_sup(2048) <= 1.0 + 1e-9);
        let small = DiskFunction::constant(c(0.5, 0.0)).unwrap();
        assert_eq!(small.eval(c(0.9, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn antiderivative_examples() {
        let id = DiskFunction::rotation(0.0).unwrap();
        assert!((id.antiderivative(c(1.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);

        // int_0^1 (a + t)/(1 + a t) dt = 1/a - (1 - a^2)/a^2 log(1 + a)
        for &a in &[0.1, 0.5, 0.9] {
            let w = DiskFunction::moebius_shift(c(a, 0.0), 0.0).unwrap();
            let closed = 1.0 / a - (1.0 - a * a) / (a * a) * (1.0 + a).ln();
            assert!((w.antiderivative(c(1.0, 0.0)).unwrap().re - closed).abs() < 1e-13);
        }
        assert!(id.antiderivative(c(1.0, 0.1)).is_err());
    }

    #[test]
    fn antiderivative_agrees_with_integrated_series_inside() {
        let w = DiskFunction::blaschke(vec![c(0.3, 0.3), c(-0.6, 0.0)], 0.2).unwrap();
        let big = w.taylor(200).integrate();
        for j in 0..12 {
            let z = Complex64::from_polar(0.9, 0.5 * j as f64);
            assert!((w.antiderivative(z).unwrap() - big.eval(z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn spec_round_trip_through_json() {
        let json = r#"{"kind":"blaschke","zeros":[[0.0,0.0],[0.5,0.0]],"rotation":3.141592653589793}"#;
        let spec: DiskSpec = serde_json::from_str(json).unwrap();
        let f = DiskFunction::from_spec(&spec).unwrap();
        assert!((f.eval(c(1.0, 0.0)).unwrap() + 1.0).norm() < 1e-15);
        assert_eq!(f.to_spec(), spec);

        let spec: DiskSpec = serde_json::from_str(r#"{"kind":"moebius","a":[0.5,0.0]}"#).unwrap();
        assert_eq!(spec, DiskSpec::Moebius { a: c(0.5, 0.0), psi: 0.0 });
        assert!(serde_json::from_str::<DiskSpec>(r#"{"kind":"moebius","b":[0.5,0.0]}"#).is_err());
    }
}
