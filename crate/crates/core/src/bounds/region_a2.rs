//! The forbidden-value curve `C_omega(z) = 1/z + lambda int_0^z omega` on the
//! unit circle and the bounded region `A_2(omega)` it encloses.
//!
//! `q = 1 - a_2 z + lambda z Omega(z)` vanishes at `z` exactly when
//! `a_2 = C_omega(z)`. As `C_omega` sends the punctured disk onto the outside
//! of its boundary curve, `q` is zero-free precisely for `a_2` in `A_2(omega)`.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::diskfun::{DiskFunction, DiskSpec};
use crate::error::{Error, Result};
use crate::region::{BoundaryRegion, Containment, DEFAULT_CONTAINMENT_TOL};

use super::coefficients::fmt17;

pub const MIN_RESOLUTION: usize = 64;
/// Samples closer than this at well separated parameters flag a self-intersection.
const INJECTIVITY_FLOOR: f64 = 1e-6;
/// Parameter separation, in sampling steps, below which closeness is expected.
const NEIGHBOUR_STEPS: usize = 4;

#[derive(Debug, Clone)]
pub struct RegionA2 {
    lambda: f64,
    omega: DiskSpec,
    thetas: Vec<f64>,
    curve: BoundaryRegion,
    centroid_winding: i32,
}

/// `C_omega(z) = 1/z + lambda int_0^z omega`, for `0 < |z| <= 1`.
pub fn c_omega(omega: &DiskFunction, lambda: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::OutOfRange { name: "|z|", value: 0.0 });
    }
    Ok(1.0 / z + lambda * omega.antiderivative(z)?)
}

/// Samples `C_omega(e^{i theta})` and checks the samples form a simple curve.
pub fn c_omega_curve(omega: &DiskFunction, lambda: f64, resolution: usize) -> Result<RegionA2> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::InvalidParameter(format!("resolution must be at least {MIN_RESOLUTION}")));
    }
    let h = TAU / resolution as f64;
    let thetas: Vec<f64> = (0..resolution).map(|k| k as f64 * h).collect();
    let samples: Vec<Complex64> = thetas
        .par_iter()
        .map(|&t| {
            let z = Complex64::from_polar(1.0, t);
            z.conj() + lambda * omega.antiderivative_unchecked(z)
        })
        .collect();
    check_injective(&thetas, &samples)?;
    let curve = BoundaryRegion::new(samples, DEFAULT_CONTAINMENT_TOL)?;
    let centroid_winding = curve.winding_number(curve.centroid());
    if centroid_winding.abs() != 1 {
        return Err(Error::InvalidParameter(format!(
            "curve winds {centroid_winding} times around its centroid"
        )));
    }
    Ok(RegionA2 {
        lambda,
        omega: omega.to_spec(),
        thetas,
        curve,
        centroid_winding,
    })
}

fn check_injective(thetas: &[f64], samples: &[Complex64]) -> Result<()> {
    let n = samples.len();
    let hit = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find_map(|j| {
            let gap = (j - i).min(n - (j - i));
            if gap <= NEIGHBOUR_STEPS {
                return None;
            }
            let d = (samples[i] - samples[j]).norm();
            (d < INJECTIVITY_FLOOR).then_some((i, j, d))
        })
    });
    match hit {
        Some((i, j, distance)) => Err(Error::SelfIntersectionSuspected {
            theta1: thetas[i],
            theta2: thetas[j],
            distance,
        }),
        None => Ok(()),
    }
}

impl RegionA2 {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn omega(&self) -> &DiskSpec {
        &self.omega
    }

    pub fn curve(&self) -> &BoundaryRegion {
        &self.curve
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// Turns of the curve around its centroid; the curve runs clockwise, so -1.
    pub fn centroid_winding(&self) -> i32 {
        self.centroid_winding
    }

    /// Whether `a_2` lies in `A_2(omega)`, that is, whether `q` avoids 0.
    pub fn contains(&self, a2: Complex64) -> Containment {
        self.curve.classify(a2)
    }

    pub fn distance(&self, a2: Complex64) -> f64 {
        self.curve.distance(a2)
    }

    /// `theta,re,im` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re,im\n");
        for (t, z) in self.thetas.iter().zip(self.curve.samples()) {
            let _ = writeln!(out, "{},{},{}", fmt17(*t), fmt17(z.re), fmt17(z.im));
        }
        out
    }

    pub fn to_svg(&self) -> String {
        self.curve.to_svg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::antiderivative::{v_of_omega, v_of_x};
    use crate::bounds::fixed_point::fixed_point_zero;
    use crate::uclass::{q_from_omega, sup_u, GridSpec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_omega_gives_unit_circle() {
        let reg = c_omega_curve(&DiskFunction::zero(), 0.5, 512).unwrap();
        for z in reg.curve().samples() {
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
        assert_eq!(reg.centroid_winding(), -1);
        assert!(matches!(reg.contains(c(0.9, 0.0)), Containment::Inside { .. }));
        assert_eq!(reg.contains(c(1.1, 0.0)), Containment::Outside);
    }

    #[test]
    fn constant_omega_gives_ellipse() {
        let a = c(0.5, 0.0);
        let lambda = 0.5;
        let reg = c_omega_curve(&DiskFunction::constant(a).unwrap(), lambda, 512).unwrap();
        for (t, z) in reg.thetas().iter().zip(reg.curve().samples()) {
            let e = Complex64::from_polar(1.0, *t);
            assert!((z - (e.conj() + lambda * a * e)).norm() < 1e-14);
        }
        assert!(matches!(reg.contains(c(0.0, 0.0)), Containment::Inside { .. }));
    }

    #[test]
    fn csv_and_svg_shapes() {
        let reg = c_omega_curve(&DiskFunction::zero(), 0.5, 64).unwrap();
        let csv = reg.to_csv();
        assert!(csv.starts_with("theta,re,im\n"));
        assert_eq!(csv.lines().count(), 65);
        assert_eq!(reg.to_svg().matches("<path").count(), 1);
    }

    #[test]
    fn low_resolution_rejected() {
        assert!(c_omega_curve(&DiskFunction::zero(), 0.5, 16).is_err());
    }

    #[test]
    fn containment_agrees_with_zero_count() {
        let omega = DiskFunction::moebius_shift(c(0.2, 0.3), 0.4).unwrap();
        let lambda = 0.6;
        let reg = c_omega_curve(&omega, lambda, 2048).unwrap();
        let grid = GridSpec::default();
        for &a2 in &[c(0.3, 0.1), c(-0.5, 0.4), c(2.2, 0.0), c(0.0, -2.0)] {
            let rep = sup_u(&q_from_omega(a2, lambda, &omega, 96).unwrap(), &grid).unwrap();
            match reg.contains(a2) {
                Containment::Inside { .. } => assert_eq!(rep.q_zero_count, 0),
                Containment::Outside => assert!(rep.q_zero_count >= 1),
                Containment::OnBoundary { .. } => panic!("test point too close"),
            }
        }
    }

    #[test]
    fn interior_a2_is_not_contractive() {
        let omega = DiskFunction::moebius_shift(c(0.5, 0.0), 0.0).unwrap();
        let reg = c_omega_curve(&omega, 0.5, 1024).unwrap();
        let a2 = c(1.0, 0.0);
        assert!(matches!(reg.contains(a2), Containment::Inside { .. }));
        let v = v_of_omega(&omega).value;
        for &r in &[0.3, 0.6, 0.9] {
            assert!(fixed_point_zero(a2, 0.5, &omega, r).is_err(), "r = {r}, v = {v}");
        }
        // the sharp value sits on the curve
        let sharp = c(1.0 + 0.5 * v_of_x(0.5), 0.0);
        assert!(reg.distance(sharp) < 1e-6);
    }
}
