//! Seeded random disk functions and candidates.
//!
//! Möbius parameters are uniform in `|a| <= 0.9`, Blaschke products have
//! degree at most 4 with zeros uniform in `|z| <= 0.8`, and polynomials have
//! degree at most 8. This keeps clear of degenerate boundary configurations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::v_of_omega;
use crate::diskfun::DiskFunction;
use crate::error::Result;
use crate::uclass::{dilate, q_from_omega, q_from_phi, sup_u, GridSpec, MembershipReport, UCandidate, Verdict};

pub use rand::SeedableRng;
pub type SampleRng = ChaCha8Rng;

pub const MOEBIUS_RADIUS: f64 = 0.9;
pub const BLASCHKE_ZERO_RADIUS: f64 = 0.8;
pub const MAX_BLASCHKE_DEGREE: usize = 4;
pub const MAX_POLY_DEGREE: usize = 8;
/// Series order used for sampled candidates.
pub const SAMPLE_ORDER: usize = 128;
/// Draws allowed per requested member before giving up.
const ATTEMPTS_PER_MEMBER: usize = 40;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the disk of radius `r`.
pub fn uniform_in_disk(rng: &mut SampleRng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn angle(rng: &mut SampleRng) -> f64 {
    TAU * rng.gen::<f64>()
}

pub fn random_moebius(rng: &mut SampleRng) -> DiskFunction {
    let a = uniform_in_disk(rng, MOEBIUS_RADIUS);
    DiskFunction::moebius_shift(a, angle(rng)).expect("|a| <= 0.9")
}

/// A Blaschke product; with `fix_origin` the first zero is 0.
pub fn random_blaschke(rng: &mut SampleRng, fix_origin: bool) -> DiskFunction {
    let degree = rng.gen_range(1..=MAX_BLASCHKE_DEGREE);
    let zeros = (0..degree)
        .map(|k| {
            if fix_origin && k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                uniform_in_disk(rng, BLASCHKE_ZERO_RADIUS)
            }
        })
        .collect();
    DiskFunction::blaschke(zeros, angle(rng)).expect("zeros inside the disk")
}

/// A polynomial with coefficients uniform in the unit square, scaled into the
/// disk; with `fix_origin` the constant term is 0.
pub fn random_poly(rng: &mut SampleRng, fix_origin: bool) -> DiskFunction {
    let degree = rng.gen_range(1..=MAX_POLY_DEGREE);
    let coeffs = (0..=degree)
        .map(|k| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if fix_origin && k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                c
            }
        })
        .collect();
    DiskFunction::scaled_polynomial(coeffs).expect("finite coefficients")
}

/// A self-map of the disk fixing 0, with a family label.
pub fn random_b0(rng: &mut SampleRng) -> (DiskFunction, &'static str) {
    match rng.gen_range(0..3) {
        0 => (random_blaschke(rng, true), "blaschke"),
        1 => (random_poly(rng, true), "poly"),
        _ => {
            let k = rng.gen_range(1..=4);
            (DiskFunction::monomial(angle(rng), k).expect("k >= 1"), "monomial")
        }
    }
}

/// An arbitrary self-map of the disk, with a family label.
pub fn random_omega(rng: &mut SampleRng) -> (DiskFunction, &'static str) {
    match rng.gen_range(0..4) {
        0 => (random_moebius(rng), "moebius"),
        1 => (random_blaschke(rng, false), "blaschke"),
        2 => (random_poly(rng, false), "poly"),
        _ => (
            DiskFunction::constant(uniform_in_disk(rng, MOEBIUS_RADIUS)).expect("inside the disk"),
            "constant",
        ),
    }
}

#[derive(Debug, Clone)]
pub struct SampledMember {
    pub family: String,
    pub candidate: UCandidate,
    pub membership: MembershipReport,
}

/// One random candidate from a rotating choice of constructions.
fn draw_candidate(rng: &mut SampleRng, lambda: f64, order: usize) -> Result<(String, UCandidate)> {
    match rng.gen_range(0..3) {
        0 => {
            let (phi, label) = random_b0(rng);
            Ok((format!("phi:{label}"), q_from_phi(lambda, &phi, order)?))
        }
        1 => {
            let (omega, label) = random_omega(rng);
            // |a_2| up to the sharp bound 1 + lambda v(omega)
            let reach = 1.0 + lambda * v_of_omega(&omega).value;
            let a2 = uniform_in_disk(rng, reach);
            Ok((format!("omega:{label}"), q_from_omega(a2, lambda, &omega, order)?))
        }
        _ => {
            let theta = angle(rng);
            let r = rng.gen_range(0.3..0.99);
            let ext = UCandidate::extremal(lambda, theta, order)?;
            Ok(("dilated_extremal".to_string(), dilate(&ext, r)?))
        }
    }
}

/// Draws candidates until `count` of them have verdict `Inside` or the
/// attempt budget runs out. The sequence depends only on `seed`.
pub fn sample_members(lambda: f64, count: usize, seed: u64, order: usize, grid: &GridSpec) -> Result<Vec<SampledMember>> {
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * ATTEMPTS_PER_MEMBER {
        if out.len() == count {
            break;
        }
        let (family, candidate) = draw_candidate(&mut rng, lambda, order)?;
        let membership = sup_u(&candidate, grid)?;
        if membership.verdict == Verdict::Inside {
            out.push(SampledMember {
                family,
                candidate,
                membership,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_respect_declared_ranges() {
        let mut rng = rng_from_seed(7);
        for _ in 0..200 {
            let m = random_moebius(&mut rng);
            assert!(m.base_point().norm() <= MOEBIUS_RADIUS);
            let (w, _) = random_b0(&mut rng);
            assert!(w.base_point().norm() < 1e-15);
            assert!(w.boundary_sup(256) <= 1.0 + 1e-12);
            let p = random_poly(&mut rng, false);
            assert!(p.boundary_sup(256) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<Complex64> = {
            let mut rng = rng_from_seed(42);
            (0..10).map(|_| random_moebius(&mut rng).base_point()).collect()
        };
        let b: Vec<Complex64> = {
            let mut rng = rng_from_seed(42);
            (0..10).map(|_| random_moebius(&mut rng).base_point()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_members_are_inside() {
        let grid = GridSpec { radii: vec![0.5, 0.9, 0.99], angles: 180 };
        let members = sample_members(0.5, 6, 3, 64, &grid).unwrap();
        assert_eq!(members.len(), 6);
        for m in &members {
            assert_eq!(m.membership.verdict, Verdict::Inside);
            assert_eq!(m.membership.q_zero_count, 0);
        }
    }
}
