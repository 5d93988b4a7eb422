//! The quadratic `F(R, r) = r / f_R(r) - (1 - lambda)(1 + r)` for the dilated
//! extremal function `f_R(z) = f(Rz)/R`, `f(z) = z / ((1 - z)(1 - lambda z))`.
//!
//! A root `r` in (0, 1) means `z/f_R(z)` meets `(1 - lambda)(1 + z)` inside the
//! disk, so the zero-avoidance hypothesis on that difference fails for `f_R`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::uclass::{dilate, UCandidate};

fn check_open_unit(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: x })
    }
}

/// `lambda R^2 r^2 - r (R (1 + lambda) + 1 - lambda) + lambda`.
pub fn f_quadratic(lambda: f64, big_r: f64, r: f64) -> f64 {
    lambda * big_r * big_r * r * r - r * (big_r * (1.0 + lambda) + 1.0 - lambda) + lambda
}

/// The same quantity from its definition, through the series of the dilated
/// extremal candidate.
pub fn f_from_dilation(lambda: f64, big_r: f64, r: f64) -> Result<f64> {
    check_open_unit("R", big_r)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfRange { name: "r", value: r });
    }
    let extremal = UCandidate::extremal(lambda, std::f64::consts::PI, 4)?;
    let q_r = dilate(&extremal, big_r)?;
    let r_over_f = q_r.q().eval(Complex64::new(r, 0.0))?;
    Ok(r_over_f.re - (1.0 - lambda) * (1.0 + r))
}

/// The root of `F(R, .)` in (0, 1), if there is one.
///
/// The roots multiply to `1 / R^2 > 1` and `F(R, 0) = lambda > 0`, so at most
/// one root lies in (0, 1), and it does exactly when `F(R, 1) < 0`.
pub fn f_root_in_unit_interval(lambda: f64, big_r: f64) -> Result<Option<f64>> {
    check_open_unit("lambda", lambda)?;
    check_open_unit("R", big_r)?;
    if f_quadratic(lambda, big_r, 1.0) >= 0.0 {
        return Ok(None);
    }
    let a = lambda * big_r * big_r;
    let b = big_r * (1.0 + lambda) + 1.0 - lambda;
    let disc = (b * b - 4.0 * a * lambda).max(0.0);
    // smaller root, written to avoid cancellation
    Ok(Some(2.0 * lambda / (b + disc.sqrt())))
}

/// Threshold `(1 + lambda - sqrt((1 - lambda)(1 + 7 lambda))) / (2 lambda)`
/// above which `F(R, 1) < 0` when `1/2 < lambda < 1`.
pub fn r_star(lambda: f64) -> Result<f64> {
    if !(lambda > 0.5 && lambda < 1.0) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda });
    }
    Ok((1.0 + lambda - ((1.0 - lambda) * (1.0 + 7.0 * lambda)).sqrt()) / (2.0 * lambda))
}

/// Whether a root in (0, 1) is predicted for `(lambda, R)`.
pub fn root_predicted(lambda: f64, big_r: f64) -> Result<bool> {
    if lambda <= 0.5 {
        return Ok(true);
    }
    Ok(big_r > r_star(lambda)?)
}
