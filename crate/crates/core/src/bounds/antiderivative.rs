//! Sharp bounds on `int_0^z omega` that control `|a_2|`: the real function
//! `v(x)`, the majorant `B_a(z)` and the boundary maximum `v(omega)`.

use num_complex::Complex64;

use crate::diskfun::DiskFunction;
use crate::error::{Error, Result};
use crate::search::{maximize_on_circle, CircleMax, DEFAULT_SCAN};
use crate::series::{TruncatedSeries, DISK_SLACK};

/// Below this argument the closed forms lose digits to cancellation.
const SMALL_ARG: f64 = 1e-3;
const V_SERIES_TERMS: u32 = 10;
const BA_SERIES_TERMS: u32 = 12;
/// `|a|` this close to 1 selects the constant branch.
const UNIMODULAR_SLACK: f64 = 1e-14;
/// Minimum `|1 + conj(a) z|` accepted by the closed form.
const BRANCH_GUARD: f64 = 1e-9;

/// `v(x) = int_0^1 (x + t)/(1 + x t) dt = 1/x - (1 - x^2)/x^2 log(1 + x)`.
pub fn v_of_x(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return 0.5;
    }
    if x < SMALL_ARG {
        // v = 1/2 + sum_{j>=1} (-1)^{j+1} 2 x^j / (j (j + 2))
        let mut sum = 0.0;
        let mut p = 1.0;
        for j in 1..=V_SERIES_TERMS {
            p *= x;
            let term = 2.0 * p / f64::from(j * (j + 2));
            sum += if j % 2 == 1 { term } else { -term };
        }
        return 0.5 + sum;
    }
    1.0 / x - (1.0 - x * x) / (x * x) * x.ln_1p()
}

/// `B_a(z) = (1/z) int_0^z (a + t)/(1 + conj(a) t) dt`, principal branch.
///
/// Equal to `a` when `|a| = 1` and to `z/2` when `a = 0`.
pub fn b_a(a: Complex64, z: Complex64) -> Result<Complex64> {
    let am = a.norm();
    if !(am <= 1.0 + DISK_SLACK) {
        return Err(Error::BasePointOutsideClosedDisk(a));
    }
    if !(z.norm() <= 1.0 + DISK_SLACK) {
        return Err(Error::OutsideDisk(z));
    }
    if am == 0.0 {
        return Ok(z / 2.0);
    }
    if am >= 1.0 - UNIMODULAR_SLACK {
        return Ok(a);
    }
    let ac = a.conj();
    let w = ac * z;
    let scale = 1.0 - am * am;
    if w.norm() < SMALL_ARG {
        // a + (1 - |a|^2) sum_{k>=1} (-conj a)^{k-1} z^k / (k + 1)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut p = z;
        for k in 1..=BA_SERIES_TERMS {
            sum += p / f64::from(k + 1);
            p *= -w;
        }
        return Ok(a + scale * sum);
    }
    if (1.0 + w).norm() <= BRANCH_GUARD {
        return Err(Error::BranchPointSingularity(z));
    }
    Ok(1.0 / ac - scale / (ac * ac * z) * ln_1p(w))
}

/// Principal `log(1 + w)` without the rounding of forming `|1 + w|` near 1.
fn ln_1p(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// Taylor coefficients of `B_a` about 0.
pub fn b_a_taylor(a: Complex64, order: usize) -> Result<TruncatedSeries> {
    let am = a.norm();
    if !(am <= 1.0 + DISK_SLACK) {
        return Err(Error::BasePointOutsideClosedDisk(a));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    c[0] = a;
    if am < 1.0 - UNIMODULAR_SLACK {
        let scale = 1.0 - am * am;
        let mut p = Complex64::new(scale, 0.0);
        for (k, ck) in c.iter_mut().enumerate().skip(1) {
            *ck = p / (k + 1) as f64;
            p *= -a.conj();
        }
    }
    TruncatedSeries::new(c)
}

/// `max_t |B_a(e^{it})|` by dense scan and golden-section refinement.
pub fn max_boundary_ba(a: Complex64) -> Result<CircleMax> {
    if !(a.norm() <= 1.0 + DISK_SLACK) {
        return Err(Error::BasePointOutsideClosedDisk(a));
    }
    // constant modulus on the circle for both exact branches: report t = 0
    let am = a.norm();
    if am == 0.0 || am >= 1.0 - UNIMODULAR_SLACK {
        return Ok(CircleMax {
            t_star: 0.0,
            value: if am == 0.0 { 0.5 } else { am },
            scan_resolution: 0,
        });
    }
    Ok(maximize_on_circle(
        |t| b_a(a, Complex64::from_polar(1.0, t)).map_or(f64::NAN, |b| b.norm()),
        DEFAULT_SCAN,
    ))
}

/// `v(omega) = max_{|z| <= 1} |int_0^z omega|`, attained on the boundary.
pub fn v_of_omega(omega: &DiskFunction) -> CircleMax {
    maximize_on_circle(
        |t| omega.antiderivative_unchecked(Complex64::from_polar(1.0, t)).norm(),
        DEFAULT_SCAN,
    )
}
