//! Truncated complex power series about the origin.
//!
//! A [`TruncatedSeries`] of order `N` carries the coefficients `c_0..=c_N`.
//! Binary operations return a series of the smaller operand order; nothing is
//! ever extended past what both inputs actually know.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_ORDER: usize = 64;

/// Threshold below which a constant term counts as zero.
pub const EPS0: f64 = 1e-12;

/// Slack allowed when deciding whether a point lies in the closed disk, so that
/// `e^{it}` computed in floating point is still accepted.
pub(crate) const DISK_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least one coefficient".into(),
            ));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Pads with zeros or cuts so the result has exactly the given order.
    pub fn with_order(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let mut v: Vec<Complex64> = coeffs.iter().take(order + 1).copied().collect();
        v.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(v)
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec_unchecked(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// `c z^k`, silently zero when `k` exceeds the order.
    pub fn monomial(c: Complex64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series of `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::from_vec_unchecked(self.coeffs[..=n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec_unchecked((0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec_unchecked((0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_vec_unchecked(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs[..=n].iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_vec_unchecked(out)
    }

    /// Multiplicative inverse with the default threshold [`EPS0`].
    pub fn reciprocal(&self) -> Result<Self> {
        self.reciprocal_with(EPS0)
    }

    pub fn reciprocal_with(&self, eps0: f64) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() <= eps0 {
            return Err(Error::NearZeroConstantTerm(a0.norm()));
        }
        let inv0 = a0.inv();
        let n = self.order();
        let mut r = Vec::with_capacity(n + 1);
        r.push(inv0);
        for m in 1..=n {
            let acc: Complex64 = (1..=m).map(|k| self.coeffs[k] * r[m - k]).sum();
            r.push(-inv0 * acc);
        }
        Ok(Self::from_vec_unchecked(r))
    }

    /// `outer(inner(z))` by Horner's scheme. The inner series must vanish at
    /// the origin, otherwise truncation would not be exact.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0].norm();
        if c0 > EPS0 {
            return Err(Error::InnerNotVanishing(c0));
        }
        let n = outer.order().min(inner.order());
        let mut w = inner.truncate(n);
        w.coeffs[0] = Complex64::new(0.0, 0.0);
        let mut acc = Self::constant(outer.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&w);
            acc.coeffs[0] += outer.coeffs[k];
        }
        Ok(acc)
    }

    /// Antiderivative vanishing at 0. The coefficient that would land at
    /// index `N + 1` is returned separately since it falls off the order.
    pub fn integrate_with_tail(&self) -> (Self, Complex64) {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..n {
            out[k + 1] = self.coeffs[k] / (k as f64 + 1.0);
        }
        let tail = self.coeffs[n] / (n as f64 + 1.0);
        (Self::from_vec_unchecked(out), tail)
    }

    pub fn integrate(&self) -> Self {
        self.integrate_with_tail().0
    }

    /// Derivative. Only `N - 1` coefficients are known, so the order drops by
    /// one (an order-0 series differentiates to the zero constant).
    pub fn differentiate(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_vec_unchecked(
            (0..n).map(|k| self.coeffs[k + 1] * (k as f64 + 1.0)).collect(),
        )
    }

    /// `z * s(z)`; the order grows by one because the product is exact.
    pub fn mul_z(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend_from_slice(&self.coeffs);
        Self::from_vec_unchecked(out)
    }

    /// `s(c z)`: coefficient `k` is multiplied by `c^k`.
    pub fn rescale_argument(&self, c: Complex64) -> Self {
        let mut p = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(a * p);
            p *= c;
        }
        Self::from_vec_unchecked(out)
    }

    /// Horner evaluation on the closed unit disk.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 1.0 + DISK_SLACK {
            return Err(Error::OutsideDisk(z));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `sum |c_k|`, an upper bound for the modulus on the closed disk.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
