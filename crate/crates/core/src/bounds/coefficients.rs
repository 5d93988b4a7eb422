//! Bounds on `|a_n|` for members of U(lambda).

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::diskfun::DiskFunction;
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, EPS0};

/// Conjectured sharp bound `sum_{k=0}^{n-1} lambda^k`.
pub fn conjecture_bound(n: usize, lambda: f64) -> f64 {
    debug_assert!(n >= 2);
    (0..n).map(|k| lambda.powi(k as i32)).sum()
}

/// Proven bound `1 + lambda sqrt(n - 1) sqrt(sum_{k=0}^{n-2} lambda^{2k})`.
///
/// Evaluated under a single square root so that `lambda = 1` gives exactly `n`.
pub fn cauchy_schwarz_bound(n: usize, lambda: f64) -> f64 {
    debug_assert!(n >= 2);
    let squares: f64 = (0..n - 1).map(|k| lambda.powi(2 * k as i32)).sum();
    1.0 + lambda * ((n - 1) as f64 * squares).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub conjecture: f64,
    pub theorem2: f64,
    pub observed_max: Option<f64>,
    pub family: Option<String>,
}

/// Per-`n` comparison of the two bounds with the largest `|a_n|` observed
/// over a set of candidates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub lambda: f64,
    pub rows: Vec<BoundRow>,
}

pub const BOUND_TABLE_HEADER: &str = "n,conjecture,theorem2,observed_max,family";

impl BoundTable {
    pub fn new(lambda: f64, n_max: usize) -> Self {
        let rows = (2..=n_max.max(2))
            .map(|n| BoundRow {
                n,
                conjecture: conjecture_bound(n, lambda),
                theorem2: cauchy_schwarz_bound(n, lambda),
                observed_max: None,
                family: None,
            })
            .collect();
        Self { lambda, rows }
    }

    /// Folds the coefficients of one candidate (`coeffs[n] = a_n`) into the table.
    /// Ties keep the earlier family label.
    pub fn observe(&mut self, family: &str, coeffs: &TruncatedSeries) {
        for row in &mut self.rows {
            let Some(a) = coeffs.coeff(row.n) else { continue };
            let m = a.norm();
            if row.observed_max.is_none_or(|best| m > best) {
                row.observed_max = Some(m);
                row.family = Some(family.to_string());
            }
        }
    }

    /// Rows whose observed maximum exceeds the conjectured value by more than `tol`.
    pub fn conjecture_violations(&self, tol: f64) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| r.observed_max.is_some_and(|m| m > r.conjecture + tol))
            .collect()
    }

    pub fn proven_bound_violations(&self, tol: f64) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| r.observed_max.is_some_and(|m| m > r.theorem2 + tol))
            .collect()
    }

    /// CSV with 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(BOUND_TABLE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let observed = r.observed_max.map(fmt17).unwrap_or_default();
            let family = r.family.clone().unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{}", r.n, fmt17(r.conjecture), fmt17(r.theorem2), observed, family);
        }
        out
    }
}

/// Round-trip exact rendering of a double (17 significant digits).
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RogosinskiReport {
    pub lambda: f64,
    pub n_max: usize,
    /// `sum_{k=1}^n |b_k|^2` for `1/(1 - lambda w) = sum b_k z^k`, n = 1..=n_max.
    pub partial_lhs: Vec<f64>,
    /// `sum_{k=1}^n lambda^{2k}`.
    pub partial_rhs: Vec<f64>,
    pub min_slack: f64,
    pub holds: bool,
    /// `max |c_n|` for `1/(1 - w) = sum c_n z^n`, n = 1..=n_max.
    pub max_abs_c: f64,
    pub coefficient_bound_holds: bool,
}

const ROGOSINSKI_TOL: f64 = 1e-12;

/// Checks the partial square-sum inequality for `1/(1 - lambda w) ≺ 1/(1 - lambda z)`
/// and `|c_n| <= 1` for `1/(1 - w) ≺ 1/(1 - z)`.
pub fn rogosinski_check(w: &DiskFunction, lambda: f64, n: usize) -> Result<RogosinskiReport> {
    if w.base_point().norm() > EPS0 {
        return Err(Error::BasePointNotZero(w.base_point()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let ws = w.taylor(n);
    let one = TruncatedSeries::one(n);
    let g1 = one.sub(&ws.scale(Complex64::new(lambda, 0.0))).reciprocal()?;
    let g2 = one.sub(&ws).reciprocal()?;

    let mut lhs = 0.0;
    let mut rhs = 0.0;
    let mut partial_lhs = Vec::with_capacity(n);
    let mut partial_rhs = Vec::with_capacity(n);
    for k in 1..=n {
        lhs += g1.coeffs()[k].norm_sqr();
        rhs += lambda.powi(2 * k as i32);
        partial_lhs.push(lhs);
        partial_rhs.push(rhs);
    }
    let min_slack = partial_lhs
        .iter()
        .zip(&partial_rhs)
        .map(|(l, r)| r - l)
        .fold(f64::INFINITY, f64::min);
    let max_abs_c = g2.coeffs()[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(RogosinskiReport {
        lambda,
        n_max: n,
        partial_lhs,
        partial_rhs,
        min_slack,
        holds: min_slack >= -ROGOSINSKI_TOL,
        max_abs_c,
        coefficient_bound_holds: max_abs_c <= 1.0 + ROGOSINSKI_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_ORDER;
    use crate::uclass::{taylor_of_f, UCandidate};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conjecture_bound_examples() {
        for n in 2..20 {
            assert_eq!(conjecture_bound(n, 1.0), n as f64);
        }
        assert_eq!(conjecture_bound(3, 0.5), 1.75);
        assert_eq!(conjecture_bound(2, 0.37), 1.37);
    }

    #[test]
    fn cauchy_schwarz_bound_examples() {
        for n in 2..=60 {
            assert_eq!(cauchy_schwarz_bound(n, 1.0), n as f64);
        }
        for &l in &[0.1, 0.5, 0.9] {
            assert!((cauchy_schwarz_bound(2, l) - (1.0 + l)).abs() < 1e-15);
        }
        let direct = 1.0 + 0.5 * 3f64.sqrt() * 1.3125f64.sqrt();
        assert!((cauchy_schwarz_bound(4, 0.5) - direct).abs() < 1e-15);
        assert!((cauchy_schwarz_bound(4, 0.5) - 1.992_156_741_649_221_6).abs() < 1e-12);
    }

    #[test]
    fn dominance_on_grid() {
        for i in 1..=99 {
            let l = i as f64 / 100.0;
            for n in 2..=50 {
                assert!(cauchy_schwarz_bound(n, l) >= conjecture_bound(n, l) - 1e-12);
            }
        }
    }

    #[test]
    fn table_tracks_extremal_and_writes_csv() {
        let lambda = 0.5;
        let cand = UCandidate::extremal(lambda, PI, DEFAULT_ORDER).unwrap();
        let mut t = BoundTable::new(lambda, 6);
        t.observe("extremal", &taylor_of_f(&cand).unwrap());
        for r in &t.rows {
            assert!((r.observed_max.unwrap() - r.conjecture).abs() < 1e-12);
        }
        assert!(t.conjecture_violations(1e-9).is_empty());
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(BOUND_TABLE_HEADER));
        assert_eq!(
            lines.next(),
            Some("2,1.5000000000000000e0,1.5000000000000000e0,1.5000000000000000e0,extremal")
        );
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn table_flags_violations() {
        let mut t = BoundTable::new(0.5, 3);
        let fake = TruncatedSeries::from_real(&[0.0, 1.0, 1.6, 0.0]).unwrap();
        t.observe("fake", &fake);
        assert_eq!(t.conjecture_violations(1e-9).len(), 1);
        assert_eq!(t.conjecture_violations(1e-9)[0].n, 2);
    }

    #[test]
    fn rogosinski_identity_is_equality() {
        let rep = rogosinski_check(&DiskFunction::rotation(0.0).unwrap(), 0.6, 20).unwrap();
        assert!(rep.holds);
        assert!(rep.min_slack.abs() < 1e-14);
        assert!((rep.max_abs_c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rogosinski_square_is_strict() {
        let lambda = 0.7;
        let w = DiskFunction::monomial(0.0, 2).unwrap();
        let rep = rogosinski_check(&w, lambda, 12).unwrap();
        // 1/(1 - lambda z^2): b_{2k} = lambda^k, odd coefficients vanish
        for n in 1..=12 {
            let expected: f64 = (1..=n / 2).map(|k| lambda.powi(2 * k as i32)).sum();
            assert!((rep.partial_lhs[n - 1] - expected).abs() < 1e-14);
            assert!(rep.partial_rhs[n - 1] > rep.partial_lhs[n - 1]);
        }
        assert!(rep.holds && rep.coefficient_bound_holds);
    }

    #[test]
    fn rogosinski_blaschke_has_slack() {
        let w = DiskFunction::blaschke(vec![c(0.0, 0.0), c(0.3, 0.0)], 0.0).unwrap();
        let rep = rogosinski_check(&w, 0.7, 20).unwrap();
        assert!(rep.holds && rep.coefficient_bound_holds);
        assert!(rep.min_slack > 0.0);
    }

    #[test]
    fn rogosinski_requires_b0() {
        let w = DiskFunction::moebius_shift(c(0.3, 0.0), 0.0).unwrap();
        assert!(matches!(rogosinski_check(&w, 0.5, 5), Err(Error::BasePointNotZero(_))));
    }
}
