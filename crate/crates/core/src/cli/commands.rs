//! One function per subcommand. Each returns its artifacts in memory together
//! with an exit status, so the commands can be tested without a process.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{
    c_omega_curve, f_quadratic, f_root_in_unit_interval, fixed_point_zero, fmt17, r_star, sharp_a2_boundary_max,
    sharp_a2_real_base, v_of_x, BoundTable, BoundaryMaxSharpness, FixedPointWitness, RealBaseSharpness,
};
use crate::diskfun::DiskFunction;
use crate::error::{Error, Result};
use crate::region::Containment;
use crate::sampling::{sample_members, SAMPLE_ORDER};
use crate::uclass::{
    obstruction_value, q_from_phi, sup_u, sup_u_with_tol, taylor_of_f, MembershipReport, ObstructionReport,
    UCandidate, Verdict, DEFAULT_MEMBERSHIP_TOL,
};

use super::config::{ExperimentConfig, FamilyChoice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Membership sweep found the candidate outside the class.
    NotMember,
    Violation,
    Inconclusive,
    ConfigError,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotMember => 1,
            Status::Violation => 2,
            Status::Inconclusive => 3,
            Status::ConfigError => 4,
        }
    }

    fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::NotMember => 1,
            Status::Inconclusive => 2,
            Status::Violation => 3,
            Status::ConfigError => 4,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// Status for a failed computation: bad input is a config error, anything
/// else means the numerics could not decide.
pub fn status_for_error(e: &Error) -> Status {
    match e {
        Error::InvalidParameter(_)
        | Error::OutOfRange { .. }
        | Error::OutsideDisk(_)
        | Error::BasePointOutsideClosedDisk(_)
        | Error::ZeroOnOrOutsideBoundary(_)
        | Error::BasePointNotZero(_)
        | Error::NotBoundaryMax(_)
        | Error::NonRealQuotient(_)
        | Error::HypothesisViolated(_)
        | Error::ExcludedRotation
        | Error::NotContractive { .. } => Status::ConfigError,
        _ => Status::Inconclusive,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    /// The first artifact is the primary output.
    pub artifacts: Vec<Artifact>,
}

fn json<T: Serialize>(name: &str, value: &T) -> Artifact {
    let mut contents = serde_json::to_string_pretty(value).expect("reports serialize");
    contents.push('\n');
    Artifact {
        name: name.to_string(),
        contents,
    }
}

fn text(name: &str, contents: String) -> Artifact {
    Artifact {
        name: name.to_string(),
        contents,
    }
}

const BOUND_TOL: f64 = 1e-9;

#[derive(Serialize)]
struct ConjectureSummary<'a> {
    lambda: f64,
    n_max: usize,
    seed: u64,
    extremal_included: bool,
    members_requested: usize,
    members_found: usize,
    family_counts: Vec<(String, usize)>,
    conjecture_violations: Vec<usize>,
    proven_bound_violations: Vec<usize>,
    table: &'a BoundTable,
}

pub fn verify_conjecture(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let n_max = cfg.n_max.unwrap_or(10);
    if n_max < 2 {
        return Err(Error::InvalidParameter("n_max must be at least 2".into()));
    }
    let order = cfg.order_or(SAMPLE_ORDER).max(n_max);
    let tol = cfg.tolerance.unwrap_or(BOUND_TOL);
    let families = cfg
        .families
        .clone()
        .unwrap_or_else(|| vec![FamilyChoice::Extremal, FamilyChoice::Sampled]);
    let requested = if families.contains(&FamilyChoice::Sampled) {
        cfg.samples.unwrap_or(200)
    } else {
        0
    };

    let mut table = BoundTable::new(lambda, n_max);
    let extremal_included = families.contains(&FamilyChoice::Extremal);
    if extremal_included {
        let ext = UCandidate::extremal(lambda, std::f64::consts::PI, order)?;
        table.observe("extremal", &taylor_of_f(&ext)?);
    }
    let mut family_counts: Vec<(String, usize)> = Vec::new();
    let mut found = 0;
    if requested > 0 {
        let members = sample_members(lambda, requested, cfg.seed, order, &cfg.grid()?)?;
        found = members.len();
        for m in &members {
            table.observe(&m.family, &taylor_of_f(&m.candidate)?);
            match family_counts.iter_mut().find(|(f, _)| *f == m.family) {
                Some((_, n)) => *n += 1,
                None => family_counts.push((m.family.clone(), 1)),
            }
        }
        family_counts.sort();
    }

    let conjecture_violations: Vec<usize> = table.conjecture_violations(tol).iter().map(|r| r.n).collect();
    let proven_bound_violations: Vec<usize> = table.proven_bound_violations(tol).iter().map(|r| r.n).collect();
    let status = if !conjecture_violations.is_empty() || !proven_bound_violations.is_empty() {
        Status::Violation
    } else if found < requested {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    let summary = ConjectureSummary {
        lambda,
        n_max,
        seed: cfg.seed,
        extremal_included,
        members_requested: requested,
        members_found: found,
        family_counts,
        conjecture_violations,
        proven_bound_violations,
        table: &table,
    };
    Ok(Outcome {
        status,
        artifacts: vec![
            text("bound_table.csv", table.to_csv()),
            json("verify_conjecture.json", &summary),
        ],
    })
}

pub fn membership(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let spec = ExperimentConfig::require(&cfg.candidate, "candidate")?;
    let cand = spec.build(lambda, cfg.default_order())?;
    let report = sup_u_with_tol(&cand, &cfg.grid()?, cfg.tolerance.unwrap_or(DEFAULT_MEMBERSHIP_TOL))?;
    let status = match report.verdict {
        Verdict::Inside => Status::Ok,
        Verdict::Outside => Status::NotMember,
        Verdict::Inconclusive => Status::Inconclusive,
    };
    Ok(Outcome {
        status,
        artifacts: vec![json("membership.json", &report)],
    })
}

#[derive(Serialize)]
struct JuliaReport {
    obstruction: ObstructionReport,
    membership: MembershipReport,
}

pub fn julia(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let phi = DiskFunction::from_spec(&ExperimentConfig::require(&cfg.phi, "phi")?)?;
    let theta0 = ExperimentConfig::require(&cfg.theta0, "theta0")?;
    let obstruction = obstruction_value(lambda, &phi, theta0)?;
    let cand = q_from_phi(lambda, &phi, cfg.default_order())?;
    let membership = sup_u(&cand, &cfg.grid()?)?;
    let status = if !obstruction.excludes_membership || membership.verdict == Verdict::Inside {
        Status::Violation
    } else if membership.verdict == Verdict::Inconclusive {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Outcome {
        status,
        artifacts: vec![json("julia.json", &JuliaReport { obstruction, membership })],
    })
}

#[derive(Serialize)]
struct RegionQuery {
    a2: Complex64,
    containment: Containment,
    distance: f64,
}

#[derive(Serialize)]
struct RegionSummary {
    lambda: f64,
    resolution: usize,
    centroid_winding: i32,
    max_gap: f64,
    queries: Vec<RegionQuery>,
}

pub fn region_a2(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let omega = DiskFunction::from_spec(&ExperimentConfig::require(&cfg.omega, "omega")?)?;
    let resolution = cfg.resolution.unwrap_or(4096);
    let region = c_omega_curve(&omega, lambda, resolution)?;
    let queries = cfg
        .queries
        .iter()
        .map(|&a2| RegionQuery {
            a2,
            containment: region.contains(a2),
            distance: region.distance(a2),
        })
        .collect();
    let summary = RegionSummary {
        lambda,
        resolution,
        centroid_winding: region.centroid_winding(),
        max_gap: region.curve().max_gap(),
        queries,
    };
    Ok(Outcome {
        status: Status::Ok,
        artifacts: vec![
            text("region_a2.csv", region.to_csv()),
            text("region_a2.svg", region.to_svg()),
            json("region_a2.json", &summary),
        ],
    })
}

/// Half-width of the band around `R = r_star` where the prediction is not checked.
const THRESHOLD_BAND: f64 = 1e-9;

fn default_unit_grid() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 51.0).collect()
}

pub fn f_roots(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambdas = cfg.lambdas.clone().unwrap_or_else(default_unit_grid);
    let radii = cfg.radii.clone().unwrap_or_else(default_unit_grid);
    let mut csv = String::from("lambda,R,F_R_1,root,residual,r_star,predicted,agrees\n");
    let mut status = Status::Ok;
    for &lambda in &lambdas {
        let threshold = if lambda > 0.5 { Some(r_star(lambda)?) } else { None };
        for &big_r in &radii {
            let root = f_root_in_unit_interval(lambda, big_r)?;
            let in_band = threshold.is_some_and(|t| (big_r - t).abs() < THRESHOLD_BAND);
            let predicted = threshold.is_none_or(|t| big_r > t);
            let agrees = in_band || predicted == root.is_some();
            let residual = root.map(|r| f_quadratic(lambda, big_r, r).abs());
            if !agrees || residual.is_some_and(|res| res > 1e-10) {
                status = Status::Violation;
            }
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                fmt17(lambda),
                fmt17(big_r),
                fmt17(f_quadratic(lambda, big_r, 1.0)),
                root.map(fmt17).unwrap_or_default(),
                residual.map(fmt17).unwrap_or_default(),
                threshold.map(fmt17).unwrap_or_default(),
                predicted,
                agrees
            );
        }
    }
    Ok(Outcome {
        status,
        artifacts: vec![text("f_roots.csv", csv)],
    })
}

/// Residual limits for the sharpness reports.
const BOUNDARY_ZERO_TOL: f64 = 1e-8;
const EXPRESSION_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-9;
const BOUND_GAP_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct SharpnessReport {
    real_base: Option<RealBaseSharpness>,
    boundary_max: BoundaryMaxSharpness,
    /// `max_t |B_a(e^{it})| - v(|a|)`, reported only.
    boundary_max_vs_v: f64,
}

fn membership_status(v: Verdict, zeros: i32) -> Status {
    if v == Verdict::Outside || zeros != 0 {
        Status::Violation
    } else {
        Status::Ok
    }
}

pub fn sharpness(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let a = ExperimentConfig::require(&cfg.a, "a")?;
    let real_base = if a.im == 0.0 && a.re > 0.0 && a.re < 1.0 {
        Some(sharp_a2_real_base(lambda, a.re)?)
    } else {
        None
    };
    let boundary_max = sharp_a2_boundary_max(lambda, a)?;

    let mut status = membership_status(boundary_max.membership.verdict, boundary_max.interior_zero_count);
    if boundary_max.d_at_boundary >= BOUNDARY_ZERO_TOL
        || boundary_max.integral_identity_gap > IDENTITY_TOL
        || boundary_max.bound_gap > BOUND_GAP_TOL
    {
        status = status.worst(Status::Inconclusive);
    }
    if let Some(g) = &real_base {
        status = status.worst(membership_status(g.membership.verdict, g.interior_zero_count));
        if g.g_at_one >= BOUNDARY_ZERO_TOL || g.expression_gap > EXPRESSION_TOL || g.bound_gap > BOUND_GAP_TOL {
            status = status.worst(Status::Inconclusive);
        }
    }
    let report = SharpnessReport {
        boundary_max_vs_v: boundary_max.ba_max - v_of_x(a.norm()),
        real_base,
        boundary_max,
    };
    Ok(Outcome {
        status,
        artifacts: vec![json("sharpness.json", &report)],
    })
}

pub fn fixed_point(cfg: &ExperimentConfig) -> Result<Outcome> {
    let lambda = cfg.lambda()?;
    let a2 = ExperimentConfig::require(&cfg.a2, "a2")?;
    let r = ExperimentConfig::require(&cfg.r, "r")?;
    let omega = DiskFunction::from_spec(&ExperimentConfig::require(&cfg.omega, "omega")?)?;
    let witness: FixedPointWitness = fixed_point_zero(a2, lambda, &omega, r)?;
    let decays = witness
        .observed_ratio
        .is_none_or(|ratio| ratio <= witness.contraction_constant + 1e-12);
    let status = if witness.residual >= 1e-9 || !decays {
        Status::Violation
    } else {
        Status::Ok
    };
    Ok(Outcome {
        status,
        artifacts: vec![json("fixed_point.json", &witness)],
    })
}
