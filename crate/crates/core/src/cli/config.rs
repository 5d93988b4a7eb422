//! JSON experiment configuration shared by all subcommands.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::diskfun::{DiskFunction, DiskSpec};
use crate::error::{Error, Result};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};
use crate::uclass::{dilate, q_from_omega, q_from_phi, GridSpec, UCandidate};

/// Every field a subcommand may read. Fields a subcommand does not use are
/// ignored by it; unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub lambda: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    pub grid: Option<GridSpec>,
    pub tolerance: Option<f64>,
    pub order: Option<usize>,

    // verify-conjecture
    pub n_max: Option<usize>,
    pub samples: Option<usize>,
    pub families: Option<Vec<FamilyChoice>>,

    // membership
    pub candidate: Option<CandidateSpec>,

    // julia
    pub phi: Option<DiskSpec>,
    pub theta0: Option<f64>,

    // region-a2, fixed-point
    pub omega: Option<DiskSpec>,
    pub resolution: Option<usize>,
    #[serde(default)]
    pub queries: Vec<Complex64>,

    // f-roots
    pub lambdas: Option<Vec<f64>>,
    pub radii: Option<Vec<f64>>,

    // sharpness
    pub a: Option<Complex64>,

    // fixed-point
    pub a2: Option<Complex64>,
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyChoice {
    /// `z / ((1 + e^{i theta} z)(1 + lambda e^{i theta} z))` at `theta = pi`.
    Extremal,
    /// Seeded random members, see [`crate::sampling`].
    Sampled,
}

/// How a membership candidate is built.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case", deny_unknown_fields)]
pub enum CandidateSpec {
    Extremal {
        #[serde(default = "pi")]
        theta: f64,
        dilate: Option<f64>,
    },
    Phi {
        phi: DiskSpec,
        dilate: Option<f64>,
    },
    Omega {
        a2: Complex64,
        omega: DiskSpec,
        dilate: Option<f64>,
    },
    /// Explicit coefficients of `q = z/f`, with `q(0) = 1`.
    Series {
        q: Vec<Complex64>,
        dilate: Option<f64>,
    },
}

fn pi() -> f64 {
    std::f64::consts::PI
}

impl CandidateSpec {
    pub fn build(&self, lambda: f64, order: usize) -> Result<UCandidate> {
        let (cand, r) = match self {
            CandidateSpec::Extremal { theta, dilate } => (UCandidate::extremal(lambda, *theta, order)?, dilate),
            CandidateSpec::Phi { phi, dilate } => {
                (q_from_phi(lambda, &DiskFunction::from_spec(phi)?, order)?, dilate)
            }
            CandidateSpec::Omega { a2, omega, dilate } => {
                (q_from_omega(*a2, lambda, &DiskFunction::from_spec(omega)?, order)?, dilate)
            }
            CandidateSpec::Series { q, dilate } => {
                let s = TruncatedSeries::new(q.clone())?;
                (
                    UCandidate::new(s, lambda)?.with_provenance(crate::uclass::Provenance::Explicit),
                    dilate,
                )
            }
        };
        match r {
            Some(r) => dilate(&cand, *r),
            None => Ok(cand),
        }
    }
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn require<T: Clone>(field: &Option<T>, name: &str) -> Result<T> {
        field
            .clone()
            .ok_or_else(|| Error::InvalidParameter(format!("config field `{name}` is required")))
    }

    pub fn lambda(&self) -> Result<f64> {
        let l = Self::require(&self.lambda, "lambda")?;
        if !(l > 0.0 && l <= 1.0) {
            return Err(Error::OutOfRange { name: "lambda", value: l });
        }
        Ok(l)
    }

    pub fn grid(&self) -> Result<GridSpec> {
        let g = self.grid.clone().unwrap_or_default();
        g.validate()?;
        Ok(g)
    }

    pub fn order_or(&self, default: usize) -> usize {
        self.order.unwrap_or(default).max(2)
    }

    pub fn default_order(&self) -> usize {
        self.order_or(DEFAULT_ORDER)
    }
}
