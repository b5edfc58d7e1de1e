//! Graded-dimension bookkeeping for the Gysin sequences of the truncations
//! `X^n ⊂ X^{n+1}` of the nearby fibre `{Λ(F) = 1}`, and the renormalized
//! colimit along the Gysin maps.
//!
//! Only dimension vectors are tracked. Ranks of connecting maps are either
//! forced by exactness or supplied as declared facts (see [`RankFact`]).

mod les;
mod renorm;

pub use les::{solve_les, LesError, LesMap, LesSolution, LesSystem, RankFact};
pub use renorm::{
    escape_report, gysin_step, renormalized_nearby_cohomology, renormalized_with,
    truncation_cohomology, truncation_tower, DimensionTheory, EscapeRow, GysinStep,
    RenormalizedReport, Truncation,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Justification attached to the one rank fact that is not derived here.
pub const RESIDUE_AXIOM: &str = "declared input (Gysin residue): the connecting map \
H^{2d-1}(U^n) -> H^0(X^n) is injective (rank 1), by the dlog residue argument; \
accepted as given, not derived symbolically";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomError {
    #[error(transparent)]
    Les(#[from] LesError),
    #[error(
        "Gysin shift predicts {predicted} but the sequence solver gives {solved} at step {step}"
    )]
    SolverDisagreement {
        step: u32,
        predicted: GradedDims,
        solved: GradedDims,
    },
    #[error("exactness audit failed: {0}")]
    AuditFailed(String),
    #[error("degrees {0:?} did not stabilize by the last truncation")]
    NotStabilized(Vec<i64>),
    #[error("need at least {0} truncation steps")]
    TooFewSteps(u32),
    #[error("reduced cohomology of X^{n} is not concentrated in one degree: {dims}")]
    NotConcentrated { n: u32, dims: GradedDims },
    #[error("H^0 vanishes in {0}; there is no unit class to remove")]
    NoUnitClass(GradedDims),
}

/// Finitely supported map from degree to dimension; zero entries are never
/// stored. Degrees may be negative.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims {
    dims: BTreeMap<i64, u64>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut g = GradedDims::new();
        for (k, v) in pairs {
            g.add_at(k, v);
        }
        g
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: u64) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn add_at(&mut self, degree: i64, dim: u64) {
        let v = self.get(degree) + dim;
        self.set(degree, v);
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(k, v)| {
                if k.rem_euclid(2) == 0 {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .sum()
    }

    /// Moves every class up by `by` degrees.
    pub fn shift(&self, by: i64) -> GradedDims {
        GradedDims {
            dims: self.dims.iter().map(|(&k, &v)| (k + by, v)).collect(),
        }
    }

    /// Adds the unit class in degree 0.
    pub fn with_unit(&self) -> GradedDims {
        let mut g = self.clone();
        g.add_at(0, 1);
        g
    }

    /// Removes the unit class in degree 0.
    pub fn reduced(&self) -> Result<GradedDims, CohomError> {
        let h0 = self.get(0);
        if h0 == 0 {
            return Err(CohomError::NoUnitClass(self.clone()));
        }
        let mut g = self.clone();
        g.set(0, h0 - 1);
        Ok(g)
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cohomology of the Milnor fibre `{F = 1}` of a homogeneous isolated
/// singularity in `d` variables: a wedge of `mu` spheres of dimension `d-1`.
/// This is also `H*(X^0)`, since `Λ(F)` on the pole-free window is `F(z_0)`.
pub fn milnor_fiber_cohomology(d: u32, mu: u64) -> GradedDims {
    GradedDims::from_pairs([(0, 1), (d as i64 - 1, mu)])
}

/// `H*(S^{2d-1})`, the cohomology of every `U^n`.
pub fn sphere_cohomology(d: u32) -> GradedDims {
    GradedDims::from_pairs([(0, 1), (2 * d as i64 - 1, 1)])
}
