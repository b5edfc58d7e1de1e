use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::les::{solve_les, LesMap, LesSolution, LesSystem, RankFact};
use super::{milnor_fiber_cohomology, sphere_cohomology, CohomError, GradedDims, RESIDUE_AXIOM};

/// One Gysin step `X^n ⊂ X^{n+1}` together with the solved sequence that
/// justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinStep {
    /// Reduced cohomology of `X^{n+1}`.
    pub reduced: GradedDims,
    pub solution: LesSolution,
}

fn gysin_system(full: GradedDims, d: u32) -> LesSystem {
    LesSystem {
        codim: d,
        source: full,
        complement: sphere_cohomology(d),
        rank_facts: vec![RankFact::residue_full_rank(d)],
    }
}

/// Reduced cohomology of `X^{n+1}` from that of `X^n`: a shift by `2d`, as
/// the unit class cancels against both classes of `U^n`.
///
/// The shift is re-derived on every call by solving the full Gysin
/// sequence; disagreement or a failed exactness audit is an error.
pub fn gysin_step(reduced: &GradedDims, d: u32) -> Result<GysinStep, CohomError> {
    step_at(reduced, d, 0)
}

fn step_at(reduced: &GradedDims, d: u32, step: u32) -> Result<GysinStep, CohomError> {
    let predicted = reduced.shift(2 * d as i64);
    let solution = solve_les(&gysin_system(reduced.with_unit(), d))?;
    solution.audit().map_err(CohomError::AuditFailed)?;
    let solved = solution.middle.reduced()?;
    if solved != predicted {
        return Err(CohomError::SolverDisagreement {
            step,
            predicted,
            solved,
        });
    }
    Ok(GysinStep {
        reduced: predicted,
        solution,
    })
}

/// Cohomology of the truncation `X^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub n: u32,
    pub dims: GradedDims,
    /// The single degree carrying reduced cohomology.
    pub concentration_degree: i64,
    /// `2(n+1)d - 1`, the lower bound on reduced cohomology stated for the
    /// vanishing argument; recorded for comparison, never asserted.
    pub stated_bound: i64,
    /// Gysin sequence into `X^{n+1}`, if that step was computed.
    pub step_to_next: Option<LesSolution>,
}

impl Truncation {
    pub fn meets_stated_bound(&self) -> bool {
        self.concentration_degree >= self.stated_bound
    }
}

/// `H*(X^0), ..., H*(X^{n_max})`, each step re-derived through the solver.
pub fn truncation_tower(d: u32, mu: u64, n_max: u32) -> Result<Vec<Truncation>, CohomError> {
    let mut reduced = milnor_fiber_cohomology(d, mu).reduced()?;
    let mut out: Vec<Truncation> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let concentration_degree = match reduced.iter().collect::<Vec<_>>().as_slice() {
            [(k, _)] => *k,
            _ => return Err(CohomError::NotConcentrated { n, dims: reduced }),
        };
        let next = if n < n_max {
            Some(step_at(&reduced, d, n)?)
        } else {
            None
        };
        out.push(Truncation {
            n,
            dims: reduced.with_unit(),
            concentration_degree,
            stated_bound: 2 * (n as i64 + 1) * d as i64 - 1,
            step_to_next: next.as_ref().map(|s| s.solution.clone()),
        });
        if let Some(s) = next {
            reduced = s.reduced;
        }
    }
    Ok(out)
}

/// `H*(X^n)`.
pub fn truncation_cohomology(d: u32, mu: u64, n: u32) -> Result<Truncation, CohomError> {
    let mut tower = truncation_tower(d, mu, n)?;
    Ok(tower.pop().expect("tower has n + 1 entries"))
}

/// `Δ(X^n) = normalization + n * offset_per_step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTheory {
    pub offset_per_step: u32,
    pub normalization: i64,
}

impl DimensionTheory {
    /// Steps have codimension `d`; `Δ(X^0) = 0`.
    pub fn standard(d: u32) -> Self {
        DimensionTheory {
            offset_per_step: d,
            normalization: 0,
        }
    }

    pub fn at(&self, n: u32) -> i64 {
        self.normalization + n as i64 * self.offset_per_step as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenormalizedReport {
    pub theory: DimensionTheory,
    pub n_max: u32,
    /// Colimit dimensions over the tracked degrees.
    pub stable: GradedDims,
    /// Per tracked degree, the first `n` from which every Gysin map is an
    /// isomorphism.
    pub stabilization_step: BTreeMap<i64, u32>,
    /// `{d - 1 - 2·normalization: μ}`.
    pub expected: GradedDims,
    /// Tracked degrees where `stable` and `expected` differ.
    pub disagreements: Vec<i64>,
    pub axioms: Vec<String>,
}

/// Renormalized nearby cohomology with `Δ(X^0) = 0`.
pub fn renormalized_nearby_cohomology(
    d: u32,
    mu: u64,
    n_max: u32,
) -> Result<RenormalizedReport, CohomError> {
    renormalized_with(DimensionTheory::standard(d), d, mu, n_max)
}

/// Colimit of `H^{* + 2Δ(X^n)}(X^n)` along the Gysin maps.
///
/// A degree is tracked when both the appearance and the death of the unit
/// class can be observed before `n_max`; each tracked degree must end with
/// an isomorphism, or the result is `NotStabilized`.
pub fn renormalized_with(
    theory: DimensionTheory,
    d: u32,
    mu: u64,
    n_max: u32,
) -> Result<RenormalizedReport, CohomError> {
    if n_max < 2 {
        return Err(CohomError::TooFewSteps(2));
    }
    let tower = truncation_tower(d, mu, n_max)?;
    let shift = -2 * theory.normalization;
    let step = 2 * theory.offset_per_step as i64;
    let lo = shift - step * (n_max as i64 - 2);
    let hi = shift + d as i64;

    let mut stable = GradedDims::new();
    let mut stabilization_step = BTreeMap::new();
    let mut unstable = Vec::new();
    for k in lo..=hi {
        let absolute = |n: u32| k + 2 * theory.at(n);
        let dim = |n: u32| tower[n as usize].dims.get(absolute(n));
        let iso = |n: u32| {
            let sol = tower[n as usize]
                .step_to_next
                .as_ref()
                .expect("step computed below n_max");
            let target = absolute(n) + 2 * d as i64;
            sol.rank(LesMap::Gysin, target) == dim(n) && dim(n) == dim(n + 1)
        };
        if !iso(n_max - 1) {
            unstable.push(k);
            continue;
        }
        let mut first = n_max - 1;
        while first > 0 && iso(first - 1) {
            first -= 1;
        }
        stabilization_step.insert(k, first);
        stable.set(k, dim(first));
    }
    if !unstable.is_empty() {
        return Err(CohomError::NotStabilized(unstable));
    }

    let expected = GradedDims::from_pairs([(d as i64 - 1 + shift, mu)]);
    let disagreements = (lo..=hi)
        .filter(|&k| stable.get(k) != expected.get(k))
        .collect();
    Ok(RenormalizedReport {
        theory,
        n_max,
        stable,
        stabilization_step,
        expected,
        disagreements,
        axioms: vec![RESIDUE_AXIOM.to_string()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeRow {
    pub n: u32,
    pub concentration_degree: i64,
    pub stated_bound: i64,
}

/// Degree carrying the reduced cohomology of each `X^n`, `n = 0..=n_max`.
pub fn escape_report(d: u32, mu: u64, n_max: u32) -> Result<Vec<EscapeRow>, CohomError> {
    Ok(truncation_tower(d, mu, n_max)?
        .into_iter()
        .map(|t| EscapeRow {
            n: t.n,
            concentration_degree: t.concentration_degree,
            stated_bound: t.stated_bound,
        })
        .collect())
}
