use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GradedDims, RESIDUE_AXIOM};

/// The three maps of the repeating pattern
/// `A^{s-2c} --gysin--> B^s --restriction--> C^s --residue--> A^{s-2c+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LesMap {
    Gysin,
    Restriction,
    Residue,
}

/// A declared rank, indexed by the degree `s` of the `B^s` / `C^s` term the
/// map touches: `gysin` lands in `B^s`, `restriction` and `residue` start in
/// `B^s` and `C^s` respectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankFact {
    pub map: LesMap,
    pub degree: i64,
    pub rank: u64,
    pub justification: String,
}

impl RankFact {
    /// Injectivity of the residue on the top class of `U^n ≃ S^{2d-1}`.
    pub fn residue_full_rank(d: u32) -> Self {
        RankFact {
            map: LesMap::Residue,
            degree: 2 * d as i64 - 1,
            rank: 1,
            justification: RESIDUE_AXIOM.to_string(),
        }
    }
}

/// Gysin sequence of a codimension-`codim` closed embedding `A ⊂ B` with
/// open complement `C`; `B` is the unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSystem {
    pub codim: u32,
    pub source: GradedDims,
    pub complement: GradedDims,
    pub rank_facts: Vec<RankFact>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LesError {
    #[error("residue ranks at degrees {0:?} are not pinned down")]
    Underdetermined(Vec<i64>),
    #[error("inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesSolution {
    pub system: LesSystem,
    /// The middle term.
    pub middle: GradedDims,
    /// Degree range `[lo, hi]` of `s` outside which every term vanishes.
    pub lo: i64,
    pub hi: i64,
    pub gysin: BTreeMap<i64, u64>,
    pub restriction: BTreeMap<i64, u64>,
    pub residue: BTreeMap<i64, u64>,
}

impl LesSolution {
    pub fn rank(&self, map: LesMap, degree: i64) -> u64 {
        let table = match map {
            LesMap::Gysin => &self.gysin,
            LesMap::Restriction => &self.restriction,
            LesMap::Residue => &self.residue,
        };
        table.get(&degree).copied().unwrap_or(0)
    }

    /// The sequence laid out term by term over `[lo, hi]`.
    pub fn terms(&self) -> Vec<u64> {
        let c = 2 * self.system.codim as i64;
        (self.lo..=self.hi)
            .flat_map(|s| {
                [
                    self.system.source.get(s - c),
                    self.middle.get(s),
                    self.system.complement.get(s),
                ]
            })
            .collect()
    }

    /// Checks exactness at every term from the ranks, and that each run of
    /// nonzero terms between zeros has alternating dimension sum 0.
    pub fn audit(&self) -> Result<(), String> {
        let c = 2 * self.system.codim as i64;
        for s in self.lo..=self.hi {
            let (g, r, res) = (
                self.rank(LesMap::Gysin, s),
                self.rank(LesMap::Restriction, s),
                self.rank(LesMap::Residue, s),
            );
            let next_g = self.rank(LesMap::Gysin, s + 1);
            let prev_res = self.rank(LesMap::Residue, s - 1);
            if self.middle.get(s) != g + r {
                return Err(format!("not exact at B^{s}"));
            }
            if self.system.complement.get(s) != r + res {
                return Err(format!("not exact at C^{s}"));
            }
            if self.system.source.get(s + 1 - c) != res + next_g {
                return Err(format!("not exact at A^{}", s + 1 - c));
            }
            if self.system.source.get(s - c) != prev_res + g {
                return Err(format!("not exact at A^{}", s - c));
            }
        }
        let terms = self.terms();
        for run in terms.split(|&t| t == 0) {
            let alt: i64 = run
                .iter()
                .enumerate()
                .map(|(i, &t)| if i % 2 == 0 { t as i64 } else { -(t as i64) })
                .sum();
            if alt != 0 {
                return Err(format!("segment {run:?} has alternating sum {alt}"));
            }
        }
        Ok(())
    }
}

/// Solves for the middle term.
///
/// Exactness splits the sequence at every `B^s` into independent pieces
/// `B^s -> C^s -> A^{s+1-2c} -> B^{s+1}` with one free parameter each, the
/// residue rank at `s`. It is forced to 0 when `C^s` or `A^{s+1-2c}` vanishes
/// and must otherwise come from a rank fact.
pub fn solve_les(sys: &LesSystem) -> Result<LesSolution, LesError> {
    let c = 2 * sys.codim as i64;
    let a = |k: i64| sys.source.get(k);
    let cc = |k: i64| sys.complement.get(k);

    for f in &sys.rank_facts {
        let bound = match f.map {
            LesMap::Gysin => a(f.degree - c),
            LesMap::Restriction => cc(f.degree),
            LesMap::Residue => cc(f.degree).min(a(f.degree + 1 - c)),
        };
        if f.rank > bound {
            return Err(LesError::Inconsistent(format!(
                "declared rank {} of {:?} at degree {} exceeds adjacent dimension {}",
                f.rank, f.map, f.degree, bound
            )));
        }
    }

    let degrees = sys
        .source
        .iter()
        .flat_map(|(k, _)| [k + c, k + c - 1])
        .chain(sys.complement.iter().map(|(k, _)| k));
    let (lo, hi) = degrees.fold((i64::MAX, i64::MIN), |(l, h), k| (l.min(k), h.max(k)));
    let (lo, hi) = if lo > hi { (0, 0) } else { (lo - 1, hi + 1) };

    let mut residue = BTreeMap::new();
    let mut undetermined = Vec::new();
    for s in lo - 1..=hi {
        let (cs, an) = (cc(s), a(s + 1 - c));
        let mut pinned: Option<u64> = None;
        for f in &sys.rank_facts {
            let implied = match f.map {
                LesMap::Residue if f.degree == s => Some(f.rank),
                LesMap::Restriction if f.degree == s => Some(cs - f.rank),
                LesMap::Gysin if f.degree == s + 1 => an.checked_sub(f.rank),
                _ => continue,
            };
            let Some(v) = implied else {
                return Err(LesError::Inconsistent(format!(
                    "rank facts overflow at degree {s}"
                )));
            };
            match pinned {
                Some(p) if p != v => {
                    return Err(LesError::Inconsistent(format!(
                        "rank facts at degree {s} imply residue ranks {p} and {v}"
                    )))
                }
                _ => pinned = Some(v),
            }
        }
        let value = match pinned {
            Some(v) if v > cs.min(an) => {
                return Err(LesError::Inconsistent(format!(
                    "residue rank {v} at degree {s} exceeds min({cs}, {an})"
                )))
            }
            Some(v) => v,
            None if cs.min(an) == 0 => 0,
            None => {
                undetermined.push(s);
                continue;
            }
        };
        if value > 0 {
            residue.insert(s, value);
        }
    }
    if !undetermined.is_empty() {
        return Err(LesError::Underdetermined(undetermined));
    }

    let res = |s: i64| residue.get(&s).copied().unwrap_or(0);
    let mut gysin = BTreeMap::new();
    let mut restriction = BTreeMap::new();
    let mut middle = GradedDims::new();
    for s in lo..=hi {
        let g = a(s - c) - res(s - 1);
        let r = cc(s) - res(s);
        if g > 0 {
            gysin.insert(s, g);
        }
        if r > 0 {
            restriction.insert(s, r);
        }
        middle.set(s, g + r);
    }
    Ok(LesSolution {
        system: sys.clone(),
        middle,
        lo,
        hi,
        gysin,
        restriction,
        residue,
    })
}
