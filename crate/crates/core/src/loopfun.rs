//! Truncated Laurent jets of a homogeneous polynomial and the loop-space
//! functional `Λ(F)`, the constant term of `F(z^1(t), ..., z^d(t))` with
//! `z^i(t) = Σ_j z^i_j t^j`.
//!
//! The structural checks in this module verify, symbolically and on the
//! ambient polynomial ring, the facts the nearby-cohomology computation rests
//! on: the conformal-degree support bound, linearity in the top-degree
//! variables, and the two descriptions of the top-degree partials.

use std::collections::BTreeMap;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactalg::{LoopPoly, LoopVar, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("the zero polynomial has no degree of homogeneity")]
    ZeroFunction,
    #[error("not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("degree {0} is too low, need at least 2")]
    DegreeTooLow(u32),
    #[error("variable {0} is not an ambient coordinate in 1..={1}")]
    NotAmbient(LoopVar, u32),
    #[error("need at least one coordinate")]
    NoCoordinates,
    #[error("window top {top} lies below its bottom -{bottom}")]
    EmptyWindow { bottom: u32, top: i64 },
    #[error("window [{0}, {1}] does not contain conformal degree 0")]
    WindowMissesZero(i64, i64),
    #[error("check needs a window bottom of at least 1")]
    BottomTooSmall,
}

/// The closed interval `[-bottom, top]` of allowed conformal degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    bottom: u32,
    top: i64,
}

impl Window {
    pub fn new(bottom: u32, top: i64) -> Result<Self, LoopError> {
        if top < -(bottom as i64) {
            return Err(LoopError::EmptyWindow { bottom, top });
        }
        Ok(Window { bottom, top })
    }

    /// The window `[-b, b(δ-1)]`, the smallest one on which `Λ(F)` with
    /// poles of order at most `b` is already complete.
    pub fn minimal(bottom: u32, delta: u32) -> Self {
        Window {
            bottom,
            top: bottom as i64 * (delta as i64 - 1),
        }
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn low(&self) -> i64 {
        -(self.bottom as i64)
    }

    pub fn contains(&self, j: i64) -> bool {
        self.low() <= j && j <= self.top
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.low()..=self.top
    }
}

/// A homogeneous polynomial `F` on `A^d` of degree `δ ≥ 2`, written in the
/// constant-loop variables `z^i_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InputFunction {
    d: u32,
    delta: u32,
    poly: LoopPoly,
}

impl InputFunction {
    /// Infers `d` from the largest coordinate index used.
    pub fn from_poly(poly: LoopPoly) -> Result<Self, LoopError> {
        let d = poly.variables().iter().map(|v| v.coord).max().unwrap_or(0);
        Self::new(d, poly)
    }

    pub fn new(d: u32, poly: LoopPoly) -> Result<Self, LoopError> {
        if d == 0 {
            return Err(if poly.is_zero() {
                LoopError::ZeroFunction
            } else {
                LoopError::NoCoordinates
            });
        }
        if poly.is_zero() {
            return Err(LoopError::ZeroFunction);
        }
        if let Some(v) = poly
            .variables()
            .into_iter()
            .find(|v| v.cdeg != 0 || v.coord == 0 || v.coord > d)
        {
            return Err(LoopError::NotAmbient(v, d));
        }
        let degrees: Vec<u32> = poly.degrees().into_iter().collect();
        if degrees.len() > 1 {
            return Err(LoopError::NotHomogeneous(degrees[0], degrees[1]));
        }
        let delta = degrees[0];
        if delta < 2 {
            return Err(LoopError::DegreeTooLow(delta));
        }
        Ok(InputFunction { d, delta, poly })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn poly(&self) -> &LoopPoly {
        &self.poly
    }

    pub fn coords(&self) -> impl Iterator<Item = u32> {
        1..=self.d
    }

    /// The ambient partial `∂_j F`.
    pub fn partial(&self, coord: u32) -> LoopPoly {
        self.poly.partial(LoopVar::ambient(coord))
    }
}

/// Coefficient of `t^k` in `F(z(t))` with `z^i(t)` truncated to the window.
pub fn jet_coefficient(f: &InputFunction, w: Window, k: i64) -> LoopPoly {
    jet_coefficient_poly(f.poly(), w, k)
}

/// [`jet_coefficient`] for an arbitrary polynomial in the ambient variables
/// `z^i_0`; other variables are treated as ambient coordinates too.
pub fn jet_coefficient_poly(p: &LoopPoly, w: Window, k: i64) -> LoopPoly {
    let terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
    terms
        .par_iter()
        .map(|(m, c)| monomial_jet(m, c, w, k))
        .reduce(LoopPoly::zero, |a, b| a + b)
}

/// Expands one monomial slot by slot, keeping only partial sums of
/// conformal degree from which `k` is still reachable.
fn monomial_jet(m: &Monomial, c: &Rational, w: Window, k: i64) -> LoopPoly {
    let slots: Vec<u32> = m
        .factors()
        .iter()
        .flat_map(|&(v, e)| std::iter::repeat_n(v.coord, e as usize))
        .collect();
    let one = Rational::one();
    let mut partial: BTreeMap<i64, LoopPoly> = BTreeMap::new();
    partial.insert(0, LoopPoly::constant(c.clone()));
    for (filled, &coord) in slots.iter().enumerate() {
        let remaining = (slots.len() - filled - 1) as i64;
        let (reach_lo, reach_hi) = (w.low() * remaining, w.top() * remaining);
        let mut next: BTreeMap<i64, LoopPoly> = BTreeMap::new();
        for (s, poly) in &partial {
            for j in w.degrees() {
                let s2 = s + j;
                let need = k - s2;
                if need < reach_lo || need > reach_hi {
                    continue;
                }
                let step = poly.mul_term(&one, &Monomial::var(LoopVar::new(coord, j)));
                let slot = next.entry(s2).or_default();
                *slot = std::mem::take(slot) + step;
            }
        }
        partial = next;
    }
    partial.remove(&k).unwrap_or_default()
}

/// `Λ(F)` on the window: the `t^0` coefficient.
///
/// Panics if the result is not of pure conformal weight 0 and pure total
/// degree `δ`; both hold for every homogeneous input by construction.
pub fn lambda_of(f: &InputFunction, w: Window) -> LoopPoly {
    let lambda = jet_coefficient(f, w, 0);
    let cdeg = lambda.grading(|v| v.cdeg);
    assert!(
        cdeg.len() <= 1 && cdeg.iter().all(|&g| g == 0),
        "Λ(F) has conformal weights {cdeg:?}"
    );
    let total = lambda.grading(|_| 1);
    assert!(
        total.len() <= 1 && total.iter().all(|&g| g == f.delta() as i64),
        "Λ(F) has total degrees {total:?}"
    );
    lambda
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportBoundReport {
    pub bottom: u32,
    /// Window top used, deliberately beyond the bound.
    pub probe_top: i64,
    pub max_cdeg_present: i64,
    pub bound: i64,
    pub ok: bool,
}

/// Computes `Λ(F)` on `[-b, b(δ-1) + δ]` and confirms no variable of
/// conformal degree above `b(δ-1)` survives.
pub fn check_support_bound(f: &InputFunction, bottom: u32) -> SupportBoundReport {
    let bound = bottom as i64 * (f.delta() as i64 - 1);
    let probe_top = bound + f.delta() as i64;
    let w = Window {
        bottom,
        top: probe_top,
    };
    let lambda = lambda_of(f, w);
    let max_cdeg_present = lambda
        .variables()
        .iter()
        .map(|v| v.cdeg)
        .max()
        .unwrap_or(w.low());
    SupportBoundReport {
        bottom,
        probe_top,
        max_cdeg_present,
        bound,
        ok: max_cdeg_present <= bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopLinearityReport {
    pub bottom: u32,
    pub top_degree: i64,
    pub ok: bool,
    /// Monomials with more than one factor of conformal degree `N`.
    pub offending_monomials: Vec<Monomial>,
    /// `Σ_j z^j_N · ∂_{z^j_N} Λ(F)`.
    pub linear_part: LoopPoly,
    /// `Λ(F)` minus the linear part; free of degree-`N` variables when `ok`.
    pub remainder: LoopPoly,
}

/// With `N = b(δ-1)`, verifies each monomial of `Λ(F)` on `[-b, N]` has at
/// most one factor of conformal degree `N`, and splits off the part linear
/// in those variables.
pub fn check_top_linearity(
    f: &InputFunction,
    bottom: u32,
) -> Result<TopLinearityReport, LoopError> {
    if bottom == 0 {
        return Err(LoopError::BottomTooSmall);
    }
    let w = Window::minimal(bottom, f.delta());
    let top = w.top();
    let lambda = lambda_of(f, w);
    let offending_monomials: Vec<Monomial> = lambda
        .terms()
        .map(|(m, _)| m)
        .filter(|m| {
            m.factors()
                .iter()
                .filter(|(v, _)| v.cdeg == top)
                .map(|&(_, e)| e)
                .sum::<u32>()
                > 1
        })
        .cloned()
        .collect();
    let linear_part = f
        .coords()
        .map(|j| {
            let v = LoopVar::new(j, top);
            &LoopPoly::var(v) * &lambda.partial(v)
        })
        .fold(LoopPoly::zero(), |a, b| a + b);
    let remainder = &lambda - &linear_part;
    let remainder_clean = remainder.variables().iter().all(|v| v.cdeg != top);
    Ok(TopLinearityReport {
        bottom,
        top_degree: top,
        ok: offending_monomials.is_empty() && remainder_clean,
        offending_monomials,
        linear_part,
        remainder,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordDerivative {
    pub coord: u32,
    /// `∂_{z^j_N} Λ(F)`.
    pub lambda_partial: LoopPoly,
    /// Agrees with the `t^{-N}` coefficient of `∂_j F(z(t))`.
    pub via_jet: bool,
    /// Agrees with `∂_j F(z^1_{-b}, ..., z^d_{-b})`.
    pub via_bottom: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub bottom: u32,
    pub top_degree: i64,
    pub coords: Vec<CoordDerivative>,
    pub ok_per_coord: Vec<bool>,
}

impl DerivativeReport {
    pub fn ok(&self) -> bool {
        self.ok_per_coord.iter().all(|&b| b)
    }
}

/// Checks both descriptions of `∂_{z^j_N} Λ(F)` for every coordinate `j`,
/// with `N = b(δ-1)` and the evaluation taken at the bottom index `-b`.
pub fn check_derivative_identity(
    f: &InputFunction,
    bottom: u32,
) -> Result<DerivativeReport, LoopError> {
    if bottom == 0 {
        return Err(LoopError::BottomTooSmall);
    }
    let w = Window::minimal(bottom, f.delta());
    let top = w.top();
    let lambda = lambda_of(f, w);
    let low = w.low();
    let coords: Vec<CoordDerivative> = f
        .coords()
        .map(|j| {
            let lambda_partial = lambda.partial(LoopVar::new(j, top));
            let ambient_partial = f.partial(j);
            let via_jet = jet_coefficient_poly(&ambient_partial, w, -top) == lambda_partial;
            let at_bottom = ambient_partial.map_vars(|v| LoopVar::new(v.coord, low));
            CoordDerivative {
                coord: j,
                via_bottom: at_bottom == lambda_partial,
                via_jet,
                lambda_partial,
            }
        })
        .collect();
    let ok_per_coord = coords.iter().map(|c| c.via_jet && c.via_bottom).collect();
    Ok(DerivativeReport {
        bottom,
        top_degree: top,
        coords,
        ok_per_coord,
    })
}

/// `Λ(F)` with every non-constant loop coordinate set to zero.
pub fn constant_loop_restriction(f: &InputFunction, w: Window) -> Result<LoopPoly, LoopError> {
    if !w.contains(0) {
        return Err(LoopError::WindowMissesZero(w.low(), w.top()));
    }
    Ok(lambda_of(f, w).restrict(|v| v.cdeg == 0))
}
