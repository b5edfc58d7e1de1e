//! Jacobian-ideal computations: reduced Gröbner bases under graded reverse
//! lexicographic order, standard monomials, and the Milnor number.
//!
//! The Milnor algebra `Q[z]/(∂_1F, ..., ∂_dF)` is finite dimensional exactly
//! when the singularity at the origin is isolated, so a failed finiteness
//! test is reported as [`GrobnerError::NotIsolated`].

mod buchberger;
mod oracle;

pub use buchberger::{all_s_polynomials_vanish, normal_form, s_polynomial};
pub use oracle::milnor_number_oracle;

use serde::{Deserialize, Serialize};

use crate::exactalg::{LoopPoly, LoopVar, Monomial};
use crate::loopfun::InputFunction;

/// Upper limit on enumerated standard monomials used by [`milnor_number`].
pub const DEFAULT_MONOMIAL_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrobnerError {
    #[error("singularity is not isolated: {0}")]
    NotIsolated(NonIsolatedWitness),
    #[error("Milnor number {computed} differs from (δ-1)^d = {expected}")]
    CountMismatch { computed: u64, expected: u64 },
    #[error("more than {0} standard monomials")]
    CapExceeded(usize),
    #[error("generator uses {0}, outside the ambient variables z^1_0..z^{1}_0")]
    ForeignVariable(LoopVar, u32),
}

/// Evidence that a quotient is infinite dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonIsolatedWitness {
    /// No leading monomial is a pure power of this coordinate, so all of
    /// its powers are standard.
    FreeCoordinate(u32),
    /// The truncated quotient is still nonzero in this degree, beyond the
    /// top degree of any finite Milnor algebra.
    QuotientSurvives(u32),
}

impl std::fmt::Display for NonIsolatedWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonIsolatedWitness::FreeCoordinate(c) => {
                write!(f, "every power of coordinate {c} is a standard monomial")
            }
            NonIsolatedWitness::QuotientSurvives(k) => {
                write!(f, "the Jacobian quotient is nonzero in degree {k}")
            }
        }
    }
}

/// An ideal of `Q[z^1_0, ..., z^d_0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    d: u32,
    generators: Vec<LoopPoly>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(d: u32, generators: Vec<LoopPoly>) -> Result<Self, GrobnerError> {
        for g in &generators {
            if let Some(v) = g
                .variables()
                .into_iter()
                .find(|v| v.cdeg != 0 || v.coord == 0 || v.coord > d)
            {
                return Err(GrobnerError::ForeignVariable(v, d));
            }
        }
        Ok(Ideal {
            d,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// `(∂_1F, ..., ∂_dF)`.
    pub fn jacobian(f: &InputFunction) -> Self {
        Ideal {
            d: f.d(),
            generators: f
                .coords()
                .map(|j| f.partial(j))
                .filter(|g| !g.is_zero())
                .collect(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn generators(&self) -> &[LoopPoly] {
        &self.generators
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub d: u32,
    pub elements: Vec<LoopPoly>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(LoopPoly::leading_monomial)
    }

    pub fn normal_form(&self, p: &LoopPoly) -> LoopPoly {
        normal_form(p, &self.elements)
    }

    pub fn is_groebner(&self) -> bool {
        all_s_polynomials_vanish(&self.elements)
    }
}

/// Reduced Gröbner basis of `ideal`.
///
/// Panics if the result fails the S-polynomial test, which would mean the
/// implementation is wrong.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    let elements = buchberger::reduced_basis(&ideal.generators);
    let basis = GroebnerBasis {
        d: ideal.d,
        elements,
        reduced: true,
    };
    assert!(
        basis.is_groebner(),
        "Buchberger output is not a Gröbner basis"
    );
    basis
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite(NonIsolatedWitness),
}

/// Monomials outside the leading-monomial ideal, ordered by degree and then
/// by monomial order, or a witness that there are infinitely many.
pub fn standard_monomials(
    basis: &GroebnerBasis,
    cap: usize,
) -> Result<StandardMonomials, GrobnerError> {
    let lms: Vec<&Monomial> = basis.leading_monomials().collect();
    let mut bounds = Vec::with_capacity(basis.d as usize);
    for coord in 1..=basis.d {
        let v = LoopVar::ambient(coord);
        let pure = lms
            .iter()
            .filter(|m| m.factors().len() == 1 && m.factors()[0].0 == v)
            .map(|m| m.factors()[0].1)
            .min();
        match pure {
            Some(e) => bounds.push(e),
            None => {
                return Ok(StandardMonomials::Infinite(
                    NonIsolatedWitness::FreeCoordinate(coord),
                ))
            }
        }
    }

    // Odometer over the box of exponents below each pure power.
    let mut out = Vec::new();
    let mut exps = vec![0u32; bounds.len()];
    loop {
        let m = Monomial::from_factors(
            exps.iter()
                .enumerate()
                .map(|(i, &e)| (LoopVar::ambient(i as u32 + 1), e)),
        );
        if !lms.iter().any(|lm| lm.divides(&m)) {
            if out.len() == cap {
                return Err(GrobnerError::CapExceeded(cap));
            }
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                out.sort_by(|a: &Monomial, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
                return Ok(StandardMonomials::Finite(out));
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// `(δ-1)^d`, the Milnor number of any homogeneous isolated singularity.
pub fn expected_milnor_number(f: &InputFunction) -> u64 {
    (f.delta() as u64 - 1).pow(f.d())
}

/// Milnor number from an already computed basis of the Jacobian ideal.
pub fn milnor_from_basis(f: &InputFunction, basis: &GroebnerBasis) -> Result<u64, GrobnerError> {
    match standard_monomials(basis, DEFAULT_MONOMIAL_CAP)? {
        StandardMonomials::Infinite(w) => Err(GrobnerError::NotIsolated(w)),
        StandardMonomials::Finite(ms) => {
            let computed = ms.len() as u64;
            let expected = expected_milnor_number(f);
            if computed != expected {
                return Err(GrobnerError::CountMismatch { computed, expected });
            }
            Ok(computed)
        }
    }
}

/// Number of standard monomials of the Jacobian ideal, cross-checked
/// against `(δ-1)^d`.
pub fn milnor_number(f: &InputFunction) -> Result<u64, GrobnerError> {
    milnor_from_basis(f, &buchberger(&Ideal::jacobian(f)))
}
