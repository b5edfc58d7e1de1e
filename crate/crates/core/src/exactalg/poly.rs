use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LoopVar, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("no substitution given for variable {0}")]
    MissingAssignment(LoopVar),
}

/// Sparse polynomial with exact rational coefficients over the loop-space
/// alphabet.
///
/// Terms are stored in a `BTreeMap` keyed by [`Monomial`], so iteration is in
/// ascending graded reverse lexicographic order and the leading term is the
/// last entry. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LoopPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LoopPoly {
    pub fn zero() -> Self {
        LoopPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: LoopVar) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LoopPoly { terms }
    }

    /// Collects `(coefficient, monomial)` pairs, combining like terms in any
    /// insertion order.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Monomial)>>(terms: I) -> Self {
        let mut p = LoopPoly::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn variables(&self) -> BTreeSet<LoopVar> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Set of total degrees of the terms.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    pub fn scale(&self, c: &Rational) -> LoopPoly {
        if c.is_zero() {
            return LoopPoly::zero();
        }
        LoopPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> LoopPoly {
        if c.is_zero() {
            return LoopPoly::zero();
        }
        // Multiplying every key by the same monomial preserves the order.
        LoopPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> LoopPoly {
        let mut acc = LoopPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> LoopPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => LoopPoly::zero(),
        }
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: LoopVar) -> LoopPoly {
        LoopPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.derive(v)
                .map(|(e, rest)| (c * Rational::from_integer(e.into()), rest))
        }))
    }

    /// Simultaneously replaces every variable by the assigned polynomial and
    /// expands.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<LoopVar, LoopPoly>,
    ) -> Result<LoopPoly, PolyError> {
        let mut out = LoopPoly::zero();
        let mut powers: BTreeMap<(LoopVar, u32), LoopPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = LoopPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let image = assignment.get(&v).ok_or(PolyError::MissingAssignment(v))?;
                let p = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                acc = &acc * &*p;
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Weights of the homogeneous components under `weight`; a polynomial of
    /// pure weight yields a singleton and zero yields the empty set.
    pub fn grading<W: Fn(LoopVar) -> i64>(&self, weight: W) -> BTreeSet<i64> {
        self.terms.keys().map(|m| m.weight(&weight)).collect()
    }

    /// Sets every variable rejected by `keep` to zero.
    pub fn restrict<K: Fn(LoopVar) -> bool>(&self, keep: K) -> LoopPoly {
        LoopPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.vars().all(&keep))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames variables through `f`. Non-injective maps merge terms.
    pub fn map_vars<F: Fn(LoopVar) -> LoopVar>(&self, f: F) -> LoopPoly {
        LoopPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                c.clone(),
                Monomial::from_factors(m.factors().iter().map(|&(v, e)| (f(v), e))),
            )
        }))
    }

    /// Renders the polynomial, highest term first, with a caller-provided
    /// variable naming. Output is accepted by the expression parser.
    pub fn render<N: Fn(LoopVar) -> String>(&self, name: N) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.render(&name));
            } else {
                out.push_str(&format!("{}*{}", mag, m.render(&name)));
            }
        }
        out
    }
}

impl fmt::Display for LoopPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|v| v.to_string()))
    }
}

impl Add for LoopPoly {
    type Output = LoopPoly;
    fn add(mut self, rhs: LoopPoly) -> LoopPoly {
        for (m, c) in rhs.terms {
            self.add_term(c, m);
        }
        self
    }
}

impl Add for &LoopPoly {
    type Output = LoopPoly;
    fn add(self, rhs: &LoopPoly) -> LoopPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for LoopPoly {
    type Output = LoopPoly;
    fn neg(self) -> LoopPoly {
        LoopPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &LoopPoly {
    type Output = LoopPoly;
    fn neg(self) -> LoopPoly {
        -self.clone()
    }
}

impl Sub for LoopPoly {
    type Output = LoopPoly;
    fn sub(self, rhs: LoopPoly) -> LoopPoly {
        self + (-rhs)
    }
}

impl Sub for &LoopPoly {
    type Output = LoopPoly;
    fn sub(self, rhs: &LoopPoly) -> LoopPoly {
        self.clone() - rhs.clone()
    }
}

impl Mul for &LoopPoly {
    type Output = LoopPoly;
    fn mul(self, rhs: &LoopPoly) -> LoopPoly {
        let mut out = LoopPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Mul for LoopPoly {
    type Output = LoopPoly;
    fn mul(self, rhs: LoopPoly) -> LoopPoly {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm(Monomial, String);

impl Serialize for LoopPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms
            .iter()
            .map(|(m, c)| RawTerm(m.clone(), c.to_string()))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LoopPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<RawTerm>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for RawTerm(m, c) in raw {
            let c: Rational = c.parse().map_err(serde::de::Error::custom)?;
            terms.push((c, m));
        }
        Ok(LoopPoly::from_terms(terms))
    }
}
