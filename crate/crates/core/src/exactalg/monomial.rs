use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A loop-space coordinate `z^coord_cdeg`.
///
/// Variables are totally ordered by conformal degree first and coordinate
/// second; the derived `Ord` relies on the field order below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoopVar {
    pub cdeg: i64,
    pub coord: u32,
}

impl LoopVar {
    pub fn new(coord: u32, cdeg: i64) -> Self {
        LoopVar { cdeg, coord }
    }

    /// The ambient coordinate `z^coord`, modelled as the constant loop
    /// variable of conformal degree zero.
    pub fn ambient(coord: u32) -> Self {
        LoopVar { cdeg: 0, coord }
    }
}

impl fmt::Display for LoopVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}_{}", self.coord, self.cdeg)
    }
}

/// A power product of loop variables.
///
/// Factors are sorted by [`LoopVar`] with no repeats and strictly positive
/// exponents, so the empty list is the unit monomial. `Ord` is the graded
/// reverse lexicographic order in which smaller variables rank higher
/// (`z^1_0 > z^2_0 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(LoopVar, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
        }
    }

    pub fn var(v: LoopVar) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn power(v: LoopVar, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Monomial {
                factors: vec![(v, exp)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (LoopVar, u32)>>(factors: I) -> Self {
        let mut f: Vec<(LoopVar, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        f.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(LoopVar, u32)> = Vec::with_capacity(f.len());
        for (v, e) in f {
            match merged.last_mut() {
                Some((last, le)) if *last == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(LoopVar, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: LoopVar) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = LoopVar> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Sum of `weight(v) * exponent` over all factors.
    pub fn weight<W: Fn(LoopVar) -> i64>(&self, weight: W) -> i64 {
        self.factors
            .iter()
            .map(|&(v, e)| weight(v) * e as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let factors = other
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - self.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial { factors })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let vars = self.vars().chain(other.vars());
        Monomial::from_factors(
            vars.map(|v| (v, self.exponent(v).max(other.exponent(v))))
                .collect::<std::collections::BTreeMap<_, _>>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.vars().all(|v| other.exponent(v) == 0)
    }

    /// Lowers the exponent of `v` by one, returning the old exponent, or
    /// `None` if `v` does not occur.
    pub fn derive(&self, v: LoopVar) -> Option<(u32, Monomial)> {
        let idx = self.factors.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.factors[idx].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Some((e, Monomial { factors }))
    }

    /// Renders the monomial with a caller-provided variable naming.
    pub fn render<N: Fn(LoopVar) -> String>(&self, name: N) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    name(v)
                } else {
                    format!("{}^{}", name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        // Walk from the largest variable down; at the first difference the
        // monomial with the smaller exponent is the larger one.
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 && j > 0 {
            let (va, ea) = a[i - 1];
            let (vb, eb) = b[j - 1];
            match va.cmp(&vb) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                    }
                    ord => return ord.reverse(),
                },
            }
        }
        match (i, j) {
            (0, 0) => Ordering::Equal,
            (_, 0) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|v| v.to_string()))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.factors
            .iter()
            .map(|&(v, e)| (v.coord, v.cdeg, e))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<(u32, i64, u32)>::deserialize(d)?;
        Ok(Monomial::from_factors(
            raw.into_iter().map(|(c, j, e)| (LoopVar::new(c, j), e)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LoopVar {
        LoopVar::ambient(1)
    }
    fn y() -> LoopVar {
        LoopVar::ambient(2)
    }
    fn w() -> LoopVar {
        LoopVar::ambient(3)
    }

    #[test]
    fn var_order_is_cdeg_major() {
        assert!(LoopVar::new(5, -1) < LoopVar::new(1, 0));
        assert!(LoopVar::new(1, 2) < LoopVar::new(2, 2));
    }

    #[test]
    fn grevlex_textbook_cases() {
        let m = |a, b, c| Monomial::from_factors([(x(), a), (y(), b), (w(), c)]);
        // x > y > w
        assert!(m(1, 0, 0) > m(0, 1, 0));
        assert!(m(0, 1, 0) > m(0, 0, 1));
        // degree first
        assert!(m(0, 0, 2) > m(1, 0, 0));
        // x*y*w^2 vs x^2*w^2... classic: x^2 y z^2? use x y^2 vs x^2 w
        assert!(m(1, 2, 0) > m(2, 0, 1));
        assert!(m(2, 1, 0) > m(1, 2, 0));
        assert!(m(1, 1, 1) < m(1, 2, 0));
        assert_eq!(m(1, 1, 0).cmp(&m(1, 1, 0)), Ordering::Equal);
    }

    #[test]
    fn from_factors_merges_and_drops_zero() {
        let a = Monomial::from_factors([(y(), 1), (x(), 2), (y(), 2), (w(), 0)]);
        assert_eq!(a.factors(), &[(x(), 2), (y(), 3)]);
        assert_eq!(a.degree(), 5);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_factors([(x(), 2), (y(), 1)]);
        let b = Monomial::from_factors([(x(), 1), (y(), 3)]);
        assert_eq!(a.lcm(&b), Monomial::from_factors([(x(), 2), (y(), 3)]));
        assert!(!a.divides(&b));
        let q = Monomial::var(x()).quotient_of(&a).unwrap();
        assert_eq!(q, Monomial::from_factors([(x(), 1), (y(), 1)]));
        assert!(Monomial::var(x()).is_coprime(&Monomial::var(y())));
    }
}
