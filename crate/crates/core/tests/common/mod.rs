//! Test corpus and oracles that stay independent of the library's
//! expansion and Gröbner code paths.
#![allow(dead_code)]

use std::collections::HashMap;

use loopsing::cli::{parse_function, ParsedFunction};
use loopsing::exactalg::{LoopPoly, LoopVar, Rational};
use loopsing::loopfun::{InputFunction, Window};
use num_traits::Zero;

/// Homogeneous polynomials with an isolated singularity at the origin.
pub const CORPUS: &[&str] = &[
    "z^2",
    "z^3",
    "z^4",
    "z^5",
    "x*y",
    "x^2 + y^2",
    "1/2*x^2 + 3*y^2",
    "x^3 + y^3",
    "x^3 - 3*x*y^2",
    "x^4 + y^4",
    "x^4 + x^2*y^2 + y^4",
    "x^5 + y^5",
    "x^2 + y^2 + w^2",
    "x^3 + y^3 + w^3",
    "x^2*y + y^3 + w^3",
    "x^3 + y^3 + w^3 + x*y*w",
    "x^4 + y^4 + w^4",
    "x^5 + y^5 + w^5",
];

/// Homogeneous polynomials whose singular locus is positive dimensional.
pub const NON_ISOLATED: &[&str] = &[
    "x^2*y",
    "x*y*(x + y)*x",
    "x^2 + 0*y",
    "x^2 + y^2 + 0*w^2 + w*x - w*x",
];

pub fn corpus() -> Vec<ParsedFunction> {
    CORPUS.iter().map(|s| parse_function(s).expect(s)).collect()
}

pub fn f(src: &str) -> InputFunction {
    parse_function(src).expect(src).function
}

pub fn var(coord: u32, cdeg: i64) -> LoopPoly {
    LoopPoly::var(LoopVar::new(coord, cdeg))
}

pub fn int(n: i64) -> LoopPoly {
    LoopPoly::constant(loopsing::exactalg::int(n))
}

/// Coefficient table keyed by sorted `(coord, cdeg, exp)` triples.
pub type Table = HashMap<Vec<(u32, i64, u32)>, Rational>;

pub fn table(p: &LoopPoly) -> Table {
    p.terms()
        .map(|(m, c)| {
            (
                m.factors()
                    .iter()
                    .map(|&(v, e)| (v.coord, v.cdeg, e))
                    .collect(),
                c.clone(),
            )
        })
        .collect()
}

fn push(t: &mut Table, key: Vec<(u32, i64, u32)>, c: Rational) {
    let mut key = key;
    key.sort_by_key(|&(coord, cdeg, _)| (cdeg, coord));
    let mut merged: Vec<(u32, i64, u32)> = Vec::new();
    for (coord, cdeg, e) in key {
        match merged.last_mut() {
            Some(last) if last.0 == coord && last.1 == cdeg => last.2 += e,
            _ => merged.push((coord, cdeg, e)),
        }
    }
    let entry = t.entry(merged).or_insert_with(Rational::zero);
    *entry += c;
}

fn prune(mut t: Table) -> Table {
    t.retain(|_, c| !c.is_zero());
    t
}

/// Schoolbook product on coefficient tables.
pub fn naive_mul(p: &LoopPoly, q: &LoopPoly) -> Table {
    let mut out = Table::new();
    for (ma, ca) in p.terms() {
        for (mb, cb) in q.terms() {
            let key = ma
                .factors()
                .iter()
                .chain(mb.factors())
                .map(|&(v, e)| (v.coord, v.cdeg, e))
                .collect();
            push(&mut out, key, ca * cb);
        }
    }
    prune(out)
}

/// `t^k` coefficient of `p(z(t))` by enumerating every assignment of window
/// indices to the variable slots of each monomial.
pub fn brute_force_jet(p: &LoopPoly, w: Window, k: i64) -> Table {
    let degrees: Vec<i64> = w.degrees().collect();
    let mut out = Table::new();
    for (m, c) in p.terms() {
        let slots: Vec<u32> = m
            .factors()
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v.coord, e as usize))
            .collect();
        for idx in tuples(degrees.len(), slots.len()) {
            let sum: i64 = idx.iter().map(|&i| degrees[i]).sum();
            if sum == k {
                let key = slots
                    .iter()
                    .zip(&idx)
                    .map(|(&coord, &i)| (coord, degrees[i], 1))
                    .collect();
                push(&mut out, key, c.clone());
            }
        }
    }
    prune(out)
}

/// All `len`-tuples over `0..base`.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}
