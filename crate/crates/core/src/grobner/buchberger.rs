use std::collections::BTreeSet;

use crate::exactalg::{LoopPoly, Monomial, Rational};

/// Fully reduces `p` against `basis`, whose elements must be monic.
pub fn normal_form(p: &LoopPoly, basis: &[LoopPoly]) -> LoopPoly {
    let mut work = p.clone();
    let mut remainder: Vec<(Rational, Monomial)> = Vec::new();
    while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (g, q))
        });
        match divisor {
            Some((g, q)) => work = &work - &g.mul_term(&c, &q),
            None => {
                work = &work - &LoopPoly::term(c.clone(), m.clone());
                remainder.push((c, m));
            }
        }
    }
    LoopPoly::from_terms(remainder)
}

/// `S(f, g)` for monic `f`, `g`.
pub fn s_polynomial(f: &LoopPoly, g: &LoopPoly) -> LoopPoly {
    let (Some(lf), Some(lg)) = (f.leading_monomial(), g.leading_monomial()) else {
        return LoopPoly::zero();
    };
    let l = lf.lcm(lg);
    let one = Rational::from_integer(1.into());
    let a = f.mul_term(&one, &lf.quotient_of(&l).expect("lcm is a multiple"));
    let b = g.mul_term(&one, &lg.quotient_of(&l).expect("lcm is a multiple"));
    &a - &b
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm with the normal selection strategy and both
/// Buchberger criteria. Returns a reduced basis sorted by leading monomial.
pub(crate) fn reduced_basis(generators: &[LoopPoly]) -> Vec<LoopPoly> {
    let mut basis: Vec<LoopPoly> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();

    fn add(p: LoopPoly, basis: &mut Vec<LoopPoly>, pending: &mut BTreeSet<Pair>) {
        let p = p.monic();
        let new = basis.len();
        let lm = p.leading_monomial().cloned().expect("nonzero");
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().expect("nonzero").lcm(&lm);
            pending.insert(Pair {
                degree: lcm.degree(),
                lcm,
                i,
                j: new,
            });
        }
        basis.push(p);
    }

    for g in generators {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pending);
        }
    }

    while let Some(pair) = pending.pop_first() {
        let li = basis[pair.i].leading_monomial().expect("nonzero");
        let lj = basis[pair.j].leading_monomial().expect("nonzero");
        if li.is_coprime(lj) {
            continue;
        }
        if chain_criterion(&pair, &basis, &pending) {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            add(r, &mut basis, &mut pending);
        }
    }

    interreduce(basis)
}

/// Some third element's leading monomial divides `lcm(i, j)` and both of its
/// pairs with `i` and `j` have already been treated.
fn chain_criterion(pair: &Pair, basis: &[LoopPoly], pending: &BTreeSet<Pair>) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        pending.iter().any(|p| p.i == i && p.j == j)
    };
    (0..basis.len()).any(|k| {
        k != pair.i
            && k != pair.j
            && basis[k]
                .leading_monomial()
                .expect("nonzero")
                .divides(&pair.lcm)
            && !is_pending(pair.i, k)
            && !is_pending(pair.j, k)
    })
}

fn interreduce(basis: Vec<LoopPoly>) -> Vec<LoopPoly> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<LoopPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading_monomial().expect("nonzero");
            k != i && lh.divides(lm) && (lh != lm || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<LoopPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<LoopPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn all_s_polynomials_vanish(basis: &[LoopPoly]) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len())
            .all(|j| normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero())
    })
}
