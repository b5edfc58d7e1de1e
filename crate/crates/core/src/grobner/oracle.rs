//! Milnor number by plain linear algebra, sharing no code with the Gröbner
//! path: the quotient of the polynomial ring by the Jacobian ideal is
//! measured degree by degree as monomial count minus the rank of the
//! multiplication matrix.

use std::collections::HashMap;

use num_traits::Zero;

use super::{expected_milnor_number, GrobnerError, NonIsolatedWitness};
use crate::exactalg::Rational;
use crate::loopfun::InputFunction;

type Exps = Vec<u32>;

fn monomials_of_degree(d: usize, k: u32) -> Vec<Exps> {
    if d == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials_of_degree(d - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        let pivot_row: Vec<Rational> = rows[rank].iter().map(|a| a * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (a, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *a -= &factor * p;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Dimension of the Jacobian quotient counted in degrees up to
/// `d(δ-2) + 1`, one beyond the top degree of a finite Milnor algebra of a
/// homogeneous polynomial. A nonzero quotient in that last degree means the
/// algebra is infinite.
pub fn milnor_number_oracle(f: &InputFunction) -> Result<u64, GrobnerError> {
    let d = f.d() as usize;
    let delta = f.delta();
    // ∂_j F as coefficient maps on exponent vectors.
    let partials: Vec<Vec<(Exps, Rational)>> = (1..=f.d())
        .map(|j| {
            f.partial(j)
                .terms()
                .map(|(m, c)| {
                    let mut e = vec![0u32; d];
                    for &(v, k) in m.factors() {
                        e[v.coord as usize - 1] = k;
                    }
                    (e, c.clone())
                })
                .collect()
        })
        .collect();

    let top = f.d() * (delta - 2) + 1;
    let mut total = 0u64;
    for k in 0..=top {
        let cols = monomials_of_degree(d, k);
        let index: HashMap<&Exps, usize> = cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        if k + 1 >= delta {
            for shift in monomials_of_degree(d, k + 1 - delta) {
                for g in &partials {
                    if g.is_empty() {
                        continue;
                    }
                    let mut row = vec![Rational::zero(); cols.len()];
                    for (e, c) in g {
                        let prod: Exps = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        row[index[&prod]] += c;
                    }
                    rows.push(row);
                }
            }
        }
        let quotient = (cols.len() - rank(rows)) as u64;
        if k == top && quotient > 0 {
            return Err(GrobnerError::NotIsolated(
                NonIsolatedWitness::QuotientSurvives(k),
            ));
        }
        total += quotient;
    }
    let expected = expected_milnor_number(f);
    if total != expected {
        return Err(GrobnerError::CountMismatch {
            computed: total,
            expected,
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, LoopPoly, LoopVar};

    fn v(i: u32) -> LoopPoly {
        LoopPoly::var(LoopVar::ambient(i))
    }

    #[test]
    fn enumerates_monomials() {
        assert_eq!(
            monomials_of_degree(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let r = |a: i64, b: i64| vec![int(a), int(b)];
        assert_eq!(rank(vec![r(1, 2), r(2, 4)]), 1);
        assert_eq!(rank(vec![r(1, 2), r(0, 3)]), 2);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn oracle_examples() {
        let f = InputFunction::from_poly(v(1).pow(2)).unwrap();
        assert_eq!(milnor_number_oracle(&f), Ok(1));
        let f = InputFunction::from_poly(&v(1).pow(3) + &v(2).pow(3)).unwrap();
        assert_eq!(milnor_number_oracle(&f), Ok(4));
        let f = InputFunction::from_poly(&(&v(1).pow(2) + &v(2).pow(2)) + &v(3).pow(2)).unwrap();
        assert_eq!(milnor_number_oracle(&f), Ok(1));
        let f = InputFunction::from_poly(&v(1).pow(2) * &v(2)).unwrap();
        assert!(matches!(
            milnor_number_oracle(&f),
            Err(GrobnerError::NotIsolated(
                NonIsolatedWitness::QuotientSurvives(_)
            ))
        ));
    }
}
