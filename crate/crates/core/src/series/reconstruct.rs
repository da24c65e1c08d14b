use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expansion::SeriesExpansion;
use super::poly::IntPolynomial;
use super::rational::RationalFunction;

/// Find `P/Q` with `deg P, deg Q <= max_degree` whose expansion matches every
/// supplied coefficient.
///
/// Tries denominator degrees `0..=max_degree` in turn, solving the Hankel
/// system for the recurrence `sum_k q_k s_(n-k) = 0` (with `q_0 = 1`) over the
/// rationals. A candidate is accepted only after re-expanding it against the
/// whole input. Needs `order >= 2 * max_degree + 2`; returns `None` otherwise.
pub fn reconstruct_rational(s: &SeriesExpansion, max_degree: usize) -> Option<RationalFunction> {
    let d = max_degree;
    if s.order() < 2 * d + 2 {
        return None;
    }
    let c: Vec<BigRational> = s.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect();
    for e in 0..=d {
        let Some(q) = solve_recurrence(&c, d, e) else { continue };
        let Some(cand) = to_rational(s, &q, d) else { continue };
        if cand.expand(s.order()).ok().as_ref() == Some(s) {
            return Some(cand);
        }
    }
    None
}

/// Coefficients `q_1..q_e` with `s_n + sum_k q_k s_(n-k) = 0` for every
/// `n` in `d+1..=order`. Free unknowns are set to zero.
fn solve_recurrence(c: &[BigRational], d: usize, e: usize) -> Option<Vec<BigRational>> {
    let order = c.len() - 1;
    let mut m: Vec<Vec<BigRational>> = (d + 1..=order)
        .map(|n| {
            let mut row: Vec<BigRational> = (1..=e)
                .map(|k| if n >= k { c[n - k].clone() } else { BigRational::zero() })
                .collect();
            row.push(-c[n].clone());
            row
        })
        .collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..e {
        let Some(piv) = (r..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = BigRational::one() / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in col..=e {
                    let v = &m[r][k] * &f;
                    m[i][k] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[e].is_zero()) {
        return None;
    }
    let mut q = vec![BigRational::zero(); e + 1];
    q[0] = BigRational::one();
    for (i, &col) in pivots.iter().enumerate() {
        q[col + 1] = m[i][e].clone();
    }
    Some(q)
}

fn to_rational(s: &SeriesExpansion, q: &[BigRational], d: usize) -> Option<RationalFunction> {
    // P = (Q * S) mod z^(d+1), all over a common denominator.
    let lcm = q.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let qi: Vec<BigInt> = q.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let p: Vec<BigInt> = (0..=d)
        .map(|n| (0..qi.len().min(n + 1)).map(|k| &qi[k] * s.coeff(n - k)).sum())
        .collect();
    RationalFunction::new(IntPolynomial::new(p), IntPolynomial::new(qi)).ok()
}
