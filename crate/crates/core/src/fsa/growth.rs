use num_bigint::BigInt;

use super::dfa::Dfa;
use crate::series::{IntPolynomial, RationalFunction};

/// Strict growth series `sum_n |L cap X^n| z^n` of the language of `dfa`.
///
/// With `M` the letter-count matrix on useful states and `x_q` the series of
/// words leading from `q` into acceptance, `(I - zM) x = acc`. The start
/// component is extracted by Cramer's rule; both determinants are computed
/// with fraction-free Bareiss elimination over `Z[z]`.
pub fn strict_growth_series(dfa: &Dfa) -> RationalFunction {
    let live = dfa.live_states();
    let useful: Vec<usize> = (0..dfa.num_states()).filter(|&q| live[q]).collect();
    if !live[dfa.start()] {
        return RationalFunction::zero();
    }
    let m = useful.len();
    let mut index = vec![usize::MAX; dfa.num_states()];
    for (i, &q) in useful.iter().enumerate() {
        index[q] = i;
    }
    let mut counts = vec![vec![0i64; m]; m];
    for (i, &q) in useful.iter().enumerate() {
        for a in 0..dfa.alphabet().len() {
            let p = dfa.step(q, a);
            if live[p] {
                counts[i][index[p]] += 1;
            }
        }
    }
    let matrix: Vec<Vec<IntPolynomial>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let diag = i64::from(i == j);
                    IntPolynomial::from_i64s(&[diag, -counts[i][j]])
                })
                .collect()
        })
        .collect();
    let s = index[dfa.start()];
    let mut replaced = matrix.clone();
    for (i, row) in replaced.iter_mut().enumerate() {
        row[s] = IntPolynomial::from_i64s(&[i64::from(dfa.is_accepting(useful[i]))]);
    }
    let den = bareiss_det(matrix);
    let num = bareiss_det(replaced);
    RationalFunction::new(num, den).expect("det(I - zM) is 1 at z = 0")
}

fn bareiss_det(mut a: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = a.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut sign = BigInt::from(1);
    let mut prev = IntPolynomial::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return IntPolynomial::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = IntPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fsa::Alphabet;

    #[test]
    fn empty_word_only() {
        let al = Arc::new(Alphabet::plain(&["a"]));
        let d = Dfa::from_words(al, &[vec![]]).unwrap();
        assert_eq!(strict_growth_series(&d), RationalFunction::one());
    }

    #[test]
    fn powers_of_a_or_inverse() {
        let al = Arc::new(Alphabet::plain(&["a", "A"]));
        // a* ∪ A*
        let d = Dfa::from_fn(al, 4, 0, |q| q < 3, |q, x| match (q, x) {
            (0, 0) | (1, 0) => 1,
            (0, 1) | (2, 1) => 2,
            _ => 3,
        });
        assert_eq!(strict_growth_series(&d), RationalFunction::from_i64s(&[1, 1], &[1, -1]).unwrap());
    }

    #[test]
    fn empty_language_is_zero() {
        let al = Arc::new(Alphabet::plain(&["a"]));
        assert!(strict_growth_series(&Dfa::empty_language(al)).is_zero());
    }

    #[test]
    fn universal_language() {
        let al = Arc::new(Alphabet::plain(&["a", "b", "c"]));
        assert_eq!(
            strict_growth_series(&Dfa::universal(al)),
            RationalFunction::from_i64s(&[1], &[1, -3]).unwrap()
        );
    }
}
