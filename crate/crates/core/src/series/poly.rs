use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `z` with arbitrary-precision integer coefficients.
///
/// Coefficients are stored by ascending degree with trailing zeros stripped,
/// so the zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `z`.
    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Lowest nonzero coefficient (zero for the zero polynomial).
    pub fn lowest(&self) -> BigInt {
        self.coeffs.iter().find(|c| !c.is_zero()).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `c`. Panics if not exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Multiply by `z^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigInt::from(d))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let lb = b.leading();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return r };
        if da < db {
            return r;
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lb, steps));
        }
        r
    }

    /// Greatest common divisor over `Z[z]`, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&content)
    }

    /// Exact polynomial division; `None` if `divisor` does not divide `self` in `Z[z]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree().expect("division by zero polynomial");
        let ld = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(ds) = self.degree() else {
            return Some(Self::zero());
        };
        if ds < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&ld);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Truncate to degrees `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Ascending-degree ASCII rendering, e.g. `1+3z+2z^2-6z^3`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = c.abs();
            if d == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match d {
                0 => {}
                1 => out.push('z'),
                _ => {
                    out.push_str("z^");
                    out.push_str(&d.to_string());
                }
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Squarefree decomposition: factors `f_i` with `self = unit * prod f_i^i`.
    ///
    /// Factors are primitive with positive constant term; a factor list is
    /// returned only when the product reproduces `self` exactly.
    pub fn squarefree_factors(&self) -> Option<Vec<(Self, usize)>> {
        if self.degree().unwrap_or(0) == 0 {
            return Some(Vec::new());
        }
        let normalize = |p: Self| {
            let p = p.primitive_part();
            if p.constant_term().is_negative() {
                -p
            } else {
                p
            }
        };
        let f = normalize(self.clone());
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_exact(&c)?;
        let mut out = Vec::new();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let zf = w.div_exact(&y)?;
            if zf.degree().unwrap_or(0) > 0 {
                out.push((normalize(zf), i));
            }
            i += 1;
            c = c.div_exact(&y)?;
            w = y;
        }
        let product = out
            .iter()
            .fold(Self::one(), |acc, (p, e)| (0..*e).fold(acc, |a, _| &a * p));
        (product == *self).then_some(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn render_matches_ascii_style() {
        assert_eq!(p(&[1, 3, 2, -6]).render(), "1+3z+2z^2-6z^3");
        assert_eq!(p(&[0, -1]).render(), "-z");
        assert_eq!(p(&[]).render(), "0");
        assert_eq!(p(&[-2, 0, 1]).render(), "-2+z^2");
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1-z)(1+2z) and (1-z)(3+z)
        let a = &p(&[1, -1]) * &p(&[1, 2]);
        let b = &p(&[1, -1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6])), p(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, -1]) * &p(&[2, 0, 5]);
        assert_eq!(a.div_exact(&p(&[1, -1])), Some(p(&[2, 0, 5])));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[1, -1])), None);
    }

    #[test]
    fn squarefree_decomposition() {
        // (1-z^2)^2
        let f = p(&[1, 0, -2, 0, 1]);
        assert_eq!(f.squarefree_factors(), Some(vec![(p(&[1, 0, -1]), 2)]));
        // (1+z)(1-z)^2
        let g = &p(&[1, 1]) * &(&p(&[1, -1]) * &p(&[1, -1]));
        assert_eq!(g.squarefree_factors(), Some(vec![(p(&[1, 1]), 1), (p(&[1, -1]), 2)]));
    }

    #[test]
    fn pseudo_remainder_degree_drops() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[1, 0, 2]);
        assert!(a.pseudo_rem(&b).degree().unwrap_or(0) < 2);
    }
}
