use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expansion::SeriesExpansion;
use super::poly::IntPolynomial;
use super::SeriesError;

/// Quotient of integer polynomials in lowest terms, expandable at `z = 0`.
///
/// Normal form: numerator and denominator are coprime in `Z[z]`, the joint
/// content is removed, and the denominator's lowest nonzero coefficient is
/// positive. Since the denominator never vanishes at zero, that coefficient
/// is its constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lowest().is_negative() {
            num = -num;
            den = -den;
        }
        if den.constant_term().is_zero() {
            return Err(SeriesError::NotExpandable(format!("({})/({})", num, den)));
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self { num: p, den: IntPolynomial::one() }
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self, SeriesError> {
        Self::new(IntPolynomial::from_i64s(num), IntPolynomial::from_i64s(den))
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_poly(IntPolynomial::from_i64s(&[c]))
    }

    pub fn z() -> Self {
        Self::from_poly(IntPolynomial::z())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("sum of expandable functions")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("difference of expandable functions")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
            .expect("product of expandable functions")
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        self.mul(&Self::constant(c))
    }

    /// Value at `z = 0`, as a reduced fraction `(num, den)`.
    pub fn value_at_zero(&self) -> (BigInt, BigInt) {
        let n = self.num.constant_term();
        let d = self.den.constant_term();
        let g = n.gcd(&d);
        if g.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        (n / &g, d / &g)
    }

    /// First `order + 1` Maclaurin coefficients.
    ///
    /// Fails when some coefficient is not an integer, which can only happen
    /// if the denominator's constant term is not a unit.
    pub fn expand(&self, order: usize) -> Result<SeriesExpansion, SeriesError> {
        let d0 = self.den.constant_term();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for (k, dk) in self.den.coeffs().iter().enumerate().skip(1) {
                if k > n {
                    break;
                }
                acc -= dk * &out[n - k];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(SeriesError::NonIntegral { index: n });
            }
            out.push(q);
        }
        Ok(SeriesExpansion::new(out))
    }

    /// Cumulative series from a strict one: `f / (1 - z)`.
    pub fn cumulative_from_strict(&self) -> Self {
        self.div(&Self::from_i64s(&[1, -1], &[1]).expect("nonzero"))
            .expect("1 - z does not vanish at 0")
    }

    /// Strict series from a cumulative one: `(1 - z) b`.
    pub fn strict_from_cumulative(&self) -> Self {
        self.mul(&Self::from_poly(IntPolynomial::from_i64s(&[1, -1])))
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("square of expandable denominator")
    }

    /// `z r'(z)`.
    pub fn z_ddz(&self) -> Self {
        self.derivative().mul(&Self::z())
    }

    /// `z r'(z) / r(z)`; requires `r(0) != 0`.
    pub fn z_ddz_log(&self) -> Result<Self, SeriesError> {
        if self.num.constant_term().is_zero() {
            return Err(SeriesError::LogOfNonUnit);
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(&num * &IntPolynomial::z(), &self.num * &self.den)
    }

    /// Ascending-degree rendering, e.g. `(1+3z+2z^2-6z^3)/(1-2z^2)`.
    pub fn render(&self) -> String {
        let num = self.num.render();
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        let den = self.den.render();
        if self.den.term_count() > 1 {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }

    /// Rendering with the denominator written as powers of squarefree
    /// factors, e.g. `(1+z+z^2-z^3)/(1-z)^2`.
    pub fn render_factored(&self) -> String {
        let Some(factors) = self.den.squarefree_factors() else {
            return self.render();
        };
        if factors.is_empty() || (factors.len() == 1 && factors[0].1 == 1) {
            return self.render();
        }
        let product = factors
            .iter()
            .fold(IntPolynomial::one(), |acc, (p, e)| (0..*e).fold(acc, |a, _| &a * p));
        let unit = match self.den.div_exact(&product) {
            Some(u) if u.degree() == Some(0) => u.constant_term(),
            _ => return self.render(),
        };
        let mut den = String::new();
        if !unit.is_one() {
            den.push_str(&unit.to_string());
        }
        for (p, e) in &factors {
            if !den.is_empty() {
                den.push('*');
            }
            let body = if p.term_count() > 1 { format!("({})", p.render()) } else { p.render() };
            den.push_str(&body);
            if *e > 1 {
                den.push('^');
                den.push_str(&e.to_string());
            }
        }
        let num = self.num.render();
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        if factors.len() == 1 && unit.is_one() {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(n, d).unwrap()
    }

    #[test]
    fn normalizes_common_factors_and_sign() {
        let a = r(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(a, r(&[1, 1], &[1]));
        assert_eq!(r(&[2], &[-4, 2]), r(&[-1], &[2, -1]));
        assert_eq!(r(&[2], &[-4, 2]).denominator(), &IntPolynomial::from_i64s(&[2, -1]));
    }

    #[test]
    fn rejects_pole_at_zero() {
        assert!(matches!(
            RationalFunction::from_i64s(&[1], &[0, 1]),
            Err(SeriesError::NotExpandable(_))
        ));
        assert!(matches!(
            RationalFunction::from_i64s(&[1], &[]),
            Err(SeriesError::DivisionByZero)
        ));
    }

    #[test]
    fn field_operations() {
        let f = r(&[1, 1], &[1, -1]);
        assert_eq!(f.sub(&RationalFunction::one()), r(&[0, 2], &[1, -1]));
        assert_eq!(f.mul(&f), r(&[1, 2, 1], &[1, -2, 1]));
        assert_eq!(r(&[1], &[1, -2]).add(&r(&[1], &[1, 2])), r(&[2], &[1, 0, -4]));
        assert_eq!(f.div(&f).unwrap(), RationalFunction::one());
        assert!(f.div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn expansion() {
        let f = r(&[1, 1], &[1, -1]);
        assert_eq!(f.expand(4).unwrap().to_i64s(), vec![1, 2, 2, 2, 2]);
        assert_eq!(RationalFunction::one().expand(3).unwrap().to_i64s(), vec![1, 0, 0, 0]);
        let psl = r(&[1, 3, 2, -6], &[1, 0, -2]);
        assert_eq!(psl.expand(5).unwrap().to_i64s(), vec![1, 3, 4, 0, 8, 0]);
    }

    #[test]
    fn cumulative() {
        assert_eq!(RationalFunction::one().cumulative_from_strict(), r(&[1], &[1, -1]));
        assert_eq!(
            r(&[1, 1], &[1, -1]).cumulative_from_strict(),
            r(&[1, 1], &[1, -2, 1])
        );
        let g = r(&[1, 1, 1, -1], &[1, -2, 1]);
        assert_eq!(g.cumulative_from_strict(), r(&[1, 1, 1, -1], &[1, -3, 3, -1]));
        assert_eq!(g.cumulative_from_strict().strict_from_cumulative(), g);
    }

    #[test]
    fn derivatives() {
        assert!(RationalFunction::one().z_ddz().is_zero());
        assert_eq!(r(&[1], &[1, -1]).z_ddz(), r(&[0, 1], &[1, -2, 1]));
        assert_eq!(r(&[1, 1], &[1, -1]).z_ddz(), r(&[0, 2], &[1, -2, 1]));
        assert!(RationalFunction::one().z_ddz_log().unwrap().is_zero());
        assert_eq!(r(&[1, -1], &[1]).z_ddz_log().unwrap(), r(&[0, -1], &[1, -1]));
        assert!(matches!(RationalFunction::z().z_ddz_log(), Err(SeriesError::LogOfNonUnit)));
    }

    #[test]
    fn rendering() {
        assert_eq!(r(&[1, 3, 2, -6], &[1, 0, -2]).render(), "(1+3z+2z^2-6z^3)/(1-2z^2)");
        assert_eq!(r(&[1, 1, 1, -1], &[1, -2, 1]).render_factored(), "(1+z+z^2-z^3)/(1-z)^2");
        assert_eq!(
            r(&[1, 3, 4, 0, -9, 1, 4], &[1, 0, -2, 0, 1]).render_factored(),
            "(1+3z+4z^2-9z^4+z^5+4z^6)/(1-z^2)^2"
        );
        assert_eq!(RationalFunction::one().render(), "1");
        assert_eq!(r(&[1], &[1, -1]).render(), "1/(1-z)");
        assert_eq!(r(&[1, 1], &[1, -1]).render_factored(), "(1+z)/(1-z)");
    }
}
