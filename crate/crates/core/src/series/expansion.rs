use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::SeriesError;

/// Truncated power series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesExpansion {
    coeffs: Vec<BigInt>,
}

impl SeriesExpansion {
    /// Panics on an empty coefficient list; a series has order `len - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_u64s(c: &[u64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `1 + 0z + ... + 0z^N`.
    pub fn one(order: usize) -> Self {
        let mut c = vec![BigInt::zero(); order + 1];
        c[0] = BigInt::from(1);
        Self { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// Panics if a coefficient does not fit in `i64`.
    pub fn to_i64s(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().expect("coefficient fits i64")).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    pub fn cauchy(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let n = self.order();
        let out = (0..=n)
            .map(|i| (0..=i).map(|j| &self.coeffs[j] * &other.coeffs[i - j]).sum())
            .collect();
        Ok(Self::new(out))
    }

    /// `delta_i = sum_j binom(i, j) r_j s_(i-j)`: the strict series of all
    /// interleavings of a word from each factor.
    pub fn binomial_shuffle(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        let mut row = vec![BigInt::from(1)];
        for i in 0..=n {
            if i > 0 {
                let mut next = vec![BigInt::from(1); i + 1];
                for j in 1..i {
                    next[j] = &row[j - 1] + &row[j];
                }
                row = next;
            }
            let mut acc = BigInt::zero();
            for j in 0..=i {
                acc += &row[j] * &self.coeffs[j] * &other.coeffs[i - j];
            }
            out.push(acc);
        }
        Ok(Self::new(out))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::String(c.to_string()),
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{i},{c}\n"));
        }
        s
    }
}
