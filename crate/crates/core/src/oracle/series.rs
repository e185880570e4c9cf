//! Power series in `x` truncated after a fixed order.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::exactmath::{factorial, rat, BigRat};

/// Coefficients `c_0 … c_K`; everything of order `> K` is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRat>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRat::one();
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` terms.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<BigRat>) -> Self {
        coeffs.resize(order + 1, BigRat::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `Σ_{N ≥ 0} A^N / N!` for a series `A` with zero constant term; the sum
    /// is finite after truncation since `A^N = O(x^N)`.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp needs a zero constant term to stay formal"
        );
        let order = self.order();
        let mut acc = Self::one(order);
        let mut power = Self::one(order);
        for n in 1..=order as u32 {
            power = &power * self;
            acc = &acc + &power.scale(&BigRat::new(1.into(), factorial(n)));
        }
        acc
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order());
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order());
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// `Σ_{r=1}^{K} q^r x^r / r`, the truncation of `−ln(1 − q x)`.
pub fn neg_log_one_minus(q: i64, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRat::zero()];
    let mut power = BigRat::one();
    for r in 1..=order as i64 {
        power *= rat(q);
        coeffs.push(&power / rat(r));
    }
    TruncatedSeries::from_coeffs(order, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_log_is_geometric() {
        // exp(−ln(1 − x)) = 1/(1 − x)
        let s = neg_log_one_minus(1, 8).exp();
        assert!(s.coeffs().iter().all(|c| c == &BigRat::one()));
    }

    #[test]
    fn exp_is_a_homomorphism() {
        let a = neg_log_one_minus(2, 7);
        let b = neg_log_one_minus(-3, 7).scale(&rat(5));
        assert_eq!((&a + &b).exp(), &a.exp() * &b.exp());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = TruncatedSeries::from_coeffs(6, vec![rat(1), rat(2), rat(-1)]);
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert_eq!(a.pow(0), TruncatedSeries::one(6));
    }
}
