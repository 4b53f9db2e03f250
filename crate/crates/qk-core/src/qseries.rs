//! Truncated power series in the Novikov variable q.
//!
//! A `QSeries` stores exact rational coefficients c_0..c_D and is closed
//! under ring operations at order D (binary operations truncate to the
//! smaller order). Everything downstream of the localization engine —
//! pairing entries, structure constants, cap series — lives here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Power series in q truncated at order D = coeffs.len() - 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QSeries::new(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn zero(d: usize) -> Self {
        QSeries { coeffs: vec![BigRational::zero(); d + 1] }
    }

    pub fn one(d: usize) -> Self {
        let mut s = Self::zero(d);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn constant(c: BigRational, d: usize) -> Self {
        let mut s = Self::zero(d);
        s.coeffs[0] = c;
        s
    }

    /// The series 1 + q + q^2 + ... = 1/(1-q), truncated.
    pub fn one_over_one_minus_q(d: usize) -> Self {
        QSeries { coeffs: vec![BigRational::one(); d + 1] }
    }

    /// Truncation order D.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree as a polynomial in q, ignoring trailing zeros; None if zero.
    pub fn poly_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, d: usize) -> QSeries {
        assert!(d <= self.order());
        QSeries { coeffs: self.coeffs[..=d].to_vec() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let d = self.order().min(other.order());
        QSeries::new((0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by q^k (shifts coefficients up, keeps the order).
    pub fn shift(&self, k: usize) -> QSeries {
        let d = self.order();
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for i in k..=d {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        QSeries { coeffs }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let d = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for i in 0..=d.min(self.order()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(d - i).min(other.order()) {
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        QSeries::new(coeffs)
    }

    /// Multiplicative inverse; panics if the constant term vanishes.
    pub fn invert(&self) -> QSeries {
        assert!(!self.coeffs[0].is_zero(), "constant term not invertible");
        let d = self.order();
        let c0inv = self.coeffs[0].recip();
        let mut out = vec![BigRational::zero(); d + 1];
        out[0] = c0inv.clone();
        for k in 1..=d {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &c0inv;
        }
        QSeries::new(out)
    }

    /// Integer coefficients of the polynomial part, asserted exact.
    pub fn to_int_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "non-integer q-coefficient {:?}", c);
                c.numer().clone()
            })
            .collect()
    }
}
