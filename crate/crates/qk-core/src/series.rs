//! Truncated Laurent series in s = t - 1 with exact rational coefficients.
//!
//! This is the scalar type of the localization engine: every equivariant
//! weight specializes to a power t^n along the chosen one-parameter
//! subgroup, and t^n = (1+s)^n is expanded around t = 1. Fixed-point
//! contributions are Laurent series in s with poles of bounded order; the
//! sum over fixed points must have no principal part, and its constant
//! coefficient is the (integer) Euler characteristic.
//!
//! Precision is tracked absolutely: a series knows its coefficients for all
//! exponents in [val, prec). Arithmetic propagates precision pessimistically
//! so a result never claims coefficients it cannot know.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Truncated Laurent series: sum of coeffs[i] * s^(val + i), exact on the
/// window [val, prec).
///
/// Invariants: coeffs.len() == (prec - val); if nonempty, coeffs[0] != 0.
/// A series that is zero on its whole window stores val == prec and no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LSeries {
    val: i64,
    prec: i64,
    coeffs: Vec<BigRational>,
}

impl LSeries {
    pub fn new(val: i64, prec: i64, coeffs: Vec<BigRational>) -> Self {
        assert!(prec - val == coeffs.len() as i64, "window/coefficient mismatch");
        let mut s = LSeries { val, prec, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(n) => {
                self.coeffs.drain(..n);
                self.val += n as i64;
            }
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
        }
    }

    /// The zero series, known to the given absolute precision.
    pub fn zero(prec: i64) -> Self {
        LSeries { val: prec, prec, coeffs: vec![] }
    }

    pub fn constant(c: BigRational, prec: i64) -> Self {
        assert!(prec > 0);
        let mut coeffs = vec![BigRational::zero(); prec as usize];
        coeffs[0] = c;
        LSeries::new(0, prec, coeffs)
    }

    pub fn one(prec: i64) -> Self {
        LSeries::constant(BigRational::one(), prec)
    }

    /// (1+s)^n expanded to the given absolute precision, any integer n.
    pub fn binom_pow(n: i64, prec: i64) -> Self {
        assert!(prec > 0);
        let len = prec as usize;
        let mut coeffs = Vec::with_capacity(len);
        let mut c = BigRational::one();
        for k in 0..len {
            coeffs.push(c.clone());
            let num = BigRational::from(BigInt::from(n - k as i64));
            let den = BigRational::from(BigInt::from(k as i64 + 1));
            c = c * num / den;
        }
        LSeries::new(0, prec, coeffs)
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of s^n; None if n is beyond the known window.
    pub fn coeff(&self, n: i64) -> Option<BigRational> {
        if n >= self.prec {
            return None;
        }
        if n < self.val {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[(n - self.val) as usize].clone())
    }

    pub fn neg(&self) -> LSeries {
        LSeries {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &LSeries) -> LSeries {
        let prec = self.prec.min(other.prec);
        let val = self.val.min(other.val).min(prec);
        let mut coeffs = vec![BigRational::zero(); (prec - val) as usize];
        for (src, base) in [(self, self.val), (other, other.val)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = base + i as i64;
                if e < prec {
                    coeffs[(e - val) as usize] += c;
                }
            }
        }
        LSeries::new(val, prec, coeffs)
    }

    pub fn sub(&self, other: &LSeries) -> LSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> LSeries {
        if c.is_zero() {
            return LSeries::zero(self.prec);
        }
        LSeries {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &LSeries) -> LSeries {
        let prec = (self.prec + other.val).min(other.prec + self.val);
        if self.is_zero() || other.is_zero() {
            return LSeries::zero(prec);
        }
        let val = self.val + other.val;
        let mut coeffs = vec![BigRational::zero(); (prec - val) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = (i + j) as i64;
                if val + e >= prec {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        LSeries::new(val, prec, coeffs)
    }

    /// Product computed only up to absolute precision `hi` (a window trick:
    /// when only low-order coefficients of a product are needed, the
    /// convolution is cut off early).
    pub fn mul_truncated(&self, other: &LSeries, hi: i64) -> LSeries {
        let prec = (self.prec + other.val).min(other.prec + self.val).min(hi);
        let val = self.val + other.val;
        if self.is_zero() || other.is_zero() || prec <= val {
            // below val the product vanishes, so "zero through prec" is exact
            return LSeries::zero(prec);
        }
        let mut coeffs = vec![BigRational::zero(); (prec - val) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || val + i as i64 >= prec {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if val + (i + j) as i64 >= prec {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        LSeries::new(val, prec, coeffs)
    }

    /// Multiplicative inverse. Panics on a series that is zero through its
    /// whole window (its leading term is unknown).
    pub fn inv(&self) -> LSeries {
        assert!(!self.is_zero(), "cannot invert a series with no known leading term");
        let u = &self.coeffs; // unit part, u[0] != 0
        let len = u.len();
        let mut b = Vec::with_capacity(len);
        let u0inv = u[0].recip();
        b.push(u0inv.clone());
        for k in 1..len {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !u[j].is_zero() {
                    acc += &u[j] * &b[k - j];
                }
            }
            b.push(-acc * &u0inv);
        }
        LSeries::new(-self.val, self.prec - 2 * self.val, b)
    }
}
