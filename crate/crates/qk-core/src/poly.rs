//! Exact univariate rational functions over the rationals.
//!
//! `IntPoly` is a dense polynomial with big-integer coefficients;
//! `UniRational` is a quotient of two such polynomials, kept normalized
//! (coprime, content 1, positive leading denominator coefficient) after
//! every operation. These are desk-scale tools: degrees stay small in the
//! character-evaluation tests that use them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with BigInt coefficients.
///
/// Invariant: no trailing (highest-degree) zero coefficients; the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn zero() -> Self {
        IntPoly { c: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { c: vec![BigInt::one()] }
    }

    pub fn constant(n: BigInt) -> Self {
        IntPoly::new(vec![n])
    }

    /// t^n for n >= 0.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        IntPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] += x;
        }
        IntPoly::new(c)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in other.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        IntPoly::new(c)
    }

    /// GCD of all coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = num_integer::gcd(g, x.clone());
        }
        g
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for x in self.c.iter().rev() {
            acc = acc * t + BigRational::from(x.clone());
        }
        acc
    }
}

/// Polynomial GCD, returned primitive with positive leading coefficient.
fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    // Euclid over Q, then take the primitive part.
    let mut a: Vec<BigRational> = a.c.iter().map(|x| BigRational::from(x.clone())).collect();
    let mut b: Vec<BigRational> = b.c.iter().map(|x| BigRational::from(x.clone())).collect();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().map_or(false, |x| x.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a := a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let q = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, x) in b.iter().enumerate() {
                let v = &q * x;
                a[i + shift] -= v;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return IntPoly::zero();
    }
    // clear denominators and normalize
    let mut lcm = BigInt::one();
    for x in &a {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints = IntPoly::new(a.iter().map(|x| x.numer() * &lcm / x.denom()).collect());
    let content = ints.content();
    let sign = if ints.c.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let d = content * sign;
    IntPoly::new(ints.c.iter().map(|x| x / &d).collect())
}

/// Exact rational function num/den in one variable t.
///
/// Invariants (restored after every operation): den != 0;
/// gcd(num, den) = 1; gcd of all integer coefficients is 1; den has a
/// positive leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct UniRational {
    num: IntPoly,
    den: IntPoly,
}

impl UniRational {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut u = UniRational { num, den };
        u.normalize();
        u
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = IntPoly::one();
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.degree() != Some(0) || !g.c[0].is_one() {
            self.num = exact_div(&self.num, &g);
            self.den = exact_div(&self.den, &g);
        }
        let mut scale = num_integer::gcd(self.num.content(), self.den.content());
        if self.den.c.last().unwrap().is_negative() {
            scale = -scale;
        }
        if !scale.is_one() {
            self.num = IntPoly::new(self.num.c.iter().map(|x| x / &scale).collect());
            self.den = IntPoly::new(self.den.c.iter().map(|x| x / &scale).collect());
        }
    }

    pub fn zero() -> Self {
        UniRational { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        UniRational { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        UniRational { num: IntPoly::constant(BigInt::from(n)), den: IntPoly::one() }
    }

    pub fn from_rational(x: &BigRational) -> Self {
        UniRational::new(IntPoly::constant(x.numer().clone()), IntPoly::constant(x.denom().clone()))
    }

    /// t^n for any integer n (negative gives 1/t^{-n}).
    pub fn power_t(n: i64) -> Self {
        if n >= 0 {
            UniRational { num: IntPoly::monomial(n as usize), den: IntPoly::one() }
        } else {
            UniRational { num: IntPoly::one(), den: IntPoly::monomial((-n) as usize) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn add(&self, other: &UniRational) -> UniRational {
        UniRational::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &UniRational) -> UniRational {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniRational {
        UniRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &UniRational) -> UniRational {
        UniRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_int(&self, c: BigInt) -> UniRational {
        UniRational::new(self.num.mul(&IntPoly::constant(c)), self.den.clone())
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self) -> Option<UniRational> {
        if self.is_zero() {
            None
        } else {
            Some(UniRational::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &UniRational) -> UniRational {
        self.mul(&other.inv().expect("division by zero rational function"))
    }

    /// Is this a polynomial (denominator of degree zero)?
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Evaluate at a rational point; None if the denominator vanishes there.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    /// Integer power (negative allowed for invertible values).
    pub fn pow(&self, n: i64) -> UniRational {
        let base = if n < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = UniRational::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl fmt::Debug for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num.c, self.den.c)
    }
}

/// Exact polynomial division (panics if not exact).
fn exact_div(a: &IntPoly, b: &IntPoly) -> IntPoly {
    assert!(!b.is_zero());
    let mut rem: Vec<BigRational> = a.c.iter().map(|x| BigRational::from(x.clone())).collect();
    let bq: Vec<BigRational> = b.c.iter().map(|x| BigRational::from(x.clone())).collect();
    let mut q = vec![BigRational::zero(); a.c.len().saturating_sub(b.c.len()) + 1];
    while rem.len() >= bq.len() && rem.iter().any(|x| !x.is_zero()) {
        while rem.last().map_or(false, |x| x.is_zero()) {
            rem.pop();
        }
        if rem.len() < bq.len() {
            break;
        }
        let c = rem.last().unwrap() / bq.last().unwrap();
        let shift = rem.len() - bq.len();
        q[shift] = c.clone();
        for (i, x) in bq.iter().enumerate() {
            let v = &c * x;
            rem[i + shift] -= v;
        }
        while rem.last().map_or(false, |x| x.is_zero()) {
            rem.pop();
        }
    }
    assert!(rem.iter().all(|x| x.is_zero()), "inexact polynomial division");
    IntPoly::new(
        q.iter()
            .map(|x| {
                assert!(x.denom().is_one(), "inexact polynomial division");
                x.numer().clone()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> UniRational {
        UniRational::power_t(1)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let x = t();
        // (t^2 - 1)/(t - 1) = t + 1
        let n = x.mul(&x).sub(&UniRational::one());
        let d = x.sub(&UniRational::one());
        let q = n.div(&d);
        assert_eq!(q, x.add(&UniRational::one()));
        assert!(q.is_polynomial());
    }

    #[test]
    fn eval_and_inverse() {
        let f = t().add(&UniRational::from_int(2)); // t + 2
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.eval(&half).unwrap(), BigRational::new(BigInt::from(5), BigInt::from(2)));
        let g = f.inv().unwrap();
        assert_eq!(f.mul(&g), UniRational::one());
        assert!(UniRational::zero().inv().is_none());
    }

    #[test]
    fn negative_powers() {
        let w = UniRational::power_t(-3);
        assert_eq!(w.mul(&UniRational::power_t(3)), UniRational::one());
        assert_eq!(w.pow(-1), UniRational::power_t(3));
    }

    #[test]
    fn gcd_cancellation_keeps_exactness() {
        // (t^3 - t)/(t^2 + 2t + 1) = t(t-1)/(t+1)
        let num = UniRational::power_t(3).sub(&t());
        let den = t().mul(&t()).add(&t().mul(&UniRational::from_int(2))).add(&UniRational::one());
        let f = num.div(&den);
        let expect = t().mul(&t().sub(&UniRational::one())).div(&t().add(&UniRational::one()));
        assert_eq!(f, expect);
    }
}
