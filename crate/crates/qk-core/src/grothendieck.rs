//! Stable Grothendieck classes O_lambda and the transition matrix A.
//!
//! The Schubert structure sheaf class O_lambda is the Grothendieck
//! polynomial G_lambda evaluated at y_j = 1 - x_j^{-1}. It is computed from
//! the bialternant formula: the numerator determinant is expanded exactly
//! into Laurent monomials (Leibniz over permutations, r <= 6 enforced),
//! divided by the Vandermonde factors, and decomposed into irreducible
//! characters by leading-dominant-monomial subtraction.
//!
//! The combinatorial skew-tableau expansion of G_lambda into Schur
//! polynomials is deliberately not implemented as a rule; the signed
//! first-row-preserving shape of that expansion is instead observed from the
//! computed classes in the tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::partition::{complement, enumerate_box, BoxContext, Partition};
use crate::repring::{schur_decompose, RepRingElement, Weight};

/// Sparse Laurent polynomial in r variables: exponent vector -> coefficient.
type MPoly = BTreeMap<Vec<i64>, BigInt>;

fn mpoly_add_term(p: &mut MPoly, exp: Vec<i64>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(exp).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        p.retain(|_, v| !v.is_zero());
    }
}

/// Exact division of Laurent polynomials by lex-leading-term reduction.
///
/// Panics if the division is not exact (budget exceeded or no terms left to
/// cancel the leading term).
fn mpoly_exact_div(mut num: MPoly, den: &MPoly) -> MPoly {
    let (dexp, dcoeff) = den.iter().next_back().expect("division by zero polynomial");
    let mut q = MPoly::new();
    let budget = 1_000_000usize;
    for _ in 0..budget {
        num.retain(|_, v| !v.is_zero());
        let (nexp, ncoeff) = match num.iter().next_back() {
            None => return q,
            Some((e, c)) => (e.clone(), c.clone()),
        };
        let qexp: Vec<i64> = nexp.iter().zip(dexp).map(|(a, b)| a - b).collect();
        let (qcoeff, rem) = num_integer::div_rem(ncoeff, dcoeff.clone());
        assert!(rem.is_zero(), "inexact polynomial division (coefficient)");
        for (e, c) in den {
            let shifted: Vec<i64> = e.iter().zip(&qexp).map(|(a, b)| a + b).collect();
            mpoly_add_term(&mut num, shifted, -(c * &qcoeff));
        }
        mpoly_add_term(&mut q, qexp, qcoeff);
    }
    panic!("polynomial division did not terminate: not exact");
}

/// Signed binomial coefficients of (1 - u)^n.
fn signed_binomials(n: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for t in 0..=n as i64 {
        out.push(if t % 2 == 0 { c.clone() } else { -c.clone() });
        c = c * (n as i64 - t) / (t + 1);
    }
    out
}

/// Row polynomials of the bialternant numerator, as univariate Laurent
/// polynomials (exponent, coefficient).
///
/// With `substituted`, the variable is x and row i carries
/// (1 - x^{-1})^{lambda_i + r - i} x^{-(i-1)}; otherwise the variable is y
/// and row i carries y^{lambda_i + r - i} (1 - y)^{i-1}.
fn numerator_rows(lambda: &Partition, r: usize, substituted: bool) -> Vec<Vec<(i64, BigInt)>> {
    (0..r)
        .map(|i| {
            let p = lambda.part(i) as i64 + (r - 1 - i) as i64;
            if substituted {
                signed_binomials(p as u32)
                    .into_iter()
                    .enumerate()
                    .map(|(t, c)| (-(t as i64) - i as i64, c))
                    .collect()
            } else {
                signed_binomials(i as u32)
                    .into_iter()
                    .enumerate()
                    .map(|(t, c)| (p + t as i64, c))
                    .collect()
            }
        })
        .collect()
}

/// The symmetric Laurent polynomial G_lambda, fully expanded.
///
/// `substituted = true` gives G_lambda(1-x_1^{-1},...,1-x_r^{-1}) in x;
/// `false` gives G_lambda(y_1,...,y_r) itself.
fn g_polynomial(lambda: &Partition, r: usize, substituted: bool) -> MPoly {
    assert!(r <= 6, "bialternant expansion enforced at r <= 6");
    assert!(lambda.len() <= r, "partition {} has more than {} parts", lambda, r);
    let rows = numerator_rows(lambda, r, substituted);
    // Leibniz expansion of det(f_i(v_j))
    let mut num = MPoly::new();
    for perm in (0..r).permutations(r) {
        let mut sign = BigInt::one();
        for i in 0..r {
            for j in i + 1..r {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        let mut acc: MPoly = BTreeMap::from([(vec![0i64; r], sign)]);
        for (i, &j) in perm.iter().enumerate() {
            let mut next = MPoly::new();
            for (exp, c) in &acc {
                for (e, b) in &rows[i] {
                    let mut ne = exp.clone();
                    ne[j] += e;
                    mpoly_add_term(&mut next, ne, c * b);
                }
            }
            acc = next;
        }
        for (exp, c) in acc {
            mpoly_add_term(&mut num, exp, c);
        }
    }
    // divide by the Vandermonde det(y_j^{r-i}) = prod_{i<j} (y_i - y_j);
    // substituted, the factor y_i - y_j becomes x_j^{-1} - x_i^{-1}
    for i in 0..r {
        for j in i + 1..r {
            let mut den = MPoly::new();
            let (mut ei, mut ej) = (vec![0i64; r], vec![0i64; r]);
            if substituted {
                ej[j] = -1;
                ei[i] = -1;
                den.insert(ej, BigInt::one());
                den.insert(ei, -BigInt::one());
            } else {
                ei[i] = 1;
                ej[j] = 1;
                den.insert(ei, BigInt::one());
                den.insert(ej, -BigInt::one());
            }
            num = mpoly_exact_div(num, &den);
        }
    }
    num
}

/// O_lambda, the Schubert structure sheaf class, in the irreducible basis.
///
/// Every weight in the result is entrywise in [-lambda_1, 0] (first row
/// never grows); this is asserted. Results are cached.
pub fn grothendieck_class(lambda: &Partition, r: usize) -> RepRingElement {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<u32>, usize), RepRingElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (lambda.parts().to_vec(), r);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let elt = schur_decompose(g_polynomial(lambda, r, true), r);
    let bound = lambda.part(0) as i64;
    assert!(
        elt.is_in_box(bound),
        "O_{} at r={} left the first-row bound: {:?}",
        lambda,
        r,
        elt
    );
    cache.lock().unwrap().insert(key, elt.clone());
    elt
}

/// G_lambda expanded in Schur polynomials of y (no substitution); used only
/// to observe the signed first-row-preserving expansion shape.
pub fn g_schur_expansion(lambda: &Partition, r: usize) -> BTreeMap<Partition, BigInt> {
    let elt = schur_decompose(g_polynomial(lambda, r, false), r);
    elt.terms()
        .iter()
        .map(|(w, c)| {
            assert!(w.iter().all(|&x| x >= 0), "G_{} expansion has a negative weight", lambda);
            (Partition::new(w.iter().map(|&x| x as u32).collect()), c.clone())
        })
        .collect()
}

/// The quantized dual class O*_nu = O_{nu*} . det S.
pub fn quantized_dual(nu: &Partition, ctx: BoxContext) -> RepRingElement {
    assert!(ctx.contains(nu), "{} not in the {}x{} box", nu, ctx.r, ctx.k);
    grothendieck_class(&complement(nu, ctx), ctx.r).multiply(&RepRingElement::det_s(ctx.r))
}

/// Transition matrix A_lambda^nu between {O_lambda} and the irreducible
/// basis, over all partitions with <= r parts and first part <= bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub order: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
}

/// The dominant weight carried by the Schur functor for nu.
fn dual_weight(nu: &Partition, r: usize) -> Weight {
    nu.padded(r).iter().rev().map(|&p| -(p as i64)).collect()
}

pub fn transition_matrix(r: usize, bound: usize) -> TransitionMatrix {
    let order = enumerate_box(BoxContext { r, k: bound });
    let index: HashMap<Weight, usize> =
        order.iter().enumerate().map(|(i, nu)| (dual_weight(nu, r), i)).collect();
    let entries = order
        .iter()
        .map(|lam| {
            let o = grothendieck_class(lam, r);
            let mut row = vec![0i64; order.len()];
            for (w, c) in o.terms() {
                let col = index[w]; // in range by the first-row bound
                row[col] = i64::try_from(c).expect("transition entry fits i64");
            }
            row
        })
        .collect();
    TransitionMatrix { order, entries }
}

/// Determinant of an integer matrix, exact.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&row| !a[row][col].is_zero()) {
            Some(p) => p,
            None => return BigInt::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        let pinv = a[col][col].recip();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = &a[row][col] * &pinv;
            for j in col..n {
                let sub = &f * &a[col][j];
                a[row][j] -= sub;
            }
        }
    }
    assert!(det.denom().is_one());
    det.numer().clone()
}

/// Error: the element is not in the span of the requested O-classes; the
/// unexpandable remainder is carried along.
#[derive(Debug)]
pub struct SpanError {
    pub residual: RepRingElement,
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "element outside the O-basis span; residual {:?}", self.residual)
    }
}

impl std::error::Error for SpanError {}

/// Expands `a` in the basis {O_nu : nu_1 <= bound, <= r parts}.
///
/// Errors (with the residual) if any weight of `a` falls outside the table,
/// or if the exact solve leaves a nonzero remainder.
#[allow(non_snake_case)]
pub fn expand_in_O_basis(
    a: &RepRingElement,
    r: usize,
    bound: usize,
) -> Result<BTreeMap<Partition, BigInt>, SpanError> {
    let order = enumerate_box(BoxContext { r, k: bound });
    let index: HashMap<Weight, usize> =
        order.iter().enumerate().map(|(i, nu)| (dual_weight(nu, r), i)).collect();
    let outside =
        RepRingElement::from_terms(r, a.terms().iter().filter(|(w, _)| !index.contains_key(*w)).map(
            |(w, c)| (w.clone(), c.clone()),
        ));
    if !outside.is_zero() {
        return Err(SpanError { residual: outside });
    }
    let n = order.len();
    // columns are O_lambda in the weight coordinates; solve M c = a
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
    for (col, lam) in order.iter().enumerate() {
        for (w, c) in grothendieck_class(lam, r).terms() {
            m[index[w]][col] = BigRational::from(c.clone());
        }
    }
    for (w, c) in a.terms() {
        m[index[w]][n] = BigRational::from(c.clone());
    }
    // Gaussian elimination to reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let p = match (row..n).find(|&i| !m[i][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=n {
            m[row][j] *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let sub = &f * &m[row][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // inconsistent rows mean a residual outside the span
    if (row..n).any(|i| !m[i][n].is_zero()) {
        // reconstruct the residual a - M c from the particular solution
        let mut sol = vec![BigRational::zero(); n];
        for &(pr, pc) in &pivots {
            sol[pc] = m[pr][n].clone();
        }
        let mut approx = RepRingElement::zero(r);
        for (col, lam) in order.iter().enumerate() {
            if sol[col].denom().is_one() {
                approx = approx.add(&grothendieck_class(lam, r).scale(&sol[col].numer().clone()));
            }
        }
        return Err(SpanError { residual: a.sub(&approx) });
    }
    let mut out = BTreeMap::new();
    for &(pr, pc) in &pivots {
        let v = &m[pr][n];
        assert!(v.denom().is_one(), "non-integer expansion coefficient {:?}", v);
        if !v.numer().is_zero() {
            out.insert(order[pc].clone(), v.numer().clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn small_classes() {
        // [DERIVED] G_1(y) = y, so O_(1) at r=1 is 1 - S
        let o = grothendieck_class(&p(&[1]), 1);
        assert_eq!(o, RepRingElement::unit(1).sub(&RepRingElement::irreducible(vec![-1])));
        // [DERIVED] G_1(y1,y2) = y1 + y2 - y1 y2 = 1 - (x1 x2)^{-1}
        let o = grothendieck_class(&p(&[1]), 2);
        assert_eq!(o, RepRingElement::unit(2).sub(&RepRingElement::det_s(2)));
        // [TRIVIAL] G_empty = 1
        assert_eq!(grothendieck_class(&Partition::empty(), 3), RepRingElement::unit(3));
    }

    #[test]
    fn transition_matrix_small() {
        // [DERIVED] r=1, bound=1 against basis (S^empty, S^(1))
        let a = transition_matrix(1, 1);
        assert_eq!(a.order, vec![Partition::empty(), p(&[1])]);
        assert_eq!(a.entries, vec![vec![1, 0], vec![1, -1]]);
        // [DERIVED] r=2, bound=1: row for (1) against (S^0, S^(1), S^(1,1))
        let a = transition_matrix(2, 1);
        assert_eq!(a.entries[1], vec![1, 0, -1]);
        // [TRIVIAL] the empty row is the unit row
        assert_eq!(a.entries[0], vec![1, 0, 0]);
    }

    #[test]
    fn transition_matrix_unimodular() {
        for r in 1..=4usize {
            for k in 1..=4usize {
                let a = transition_matrix(r, k);
                let d = det_i64(&a.entries);
                assert_eq!(d.abs(), BigInt::one(), "det A at r={}, bound={}", r, k);
            }
        }
    }

    #[test]
    fn projective_space_classes_are_binomial() {
        // [DERIVED] r = 1: O_(m) = (1 - x^{-1})^m = sum_j (-1)^j C(m,j) s_j(x^{-1})
        for m in 0..=4u32 {
            let o = grothendieck_class(&Partition::new(vec![m]), 1);
            for j in 0..=m {
                let expect = BigInt::from(crate::partition::binomial(m as u64, j as u64))
                    * if j % 2 == 0 { 1 } else { -1 };
                assert_eq!(o.coeff(&[-(j as i64)]), expect, "O_({}) at s_{}", m, j);
            }
        }
    }

    #[test]
    fn character_vanishes_at_identity() {
        // [DERIVED] each y_i = 1 - x_i^{-1} vanishes at x = 1, so the
        // character of O_lambda there is G_lambda(0,...,0) = [lambda = 0]
        use crate::poly::UniRational;
        for r in 1..=3usize {
            let ones = vec![UniRational::one(); r];
            for lam in enumerate_box(BoxContext { r, k: 3 }) {
                let o = grothendieck_class(&lam, r);
                let v = o.evaluate_character(&ones);
                let expect = if lam.is_empty() { UniRational::one() } else { UniRational::zero() };
                assert_eq!(v, expect, "character of O_{} at x = 1", lam);
            }
        }
    }

    #[test]
    fn schur_expansion_shape() {
        // observed shape of the G_lambda -> Schur expansion: signs alternate
        // with |mu| - |lambda|, the first row is preserved, and row i gains
        // at most i-1 boxes
        for r in 1..=3usize {
            for lam in enumerate_box(BoxContext { r, k: 3 }) {
                let exp = g_schur_expansion(&lam, r);
                assert_eq!(exp[&lam], BigInt::one());
                for (mu, c) in exp {
                    assert!(mu.contains(&lam));
                    assert_eq!(mu.part(0), lam.part(0), "first row grew in G_{}", lam);
                    for i in 1..r {
                        assert!(mu.part(i) - lam.part(i) <= i as u32);
                    }
                    let sign = BigInt::from(if (mu.weight() - lam.weight()) % 2 == 0 { 1 } else { -1 });
                    assert!((c * sign).is_positive(), "sign pattern in G_{}", lam);
                }
            }
        }
    }

    #[test]
    fn quantized_duals() {
        // [DERIVED] nu = empty at r=1, k=1: (1 - S) . S = S - S^2
        let d = quantized_dual(&Partition::empty(), BoxContext::new(1, 2));
        let expect = RepRingElement::irreducible(vec![-1])
            .sub(&RepRingElement::irreducible(vec![-2]));
        assert_eq!(d, expect);
        // [TRIVIAL] full box: O*_(2,2) = O_empty . det S = det S
        let d = quantized_dual(&p(&[2, 2]), BoxContext::new(2, 4));
        assert_eq!(d, RepRingElement::det_s(2));
        // [PAPER] O*_(1) = O_(2,1) . det S at r=2, k=2
        let d = quantized_dual(&p(&[1]), BoxContext::new(2, 4));
        let expect = grothendieck_class(&p(&[2, 1]), 2).multiply(&RepRingElement::det_s(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn expand_known_dual() {
        // [PAPER] O*_(1) = O_(2,1) - O_(2,2) - O_(3,1) + O_(3,2) at r=2, k=2
        let d = quantized_dual(&p(&[1]), BoxContext::new(2, 4));
        let exp = expand_in_O_basis(&d, 2, 3).unwrap();
        let expect: BTreeMap<Partition, BigInt> = [
            (p(&[2, 1]), BigInt::from(1)),
            (p(&[2, 2]), BigInt::from(-1)),
            (p(&[3, 1]), BigInt::from(-1)),
            (p(&[3, 2]), BigInt::from(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(exp, expect);
    }

    #[test]
    fn expand_basis_elements() {
        // [TRIVIAL] expanding O_lambda returns the delta vector
        for lam in enumerate_box(BoxContext { r: 2, k: 3 }) {
            let exp = expand_in_O_basis(&grothendieck_class(&lam, 2), 2, 3).unwrap();
            assert_eq!(exp, BTreeMap::from([(lam.clone(), BigInt::one())]));
        }
    }

    #[test]
    fn expand_rejects_outside_span() {
        // det S^dual has positive weights: outside every O-span table
        let err = expand_in_O_basis(&RepRingElement::det_s_dual(2), 2, 3).unwrap_err();
        assert_eq!(err.residual, RepRingElement::det_s_dual(2));
    }
}
