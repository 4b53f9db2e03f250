//! The representation ring R(GL_r) in the irreducible-character basis.
//!
//! Elements are finite integer combinations of irreducible characters,
//! indexed by dominant weights (weakly decreasing integer r-tuples, possibly
//! negative). The tautological subsheaf classes live here under the
//! convention that the Schur functor of S applied to lambda is the
//! irreducible with weight (-lambda_r, ..., -lambda_1), so that det S is
//! (-1,...,-1) and det S^dual is (1,...,1).
//!
//! Products of irreducibles are reduced to partition products by factoring
//! out a determinant power and applying the classical Littlewood-Richardson
//! rule (lattice-word tableau backtracking, shapes truncated to r rows). An
//! independent monomial-expansion oracle backs this in the tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::partition::Partition;
use crate::poly::UniRational;

/// A dominant weight: weakly decreasing integer r-tuple.
pub type Weight = Vec<i64>;

fn assert_dominant(w: &[i64]) {
    assert!(w.windows(2).all(|p| p[0] >= p[1]), "weight not weakly decreasing: {:?}", w);
}

/// Finite integer combination of irreducible GL_r characters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepRingElement {
    r: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl RepRingElement {
    pub fn zero(r: usize) -> Self {
        RepRingElement { r, terms: BTreeMap::new() }
    }

    pub fn unit(r: usize) -> Self {
        Self::irreducible(vec![0; r])
    }

    /// The irreducible character with the given dominant weight.
    pub fn irreducible(w: Weight) -> Self {
        assert_dominant(&w);
        let r = w.len();
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        RepRingElement { r, terms }
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = (Weight, BigInt)>) -> Self {
        let mut elt = Self::zero(r);
        for (w, c) in terms {
            elt.add_term(w, c);
        }
        elt
    }

    /// Schur functor of S: weight (-lambda_r, ..., -lambda_1).
    ///
    /// Panics if lambda has more than r parts.
    pub fn schur_of_s(lambda: &Partition, r: usize) -> Self {
        let padded = lambda.padded(r);
        let w: Weight = padded.iter().rev().map(|&p| -(p as i64)).collect();
        Self::irreducible(w)
    }

    /// The m-th exterior power of S (m = 0 gives the unit).
    pub fn wedge_of_s(m: usize, r: usize) -> Self {
        assert!(m <= r, "wedge power {} exceeds rank {}", m, r);
        Self::schur_of_s(&Partition::new(vec![1; m]), r)
    }

    pub fn det_s(r: usize) -> Self {
        Self::irreducible(vec![-1; r])
    }

    pub fn det_s_dual(r: usize) -> Self {
        Self::irreducible(vec![1; r])
    }

    /// det(S)^m for any integer m.
    pub fn det_s_power(m: i64, r: usize) -> Self {
        Self::irreducible(vec![-m; r])
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, w: &[i64]) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, w: Weight, c: BigInt) {
        assert_dominant(&w);
        assert!(w.len() == self.r, "weight {:?} has wrong rank (expected {})", w, self.r);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove; find the key we just touched
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "rank mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        RepRingElement {
            r: self.r,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.r);
        }
        RepRingElement {
            r: self.r,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Product, bilinear over irreducible x irreducible LR products.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r, "rank mismatch");
        let mut out = Self::zero(self.r);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let c = c1 * c2;
                for (w, mult) in irreducible_product(w1, w2) {
                    out.add_term(w, &c * mult);
                }
            }
        }
        out
    }

    /// Dual representation: weight (w_1,...,w_r) -> (-w_r,...,-w_1).
    ///
    /// An involution and a ring homomorphism (x_i -> x_i^{-1}).
    pub fn dualize(&self) -> Self {
        RepRingElement {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.iter().rev().map(|&x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Membership in R^{r,l}: every weight entrywise in [-l, 0].
    pub fn is_in_box(&self, l: i64) -> bool {
        self.terms.keys().all(|w| w.iter().all(|&x| -l <= x && x <= 0))
    }

    /// Evaluates the character at r invertible rational-function values,
    /// via determinant-power factor times the second Jacobi-Trudi formula.
    pub fn evaluate_character(&self, values: &[UniRational]) -> UniRational {
        assert_eq!(values.len(), self.r, "need exactly {} values", self.r);
        assert!(values.iter().all(|v| !v.is_zero()), "character values must be invertible");
        let elem = elementary_symmetric(values);
        let det_val: UniRational = values.iter().fold(UniRational::one(), |a, v| a.mul(v));
        let mut out = UniRational::zero();
        for (w, c) in &self.terms {
            let m = *w.last().unwrap_or(&0);
            let lambda: Vec<u32> = w.iter().map(|&x| (x - m) as u32).collect();
            let s = jacobi_trudi(&lambda, &elem, self.r);
            let v = s.mul(&det_val.pow(m));
            out = out.add(&v.mul_int(c.clone()));
        }
        out
    }

    /// Full Laurent-monomial expansion of the character in x_1..x_r.
    ///
    /// Exponent vectors are not sorted; this is the cross-oracle for the LR
    /// product and the input to Schur decomposition.
    pub fn monomials(&self) -> BTreeMap<Vec<i64>, BigInt> {
        let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (w, c) in &self.terms {
            let m = *w.last().unwrap_or(&0);
            let lambda: Vec<u32> = w.iter().map(|&x| (x - m) as u32).collect();
            for (mono, mult) in schur_monomials(&lambda, self.r) {
                let shifted: Vec<i64> = mono.iter().map(|&e| e as i64 + m).collect();
                let entry = out.entry(shifted).or_insert_with(BigInt::zero);
                *entry += c * mult;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Product of two irreducibles: factor out det powers, apply LR, shift back.
fn irreducible_product(w1: &[i64], w2: &[i64]) -> Vec<(Weight, BigInt)> {
    let r = w1.len();
    let m1 = *w1.last().unwrap();
    let m2 = *w2.last().unwrap();
    let lam: Vec<u32> = w1.iter().map(|&x| (x - m1) as u32).collect();
    let mu: Vec<u32> = w2.iter().map(|&x| (x - m2) as u32).collect();
    lr_expand(&lam, &mu, r)
        .into_iter()
        .map(|(nu, c)| {
            let mut w: Weight = nu.iter().map(|&p| p as i64 + m1 + m2).collect();
            w.resize(r, m1 + m2);
            (w, c)
        })
        .collect()
}

/// Classical Littlewood-Richardson expansion of s_lam * s_mu, keeping only
/// shapes with at most `max_rows` rows (valid for GL_{max_rows} products
/// since shapes only grow during the filling).
///
/// Enumerates lattice-word tableaux: labels are placed one at a time, each
/// label forming a horizontal strip, with the column-strictness and lattice
/// conditions enforced row by row.
pub fn lr_expand(lam: &[u32], mu: &[u32], max_rows: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let lam: Vec<u32> = lam.iter().copied().filter(|&p| p > 0).collect();
    let mu: Vec<u32> = mu.iter().copied().filter(|&p| p > 0).collect();
    assert!(lam.len() <= max_rows && mu.len() <= max_rows);
    let mut shape = lam.clone();
    shape.resize(max_rows, 0);
    let mut out = BTreeMap::new();
    // cumulative per-row counts of the previously placed label
    let mut prev_cum = vec![0u32; max_rows];
    place_label(0, &mu, &mut shape, &mut prev_cum, max_rows, &mut out);
    return out;

    fn place_label(
        i: usize,
        mu: &[u32],
        shape: &mut Vec<u32>,
        prev_cum: &mut Vec<u32>,
        max_rows: usize,
        out: &mut BTreeMap<Vec<u32>, BigInt>,
    ) {
        if i == mu.len() {
            let nu: Vec<u32> = shape.iter().copied().filter(|&p| p > 0).collect();
            *out.entry(nu).or_insert_with(BigInt::zero) += 1;
            return;
        }
        let before = shape.clone();
        let mut cum = vec![0u32; max_rows];
        place_row(i, 0, mu[i], 0, mu, shape, &before, prev_cum, &mut cum, max_rows, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn place_row(
        i: usize,
        j: usize,
        left: u32,
        cum_above: u32,
        mu: &[u32],
        shape: &mut Vec<u32>,
        before: &[u32],
        prev_cum: &mut Vec<u32>,
        cum: &mut Vec<u32>,
        max_rows: usize,
        out: &mut BTreeMap<Vec<u32>, BigInt>,
    ) {
        if left == 0 {
            for jj in j..max_rows {
                cum[jj] = cum_above;
            }
            std::mem::swap(prev_cum, cum);
            place_label(i + 1, mu, shape, prev_cum, max_rows, out);
            std::mem::swap(prev_cum, cum);
            return;
        }
        if j == max_rows {
            return;
        }
        // bounds on boxes placed in row j:
        //  - resulting row stays a partition (<= row above),
        //  - horizontal strip: row end <= previous shape of row above,
        //  - lattice: count of label i through row j <= count of label i-1
        //    through row j-1.
        let mut hi = if j == 0 { u32::MAX } else { shape[j - 1] } - shape[j];
        if j >= 1 {
            hi = hi.min(before[j - 1].saturating_sub(shape[j]));
        }
        if i >= 1 {
            let cap = if j == 0 { 0 } else { prev_cum[j - 1] };
            hi = hi.min(cap.saturating_sub(cum_above));
        }
        hi = hi.min(left);
        for m in 0..=hi {
            shape[j] += m;
            cum[j] = cum_above + m;
            place_row(i, j + 1, left - m, cum_above + m, mu, shape, before, prev_cum, cum, max_rows, out);
            shape[j] -= m;
        }
    }
}

/// Monomial expansion of s_lambda(x_1..x_r) by Gelfand-Tsetlin branching:
/// s_lambda(x_1..x_r) = sum over mu interlacing lambda of
/// s_mu(x_1..x_{r-1}) x_r^{|lambda|-|mu|}.
pub fn schur_monomials(lambda: &[u32], r: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let lam: Vec<u32> = {
        let mut l = lambda.to_vec();
        l.resize(r.max(l.len()), 0);
        l
    };
    assert!(lam.iter().skip(r).all(|&p| p == 0), "too many parts for rank {}", r);
    let mut out = BTreeMap::new();
    if r == 0 {
        if lam.iter().all(|&p| p == 0) {
            out.insert(vec![], BigInt::one());
        }
        return out;
    }
    let total: u32 = lam.iter().sum();
    let mut mu = vec![0u32; r - 1];
    branch(0, &lam[..r], &mut mu, total, &mut out, r);
    return out;

    fn branch(
        i: usize,
        lam: &[u32],
        mu: &mut Vec<u32>,
        total: u32,
        out: &mut BTreeMap<Vec<u32>, BigInt>,
        r: usize,
    ) {
        if i == r - 1 {
            let sub = schur_monomials(&mu.clone(), r - 1);
            let last: u32 = total - mu.iter().sum::<u32>();
            for (m, c) in sub {
                let mut mono = m;
                mono.push(last);
                *out.entry(mono).or_insert_with(BigInt::zero) += c;
            }
            return;
        }
        // interlacing: lam[i] >= mu[i] >= lam[i+1]
        for v in lam[i + 1]..=lam[i] {
            if i > 0 && v > mu[i - 1] {
                break;
            }
            mu[i] = v;
            branch(i + 1, lam, mu, total, out, r);
        }
    }
}

/// Decomposes a symmetric Laurent polynomial (exponent vector -> coefficient)
/// into irreducible characters by repeated subtraction of the character whose
/// highest weight is the lexicographically largest remaining monomial.
///
/// Panics (hard error) if the input is not symmetric or the loop exceeds the
/// monomial budget.
pub fn schur_decompose(mut poly: BTreeMap<Vec<i64>, BigInt>, r: usize) -> RepRingElement {
    poly.retain(|_, v| !v.is_zero());
    // cancellations can make the constituent count exceed the visible
    // support, so the budget is generous; symmetric inputs always terminate
    let budget = 20 * poly.len() + 1000;
    let mut out = RepRingElement::zero(r);
    for _ in 0..=budget {
        let lead = match poly.iter().next_back() {
            None => return out,
            Some((w, c)) => (w.clone(), c.clone()),
        };
        let (w, c) = lead;
        assert!(
            w.windows(2).all(|p| p[0] >= p[1]),
            "leading monomial {:?} not dominant: input not a symmetric polynomial",
            w
        );
        out.add_term(w.clone(), c.clone());
        let m = *w.last().unwrap();
        let lambda: Vec<u32> = w.iter().map(|&x| (x - m) as u32).collect();
        for (mono, mult) in schur_monomials(&lambda, r) {
            let shifted: Vec<i64> = mono.iter().map(|&e| e as i64 + m).collect();
            let entry = poly.entry(shifted).or_insert_with(BigInt::zero);
            *entry -= &c * mult;
        }
        poly.retain(|_, v| !v.is_zero());
    }
    panic!("schur decomposition did not terminate within budget; input not symmetric?");
}

/// Elementary symmetric functions e_0..e_r of the given values.
fn elementary_symmetric(values: &[UniRational]) -> Vec<UniRational> {
    let r = values.len();
    let mut e = vec![UniRational::zero(); r + 1];
    e[0] = UniRational::one();
    for (n, v) in values.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            let add = e[j - 1].mul(v);
            e[j] = e[j].add(&add);
        }
    }
    e
}

/// Second Jacobi-Trudi: s_lambda = det(e_{lambda†_i + j - i}).
fn jacobi_trudi(lambda: &[u32], e: &[UniRational], r: usize) -> UniRational {
    let lam: Vec<u32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if lam.is_empty() {
        return UniRational::one();
    }
    let conj = Partition::new(lam).conjugate();
    let n = conj.len();
    let mat: Vec<Vec<UniRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idx = conj.part(i) as i64 + j as i64 - i as i64;
                    if idx < 0 || idx as usize > r {
                        UniRational::zero()
                    } else {
                        e[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    det_unirational(mat)
}

/// Determinant by Gaussian elimination over the rational-function field.
fn det_unirational(mut m: Vec<Vec<UniRational>>) -> UniRational {
    let n = m.len();
    let mut det = UniRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return UniRational::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg();
        }
        let p = m[col][col].clone();
        det = det.mul(&p);
        let pinv = p.inv().expect("nonzero pivot");
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].mul(&pinv);
            for j in col..n {
                let sub = factor.mul(&m[col][j]);
                m[row][j] = m[row][j].sub(&sub);
            }
        }
    }
    det
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    weight: Vec<i64>,
    coeff: i64,
}

impl Serialize for RepRingElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            let coeff = i64::try_from(c).map_err(|_| {
                serde::ser::Error::custom("coefficient too large for JSON integer")
            })?;
            seq.serialize_element(&TermRepr { weight: w.clone(), coeff })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RepRingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(d)?;
        let r = match reprs.first() {
            Some(t) => t.weight.len(),
            None => return Err(serde::de::Error::custom("cannot infer rank from empty element")),
        };
        let mut elt = RepRingElement::zero(r);
        for t in reprs {
            if t.weight.len() != r || !t.weight.windows(2).all(|p| p[0] >= p[1]) {
                return Err(serde::de::Error::custom("invalid weight"));
            }
            elt.add_term(t.weight, BigInt::from(t.coeff));
        }
        Ok(elt)
    }
}

// keep Signed import used (abs in tests convenience)
#[allow(dead_code)]
fn abs_sum(e: &RepRingElement) -> BigInt {
    e.terms.values().map(|c| c.abs()).sum()
}
