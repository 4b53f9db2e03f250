//! Torus localization over the Quot scheme Quot_d(P^1, N, r).
//!
//! The big torus (C*)^N x C* acts on P^1 x C^N; fixed points of the Quot
//! scheme are direct sums of twisted coordinate subsheaves O(-d_j) embedded
//! in the e_{i_j}-coordinate with vanishing divisor a_j [0] + b_j [oo]. The
//! genus-0 invariant of Definition "K-theoretic Quot scheme invariant" is
//! the equivariant Euler characteristic summed over fixed points with the
//! Atiyah-Bott factor 1/prod(1 - w^{-1}) over the tangent weights.
//!
//! Weight conventions (frozen here, validated by the d=0 delta-test and the
//! dimension counts): the C* acts by t[z0,z1] = [t z0, z1], so 0 = [0:1],
//! oo = [1:0]; a section z0^a z1^b of O(n) carries C*-weight omega^{-a}; the
//! e_i-coordinate carries torus weight alpha_i, and restriction weights of S
//! are returned as inverses (x-values for character evaluation).
//!
//! Everything is specialized along a one-parameter subgroup alpha_i -> t^{c_i},
//! omega -> t^{c_0} and expanded as an exact truncated Laurent series at
//! t = 1. The subgroup is drawn in a structured form that provably avoids
//! every weight collision while keeping denominators small; see
//! `Subgroup::draw`. The sum over fixed points must have no pole part at
//! t = 1 and an integer constant term; both are asserted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::partition::binomial;
use crate::repring::RepRingElement;
use crate::series::LSeries;

/// A torus-fixed point of Quot_d(P^1, N, r).
///
/// `coords` is the strictly increasing r-subset of {1..N}; line j has degree
/// d_j = a_j + b_j with vanishing divisor a_j [0] + b_j [oo].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub coords: Vec<usize>,
    pub splits: Vec<(u32, u32)>,
}

impl FixedPoint {
    pub fn degrees(&self) -> Vec<u32> {
        self.splits.iter().map(|&(a, b)| a + b).collect()
    }
}

/// Equivariant character: exponent vector (n_1..n_N, n_omega) -> multiplicity.
pub type Character = BTreeMap<Vec<i64>, i64>;

/// All fixed points of Quot_d(P^1, N, r), in a deterministic order
/// (subsets lex, then degree compositions lex, then splits by a_j).
pub fn enumerate_fixed_points(n: usize, r: usize, d: u32) -> Vec<FixedPoint> {
    assert!(1 <= r && r <= n && n <= 16);
    let mut out = Vec::new();
    let mut subset = Vec::new();
    subsets(1, n, r, &mut subset, &mut |coords| {
        let mut degs = vec![0u32; r];
        compositions(0, d, &mut degs, &mut |degs| {
            let mut splits = vec![(0u32, 0u32); r];
            split_choices(0, degs, &mut splits, &mut |splits| {
                out.push(FixedPoint { coords: coords.to_vec(), splits: splits.to_vec() });
            });
        });
    });
    return out;

    fn subsets(from: usize, n: usize, left: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in from..=n + 1 - left {
            cur.push(i);
            subsets(i + 1, n, left - 1, cur, f);
            cur.pop();
        }
    }

    fn compositions(j: usize, left: u32, degs: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if j + 1 == degs.len() {
            degs[j] = left;
            f(degs);
            return;
        }
        for v in 0..=left {
            degs[j] = v;
            compositions(j + 1, left - v, degs, f);
        }
    }

    fn split_choices(j: usize, degs: &[u32], splits: &mut Vec<(u32, u32)>, f: &mut impl FnMut(&[(u32, u32)])) {
        if j == degs.len() {
            f(splits);
            return;
        }
        for a in 0..=degs[j] {
            splits[j] = (a, degs[j] - a);
            split_choices(j + 1, degs, splits, f);
        }
    }
}

/// The r restriction weights of S at a P^1-fixed point, as inverses
/// (x-values for character evaluation): at 0 the j-th is alpha_{i_j}^{-1}
/// omega^{a_j}, at oo it is alpha_{i_j}^{-1} omega^{-b_j}.
pub fn restriction_weights(fp: &FixedPoint, n: usize, at_zero: bool) -> Vec<Vec<i64>> {
    fp.coords
        .iter()
        .zip(&fp.splits)
        .map(|(&i, &(a, b))| {
            let mut w = vec![0i64; n + 1];
            w[i - 1] = -1;
            w[n] = if at_zero { a as i64 } else { -(b as i64) };
            w
        })
        .collect()
}

/// Equivariant Euler characteristic on P^1 of a line bundle of degree `deg`
/// with fiber weight `u0` at 0, accumulated into `acc` with sign `sgn`.
///
/// H^0(O(n)) has sections z0^a z1^{n-a} of weight u0 omega^{-a} for n >= 0;
/// for n <= -2 only H^1 contributes, with weights u0 omega^{1..-n-1} by
/// Serre duality.
fn add_line_chi(acc: &mut Character, u0: &[i64], deg: i64, n: usize, sgn: i64) {
    if deg >= 0 {
        for a in 0..=deg {
            let mut w = u0.to_vec();
            w[n] -= a;
            add_char(acc, w, sgn);
        }
    } else {
        for j in 1..=(-deg - 1) {
            let mut w = u0.to_vec();
            w[n] += j;
            add_char(acc, w, -sgn);
        }
    }
}

fn add_char(acc: &mut Character, w: Vec<i64>, m: i64) {
    let e = acc.entry(w).or_insert(0);
    *e += m;
    if *e == 0 {
        acc.retain(|_, v| *v != 0);
    }
}

/// Tangent character at a fixed point: chi(Hom(S, O^N)) - chi(Hom(S, S)),
/// with exactly Nd + r(N - r) positive multiplicities and no zero weight
/// (both asserted).
pub fn tangent_character(fp: &FixedPoint, n: usize) -> Character {
    let r = fp.coords.len();
    let d: u32 = fp.degrees().iter().sum();
    let mut acc = Character::new();
    // L_j^dual tensor alpha_m O: degree d_j, weight alpha_m alpha_{i_j}^{-1} omega^{a_j} at 0
    for (j, (&ij, &(aj, _))) in fp.coords.iter().zip(&fp.splits).enumerate() {
        let dj = fp.splits[j].0 + fp.splits[j].1;
        for m in 1..=n {
            let mut u0 = vec![0i64; n + 1];
            u0[m - 1] += 1;
            u0[ij - 1] -= 1;
            u0[n] = aj as i64;
            add_line_chi(&mut acc, &u0, dj as i64, n, 1);
        }
        // minus L_j^dual tensor L_l: degree d_j - d_l, weight
        // alpha_{i_l} alpha_{i_j}^{-1} omega^{a_j - a_l} at 0
        for (&il, &(al, bl)) in fp.coords.iter().zip(&fp.splits) {
            let dl = al + bl;
            let mut u0 = vec![0i64; n + 1];
            u0[il - 1] += 1;
            u0[ij - 1] -= 1;
            u0[n] = aj as i64 - al as i64;
            add_line_chi(&mut acc, &u0, dj as i64 - dl as i64, n, -1);
        }
    }
    let count: i64 = acc.values().sum();
    assert_eq!(
        count as i128,
        (n as i128) * (d as i128) + (r * (n - r)) as i128,
        "tangent dimension mismatch at {:?}",
        fp
    );
    assert!(acc.values().all(|&m| m > 0), "negative tangent multiplicity at {:?}", fp);
    assert!(!acc.contains_key(&vec![0i64; n + 1]), "zero tangent weight at {:?}", fp);
    acc
}

/// One-parameter subgroup alpha_i -> t^{c_alpha[i]}, omega -> t^{c_omega}.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub c_alpha: Vec<i64>,
    pub c_omega: i64,
}

impl Subgroup {
    /// Structured generic draw. With c_omega = s*sigma and
    /// c_alpha[i] = s*(2d+3)*m_i for distinct m_i, every tangent or
    /// restriction weight specializes to s*((2d+3)*Dm + h*sigma) with
    /// |h| <= 2d+1, which is nonzero whenever the alpha-part Dm is, and the
    /// pure omega powers are nonzero too. Exponents stay small, so the
    /// exact series arithmetic stays cheap.
    pub fn draw(n: usize, d: u32, rng: &mut impl Rng) -> Subgroup {
        let s = *[1i64, -1, 2, -2, 3, -3].choose(rng).unwrap();
        let sigma = *[1i64, -1].choose(rng).unwrap();
        let mut pool: Vec<i64> = (1..=40).collect();
        pool.shuffle(rng);
        let stride = 2 * d as i64 + 3;
        Subgroup {
            c_alpha: pool[..n].iter().map(|&m| s * stride * m).collect(),
            c_omega: s * sigma,
        }
    }

    /// The exponent of t that the given character weight specializes to.
    pub fn specialize(&self, w: &[i64]) -> i64 {
        let n = self.c_alpha.len();
        w[..n].iter().zip(&self.c_alpha).map(|(a, c)| a * c).sum::<i64>() + w[n] * self.c_omega
    }
}

struct FpData {
    /// specialized exponents of the r restriction x-values
    fvals: Vec<i64>,
    inv_vand: LSeries,
    inv_euler: LSeries,
}

/// Localization engine for one (N, r, d): fixed points, Euler factors and
/// Vandermonde inverses precomputed, class evaluation on demand.
pub struct DInvariantEngine {
    n: usize,
    r: usize,
    d: u32,
    prec: i64,
    perms: Vec<(Vec<usize>, i64)>,
    fps: Vec<FixedPoint>,
    data: Vec<FpData>,
}

impl DInvariantEngine {
    pub fn new(n: usize, r: usize, d: u32, seed: u64) -> Self {
        Self::new_at(n, r, d, seed, true)
    }

    /// `at_zero` selects the P^1-point where insertions are restricted.
    pub fn new_at(n: usize, r: usize, d: u32, seed: u64, at_zero: bool) -> Self {
        let fps = enumerate_fixed_points(n, r, d);
        let tangents: Vec<Character> = fps.iter().map(|fp| tangent_character(fp, n)).collect();
        let n_t = (n as i64) * (d as i64) + (r * (n - r)) as i64;
        let prec = n_t + 6 * binomial(r as u64, 2) as i64 + 10;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((n as u64) << 40) | ((r as u64) << 32) | d as u64);
        let mut last_err = String::new();
        for _attempt in 0..8 {
            let sub = Subgroup::draw(n, d, &mut rng);
            match build_data(&fps, &tangents, &sub, n, prec, at_zero) {
                Ok(data) => {
                    let perms = signed_permutations(r);
                    return DInvariantEngine { n, r, d, prec, perms, fps, data };
                }
                Err(e) => last_err = e,
            }
        }
        panic!("no generic one-parameter subgroup found in 8 draws: {}", last_err);
    }

    pub fn fixed_point_count(&self) -> usize {
        self.fps.len()
    }

    pub fn bundle_rank_n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn inv_eulers(&self) -> impl Iterator<Item = &LSeries> {
        self.data.iter().map(|d| &d.inv_euler)
    }

    pub fn inv_euler(&self, i: usize) -> &LSeries {
        &self.data[i].inv_euler
    }

    /// Value of a class at one fixed point (no Euler factor): the character
    /// evaluated at the restriction x-values via the bialternant, shared
    /// Vandermonde inverse applied once.
    pub fn eval_class(&self, i: usize, v: &RepRingElement) -> LSeries {
        assert_eq!(v.rank(), self.r, "insertion rank mismatch");
        let fd = &self.data[i];
        let mut alt = LSeries::zero(self.prec);
        for (w, c) in v.terms() {
            let mut aw = LSeries::zero(self.prec);
            for (perm, sign) in &self.perms {
                let e: i64 = (0..self.r)
                    .map(|k| fd.fvals[perm[k]] * (w[k] + (self.r - 1 - k) as i64))
                    .sum();
                let pow = LSeries::binom_pow(e, self.prec);
                aw = if *sign > 0 { aw.add(&pow) } else { aw.sub(&pow) };
            }
            aw = aw.scale(&BigRational::from(c.clone()));
            alt = alt.add(&aw);
        }
        alt.mul(&fd.inv_vand)
    }

    /// Values of a class at every fixed point, in parallel.
    pub fn class_values(&self, v: &RepRingElement) -> Vec<LSeries> {
        (0..self.fps.len()).into_par_iter().map(|i| self.eval_class(i, v)).collect()
    }

    /// Sums per-fixed-point contributions (already including the Euler
    /// factor), asserts the pole part vanishes, and returns the constant
    /// term as an exact rational.
    pub fn reduce_sum(&self, contribs: Vec<LSeries>) -> BigRational {
        let mut total = LSeries::zero(self.prec);
        for c in contribs {
            total = total.add(&c);
        }
        assert!(total.prec() >= 1, "precision exhausted in localization sum");
        assert!(
            total.is_zero() || total.val() >= 0,
            "nonzero pole part in localization sum: {:?}",
            total
        );
        total.coeff(0).unwrap()
    }

    /// The invariant <V_1,...,V_n>_{0,d} as an exact rational (asserted to
    /// be an integer).
    pub fn euler_characteristic(&self, insertions: &[RepRingElement]) -> BigRational {
        let contribs: Vec<LSeries> = (0..self.fps.len())
            .into_par_iter()
            .map(|i| {
                let mut acc = self.data[i].inv_euler.clone();
                for v in insertions {
                    acc = acc.mul(&self.eval_class(i, v));
                }
                acc
            })
            .collect();
        let x = self.reduce_sum(contribs);
        assert!(x.denom().is_one(), "non-integer invariant {:?}", x);
        x
    }

    pub fn invariant(&self, insertions: &[RepRingElement]) -> BigInt {
        self.euler_characteristic(insertions).numer().clone()
    }
}

fn signed_permutations(r: usize) -> Vec<(Vec<usize>, i64)> {
    use itertools::Itertools;
    (0..r)
        .permutations(r)
        .map(|p| {
            let mut sign = 1i64;
            for i in 0..r {
                for j in i + 1..r {
                    if p[i] > p[j] {
                        sign = -sign;
                    }
                }
            }
            (p, sign)
        })
        .collect()
}

fn build_data(
    fps: &[FixedPoint],
    tangents: &[Character],
    sub: &Subgroup,
    n: usize,
    prec: i64,
    at_zero: bool,
) -> Result<Vec<FpData>, String> {
    fps.par_iter()
        .zip(tangents)
        .map(|(fp, tan)| {
            let fvals: Vec<i64> = restriction_weights(fp, n, at_zero)
                .iter()
                .map(|w| sub.specialize(w))
                .collect();
            for i in 0..fvals.len() {
                for j in i + 1..fvals.len() {
                    if fvals[i] == fvals[j] {
                        return Err(format!("x-value collision at {:?}", fp));
                    }
                }
            }
            // Vandermonde det(x_j^{r-1-i}) via the same signed-permutation
            // expansion used for class evaluation, so signs are consistent
            let r = fvals.len();
            let mut vand = LSeries::zero(prec);
            for (perm, sign) in signed_permutations(r) {
                let e: i64 = (0..r).map(|k| fvals[perm[k]] * (r - 1 - k) as i64).sum();
                let pow = LSeries::binom_pow(e, prec);
                vand = if sign > 0 { vand.add(&pow) } else { vand.sub(&pow) };
            }
            if vand.is_zero() {
                return Err(format!("degenerate Vandermonde at {:?}", fp));
            }
            let mut euler = LSeries::one(prec);
            for (w, &m) in tan {
                let g = sub.specialize(w);
                if g == 0 {
                    return Err(format!("tangent weight annihilated at {:?}", fp));
                }
                let factor = LSeries::one(prec).sub(&LSeries::binom_pow(-g, prec));
                for _ in 0..m {
                    euler = euler.mul(&factor);
                }
            }
            Ok(FpData { fvals, inv_vand: vand.inv(), inv_euler: euler.inv() })
        })
        .collect()
}

/// The genus-0 Quot invariant as an exact rational (integrality asserted).
pub fn euler_characteristic(
    n: usize,
    r: usize,
    d: u32,
    insertions: &[RepRingElement],
    seed: u64,
) -> BigRational {
    DInvariantEngine::new(n, r, d, seed).euler_characteristic(insertions)
}

/// The genus-0 Quot invariant <V_1,...,V_n>_{0,d}; the public entry point.
pub fn invariant(n: usize, r: usize, d: u32, insertions: &[RepRingElement], seed: u64) -> BigInt {
    DInvariantEngine::new(n, r, d, seed).invariant(insertions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{grothendieck_class, quantized_dual};
    use crate::partition::{complement, enumerate_box, BoxContext, Partition};
    use crate::DEFAULT_SEED;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn fixed_point_counts() {
        // [DERIVED] 2 coordinates x 2 splits
        assert_eq!(enumerate_fixed_points(2, 1, 1).len(), 4);
        // [TRIVIAL] Quot_0 = Gr(2,4)
        assert_eq!(enumerate_fixed_points(4, 2, 0).len(), 6);
        // [DERIVED] 6 * (2*1 + 1*2) = 24
        assert_eq!(enumerate_fixed_points(4, 2, 1).len(), 24);
        // closed-form count for all N <= 5, r <= N, d <= 3
        for n in 1..=5usize {
            for r in 1..=n {
                for d in 0..=3u32 {
                    let mut expect = 0u64;
                    let mut degs = vec![0u32; r];
                    count_comps(0, d, &mut degs, &mut expect);
                    expect *= binomial(n as u64, r as u64);
                    assert_eq!(enumerate_fixed_points(n, r, d).len() as u64, expect);
                }
            }
        }

        fn count_comps(j: usize, left: u32, degs: &mut Vec<u32>, acc: &mut u64) {
            if j + 1 == degs.len() {
                degs[j] = left;
                *acc += degs.iter().map(|&x| x as u64 + 1).product::<u64>();
                return;
            }
            for v in 0..=left {
                degs[j] = v;
                count_comps(j + 1, left - v, degs, acc);
            }
        }
    }

    #[test]
    fn restriction_weight_conventions() {
        // [TRIVIAL] d=0: inverses of the coordinate weights, point-independent
        let fp = FixedPoint { coords: vec![1, 3], splits: vec![(0, 0), (0, 0)] };
        let w0 = restriction_weights(&fp, 4, true);
        assert_eq!(w0, restriction_weights(&fp, 4, false));
        assert_eq!(w0[0], vec![-1, 0, 0, 0, 0]);
        assert_eq!(w0[1], vec![0, 0, -1, 0, 0]);
        // [DERIVED] split (1,0): weights at 0 and oo differ by omega
        let fp = FixedPoint { coords: vec![2], splits: vec![(1, 0)] };
        let w0 = restriction_weights(&fp, 2, true);
        let winf = restriction_weights(&fp, 2, false);
        assert_eq!(w0[0], vec![0, -1, 1]);
        assert_eq!(winf[0], vec![0, -1, 0]);
    }

    #[test]
    fn tangent_dimensions() {
        // [DERIVED] Gr(1,2) at a fixed point: single weight alpha_2/alpha_1
        let fp = FixedPoint { coords: vec![1], splits: vec![(0, 0)] };
        let t = tangent_character(&fp, 2);
        assert_eq!(t, Character::from([(vec![-1, 1, 0], 1)]));
        // [DERIVED] Quot_1(P^1,2,1) = P^3: 3 tangent weights
        for fp in enumerate_fixed_points(2, 1, 1) {
            let t = tangent_character(&fp, 2);
            assert_eq!(t.values().sum::<i64>(), 3);
        }
        // [TRIVIAL] dim Gr(2,4) = 4 (also asserted internally for all cases)
        for fp in enumerate_fixed_points(4, 2, 0) {
            assert_eq!(tangent_character(&fp, 4).values().sum::<i64>(), 4);
        }
    }

    #[test]
    fn projective_space_sanity() {
        // Quot_d(P^1,2,1) = P^{2d+1}; chi(O) = 1 for every d <= 4 [DERIVED]
        for d in 0..=4u32 {
            assert_eq!(invariant(2, 1, d, &[RepRingElement::unit(1)], DEFAULT_SEED), BigInt::from(1));
        }
        // Gr(1,2) = P^1: chi(O(1)) = 2, chi(O(-1)) = 0 [DERIVED]
        assert_eq!(invariant(2, 1, 0, &[RepRingElement::det_s_dual(1)], DEFAULT_SEED), BigInt::from(2));
        assert_eq!(invariant(2, 1, 0, &[RepRingElement::det_s(1)], DEFAULT_SEED), BigInt::from(0));
    }

    #[test]
    fn classical_delta_pairing() {
        // [PAPER] chi(X, O_lambda . O*_nu) = delta at (r,N) = (2,4), d = 0
        let ctx = BoxContext::new(2, 4);
        let eng = DInvariantEngine::new(4, 2, 0, DEFAULT_SEED);
        for lam in enumerate_box(ctx) {
            for nu in enumerate_box(ctx) {
                let v = grothendieck_class(&lam, 2);
                let w = quantized_dual(&nu, ctx);
                let got = eng.invariant(&[v, w]);
                let expect = if lam == nu { 1 } else { 0 };
                assert_eq!(got, BigInt::from(expect), "<O_{}, O*_{}>", lam, nu);
            }
        }
    }

    #[test]
    fn classical_euler_characteristics() {
        // chi(X, O_lambda) = 1 for every Schubert class [PAPER]
        for (r, n) in [(1, 2), (2, 4), (2, 5)] {
            let eng = DInvariantEngine::new(n, r, 0, DEFAULT_SEED);
            for lam in enumerate_box(BoxContext::new(r, n)) {
                let got = eng.invariant(&[grothendieck_class(&lam, r)]);
                assert_eq!(got, BigInt::from(1), "chi(O_{}) on Gr({},{})", lam, r, n);
            }
        }
    }

    #[test]
    fn dual_cap_series() {
        // [PAPER] <O_{lambda*}>_{0,d} = 1 for d <= 3 at (r,N) = (2,4)
        let ctx = BoxContext::new(2, 4);
        for lam in [p(&[]), p(&[1]), p(&[2, 1])] {
            let cls = grothendieck_class(&complement(&lam, ctx), 2);
            for d in 0..=3u32 {
                assert_eq!(invariant(4, 2, d, &[cls.clone()], DEFAULT_SEED), BigInt::from(1));
            }
        }
    }

    #[test]
    fn seed_and_point_independence() {
        // two independent subgroup draws and both evaluation points agree
        let ins = [grothendieck_class(&p(&[2, 1]), 2), grothendieck_class(&p(&[1]), 2)];
        let a = DInvariantEngine::new(4, 2, 2, 7).invariant(&ins);
        let b = DInvariantEngine::new(4, 2, 2, 8).invariant(&ins);
        let c = DInvariantEngine::new_at(4, 2, 2, 9, false).invariant(&ins);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn vanishing_theorem_small() {
        // [PAPER] <S^lambda(S)>_{0,d} = 0 for d >= lambda_1 - (N-r)
        let lam = p(&[3, 1]);
        for d in 1..=3u32 {
            // N-r = 2, so d >= 1 kills it
            let got = invariant(4, 2, d, &[RepRingElement::schur_of_s(&lam, 2)], DEFAULT_SEED);
            assert_eq!(got, BigInt::from(0), "d={}", d);
        }
        // [PAPER] part (ii): lambda_r > 0, r != N, d >= lambda_1 - 2(N-r), d > 0
        let lam = p(&[4, 1]);
        for d in 2..=3u32 {
            let got = invariant(4, 2, d, &[RepRingElement::schur_of_s(&lam, 2)], DEFAULT_SEED);
            assert_eq!(got, BigInt::from(0), "d={}", d);
        }
    }
}
