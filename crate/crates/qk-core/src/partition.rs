//! Partition combinatorics for the r x k box.
//!
//! Partitions are stored with trailing zeros removed; box operations pad to
//! exactly `r` parts on demand. The canonical total order (used everywhere a
//! deterministic matrix index is needed) is by weight first, then
//! lexicographically descending among equal weights.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A partition: weakly decreasing sequence of nonnegative integers.
///
/// Trailing zeros are normalized away in storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition, normalizing trailing zeros away.
    ///
    /// Panics if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {:?}",
            parts
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part (0-based), zero beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |lambda|, the number of boxes.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// The parts padded with zeros to exactly `r` entries.
    ///
    /// Panics if the partition has more than `r` parts.
    pub fn padded(&self, r: usize) -> Vec<u32> {
        assert!(self.parts.len() <= r, "partition {:?} has more than {} parts", self.parts, r);
        let mut v = self.parts.clone();
        v.resize(r, 0);
        v
    }

    /// The conjugate partition (rows and columns of the diagram swapped).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Canonical order: weight ascending, then lexicographically descending.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom("partition parts must be weakly decreasing"));
        }
        Ok(Partition::new(parts))
    }
}

/// The rectangle context: rank r, co-rank k = N - r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxContext {
    pub r: usize,
    pub k: usize,
}

impl BoxContext {
    /// Context for Gr(r, N). Panics unless 1 <= r <= N.
    pub fn new(r: usize, n: usize) -> Self {
        assert!(r >= 1 && r <= n, "need 1 <= r <= N, got r={}, N={}", r, n);
        BoxContext { r, k: n - r }
    }

    pub fn n(&self) -> usize {
        self.r + self.k
    }

    /// Is lambda contained in the r x k box?
    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.len() <= self.r && lambda.part(0) as usize <= self.k
    }
}

/// All partitions in the r x k box, in the canonical order.
///
/// The list has length binomial(r + k, r).
pub fn enumerate_box(ctx: BoxContext) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    gen(ctx.r, ctx.k as u32, &mut current, &mut out);
    out.sort();
    return out;

    // Emits every weakly decreasing sequence of <= rows_left further parts,
    // each bounded by `max`, appended to `current`.
    fn gen(rows_left: usize, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(current.clone()));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max {
            current.push(p);
            gen(rows_left - 1, p, current, out);
            current.pop();
        }
    }
}

/// The complement lambda* = (k - lambda_r, ..., k - lambda_1) in the box.
///
/// Panics if lambda does not fit in the box.
pub fn complement(lambda: &Partition, ctx: BoxContext) -> Partition {
    assert!(ctx.contains(lambda), "partition {} not contained in {}x{} box", lambda, ctx.r, ctx.k);
    let padded = lambda.padded(ctx.r);
    let parts = padded.iter().rev().map(|&p| ctx.k as u32 - p).collect();
    Partition::new(parts)
}

/// binomial(n, k) as u64, for sizes used in counting checks.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_small_boxes() {
        // [TRIVIAL] two lattice points
        let got = enumerate_box(BoxContext::new(1, 2));
        assert_eq!(got, vec![p(&[]), p(&[1])]);

        // [DERIVED] direct enumeration; count = binomial(4,2) = 6
        let got = enumerate_box(BoxContext::new(2, 4));
        assert_eq!(
            got,
            vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])]
        );

        // [TRIVIAL] empty box
        let got = enumerate_box(BoxContext::new(2, 2));
        assert_eq!(got, vec![p(&[])]);
    }

    #[test]
    fn enumerate_counts() {
        for r in 1..=6usize {
            for k in 0..=6usize {
                let got = enumerate_box(BoxContext { r, k });
                assert_eq!(got.len() as u64, binomial((r + k) as u64, r as u64), "r={} k={}", r, k);
                // strictly increasing in the canonical order, so byte-stable
                assert!(got.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        // [TRIVIAL] self-conjugate hook
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        // [TRIVIAL] row/column flip
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
        // [TRIVIAL] identity case
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn conjugate_involution() {
        // all partitions with <= 12 boxes
        let mut all = Vec::new();
        for r in 1..=12usize {
            for lam in enumerate_box(BoxContext { r, k: 12 }) {
                if lam.weight() <= 12 {
                    all.push(lam);
                }
            }
        }
        for lam in all {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn complement_examples() {
        let ctx = BoxContext::new(2, 4);
        // [TRIVIAL] (2-0, 2-1)
        assert_eq!(complement(&p(&[1]), ctx), p(&[2, 1]));
        // [TRIVIAL] full box complements to empty
        assert_eq!(complement(&p(&[2, 2]), ctx), Partition::empty());
        // [TRIVIAL] empty complements to full box
        assert_eq!(complement(&Partition::empty(), ctx), p(&[2, 2]));
    }

    #[test]
    fn complement_involution() {
        for r in 1..=5usize {
            for k in 0..=5usize {
                let ctx = BoxContext { r, k };
                for lam in enumerate_box(ctx) {
                    let c = complement(&lam, ctx);
                    assert_eq!(complement(&c, ctx), lam);
                    assert_eq!(lam.weight() + c.weight(), (r * k) as u64);
                }
            }
        }
    }

    #[test]
    #[should_panic]
    fn complement_rejects_outside_box() {
        complement(&p(&[3]), BoxContext::new(2, 4));
    }

    #[test]
    fn json_round_trip() {
        let lam = p(&[2, 1]);
        assert_eq!(serde_json::to_string(&lam).unwrap(), "[2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
