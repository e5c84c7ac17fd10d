//! Partition combinatorics: the shapes indexing module bases.
//!
//! Three kinds of shapes occur: finite nonnegative partitions (Fock basis,
//! trailing zeros trimmed), ℤ-valued weakly decreasing length-N tuples
//! (W^N basis), and tail-stabilized infinite shapes (resonance basis: a
//! finite prefix that eventually agrees with the periodic tail λ⁰).

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("nonnegative partition has a negative part: {0:?}")]
    NegativePart(Vec<i64>),
    #[error("dominance comparison requires equal weights ({0} vs {1})")]
    WeightMismatch(i64, i64),
    #[error("tail offsets must satisfy 0 <= c_1 <= ... <= c_(k-1) <= r")]
    BadTailOffsets,
    #[error("prefix does not stabilize to the tail")]
    NotStabilized,
}

/// A weakly decreasing integer sequence. For the nonnegative kind trailing
/// zeros are trimmed, so the empty partition is `[]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<i64>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Partition {
    /// Nonnegative partition; trailing zeros are trimmed.
    pub fn nonneg(mut parts: Vec<i64>) -> Result<Self, PartitionError> {
        if !is_weakly_decreasing(&parts) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(PartitionError::NegativePart(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// ℤ-valued weakly decreasing tuple of fixed length (no trimming).
    pub fn zvalued(parts: Vec<i64>) -> Result<Self, PartitionError> {
        if !is_weakly_decreasing(&parts) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part access; beyond the stored length the value is 0
    /// (the Fock convention).
    pub fn part(&self, i: usize) -> i64 {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// λ + 𝟙ᵢ (1-based row), None when the result is not weakly decreasing.
    /// For nonnegative partitions i may be len()+1 (adding a new row).
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        let mut parts = self.parts.clone();
        if i == parts.len() + 1 {
            parts.push(0);
        }
        if i > parts.len() {
            return None;
        }
        parts[i - 1] += 1;
        if i >= 2 && parts[i - 2] < parts[i - 1] {
            return None;
        }
        Some(Partition { parts })
    }

    /// λ − 𝟙ᵢ, None when not weakly decreasing; trims a trailing zero for
    /// nonnegative shapes.
    pub fn remove_box(&self, i: usize) -> Option<Partition> {
        if i > self.parts.len() {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i - 1] -= 1;
        if i < parts.len() && parts[i - 1] < parts[i] {
            return None;
        }
        while parts.last() == Some(&0) && parts.iter().all(|&p| p >= 0) {
            parts.pop();
        }
        Some(Partition { parts })
    }

    pub fn padded(&self, n: usize) -> Vec<i64> {
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }

    /// (k,r)-admissibility on a length-N tuple: λᵢ − λᵢ₊ₖ ≥ r for
    /// 1 ≤ i ≤ N−k. Shapes with N ≤ k have no constraints.
    pub fn is_admissible(&self, k: usize, r: i64) -> bool {
        let n = self.parts.len();
        if n <= k {
            return true;
        }
        (1..=n - k).all(|i| self.part(i) - self.part(i + k) >= r)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

fn is_weakly_decreasing(parts: &[i64]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

/// Dominance order on equal-weight shapes (padded to a common length):
/// μ ≤ λ iff every prefix sum of μ is ≤ the matching prefix sum of λ.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool, PartitionError> {
    if mu.weight() != lambda.weight() {
        return Err(PartitionError::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let n = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0i64, 0i64);
    for i in 1..=n {
        sm += mu.part(i);
        sl += lambda.part(i);
        if sm > sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The tail data (k, r, c₁…c_{k−1}) of a resonance module, with
/// λ⁰_{νk+i+1} = −νr − cᵢ (c₀ = 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TailSpec {
    pub k: i64,
    pub r: i64,
    pub c: Vec<i64>,
}

impl TailSpec {
    pub fn new(k: i64, r: i64, c: Vec<i64>) -> Result<Self, PartitionError> {
        if k < 1 || r < 2 || c.len() != (k - 1) as usize {
            return Err(PartitionError::BadTailOffsets);
        }
        let mut prev = 0i64; // c_0 = 0
        for &ci in &c {
            if ci < prev || ci > r {
                return Err(PartitionError::BadTailOffsets);
            }
            prev = ci;
        }
        Ok(TailSpec { k, r, c })
    }

    fn offset(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// λ⁰_j for j ≥ 1.
    pub fn tail_value(&self, j: i64) -> i64 {
        debug_assert!(j >= 1);
        let nu = (j - 1).div_euclid(self.k);
        let i = (j - 1).rem_euclid(self.k);
        -nu * self.r - self.offset(i as usize)
    }

    /// All valid offset vectors c for given (k, r).
    pub fn all_offsets(k: i64, r: i64) -> Vec<Vec<i64>> {
        fn rec(k: usize, r: i64, prev: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in prev..=r {
                cur.push(v);
                rec(k, r, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec((k - 1) as usize, r, 0, &mut Vec::new(), &mut out);
        out
    }
}

/// A tail-stabilized shape: λ agrees with λ⁰ from index `prefix.len()+1` on.
/// The stored prefix is minimal (its last entry differs from the tail), so
/// equal shapes have equal representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailedPartition {
    spec: TailSpec,
    prefix: Vec<i64>,
}

impl fmt::Debug for TailedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TailedPartition {
    pub fn new(spec: TailSpec, mut prefix: Vec<i64>) -> Result<Self, PartitionError> {
        // canonical: drop prefix entries that already equal the tail
        while let Some(&last) = prefix.last() {
            if last == spec.tail_value(prefix.len() as i64) {
                prefix.pop();
            } else {
                break;
            }
        }
        let t = TailedPartition { spec, prefix };
        // weak decrease across the prefix and one period past it
        let upto = t.prefix.len() as i64 + t.spec.k + 1;
        for j in 1..upto {
            if t.part(j) < t.part(j + 1) {
                return Err(PartitionError::NotDecreasing(t.prefix));
            }
        }
        // entries must lie weakly above the tail
        for (j, &v) in t.prefix.iter().enumerate() {
            if v < t.spec.tail_value(j as i64 + 1) {
                return Err(PartitionError::NotStabilized);
            }
        }
        Ok(t)
    }

    pub fn vacuum(spec: TailSpec) -> Self {
        TailedPartition {
            spec,
            prefix: Vec::new(),
        }
    }

    pub fn spec(&self) -> &TailSpec {
        &self.spec
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Index from which λ equals λ⁰ (1-based; 1 for the vacuum).
    pub fn stabilization_index(&self) -> i64 {
        self.prefix.len() as i64 + 1
    }

    pub fn part(&self, j: i64) -> i64 {
        debug_assert!(j >= 1);
        self.prefix
            .get((j - 1) as usize)
            .copied()
            .unwrap_or_else(|| self.spec.tail_value(j))
    }

    /// Weight above the tail: Σ (λⱼ − λ⁰ⱼ), a finite nonnegative integer.
    pub fn rel_weight(&self) -> i64 {
        self.prefix
            .iter()
            .enumerate()
            .map(|(j, &v)| v - self.spec.tail_value(j as i64 + 1))
            .sum()
    }

    /// λ ± 𝟙ⱼ as a tailed shape; None when invalid.
    pub fn shift_box(&self, j: i64, delta: i64) -> Option<TailedPartition> {
        let mut prefix = self.prefix.clone();
        while (prefix.len() as i64) < j {
            prefix.push(self.spec.tail_value(prefix.len() as i64 + 1));
        }
        prefix[(j - 1) as usize] += delta;
        TailedPartition::new(self.spec.clone(), prefix).ok()
    }

    /// Admissibility λᵢ − λᵢ₊ₖ ≥ r, checked on the prefix plus one tail
    /// period (sufficient by periodicity of the tail).
    pub fn is_admissible(&self) -> bool {
        let upto = self.prefix.len() as i64 + self.spec.k;
        for i in 1..=upto {
            if self.part(i) - self.part(i + self.spec.k) < self.spec.r {
                return false;
            }
        }
        true
    }

    /// The length-N truncation (λ₁, …, λ_N).
    pub fn truncate(&self, n: usize) -> Vec<i64> {
        (1..=n as i64).map(|j| self.part(j)).collect()
    }
}

impl fmt::Display for TailedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        if !self.prefix.is_empty() {
            write!(f, ",")?;
        }
        write!(f, "tail(k={},r={})]", self.spec.k, self.spec.r)
    }
}

impl Serialize for TailedPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TailedPartition", 4)?;
        st.serialize_field("prefix", &self.prefix)?;
        st.serialize_field("k", &self.spec.k)?;
        st.serialize_field("r", &self.spec.r)?;
        st.serialize_field("c", &self.spec.c)?;
        st.end()
    }
}

/// All nonnegative partitions of exact weight w.
pub fn partitions_of(w: i64) -> Vec<Partition> {
    fn rec(remaining: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: cur.clone(),
            });
            return;
        }
        let top = remaining.min(max);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, w, &mut Vec::new(), &mut out);
    out
}

/// All nonnegative partitions of weight ≤ w, in graded lexicographic order
/// (weight ascending, then lexicographically descending).
pub fn partitions_up_to(w: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    for k in 0..=w {
        let mut layer = partitions_of(k);
        layer.sort_by(|a, b| b.parts.cmp(&a.parts));
        out.extend(layer);
    }
    out
}

/// Partitions of exact weight w with at most n parts.
pub fn partitions_of_max_len(w: i64, n: usize) -> Vec<Partition> {
    partitions_of(w).into_iter().filter(|p| p.len() <= n).collect()
}

/// All weakly decreasing length-n tuples with entries in [lo, hi], graded by
/// entry sum then lexicographically descending.
pub fn zvalued_tuples(n: usize, lo: i64, hi: i64) -> Vec<Partition> {
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for v in lo..=top {
            cur.push(v);
            rec(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, lo, hi, &mut Vec::new(), &mut raw);
    raw.sort_by(|a, b| {
        let (sa, sb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    raw.into_iter().map(|parts| Partition { parts }).collect()
}

/// All admissible tail-stabilized shapes with relative weight ≤ w, graded by
/// relative weight then lexicographically descending on the prefix.
pub fn tailed_up_to(spec: &TailSpec, w: i64) -> Vec<TailedPartition> {
    // A row deviating from the tail forces the row k above it to deviate,
    // so deviations live in the first w·k rows.
    let max_rows = (w * spec.k) as usize;
    let mut out: Vec<TailedPartition> = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    fn rec(
        spec: &TailSpec,
        w_left: i64,
        row: usize,
        max_rows: usize,
        cur: &mut Vec<i64>,
        out: &mut Vec<TailedPartition>,
    ) {
        if let Ok(t) = TailedPartition::new(spec.clone(), cur.clone()) {
            if t.is_admissible() {
                out.push(t);
            }
        }
        if row > max_rows {
            return;
        }
        let j = row as i64;
        let tail = spec.tail_value(j);
        let upper = if row == 1 {
            tail + w_left
        } else {
            cur[row - 2].min(tail + w_left)
        };
        for v in (tail..=upper).rev() {
            // admissibility against row j-k
            if row > spec.k as usize {
                let above = cur[row - 1 - spec.k as usize];
                if above - v < spec.r {
                    continue;
                }
            }
            cur.push(v);
            rec(spec, w_left - (v - tail), row + 1, max_rows, cur, out);
            cur.pop();
        }
    }
    rec(spec, w, 1, max_rows, &mut cur, &mut out);
    out.sort_by(|a, b| {
        a.rel_weight()
            .cmp(&b.rel_weight())
            .then_with(|| b.prefix.cmp(&a.prefix))
    });
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::nonneg(parts.to_vec()).unwrap()
    }

    fn z(parts: &[i64]) -> Partition {
        Partition::zvalued(parts.to_vec()).unwrap()
    }

    #[test]
    fn admissibility_definition() {
        // (2,0) is (1,2)-admissible as a 2-tuple, (1,0) is not
        assert!(z(&[2, 0]).is_admissible(1, 2));
        assert!(!z(&[1, 0]).is_admissible(1, 2));
        // length <= k has no constraints
        assert!(z(&[1]).is_admissible(1, 2));
    }

    #[test]
    fn no_monotonicity_of_admissibility_under_box_adding() {
        // is_admissible(λ+1_i) does not imply is_admissible(λ): adding a box
        // to the inadmissible (1,0) gives the admissible (2,0)
        assert!(!z(&[1, 0]).is_admissible(1, 2));
        assert!(z(&[2, 0]).is_admissible(1, 2));
        // and adding elsewhere breaks admissibility: (2,0) -> (2,1)
        assert!(!z(&[2, 1]).is_admissible(1, 2));
    }

    #[test]
    fn tail_values() {
        // k=1, r=2: 0, -2, -4, -6, ...
        let spec = TailSpec::new(1, 2, vec![]).unwrap();
        assert_eq!(
            (1..=4).map(|j| spec.tail_value(j)).collect::<Vec<_>>(),
            vec![0, -2, -4, -6]
        );
        // k=2, r=2, c=(1): 0, -1, -2, -3, -4, ...
        let spec = TailSpec::new(2, 2, vec![1]).unwrap();
        assert_eq!(
            (1..=5).map(|j| spec.tail_value(j)).collect::<Vec<_>>(),
            vec![0, -1, -2, -3, -4]
        );
        // j = 1 is always 0
        for (k, r) in [(1, 2), (2, 2), (2, 3), (3, 4)] {
            for c in TailSpec::all_offsets(k, r) {
                let spec = TailSpec::new(k, r, c).unwrap();
                assert_eq!(spec.tail_value(1), 0);
            }
        }
    }

    #[test]
    fn tail_is_decreasing_and_exactly_k_r_periodic() {
        for k in 1..=3i64 {
            for r in 2..=4i64 {
                for c in TailSpec::all_offsets(k, r) {
                    let spec = TailSpec::new(k, r, c).unwrap();
                    for j in 1..=50i64 {
                        assert!(spec.tail_value(j) >= spec.tail_value(j + 1));
                        assert_eq!(spec.tail_value(j) - spec.tail_value(j + k), r);
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[2, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[1]), &p(&[2])).is_err());
    }

    #[test]
    fn enumeration_orders() {
        let w3: Vec<_> = partitions_of(3);
        assert_eq!(
            w3,
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        let z = zvalued_tuples(2, 0, 1);
        assert_eq!(
            z.iter().map(|q| q.parts().to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 0], vec![1, 0], vec![1, 1]]
        );
        let spec = TailSpec::new(1, 2, vec![]).unwrap();
        let t = tailed_up_to(&spec, 1);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], TailedPartition::vacuum(spec.clone()));
        assert_eq!(t[1].part(1), 1);
        assert_eq!(t[1].part(2), spec.tail_value(2));
    }

    #[test]
    fn tailed_canonical_form_and_weight() {
        let spec = TailSpec::new(2, 2, vec![1]).unwrap();
        // prefix explicitly spelling out tail values collapses to the vacuum
        let t = TailedPartition::new(spec.clone(), vec![0, -1, -2]).unwrap();
        assert_eq!(t, TailedPartition::vacuum(spec.clone()));
        assert_eq!(t.rel_weight(), 0);
        let t = TailedPartition::new(spec, vec![2, -1, -1]).unwrap();
        assert_eq!(t.prefix(), &[2, -1, -1]);
        assert_eq!(t.rel_weight(), 2 + 0 + 1);
    }

    #[test]
    fn tailed_enumeration_respects_admissibility() {
        for (k, r) in [(1i64, 2i64), (2, 2), (2, 3)] {
            for c in TailSpec::all_offsets(k, r) {
                let spec = TailSpec::new(k, r, c).unwrap();
                for t in tailed_up_to(&spec, 4) {
                    assert!(t.is_admissible());
                    // every row sits weakly above the tail
                    for j in 1..=(t.stabilization_index() + 2 * k) {
                        assert!(t.part(j) >= t.spec().tail_value(j));
                        assert!(t.part(j) >= t.part(j + 1));
                    }
                }
            }
        }
    }
}
