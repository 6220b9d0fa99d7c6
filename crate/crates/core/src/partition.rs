//! Integer partitions and the operations on Young diagrams used everywhere else.
//!
//! Partitions are ordered canonically by size first, then reverse-lexicographically
//! within a size, so `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)`. Every enumeration in
//! the crate returns partitions in this order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coverage::{self, Op};
use crate::error::{Error, Result};

/// Upper bound on parts and sizes.
pub const MAX_PART: i64 = 1 << 31;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    /// Builds a partition from arbitrary integers, stripping trailing zeros.
    pub fn new(parts: &[i64]) -> Result<Self> {
        let mut end = parts.len();
        while end > 0 && parts[end - 1] == 0 {
            end -= 1;
        }
        let parts = &parts[..end];
        if let Some(&bad) = parts.iter().find(|&&p| p <= 0 || p > MAX_PART) {
            return Err(Error::InvalidPartition(format!(
                "part {bad} out of range in {parts:?}"
            )));
        }
        let parts: Vec<u32> = parts.iter().map(|&p| p as u32).collect();
        Self::from_parts(parts)
    }

    /// Builds a partition from non-negative parts; trailing zeros are stripped.
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        let size = parts
            .iter()
            .try_fold(0u32, |acc, &p| acc.checked_add(p))
            .filter(|&s| i64::from(s) <= MAX_PART)
            .ok_or_else(|| Error::InvalidPartition(format!("{parts:?} is too large")))?;
        Ok(Partition { parts, size })
    }

    /// Caller guarantees `parts` is weakly decreasing with no zeros.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(k)`; empty for `k = 0`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition {
                parts: vec![k],
                size: k,
            }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ₁`, or 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition {
            parts: cols,
            size: self.size,
        }
    }

    /// `λ[n] = (n − |λ|, λ₁, λ₂, …)`.
    pub fn pad(&self, total: u32) -> Result<Partition> {
        coverage::hit(Op::Pad);
        let needed = self.size + self.first();
        if total < needed {
            return Err(Error::NotPaddable {
                core: self.to_string(),
                total,
                needed,
            });
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        let head = total - self.size;
        if head > 0 {
            parts.push(head);
        }
        parts.extend_from_slice(&self.parts);
        Ok(Partition { parts, size: total })
    }

    /// Whether `self / inner` is a horizontal strip: `inner ⊆ self` and no two boxes of the
    /// skew diagram share a column, i.e. `self[i+1] <= inner[i]` for every row.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (0..self.len()).all(|i| self.part(i + 1) <= inner.part(i))
    }

    /// All `μ ⊆ self` with `|μ| = |self| − k` such that `self / μ` is a horizontal strip.
    pub fn horizontal_strip_removals(&self, k: u32) -> Vec<Partition> {
        coverage::hit(Op::HorizontalStripRemovals);
        if k > self.size {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; self.len()];
        // Suffix sums of the maximum removable counts, for pruning.
        let slack: Vec<u32> = (0..self.len())
            .map(|i| self.part(i) - self.part(i + 1))
            .collect();
        let mut slack_suffix = vec![0u32; self.len() + 1];
        for i in (0..self.len()).rev() {
            slack_suffix[i] = slack_suffix[i + 1] + slack[i];
        }
        self.strip_rec(0, k, &slack_suffix, &mut current, &mut out);
        out.sort();
        out
    }

    fn strip_rec(
        &self,
        row: usize,
        left: u32,
        slack_suffix: &[u32],
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row == self.len() {
            if left == 0 {
                let parts: Vec<u32> = current.iter().copied().filter(|&p| p > 0).collect();
                out.push(Partition::from_sorted(parts));
            }
            return;
        }
        if slack_suffix[row] < left {
            return;
        }
        let top = self.part(row);
        let floor = self.part(row + 1);
        let max_remove = (top - floor).min(left);
        for removed in 0..=max_remove {
            current[row] = top - removed;
            self.strip_rec(row + 1, left - removed, slack_suffix, current, out);
        }
    }

    /// Hook-length dimension of the irreducible S_n-module, as u128.
    pub fn dimension(&self) -> Option<u128> {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.part(j) as usize - i - 1;
                hooks = hooks.checked_mul((arm + leg + 1) as u128)?;
            }
        }
        Some(factorial_u128(self.size)? / hooks)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the bracket form `[3,2,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("expected [a,b,...], got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A padded partition `λ[n]`, kept as its core and total so the core stays visible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaddedPartition {
    core: Partition,
    total: u32,
}

impl PaddedPartition {
    pub fn new(core: Partition, total: u32) -> Result<Self> {
        core.pad(total)?;
        Ok(PaddedPartition { core, total })
    }

    pub fn core(&self) -> &Partition {
        &self.core
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn to_partition(&self) -> Partition {
        self.core
            .pad(self.total)
            .expect("validated at construction")
    }
}

/// A conjugacy class of S_n, labelled by its cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        CycleType(cycles)
    }

    pub fn identity(n: u32) -> Self {
        CycleType(Partition::from_sorted(vec![1; n as usize]))
    }

    pub fn cycles(&self) -> &Partition {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.size()
    }

    /// `(j, m_j)` for each cycle length j that occurs, ascending in j.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &c in self.0.parts().iter().rev() {
            match out.last_mut() {
                Some((j, m)) if *j == c => *m += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    /// Centralizer order `z_ρ = ∏ j^{m_j} m_j!`.
    pub fn centralizer_order(&self) -> Option<u128> {
        self.multiplicities()
            .into_iter()
            .try_fold(1u128, |acc, (j, m)| {
                let pow = (j as u128).checked_pow(m)?;
                acc.checked_mul(pow)?.checked_mul(factorial_u128(m)?)
            })
    }

    /// `n! / z_ρ`.
    pub fn class_size(&self) -> Option<u128> {
        Some(factorial_u128(self.degree())? / self.centralizer_order()?)
    }

    /// Sign of any permutation of this type: `(−1)^{n − #cycles}`.
    pub fn sign(&self) -> i64 {
        if (self.degree() as usize - self.0.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn factorial_u128(n: u32) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// All partitions of `n` in canonical (reverse-lexicographic) order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_rec(n, n, &mut current, &mut out);
    out
}

fn partitions_rec(left: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if left == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for first in (1..=max.min(left)).rev() {
        current.push(first);
        partitions_rec(left - first, first, current, out);
        current.pop();
    }
}

/// All partitions with `|λ| <= max_size`, canonical order.
pub fn partitions_up_to(max_size: u32) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions).collect()
}

/// The set of cores λ with `|λ| + λ₁ <= m`, i.e. those for which `λ[m]` exists.
pub fn padded_index_set(m: u32) -> Vec<Partition> {
    coverage::hit(Op::PaddedIndexSet);
    (0..=m)
        .flat_map(partitions)
        .filter(|p| p.size() + p.first() <= m)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn make_partition_strips_zeros() {
        let q = Partition::new(&[2, 1, 0]).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert_eq!(q.size(), 3);
        assert_eq!(Partition::new(&[]).unwrap().size(), 0);
        assert!(matches!(
            Partition::new(&[1, 2]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(&[2, -1]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(Partition::new(&[2, 0, 1]).is_err());
    }

    #[test]
    fn pad_examples() {
        assert_eq!(p(&[2, 1]).pad(5).unwrap(), p(&[2, 2, 1]));
        assert_eq!(p(&[2, 1]).pad(6).unwrap(), p(&[3, 2, 1]));
        assert!(matches!(
            p(&[2, 1]).pad(4),
            Err(Error::NotPaddable { needed: 5, .. })
        ));
        assert_eq!(Partition::empty().pad(4).unwrap(), p(&[4]));
        assert_eq!(Partition::empty().pad(0).unwrap(), Partition::empty());
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(
            partitions(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        // p(n) by Euler's pentagonal recurrence, independent of the generator above.
        let mut euler = vec![1i64; 1];
        for n in 1..=20i64 {
            let mut total = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * euler[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    total += sign * euler[(n - g2) as usize];
                }
            }
            euler.push(total);
        }
        for n in 0..=20u32 {
            let ps = partitions(n);
            assert_eq!(ps.len() as i64, euler[n as usize], "p({n})");
            let mut sorted = ps.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, ps, "canonical and duplicate-free at n={n}");
        }
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn padded_index_set_examples() {
        assert_eq!(padded_index_set(0), vec![Partition::empty()]);
        assert_eq!(padded_index_set(2), vec![Partition::empty(), p(&[1])]);
        assert_eq!(
            padded_index_set(4),
            vec![
                Partition::empty(),
                p(&[1]),
                p(&[2]),
                p(&[1, 1]),
                p(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn padded_index_set_matches_pad_domain() {
        for m in 0..=12 {
            let brute: Vec<Partition> = partitions_up_to(m)
                .into_iter()
                .filter(|l| l.pad(m).is_ok())
                .collect();
            assert_eq!(padded_index_set(m), brute, "m={m}");
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for q in partitions_up_to(12) {
            let c = q.conjugate();
            assert_eq!(c.size(), q.size());
            assert_eq!(c.conjugate(), q);
        }
    }

    #[test]
    fn strip_removal_examples() {
        let mut got = p(&[2, 1]).horizontal_strip_removals(1);
        got.sort();
        let mut want = vec![p(&[1, 1]), p(&[2])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(p(&[3, 2]).horizontal_strip_removals(0), vec![p(&[3, 2])]);
        assert_eq!(p(&[5]).horizontal_strip_removals(2), vec![p(&[3])]);
        assert!(p(&[1, 1]).horizontal_strip_removals(2).is_empty());
    }

    #[test]
    fn strip_removals_match_brute_force() {
        for outer in partitions_up_to(9) {
            for k in 0..=outer.size() {
                let got = outer.horizontal_strip_removals(k);
                let brute: Vec<Partition> = partitions(outer.size() - k)
                    .into_iter()
                    .filter(|inner| {
                        // Column lengths differ by at most one.
                        let (oc, ic) = (outer.conjugate(), inner.conjugate());
                        outer.contains(inner) && (0..oc.len()).all(|j| oc.part(j) - ic.part(j) <= 1)
                    })
                    .collect();
                assert_eq!(got, brute, "{outer} minus {k}");
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("[3,2,1]".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!(" [ 3, 2 ,1 ] ".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!(p(&[3, 2, 1]).to_string(), "[3,2,1]");
        assert!("3,2".parse::<Partition>().is_err());
        assert!("[1,x]".parse::<Partition>().is_err());
        assert!("[1,2]".parse::<Partition>().is_err());
    }

    #[test]
    fn cycle_type_class_sizes() {
        for n in 0..=10 {
            let total: u128 = partitions(n)
                .into_iter()
                .map(|c| CycleType::new(c).class_size().unwrap())
                .sum();
            assert_eq!(total, factorial_u128(n).unwrap());
        }
        let rho = CycleType::new(p(&[2, 2, 1]));
        assert_eq!(rho.multiplicities(), vec![(1, 1), (2, 2)]);
        assert_eq!(rho.centralizer_order(), Some(8));
        assert_eq!(rho.sign(), 1);
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(p(&[2, 1]).dimension(), Some(2));
        assert_eq!(p(&[3, 2]).dimension(), Some(5));
        assert_eq!(Partition::empty().dimension(), Some(1));
    }
}
