//! Irreducible characters of symmetric groups via the Murnaghan–Nakayama rule.
//!
//! Rim hooks are removed on the abacus: with β-numbers `β_i = λ_i + ℓ − 1 − i`, removing a
//! rim hook of length r moves one bead from β to β − r (which must be vacant), and the sign
//! is `(−1)^h` where h counts the beads strictly between the two positions.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::partition::{partitions, CycleType, Partition};

/// (shape, remaining cycles).
type MnKey = (Vec<u32>, Vec<u32>);

/// Memo for Murnaghan–Nakayama sub-problems, keyed by (remaining shape, remaining cycles).
///
/// Safe to share between threads; concurrent callers may compute the same entry twice but
/// always store the same value.
#[derive(Default)]
pub struct MnCache {
    memo: RwLock<HashMap<MnKey, i64>>,
}

impl MnCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `χ^λ(ρ)`.
    pub fn character_value(&self, lam: &Partition, rho: &CycleType) -> Result<i64> {
        if lam.size() != rho.degree() {
            return Err(Error::SizeMismatch(format!(
                "character of {lam} at class {rho}: |λ| = {} but |ρ| = {}",
                lam.size(),
                rho.degree()
            )));
        }
        self.eval(lam.parts(), rho.cycles().parts())
    }

    fn eval(&self, shape: &[u32], cycles: &[u32]) -> Result<i64> {
        let Some((&r, rest)) = cycles.split_first() else {
            return Ok(if shape.is_empty() { 1 } else { 0 });
        };
        // Whole shape is one row or column and one cycle remains: χ = ±1 directly.
        if rest.is_empty() {
            return Ok(single_hook_value(shape, r));
        }
        let key = (shape.to_vec(), cycles.to_vec());
        if let Some(&v) = self.memo.read().unwrap().get(&key) {
            return Ok(v);
        }
        let mut total: i64 = 0;
        for (next, sign) in rim_hook_removals(shape, r) {
            let v = self.eval(&next, rest)?;
            total = total
                .checked_add(sign * v)
                .ok_or(Error::Overflow("Murnaghan–Nakayama sum"))?;
        }
        self.memo.write().unwrap().entry(key).or_insert(total);
        Ok(total)
    }
}

/// χ^λ at an r-cycle when |λ| = r: nonzero only for hooks, value (−1)^{leg}.
fn single_hook_value(shape: &[u32], r: u32) -> i64 {
    let size: u32 = shape.iter().sum();
    if size != r {
        return 0;
    }
    let is_hook = shape.iter().skip(1).all(|&p| p == 1);
    if !is_hook {
        return 0;
    }
    if (shape.len() - 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All shapes obtained by removing a rim hook of length r, with their signs.
fn rim_hook_removals(shape: &[u32], r: u32) -> Vec<(Vec<u32>, i64)> {
    let len = shape.len() as u32;
    let beta: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i as u32))
            .filter(|&p| p > 0)
            .collect();
        out.push((parts, sign));
    }
    out
}

/// Complete character table of S_n.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: u32,
    partitions: Vec<Partition>,
    classes: Vec<CycleType>,
    /// `values[i][j] = χ^{partitions[i]}(classes[j])`.
    values: Vec<Vec<i64>>,
    class_sizes: Vec<u128>,
    row_index: HashMap<Partition, usize>,
    col_index: HashMap<CycleType, usize>,
}

impl CharacterTable {
    pub fn build(n: u32, cache: &MnCache) -> Result<Self> {
        let partitions = partitions(n);
        let classes: Vec<CycleType> = partitions.iter().cloned().map(CycleType::new).collect();
        let class_sizes = classes
            .iter()
            .map(|c| c.class_size().ok_or(Error::Overflow("class size")))
            .collect::<Result<Vec<_>>>()?;
        let values = partitions
            .iter()
            .map(|lam| {
                classes
                    .iter()
                    .map(|rho| cache.character_value(lam, rho))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let row_index = partitions.iter().cloned().zip(0..).collect();
        let col_index = classes.iter().cloned().zip(0..).collect();
        Ok(CharacterTable {
            n,
            partitions,
            classes,
            values,
            class_sizes,
            row_index,
            col_index,
        })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Row labels, canonical order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Column labels, canonical order.
    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn row(&self, lam: &Partition) -> Option<&[i64]> {
        self.row_index.get(lam).map(|&i| self.values[i].as_slice())
    }

    pub fn value(&self, lam: &Partition, rho: &CycleType) -> Option<i64> {
        let i = *self.row_index.get(lam)?;
        let j = *self.col_index.get(rho)?;
        Some(self.values[i][j])
    }

    /// `Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ)`, which equals `n!·δ_{λμ}` for a sound table.
    pub fn inner_product_unnormalized(&self, lam: &Partition, mu: &Partition) -> Option<i128> {
        let (a, b) = (self.row(lam)?, self.row(mu)?);
        let mut total: i128 = 0;
        for ((&x, &y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            let term = (size as i128)
                .checked_mul(x as i128)?
                .checked_mul(y as i128)?;
            total = total.checked_add(term)?;
        }
        Some(total)
    }
}
