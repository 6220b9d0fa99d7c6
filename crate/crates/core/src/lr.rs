//! Littlewood–Richardson coefficients by enumeration of LR skew tableaux.
//!
//! `c^ν_{λ,μ}` counts fillings of the skew shape ν/λ with content μ that are weakly
//! increasing along rows, strictly increasing down columns, and whose reverse reading word
//! (rows top to bottom, each row right to left) is a lattice word.
//!
//! Strip convention: `c^ν_{λ,(k)}` is the Pieri coefficient, 1 exactly when ν/λ is a
//! horizontal strip of k boxes (at most one box per column) and 0 otherwise. Every consumer
//! of one-row LR coefficients in this crate relies on this reading.

use crate::partition::Partition;

/// `c^ν_{λ,μ}` by direct tableau enumeration, without caching.
pub fn lr_tableaux_count(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.size() + mu.size() != nu.size() || !nu.contains(lam) || !nu.contains(mu) {
        return 0;
    }
    // Skew by the larger factor so fewer cells are filled.
    let (outer_inner, content) = if lam.size() >= mu.size() {
        (lam, mu)
    } else {
        (mu, lam)
    };
    if content.is_empty() {
        return 1;
    }
    let filler = Filler::new(nu, outer_inner, content);
    filler.count()
}

struct Filler<'a> {
    nu: &'a Partition,
    inner: &'a Partition,
    content: &'a [u32],
    /// Cells in reading order: rows top to bottom, right to left within a row.
    cells: Vec<(usize, usize)>,
}

impl<'a> Filler<'a> {
    fn new(nu: &'a Partition, inner: &'a Partition, content: &'a Partition) -> Self {
        let mut cells = Vec::with_capacity((nu.size() - inner.size()) as usize);
        for r in 0..nu.len() {
            for c in (inner.part(r) as usize..nu.part(r) as usize).rev() {
                cells.push((r, c));
            }
        }
        Filler {
            nu,
            inner,
            content: content.parts(),
            cells,
        }
    }

    fn count(&self) -> u64 {
        let width = self.nu.first() as usize;
        let mut grid = vec![vec![0u32; width]; self.nu.len()];
        let mut used = vec![0u32; self.content.len() + 1];
        self.fill(0, &mut grid, &mut used)
    }

    fn fill(&self, idx: usize, grid: &mut [Vec<u32>], used: &mut [u32]) -> u64 {
        let Some(&(r, c)) = self.cells.get(idx) else {
            return 1;
        };
        // Row weakly increases left to right; we fill right to left.
        let mut hi = self.content.len() as u32;
        if c + 1 < self.nu.part(r) as usize {
            hi = hi.min(grid[r][c + 1]);
        }
        // Column strictly increases downward, only against cells of the skew shape.
        let mut lo = 1;
        if r > 0 && c >= self.inner.part(r - 1) as usize {
            lo = grid[r - 1][c] + 1;
        }
        // The lattice condition bounds letters in row r by r + 1.
        hi = hi.min(r as u32 + 1);
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if used[vi] >= self.content[vi - 1] {
                continue;
            }
            if v > 1 && used[vi] + 1 > used[vi - 1] {
                continue;
            }
            grid[r][c] = v;
            used[vi] += 1;
            total += self.fill(idx + 1, grid, used);
            used[vi] -= 1;
        }
        grid[r][c] = 0;
        total
    }
}

/// `c^ν_{λ,(k)}`: 1 iff ν/λ is a horizontal strip of size k.
pub fn pieri(lam: &Partition, k: u32, nu: &Partition) -> u64 {
    u64::from(lam.size() + k == nu.size() && nu.is_horizontal_strip_over(lam))
}
