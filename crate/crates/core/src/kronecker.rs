//! Kronecker and reduced Kronecker coefficients.
//!
//! Three routes are provided:
//! - `kronecker_coeff`: the normalized triple character sum over conjugacy classes;
//! - `reduced_kronecker_limit`: `g_{λ[n],μ[n],ν[n]}` probed at two consecutive large n;
//! - `reduced_kronecker`: the six-partition sum of products of three three-factor LR
//!   coefficients and one Kronecker coefficient of small degree.
//!
//! The last is the production route; its Kronecker factors have degree at most
//! `min(|λ|, |μ|, |ν|)`, so it never needs large character tables.

use crate::coverage::{self, Op};
use crate::engine::{to_count, Engine};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::store::Key;

impl Engine {
    /// `g_{λ,μ,ν}`, the multiplicity of ν in λ ⊗ μ for S_n.
    pub fn kronecker_coeff(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        coverage::hit(Op::KroneckerCoeff);
        let n = lam.size();
        if mu.size() != n || nu.size() != n {
            return Err(Error::SizeMismatch(format!(
                "Kronecker coefficient needs equal sizes, got {lam}, {mu}, {nu}"
            )));
        }
        self.check_degree(n)?;
        let v = self.memo(Key::kron(lam, mu, nu), || {
            let sum = self.kronecker_character_sum(lam, mu, nu)?;
            let fact =
                crate::partition::factorial_u128(n).ok_or(Error::Overflow("factorial"))? as i128;
            if sum < 0 || sum % fact != 0 {
                return Err(Error::NonIntegral(format!(
                    "{lam}, {mu}, {nu}: sum {sum} over {n}!"
                )));
            }
            Ok(sum / fact)
        })?;
        to_count(v)
    }

    /// `Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ) χ^ν(ρ)`, exactly `n!·g_{λ,μ,ν}` when the table is sound.
    pub fn kronecker_character_sum(
        &self,
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<i128> {
        let n = lam.size();
        if mu.size() != n || nu.size() != n {
            return Err(Error::SizeMismatch(format!(
                "character sum needs equal sizes, got {lam}, {mu}, {nu}"
            )));
        }
        let table = self.character_table(n)?;
        let rows = [lam, mu, nu].map(|p| table.row(p).expect("row of table degree"));
        let overflow = Error::Overflow("Kronecker character sum");
        let mut sum: i128 = 0;
        for (j, &size) in table.class_sizes().iter().enumerate() {
            let term = i128::try_from(size)
                .ok()
                .and_then(|s| s.checked_mul(rows[0][j] as i128))
                .and_then(|t| t.checked_mul(rows[1][j] as i128))
                .and_then(|t| t.checked_mul(rows[2][j] as i128))
                .and_then(|t| sum.checked_add(t));
            sum = match term {
                Some(s) => s,
                None => return Err(overflow),
            };
        }
        Ok(sum)
    }

    /// `ḡ_{λ,μ,ν}` as the limit of `g_{λ[n],μ[n],ν[n]}`, probed at
    /// `n₀ = |λ|+|μ|+|ν| + max(λ₁, μ₁, ν₁, 1)` and `n₀ + 1`.
    ///
    /// The probe point is a heuristic; disagreement between the probes is reported as
    /// `NotStabilized` rather than searched past.
    pub fn reduced_kronecker_limit(
        &self,
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<u64> {
        coverage::hit(Op::ReducedKroneckerLimit);
        let n0 =
            lam.size() + mu.size() + nu.size() + lam.first().max(mu.first()).max(nu.first()).max(1);
        self.check_degree(n0 + 1)?;
        let probe = |n: u32| -> Result<u64> {
            self.kronecker_coeff(&lam.pad(n)?, &mu.pad(n)?, &nu.pad(n)?)
        };
        let first = probe(n0)?;
        let second = probe(n0 + 1)?;
        if first != second {
            return Err(Error::NotStabilized {
                operands: format!("{lam}, {mu}, {nu}"),
                n: n0,
                first,
                second,
            });
        }
        Ok(first)
    }

    /// `ḡ_{λ,μ,ν} = Σ c^λ_{α,β,π} c^μ_{α,γ,ρ} c^ν_{β,γ,σ} g_{π,ρ,σ}`.
    pub fn reduced_kronecker(
        &self,
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<u64> {
        coverage::hit(Op::ReducedKronecker);
        let v = self.memo(Key::rkron(lam, mu, nu), || {
            self.reduced_kronecker_sum(lam, mu, nu).map(i128::from)
        })?;
        to_count(v)
    }

    fn reduced_kronecker_sum(
        &self,
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<u64> {
        let (l, m, n) = (
            i64::from(lam.size()),
            i64::from(mu.size()),
            i64::from(nu.size()),
        );
        let overflow = || Error::Overflow("reduced Kronecker sum");
        let mut total: u64 = 0;
        // |π| = |ρ| = |σ| = d, and |α|+|β| = l−d, |α|+|γ| = m−d, |β|+|γ| = n−d.
        for d in 0..=l.min(m).min(n) {
            let twice = l + m + n - 3 * d;
            if twice % 2 != 0 {
                continue;
            }
            let half = twice / 2;
            let (a, b, c) = (half - (n - d), half - (m - d), half - (l - d));
            if a < 0 || b < 0 || c < 0 {
                continue;
            }
            let inner = self.partitions_of(d as u32);
            let alphas = self.partitions_of(a as u32);
            let betas = self.partitions_of(b as u32);
            let gammas = self.partitions_of(c as u32);
            for alpha in alphas.iter().filter(|x| lam.contains(x) && mu.contains(x)) {
                for beta in betas.iter().filter(|x| lam.contains(x) && nu.contains(x)) {
                    let lam_row = self.lr3_row(alpha, beta, &inner, lam)?;
                    if lam_row.is_empty() {
                        continue;
                    }
                    for gamma in gammas.iter().filter(|x| mu.contains(x) && nu.contains(x)) {
                        let mu_row = self.lr3_row(alpha, gamma, &inner, mu)?;
                        if mu_row.is_empty() {
                            continue;
                        }
                        let nu_row = self.lr3_row(beta, gamma, &inner, nu)?;
                        for &(pi, x) in &lam_row {
                            for &(rho, y) in &mu_row {
                                for &(sigma, z) in &nu_row {
                                    let g = self.kronecker_coeff(
                                        &inner[pi],
                                        &inner[rho],
                                        &inner[sigma],
                                    )?;
                                    if g == 0 {
                                        continue;
                                    }
                                    let term = x
                                        .checked_mul(y)
                                        .and_then(|t| t.checked_mul(z))
                                        .and_then(|t| t.checked_mul(g))
                                        .ok_or_else(overflow)?;
                                    total = total.checked_add(term).ok_or_else(overflow)?;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(total)
    }

    /// Nonzero `(index of π, c^outer_{x,y,π})` over π in `inner`.
    fn lr3_row(
        &self,
        x: &Partition,
        y: &Partition,
        inner: &[Partition],
        outer: &Partition,
    ) -> Result<Vec<(usize, u64)>> {
        let mut row = Vec::new();
        for (i, pi) in inner.iter().enumerate() {
            if !outer.contains(pi) {
                continue;
            }
            let c = self.lr_coeff3(x, y, pi, outer)?;
            if c != 0 {
                row.push((i, c));
            }
        }
        Ok(row)
    }

    /// `ḡ_{λ,μ,(k)} = Σ_{α,π; k₁+k₂+|π| = k} c^λ_{π,α,(k₁)} c^μ_{π,α,(k₂)}`.
    pub fn reduced_kronecker_onerow(&self, lam: &Partition, mu: &Partition, k: u32) -> Result<u64> {
        coverage::hit(Op::ReducedKroneckerOneRow);
        let v = self.memo(Key::rkron1row(lam, mu, k), || {
            self.onerow_sum(lam, mu, k).map(i128::from)
        })?;
        to_count(v)
    }

    fn onerow_sum(&self, lam: &Partition, mu: &Partition, k: u32) -> Result<u64> {
        let (l, m, k) = (i64::from(lam.size()), i64::from(mu.size()), i64::from(k));
        let overflow = || Error::Overflow("one-row reduced Kronecker sum");
        let mut total: u64 = 0;
        for p in 0..=l.min(m) {
            // |π| + |α| + k₁ = l, |π| + |α| + k₂ = m, k₁ + k₂ + |π| = k.
            let twice = l + m - p - k;
            if twice < 0 || twice % 2 != 0 {
                continue;
            }
            let a = twice / 2;
            let (k1, k2) = (l - p - a, m - p - a);
            if k1 < 0 || k2 < 0 {
                continue;
            }
            let (row1, row2) = (Partition::row(k1 as u32), Partition::row(k2 as u32));
            let pis = self.partitions_of(p as u32);
            let alphas = self.partitions_of(a as u32);
            for pi in pis.iter().filter(|x| lam.contains(x) && mu.contains(x)) {
                for alpha in alphas.iter().filter(|x| lam.contains(x) && mu.contains(x)) {
                    let left = self.lr_coeff3(pi, alpha, &row1, lam)?;
                    if left == 0 {
                        continue;
                    }
                    let right = self.lr_coeff3(pi, alpha, &row2, mu)?;
                    let term = left.checked_mul(right).ok_or_else(overflow)?;
                    total = total.checked_add(term).ok_or_else(overflow)?;
                }
            }
        }
        Ok(total)
    }
}
