use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, RwLock};

use crate::characters::{CharacterTable, MnCache};
use crate::coverage::{self, Op};
use crate::error::{Error, Result};
use crate::lr::{lr_tableaux_count, pieri};
use crate::partition::{partitions, CycleType, Partition};
use crate::store::{read_records, Key, Kind, Operand, Record, Store};

/// Default cap on the degree of character tables (and hence Kronecker coefficients).
pub const DEFAULT_CAP: u32 = 12;

/// Computes every coefficient kind, memoizing through an optional [`Store`].
///
/// An engine is `Sync`; sweeps share one engine across worker threads.
pub struct Engine {
    cap: u32,
    store: Option<Arc<Store>>,
    mn: MnCache,
    tables: RwLock<HashMap<u32, Arc<CharacterTable>>>,
    partitions: RwLock<HashMap<u32, Arc<Vec<Partition>>>>,
    #[cfg(feature = "fault-injection")]
    lr_fault: Option<Key>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// An engine with the default cap and a fresh in-memory store.
    pub fn new() -> Self {
        Engine {
            cap: DEFAULT_CAP,
            store: Some(Arc::new(Store::in_memory())),
            mn: MnCache::new(),
            tables: RwLock::new(HashMap::new()),
            partitions: RwLock::new(HashMap::new()),
            #[cfg(feature = "fault-injection")]
            lr_fault: None,
        }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_store(mut self, store: Arc<Store>) -> Self {
        self.store = Some(store);
        self
    }

    /// Drops the coefficient store: every call recomputes from scratch.
    pub fn uncached(mut self) -> Self {
        self.store = None;
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn store(&self) -> Option<&Arc<Store>> {
        self.store.as_ref()
    }

    /// Makes `lr_coeff` report a wrong value for one triple. Internal sums are unaffected,
    /// so checks comparing against `lr_coeff` must notice.
    #[cfg(feature = "fault-injection")]
    pub fn inject_lr_fault(&mut self, lam: &Partition, mu: &Partition, nu: &Partition) {
        self.lr_fault = Some(Key::lr(lam, mu, nu));
    }

    pub(crate) fn memo<F>(&self, key: Key, compute: F) -> Result<i128>
    where
        F: FnOnce() -> Result<i128>,
    {
        match &self.store {
            Some(store) => store.get_or_compute(key, compute),
            None => compute(),
        }
    }

    pub(crate) fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.cap {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Partitions of n, canonical order, shared.
    pub fn partitions_of(&self, n: u32) -> Arc<Vec<Partition>> {
        if let Some(ps) = self.partitions.read().unwrap().get(&n) {
            return ps.clone();
        }
        let ps = Arc::new(partitions(n));
        self.partitions
            .write()
            .unwrap()
            .entry(n)
            .or_insert(ps)
            .clone()
    }

    /// `χ^λ(ρ)`.
    pub fn character_value(&self, lam: &Partition, rho: &CycleType) -> Result<i64> {
        if lam.size() != rho.degree() {
            return Err(Error::SizeMismatch(format!(
                "character of {lam} at class {rho}: sizes {} and {}",
                lam.size(),
                rho.degree()
            )));
        }
        let v = self.memo(Key::character(lam, rho.cycles()), || {
            self.mn.character_value(lam, rho).map(i128::from)
        })?;
        i64::try_from(v).map_err(|_| Error::Overflow("character value"))
    }

    /// Full character table of S_n; `DegreeTooLarge` above the cap.
    pub fn character_table(&self, n: u32) -> Result<Arc<CharacterTable>> {
        self.check_degree(n)?;
        if let Some(t) = self.tables.read().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let table = Arc::new(CharacterTable::build(n, &self.mn)?);
        Ok(self
            .tables
            .write()
            .unwrap()
            .entry(n)
            .or_insert(table)
            .clone())
    }

    /// `c^ν_{λ,μ}`; 0 when sizes do not add up or λ, μ ⊄ ν.
    pub fn lr_coeff(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        coverage::hit(Op::LrCoeff);
        let v = self.lr_inner(lam, mu, nu)?;
        #[cfg(feature = "fault-injection")]
        if self.lr_fault.as_ref() == Some(&Key::lr(lam, mu, nu)) {
            return Ok(if v == 0 { 1 } else { v - 1 });
        }
        Ok(v)
    }

    pub(crate) fn lr_inner(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        if lam.size() + mu.size() != nu.size() || !nu.contains(lam) || !nu.contains(mu) {
            return Ok(0);
        }
        if lam.is_empty() || mu.is_empty() {
            return Ok(1);
        }
        let v = self.memo(Key::lr(lam, mu, nu), || {
            Ok(i128::from(lr_tableaux_count(lam, mu, nu)))
        })?;
        to_count(v)
    }

    /// `c^ν_{λ,(k)}` by Pieri's rule (horizontal strips).
    pub fn pieri_coeff(&self, lam: &Partition, k: u32, nu: &Partition) -> u64 {
        coverage::hit(Op::PieriCoeff);
        pieri(lam, k, nu)
    }

    /// `c^ν_{α,β,γ} = Σ_ξ c^ν_{α,ξ} c^ξ_{β,γ}`.
    pub fn lr_coeff3(
        &self,
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
        nu: &Partition,
    ) -> Result<u64> {
        coverage::hit(Op::LrCoeff3);
        self.lr3_inner(alpha, beta, gamma, nu)
    }

    pub(crate) fn lr3_inner(
        &self,
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
        nu: &Partition,
    ) -> Result<u64> {
        let inner = beta.size() + gamma.size();
        if alpha.size() + inner != nu.size()
            || !nu.contains(alpha)
            || !nu.contains(beta)
            || !nu.contains(gamma)
        {
            return Ok(0);
        }
        // One empty factor reduces to a plain LR coefficient.
        if alpha.is_empty() {
            return self.lr_inner(beta, gamma, nu);
        }
        if beta.is_empty() {
            return self.lr_inner(alpha, gamma, nu);
        }
        if gamma.is_empty() {
            return self.lr_inner(alpha, beta, nu);
        }
        let v = self.memo(Key::lr3(alpha, beta, gamma, nu), || {
            let mut total: u64 = 0;
            for xi in self.partitions_of(inner).iter() {
                if !nu.contains(xi) || !xi.contains(beta) || !xi.contains(gamma) {
                    continue;
                }
                let outer = self.lr_inner(alpha, xi, nu)?;
                if outer == 0 {
                    continue;
                }
                let inner = self.lr_inner(beta, gamma, xi)?;
                total = outer
                    .checked_mul(inner)
                    .and_then(|t| total.checked_add(t))
                    .ok_or(Error::Overflow("three-factor LR sum"))?;
            }
            Ok(i128::from(total))
        })?;
        to_count(v)
    }
}

impl Engine {
    /// Recomputes a record's value from scratch on a fresh engine with the same cap,
    /// independent of any store attached to `self`.
    pub fn recompute(&self, key: &Key) -> Result<i128> {
        let fresh = Engine::new().with_cap(self.cap);
        let ops = key.operands();
        let part = |i: usize| match &ops[i] {
            Operand::Partition(p) => p,
            Operand::Scalar(_) => unreachable!("key validated at construction"),
        };
        let scalar = |i: usize| match &ops[i] {
            Operand::Scalar(k) => *k,
            Operand::Partition(_) => unreachable!("key validated at construction"),
        };
        Ok(match key.kind() {
            Kind::Character => {
                i128::from(fresh.character_value(part(0), &CycleType::new(part(1).clone()))?)
            }
            Kind::Lr => i128::from(lr_tableaux_count(part(0), part(1), part(2))),
            Kind::Lr3 => i128::from(fresh.lr_coeff3(part(0), part(1), part(2), part(3))?),
            Kind::Kron => i128::from(fresh.kronecker_coeff(part(0), part(1), part(2))?),
            Kind::Rkron => i128::from(fresh.reduced_kronecker(part(0), part(1), part(2))?),
            Kind::Rkron1row => {
                i128::from(fresh.reduced_kronecker_onerow(part(0), part(1), scalar(2))?)
            }
        })
    }

    /// Recomputes every `every`-th record of the attached store (canonical order, starting
    /// with the first) and returns how many were compared. Any mismatch is `StoreCorrupt`.
    pub fn validate_store(&self, every: usize) -> Result<usize> {
        let Some(store) = &self.store else {
            return Ok(0);
        };
        let location = store
            .path()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "<memory>".into());
        let sample: Vec<Record> = store.records().into_iter().step_by(every.max(1)).collect();
        for r in &sample {
            self.confirm(r, &location)?;
        }
        Ok(sample.len())
    }

    /// Imports a store-format table into the attached store, recomputing every
    /// `verify_every`-th record first. Returns the number of records read.
    pub fn import_table(&self, source: &Path, verify_every: usize) -> Result<usize> {
        let records = read_records(source)?;
        let location = source.display().to_string();
        for r in records.iter().step_by(verify_every.max(1)) {
            self.confirm(r, &location)?;
        }
        if let Some(store) = &self.store {
            for r in &records {
                store.insert(r.key.clone(), r.value)?;
            }
        }
        Ok(records.len())
    }

    fn confirm(&self, record: &Record, location: &str) -> Result<()> {
        let fresh = self.recompute(&record.key)?;
        if fresh != record.value {
            return Err(Error::StoreCorrupt {
                location: location.to_string(),
                reason: format!("{record} but recomputation gives {fresh}"),
            });
        }
        Ok(())
    }
}

pub(crate) fn to_count(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow("coefficient out of u64 range"))
}
