//! Exhaustive checks of the stability and vanishing statements for reduced Kronecker
//! coefficients and partition-algebra branching multiplicities.
//!
//! Each check sweeps a bounded box of parameters and returns a [`VerificationReport`].
//! Failures carry the offending parameter tuple so a bug can be reproduced from the
//! report alone. Sweeps run on the current rayon pool; results are independent of the
//! schedule because failures are sorted before reporting.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coverage::{self, Op};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::partition::{padded_index_set, partitions_up_to, Partition};

/// One violated clause at one parameter tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub clause: String,
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportJson", from = "ReportJson")]
pub struct VerificationReport {
    statement: String,
    search_box: BTreeMap<String, u32>,
    checked: u64,
    failures: Vec<Failure>,
    wall_time: Duration,
}

#[derive(Clone, Serialize, Deserialize)]
struct ReportJson {
    statement: String,
    status: String,
    search_box: BTreeMap<String, u32>,
    checked: u64,
    failures: Vec<Failure>,
    /// Seconds.
    wall_time: f64,
}

impl From<VerificationReport> for ReportJson {
    fn from(r: VerificationReport) -> Self {
        ReportJson {
            status: r.status().to_string(),
            statement: r.statement,
            search_box: r.search_box,
            checked: r.checked,
            failures: r.failures,
            wall_time: r.wall_time.as_secs_f64(),
        }
    }
}

impl From<ReportJson> for VerificationReport {
    fn from(j: ReportJson) -> Self {
        VerificationReport {
            statement: j.statement,
            search_box: j.search_box,
            checked: j.checked,
            failures: j.failures,
            wall_time: Duration::from_secs_f64(j.wall_time.max(0.0)),
        }
    }
}

impl VerificationReport {
    pub fn statement(&self) -> &str {
        &self.statement
    }

    pub fn search_box(&self) -> &BTreeMap<String, u32> {
        &self.search_box
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn wall_time(&self) -> Duration {
        self.wall_time
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bounds: Vec<String> = self
            .search_box
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} {} checked={} failures={} box=[{}] ({:.2}s)",
            self.status().to_uppercase(),
            self.statement,
            self.checked,
            self.failures.len(),
            bounds.join(","),
            self.wall_time.as_secs_f64()
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(
        &mut self,
        ok: bool,
        clause: &str,
        instance: impl FnOnce() -> String,
        detail: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                clause: clause.to_string(),
                instance: instance(),
                detail: detail(),
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

fn sweep<T, F>(items: &[T], f: F) -> Result<Tally>
where
    T: Sync,
    F: Fn(&T, &mut Tally) -> Result<()> + Sync,
{
    let mut tally = items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t)?;
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    tally.failures.sort();
    Ok(tally)
}

fn report(
    statement: &str,
    bounds: &[(&str, u32)],
    tally: Tally,
    started: Instant,
) -> VerificationReport {
    VerificationReport {
        statement: statement.to_string(),
        search_box: bounds.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        checked: tally.checked,
        failures: tally.failures,
        wall_time: started.elapsed(),
    }
}

/// Parameters of the multiplicity `[τ_{n,m} P_n(μ[n−i]), P_m(λ)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMultiplicityQuery {
    mu: Partition,
    i: u32,
    n: u32,
    m: u32,
    lam: Partition,
}

impl TauMultiplicityQuery {
    /// Requires `n − i >= |μ| + μ₁` and `m <= n`.
    pub fn new(mu: Partition, i: u32, n: u32, m: u32, lam: Partition) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidQuery(format!("m = {m} exceeds n = {n}")));
        }
        let Some(padded_total) = n.checked_sub(i) else {
            return Err(Error::InvalidQuery(format!("i = {i} exceeds n = {n}")));
        };
        mu.pad(padded_total)?;
        Ok(TauMultiplicityQuery { mu, i, n, m, lam })
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lam(&self) -> &Partition {
        &self.lam
    }
}

impl fmt::Display for TauMultiplicityQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu={} i={} n={} m={} lambda={}",
            self.mu, self.i, self.n, self.m, self.lam
        )
    }
}

/// `[τ_{n,m} P_n(μ[n−i]), P_m(λ)] = ḡ_{λ,(n−m),μ[n−i]}`.
pub fn tau_multiplicity(engine: &Engine, q: &TauMultiplicityQuery) -> Result<u64> {
    coverage::hit(Op::TauMultiplicity);
    let padded = q.mu.pad(q.n - q.i)?;
    engine.reduced_kronecker(&q.lam, &Partition::row(q.n - q.m), &padded)
}

/// `[Ind (P_m(μ) ⊗ ℂ), P_n(λ[n−i])] = ḡ_{μ,(n−m),λ[n−i]}`, the multiplicity of
/// `P_n(λ[n−i])` in the module induced from `P_m(μ)` tensored with the trivial module.
pub fn induced_multiplicity(
    engine: &Engine,
    mu: &Partition,
    m: u32,
    n: u32,
    lam: &Partition,
    i: u32,
) -> Result<u64> {
    coverage::hit(Op::InducedMultiplicity);
    if mu.size() > m || m > n {
        return Err(Error::InvalidQuery(format!(
            "need |mu| <= m <= n, got |{mu}| = {}, m = {m}, n = {n}",
            mu.size()
        )));
    }
    let total = n
        .checked_sub(i)
        .ok_or_else(|| Error::InvalidQuery(format!("i = {i} exceeds n = {n}")))?;
    let padded = lam.pad(total)?;
    engine.reduced_kronecker(mu, &Partition::row(n - m), &padded)
}

/// Pieri flip: for all λ, ξ in the box and n in `[|ξ|, |λ|+ξ₁+3]` with λ[n] defined,
/// compares `c^{λ[n]}_{ξ,(n−|ξ|)}` with `c^ξ_{λ,(|ξ|−|λ|)}`.
///
/// Clauses: `a` (left = 1 implies right = 1), `b` (converse once n >= |λ|+ξ₁), `c`
/// (equality once n >= |λ|+ξ₁), plus `pieri` and `strip`, which cross-check the left side
/// against Pieri's rule and against the enumerated horizontal-strip removals of λ[n].
pub fn check_lrflip(engine: &Engine, max_core: u32, max_xi: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let pairs: Vec<(Partition, Partition)> = partitions_up_to(max_core)
        .into_iter()
        .flat_map(|lam| {
            partitions_up_to(max_xi)
                .into_iter()
                .map(move |xi| (lam.clone(), xi))
        })
        .collect();
    let tally = sweep(&pairs, |(lam, xi), t| {
        let onset = lam.size() + xi.first();
        let lo = xi.size().max(lam.size() + lam.first());
        for n in lo..=onset + 3 {
            let padded = lam.pad(n)?;
            let k = n - xi.size();
            let left = engine.lr_coeff(xi, &Partition::row(k), &padded)?;
            let right = match xi.size().checked_sub(lam.size()) {
                Some(j) => engine.lr_coeff(lam, &Partition::row(j), xi)?,
                None => 0,
            };
            let inst = || format!("lambda={lam} xi={xi} n={n}");
            let detail = || {
                format!(
                    "c^lambda[n]_(xi,(n-|xi|)) = {left}, c^xi_(lambda,(|xi|-|lambda|)) = {right}"
                )
            };
            t.check(left != 1 || right == 1, "a", inst, detail);
            if n >= onset {
                t.check(right != 1 || left == 1, "b", inst, detail);
                t.check(left == right, "c", inst, detail);
            }
            let pieri = engine.pieri_coeff(xi, k, &padded);
            t.check(pieri == left, "pieri", inst, || {
                format!("pieri = {pieri}, lr = {left}")
            });
            let member = padded.horizontal_strip_removals(k).contains(xi);
            t.check(member == (left == 1), "strip", inst, || {
                format!("strip membership {member}, lr = {left}")
            });
        }
        Ok(())
    })?;
    Ok(report(
        "lrflip",
        &[("max_core", max_core), ("max_xi", max_xi)],
        tally,
        started,
    ))
}

/// For each (λ, μ, k) in the box, `ḡ_{λ[n],μ,(n−k)}` must be constant on the window of
/// `margin + 1` consecutive degrees starting at `max(|λ|+|μ|, |λ|+λ₁, k)`.
pub fn check_kroneckerstab(
    engine: &Engine,
    max_lam: u32,
    max_mu: u32,
    max_k: u32,
    margin: u32,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples = core_triples(max_lam, max_mu, max_k);
    let tally = sweep(&triples, |(lam, mu, k), t| {
        let start = (lam.size() + mu.size())
            .max(lam.size() + lam.first())
            .max(*k);
        let values = (start..=start + margin)
            .map(|n| engine.reduced_kronecker(&lam.pad(n)?, mu, &Partition::row(n - k)))
            .collect::<Result<Vec<u64>>>()?;
        t.check(
            values.windows(2).all(|w| w[0] == w[1]),
            "stable",
            || format!("lambda={lam} mu={mu} k={k} n={start}..={}", start + margin),
            || format!("values {values:?}"),
        );
        Ok(())
    })?;
    Ok(report(
        "kron-stab",
        &[
            ("max_lam", max_lam),
            ("max_mu", max_mu),
            ("max_k", max_k),
            ("margin", margin),
        ],
        tally,
        started,
    ))
}

/// `ḡ_{λ[n],μ,(n−k)} = 0` whenever |λ| > |μ|, for all defined n up to `max_n`.
pub fn check_size_vanishing(
    engine: &Engine,
    max_lam: u32,
    max_mu: u32,
    max_k: u32,
    max_n: u32,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples: Vec<_> = core_triples(max_lam, max_mu, max_k)
        .into_iter()
        .filter(|(lam, mu, _)| lam.size() > mu.size())
        .collect();
    let tally = sweep(&triples, |(lam, mu, k), t| {
        let start = (lam.size() + lam.first()).max(*k);
        for n in start..=max_n {
            let v = engine.reduced_kronecker(&lam.pad(n)?, mu, &Partition::row(n - k))?;
            t.check(
                v == 0,
                "size",
                || format!("lambda={lam} mu={mu} k={k} n={n}"),
                || format!("value {v}"),
            );
        }
        Ok(())
    })?;
    Ok(report(
        "size",
        &[
            ("max_lam", max_lam),
            ("max_mu", max_mu),
            ("max_k", max_k),
            ("max_n", max_n),
        ],
        tally,
        started,
    ))
}

fn core_triples(max_lam: u32, max_mu: u32, max_k: u32) -> Vec<(Partition, Partition, u32)> {
    let mut out = Vec::new();
    for lam in partitions_up_to(max_lam) {
        for mu in partitions_up_to(max_mu) {
            for k in 0..=max_k {
                out.push((lam.clone(), mu.clone(), k));
            }
        }
    }
    out
}

/// Sweeps `[τ_{n,m} P_n(μ[n−i]), P_m(λ)]` over |μ|, |λ| <= m (both index simple
/// `P_m`-modules), `m <= n <= max_n`, `n − i >= |μ| + μ₁`, and checks:
/// `a` zero when |λ| < m − i; `b` zero when |λ| = m − i < |μ|; `c` equal to δ_{λμ} when
/// |λ| = m − i = |μ|; `d` constant on three consecutive n from `|λ|+|μ|+i` (or the first
/// admissible n above it).
pub fn check_prop48(
    engine: &Engine,
    max_mu: u32,
    max_lam: u32,
    max_i: u32,
    max_n: u32,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for mu in partitions_up_to(max_mu) {
        for lam in partitions_up_to(max_lam) {
            for i in 0..=max_i {
                for m in mu.size().max(lam.size())..=max_n {
                    cases.push((mu.clone(), lam.clone(), i, m));
                }
            }
        }
    }
    let tally = sweep(&cases, |(mu, lam, i, m), t| {
        let (i, m) = (*i, *m);
        let first_n = m.max(i + mu.size() + mu.first());
        let lam_size = i64::from(lam.size());
        let target = i64::from(m) - i64::from(i);
        let value = |n: u32| -> Result<u64> {
            let q = TauMultiplicityQuery::new(mu.clone(), i, n, m, lam.clone())?;
            tau_multiplicity(engine, &q)
        };
        for n in first_n..=max_n {
            let v = value(n)?;
            let inst = || format!("mu={mu} lambda={lam} i={i} m={m} n={n}");
            let detail = || format!("value {v}");
            if lam_size < target {
                t.check(v == 0, "a", inst, detail);
            }
            if lam_size == target && lam.size() < mu.size() {
                t.check(v == 0, "b", inst, detail);
            }
            if lam_size == target && lam.size() == mu.size() {
                let want = u64::from(lam == mu);
                t.check(v == want, "c", inst, || {
                    format!("value {v}, expected {want}")
                });
            }
        }
        let start = first_n.max(lam.size() + mu.size() + i);
        let end = (start + 2).min(max_n);
        if end > start {
            let values = (start..=end).map(value).collect::<Result<Vec<_>>>()?;
            t.check(
                values.windows(2).all(|w| w[0] == w[1]),
                "d",
                || format!("mu={mu} lambda={lam} i={i} m={m} n={start}..={end}"),
                || format!("values {values:?}"),
            );
        }
        Ok(())
    })?;
    Ok(report(
        "prop48",
        &[
            ("max_mu", max_mu),
            ("max_lam", max_lam),
            ("max_i", max_i),
            ("max_n", max_n),
        ],
        tally,
        started,
    ))
}

/// For m <= max_m, m <= n <= max_n, |μ| <= m and every λ[n−i] defined: the induced
/// multiplicity vanishes whenever i > 2m (clause `i`) or |λ| > m (clause `lambda`).
pub fn check_prop412(engine: &Engine, max_m: u32, max_n: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for m in 0..=max_m {
        for n in m..=max_n {
            for mu in partitions_up_to(m) {
                cases.push((m, n, mu));
            }
        }
    }
    let tally = sweep(&cases, |(m, n, mu), t| {
        let (m, n) = (*m, *n);
        for i in 0..=n {
            for lam in padded_index_set(n - i) {
                let big_i = i > 2 * m;
                let big_lam = lam.size() > m;
                if !big_i && !big_lam {
                    continue;
                }
                let v = induced_multiplicity(engine, mu, m, n, &lam, i)?;
                let inst = || format!("mu={mu} m={m} n={n} lambda={lam} i={i}");
                let detail = || format!("value {v}");
                if big_i {
                    t.check(v == 0, "i", inst, detail);
                }
                if big_lam {
                    t.check(v == 0, "lambda", inst, detail);
                }
            }
        }
        Ok(())
    })?;
    Ok(report(
        "prop412",
        &[("max_m", max_m), ("max_n", max_n)],
        tally,
        started,
    ))
}

fn all_triples(max_size: u32) -> Vec<(Partition, Partition, Partition)> {
    let ps = partitions_up_to(max_size);
    let mut out = Vec::with_capacity(ps.len().pow(3));
    for a in &ps {
        for b in &ps {
            for c in &ps {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

/// `reduced_kronecker` against `reduced_kronecker_limit` on every triple of sizes
/// <= `max_size`. A limit that fails to stabilize at its probe point is a failure.
pub fn check_oracle_equiv(engine: &Engine, max_size: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples = all_triples(max_size);
    let tally = sweep(&triples, |(l, m, n), t| {
        let fast = engine.reduced_kronecker(l, m, n)?;
        let inst = || format!("lambda={l} mu={m} nu={n}");
        match engine.reduced_kronecker_limit(l, m, n) {
            Ok(slow) => t.check(fast == slow, "equal", inst, || {
                format!("formula {fast}, limit {slow}")
            }),
            Err(e @ Error::NotStabilized { .. }) => {
                t.check(false, "stabilized", inst, || e.to_string())
            }
            Err(e) => return Err(e),
        }
        Ok(())
    })?;
    Ok(report(
        "oracle-equiv",
        &[("max_size", max_size)],
        tally,
        started,
    ))
}

/// `ḡ_{λ,μ,ν} = 0` on every triple of sizes <= `max_size` with |λ| + |μ| < |ν|.
pub fn check_triangle(engine: &Engine, max_size: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples: Vec<_> = all_triples(max_size)
        .into_iter()
        .filter(|(l, m, n)| l.size() + m.size() < n.size())
        .collect();
    let tally = sweep(&triples, |(l, m, n), t| {
        let v = engine.reduced_kronecker(l, m, n)?;
        t.check(
            v == 0,
            "triangle",
            || format!("lambda={l} mu={m} nu={n}"),
            || format!("value {v}"),
        );
        Ok(())
    })?;
    Ok(report(
        "triangle",
        &[("max_size", max_size)],
        tally,
        started,
    ))
}

/// `ḡ_{λ,μ,ν} = c^ν_{λ,μ}` on every triple of sizes <= `max_size` with |λ| + |μ| = |ν|.
pub fn check_k_eq_lr(engine: &Engine, max_size: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples: Vec<_> = all_triples(max_size)
        .into_iter()
        .filter(|(l, m, n)| l.size() + m.size() == n.size())
        .collect();
    let tally = sweep(&triples, |(l, m, n), t| {
        let g = engine.reduced_kronecker(l, m, n)?;
        let c = engine.lr_coeff(l, m, n)?;
        t.check(
            g == c,
            "k-eq-lr",
            || format!("lambda={l} mu={m} nu={n}"),
            || format!("reduced Kronecker {g}, LR {c}"),
        );
        Ok(())
    })?;
    Ok(report("k-eq-lr", &[("max_size", max_size)], tally, started))
}

/// `reduced_kronecker_onerow(λ, μ, k) = reduced_kronecker(λ, μ, (k))` for |λ|, |μ| <=
/// `max_size`, k <= `max_k`.
pub fn check_onerow(engine: &Engine, max_size: u32, max_k: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let triples = core_triples(max_size, max_size, max_k);
    let tally = sweep(&triples, |(l, m, k), t| {
        let one = engine.reduced_kronecker_onerow(l, m, *k)?;
        let full = engine.reduced_kronecker(l, m, &Partition::row(*k))?;
        t.check(
            one == full,
            "onerow",
            || format!("lambda={l} mu={m} k={k}"),
            || format!("one-row formula {one}, general formula {full}"),
        );
        Ok(())
    })?;
    Ok(report(
        "onerow",
        &[("max_size", max_size), ("max_k", max_k)],
        tally,
        started,
    ))
}

/// A verifiable statement, as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    LrFlip,
    KronStab,
    Triangle,
    KEqLr,
    Size,
    Prop48,
    Prop412,
    OracleEquiv,
    OneRow,
}

impl Statement {
    pub const ALL: [Statement; 9] = [
        Statement::LrFlip,
        Statement::KronStab,
        Statement::Triangle,
        Statement::KEqLr,
        Statement::Size,
        Statement::Prop48,
        Statement::Prop412,
        Statement::OracleEquiv,
        Statement::OneRow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statement::LrFlip => "lrflip",
            Statement::KronStab => "kron-stab",
            Statement::Triangle => "triangle",
            Statement::KEqLr => "k-eq-lr",
            Statement::Size => "size",
            Statement::Prop48 => "prop48",
            Statement::Prop412 => "prop412",
            Statement::OracleEquiv => "oracle-equiv",
            Statement::OneRow => "onerow",
        }
    }

    /// Largest character degree the default box needs.
    pub fn required_cap(self, bounds: &Bounds) -> u32 {
        match self {
            // Limit probes at n₀ + 1 with n₀ = 3·size + size.
            Statement::OracleEquiv => 4 * bounds.max_size.unwrap_or(3) + 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statement {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Statement::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown statement {s:?}"))
    }
}

/// Optional overrides of the default search boxes; unset fields take per-statement defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_core: Option<u32>,
    pub max_xi: Option<u32>,
    pub max_lam: Option<u32>,
    pub max_mu: Option<u32>,
    pub max_k: Option<u32>,
    pub max_n: Option<u32>,
    pub max_m: Option<u32>,
    pub max_i: Option<u32>,
    pub margin: Option<u32>,
    pub max_size: Option<u32>,
}

/// Runs one statement on its box (defaults overridden by `bounds`).
pub fn run_statement(
    engine: &Engine,
    statement: Statement,
    bounds: &Bounds,
) -> Result<VerificationReport> {
    let b = bounds;
    match statement {
        Statement::LrFlip => check_lrflip(engine, b.max_core.unwrap_or(3), b.max_xi.unwrap_or(4)),
        Statement::KronStab => check_kroneckerstab(
            engine,
            b.max_lam.unwrap_or(3),
            b.max_mu.unwrap_or(3),
            b.max_k.unwrap_or(3),
            b.margin.unwrap_or(2),
        ),
        Statement::Size => check_size_vanishing(
            engine,
            b.max_lam.unwrap_or(3),
            b.max_mu.unwrap_or(3),
            b.max_k.unwrap_or(3),
            b.max_n.unwrap_or(10),
        ),
        Statement::Prop48 => check_prop48(
            engine,
            b.max_mu.unwrap_or(3),
            b.max_lam.unwrap_or(3),
            b.max_i.unwrap_or(3),
            b.max_n.unwrap_or(14),
        ),
        Statement::Prop412 => check_prop412(engine, b.max_m.unwrap_or(3), b.max_n.unwrap_or(12)),
        Statement::Triangle => check_triangle(engine, b.max_size.unwrap_or(5)),
        Statement::KEqLr => check_k_eq_lr(engine, b.max_size.unwrap_or(5)),
        Statement::OracleEquiv => check_oracle_equiv(engine, b.max_size.unwrap_or(3)),
        Statement::OneRow => check_onerow(engine, b.max_size.unwrap_or(4), b.max_k.unwrap_or(6)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn query_invariants() {
        assert!(TauMultiplicityQuery::new(p("[1]"), 0, 3, 2, p("[1]")).is_ok());
        assert!(matches!(
            TauMultiplicityQuery::new(p("[2]"), 1, 4, 2, p("[1]")),
            Err(Error::NotPaddable { .. })
        ));
        assert!(matches!(
            TauMultiplicityQuery::new(p("[1]"), 0, 3, 4, p("[1]")),
            Err(Error::InvalidQuery(_))
        ));
    }

    #[test]
    fn tau_is_reduced_kronecker_of_padded() {
        let e = Engine::new();
        let q = TauMultiplicityQuery::new(p("[1]"), 1, 7, 3, p("[2]")).unwrap();
        let direct = e
            .reduced_kronecker(&p("[2]"), &p("[4]"), &p("[1]").pad(6).unwrap())
            .unwrap();
        assert_eq!(tau_multiplicity(&e, &q).unwrap(), direct);
    }

    #[test]
    fn tau_diagonal_and_vanishing() {
        let e = Engine::new();
        // |λ| = m − i = |μ|
        for (mu, lam) in [("[2]", "[2]"), ("[2]", "[1,1]"), ("[2,1]", "[2,1]")] {
            let (mu, lam) = (p(mu), p(lam));
            let i = 1;
            let m = lam.size() + i;
            let q = TauMultiplicityQuery::new(mu.clone(), i, 10, m, lam.clone()).unwrap();
            assert_eq!(tau_multiplicity(&e, &q).unwrap(), u64::from(mu == lam));
        }
        // |λ| < m − i
        let q = TauMultiplicityQuery::new(p("[1]"), 0, 8, 3, p("[1]")).unwrap();
        assert_eq!(tau_multiplicity(&e, &q).unwrap(), 0);
    }

    #[test]
    fn induced_vanishing_and_witness() {
        let e = Engine::new();
        // i > m + |μ|
        assert_eq!(
            induced_multiplicity(&e, &p("[1]"), 1, 8, &p("[1]"), 3).unwrap(),
            0
        );
        // |λ| > |μ|
        assert_eq!(
            induced_multiplicity(&e, &p("[1]"), 2, 8, &p("[2]"), 0).unwrap(),
            0
        );
        // μ = λ, i = m − |λ|
        assert!(induced_multiplicity(&e, &p("[1]"), 2, 9, &p("[1]"), 1).unwrap() >= 1);
    }

    #[test]
    fn small_boxes_pass() {
        let e = Engine::new();
        for r in [
            check_lrflip(&e, 2, 3).unwrap(),
            check_kroneckerstab(&e, 2, 2, 2, 2).unwrap(),
            check_size_vanishing(&e, 2, 1, 2, 7).unwrap(),
            check_prop48(&e, 2, 2, 2, 8).unwrap(),
            check_prop412(&e, 2, 7).unwrap(),
            check_triangle(&e, 3).unwrap(),
            check_k_eq_lr(&e, 3).unwrap(),
            check_oracle_equiv(&e, 2).unwrap(),
            check_onerow(&e, 2, 3).unwrap(),
        ] {
            assert!(r.passed(), "{r}: {:?}", r.failures());
            assert!(r.checked() > 0, "{r}");
        }
    }

    #[test]
    fn report_json_round_trip() {
        let e = Engine::new();
        let r = check_triangle(&e, 2).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"status\":\"pass\""));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.statement(), r.statement());
        assert_eq!(back.checked(), r.checked());
        assert_eq!(back.failures(), r.failures());
    }

    #[test]
    fn statement_names() {
        for st in Statement::ALL {
            assert_eq!(st.name().parse::<Statement>().unwrap(), st);
        }
        assert!("all".parse::<Statement>().is_err());
    }
}
