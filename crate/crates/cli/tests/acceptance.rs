//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command as Process;
use std::time::Instant;

use clap::Parser;
use repstab_cli::{run_with_engine, Cli, EXIT_OK, EXIT_VERIFY_FAILED};
use repstab_core::checks::{run_statement, Bounds, Statement};
use repstab_core::coverage::{self, Op};
use repstab_core::lr::lr_tableaux_count;
use repstab_core::store::read_records;
use repstab_core::{partitions, partitions_up_to, CycleType, Engine, Partition, Store};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(parts: &[i64]) -> Partition {
    Partition::new(parts).unwrap()
}

fn statement(st: Statement, bounds: Bounds, cap: u32) -> Outcome {
    let engine = Engine::new().with_cap(cap);
    let report = run_statement(&engine, st, &bounds).map_err(|e| e.to_string())?;
    if report.checked() == 0 {
        return Err(format!("{} checked nothing", st.name()));
    }
    if report.passed() {
        Ok(format!("checked={}", report.checked()))
    } else {
        let f = &report.failures()[0];
        Err(format!(
            "{} failures, first [{}] {}: {}",
            report.failures().len(),
            f.clause,
            f.instance,
            f.detail
        ))
    }
}

fn c1_oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let bounds = Bounds {
        max_size: Some(3),
        ..Bounds::default()
    };
    let cap = Statement::OracleEquiv.required_cap(&bounds);
    let out = statement(Statement::OracleEquiv, bounds, cap)?;
    let secs = started.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return Err(format!("{out} but took {secs:.1}s"));
    }
    Ok(format!("{out} in {secs:.2}s"))
}

fn c2_triangle() -> Outcome {
    let bounds = Bounds {
        max_size: Some(5),
        ..Bounds::default()
    };
    statement(Statement::Triangle, bounds, 12)
}

fn c3_k_eq_lr() -> Outcome {
    let bounds = Bounds {
        max_size: Some(5),
        ..Bounds::default()
    };
    statement(Statement::KEqLr, bounds, 12)
}

fn c4_onerow() -> Outcome {
    let bounds = Bounds {
        max_size: Some(4),
        max_k: Some(6),
        ..Bounds::default()
    };
    statement(Statement::OneRow, bounds, 12)
}

fn c5_lrflip() -> Outcome {
    let bounds = Bounds {
        max_core: Some(3),
        max_xi: Some(4),
        ..Bounds::default()
    };
    statement(Statement::LrFlip, bounds, 12)
}

fn c6_kronstab() -> Outcome {
    let bounds = Bounds {
        max_lam: Some(3),
        max_mu: Some(3),
        max_k: Some(3),
        margin: Some(2),
        ..Bounds::default()
    };
    statement(Statement::KronStab, bounds, 12)
}

fn c7_size() -> Outcome {
    let bounds = Bounds {
        max_lam: Some(3),
        max_mu: Some(3),
        max_k: Some(3),
        ..Bounds::default()
    };
    statement(Statement::Size, bounds, 12)
}

fn c8_prop48() -> Outcome {
    let bounds = Bounds {
        max_lam: Some(3),
        max_mu: Some(3),
        max_i: Some(3),
        max_n: Some(14),
        ..Bounds::default()
    };
    let cap = Statement::Prop48.required_cap(&bounds).max(12);
    statement(Statement::Prop48, bounds, cap)
}

fn c9_prop412() -> Outcome {
    let bounds = Bounds {
        max_m: Some(3),
        max_n: Some(12),
        ..Bounds::default()
    };
    statement(Statement::Prop412, bounds, 12)
}

fn c10_character_tables() -> Outcome {
    let engine = Engine::new();
    for n in 0..=10 {
        let table = engine.character_table(n).map_err(|e| e.to_string())?;
        let order: i128 = (1..=n as i128).product();
        for (a, lam) in table.partitions().iter().enumerate() {
            let dim = table.value(lam, &CycleType::identity(n)).unwrap();
            if Some(dim as u128) != lam.dimension() {
                return Err(format!("chi^{lam}(1) = {dim} disagrees with hook length"));
            }
            for (b, mu) in table.partitions().iter().enumerate() {
                let ip = table.inner_product_unnormalized(lam, mu).unwrap();
                let expected = if a == b { order } else { 0 };
                if ip != expected {
                    return Err(format!("<{lam},{mu}> = {ip}/{n}!"));
                }
            }
        }
    }
    let mut triples = 0;
    for n in 0..=8 {
        let order: i128 = (1..=n as i128).product();
        let ps = partitions(n);
        for lam in &ps {
            for mu in &ps {
                for nu in &ps {
                    let s = engine
                        .kronecker_character_sum(lam, mu, nu)
                        .map_err(|e| e.to_string())?;
                    if s % order != 0 || s < 0 {
                        return Err(format!("sum {s} for {lam},{mu},{nu} not in {n}!·N"));
                    }
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "tables n<=10 orthogonal, {triples} Kronecker sums integral"
    ))
}

/// `c^ν_{λ,μ}` from characters: restriction of χ^ν to S_a × S_b paired with χ^λ × χ^μ.
fn lr_by_characters(engine: &Engine, lam: &Partition, mu: &Partition, nu: &Partition) -> i128 {
    let (a, b) = (lam.size(), mu.size());
    let ta = engine.character_table(a).unwrap();
    let tb = engine.character_table(b).unwrap();
    let tn = engine.character_table(a + b).unwrap();
    let mut sum: i128 = 0;
    for (i, ra) in ta.classes().iter().enumerate() {
        for (j, rb) in tb.classes().iter().enumerate() {
            let mut cycles: Vec<u32> = ra.cycles().parts().to_vec();
            cycles.extend_from_slice(rb.cycles().parts());
            cycles.sort_unstable_by(|x, y| y.cmp(x));
            let joint = CycleType::new(Partition::from_parts(cycles).unwrap());
            sum += ta.class_sizes()[i] as i128
                * tb.class_sizes()[j] as i128
                * ta.value(lam, ra).unwrap() as i128
                * tb.value(mu, rb).unwrap() as i128
                * tn.value(nu, &joint).unwrap() as i128;
        }
    }
    let denom: i128 = (1..=a as i128).product::<i128>() * (1..=b as i128).product::<i128>();
    assert_eq!(sum % denom, 0);
    sum / denom
}

fn c11_lr_soundness() -> Outcome {
    let engine = Engine::new();
    let mut compared = 0;
    for n in 0..=6 {
        for nu in partitions(n) {
            for a in 0..=n {
                for lam in partitions(a) {
                    for mu in partitions(n - a) {
                        let c = engine.lr_coeff(&lam, &mu, &nu).map_err(|e| e.to_string())?;
                        let t = lr_tableaux_count(&lam, &mu, &nu);
                        let chi = lr_by_characters(&engine, &lam, &mu, &nu);
                        if c as i128 != chi || t != c {
                            return Err(format!(
                                "c^{nu}_{{{lam},{mu}}}: engine {c}, tableaux {t}, characters {chi}"
                            ));
                        }
                        compared += 1;
                    }
                }
            }
        }
    }
    let binom = |n: u128, k: u128| -> u128 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    let mut identities = 0;
    for n in 0..=8u32 {
        for a in 0..=n {
            for lam in partitions(a) {
                for mu in partitions(n - a) {
                    let mut lhs: u128 = 0;
                    for nu in partitions(n) {
                        let c = engine.lr_coeff(&lam, &mu, &nu).map_err(|e| e.to_string())?;
                        lhs += c as u128 * nu.dimension().unwrap();
                    }
                    let rhs = binom(n as u128, a as u128)
                        * lam.dimension().unwrap()
                        * mu.dimension().unwrap();
                    if lhs != rhs {
                        return Err(format!("induced dimension for {lam},{mu}: {lhs} != {rhs}"));
                    }
                    identities += 1;
                }
            }
        }
    }
    Ok(format!(
        "{compared} values match characters, {identities} dimension identities"
    ))
}

fn cli(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("repstab").chain(args.iter().copied()))
        .expect("valid arguments")
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_repstab"))
        .args(args)
        .env_remove("REPSTAB_STORE")
        .output()
        .expect("run repstab")
}

fn cache_transparency(dir: &Path) -> Outcome {
    let plain = Engine::new().uncached();
    let stored = Engine::new().with_store(std::sync::Arc::new(
        Store::open(dir.join("transparency.store")).map_err(|e| e.to_string())?,
    ));
    let ps = partitions_up_to(3);
    let mut compared = 0;
    for pass in 0..2 {
        for lam in &ps {
            for mu in &ps {
                for nu in &ps {
                    let e = |r: repstab_core::Result<u64>| r.map_err(|e| e.to_string());
                    let pairs = [
                        (
                            e(plain.reduced_kronecker(lam, mu, nu))?,
                            e(stored.reduced_kronecker(lam, mu, nu))?,
                        ),
                        (
                            e(plain.lr_coeff(lam, mu, nu))?,
                            e(stored.lr_coeff(lam, mu, nu))?,
                        ),
                        (
                            e(plain.reduced_kronecker_onerow(lam, mu, nu.size()))?,
                            e(stored.reduced_kronecker_onerow(lam, mu, nu.size()))?,
                        ),
                    ];
                    if lam.size() == mu.size() && mu.size() == nu.size() {
                        let k = (
                            e(plain.kronecker_coeff(lam, mu, nu))?,
                            e(stored.kronecker_coeff(lam, mu, nu))?,
                        );
                        if k.0 != k.1 {
                            return Err(format!("kron {lam},{mu},{nu} pass {pass}: {k:?}"));
                        }
                    }
                    if let Some(d) = pairs.iter().find(|(a, b)| a != b) {
                        return Err(format!("{lam},{mu},{nu} pass {pass}: {d:?}"));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} triples agree with store on/off"))
}

fn round_trip(dir: &Path) -> Outcome {
    let source = Store::open(dir.join("source.store")).map_err(|e| e.to_string())?;
    let engine = Engine::new().with_store(std::sync::Arc::new(source));
    for n in 0..=8 {
        for nu in partitions(n) {
            for a in 0..=n {
                for lam in partitions(a) {
                    for mu in partitions(n - a) {
                        engine.lr_coeff(&lam, &mu, &nu).map_err(|e| e.to_string())?;
                    }
                }
            }
        }
    }
    for n in 0..=6 {
        let ps = partitions(n);
        for lam in &ps {
            for mu in &ps {
                for nu in &ps {
                    engine
                        .kronecker_coeff(lam, mu, nu)
                        .map_err(|e| e.to_string())?;
                }
            }
        }
    }
    let store = engine.store().unwrap();
    let exported = dir.join("export.txt");
    let count = store
        .export_table(None, &exported)
        .map_err(|e| e.to_string())?;
    if count < 1000 {
        return Err(format!("only {count} records exported"));
    }
    let target = Engine::new().with_store(std::sync::Arc::new(
        Store::open(dir.join("target.store")).map_err(|e| e.to_string())?,
    ));
    let imported = target
        .import_table(&exported, 1)
        .map_err(|e| e.to_string())?;
    let before: BTreeSet<String> = store.records().iter().map(|r| r.to_string()).collect();
    let after: BTreeSet<String> = target
        .store()
        .unwrap()
        .records()
        .iter()
        .map(|r| r.to_string())
        .collect();
    let reread: BTreeSet<String> = read_records(&exported)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.to_string())
        .collect();
    if before != after || before != reread || imported != count {
        return Err(format!(
            "round trip differs: {count} exported, {imported} imported"
        ));
    }
    Ok(format!("{count} records round-tripped"))
}

fn deterministic_tables(dir: &Path) -> Outcome {
    let mut checked = Vec::new();
    for (kind, size) in [("kron", "5"), ("lr", "5"), ("rkron", "3"), ("char", "6")] {
        let a = binary(&["table", kind, "--max-size", size]);
        let b = binary(&["--jobs", "1", "table", kind, "--max-size", size]);
        let file = dir.join(format!("{kind}.csv"));
        let c = binary(&[
            "table",
            kind,
            "--max-size",
            size,
            "--out",
            file.to_str().unwrap(),
        ]);
        let written = std::fs::read(&file).map_err(|e| e.to_string())?;
        if !a.status.success() || !b.status.success() || !c.status.success() {
            return Err(format!(
                "table {kind} failed: {}",
                String::from_utf8_lossy(&a.stderr)
            ));
        }
        if a.stdout != b.stdout || a.stdout != written || a.stdout.is_empty() {
            return Err(format!("table {kind} output not byte-identical"));
        }
        checked.push(format!("{kind}({} bytes)", written.len()));
    }
    Ok(checked.join(" "))
}

fn exit_codes() -> Outcome {
    let all = binary(&["verify", "all"]);
    if all.status.code() != Some(0) {
        return Err(format!(
            "verify all exited {:?}: {}",
            all.status.code(),
            String::from_utf8_lossy(&all.stdout)
        ));
    }
    let usage = binary(&["kron", "[2]", "[1]", "[1]"]);
    let compute = binary(&["--cap", "4", "kron", "[5]", "[5]", "[5]"]);
    if usage.status.code() != Some(2) || compute.status.code() != Some(3) {
        return Err(format!(
            "usage/compute exit codes {:?}/{:?}",
            usage.status.code(),
            compute.status.code()
        ));
    }

    let mut engine = Engine::new();
    engine.inject_lr_fault(&p(&[2]), &p(&[1]), &p(&[2, 1]));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_engine(&cli(&["verify", "k-eq-lr"]), &engine, &mut out, &mut err);
    let text = String::from_utf8_lossy(&out);
    if code != EXIT_VERIFY_FAILED {
        return Err(format!("injected bug: exit {code}, output {text}"));
    }
    if !text.contains("lambda=[2] mu=[1] nu=[2,1]") && !text.contains("lambda=[1] mu=[2] nu=[2,1]")
    {
        return Err(format!("injected bug: no counterexample tuple in {text}"));
    }

    let before = coverage::snapshot();
    let mut out = Vec::new();
    let engine = Engine::new().with_cap(13);
    let code = run_with_engine(&cli(&["verify", "all"]), &engine, &mut out, &mut err);
    if code != EXIT_OK {
        return Err(format!("in-process verify all exited {code}"));
    }
    let missing: Vec<String> = coverage::snapshot()
        .into_iter()
        .zip(before)
        .filter(|&((_, after), (_, before))| after == before)
        .map(|((op, _), _)| format!("{op:?}"))
        .collect();
    if !missing.is_empty() {
        return Err(format!("verify all never ran {}", missing.join(", ")));
    }
    Ok(format!(
        "verify all 0, usage 2, compute 3, injected bug 1; {} operations covered",
        Op::ALL.len()
    ))
}

fn c12_infrastructure() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let parts = [
        cache_transparency(dir.path())?,
        round_trip(dir.path())?,
        deterministic_tables(dir.path())?,
        exit_codes()?,
    ];
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 oracle equivalence (sizes <= 3)", c1_oracle_equivalence),
        ("2 triangle vanishing (sizes <= 5)", c2_triangle),
        ("3 reduced Kronecker = LR (sizes <= 5)", c3_k_eq_lr),
        ("4 one-row formula (|lambda|,|mu| <= 4, k <= 6)", c4_onerow),
        ("5 LR flip (|lambda| <= 3, |xi| <= 4)", c5_lrflip),
        ("6 Kronecker stabilization window", c6_kronstab),
        ("7 size vanishing", c7_size),
        ("8 tau multiplicities (n <= 14)", c8_prop48),
        (
            "9 induced multiplicity vanishing (m <= 3, n <= 12)",
            c9_prop412,
        ),
        ("10 character table soundness", c10_character_tables),
        ("11 LR soundness", c11_lr_soundness),
        ("12 infrastructure", c12_infrastructure),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("{} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
