//! Complete coefficient tables over a size box, in canonical order.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use repstab_core::{partitions, Engine, Partition};

use crate::{CliError, TableArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Char,
    Lr,
    Lr3,
    Kron,
    Rkron,
    Rkron1row,
}

impl TableKind {
    fn record_kind(self) -> &'static str {
        match self {
            TableKind::Char => "character",
            TableKind::Lr => "lr",
            TableKind::Lr3 => "lr3",
            TableKind::Kron => "kron",
            TableKind::Rkron => "rkron",
            TableKind::Rkron1row => "rkron1row",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            TableKind::Char => &["lambda", "rho"],
            TableKind::Lr => &["lambda", "mu", "nu"],
            TableKind::Lr3 => &["alpha", "beta", "gamma", "nu"],
            TableKind::Kron | TableKind::Rkron => &["lambda", "mu", "nu"],
            TableKind::Rkron1row => &["lambda", "mu", "k"],
        }
    }
}

/// Partitions with sizes in `[lo, hi]`, canonical order.
fn sized(lo: u32, hi: u32) -> Vec<Partition> {
    (lo..=hi).flat_map(partitions).collect()
}

/// Every table row as (operands, value). Sizes in the box refer to ν for lr/lr3, to the
/// common degree for char/kron, and to each argument for rkron/rkron1row.
fn rows(engine: &Engine, args: &TableArgs) -> Result<Vec<(Vec<String>, String)>, CliError> {
    let (lo, hi) = (args.min_size, args.max_size);
    let mut out = Vec::new();
    if lo > hi {
        return Ok(out);
    }
    let s = |p: &Partition| p.to_string();
    match args.kind {
        TableKind::Char => {
            for n in lo..=hi {
                let table = engine.character_table(n)?;
                for lam in table.partitions() {
                    for rho in table.classes() {
                        let v = table.value(lam, rho).expect("table entry");
                        out.push((vec![s(lam), rho.to_string()], v.to_string()));
                    }
                }
            }
        }
        TableKind::Lr => {
            for n in lo..=hi {
                for l in 0..=n {
                    for lam in partitions(l) {
                        for mu in partitions(n - l) {
                            for nu in partitions(n) {
                                let v = engine.lr_coeff(&lam, &mu, &nu)?;
                                out.push((vec![s(&lam), s(&mu), s(&nu)], v.to_string()));
                            }
                        }
                    }
                }
            }
        }
        TableKind::Lr3 => {
            for n in lo..=hi {
                for a in 0..=n {
                    for b in 0..=n - a {
                        for alpha in partitions(a) {
                            for beta in partitions(b) {
                                for gamma in partitions(n - a - b) {
                                    for nu in partitions(n) {
                                        let v = engine.lr_coeff3(&alpha, &beta, &gamma, &nu)?;
                                        out.push((
                                            vec![s(&alpha), s(&beta), s(&gamma), s(&nu)],
                                            v.to_string(),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        TableKind::Kron => {
            engine.character_table(hi)?;
            for n in lo..=hi {
                let ps = partitions(n);
                for lam in &ps {
                    for mu in &ps {
                        for nu in &ps {
                            let v = engine.kronecker_coeff(lam, mu, nu)?;
                            out.push((vec![s(lam), s(mu), s(nu)], v.to_string()));
                        }
                    }
                }
            }
        }
        TableKind::Rkron => {
            let ps = sized(lo, hi);
            for lam in &ps {
                for mu in &ps {
                    for nu in &ps {
                        let v = engine.reduced_kronecker(lam, mu, nu)?;
                        out.push((vec![s(lam), s(mu), s(nu)], v.to_string()));
                    }
                }
            }
        }
        TableKind::Rkron1row => {
            let ps = sized(lo, hi);
            let max_k = args.max_k.unwrap_or(hi);
            for lam in &ps {
                for mu in &ps {
                    for k in 0..=max_k {
                        let v = engine.reduced_kronecker_onerow(lam, mu, k)?;
                        out.push((vec![s(lam), s(mu), k.to_string()], v.to_string()));
                    }
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn write_table(
    engine: &Engine,
    args: &TableArgs,
    structured: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let dest = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("<stdout>"));
    let rows = rows(engine, args)?;
    let kind = args.kind.record_kind();
    if structured {
        for (operands, value) in rows {
            let record = serde_json::json!({
                "kind": kind,
                "operands": operands,
                "value": value.parse::<i64>().expect("integer value"),
            });
            writeln!(out, "{record}").map_err(|e| CliError::Io(dest.clone(), e))?;
        }
        return Ok(());
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(dest.clone(), std::io::Error::other(e.to_string()));
    let mut header: Vec<&str> = args.kind.columns().to_vec();
    header.push("value");
    w.write_record(&header).map_err(csv_err)?;
    for (mut operands, value) in rows {
        operands.push(value);
        w.write_record(&operands).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Io(dest.clone(), e))?;
    Ok(())
}
