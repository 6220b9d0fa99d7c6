//! Command-line front end for `repstab-core`.
//!
//! Exit codes: 0 success or all checks passed, 1 verification failure, 2 usage error,
//! 3 computation error (degree cap, overflow), 4 I/O or store error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use repstab_core::checks::{run_statement, Bounds, Statement, VerificationReport};
use repstab_core::{CycleType, Engine, Error, Kind, Partition, Store, DEFAULT_CAP};

mod table;

pub use table::TableKind;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;
pub const EXIT_IO: u8 = 4;

/// Records sampled when validating a store on open (every 100th, i.e. 1%).
const VALIDATE_EVERY: usize = 100;

#[derive(Parser, Debug)]
#[command(
    name = "repstab",
    version,
    about = "Littlewood-Richardson, Kronecker and reduced Kronecker coefficients"
)]
pub struct Cli {
    /// Coefficient store file; absent means in-memory only.
    #[arg(long, global = true, env = "REPSTAB_STORE")]
    pub store: Option<PathBuf>,

    /// Character degree cap [default: 12; `verify` raises it to what its box needs].
    #[arg(long, global = true)]
    pub cap: Option<u32>,

    /// Worker threads for verification sweeps [default: all cores].
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output format: plain/structured for coefficients, csv/structured for tables.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Six-partition LR/Kronecker sum.
    Formula,
    /// Murnaghan limit probed at two large degrees.
    Limit,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Littlewood-Richardson coefficient c^NU_{LAMBDA,MU}.
    Lr {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
    },
    /// Three-factor LR coefficient c^NU_{ALPHA,BETA,GAMMA}.
    Lr3 {
        alpha: Partition,
        beta: Partition,
        gamma: Partition,
        nu: Partition,
    },
    /// Kronecker coefficient g_{LAMBDA,MU,NU}.
    Kron {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
    },
    /// Reduced Kronecker coefficient.
    Rkron {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
        #[arg(long, value_enum, default_value = "formula")]
        via: Route,
    },
    /// Reduced Kronecker coefficient with one-row third argument (K).
    Rkron1row {
        lambda: Partition,
        mu: Partition,
        k: u32,
    },
    /// Character value chi^LAMBDA at cycle type RHO.
    Char { lambda: Partition, rho: Partition },
    /// Padded partition CORE[TOTAL].
    Pad { core: Partition, total: u32 },
    /// Emit a complete coefficient table over a size box.
    Table(TableArgs),
    /// Run verification sweeps.
    Verify(VerifyArgs),
    /// Manage the coefficient store.
    #[command(subcommand)]
    Store(StoreCommand),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    #[arg(long, default_value_t = 0)]
    pub min_size: u32,
    #[arg(long)]
    pub max_size: u32,
    /// Largest k for rkron1row [default: max-size].
    #[arg(long)]
    pub max_k: Option<u32>,
    /// Destination file [default: stdout].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// lrflip, kron-stab, triangle, k-eq-lr, size, prop48, prop412, oracle-equiv, onerow, or all.
    pub statement: String,
    /// Write reports here, one JSON object per line.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub max_core: Option<u32>,
    #[arg(long)]
    pub max_xi: Option<u32>,
    #[arg(long)]
    pub max_lam: Option<u32>,
    #[arg(long)]
    pub max_mu: Option<u32>,
    #[arg(long)]
    pub max_k: Option<u32>,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_m: Option<u32>,
    #[arg(long)]
    pub max_i: Option<u32>,
    #[arg(long)]
    pub margin: Option<u32>,
    #[arg(long)]
    pub max_size: Option<u32>,
}

impl VerifyArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_core: self.max_core,
            max_xi: self.max_xi,
            max_lam: self.max_lam,
            max_mu: self.max_mu,
            max_k: self.max_k,
            max_n: self.max_n,
            max_m: self.max_m,
            max_i: self.max_i,
            margin: self.margin,
            max_size: self.max_size,
        }
    }

    fn statements(&self) -> Result<Vec<Statement>, String> {
        if self.statement == "all" {
            Ok(Statement::ALL.to_vec())
        } else {
            Ok(vec![self.statement.parse()?])
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum StoreCommand {
    /// Write store records (optionally of one kind) to a file.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        kind: Option<String>,
    },
    /// Merge records from a file, recomputing every N-th first.
    Import {
        source: PathBuf,
        #[arg(long, default_value_t = 1)]
        verify_every: usize,
    },
    /// Rewrite the store file sorted and deduplicated.
    Compact,
    /// Recompute every N-th record and compare.
    Validate {
        #[arg(long, default_value_t = VALIDATE_EVERY)]
        every: usize,
    },
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(..) => EXIT_IO,
            CliError::Core(e) => match e {
                Error::InvalidPartition(_)
                | Error::NotPaddable { .. }
                | Error::SizeMismatch(_)
                | Error::InvalidQuery(_) => EXIT_USAGE,
                Error::DegreeTooLarge { .. }
                | Error::NotStabilized { .. }
                | Error::Overflow(_)
                | Error::NonIntegral(_) => EXIT_COMPUTE,
                Error::StoreCorrupt { .. } | Error::Io { .. } => EXIT_IO,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "I/O error on {}: {e}", path.display()),
        }
    }
}

/// Parses arguments and runs, writing to the given streams. Returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match build_engine(&cli) {
        Ok(engine) => run_with_engine(&cli, &engine, out, err),
        Err(e) => {
            let _ = writeln!(err, "repstab: {e}");
            e.exit_code()
        }
    }
}

/// Builds the engine the flags describe: cap, store (validated on open).
pub fn build_engine(cli: &Cli) -> Result<Engine, CliError> {
    let cap = match (&cli.command, cli.cap) {
        (_, Some(cap)) => cap,
        (Command::Verify(args), None) => {
            let statements = args.statements().map_err(CliError::Usage)?;
            let bounds = args.bounds();
            statements
                .iter()
                .map(|s| s.required_cap(&bounds))
                .fold(DEFAULT_CAP, u32::max)
        }
        _ => DEFAULT_CAP,
    };
    let mut engine = Engine::new().with_cap(cap);
    if let Some(path) = &cli.store {
        let store = Arc::new(Store::open(path)?);
        engine = engine.with_store(store);
        engine.validate_store(VALIDATE_EVERY)?;
    }
    Ok(engine)
}

/// Runs a parsed command against `engine`. Compacts a file-backed store on success.
pub fn run_with_engine(cli: &Cli, engine: &Engine, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = dispatch(cli, engine, out).and_then(|code| {
        if let Some(store) = engine.store() {
            store.compact()?;
        }
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "repstab: {e}");
            let code = e.exit_code();
            if code == EXIT_USAGE {
                let _ = writeln!(err, "{}", synopsis(&cli.command));
            }
            code
        }
    }
}

/// Usage line of the subcommand that ran.
fn synopsis(command: &Command) -> String {
    let name = match command {
        Command::Lr { .. } => "lr",
        Command::Lr3 { .. } => "lr3",
        Command::Kron { .. } => "kron",
        Command::Rkron { .. } => "rkron",
        Command::Rkron1row { .. } => "rkron1row",
        Command::Char { .. } => "char",
        Command::Pad { .. } => "pad",
        Command::Table(_) => "table",
        Command::Verify(_) => "verify",
        Command::Store(_) => "store",
    };
    let mut root = Cli::command();
    match root.find_subcommand_mut(name) {
        Some(sub) => sub.render_usage().to_string(),
        None => root.render_usage().to_string(),
    }
}

fn dispatch(cli: &Cli, engine: &Engine, out: &mut dyn Write) -> Result<u8, CliError> {
    let io_err = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    let coefficient_format = match cli.format {
        None | Some(Format::Plain) => Format::Plain,
        Some(Format::Structured) => Format::Structured,
        Some(Format::Csv) => {
            if !matches!(cli.command, Command::Table(_)) {
                return Err(CliError::Usage(
                    "--format csv applies to `table` only".into(),
                ));
            }
            Format::Csv
        }
    };
    let emit = |out: &mut dyn Write, kind: &str, operands: Vec<String>, value: String| {
        match coefficient_format {
            Format::Structured => {
                let record = serde_json::json!({
                    "kind": kind,
                    "operands": operands,
                    "value": serde_json::from_str::<serde_json::Value>(&value)
                        .unwrap_or(serde_json::Value::String(value.clone())),
                });
                writeln!(out, "{record}")
            }
            _ => writeln!(out, "{value}"),
        }
    };
    let s = |p: &Partition| p.to_string();
    match &cli.command {
        Command::Lr { lambda, mu, nu } => {
            let v = engine.lr_coeff(lambda, mu, nu)?;
            emit(out, "lr", vec![s(lambda), s(mu), s(nu)], v.to_string()).map_err(io_err)?;
        }
        Command::Lr3 {
            alpha,
            beta,
            gamma,
            nu,
        } => {
            let v = engine.lr_coeff3(alpha, beta, gamma, nu)?;
            emit(
                out,
                "lr3",
                vec![s(alpha), s(beta), s(gamma), s(nu)],
                v.to_string(),
            )
            .map_err(io_err)?;
        }
        Command::Kron { lambda, mu, nu } => {
            let v = engine.kronecker_coeff(lambda, mu, nu)?;
            emit(out, "kron", vec![s(lambda), s(mu), s(nu)], v.to_string()).map_err(io_err)?;
        }
        Command::Rkron {
            lambda,
            mu,
            nu,
            via,
        } => {
            let v = match via {
                Route::Formula => engine.reduced_kronecker(lambda, mu, nu)?,
                Route::Limit => engine.reduced_kronecker_limit(lambda, mu, nu)?,
            };
            emit(out, "rkron", vec![s(lambda), s(mu), s(nu)], v.to_string()).map_err(io_err)?;
        }
        Command::Rkron1row { lambda, mu, k } => {
            let v = engine.reduced_kronecker_onerow(lambda, mu, *k)?;
            emit(
                out,
                "rkron1row",
                vec![s(lambda), s(mu), k.to_string()],
                v.to_string(),
            )
            .map_err(io_err)?;
        }
        Command::Char { lambda, rho } => {
            let v = engine.character_value(lambda, &CycleType::new(rho.clone()))?;
            emit(out, "character", vec![s(lambda), s(rho)], v.to_string()).map_err(io_err)?;
        }
        Command::Pad { core, total } => {
            let v = core.pad(*total)?;
            let value = match coefficient_format {
                Format::Structured => format!("\"{v}\""),
                _ => v.to_string(),
            };
            emit(out, "pad", vec![s(core), total.to_string()], value).map_err(io_err)?;
        }
        Command::Table(args) => {
            let structured = match cli.format {
                None | Some(Format::Csv) => false,
                Some(Format::Structured) => true,
                Some(Format::Plain) => {
                    return Err(CliError::Usage("tables support csv or structured".into()))
                }
            };
            match &args.out {
                Some(path) => {
                    let file = File::create(path).map_err(|e| CliError::Io(path.clone(), e))?;
                    let mut w = BufWriter::new(file);
                    table::write_table(engine, args, structured, &mut w)?;
                    w.flush().map_err(|e| CliError::Io(path.clone(), e))?;
                }
                None => table::write_table(engine, args, structured, out)?,
            }
        }
        Command::Verify(args) => return verify(cli, engine, args, out),
        Command::Store(cmd) => store_command(engine, cmd, out)?,
    }
    Ok(EXIT_OK)
}

fn verify(
    cli: &Cli,
    engine: &Engine,
    args: &VerifyArgs,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let statements = args.statements().map_err(CliError::Usage)?;
    let bounds = args.bounds();
    let run = || -> Result<Vec<VerificationReport>, Error> {
        statements
            .iter()
            .map(|&st| run_statement(engine, st, &bounds))
            .collect()
    };
    let reports = match cli.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let io_err = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    for r in &reports {
        match cli.format {
            Some(Format::Structured) => writeln!(out, "{}", r.to_json()),
            _ => writeln!(out, "{r}").and_then(|_| {
                r.failures().iter().try_for_each(|f| {
                    writeln!(out, "  [{}] {}: {}", f.clause, f.instance, f.detail)
                })
            }),
        }
        .map_err(io_err)?;
    }
    if let Some(path) = &args.report {
        let mut w = BufWriter::new(File::create(path).map_err(|e| CliError::Io(path.clone(), e))?);
        for r in &reports {
            writeln!(w, "{}", r.to_json()).map_err(|e| CliError::Io(path.clone(), e))?;
        }
        w.flush().map_err(|e| CliError::Io(path.clone(), e))?;
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn store_command(engine: &Engine, cmd: &StoreCommand, out: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |e| CliError::Io(PathBuf::from("<stdout>"), e);
    match cmd {
        StoreCommand::Export { out: path, kind } => {
            let kind = kind
                .as_deref()
                .map(str::parse::<Kind>)
                .transpose()
                .map_err(CliError::Usage)?;
            let count = match engine.store() {
                Some(store) => store.export_table(kind, path)?,
                None => 0,
            };
            writeln!(out, "{count}").map_err(io_err)?;
        }
        StoreCommand::Import {
            source,
            verify_every,
        } => {
            let count = engine.import_table(source, *verify_every)?;
            writeln!(out, "{count}").map_err(io_err)?;
        }
        StoreCommand::Compact => {}
        StoreCommand::Validate { every } => {
            let count = engine.validate_store(*every)?;
            writeln!(out, "{count}").map_err(io_err)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("repstab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_code_mapping() {
        let usage = CliError::Core(Error::SizeMismatch("x".into()));
        assert_eq!(usage.exit_code(), EXIT_USAGE);
        let compute = CliError::Core(Error::DegreeTooLarge {
            degree: 20,
            cap: 12,
        });
        assert_eq!(compute.exit_code(), EXIT_COMPUTE);
        let io = CliError::Io(PathBuf::from("x"), io::Error::other("x"));
        assert_eq!(io.exit_code(), EXIT_IO);
    }

    #[test]
    fn verify_cap_covers_box() {
        let cli = Cli::try_parse_from(["repstab", "verify", "oracle-equiv"]).unwrap();
        assert!(build_engine(&cli).unwrap().cap() >= 13);
        let cli = Cli::try_parse_from(["repstab", "--cap", "9", "verify", "all"]).unwrap();
        assert_eq!(build_engine(&cli).unwrap().cap(), 9);
        let cli = Cli::try_parse_from(["repstab", "lr", "[1]", "[1]", "[2]"]).unwrap();
        assert_eq!(build_engine(&cli).unwrap().cap(), DEFAULT_CAP);
    }

    #[test]
    fn in_process_run() {
        assert_eq!(
            run(&["lr", "[1]", "[1]", "[1,1]"]),
            (0, "1\n".into(), String::new())
        );
        let (code, _, err) = run(&["--format", "csv", "lr", "[1]", "[1]", "[2]"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("csv"));
        let (code, _, err) = run(&["pad", "[2,1]", "4"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage: pad <CORE> <TOTAL>"), "{err}");
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }
}
