//! Memoized, optionally persistent store of computed coefficients.
//!
//! Each record is one line `kind|operand|…|value`, for example `kron|[2,1]|[2,1]|[2,1]|1`.
//! Partitions use the bracket form; scalar operands and values are decimal. Operands of
//! symmetric kinds are sorted into canonical order before storing, so `kron|[1]|[2]|…` and
//! `kron|[2]|[1]|…` name the same record.
//!
//! While a store is open, new records are appended to its file. `compact` rewrites the file
//! sorted and deduplicated; call it on clean shutdown.

use std::collections::HashMap;
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Character,
    Lr,
    Lr3,
    Kron,
    Rkron,
    Rkron1row,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Character,
        Kind::Lr,
        Kind::Lr3,
        Kind::Kron,
        Kind::Rkron,
        Kind::Rkron1row,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Character => "character",
            Kind::Lr => "lr",
            Kind::Lr3 => "lr3",
            Kind::Kron => "kron",
            Kind::Rkron => "rkron",
            Kind::Rkron1row => "rkron1row",
        }
    }

    /// Operand slots; `true` marks a scalar slot.
    fn slots(self) -> &'static [bool] {
        match self {
            Kind::Character => &[false, false],
            Kind::Lr | Kind::Kron | Kind::Rkron => &[false, false, false],
            Kind::Lr3 => &[false, false, false, false],
            Kind::Rkron1row => &[false, false, true],
        }
    }

    /// Length of the leading operand run that is symmetric under permutation.
    fn symmetric_prefix(self) -> usize {
        match self {
            Kind::Character => 0,
            Kind::Lr | Kind::Rkron1row => 2,
            Kind::Lr3 | Kind::Kron | Kind::Rkron => 3,
        }
    }

    pub fn arity(self) -> usize {
        self.slots().len()
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown record kind {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operand {
    Partition(Partition),
    Scalar(u32),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Partition(p) => fmt::Display::fmt(p, f),
            Operand::Scalar(k) => write!(f, "{k}"),
        }
    }
}

impl From<Partition> for Operand {
    fn from(p: Partition) -> Self {
        Operand::Partition(p)
    }
}

/// A canonical record key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    kind: Kind,
    operands: Vec<Operand>,
}

impl Key {
    /// Validates arity and operand types, then sorts symmetric operands.
    pub fn new(kind: Kind, mut operands: Vec<Operand>) -> std::result::Result<Key, String> {
        let slots = kind.slots();
        if operands.len() != slots.len() {
            return Err(format!(
                "{kind} takes {} operands, got {}",
                slots.len(),
                operands.len()
            ));
        }
        for (i, (op, &scalar)) in operands.iter().zip(slots).enumerate() {
            if matches!(op, Operand::Scalar(_)) != scalar {
                return Err(format!("{kind} operand {} has the wrong type", i + 1));
            }
        }
        let size = |op: &Operand| match op {
            Operand::Partition(p) => p.size(),
            Operand::Scalar(k) => *k,
        };
        match kind {
            Kind::Character | Kind::Kron => {
                let first = size(&operands[0]);
                if operands.iter().any(|o| size(o) != first) {
                    return Err(format!("{kind} operands must have equal sizes"));
                }
            }
            _ => {}
        }
        operands[..kind.symmetric_prefix()].sort();
        Ok(Key { kind, operands })
    }

    fn of(kind: Kind, parts: &[&Partition]) -> Key {
        let ops = parts
            .iter()
            .map(|&p| Operand::Partition(p.clone()))
            .collect();
        Key::new(kind, ops).expect("well-typed key")
    }

    pub fn character(lam: &Partition, rho: &Partition) -> Key {
        Key::of(Kind::Character, &[lam, rho])
    }

    pub fn lr(lam: &Partition, mu: &Partition, nu: &Partition) -> Key {
        Key::of(Kind::Lr, &[lam, mu, nu])
    }

    pub fn lr3(alpha: &Partition, beta: &Partition, gamma: &Partition, nu: &Partition) -> Key {
        Key::of(Kind::Lr3, &[alpha, beta, gamma, nu])
    }

    pub fn kron(lam: &Partition, mu: &Partition, nu: &Partition) -> Key {
        Key::of(Kind::Kron, &[lam, mu, nu])
    }

    pub fn rkron(lam: &Partition, mu: &Partition, nu: &Partition) -> Key {
        Key::of(Kind::Rkron, &[lam, mu, nu])
    }

    pub fn rkron1row(lam: &Partition, mu: &Partition, k: u32) -> Key {
        Key::new(
            Kind::Rkron1row,
            vec![
                Operand::Partition(lam.clone()),
                Operand::Partition(mu.clone()),
                Operand::Scalar(k),
            ],
        )
        .expect("well-typed key")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn operands(&self) -> &[Operand] {
        &self.operands
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for op in &self.operands {
            write!(f, "|{op}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Record {
    pub key: Key,
    pub value: i128,
}

impl Record {
    /// Parses one store line. Errors describe the problem without location.
    pub fn parse_line(line: &str) -> std::result::Result<Record, String> {
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('|').collect();
        if fields.len() < 2 {
            return Err("expected kind|operands…|value".into());
        }
        let kind: Kind = fields[0].parse()?;
        let slots = kind.slots();
        if fields.len() != slots.len() + 2 {
            return Err(format!(
                "{kind} record needs {} fields, found {}",
                slots.len() + 2,
                fields.len()
            ));
        }
        let operands = fields[1..fields.len() - 1]
            .iter()
            .zip(slots)
            .map(|(text, &scalar)| {
                if scalar {
                    text.parse::<u32>()
                        .map(Operand::Scalar)
                        .map_err(|_| format!("bad scalar operand {text:?}"))
                } else {
                    let p: Partition = text.parse().map_err(|e: Error| e.to_string())?;
                    if p.to_string() != *text {
                        return Err(format!("operand {text:?} is not in canonical text form"));
                    }
                    Ok(Operand::Partition(p))
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let key = Key::new(kind, operands)?;
        let raw = fields[fields.len() - 1];
        let value = parse_decimal(raw)?;
        if value < 0 && kind != Kind::Character {
            return Err(format!("{kind} value {value} is negative"));
        }
        Ok(Record { key, value })
    }
}

fn parse_decimal(raw: &str) -> std::result::Result<i128, String> {
    let digits = raw.strip_prefix('-').unwrap_or(raw);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("value {raw:?} is not a decimal integer"));
    }
    raw.parse::<i128>()
        .map_err(|_| format!("value {raw} exceeds the supported 128-bit range"))
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.key, self.value)
    }
}

/// Reads and validates every record of a store-format file.
pub fn read_records(path: &Path) -> Result<Vec<Record>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = Record::parse_line(&line).map_err(|reason| Error::StoreCorrupt {
            location: format!("{}:{}", path.display(), i + 1),
            reason,
        })?;
        out.push(record);
    }
    Ok(out)
}

/// Writes records, sorted, in store format. Returns the count written.
pub fn write_records(path: &Path, records: &[Record]) -> Result<usize> {
    let mut sorted: Vec<&Record> = records.iter().collect();
    sorted.sort();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for r in &sorted {
        writeln!(w, "{r}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(sorted.len())
}

pub struct Store {
    path: Option<PathBuf>,
    map: RwLock<HashMap<Key, i128>>,
    writer: Mutex<Option<BufWriter<File>>>,
}

impl Store {
    pub fn in_memory() -> Self {
        Store {
            path: None,
            map: RwLock::new(HashMap::new()),
            writer: Mutex::new(None),
        }
    }

    /// Opens (or creates) a store file, loading and validating every record.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::io(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let location = || format!("{}:{}", path.display(), i + 1);
                let record = Record::parse_line(&line).map_err(|reason| Error::StoreCorrupt {
                    location: location(),
                    reason,
                })?;
                if let Some(&old) = map.get(&record.key) {
                    if old != record.value {
                        return Err(Error::StoreCorrupt {
                            location: location(),
                            reason: format!(
                                "{} recorded earlier with value {old}, now {}",
                                record.key, record.value
                            ),
                        });
                    }
                }
                map.insert(record.key, record.value);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        Ok(Store {
            path: Some(path),
            map: RwLock::new(map),
            writer: Mutex::new(Some(BufWriter::new(file))),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &Key) -> Option<i128> {
        self.map.read().unwrap().get(key).copied()
    }

    /// Inserts a value. A different value already stored under the key is an error.
    pub fn insert(&self, key: Key, value: i128) -> Result<i128> {
        let mut map = self.map.write().unwrap();
        if let Some(&old) = map.get(&key) {
            if old != value {
                return Err(Error::StoreCorrupt {
                    location: self.describe(),
                    reason: format!("{key} already holds {old}, refusing {value}"),
                });
            }
            return Ok(old);
        }
        if let Some(w) = self.writer.lock().unwrap().as_mut() {
            let path = self.path.as_deref().unwrap_or(Path::new(""));
            writeln!(w, "{key}|{value}").map_err(|e| Error::io(path, e))?;
        }
        map.insert(key, value);
        Ok(value)
    }

    /// Returns the stored value, or runs `compute`, stores and returns its result.
    pub fn get_or_compute<F>(&self, key: Key, compute: F) -> Result<i128>
    where
        F: FnOnce() -> Result<i128>,
    {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let value = compute()?;
        self.insert(key, value)
    }

    /// All records, sorted canonically.
    pub fn records(&self) -> Vec<Record> {
        let mut out: Vec<Record> = self
            .map
            .read()
            .unwrap()
            .iter()
            .map(|(k, &v)| Record {
                key: k.clone(),
                value: v,
            })
            .collect();
        out.sort();
        out
    }

    /// Writes records (optionally of one kind) to `destination`; returns the count.
    pub fn export_table(&self, kind: Option<Kind>, destination: &Path) -> Result<usize> {
        let records: Vec<Record> = self
            .records()
            .into_iter()
            .filter(|r| kind.is_none_or(|k| r.key.kind == k))
            .collect();
        write_records(destination, &records)
    }

    /// Merges records from a store-format file; conflicting values are `StoreCorrupt`.
    pub fn import_table(&self, source: &Path) -> Result<usize> {
        let records = read_records(source)?;
        let count = records.len();
        for r in records {
            self.insert(r.key, r.value)?;
        }
        Ok(count)
    }

    pub fn flush(&self) -> Result<()> {
        if let (Some(w), Some(path)) = (self.writer.lock().unwrap().as_mut(), &self.path) {
            w.flush().map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }

    /// Rewrites the backing file sorted and deduplicated. No-op for in-memory stores.
    pub fn compact(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut writer = self.writer.lock().unwrap();
        if let Some(w) = writer.as_mut() {
            w.flush().map_err(|e| Error::io(path, e))?;
        }
        let tmp = path.with_extension("compact.tmp");
        write_records(&tmp, &self.records())?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))?;
        let file = OpenOptions::new()
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        *writer = Some(BufWriter::new(file));
        Ok(())
    }

    fn describe(&self) -> String {
        match &self.path {
            Some(p) => p.display().to_string(),
            None => "<memory>".into(),
        }
    }
}

impl Drop for Store {
    fn drop(&mut self) {
        if let Ok(mut w) = self.writer.lock() {
            if let Some(w) = w.as_mut() {
                let _ = w.flush();
            }
        }
    }
}
