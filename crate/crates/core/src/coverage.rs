//! Process-wide counters recording which coefficient operations have run.
//!
//! Used by the test suite to assert that a verification run touched every operation.

use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Pad,
    PaddedIndexSet,
    HorizontalStripRemovals,
    LrCoeff,
    PieriCoeff,
    LrCoeff3,
    KroneckerCoeff,
    ReducedKroneckerLimit,
    ReducedKronecker,
    ReducedKroneckerOneRow,
    TauMultiplicity,
    InducedMultiplicity,
}

impl Op {
    pub const ALL: [Op; 12] = [
        Op::Pad,
        Op::PaddedIndexSet,
        Op::HorizontalStripRemovals,
        Op::LrCoeff,
        Op::PieriCoeff,
        Op::LrCoeff3,
        Op::KroneckerCoeff,
        Op::ReducedKroneckerLimit,
        Op::ReducedKronecker,
        Op::ReducedKroneckerOneRow,
        Op::TauMultiplicity,
        Op::InducedMultiplicity,
    ];
}

static COUNTS: [AtomicU64; 12] = [const { AtomicU64::new(0) }; 12];

pub(crate) fn hit(op: Op) {
    COUNTS[op as usize].fetch_add(1, Ordering::Relaxed);
}

/// Number of calls to `op` since process start.
pub fn count(op: Op) -> u64 {
    COUNTS[op as usize].load(Ordering::Relaxed)
}

/// Snapshot of all counters, in `Op::ALL` order.
pub fn snapshot() -> Vec<(Op, u64)> {
    Op::ALL.iter().map(|&op| (op, count(op))).collect()
}
