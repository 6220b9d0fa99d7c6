//! Littlewood–Richardson, Kronecker and reduced Kronecker coefficients, together with
//! exhaustive machine checks of stability and vanishing statements for reduced Kronecker
//! coefficients and partition-algebra branching multiplicities.

pub mod characters;
pub mod checks;
pub mod coverage;
mod engine;
mod error;
mod kronecker;
pub mod lr;
pub mod partition;
pub mod store;

pub use characters::CharacterTable;
pub use engine::{Engine, DEFAULT_CAP};
pub use error::{Error, Result};
pub use partition::{
    padded_index_set, partitions, partitions_up_to, CycleType, PaddedPartition, Partition,
};
pub use store::{Key, Kind, Record, Store};
