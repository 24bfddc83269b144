//! Enigma rotor-machine simulator with an exact keyspace analyzer and a
//! known-plaintext key search.
//!
//! - [`permutation`]: letters and permutations of the 26-letter alphabet.
//! - [`machine`]: component specs, keys, stepping and encryption.
//! - [`combinatorics`]: exact factorials, binomials and pairing counts.
//! - [`keyspace`]: the theoretical and operational keyspace reports.
//! - [`search`]: exhaustive crib search over rotor order and positions.
//! - [`cli`]: the `enigma` command-line tool.

pub mod cli;
pub mod combinatorics;
pub mod keyspace;
pub mod machine;
pub mod permutation;
pub mod search;

pub use combinatorics::BigCount;
pub use machine::{Key, Machine, MachineConfig, MachineDefinition, MachineState};
pub use permutation::{Letter, Permutation};
