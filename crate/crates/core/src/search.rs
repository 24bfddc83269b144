//! Known-plaintext exhaustive key search over rotor order and initial
//! positions, with plugboard, rings and reflector held fixed.
//!
//! Keys are numbered by a global `key_index`: rotor orderings vary slowest
//! (ordered selections of pool indices in lexicographic order), then window
//! positions odometer-style with the right rotor fastest. The search splits
//! the index range into contiguous blocks, ranks each block independently and
//! merges by `(score desc, key_index asc)`, so results do not depend on the
//! number of workers.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};
use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{ordered_selection, plugboard_combinations, BigCount};
use crate::machine::{
    validate, Key, Machine, MachineConfig, MachineDefinition, MachineError, MachineState, Model, PlugboardSetting,
    SteppingMode,
};
use crate::permutation::{letters_to_string, Letter};

/// Moving rotors searched over.
pub const SLOTS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("rotor pool is empty")]
    EmptyPool,
    #[error("rotor pool has {pool} rotors, need at least {SLOTS}")]
    PoolTooSmall { pool: usize },
    #[error("rotor {0} appears twice in the pool")]
    DuplicatePoolRotor(String),
    #[error("position range for slot {0} is empty")]
    EmptyPositionRange(usize),
    #[error("crib of {len} letters at offset {offset} overruns ciphertext of {ciphertext_len} letters")]
    CribOutOfBounds { offset: usize, len: usize, ciphertext_len: usize },
    #[error("crib character {ch:?} at position {position} is not a letter")]
    CribNotLetters { position: usize, ch: char },
    #[error("worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Known plaintext expected at `offset` in the ciphertext.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crib {
    plaintext: String,
    pub offset: usize,
}

impl Crib {
    /// Uppercases `text`; any non-letter is rejected.
    pub fn new(text: &str, offset: usize) -> Result<Self, SearchError> {
        for (position, ch) in text.chars().enumerate() {
            if !ch.is_ascii_alphabetic() {
                return Err(SearchError::CribNotLetters { position, ch });
            }
        }
        Ok(Crib { plaintext: text.to_ascii_uppercase(), offset })
    }

    pub fn plaintext(&self) -> &str {
        &self.plaintext
    }

    pub fn len(&self) -> usize {
        self.plaintext.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plaintext.is_empty()
    }

    fn check_bounds(&self, ciphertext_len: usize) -> Result<(), SearchError> {
        if self.offset + self.len() > ciphertext_len {
            Err(SearchError::CribOutOfBounds { offset: self.offset, len: self.len(), ciphertext_len })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub rotor_pool: Vec<String>,
    /// Candidate window letters per slot, left to right.
    pub position_ranges: [Vec<Letter>; SLOTS],
    pub ring_settings: [Letter; SLOTS],
    pub plugboard: PlugboardSetting,
    pub reflector: String,
    pub stepping_mode: SteppingMode,
}

impl SearchSpace {
    /// Every ordering of three pool rotors at every position, rings `AAA`,
    /// no plugboard cables, odometer stepping.
    pub fn full(rotor_pool: Vec<String>, reflector: impl Into<String>) -> Self {
        let all: Vec<Letter> = Letter::all().collect();
        SearchSpace {
            rotor_pool,
            position_ranges: [all.clone(), all.clone(), all],
            ring_settings: [Letter::A; SLOTS],
            plugboard: PlugboardSetting::default(),
            reflector: reflector.into(),
            stepping_mode: SteppingMode::Odometer,
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.rotor_pool.is_empty() {
            return Err(SearchError::EmptyPool);
        }
        if self.rotor_pool.len() < SLOTS {
            return Err(SearchError::PoolTooSmall { pool: self.rotor_pool.len() });
        }
        let mut seen = HashSet::new();
        for id in &self.rotor_pool {
            if !seen.insert(id) {
                return Err(SearchError::DuplicatePoolRotor(id.clone()));
            }
        }
        if let Some(slot) = self.position_ranges.iter().position(Vec::is_empty) {
            return Err(SearchError::EmptyPositionRange(slot));
        }
        Ok(())
    }

    /// `ordered_selection(|pool|, 3)` times the product of the range sizes.
    pub fn key_count(&self) -> BigCount {
        let orders = ordered_selection(&BigCount::from(self.rotor_pool.len() as u64), SLOTS as u32)
            .unwrap_or_else(|_| BigCount::from(0));
        orders * BigCount::from(self.positions_per_order() as u64)
    }

    fn positions_per_order(&self) -> usize {
        self.position_ranges.iter().map(Vec::len).product()
    }
}

/// Random access into the key sequence of a [`SearchSpace`].
#[derive(Clone, Debug)]
pub struct KeyEnumerator<'a> {
    space: &'a SearchSpace,
    orderings: Vec<[usize; SLOTS]>,
    positions_per_order: usize,
}

impl<'a> KeyEnumerator<'a> {
    pub fn new(space: &'a SearchSpace) -> Result<Self, SearchError> {
        space.check()?;
        let n = space.rotor_pool.len();
        let mut orderings = Vec::with_capacity(n * (n - 1) * (n - 2));
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                for c in (0..n).filter(|&c| c != a && c != b) {
                    orderings.push([a, b, c]);
                }
            }
        }
        Ok(KeyEnumerator { space, orderings, positions_per_order: space.positions_per_order() })
    }

    pub fn len(&self) -> usize {
        self.orderings.len() * self.positions_per_order
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn config(&self, ordering: usize) -> MachineConfig {
        let space = self.space;
        MachineConfig {
            model: Model::Army3,
            rotors: self.orderings[ordering].iter().map(|&i| space.rotor_pool[i].clone()).collect(),
            ring_settings: space.ring_settings.to_vec(),
            plugboard: space.plugboard.clone(),
            reflector: space.reflector.clone(),
            stepping_mode: space.stepping_mode,
        }
    }

    fn state(&self, position_index: usize) -> MachineState {
        let mut rest = position_index;
        let mut positions = [Letter::A; SLOTS];
        for slot in (0..SLOTS).rev() {
            let range = &self.space.position_ranges[slot];
            positions[slot] = range[rest % range.len()];
            rest /= range.len();
        }
        MachineState::new(positions.to_vec())
    }

    /// The key with global index `index`. Panics if `index >= len()`.
    pub fn key_at(&self, index: usize) -> Key {
        assert!(index < self.len(), "key index {index} out of range");
        Key {
            config: self.config(index / self.positions_per_order),
            state: self.state(index % self.positions_per_order),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Key> + '_ {
        (0..self.len()).map(move |i| self.key_at(i))
    }
}

/// Every key of `space` in enumeration order.
pub fn enumerate_keys(space: &SearchSpace) -> Result<Vec<Key>, SearchError> {
    let keys = KeyEnumerator::new(space)?;
    Ok(keys.iter().collect())
}

/// Uppercases and drops everything that is not a letter.
pub fn normalize_text(text: &str) -> String {
    text.chars().filter(char::is_ascii_alphabetic).map(|c| c.to_ascii_uppercase()).collect()
}

fn to_indices(text: &str) -> Vec<u8> {
    text.bytes().map(|b| b.to_ascii_uppercase() - b'A').collect()
}

/// Offsets at which `crib` could sit in `ciphertext`: those where no crib
/// letter coincides with the ciphertext letter above it, since the machine
/// never encrypts a letter to itself.
pub fn prune_by_self_encryption(ciphertext: &str, crib: &str) -> BTreeSet<usize> {
    let ct = normalize_text(ciphertext).into_bytes();
    let crib = crib.to_ascii_uppercase().into_bytes();
    if crib.len() > ct.len() {
        return BTreeSet::new();
    }
    (0..=ct.len() - crib.len()).filter(|&off| crib.iter().zip(&ct[off..]).all(|(p, c)| p != c)).collect()
}

/// Decrypts with `key` and counts crib letters reproduced at the crib offset.
pub fn score_candidate(
    ciphertext: &str,
    crib: &Crib,
    key: &Key,
    definition: &MachineDefinition,
) -> Result<usize, SearchError> {
    let ct = normalize_text(ciphertext);
    crib.check_bounds(ct.len())?;
    let machine = validate(&key.config, definition)?;
    machine.check_state(&key.state)?;
    let mut scratch = Vec::new();
    Ok(score_with(&machine, &key.state, &to_indices(&ct), &to_indices(crib.plaintext()), crib.offset, &mut scratch))
}

fn score_with(
    machine: &Machine,
    state: &MachineState,
    ciphertext: &[u8],
    crib: &[u8],
    offset: usize,
    scratch: &mut Vec<u8>,
) -> usize {
    machine.encrypt_indices(state, &ciphertext[..offset + crib.len()], scratch);
    scratch[offset..].iter().zip(crib).filter(|(a, b)| a == b).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub key: Key,
    pub score: usize,
    pub key_index: usize,
}

/// Smaller is better.
type RankKey = (Reverse<usize>, usize);

fn score_block(
    keys: &KeyEnumerator<'_>,
    definition: &MachineDefinition,
    block: Range<usize>,
    ciphertext: &[u8],
    crib: &[u8],
    offset: usize,
    top_k: usize,
) -> Result<Vec<RankKey>, SearchError> {
    let mut best: BinaryHeap<RankKey> = BinaryHeap::with_capacity(top_k + 1);
    let mut scratch = Vec::with_capacity(ciphertext.len());
    let mut mounted: Option<(usize, Machine)> = None;
    for index in block {
        let ordering = index / keys.positions_per_order;
        if mounted.as_ref().map(|(o, _)| *o) != Some(ordering) {
            mounted = Some((ordering, validate(&keys.config(ordering), definition)?));
        }
        let machine = &mounted.as_ref().expect("mounted above").1;
        let state = keys.state(index % keys.positions_per_order);
        let score = score_with(machine, &state, ciphertext, crib, offset, &mut scratch);
        let rank = (Reverse(score), index);
        if best.len() < top_k {
            best.push(rank);
        } else if best.peek().is_some_and(|worst| rank < *worst) {
            best.pop();
            best.push(rank);
        }
    }
    Ok(best.into_vec())
}

/// Scores every key in `space` against `crib` and returns the best `top_k`,
/// sorted by score descending then key index ascending.
///
/// If the crib's offset is ruled out by [`prune_by_self_encryption`] no key
/// can reproduce it and the result is empty. `jobs` is the number of worker
/// threads; the output is the same for any value.
pub fn brute_force(
    ciphertext: &str,
    crib: &Crib,
    space: &SearchSpace,
    definition: &MachineDefinition,
    top_k: usize,
    jobs: usize,
) -> Result<Vec<SearchResult>, SearchError> {
    let ct_text = normalize_text(ciphertext);
    crib.check_bounds(ct_text.len())?;
    let keys = KeyEnumerator::new(space)?;
    // surface configuration errors before spawning workers
    validate(&keys.config(0), definition)?;

    if top_k == 0 || !prune_by_self_encryption(&ct_text, crib.plaintext()).contains(&crib.offset) {
        return Ok(Vec::new());
    }

    let ct = to_indices(&ct_text);
    let crib_idx = to_indices(crib.plaintext());
    let total = keys.len();
    let jobs = jobs.max(1);
    let block_len = total.div_ceil(jobs * 8).max(1);
    let blocks: Vec<Range<usize>> =
        (0..total).step_by(block_len).map(|start| start..(start + block_len).min(total)).collect();

    let workers =
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| SearchError::Workers(e.to_string()))?;
    let partials: Vec<Vec<RankKey>> = workers.install(|| {
        blocks
            .into_par_iter()
            .map(|b| score_block(&keys, definition, b, &ct, &crib_idx, crib.offset, top_k))
            .collect::<Result<_, _>>()
    })?;

    let mut merged: Vec<RankKey> = partials.into_iter().flatten().collect();
    merged.sort_unstable();
    merged.truncate(top_k);
    Ok(merged
        .into_iter()
        .map(|(Reverse(score), key_index)| SearchResult { key: keys.key_at(key_index), score, key_index })
        .collect())
}

/// Plain-text report of a finished search.
pub fn render_report(space: &SearchSpace, crib: &Crib, results: &[SearchResult]) -> String {
    let mut out = String::new();
    let orders = ordered_selection(&BigCount::from(space.rotor_pool.len() as u64), SLOTS as u32)
        .unwrap_or_else(|_| BigCount::from(0));
    writeln!(
        out,
        "keys searched: {} ({} rotor orders x {} positions)",
        space.key_count().with_separators(),
        orders.with_separators(),
        BigCount::from(space.positions_per_order() as u64).with_separators()
    )
    .unwrap();
    let plugboard =
        if space.plugboard.pairs.is_empty() { "no cables".to_string() } else { space.plugboard.to_string() };
    writeln!(
        out,
        "plugboard held fixed ({plugboard}); the 10-cable factor {} is not searched",
        plugboard_combinations(10).expect("10 <= 13").with_separators()
    )
    .unwrap();
    writeln!(out, "crib: {} at offset {}", crib.plaintext(), crib.offset).unwrap();

    let rotor_w = results.iter().map(|r| r.key.config.rotors.join(",").len()).max().unwrap_or(0).max("rotors".len());
    let score_w = format!("{}/{}", crib.len(), crib.len()).len().max("score".len());
    writeln!(out, "{:>4}  {:<rotor_w$}  {:<3}  {:>score_w$}  key", "rank", "rotors", "pos", "score").unwrap();
    for (rank, r) in results.iter().enumerate() {
        writeln!(
            out,
            "{:>4}  {:<rotor_w$}  {:<3}  {:>score_w$}  {}",
            rank + 1,
            r.key.config.rotors.join(","),
            letters_to_string(&r.key.state.positions),
            format!("{}/{}", r.score, crib.len()),
            r.key
        )
        .unwrap();
    }
    if results.is_empty() {
        writeln!(out, "no candidates: the crib offset is ruled out by self-encryption").unwrap();
    }
    out
}
