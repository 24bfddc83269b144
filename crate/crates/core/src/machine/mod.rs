//! The rotor machine: component specs, key configuration, stepping and the
//! reciprocal signal path.
//!
//! A [`MachineConfig`] names its rotors and reflector by id. Resolving those
//! ids against a [`MachineDefinition`] and checking every invariant yields a
//! [`Machine`], which is the only type that can step or encrypt.
//!
//! Signal path for one keypress (after the rotors have stepped):
//!
//! ```text
//! plugboard -> right .. left (-> static) -> reflector -> (static ->) left .. right -> plugboard
//! ```
//!
//! The entry disc between plugboard and rotors is the identity.

mod definition;
mod key;

pub use definition::{DefinitionError, MachineDefinition};
pub use key::{Key, KeyParseError};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::permutation::{Letter, Permutation, PermutationError, ALPHABET};

/// A moving rotor with one or two turnover notches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotorSpec {
    pub id: String,
    /// Wiring at ring `A`, position `A`.
    pub wiring: Permutation,
    /// Window letters at which this rotor carries its left neighbour on the next keypress.
    pub notches: Vec<Letter>,
}

/// The non-stepping fourth rotor of the naval model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticRotorSpec {
    pub id: String,
    pub wiring: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectorSpec {
    pub id: String,
    pub wiring: Permutation,
}

/// Plugboard cables as unordered letter pairs, 0 to 13 of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlugboardSetting {
    pub pairs: Vec<(Letter, Letter)>,
}

impl PlugboardSetting {
    pub fn new(pairs: Vec<(Letter, Letter)>) -> Self {
        PlugboardSetting { pairs }
    }

    pub fn permutation(&self) -> Result<Permutation, PermutationError> {
        Permutation::involution_from_pairs(&self.pairs)
    }
}

impl fmt::Display for PlugboardSetting {
    /// Space separated pairs, e.g. `AB CD`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PlugboardSetting {
    type Err = PermutationError;

    /// Parses `"AB CD EF"`. Letter reuse is caught by validation, not here.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for tok in s.split_whitespace() {
            let letters = crate::permutation::parse_letters(tok)?;
            match letters.as_slice() {
                [a, b] => pairs.push((*a, *b)),
                _ => return Err(PermutationError::WrongLength(letters.len())),
            }
        }
        Ok(PlugboardSetting { pairs })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Three moving rotors.
    Army3,
    /// A static rotor in the leftmost slot followed by three moving rotors.
    Naval4,
}

impl Model {
    pub fn rotor_count(self) -> usize {
        match self {
            Model::Army3 => 3,
            Model::Naval4 => 4,
        }
    }

    fn static_slots(self) -> usize {
        self.rotor_count() - 3
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Army3 => "Army3",
            Model::Naval4 => "Naval4",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SteppingMode {
    /// Middle rotor moves once per 26 keypresses, left once per 676.
    #[default]
    Odometer,
    /// Adds the middle-rotor double step of the historical pawl mechanism.
    HistoricalDoubleStep,
}

impl fmt::Display for SteppingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SteppingMode::Odometer => "odometer",
            SteppingMode::HistoricalDoubleStep => "historical",
        })
    }
}

/// The key, minus the initial rotor positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineConfig {
    pub model: Model,
    /// Rotor ids left to right; for `Naval4` the first is the static rotor.
    pub rotors: Vec<String>,
    /// One ring setting per rotor, left to right.
    pub ring_settings: Vec<Letter>,
    pub plugboard: PlugboardSetting,
    pub reflector: String,
    pub stepping_mode: SteppingMode,
}

/// Window letters of every rotor, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineState {
    pub positions: Vec<Letter>,
}

impl MachineState {
    pub fn new(positions: Vec<Letter>) -> Self {
        MachineState { positions }
    }

    /// All rotors at `A`.
    pub fn zeroed(model: Model) -> Self {
        MachineState { positions: vec![Letter::A; model.rotor_count()] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("rotors: model {model} takes {expected} rotors, got {found}")]
    WrongRotorCount { model: Model, expected: usize, found: usize },
    #[error("rotors: rotor {0} is used more than once")]
    DuplicateRotor(String),
    #[error("rotors: unknown rotor {0}")]
    UnknownRotor(String),
    #[error("rotors: static rotor {0} may only sit in the leftmost slot of a Naval4 machine")]
    StaticRotorMisplaced(String),
    #[error("rotors: slot 1 of a Naval4 machine needs a static rotor, {0} steps")]
    MovingRotorInStaticSlot(String),
    #[error("rotors: rotor {id} must have 1 or 2 distinct notches, has {count}")]
    BadNotches { id: String, count: usize },
    #[error("reflector: unknown reflector {0}")]
    UnknownReflector(String),
    #[error("reflector: {id} is not an involution")]
    ReflectorNotInvolution { id: String },
    #[error("reflector: {id} must pair all 26 points, leaves {fixed} fixed")]
    ReflectorFixedPoints { id: String, fixed: usize },
    #[error("rings: expected {expected} ring settings, got {found}")]
    WrongRingCount { expected: usize, found: usize },
    #[error("plugboard: {0}")]
    Plugboard(PermutationError),
    #[error("positions: expected {expected} rotor positions, got {found}")]
    WrongPositionCount { expected: usize, found: usize },
    #[error("input: character {ch:?} at position {position} is not a letter")]
    InvalidInput { position: usize, ch: char },
}

/// Passes `ch` through one rotor whose window shows `position` and whose ring
/// is set to `ring`.
///
/// With `shift = position - ring`, forward is `wiring(ch + shift) - shift`;
/// backward uses the inverse wiring.
pub fn rotor_pass(ch: Letter, wiring: &Permutation, position: Letter, ring: Letter, direction: Direction) -> Letter {
    let shift = position.index() as i32 - ring.index() as i32;
    let entered = ch.shift(shift);
    let out = match direction {
        Direction::Forward => wiring.apply(entered),
        Direction::Backward => wiring.inverse().apply(entered),
    };
    out.shift(-shift)
}

#[derive(Clone, Debug)]
struct MountedRotor {
    forward: [u8; ALPHABET],
    backward: [u8; ALPHABET],
    ring: u8,
    notches: u32,
}

impl MountedRotor {
    fn new(wiring: &Permutation, ring: Letter, notches: &[Letter]) -> Self {
        MountedRotor {
            forward: *wiring.table(),
            backward: *wiring.inverse().table(),
            ring: ring.index() as u8,
            notches: notches.iter().fold(0, |m, n| m | 1 << n.index()),
        }
    }

    #[inline]
    fn at_notch(&self, position: u8) -> bool {
        self.notches & (1 << position) != 0
    }

    #[inline]
    fn pass(&self, table: &[u8; ALPHABET], ch: u8, position: u8) -> u8 {
        let shift = (position + ALPHABET as u8 - self.ring) % ALPHABET as u8;
        let out = table[((ch + shift) % ALPHABET as u8) as usize];
        (out + ALPHABET as u8 - shift) % ALPHABET as u8
    }
}

/// A validated configuration, ready to step and encrypt.
#[derive(Clone, Debug)]
pub struct Machine {
    config: MachineConfig,
    /// Left to right, static rotor first on `Naval4`.
    rotors: Vec<MountedRotor>,
    reflector: [u8; ALPHABET],
    plugboard: [u8; ALPHABET],
}

/// Checks every invariant of `config` against the components in `definition`.
pub fn validate(config: &MachineConfig, definition: &MachineDefinition) -> Result<Machine, MachineError> {
    let expected = config.model.rotor_count();
    if config.rotors.len() != expected {
        return Err(MachineError::WrongRotorCount { model: config.model, expected, found: config.rotors.len() });
    }
    let mut seen = HashSet::new();
    for id in &config.rotors {
        if !seen.insert(id.as_str()) {
            return Err(MachineError::DuplicateRotor(id.clone()));
        }
    }
    if config.ring_settings.len() != expected {
        return Err(MachineError::WrongRingCount { expected, found: config.ring_settings.len() });
    }

    let static_slots = config.model.static_slots();
    let mut rotors = Vec::with_capacity(expected);
    for (slot, (id, &ring)) in config.rotors.iter().zip(&config.ring_settings).enumerate() {
        let mounted = if slot < static_slots {
            match (definition.static_rotor(id), definition.rotor(id)) {
                (Some(s), _) => MountedRotor::new(&s.wiring, ring, &[]),
                (None, Some(_)) => return Err(MachineError::MovingRotorInStaticSlot(id.clone())),
                (None, None) => return Err(MachineError::UnknownRotor(id.clone())),
            }
        } else {
            match (definition.rotor(id), definition.static_rotor(id)) {
                (Some(r), _) => {
                    let distinct: HashSet<_> = r.notches.iter().collect();
                    if r.notches.is_empty() || r.notches.len() > 2 || distinct.len() != r.notches.len() {
                        return Err(MachineError::BadNotches { id: id.clone(), count: r.notches.len() });
                    }
                    MountedRotor::new(&r.wiring, ring, &r.notches)
                }
                (None, Some(_)) => return Err(MachineError::StaticRotorMisplaced(id.clone())),
                (None, None) => return Err(MachineError::UnknownRotor(id.clone())),
            }
        };
        rotors.push(mounted);
    }

    let reflector = definition
        .reflector(&config.reflector)
        .ok_or_else(|| MachineError::UnknownReflector(config.reflector.clone()))?;
    if !reflector.wiring.is_involution() {
        return Err(MachineError::ReflectorNotInvolution { id: reflector.id.clone() });
    }
    let fixed = reflector.wiring.fixed_points().len();
    if fixed != 0 {
        return Err(MachineError::ReflectorFixedPoints { id: reflector.id.clone(), fixed });
    }

    let plugboard = config.plugboard.permutation().map_err(MachineError::Plugboard)?;

    Ok(Machine { config: config.clone(), rotors, reflector: *reflector.wiring.table(), plugboard: *plugboard.table() })
}

impl Machine {
    pub fn config(&self) -> &MachineConfig {
        &self.config
    }

    pub fn check_state(&self, state: &MachineState) -> Result<(), MachineError> {
        let expected = self.rotors.len();
        if state.positions.len() == expected {
            Ok(())
        } else {
            Err(MachineError::WrongPositionCount { expected, found: state.positions.len() })
        }
    }

    /// Advances the rotors for one keypress.
    ///
    /// Panics if `state` has the wrong number of positions.
    pub fn step(&self, state: &MachineState) -> MachineState {
        let mut raw = self.raw_positions(state);
        self.advance(&mut raw);
        MachineState { positions: raw[..self.rotors.len()].iter().map(|&p| letter(p)).collect() }
    }

    /// Steps, then sends `ch` through the machine.
    pub fn encrypt_char(&self, state: &MachineState, ch: Letter) -> (Letter, MachineState) {
        let mut raw = self.raw_positions(state);
        self.advance(&mut raw);
        let out = self.signal(&raw, ch.index() as u8);
        let next = MachineState { positions: raw[..self.rotors.len()].iter().map(|&p| letter(p)).collect() };
        (letter(out), next)
    }

    /// The letter map of the machine frozen at `state`, without stepping.
    pub fn frozen_map(&self, state: &MachineState) -> Permutation {
        let raw = self.raw_positions(state);
        let images: Vec<Letter> = Letter::all().map(|l| letter(self.signal(&raw, l.index() as u8))).collect();
        Permutation::from_images(&images).expect("signal path is a bijection")
    }

    /// Encrypts (equivalently, decrypts) `text` starting from `initial`.
    ///
    /// Letters are uppercased. Other characters are dropped, or rejected with
    /// their zero-based character position when `strict` is set.
    pub fn encrypt_message(&self, initial: &MachineState, text: &str, strict: bool) -> Result<String, MachineError> {
        self.check_state(initial)?;
        let mut raw = self.raw_positions(initial);
        let mut out = String::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            match Letter::from_char(ch) {
                Ok(l) => {
                    self.advance(&mut raw);
                    out.push(letter(self.signal(&raw, l.index() as u8)).to_char());
                }
                Err(_) if strict => return Err(MachineError::InvalidInput { position, ch }),
                Err(_) => {}
            }
        }
        Ok(out)
    }

    /// Encrypts the first `len` letters of `text` (already validated as
    /// letter indices), writing into `out`.
    pub(crate) fn encrypt_indices(&self, initial: &MachineState, text: &[u8], out: &mut Vec<u8>) {
        let mut raw = self.raw_positions(initial);
        out.clear();
        for &ch in text {
            self.advance(&mut raw);
            out.push(self.signal(&raw, ch));
        }
    }

    fn raw_positions(&self, state: &MachineState) -> [u8; 4] {
        assert_eq!(state.positions.len(), self.rotors.len(), "state does not match the machine's rotor count");
        let mut raw = [0u8; 4];
        for (r, p) in raw.iter_mut().zip(&state.positions) {
            *r = p.index() as u8;
        }
        raw
    }

    fn advance(&self, pos: &mut [u8; 4]) {
        let n = self.rotors.len();
        let (left, middle, right) = (n - 3, n - 2, n - 1);
        let right_at_notch = self.rotors[right].at_notch(pos[right]);
        let middle_at_notch = self.rotors[middle].at_notch(pos[middle]);
        let bump = |p: &mut u8| *p = (*p + 1) % ALPHABET as u8;

        match self.config.stepping_mode {
            SteppingMode::Odometer => {
                if right_at_notch {
                    bump(&mut pos[middle]);
                    if middle_at_notch {
                        bump(&mut pos[left]);
                    }
                }
            }
            SteppingMode::HistoricalDoubleStep => {
                if middle_at_notch {
                    bump(&mut pos[middle]);
                    bump(&mut pos[left]);
                } else if right_at_notch {
                    bump(&mut pos[middle]);
                }
            }
        }
        bump(&mut pos[right]);
    }

    #[inline]
    fn signal(&self, pos: &[u8; 4], ch: u8) -> u8 {
        let mut c = self.plugboard[ch as usize];
        for (rotor, &p) in self.rotors.iter().zip(pos).rev() {
            c = rotor.pass(&rotor.forward, c, p);
        }
        c = self.reflector[c as usize];
        for (rotor, &p) in self.rotors.iter().zip(pos) {
            c = rotor.pass(&rotor.backward, c, p);
        }
        self.plugboard[c as usize]
    }
}

fn letter(raw: u8) -> Letter {
    Letter::new(raw as usize).expect("rotor arithmetic stays in 0..26")
}
