//! Permutations of the 26-letter alphabet.
//!
//! Rotor wirings, plugboards and reflectors are all values of [`Permutation`].
//! Plugboards and reflectors are involutions, built with
//! [`Permutation::involution_from_pairs`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Size of the alphabet.
pub const ALPHABET: usize = 26;

/// One of the letters `A..=Z`, stored as its index `0..=25`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(u8);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("'{0}' is not a letter A-Z")]
    NotALetter(char),
    #[error("letter index {0} out of range 0..=25")]
    IndexOutOfRange(usize),
    #[error("wiring must have 26 letters, found {0}")]
    WrongLength(usize),
    #[error("wiring is not a bijection: {0} appears more than once")]
    RepeatedImage(Letter),
    #[error("letter {0} is used by more than one pair")]
    LetterReused(Letter),
    #[error("pair {0}{0} joins a letter to itself")]
    SelfPair(Letter),
    #[error("at most 13 pairs fit on 26 letters, got {0}")]
    TooManyPairs(usize),
}

impl Letter {
    pub const A: Letter = Letter(0);
    pub const Z: Letter = Letter(25);

    pub fn new(index: usize) -> Result<Self, PermutationError> {
        if index < ALPHABET {
            Ok(Letter(index as u8))
        } else {
            Err(PermutationError::IndexOutOfRange(index))
        }
    }

    /// Parses a character, uppercasing ASCII lowercase first.
    pub fn from_char(c: char) -> Result<Self, PermutationError> {
        let up = c.to_ascii_uppercase();
        if up.is_ascii_uppercase() {
            Ok(Letter(up as u8 - b'A'))
        } else {
            Err(PermutationError::NotALetter(c))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_char(self) -> char {
        (b'A' + self.0) as char
    }

    /// `self + by` reduced mod 26; `by` may be negative.
    pub fn shift(self, by: i32) -> Letter {
        Letter((self.0 as i32 + by).rem_euclid(ALPHABET as i32) as u8)
    }

    pub fn next(self) -> Letter {
        self.shift(1)
    }

    pub fn all() -> impl Iterator<Item = Letter> + Clone {
        (0..ALPHABET as u8).map(Letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Parses a run of letters such as `"AQZ"`. Whitespace is not accepted.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, PermutationError> {
    s.chars().map(Letter::from_char).collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

/// A bijection on the alphabet; entry `i` holds the image of letter `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation([u8; ALPHABET]);

impl Permutation {
    pub fn identity() -> Self {
        let mut map = [0u8; ALPHABET];
        for (i, m) in map.iter_mut().enumerate() {
            *m = i as u8;
        }
        Permutation(map)
    }

    pub fn from_images(images: &[Letter]) -> Result<Self, PermutationError> {
        if images.len() != ALPHABET {
            return Err(PermutationError::WrongLength(images.len()));
        }
        let mut seen = [false; ALPHABET];
        let mut map = [0u8; ALPHABET];
        for (i, img) in images.iter().enumerate() {
            if seen[img.index()] {
                return Err(PermutationError::RepeatedImage(*img));
            }
            seen[img.index()] = true;
            map[i] = img.0;
        }
        Ok(Permutation(map))
    }

    /// Swaps the two letters of each pair and fixes the rest.
    pub fn involution_from_pairs(pairs: &[(Letter, Letter)]) -> Result<Self, PermutationError> {
        if pairs.len() > ALPHABET / 2 {
            return Err(PermutationError::TooManyPairs(pairs.len()));
        }
        let mut map = Self::identity().0;
        let mut used = [false; ALPHABET];
        for &(a, b) in pairs {
            if a == b {
                return Err(PermutationError::SelfPair(a));
            }
            for l in [a, b] {
                if used[l.index()] {
                    return Err(PermutationError::LetterReused(l));
                }
                used[l.index()] = true;
            }
            map[a.index()] = b.0;
            map[b.index()] = a.0;
        }
        Ok(Permutation(map))
    }

    /// Transposition of two letters.
    pub fn swap(a: Letter, b: Letter) -> Self {
        let mut map = Self::identity().0;
        map.swap(a.index(), b.index());
        Permutation(map)
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`. Panics on repeated letters.
    pub fn cycle(c: &[Letter]) -> Self {
        let mut map = Self::identity().0;
        for (i, l) in c.iter().enumerate() {
            map[l.index()] = c[(i + 1) % c.len()].0;
        }
        Self::from_images(&map.map(Letter)).expect("cycle letters must be distinct")
    }

    pub fn apply(&self, x: Letter) -> Letter {
        Letter(self.0[x.index()])
    }

    /// `self ∘ other`: maps `x` to `self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut map = [0u8; ALPHABET];
        for (i, m) in map.iter_mut().enumerate() {
            *m = self.0[other.0[i] as usize];
        }
        Permutation(map)
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = [0u8; ALPHABET];
        for (i, &img) in self.0.iter().enumerate() {
            map[img as usize] = i as u8;
        }
        Permutation(map)
    }

    pub fn fixed_points(&self) -> BTreeSet<Letter> {
        Letter::all().filter(|&l| self.apply(l) == l).collect()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Self::identity()
    }

    /// The pairs `(a, b)` with `a < b` swapped by this permutation, or `None`
    /// when it is not an involution.
    pub fn pairs(&self) -> Option<Vec<(Letter, Letter)>> {
        if !self.is_involution() {
            return None;
        }
        Some(
            Letter::all()
                .filter_map(|a| {
                    let b = self.apply(a);
                    (a < b).then_some((a, b))
                })
                .collect(),
        )
    }

    pub(crate) fn table(&self) -> &[u8; ALPHABET] {
        &self.0
    }
}

impl Default for Permutation {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", (b'A' + b) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    /// Parses the 26-letter text form, e.g. `"ABCDEFGHIJKLMNOPQRSTUVWXYZ"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = parse_letters(s)?;
        Self::from_images(&letters)
    }
}
