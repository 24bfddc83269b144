//! Exact big-integer counting: factorials, binomials, odd double factorials,
//! plugboard pairings, ordered selections and notch orientations.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::permutation::ALPHABET;

/// An exact non-negative count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("binomial({n}, {k}) needs 0 <= k <= n")]
    BinomialRange { n: i64, k: i64 },
    #[error("double factorial is defined here for odd m >= -1, got {0}")]
    EvenDoubleFactorial(i64),
    #[error("cable count {p} outside 0..={max}")]
    CableCount { p: u32, max: u32 },
    #[error("cannot fill {slots} slots from a pool of {pool}")]
    PoolTooSmall { pool: BigCount, slots: u32 },
}

impl BigCount {
    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn pow(&self, exp: u32) -> BigCount {
        BigCount(self.0.pow(exp))
    }

    /// Decimal digits without separators.
    pub fn digits(&self) -> String {
        self.0.to_str_radix(10)
    }

    /// Decimal digits grouped in threes with commas, e.g. `17,576`.
    pub fn with_separators(&self) -> String {
        let digits = self.digits();
        let mut out = String::with_capacity(digits.len() + digits.len() / 3);
        for (i, c) in digits.chars().enumerate() {
            if i > 0 && (digits.len() - i).is_multiple_of(3) {
                out.push(',');
            }
            out.push(c);
        }
        out
    }

    /// Parses plain digits, ignoring comma separators.
    pub fn parse(text: &str) -> Option<BigCount> {
        let cleaned: String = text.chars().filter(|&c| c != ',').collect();
        BigUint::parse_bytes(cleaned.as_bytes(), 10).map(BigCount)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        BigCount(iter.map(|c| c.0).sum())
    }
}

impl<'a> Product<&'a BigCount> for BigCount {
    fn product<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        BigCount(iter.fold(BigUint::one(), |acc, c| acc * &c.0))
    }
}

pub fn factorial(n: u32) -> BigCount {
    BigCount((1..=n).fold(BigUint::one(), |acc, k| acc * k))
}

pub fn binomial(n: i64, k: i64) -> Result<BigCount, CombinatoricsError> {
    if n < 0 || k < 0 || k > n {
        return Err(CombinatoricsError::BinomialRange { n, k });
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // c_i = c_{i-1} * (n - k + i) / i stays integral at every step
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    Ok(BigCount(acc))
}

/// `m!! = m (m-2) ... 3 1` for odd `m`, with `(-1)!! = 1`.
pub fn double_factorial_odd(m: i64) -> Result<BigCount, CombinatoricsError> {
    if m < -1 || m % 2 == 0 {
        return Err(CombinatoricsError::EvenDoubleFactorial(m));
    }
    let mut acc = BigUint::one();
    let mut k = m;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(BigCount(acc))
}

/// Ways to place `p` two-ended cables on an `alphabet`-socket board:
/// `n! / ((n - 2p)! p! 2^p)`.
pub fn pairings(alphabet: u32, p: u32) -> Result<BigCount, CombinatoricsError> {
    let max = alphabet / 2;
    if p > max {
        return Err(CombinatoricsError::CableCount { p, max });
    }
    let numerator = factorial(alphabet).0;
    let denominator = factorial(alphabet - 2 * p).0 * factorial(p).0 * (BigUint::one() << p);
    Ok(BigCount(numerator / denominator))
}

/// Plugboard settings with exactly `p` cables on the 26-letter board.
pub fn plugboard_combinations(p: u32) -> Result<BigCount, CombinatoricsError> {
    pairings(ALPHABET as u32, p)
}

/// All plugboard settings with 0 to 13 cables.
pub fn total_plugboard_combinations() -> BigCount {
    (0..=13).map(|p| plugboard_combinations(p).expect("p in range")).sum()
}

/// The cable count with the most plugboard settings.
pub fn argmax_plugboard() -> u32 {
    (0..=13u32).max_by_key(|&p| plugboard_combinations(p).expect("p in range")).expect("non-empty range")
}

/// Falling product `pool (pool - 1) ... (pool - slots + 1)`.
pub fn ordered_selection(pool: &BigCount, slots: u32) -> Result<BigCount, CombinatoricsError> {
    if pool.0 < BigUint::from(slots) {
        return Err(CombinatoricsError::PoolTooSmall { pool: pool.clone(), slots });
    }
    let acc = (0..slots).fold(BigUint::one(), |acc, i| acc * (&pool.0 - i));
    Ok(BigCount(acc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotchKind {
    Single,
    Dual,
    /// A ring that may carry either one or two notches.
    SingleOrDual,
}

/// Orientations of a notched ring: 26 for one notch, 26 x 25 for two.
pub fn notched_ring_orientations(kind: NotchKind) -> BigCount {
    let n = ALPHABET as u64;
    BigCount::from(match kind {
        NotchKind::Single => n,
        NotchKind::Dual => n * (n - 1),
        NotchKind::SingleOrDual => n + n * (n - 1),
    })
}
