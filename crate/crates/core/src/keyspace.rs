//! Keyspace reports: the five variable components of a machine and their
//! exact product.
//!
//! Three reports are provided: the theoretical 3-rotor army configuration
//! count, the theoretical 4-rotor naval count, and the operational
//! crypt-variable space faced when the wirings are known.

use std::fmt::Write as _;

use thiserror::Error;

use crate::combinatorics::{
    double_factorial_odd, factorial, notched_ring_orientations, ordered_selection, plugboard_combinations,
    total_plugboard_combinations, BigCount, NotchKind,
};

/// Order of magnitude of the atom count of the observable universe.
pub const ATOMS_EXPONENT: usize = 80;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyspaceError {
    #[error("cannot render zero in scientific notation")]
    Zero,
    #[error("need at least one significant digit")]
    NoDigits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    /// Short identifier, also used as the key of the tab-separated form.
    pub name: String,
    pub count: BigCount,
    pub formula: String,
    /// Where the count comes from.
    pub basis: String,
}

impl ComponentCount {
    fn new(name: &str, count: BigCount, formula: &str, basis: &str) -> Self {
        debug_assert!(!count.is_zero());
        ComponentCount { name: name.into(), count, formula: formula.into(), basis: basis.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyspaceReport {
    pub title: String,
    pub components: Vec<ComponentCount>,
}

impl KeyspaceReport {
    /// Exact product of all component counts, recomputed on every call.
    pub fn product(&self) -> BigCount {
        self.components.iter().map(|c| &c.count).product()
    }

    pub fn scientific(&self, significant_digits: usize) -> String {
        format_scientific(&self.product(), significant_digits).expect("component counts are positive")
    }

    /// Aligned plain-text table followed by the exact product, the atom
    /// comparison and the one-significant-figure total.
    pub fn render_table(&self) -> String {
        let headers = ["component", "count", "formula", "basis"];
        let rows: Vec<[String; 4]> = self
            .components
            .iter()
            .map(|c| [c.name.clone(), c.count.with_separators(), c.formula.clone(), c.basis.clone()])
            .collect();
        let mut widths = headers.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }

        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        let line = |cells: [&str; 4]| {
            format!(
                "{:<w0$}  {:>w1$}  {:<w2$}  {}",
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2]
            )
        };
        writeln!(out, "{}", line(headers)).unwrap();
        for row in &rows {
            writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3]])).unwrap();
        }
        writeln!(out, "product: {}", self.product().with_separators()).unwrap();
        writeln!(out, "atoms:   {}", atoms_comparison(self)).unwrap();
        writeln!(out, "total:   {}", self.scientific(1)).unwrap();
        out
    }

    /// One `name<TAB>exact_count` line per component, then the product.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            writeln!(out, "{}\t{}", c.name, c.count.digits()).unwrap();
        }
        writeln!(out, "product\t{}", self.product().digits()).unwrap();
        out
    }
}

fn pow26(exp: u32) -> BigCount {
    BigCount::from(26).pow(exp)
}

/// Three moving rotors chosen from every possible wiring.
pub fn army_theoretical() -> KeyspaceReport {
    let f26 = factorial(26);
    KeyspaceReport {
        title: "Army 3-rotor theoretical configurations".into(),
        components: vec![
            ComponentCount::new(
                "plugboard",
                total_plugboard_combinations(),
                "sum_{p=0..13} 26!/((26-2p)! p! 2^p)",
                "all cable counts 0 to 13",
            ),
            ComponentCount::new(
                "rotor-order",
                ordered_selection(&f26, 3).expect("26! >= 3"),
                "26! (26!-1) (26!-2)",
                "3 distinct wired discs, ordered",
            ),
            ComponentCount::new("rotor-positions", pow26(3), "26^3", "initial window letters"),
            ComponentCount::new("ring-positions", pow26(2), "26^2", "notch rings of middle and right rotors"),
            ComponentCount::new(
                "reflector",
                double_factorial_odd(25).expect("25 is odd"),
                "25!!",
                "13 wires pairing 26 contacts",
            ),
        ],
    }
}

/// Adds the non-interchangeable static fourth rotor.
pub fn naval_theoretical() -> KeyspaceReport {
    let f26 = factorial(26);
    KeyspaceReport {
        title: "Naval 4-rotor theoretical configurations".into(),
        components: vec![
            ComponentCount::new(
                "plugboard",
                total_plugboard_combinations(),
                "sum_{p=0..13} 26!/((26-2p)! p! 2^p)",
                "unchanged by the fourth rotor",
            ),
            ComponentCount::new(
                "rotor-order",
                ordered_selection(&f26, 3).expect("26! >= 3") * f26,
                "26! (26!-1) (26!-2) 26!",
                "static fourth rotor chosen independently",
            ),
            ComponentCount::new("rotor-positions", pow26(4), "26^4", "initial window letters, 4 rotors"),
            ComponentCount::new(
                "ring-positions",
                pow26(4),
                "26^4",
                "count as stated for 4 rings; only middle and right notches affect stepping",
            ),
            ComponentCount::new(
                "reflector",
                double_factorial_odd(25).expect("25 is odd"),
                "25!!",
                "thin reflector, same pairing count",
            ),
        ],
    }
}

/// Known wirings, five discs, ten plugboard cables.
pub fn operational_cryptvariables() -> KeyspaceReport {
    KeyspaceReport {
        title: "Operational crypt-variables (known wirings)".into(),
        components: vec![
            ComponentCount::new(
                "plugboard",
                plugboard_combinations(10).expect("10 <= 13"),
                "26!/(6! 10! 2^10)",
                "10 cables",
            ),
            ComponentCount::new(
                "rotor-order",
                ordered_selection(&BigCount::from(5), 3).expect("5 >= 3"),
                "5 x 4 x 3",
                "3 of 5 known discs, ordered",
            ),
            ComponentCount::new("rotor-positions", pow26(3), "26^3", "initial window letters"),
            ComponentCount::new(
                "ring-positions",
                notched_ring_orientations(NotchKind::Single).pow(2),
                "26^2",
                "single-notch rings, middle and right",
            ),
            ComponentCount::new("reflector", BigCount::one(), "1", "single known reflector"),
        ],
    }
}

/// Renders `n` as `d.dd… × 10^e` with `significant_digits` mantissa digits,
/// rounding half up.
pub fn format_scientific(n: &BigCount, significant_digits: usize) -> Result<String, KeyspaceError> {
    if n.is_zero() {
        return Err(KeyspaceError::Zero);
    }
    if significant_digits == 0 {
        return Err(KeyspaceError::NoDigits);
    }
    let digits: Vec<u8> = n.digits().bytes().map(|b| b - b'0').collect();
    let mut exponent = digits.len() - 1;
    let mut mantissa: Vec<u8> = digits.iter().copied().chain(std::iter::repeat(0)).take(significant_digits).collect();

    if digits.get(significant_digits).is_some_and(|&d| d >= 5) {
        let mut i = significant_digits;
        let mut carry = true;
        while carry && i > 0 {
            i -= 1;
            mantissa[i] += 1;
            carry = mantissa[i] == 10;
            if carry {
                mantissa[i] = 0;
            }
        }
        if carry {
            // 9.99… rounded up to 10.0…
            mantissa.insert(0, 1);
            mantissa.pop();
            exponent += 1;
        }
    }

    let mut out = String::new();
    out.push((b'0' + mantissa[0]) as char);
    if mantissa.len() > 1 {
        out.push('.');
        out.extend(mantissa[1..].iter().map(|&d| (b'0' + d) as char));
    }
    write!(out, " × 10^{exponent}").unwrap();
    Ok(out)
}

/// Compares the order of magnitude of `n` with the 10^80 atoms of the
/// observable universe.
pub fn atoms_comparison_of(n: &BigCount) -> String {
    let exponent = n.digits().len() - 1;
    match exponent.cmp(&ATOMS_EXPONENT) {
        std::cmp::Ordering::Greater => {
            format!("exceeds 10^{ATOMS_EXPONENT} atoms by {} orders of magnitude", exponent - ATOMS_EXPONENT)
        }
        std::cmp::Ordering::Less => {
            format!("below 10^{ATOMS_EXPONENT} atoms by {} orders of magnitude", ATOMS_EXPONENT - exponent)
        }
        std::cmp::Ordering::Equal => format!("equal order to 10^{ATOMS_EXPONENT} atoms"),
    }
}

pub fn atoms_comparison(report: &KeyspaceReport) -> String {
    atoms_comparison_of(&report.product())
}
