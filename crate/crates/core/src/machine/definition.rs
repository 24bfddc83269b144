//! Line-oriented machine-definition files.
//!
//! ```text
//! # comment
//! ROTOR     <id> <26-letter wiring> NOTCH <letters>
//! STATIC    <id> <26-letter wiring>
//! REFLECTOR <id> <26-letter wiring>
//! ```
//!
//! Parsing checks syntax, bijectivity and notch counts. Reflector pairing is
//! checked when a configuration is validated against the definition.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{ReflectorSpec, RotorSpec, StaticRotorSpec};
use crate::permutation::{letters_to_string, parse_letters, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefinitionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: component id {id} is already defined")]
    DuplicateId { line: usize, id: String },
}

/// The library of rotors, static rotors and reflectors a key can refer to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineDefinition {
    rotors: Vec<RotorSpec>,
    statics: Vec<StaticRotorSpec>,
    reflectors: Vec<ReflectorSpec>,
}

impl MachineDefinition {
    pub fn rotors(&self) -> &[RotorSpec] {
        &self.rotors
    }

    pub fn statics(&self) -> &[StaticRotorSpec] {
        &self.statics
    }

    pub fn reflectors(&self) -> &[ReflectorSpec] {
        &self.reflectors
    }

    pub fn rotor(&self, id: &str) -> Option<&RotorSpec> {
        self.rotors.iter().find(|r| r.id == id)
    }

    pub fn static_rotor(&self, id: &str) -> Option<&StaticRotorSpec> {
        self.statics.iter().find(|r| r.id == id)
    }

    pub fn reflector(&self, id: &str) -> Option<&ReflectorSpec> {
        self.reflectors.iter().find(|r| r.id == id)
    }

    fn contains_id(&self, id: &str) -> bool {
        self.rotor(id).is_some() || self.static_rotor(id).is_some() || self.reflector(id).is_some()
    }

    pub fn add_rotor(&mut self, spec: RotorSpec) -> Result<(), DefinitionError> {
        self.check_new_id(&spec.id, 0)?;
        self.rotors.push(spec);
        Ok(())
    }

    pub fn add_static(&mut self, spec: StaticRotorSpec) -> Result<(), DefinitionError> {
        self.check_new_id(&spec.id, 0)?;
        self.statics.push(spec);
        Ok(())
    }

    pub fn add_reflector(&mut self, spec: ReflectorSpec) -> Result<(), DefinitionError> {
        self.check_new_id(&spec.id, 0)?;
        self.reflectors.push(spec);
        Ok(())
    }

    fn check_new_id(&self, id: &str, line: usize) -> Result<(), DefinitionError> {
        if self.contains_id(id) {
            Err(DefinitionError::DuplicateId { line, id: id.to_string() })
        } else {
            Ok(())
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> DefinitionError {
    DefinitionError::Syntax { line, message: message.into() }
}

fn parse_wiring(line: usize, text: &str) -> Result<Permutation, DefinitionError> {
    text.parse().map_err(|e| syntax(line, format!("wiring {text}: {e}")))
}

impl FromStr for MachineDefinition {
    type Err = DefinitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut def = MachineDefinition::default();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["ROTOR", id, wiring, "NOTCH", notches] => {
                    let wiring = parse_wiring(line, wiring)?;
                    let notches = parse_letters(notches).map_err(|e| syntax(line, format!("notch: {e}")))?;
                    let distinct: HashSet<_> = notches.iter().collect();
                    if notches.is_empty() || notches.len() > 2 || distinct.len() != notches.len() {
                        return Err(syntax(line, "a rotor needs one or two distinct notch letters"));
                    }
                    def.check_new_id(id, line)?;
                    def.rotors.push(RotorSpec { id: id.to_string(), wiring, notches });
                }
                ["STATIC", id, wiring] => {
                    let wiring = parse_wiring(line, wiring)?;
                    def.check_new_id(id, line)?;
                    def.statics.push(StaticRotorSpec { id: id.to_string(), wiring });
                }
                ["REFLECTOR", id, wiring] => {
                    let wiring = parse_wiring(line, wiring)?;
                    def.check_new_id(id, line)?;
                    def.reflectors.push(ReflectorSpec { id: id.to_string(), wiring });
                }
                ["ROTOR", ..] => return Err(syntax(line, "expected ROTOR <id> <wiring> NOTCH <letters>")),
                ["STATIC", ..] => return Err(syntax(line, "expected STATIC <id> <wiring>")),
                ["REFLECTOR", ..] => return Err(syntax(line, "expected REFLECTOR <id> <wiring>")),
                [kind, ..] => return Err(syntax(line, format!("unknown record type {kind}"))),
                [] => unreachable!(),
            }
        }
        Ok(def)
    }
}

impl fmt::Display for MachineDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rotors {
            writeln!(f, "ROTOR {} {} NOTCH {}", r.id, r.wiring, letters_to_string(&r.notches))?;
        }
        for s in &self.statics {
            writeln!(f, "STATIC {} {}", s.id, s.wiring)?;
        }
        for r in &self.reflectors {
            writeln!(f, "REFLECTOR {} {}", r.id, r.wiring)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# three rotors
ROTOR I   EKMFLGDQVZNTOWYHXUSPAIBRCJ NOTCH Q
ROTOR VI  JPGVOUMFYQBENHZRDKASXLICTW NOTCH ZM   # dual notch

STATIC beta LEYJVCNIXWPBQMDRTAKZGFUHOS
REFLECTOR B YRUHQSLDPXNGOKMIEBFZCWVJAT
";

    #[test]
    fn parses_all_record_kinds() {
        let def: MachineDefinition = SAMPLE.parse().unwrap();
        assert_eq!(def.rotors().len(), 2);
        assert_eq!(def.rotor("VI").unwrap().notches.len(), 2);
        assert!(def.static_rotor("beta").is_some());
        assert!(def.reflector("B").is_some());
        let again: MachineDefinition = def.to_string().parse().unwrap();
        assert_eq!(again, def);
    }

    #[test]
    fn short_wiring_cites_line() {
        let text = "# header\nROTOR I EKMFLGDQVZNTOWYHXUSPAIBRC NOTCH Q\n";
        let err = text.parse::<MachineDefinition>().unwrap_err();
        assert!(matches!(err, DefinitionError::Syntax { line: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("line 2:"));
    }

    #[test]
    fn rejects_malformed_records() {
        let bad = [
            "ROTOR I EKMFLGDQVZNTOWYHXUSPAIBRCJ",
            "ROTOR I EKMFLGDQVZNTOWYHXUSPAIBRCJ NOTCH QRS",
            "ROTOR I EKMFLGDQVZNTOWYHXUSPAIBRCJ NOTCH QQ",
            "ROTOR I EKMFLGDQVZNTOWYHXUSPAIBRCE NOTCH Q",
            "WHEEL I EKMFLGDQVZNTOWYHXUSPAIBRCJ",
        ];
        for text in bad {
            assert!(text.parse::<MachineDefinition>().is_err(), "{text}");
        }
        let dup = "STATIC X ABCDEFGHIJKLMNOPQRSTUVWXYZ\nREFLECTOR X YRUHQSLDPXNGOKMIEBFZCWVJAT\n";
        assert_eq!(
            dup.parse::<MachineDefinition>().unwrap_err(),
            DefinitionError::DuplicateId { line: 2, id: "X".into() }
        );
    }
}
