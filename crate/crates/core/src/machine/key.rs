//! The one-line key form:
//!
//! ```text
//! MODEL=Army3; ROTORS=I,II,III; RINGS=AAA; POS=AAA; PLUG=AB CD; REFLECTOR=B; STEP=odometer
//! ```
//!
//! `MODEL`, `ROTORS` and `REFLECTOR` are required. `RINGS` and `POS` default to
//! all `A`, `PLUG` to no cables and `STEP` to `odometer`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{MachineConfig, MachineState, Model, PlugboardSetting, SteppingMode};
use crate::permutation::{letters_to_string, parse_letters, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyParseError {
    #[error("key field {0:?} is not of the form NAME=value")]
    Malformed(String),
    #[error("unknown key field {0}")]
    UnknownField(String),
    #[error("key field {0} given twice")]
    Repeated(String),
    #[error("key field {0} is required")]
    Missing(&'static str),
    #[error("key field {field}: {message}")]
    Invalid { field: &'static str, message: String },
}

/// A full message key: the machine configuration plus initial rotor positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key {
    pub config: MachineConfig,
    pub state: MachineState,
}

fn invalid(field: &'static str, message: impl fmt::Display) -> KeyParseError {
    KeyParseError::Invalid { field, message: message.to_string() }
}

fn letters_field(field: &'static str, value: &str, count: usize) -> Result<Vec<Letter>, KeyParseError> {
    let letters = parse_letters(value).map_err(|e| invalid(field, e))?;
    if letters.len() != count {
        return Err(invalid(field, format!("expected {count} letters, got {}", letters.len())));
    }
    Ok(letters)
}

impl FromStr for Key {
    type Err = KeyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        const FIELDS: [&str; 7] = ["MODEL", "ROTORS", "RINGS", "POS", "PLUG", "REFLECTOR", "STEP"];
        let mut values: [Option<&str>; 7] = [None; 7];
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part.split_once('=').ok_or_else(|| KeyParseError::Malformed(part.to_string()))?;
            let name = name.trim().to_ascii_uppercase();
            let slot =
                FIELDS.iter().position(|f| *f == name).ok_or_else(|| KeyParseError::UnknownField(name.clone()))?;
            if values[slot].replace(value.trim()).is_some() {
                return Err(KeyParseError::Repeated(name));
            }
        }
        let [model, rotors, rings, pos, plug, reflector, step] = values;

        let model = match model.ok_or(KeyParseError::Missing("MODEL"))?.to_ascii_lowercase().as_str() {
            "army3" => Model::Army3,
            "naval4" => Model::Naval4,
            other => return Err(invalid("MODEL", format!("{other} is not Army3 or Naval4"))),
        };
        let rotors: Vec<String> =
            rotors.ok_or(KeyParseError::Missing("ROTORS"))?.split(',').map(|r| r.trim().to_string()).collect();
        if rotors.iter().any(String::is_empty) {
            return Err(invalid("ROTORS", "empty rotor id"));
        }
        let n = model.rotor_count();
        let ring_settings = match rings {
            Some(v) => letters_field("RINGS", v, n)?,
            None => vec![Letter::A; n],
        };
        let positions = match pos {
            Some(v) => letters_field("POS", v, n)?,
            None => vec![Letter::A; n],
        };
        let plugboard: PlugboardSetting = plug.unwrap_or("").parse().map_err(|e| invalid("PLUG", e))?;
        let reflector = reflector.ok_or(KeyParseError::Missing("REFLECTOR"))?.to_string();
        if reflector.is_empty() {
            return Err(invalid("REFLECTOR", "empty reflector id"));
        }
        let stepping_mode = match step.map(str::to_ascii_lowercase).as_deref() {
            None | Some("odometer") => SteppingMode::Odometer,
            Some("historical") => SteppingMode::HistoricalDoubleStep,
            Some(other) => return Err(invalid("STEP", format!("{other} is not odometer or historical"))),
        };

        Ok(Key {
            config: MachineConfig { model, rotors, ring_settings, plugboard, reflector, stepping_mode },
            state: MachineState { positions },
        })
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        write!(
            f,
            "MODEL={}; ROTORS={}; RINGS={}; POS={}; PLUG={}; REFLECTOR={}; STEP={}",
            c.model,
            c.rotors.join(","),
            letters_to_string(&c.ring_settings),
            letters_to_string(&self.state.positions),
            c.plugboard,
            c.reflector,
            c.stepping_mode
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_key_round_trips() {
        let text =
            "MODEL=Naval4; ROTORS=beta,I,II,VIII; RINGS=AAAZ; POS=ZQEB; PLUG=AB CD; REFLECTOR=Bthin; STEP=historical";
        let key: Key = text.parse().unwrap();
        assert_eq!(key.config.model, Model::Naval4);
        assert_eq!(key.config.rotors, ["beta", "I", "II", "VIII"]);
        assert_eq!(key.config.plugboard.pairs.len(), 2);
        assert_eq!(key.config.stepping_mode, SteppingMode::HistoricalDoubleStep);
        assert_eq!(key.to_string(), text);
    }

    #[test]
    fn defaults_fill_optional_fields() {
        let key: Key = "model=army3;rotors=I,II,III;reflector=B".parse().unwrap();
        assert_eq!(
            key.to_string(),
            "MODEL=Army3; ROTORS=I,II,III; RINGS=AAA; POS=AAA; PLUG=; REFLECTOR=B; STEP=odometer"
        );
    }

    #[test]
    fn rejects_bad_fields() {
        let cases = [
            ("ROTORS=I,II,III; REFLECTOR=B", KeyParseError::Missing("MODEL")),
            ("MODEL=Army3; ROTORS=I,II,III; REFLECTOR=B; COLOR=red", KeyParseError::UnknownField("COLOR".into())),
            ("MODEL=Army3; MODEL=Army3; ROTORS=I,II,III; REFLECTOR=B", KeyParseError::Repeated("MODEL".into())),
            ("MODEL=Army3; ROTORS; REFLECTOR=B", KeyParseError::Malformed("ROTORS".into())),
        ];
        for (text, err) in cases {
            assert_eq!(text.parse::<Key>().unwrap_err(), err, "{text}");
        }
        for text in [
            "MODEL=Army4; ROTORS=I,II,III; REFLECTOR=B",
            "MODEL=Army3; ROTORS=I,II,III; RINGS=AA; REFLECTOR=B",
            "MODEL=Army3; ROTORS=I,II,III; POS=A1A; REFLECTOR=B",
            "MODEL=Army3; ROTORS=I,II,III; PLUG=ABC; REFLECTOR=B",
            "MODEL=Army3; ROTORS=I,,III; REFLECTOR=B",
            "MODEL=Army3; ROTORS=I,II,III; REFLECTOR=B; STEP=fast",
        ] {
            assert!(matches!(text.parse::<Key>(), Err(KeyParseError::Invalid { .. })), "{text}");
        }
    }
}
