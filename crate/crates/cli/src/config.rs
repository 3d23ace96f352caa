//! Scenario configuration files.
//!
//! ```text
//! seed = 42
//!
//! [breit-rabi-sweep]
//! b_min = 0.01 T
//! b_max = 10 T
//! points = 200
//! ```
//!
//! Top-level keys precede the first section; only `seed` is accepted there.
//! Each `[name]` section selects one registered scenario. Every physical
//! quantity carries a unit suffix from [`Dimension::units`]; ratios and counts
//! carry none. `#` starts a comment.

use crate::error::{CliError, CliResult};
use std::collections::BTreeMap;
use std::fmt;

/// Physical dimension of a scenario parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Non-negative integer, no unit.
    Count,
    /// Dimensionless real, no unit.
    Ratio,
    /// Magnetic field, stored in T.
    Field,
    /// Temperature, stored in K.
    Temperature,
    /// Time, stored in s.
    Time,
    /// Rate of a process, stored in 1/s.
    Rate,
    /// Squared angular frequency, stored in 1/s².
    RateSquared,
    /// Angular frequency, stored in rad/s.
    Angular,
    /// Cyclic frequency, stored in Hz.
    Cyclic,
    /// Length, stored in m.
    Length,
    /// Volume, stored in m³.
    Volume,
    /// Power, stored in W.
    Power,
    /// Resistance, stored in Ω.
    Resistance,
}

impl Dimension {
    /// Accepted unit suffixes and their factors to the stored SI unit.
    pub fn units(self) -> &'static [(&'static str, f64)] {
        match self {
            Self::Count | Self::Ratio => &[("", 1.0)],
            Self::Field => &[("T", 1.0), ("mT", 1e-3), ("uT", 1e-6)],
            Self::Temperature => &[("K", 1.0), ("mK", 1e-3), ("uK", 1e-6)],
            Self::Time => &[("s", 1.0), ("ms", 1e-3), ("us", 1e-6), ("ns", 1e-9), ("min", 60.0), ("h", 3600.0)],
            Self::Rate => &[("1/s", 1.0), ("1/ms", 1e3), ("1/min", 1.0 / 60.0), ("1/h", 1.0 / 3600.0)],
            Self::RateSquared => &[("1/s2", 1.0)],
            Self::Angular => &[("rad/s", 1.0)],
            Self::Cyclic => &[("Hz", 1.0), ("kHz", 1e3), ("MHz", 1e6), ("GHz", 1e9)],
            Self::Length => &[("m", 1.0), ("cm", 1e-2), ("mm", 1e-3), ("um", 1e-6), ("nm", 1e-9)],
            Self::Volume => &[("m3", 1.0), ("cm3", 1e-6), ("mm3", 1e-9)],
            Self::Power => &[("W", 1.0), ("mW", 1e-3), ("uW", 1e-6)],
            Self::Resistance => &[("ohm", 1.0), ("kohm", 1e3)],
        }
    }

    /// Symbol of the stored unit, empty for dimensionless values.
    pub fn si_symbol(self) -> &'static str {
        match self {
            Self::Count | Self::Ratio => "",
            Self::Field => "T",
            Self::Temperature => "K",
            Self::Time => "s",
            Self::Rate => "1/s",
            Self::RateSquared => "1/s2",
            Self::Angular => "rad/s",
            Self::Cyclic => "Hz",
            Self::Length => "m",
            Self::Volume => "m3",
            Self::Power => "W",
            Self::Resistance => "ohm",
        }
    }

    fn describe(self) -> String {
        let units: Vec<&str> = self.units().iter().map(|u| u.0).collect();
        if units == [""] {
            "a plain number without unit".to_string()
        } else {
            format!("a unit from {{{}}}", units.join(", "))
        }
    }
}

/// One accepted key of a scenario and its default.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub dim: Dimension,
    /// Default in the stored SI unit.
    pub default: f64,
    pub help: &'static str,
}

/// Resolved parameters of one scenario in stored SI units, in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: Vec<(&'static str, Dimension, f64)>,
}

impl Params {
    pub fn get(&self, key: &str) -> f64 {
        self.values
            .iter()
            .find(|v| v.0 == key)
            .map(|v| v.2)
            .unwrap_or_else(|| panic!("parameter `{key}` is not declared by the scenario"))
    }

    pub fn count(&self, key: &str) -> u64 {
        self.get(key) as u64
    }

    /// `key → "value unit"` with 12 significant digits, for the manifest.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|&(k, dim, v)| {
                let text = match dim {
                    Dimension::Count => format!("{}", v as u64),
                    _ if dim.si_symbol().is_empty() => format!("{v:.11e}"),
                    _ => format!("{v:.11e} {}", dim.si_symbol()),
                };
                (k.to_string(), text)
            })
            .collect()
    }
}

/// Raw `key = value` entry with its source line.
#[derive(Debug, Clone, PartialEq)]
struct Entry {
    value: String,
    line: usize,
}

/// A parsed `[name]` section before schema validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub line: usize,
    entries: BTreeMap<String, Entry>,
}

/// Parsed configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub sections: Vec<Section>,
}

fn config_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Config {
        line,
        message: message.into(),
    }
}

/// Splits the text into sections. Syntax and duplicates are checked here;
/// keys and units are checked by [`resolve`].
pub fn parse(text: &str) -> CliResult<ConfigFile> {
    let mut seed = None;
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| config_error(line, "section header must end with `]`"))?
                .trim();
            if name.is_empty() {
                return Err(config_error(line, "empty section name"));
            }
            if let Some(prev) = sections.iter().find(|s| s.name == name) {
                return Err(config_error(
                    line,
                    format!("scenario `{name}` already configured at line {}", prev.line),
                ));
            }
            sections.push(Section {
                name: name.to_string(),
                line,
                entries: BTreeMap::new(),
            });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| config_error(line, "expected `key = value` or `[scenario]`"))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(config_error(line, "expected `key = value`"));
        }
        match sections.last_mut() {
            None if key == "seed" => {
                let s = value
                    .parse::<u64>()
                    .map_err(|_| config_error(line, format!("seed must be an unsigned 64-bit integer, got `{value}`")))?;
                if seed.replace(s).is_some() {
                    return Err(config_error(line, "duplicate key `seed`"));
                }
            }
            None => return Err(config_error(line, format!("unknown top-level key `{key}`; only `seed` is accepted"))),
            Some(section) => {
                if section.entries.contains_key(key) {
                    return Err(config_error(line, format!("duplicate key `{key}` in [{}]", section.name)));
                }
                section.entries.insert(
                    key.to_string(),
                    Entry {
                        value: value.to_string(),
                        line,
                    },
                );
            }
        }
    }
    Ok(ConfigFile { seed, sections })
}

/// Parses `value unit` against a dimension and returns the SI value.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let (number, unit) = match text.find(char::is_whitespace) {
        Some(i) => (&text[..i], text[i..].trim()),
        None => (text, ""),
    };
    let value: f64 = number
        .parse()
        .map_err(|_| format!("`{number}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{number}` is not finite"));
    }
    let factor = dim
        .units()
        .iter()
        .find(|u| u.0 == unit)
        .map(|u| u.1)
        .ok_or_else(|| {
            if unit.is_empty() {
                format!("missing unit; expected {}", dim.describe())
            } else {
                format!("unit `{unit}` not accepted here; expected {}", dim.describe())
            }
        })?;
    if dim == Dimension::Count && (value < 0.0 || value.fract() != 0.0 || value > 2f64.powi(53)) {
        return Err(format!("`{number}` is not a non-negative integer"));
    }
    Ok(value * factor)
}

/// Checks a section against a schema and fills defaults.
pub fn resolve(section: &Section, schema: &[ParamSpec]) -> CliResult<Params> {
    for (key, entry) in &section.entries {
        if !schema.iter().any(|p| p.key == key) {
            let known: Vec<&str> = schema.iter().map(|p| p.key).collect();
            let expected = if known.is_empty() { "none".to_string() } else { known.join(", ") };
            return Err(config_error(
                entry.line,
                format!("unknown key `{key}` in [{}]; accepted keys: {expected}", section.name),
            ));
        }
    }
    let values = schema
        .iter()
        .map(|p| match section.entries.get(p.key) {
            None => Ok((p.key, p.dim, p.default)),
            Some(e) => parse_quantity(&e.value, p.dim)
                .map(|v| (p.key, p.dim, v))
                .map_err(|m| config_error(e.line, format!("key `{}` in [{}]: {m}", p.key, section.name))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Params { values })
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.si_symbol();
        f.write_str(if s.is_empty() { "-" } else { s })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantities_convert_to_si() {
        assert_eq!(parse_quantity("1.5 mT", Dimension::Field), Ok(1.5e-3));
        assert_eq!(parse_quantity("20 nm", Dimension::Length), Ok(20e-9));
        assert_eq!(parse_quantity("3", Dimension::Count), Ok(3.0));
        assert!(parse_quantity("3.5", Dimension::Count).is_err());
        assert!(parse_quantity("1.0", Dimension::Field).is_err());
        assert!(parse_quantity("1.0 Tesla", Dimension::Field).is_err());
        assert!(parse_quantity("1.0 K", Dimension::Field).is_err());
        assert!(parse_quantity("2 T", Dimension::Ratio).is_err());
        assert!(parse_quantity("inf T", Dimension::Field).is_err());
    }

    #[test]
    fn sections_and_comments() {
        let c = parse("seed = 7 # top\n\n[a]\nx = 1 T\n[b]\n").unwrap();
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.sections.len(), 2);
        assert_eq!(c.sections[0].entries["x"].line, 4);
    }

    #[test]
    fn structural_errors_carry_lines() {
        for (text, line) in [
            ("[a]\n[a]\n", 2),
            ("[a]\nx = 1\nx = 2\n", 3),
            ("x = 1\n", 1),
            ("[a]\njunk\n", 2),
            ("seed = -1\n", 1),
            ("[a\n", 1),
        ] {
            match parse(text) {
                Err(CliError::Config { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
