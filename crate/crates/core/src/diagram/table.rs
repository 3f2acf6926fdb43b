//! Named PD codes read from a plain-text table.
//!
//! One entry per line, `name: PD`; blank lines and lines starting with `#`
//! are ignored.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::PdCode;
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../../data/knots.txt");

#[derive(Clone, Debug)]
pub struct KnotTable {
    entries: Vec<(String, PdCode)>,
}

impl KnotTable {
    /// Parses every entry; a malformed line fails the whole table.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(String, PdCode)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, pd) = line.split_once(':').ok_or_else(|| {
                Error::Parse(format!("table line {}: expected `name: PD`", no + 1))
            })?;
            let name = name.trim();
            if entries.iter().any(|(n, _)| n == name) {
                return Err(Error::Parse(format!(
                    "table line {}: duplicate entry {name}",
                    no + 1
                )));
            }
            let pd =
                PdCode::parse(pd).map_err(|e| Error::Parse(format!("table entry {name}: {e}")))?;
            entries.push((name.to_string(), pd));
        }
        Ok(Self { entries })
    }

    /// The table compiled into the crate: 3_1, 4_1, 5_2, 6_2 and 8_21.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled table parses")
    }

    pub fn get(&self, name: &str) -> Option<&PdCode> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, pd)| pd)
    }

    pub fn lookup(&self, name: &str) -> Result<&PdCode> {
        self.get(name)
            .ok_or_else(|| Error::Parse(format!("no table entry named {name:?}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PdCode)> {
        self.entries.iter().map(|(n, pd)| (n.as_str(), pd))
    }
}
