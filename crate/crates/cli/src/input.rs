//! Where a command's diagram comes from: an inline PD code, a knot-table
//! entry, or a chord diagram.

use std::path::Path;

use dessin_core::chord::ChordDiagram;
use dessin_core::diagram::{KnotTable, PdCode};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Environment variable naming a knot-table file to use instead of the
/// bundled one.
pub const TABLE_ENV: &str = "DESSIN_KNOT_TABLE";

pub fn load_table(path: Option<&Path>) -> CliResult<KnotTable> {
    match path {
        None => Ok(KnotTable::bundled()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::io(&format!("reading knot table {}", p.display()), e))?;
            Ok(KnotTable::parse(&text)?)
        }
    }
}

/// The table named by [`TABLE_ENV`], or the bundled one.
pub fn table_from_env() -> CliResult<KnotTable> {
    match std::env::var_os(TABLE_ENV) {
        Some(p) if !p.is_empty() => load_table(Some(Path::new(&p))),
        _ => load_table(None),
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Diagram(PdCode),
    Chords(ChordDiagram),
}

#[derive(Clone, Debug)]
pub struct Resolved {
    pub object: Object,
    /// Echo of the input for reports.
    pub echo: Value,
}

impl Resolved {
    /// Canonical text of the input, part of the cache key.
    pub fn canonical(&self) -> String {
        match &self.object {
            Object::Diagram(pd) => format!("pd:{}", pd.render()),
            Object::Chords(cd) => format!("chords:{}", cd.render()),
        }
    }

    pub fn diagram(&self, command: &str) -> CliResult<&PdCode> {
        match &self.object {
            Object::Diagram(pd) => Ok(pd),
            Object::Chords(_) => Err(CliError::bad_input(format!(
                "`{command}` needs a diagram (--pd or --name), not a chord diagram"
            ))),
        }
    }
}

pub fn resolve(
    pd: Option<&str>,
    name: Option<&str>,
    chords: Option<&str>,
    table: impl FnOnce() -> CliResult<KnotTable>,
) -> CliResult<Resolved> {
    match (pd, name, chords) {
        (Some(text), None, None) => {
            let pd = PdCode::parse(text)?;
            Ok(Resolved {
                echo: json!({ "pd": pd.render() }),
                object: Object::Diagram(pd),
            })
        }
        (None, Some(n), None) => {
            let table = table()?;
            let pd = table.lookup(n)?.clone();
            Ok(Resolved {
                echo: json!({ "name": n, "pd": pd.render() }),
                object: Object::Diagram(pd),
            })
        }
        (None, None, Some(text)) => {
            let cd = ChordDiagram::parse(text)?;
            if cd.m() == 0 {
                return Err(CliError::bad_input("empty chord diagram"));
            }
            Ok(Resolved {
                echo: json!({ "chords": cd.render() }),
                object: Object::Chords(cd),
            })
        }
        (None, None, None) => Err(CliError::usage(
            "one of --pd, --name or --chords is required",
        )),
        _ => Err(CliError::usage(
            "give exactly one of --pd, --name or --chords",
        )),
    }
}
