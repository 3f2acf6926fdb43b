//! Results cache: a JSON-lines file, one `{"key", "json", "plain"}` record
//! per computed report. Keys hash the engine version, the command, the
//! canonical input and every flag that can change the result, so a record
//! is served only for an identical request.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::Report;

pub fn key(command: &str, input: &str, flags: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    let mut field = |s: &str| {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    };
    field(env!("CARGO_PKG_VERSION"));
    field(crate::SCHEMA);
    field(command);
    field(input);
    for (name, value) in flags {
        field(name);
        field(value);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: &Path) -> Self {
        Self {
            path: path.to_path_buf(),
        }
    }

    /// The most recent record for `key`. Unreadable lines are skipped.
    pub fn get(&self, key: &str) -> CliResult<Option<Report>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::io("opening cache", e)),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| CliError::io("reading cache", e))?;
            let Ok(record) = serde_json::from_str::<Value>(&line) else {
                continue;
            };
            if record["key"] != key {
                continue;
            }
            if let (Some(json), Some(plain)) = (record.get("json"), record["plain"].as_str()) {
                found = Some(Report {
                    json: json.clone(),
                    plain: plain.to_string(),
                });
            }
        }
        Ok(found)
    }

    pub fn put(&self, key: &str, report: &Report) -> CliResult<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io("opening cache", e))?;
        let record = json!({ "key": key, "json": report.json, "plain": report.plain });
        writeln!(file, "{record}").map_err(|e| CliError::io("writing cache", e))
    }
}
