//! Output files. Every file is written to a temporary sibling and renamed
//! into place, so readers never see a partial file.

use std::io::Write;
use std::path::{Path, PathBuf};

use eraser_core::Pattern;
use serde::Serialize;

use crate::error::CliError;

pub fn fmt_f64(x: f64) -> String {
    ryu::Buffer::new().format(x).to_owned()
}

pub struct OutputDir {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("cannot create output directory {}: {e}", dir.display())))?;
        Ok(OutputDir { dir: dir.to_owned(), written: Vec::new() })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let target = self.dir.join(name);
        let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", target.display()));
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(contents.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(&target).map_err(|e| io(e.error))?;
        if !self.written.contains(&target) {
            self.written.push(target);
        }
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        self.write(name, &to_json(value)?)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn pattern_csv(p: &Pattern) -> String {
    let mut out = String::from("x,probability\n");
    for (x, prob) in p.positions.iter().zip(&p.probabilities) {
        out.push_str(&fmt_f64(*x));
        out.push(',');
        out.push_str(&fmt_f64(*prob));
        out.push('\n');
    }
    out
}

/// Two-column plain-text table.
pub fn table(title: &str, rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (k, v) in rows {
        out.push_str(&format!("  {k:<width$}  {v}\n"));
    }
    out
}
