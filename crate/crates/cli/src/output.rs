//! Self-describing JSON and CSV reports.
//!
//! Every command produces a [`Report`]: the command name, every input echoed
//! with its unit in the key, and a list of flat result rows. JSON keeps that
//! shape; CSV writes the inputs as `#` comment lines above a header row.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Row,
    pub rows: Vec<Row>,
}

/// Builds a [`Row`] from a `json!` object literal.
pub fn row(v: Value) -> Row {
    match v {
        Value::Object(m) => m,
        other => panic!("row() expects an object, got {other}"),
    }
}

impl Report {
    pub fn new(command: &'static str, inputs: Row) -> Self {
        Report { command, inputs, rows: Vec::new() }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command));
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!("# command: {}\n", self.command);
        for (k, v) in &self.inputs {
            out.push_str(&format!("# {k}: {}\n", cell(v)));
        }
        let mut columns: Vec<&str> = Vec::new();
        for r in &self.rows {
            for k in r.keys() {
                if !columns.contains(&k.as_str()) {
                    columns.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns)?;
        for r in &self.rows {
            w.write_record(columns.iter().map(|c| r.get(*c).map(cell).unwrap_or_default()))?;
        }
        out.push_str(std::str::from_utf8(&w.into_inner()?)?);
        Ok(out)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes `text` to `path`, or to stdout when no path is given. An existing
/// file is only replaced when `force` is set.
pub fn emit(text: &str, path: Option<&Path>, force: bool) -> Result<()> {
    match path {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
        Some(p) => {
            let mut f = create(p, force)?;
            f.write_all(text.as_bytes()).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    Ok(())
}

pub fn create(path: &Path, force: bool) -> Result<File> {
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    opts.open(path).with_context(|| {
        if path.exists() && !force {
            format!("{} already exists (pass --force to overwrite)", path.display())
        } else {
            format!("creating {}", path.display())
        }
    })
}
