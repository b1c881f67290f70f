//! Two-column CSV ingestion for load profiles.
//!
//! Rows are `timestamp-or-index, watts`. A non-numeric first row is taken as
//! a header, `#` starts a comment. Without an averaging window each row is
//! one sample; with a window the first column is read as seconds and rows are
//! averaged into bins of that width.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use tas_secrecy_core::smartgrid::{self, DEFAULT_TAU_HOURS};
use tas_secrecy_core::LoadProfile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IngestOptions {
    /// Averaging window in seconds for high-rate input.
    pub window_secs: Option<f64>,
    /// Sampling period of pre-binned input.
    pub tau_hours: f64,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions { window_secs: None, tau_hours: DEFAULT_TAU_HOURS }
    }
}

pub fn ingest_csv(path: &Path, opts: IngestOptions) -> Result<LoadProfile> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    read_profile(file, &label, opts).with_context(|| format!("reading {}", path.display()))
}

pub fn read_profile<R: Read>(reader: R, label: &str, opts: IngestOptions) -> Result<LoadProfile> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);

    let mut rows: Vec<(f64, f64)> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.len() != 2 {
            bail!("line {line}: expected 2 columns, found {}", record.len());
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(t), Ok(w)) => {
                if let Some(&(prev, _)) = rows.last() {
                    if !(t > prev) {
                        bail!("line {line}: timestamps must be strictly increasing ({t} after {prev})");
                    }
                }
                if !(w.is_finite() && w >= 0.0) {
                    bail!("line {line}: power must be finite and non-negative, got {w}");
                }
                rows.push((t, w));
            }
            _ if i == 0 => continue,
            _ => bail!("line {line}: malformed row {:?}", record.iter().collect::<Vec<_>>()),
        }
    }
    if rows.is_empty() {
        bail!("no data rows");
    }

    let profile = match opts.window_secs {
        Some(window) => {
            let means = smartgrid::bin_means(&rows, window)?;
            LoadProfile::new(label, window / 3600.0, means)?
        }
        None => LoadProfile::new(label, opts.tau_hours, rows.into_iter().map(|(_, w)| w).collect())?,
    };
    Ok(profile)
}
