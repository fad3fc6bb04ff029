use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Serialize, Serializer};

use crate::args::Format;

/// Rounds to 12 significant digits so output is stable across platforms.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round12(*x))
}

pub fn write_records<T: Serialize, W: Write>(rows: &[T], format: Format, w: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            for row in rows {
                wr.serialize(row)?;
            }
            wr.flush()?;
        }
        Format::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Writes to `path` via a temporary sibling and a rename, so a reader never
/// sees a half-written file.
pub fn write_file<T: Serialize>(rows: &[T], format: Format, path: &Path) -> Result<()> {
    let tmp = path.with_extension("partial");
    {
        let mut w = BufWriter::new(File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?);
        write_records(rows, format, &mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Records to `path` if given, else stdout.
pub fn emit<T: Serialize>(rows: &[T], format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => write_file(rows, format, p),
        None => {
            let stdout = io::stdout();
            write_records(rows, format, stdout.lock())
        }
    }
}

/// Rows already present in `path`; empty when the file does not exist.
pub fn read_records<T: DeserializeOwned>(path: &Path, format: Format) -> Result<Vec<T>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let context = || format!("reading existing rows from {}", path.display());
    match format {
        Format::Csv => {
            let mut rd = csv::Reader::from_path(path).with_context(context)?;
            rd.deserialize().collect::<Result<_, _>>().with_context(context)
        }
        Format::Json => {
            let text = fs::read_to_string(path).with_context(context)?;
            if text.trim().is_empty() {
                return Ok(Vec::new());
            }
            serde_json::from_str(&text).with_context(context)
        }
    }
}
