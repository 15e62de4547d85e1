use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows go out as CSV (12 significant digits) or JSON lines, preceded by a
/// metadata record carrying the version and the full configuration.
pub struct Sink {
    out: Backend,
    columns: Vec<String>,
}

enum Backend {
    Csv(csv::Writer<Box<dyn Write>>),
    Json(Box<dyn Write>),
}

pub fn metadata(command: &str, config: Value) -> Value {
    json!({
        "artifact": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
    })
}

/// `--out` relative to `RESBOUND_OUT_DIR` when that is set; with no
/// `--out`, `RESBOUND_OUT_DIR/<command>.<ext>` or stdout.
pub fn resolve_path(out: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    let dir = std::env::var_os("RESBOUND_OUT_DIR").map(PathBuf::from);
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "jsonl",
    };
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(format!("{command}.{ext}"))),
        (None, None) => None,
    }
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format, meta: &Value) -> Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => {
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
                }
                Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        let mut out = out;
        let out = match format {
            Format::Csv => {
                writeln!(out, "# {meta}")?;
                Backend::Csv(csv::WriterBuilder::new().flexible(true).from_writer(out))
            }
            Format::Json => {
                writeln!(out, "{}", json!({ "meta": meta }))?;
                Backend::Json(out)
            }
        };
        Ok(Sink { out, columns: Vec::new() })
    }

    pub fn columns(&mut self, columns: &[&str]) -> Result<()> {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        if let Backend::Csv(w) = &mut self.out {
            w.write_record(columns)?;
        }
        Ok(())
    }

    pub fn row(&mut self, cells: Vec<Value>) -> Result<()> {
        anyhow::ensure!(cells.len() == self.columns.len(), "row width {} != {} columns", cells.len(), self.columns.len());
        match &mut self.out {
            Backend::Csv(w) => w.write_record(cells.iter().map(csv_cell))?,
            Backend::Json(w) => {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(cells).collect();
                writeln!(w, "{}", Value::Object(obj))?;
            }
        }
        Ok(())
    }

    /// A free-form JSON record; only written in JSON mode.
    pub fn record(&mut self, value: &Value) -> Result<()> {
        if let Backend::Json(w) = &mut self.out {
            writeln!(w, "{value}")?;
        }
        Ok(())
    }

    pub fn format(&self) -> Format {
        match self.out {
            Backend::Csv(_) => Format::Csv,
            Backend::Json(_) => Format::Json,
        }
    }

    pub fn finish(self) -> Result<()> {
        match self.out {
            Backend::Csv(mut w) => w.flush()?,
            Backend::Json(mut w) => w.flush()?,
        }
        Ok(())
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format!("{:.11e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => "nan".into(),
        other => other.to_string(),
    }
}

/// JSON has no NaN or infinity; those become null.
pub fn real(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formats_reals_with_twelve_digits() {
        assert_eq!(csv_cell(&real(1.0 / 3.0)), "3.33333333333e-1");
        assert_eq!(csv_cell(&json!(7)), "7");
        assert_eq!(csv_cell(&real(f64::NAN)), "nan");
    }

    #[test]
    fn out_dir_resolution() {
        assert_eq!(resolve_path(Some(Path::new("/tmp/x.csv")), "bounds", Format::Csv), Some(PathBuf::from("/tmp/x.csv")));
    }
}
