use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// One JSON line: `{"command": ..., "inputs": ..., "results": ...}`.
#[derive(Serialize)]
struct Record<'a, I, R> {
    command: &'a str,
    inputs: &'a I,
    results: &'a R,
}

/// Writes records to stdout in the selected format.
pub struct Output<W: Write> {
    format: Format,
    out: W,
}

impl<W: Write> Output<W> {
    pub fn new(format: Format, out: W) -> Self {
        Output { format, out }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.out, "{}", text.as_ref())
    }

    pub fn json<I: Serialize, R: Serialize>(
        &mut self,
        command: &str,
        inputs: &I,
        results: &R,
    ) -> io::Result<()> {
        let record = Record {
            command,
            inputs,
            results,
        };
        serde_json::to_writer(&mut self.out, &record)?;
        writeln!(self.out)
    }

    /// Header row followed by one row per item.
    pub fn csv<T: Serialize>(&mut self, rows: &[T]) -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(&mut self.out);
        for row in rows {
            writer.serialize(row).map_err(io::Error::other)?;
        }
        writer.flush()
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// Rounds to 15 significant digits so printed floats do not depend on the
/// last bits of the arithmetic.
pub fn sig15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}
