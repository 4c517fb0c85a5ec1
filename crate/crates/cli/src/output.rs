use std::fs::File;
use std::io::{self, Write};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::{Format, OutputArgs};
use rtls_core::io::{format_f64, to_json_string};

/// Every JSON artifact carries the command, the seed and the tool version;
/// no timestamps, so reruns are byte-identical.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub result: T,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

pub fn num(v: f64) -> String {
    format_f64(v)
}

pub fn snake<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn sink(out: &OutputArgs) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Write `payload` as JSON or `table` as CSV, whichever `--format` asks for.
pub fn emit<T: Serialize>(out: &OutputArgs, command: &str, seed: Option<u64>, payload: T, table: impl FnOnce() -> Table) -> Result<()> {
    let mut w = sink(out)?;
    match out.format {
        Format::Json => {
            let env = Envelope {
                command,
                version: env!("CARGO_PKG_VERSION"),
                seed,
                result: payload,
            };
            writeln!(w, "{}", to_json_string(&env)?)?;
        }
        Format::Csv => {
            let t = table();
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(&t.header)?;
            for row in &t.rows {
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
    }
    Ok(())
}
