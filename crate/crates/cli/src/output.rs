//! Tables, number formatting, run manifests and where they get written.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PSPECTRA_OUT_DIR";

/// Significant digits of floats in CSV output.
pub const CSV_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_owned())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_sig(*x, CSV_DIGITS),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// `x` with `digits` significant digits, fixed notation for moderate
/// exponents and scientific otherwise, trailing zeros dropped.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Self { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        Ok(w.into_inner()?)
    }

    pub fn to_json_rows(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.headers.iter().zip(row).map(|(h, c)| ((*h).to_owned(), c.json())).collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Provenance written next to every dataset.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub tolerance: f64,
    pub mesh: Value,
    pub version: &'static str,
    pub wall_time_s: f64,
    pub rows: usize,
    pub status: String,
}

/// Where a dataset goes: an explicit path, the output directory from the
/// environment, or standard output.
pub fn destination(out: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    if let Some(p) = out {
        return Some(p.to_owned());
    }
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(Path::new(&dir).join(format!("{command}.{}", format.extension())))
}

pub fn manifest_path(data: &Path) -> PathBuf {
    let mut name = data.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    data.with_file_name(name)
}

/// Writes the table and its manifest. With no destination the table goes to
/// stdout and the manifest to stderr as one JSON line; JSON output also
/// embeds the manifest.
pub fn emit(table: &Table, manifest: &RunManifest, format: Format, dest: Option<&Path>) -> Result<()> {
    let body = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let doc = json!({ "manifest": manifest, "rows": table.to_json_rows() });
            let mut v = serde_json::to_vec_pretty(&doc)?;
            v.push(b'\n');
            v
        }
    };
    let manifest_json = serde_json::to_string_pretty(manifest)?;
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            let mpath = manifest_path(path);
            fs::write(&mpath, manifest_json + "\n").with_context(|| format!("writing {}", mpath.display()))?;
        }
        None => {
            io::stdout().write_all(&body)?;
            if format == Format::Csv {
                eprintln!("{}", serde_json::to_string(manifest)?);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.376_083_543_21, 9), "1.37608354");
        assert_eq!(format_sig(-0.25, 9), "-0.25");
        assert_eq!(format_sig(6.0, 9), "6");
        assert_eq!(format_sig(11.178_133_2, 9), "11.1781332");
        assert_eq!(format_sig(1.234_567_891e-7, 9), "1.23456789e-7");
        assert_eq!(format_sig(123_456_789_012.0, 9), "1.23456789e11");
        assert_eq!(format_sig(0.0, 9), "0");
        assert_eq!(format_sig(f64::NAN, 9), "NaN");
    }

    #[test]
    fn manifest_sits_next_to_data() {
        assert_eq!(manifest_path(Path::new("out/t.csv")), PathBuf::from("out/t.csv.manifest.json"));
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.push(vec![1.5.into(), Cell::Empty, "x".into()]);
        assert_eq!(String::from_utf8(t.to_csv().unwrap()).unwrap(), "a,b,c\n1.5,,x\n");
    }
}
