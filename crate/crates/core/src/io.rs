//! File formats for grids and coefficient sequences.
//!
//! CSV: header `j,re,im` (grids) or `k,re,im` (coefficients), one row per
//! sample or mode in ascending order. JSON: `{"N": n, "values": [[re, im], ...]}`
//! for grids and `{"K": k, "values": [...]}` for coefficients, values in
//! ascending `k` from `-K`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::{GridSamples, ModeWindow, TwistedCoeffs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// Guess from the file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    #[serde(rename = "N")]
    n: usize,
    values: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CoeffsJson {
    #[serde(rename = "K")]
    k: usize,
    values: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct Row {
    index: i64,
    re: f64,
    im: f64,
}

fn parse_err(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    parse_err(line, e.to_string())
}

fn json_error(e: serde_json::Error) -> Error {
    parse_err(e.line() as u64, e.to_string())
}

/// Rows of `(index, re, im)` with the header checked against `index_name`.
fn read_rows<R: Read>(reader: R, index_name: &str) -> Result<Vec<(u64, i64, Complex64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let want = [index_name, "re", "im"];
    if headers.len() != 3 || headers.iter().zip(want).any(|(h, w)| h != w) {
        return Err(parse_err(
            1,
            format!("expected header `{}`", want.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let row: Row = rec.deserialize(None).map_err(csv_error)?;
        if !(row.re.is_finite() && row.im.is_finite()) {
            return Err(parse_err(line, "non-finite value"));
        }
        rows.push((line, row.index, Complex64::new(row.re, row.im)));
    }
    Ok(rows)
}

pub fn grid_from_csv<R: Read>(reader: R) -> Result<GridSamples> {
    let rows = read_rows(reader, "j")?;
    if rows.is_empty() {
        return Err(parse_err(1, "no samples"));
    }
    let mut values = Vec::with_capacity(rows.len());
    for (expected, (line, j, v)) in rows.into_iter().enumerate() {
        if j != expected as i64 {
            return Err(parse_err(
                line,
                format!("expected j = {expected}, found {j}"),
            ));
        }
        values.push(v);
    }
    GridSamples::new(values)
}

pub fn coeffs_from_csv<R: Read>(reader: R) -> Result<TwistedCoeffs> {
    let rows = read_rows(reader, "k")?;
    if rows.is_empty() || rows.len() % 2 != 0 {
        return Err(parse_err(
            1,
            "coefficient rows must be a positive even count (k = -K..K-1)",
        ));
    }
    let window = ModeWindow::new(rows.len() / 2)?;
    let mut values = Vec::with_capacity(rows.len());
    for ((line, k, v), expected) in rows.into_iter().zip(window.indices()) {
        if k != expected {
            return Err(parse_err(
                line,
                format!("expected k = {expected}, found {k}"),
            ));
        }
        values.push(v);
    }
    TwistedCoeffs::new(window, values)
}

/// Shortest round-trip text for `v`, switching to exponent form for very
/// small or large magnitudes.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn write_rows<W: Write>(
    writer: W,
    index_name: &str,
    rows: impl Iterator<Item = (i64, Complex64)>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record([index_name, "re", "im"]).map_err(io)?;
    for (i, v) in rows {
        w.write_record([i.to_string(), format_f64(v.re), format_f64(v.im)])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn grid_to_csv<W: Write>(g: &GridSamples, writer: W) -> Result<()> {
    write_rows(
        writer,
        "j",
        g.values().iter().enumerate().map(|(j, v)| (j as i64, *v)),
    )
}

pub fn coeffs_to_csv<W: Write>(c: &TwistedCoeffs, writer: W) -> Result<()> {
    write_rows(writer, "k", c.iter())
}

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

fn complexes(pairs: &[[f64; 2]]) -> Result<Vec<Complex64>> {
    pairs
        .iter()
        .map(|&[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(parse_err(0, "non-finite value"))
            }
        })
        .collect()
}

pub fn grid_from_json<R: Read>(reader: R) -> Result<GridSamples> {
    let doc: GridJson = serde_json::from_reader(reader).map_err(json_error)?;
    if doc.n != doc.values.len() {
        return Err(parse_err(
            0,
            format!("N = {} but {} values", doc.n, doc.values.len()),
        ));
    }
    GridSamples::new(complexes(&doc.values)?)
}

pub fn coeffs_from_json<R: Read>(reader: R) -> Result<TwistedCoeffs> {
    let doc: CoeffsJson = serde_json::from_reader(reader).map_err(json_error)?;
    let window = ModeWindow::new(doc.k)?;
    if window.len() != doc.values.len() {
        return Err(parse_err(
            0,
            format!(
                "K = {} needs {} values, got {}",
                doc.k,
                window.len(),
                doc.values.len()
            ),
        ));
    }
    TwistedCoeffs::new(window, complexes(&doc.values)?)
}

pub fn grid_to_json<W: Write>(g: &GridSamples, writer: W) -> Result<()> {
    let doc = GridJson {
        n: g.len(),
        values: pairs(g.values()),
    };
    serde_json::to_writer(writer, &doc).map_err(|e| Error::Io(e.into()))
}

pub fn coeffs_to_json<W: Write>(c: &TwistedCoeffs, writer: W) -> Result<()> {
    let doc = CoeffsJson {
        k: c.window().half_width(),
        values: pairs(c.values()),
    };
    serde_json::to_writer(writer, &doc).map_err(|e| Error::Io(e.into()))
}

pub fn read_grid(path: &Path, format: Format) -> Result<GridSamples> {
    let r = BufReader::new(File::open(path)?);
    match format {
        Format::Csv => grid_from_csv(r),
        Format::Json => grid_from_json(r),
    }
}

pub fn read_coeffs(path: &Path, format: Format) -> Result<TwistedCoeffs> {
    let r = BufReader::new(File::open(path)?);
    match format {
        Format::Csv => coeffs_from_csv(r),
        Format::Json => coeffs_from_json(r),
    }
}

pub fn write_grid(path: &Path, g: &GridSamples, format: Format) -> Result<()> {
    let w = BufWriter::new(File::create(path)?);
    match format {
        Format::Csv => grid_to_csv(g, w),
        Format::Json => grid_to_json(g, w),
    }
}

pub fn write_coeffs(path: &Path, c: &TwistedCoeffs, format: Format) -> Result<()> {
    let w = BufWriter::new(File::create(path)?);
    match format {
        Format::Csv => coeffs_to_csv(c, w),
        Format::Json => coeffs_to_json(c, w),
    }
}
