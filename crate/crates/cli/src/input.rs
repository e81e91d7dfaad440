//! Parsing of command-line values and data files.

use std::fs;
use std::io::Write;
use std::path::Path;

use cantor_cdf::numbers::{format_decimal, parse_rational};
use cantor_cdf::reconstruction::QueryRecord;
use cantor_cdf::{CdfOracle, Classification, DigitVector, Error, Rational, Result};

/// A vector given as `N:bits`, inline JSON, or a path to either.
pub fn vector(arg: &str) -> Result<DigitVector> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let text = text.trim();
    if text.starts_with('{') {
        DigitVector::from_json(text)
    } else {
        text.parse()
    }
}

pub fn rational(arg: &str) -> Result<Rational> {
    parse_rational(arg)
}

/// Exact `p/q`, or a truncated decimal when `digits` is given.
pub fn show(x: &Rational, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format_decimal(x, d),
        None => x.to_string(),
    }
}

/// Rows of a two-column CSV file with the given header.
pub fn pairs(path: &Path, header: [&str; 2]) -> Result<Vec<(Rational, Rational)>> {
    let bad = |msg: String| Error::Parse(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let found = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if found.len() != 2 || found[0] != *header[0] || found[1] != *header[1] {
        return Err(bad(format!("expected header {},{}", header[0], header[1])));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        if record.len() != 2 {
            return Err(bad(format!("row {:?} does not have two fields", record)));
        }
        out.push((rational(&record[0])?, rational(&record[1])?));
    }
    Ok(out)
}

pub fn write_csv<R: AsRef<[String]>>(
    out: &mut dyn Write,
    header: &[&str],
    rows: &[R],
) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row.as_ref()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Parse(format!("writing CSV: {e}")))
}

/// `vector.json` simulates the hidden vector; `table.csv` (header `x,y`)
/// answers only its listed points.
pub fn oracle(path: &Path) -> Result<CdfOracle> {
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        Ok(CdfOracle::table(pairs(path, ["x", "y"])?))
    } else {
        let arg = path
            .to_str()
            .ok_or_else(|| Error::Parse("oracle path is not UTF-8".into()))?;
        if !path.is_file() {
            return Err(Error::Parse(format!("oracle file {arg} not found")));
        }
        Ok(CdfOracle::hidden(vector(arg)?))
    }
}

pub fn verdict(c: &Classification) -> String {
    match c {
        Classification::RationalValue(v) => v.to_string(),
        Classification::IrrationalAtDepth(d) => format!("irrational@{d}"),
        Classification::NotMemberAt(t) => format!("not-member@{t}"),
    }
}

/// Query log rows `x,Fx`.
pub fn log_rows(log: &[QueryRecord]) -> Vec<[String; 2]> {
    log.iter()
        .map(|r| match r {
            QueryRecord::Point { x, value } => [x.to_string(), value.to_string()],
            QueryRecord::Stream {
                label, verdict: v, ..
            } => [format!("stream {label}"), verdict(v)],
        })
        .collect()
}

/// Rationals listed one per line or comma-separated; `x` header lines and
/// blank lines are skipped.
pub fn point_list(text: &str) -> Result<Vec<Rational>> {
    text.split([',', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && *s != "x")
        .map(rational)
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
