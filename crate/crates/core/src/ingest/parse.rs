//! Delimited edge-list reading and writing.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EventStream, StreamBuilder, TimeUnit};
use crate::transform::snapshot_of;
use crate::SnapshotSequence;

/// Column layout of a delimited edge-list file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EdgeListFormat {
    pub delimiter: char,
    /// `None` auto-detects: row 0 is a header iff its time field is not numeric.
    pub has_header: Option<bool>,
    pub col_src: usize,
    pub col_dst: usize,
    pub col_time: usize,
    pub comment_prefix: Option<char>,
}

impl Default for EdgeListFormat {
    fn default() -> Self {
        EdgeListFormat {
            delimiter: ',',
            has_header: None,
            col_src: 0,
            col_dst: 1,
            col_time: 2,
            comment_prefix: Some('#'),
        }
    }
}

impl EdgeListFormat {
    pub fn tsv() -> Self {
        EdgeListFormat {
            delimiter: '\t',
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (s, d, t) = (self.col_src, self.col_dst, self.col_time);
        if s == d || s == t || d == t {
            return Err(Error::InvalidFormat(format!(
                "column indices must be distinct (src {s}, dst {d}, time {t})"
            )));
        }
        if !self.delimiter.is_ascii() {
            return Err(Error::InvalidFormat("delimiter must be an ASCII character".into()));
        }
        if self.comment_prefix.is_some_and(|c| !c.is_ascii()) {
            return Err(Error::InvalidFormat("comment prefix must be an ASCII character".into()));
        }
        Ok(())
    }

    fn min_columns(&self) -> usize {
        self.col_src.max(self.col_dst).max(self.col_time) + 1
    }
}

/// Everything needed to turn a file into an [`EventStream`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub format: EdgeListFormat,
    pub unit: TimeUnit,
    pub undirected: bool,
}

impl From<EdgeListFormat> for LoadOptions {
    fn from(format: EdgeListFormat) -> Self {
        LoadOptions {
            format,
            ..Self::default()
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum TimestampError {
    NotNumeric,
    Fractional,
    Overflow,
}

/// Parses an integer timestamp. A decimal point is accepted only when every
/// fractional digit is zero, so `"12.0"` is 12 and `"12.5"` is an error.
pub(crate) fn parse_timestamp(raw: &str) -> Result<i64, TimestampError> {
    let (int_part, frac) = match raw.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (raw, None),
    };
    let digits = int_part.strip_prefix(['-', '+']).unwrap_or(int_part);
    let frac_ok = frac.is_none_or(|f| f.bytes().all(|b| b.is_ascii_digit()));
    if !frac_ok
        || (digits.is_empty() && frac.is_none_or(str::is_empty))
        || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(TimestampError::NotNumeric);
    }
    if frac.is_some_and(|f| f.bytes().any(|b| b != b'0')) {
        return Err(TimestampError::Fractional);
    }
    if digits.is_empty() {
        // ".0" style
        return Ok(0);
    }
    int_part.parse::<i64>().map_err(|_| TimestampError::Overflow)
}

fn open_maybe_gz(path: &Path) -> Result<Box<dyn Read>> {
    let mut reader = BufReader::with_capacity(1 << 20, File::open(path)?);
    let gz = reader.fill_buf()?.starts_with(&[0x1f, 0x8b]);
    Ok(if gz {
        Box::new(BufReader::with_capacity(1 << 20, MultiGzDecoder::new(reader)))
    } else {
        Box::new(reader)
    })
}

/// Reads a delimited (optionally gzip-compressed) edge list.
pub fn read_edgelist(path: impl AsRef<Path>, format: &EdgeListFormat) -> Result<EventStream> {
    read_edgelist_with(path, &LoadOptions::from(format.clone()))
}

pub fn read_edgelist_with(path: impl AsRef<Path>, opts: &LoadOptions) -> Result<EventStream> {
    read_edgelist_from(open_maybe_gz(path.as_ref())?, opts)
}

/// Single-pass parse of any reader. Fails on the first malformed line.
pub fn read_edgelist_from<R: Read>(reader: R, opts: &LoadOptions) -> Result<EventStream> {
    let fmt = &opts.format;
    fmt.validate()?;
    let mut csv = csv::ReaderBuilder::new()
        .delimiter(fmt.delimiter as u8)
        .comment(fmt.comment_prefix.map(|c| c as u8))
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .buffer_capacity(1 << 20)
        .from_reader(reader);

    let mut builder = StreamBuilder::new()
        .unit(opts.unit)
        .undirected(opts.undirected);
    let mut record = csv::ByteRecord::new();
    let mut first = true;
    let need = fmt.min_columns();
    loop {
        let more = csv.read_byte_record(&mut record).map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::Parse {
                line,
                reason: e.to_string(),
            }
        })?;
        if !more {
            break;
        }
        let line = record.position().map_or(0, |p| p.line());
        let parse_err = |reason: String| Error::Parse { line, reason };
        if record.len() < need {
            if record.len() == 1 && record[0].is_empty() {
                continue;
            }
            return Err(parse_err(format!(
                "expected at least {need} columns, found {}",
                record.len()
            )));
        }
        let field = |i: usize| {
            std::str::from_utf8(&record[i]).map_err(|_| parse_err(format!("column {i} is not valid UTF-8")))
        };
        let time_raw = field(fmt.col_time)?;
        let time = match parse_timestamp(time_raw) {
            Ok(t) => t,
            Err(TimestampError::NotNumeric) if first && fmt.has_header != Some(false) => {
                first = false;
                continue;
            }
            Err(TimestampError::NotNumeric) => {
                return Err(parse_err(format!("timestamp '{time_raw}' is not an integer")))
            }
            Err(TimestampError::Fractional) => {
                return Err(parse_err(format!("fractional timestamp '{time_raw}'")))
            }
            Err(TimestampError::Overflow) => {
                return Err(Error::TimestampOverflow(format!("line {line}: {time_raw}")))
            }
        };
        if first {
            first = false;
            if fmt.has_header == Some(true) {
                continue;
            }
        }
        builder
            .push(field(fmt.col_src)?, field(fmt.col_dst)?, time)
            .map_err(|e| match e {
                Error::TimestampOverflow(v) => Error::TimestampOverflow(format!("line {line}: {v}")),
                other => other,
            })?;
    }
    builder.finish()
}

/// Writes `src,dst,time` rows with the original labels.
pub fn write_edgelist<W: Write>(stream: &EventStream, delimiter: char, out: W) -> Result<()> {
    write_rows(stream, delimiter, "time", out, |t| t)
}

/// Writes `src,dst,snapshot` rows, replacing each timestamp with the index
/// of the snapshot containing it.
pub fn write_discretized<W: Write>(
    stream: &EventStream,
    seq: &SnapshotSequence,
    delimiter: char,
    out: W,
) -> Result<()> {
    write_rows(stream, delimiter, "snapshot", out, |t| {
        snapshot_of(seq, t).expect("sequence covers the stream") as i64
    })
}

fn write_rows<W: Write>(
    stream: &EventStream,
    delimiter: char,
    time_header: &str,
    out: W,
    time: impl Fn(i64) -> i64,
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter as u8)
        .from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.into());
    w.write_record(["src", "dst", time_header]).map_err(csv_err)?;
    let mut buf = String::with_capacity(24);
    for (src, dst, t) in stream.triplets() {
        buf.clear();
        use std::fmt::Write as _;
        write!(buf, "{}", time(t)).expect("string write");
        w.write_record([src, dst, buf.as_str()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
