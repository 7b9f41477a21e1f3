//! CSV and JSON export of chart series, with parsers for the round trip.
//!
//! CSV headers:
//!
//! | series   | header |
//! |----------|--------|
//! | counts   | `snapshot,num_nodes,num_edges,num_events` |
//! | degree   | `snapshot,avg_degree` |
//! | TEA      | `snapshot,new,repeated` |
//! | TET      | `src,dst,first_seen,last_seen,presence` |
//!
//! Floats are written in shortest round-trip form, so parsing an export
//! gives back an equal value. A TET CSV with no rows cannot carry the
//! snapshot count and reads back as a 0 × 0 matrix.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::EdgeKey;
use crate::stats::{DegreeSeries, SnapshotCount, SnapshotCounts, TeaRow, TeaSeries, TetMatrix, TetRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Series(format!("unknown export format '{s}'"))),
        }
    }
}

pub trait Series: Sized {
    fn to_csv(&self) -> String;
    fn from_csv(text: &str) -> Result<Self>;
    fn to_json(&self) -> String;
    fn from_json(text: &str) -> Result<Self>;
}

pub fn export_series<S: Series>(series: &S, format: ExportFormat) -> String {
    match format {
        ExportFormat::Csv => series.to_csv(),
        ExportFormat::Json => series.to_json(),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("series serializes");
    s.push('\n');
    s
}

/// Data rows of `text` after checking the header. Every row must have as
/// many fields as the header.
fn csv_rows(text: &str, header: &str) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found = rdr.headers().map_err(|e| Error::Series(e.to_string()))?;
    let found: Vec<&str> = found.iter().collect();
    if found.join(",") != header {
        return Err(Error::Series(format!(
            "expected header '{header}', found '{}'",
            found.join(",")
        )));
    }
    rdr.records()
        .map(|r| r.map_err(|e| Error::Series(e.to_string())))
        .collect()
}

fn field<T: FromStr>(rec: &csv::StringRecord, i: usize, row: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse()
        .map_err(|_| Error::Series(format!("row {row}: cannot parse '{raw}'")))
}

fn check_index(rec: &csv::StringRecord, row: usize) -> Result<()> {
    let idx: usize = field(rec, 0, row)?;
    if idx != row {
        return Err(Error::Series(format!(
            "row {row}: snapshot index {idx} out of sequence"
        )));
    }
    Ok(())
}

impl Series for SnapshotCounts {
    fn to_csv(&self) -> String {
        let mut s = String::from("snapshot,num_nodes,num_edges,num_events\n");
        for (i, c) in self.0.iter().enumerate() {
            let _ = writeln!(s, "{i},{},{},{}", c.num_nodes, c.num_edges, c.num_events);
        }
        s
    }

    fn from_csv(text: &str) -> Result<Self> {
        csv_rows(text, "snapshot,num_nodes,num_edges,num_events")?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                check_index(r, i)?;
                Ok(SnapshotCount {
                    num_nodes: field(r, 1, i)?,
                    num_edges: field(r, 2, i)?,
                    num_events: field(r, 3, i)?,
                })
            })
            .collect::<Result<_>>()
            .map(SnapshotCounts)
    }

    fn to_json(&self) -> String {
        json(self)
    }

    fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Series for DegreeSeries {
    fn to_csv(&self) -> String {
        let mut s = String::from("snapshot,avg_degree\n");
        for (i, d) in self.avg_degree.iter().enumerate() {
            let _ = writeln!(s, "{i},{d}");
        }
        s
    }

    /// The overall mean is recomputed from the per-snapshot values.
    fn from_csv(text: &str) -> Result<Self> {
        let values = csv_rows(text, "snapshot,avg_degree")?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                check_index(r, i)?;
                let d: f64 = field(r, 1, i)?;
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::Series(format!("row {i}: invalid degree {d}")));
                }
                Ok(d)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeSeries::from_values(values))
    }

    fn to_json(&self) -> String {
        json(self)
    }

    fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Series for TeaSeries {
    fn to_csv(&self) -> String {
        let mut s = String::from("snapshot,new,repeated\n");
        for (i, r) in self.0.iter().enumerate() {
            let _ = writeln!(s, "{i},{},{}", r.new_edges, r.repeated_edges);
        }
        s
    }

    fn from_csv(text: &str) -> Result<Self> {
        csv_rows(text, "snapshot,new,repeated")?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                check_index(r, i)?;
                Ok(TeaRow {
                    new_edges: field(r, 1, i)?,
                    repeated_edges: field(r, 2, i)?,
                })
            })
            .collect::<Result<_>>()
            .map(TeaSeries)
    }

    fn to_json(&self) -> String {
        json(self)
    }

    fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
struct TetRowRepr {
    src: u32,
    dst: u32,
    first_seen: usize,
    last_seen: usize,
    presence: String,
}

#[derive(Serialize, Deserialize)]
struct TetRepr {
    num_snapshots: usize,
    rows: Vec<TetRowRepr>,
}

impl TetMatrix {
    fn to_repr(&self) -> TetRepr {
        TetRepr {
            num_snapshots: self.num_snapshots(),
            rows: self
                .rows()
                .iter()
                .enumerate()
                .map(|(i, r)| TetRowRepr {
                    src: r.edge.src.0,
                    dst: r.edge.dst.0,
                    first_seen: r.first_seen,
                    last_seen: r.last_seen,
                    presence: self.presence_string(i),
                })
                .collect(),
        }
    }

    /// Checks every presence string against `num_snapshots` and the row's
    /// first/last columns.
    fn from_repr(repr: TetRepr) -> Result<Self> {
        let n = repr.num_snapshots;
        for (i, r) in repr.rows.iter().enumerate() {
            let bytes = r.presence.as_bytes();
            if bytes.len() != n || !bytes.iter().all(|&b| b == b'0' || b == b'1') {
                return Err(Error::Series(format!(
                    "row {i}: presence must be {n} characters of 0/1"
                )));
            }
            let first = bytes.iter().position(|&b| b == b'1');
            let last = bytes.iter().rposition(|&b| b == b'1');
            if first != Some(r.first_seen) || last != Some(r.last_seen) {
                return Err(Error::Series(format!(
                    "row {i}: first_seen/last_seen disagree with presence"
                )));
            }
        }
        let rows = repr
            .rows
            .iter()
            .map(|r| TetRow {
                edge: EdgeKey::new(r.src, r.dst),
                first_seen: r.first_seen,
                last_seen: r.last_seen,
            })
            .collect();
        let mut m = TetMatrix::new(n, rows);
        for (i, r) in repr.rows.iter().enumerate() {
            for (t, b) in r.presence.bytes().enumerate() {
                if b == b'1' {
                    m.set_present(i, t);
                }
            }
        }
        Ok(m)
    }
}

impl Serialize for TetMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TetMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TetRepr::deserialize(d)?;
        TetMatrix::from_repr(repr).map_err(serde::de::Error::custom)
    }
}

impl Series for TetMatrix {
    fn to_csv(&self) -> String {
        let mut s = String::from("src,dst,first_seen,last_seen,presence\n");
        for (i, r) in self.rows().iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.edge.src.0,
                r.edge.dst.0,
                r.first_seen,
                r.last_seen,
                self.presence_string(i)
            );
        }
        s
    }

    fn from_csv(text: &str) -> Result<Self> {
        let records = csv_rows(text, "src,dst,first_seen,last_seen,presence")?;
        let rows = records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(TetRowRepr {
                    src: field(r, 0, i)?,
                    dst: field(r, 1, i)?,
                    first_seen: field(r, 2, i)?,
                    last_seen: field(r, 3, i)?,
                    presence: r.get(4).unwrap_or("").to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let num_snapshots = rows.first().map_or(0, |r| r.presence.len());
        TetMatrix::from_repr(TetRepr {
            num_snapshots,
            rows,
        })
    }

    fn to_json(&self) -> String {
        json(self)
    }

    fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
