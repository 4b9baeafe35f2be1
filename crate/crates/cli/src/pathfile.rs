//! On-disk path formats.
//!
//! - CSV: header `rank,slab,row,col`, one record per cell in path order.
//! - JSON: `{ "dims": [P,N,M], "order": "<spec>", "cells": [[s,r,c], ...] }`.
//! - Binary: `SFC3`, version byte `0x01`, `P,N,M` as little-endian `u32`, then
//!   one `(s,r,c)` record of three little-endian `u32` per cell.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use sfc3::{Coord3, CurvePath, Dims3};
use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"SFC3";
pub const VERSION: u8 = 0x01;
const CSV_HEADER: [&str; 4] = ["rank", "slab", "row", "col"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Bin,
}

impl Format {
    /// Guesses the format from the leading bytes.
    pub fn detect(bytes: &[u8]) -> Format {
        if bytes.starts_with(MAGIC) {
            Format::Bin
        } else if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record {expected} has rank {found}")]
    RankMismatch { expected: u64, found: u64 },
    #[error("{0}")]
    Format(String),
}

/// Contents of a path file. CSV files carry no dims or order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFile {
    pub dims: Option<Dims3>,
    pub order: Option<String>,
    pub cells: Vec<Coord3>,
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    dims: [u32; 3],
    order: String,
    cells: Vec<[u32; 3]>,
}

pub fn write_path(
    out: &mut dyn Write,
    path: &CurvePath,
    order: &str,
    format: Format,
) -> io::Result<()> {
    let mut out = io::BufWriter::new(out);
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut out);
            w.write_record(CSV_HEADER)?;
            for (rank, c) in path.cells().iter().enumerate() {
                w.serialize((rank as u64, c.s, c.r, c.c))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = JsonDoc {
                dims: path.dims().as_array(),
                order: order.to_string(),
                cells: path.cells().iter().map(Coord3::as_array).collect(),
            };
            serde_json::to_writer(&mut out, &doc)?;
            out.write_all(b"\n")?;
        }
        Format::Bin => {
            out.write_all(MAGIC)?;
            out.write_all(&[VERSION])?;
            for v in path.dims().as_array() {
                out.write_all(&v.to_le_bytes())?;
            }
            for c in path.cells() {
                for v in c.as_array() {
                    out.write_all(&v.to_le_bytes())?;
                }
            }
        }
    }
    out.flush()
}

pub fn read_path(bytes: &[u8], format: Option<Format>) -> Result<PathFile, ParseError> {
    match format.unwrap_or_else(|| Format::detect(bytes)) {
        Format::Csv => read_csv(bytes),
        Format::Json => read_json(bytes),
        Format::Bin => read_bin(bytes),
    }
}

fn read_csv(bytes: &[u8]) -> Result<PathFile, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(bytes);
    let header = reader.headers()?;
    if header.iter().ne(CSV_HEADER) {
        return Err(ParseError::Format(format!(
            "expected CSV header {:?}, found {:?}",
            CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut cells = Vec::new();
    for (expected, record) in reader.deserialize::<(u64, u32, u32, u32)>().enumerate() {
        let (rank, s, r, c) = record?;
        if rank != expected as u64 {
            return Err(ParseError::RankMismatch {
                expected: expected as u64,
                found: rank,
            });
        }
        cells.push(Coord3::new(s, r, c));
    }
    Ok(PathFile {
        dims: None,
        order: None,
        cells,
    })
}

fn read_json(bytes: &[u8]) -> Result<PathFile, ParseError> {
    let doc: JsonDoc = serde_json::from_slice(bytes)?;
    let [p, n, m] = doc.dims;
    let dims = Dims3::new(p, n, m).map_err(|e| ParseError::Format(e.to_string()))?;
    Ok(PathFile {
        dims: Some(dims),
        order: Some(doc.order),
        cells: doc.cells.into_iter().map(Coord3::from_array).collect(),
    })
}

fn read_bin(bytes: &[u8]) -> Result<PathFile, ParseError> {
    let rest = bytes
        .strip_prefix(MAGIC.as_slice())
        .ok_or_else(|| ParseError::Format("missing SFC3 magic".into()))?;
    let (&version, rest) = rest
        .split_first()
        .ok_or_else(|| ParseError::Format("missing format version".into()))?;
    if version != VERSION {
        return Err(ParseError::Format(format!(
            "unsupported format version {version}"
        )));
    }
    if rest.len() < 12 {
        return Err(ParseError::Format("truncated header".into()));
    }
    let (header, body) = rest.split_at(12);
    let words = |chunk: &[u8]| -> Vec<u32> {
        chunk
            .chunks_exact(4)
            .map(|w| u32::from_le_bytes([w[0], w[1], w[2], w[3]]))
            .collect()
    };
    let h = words(header);
    let dims = Dims3::new(h[0], h[1], h[2]).map_err(|e| ParseError::Format(e.to_string()))?;
    if body.len() % 12 != 0 {
        return Err(ParseError::Format(format!(
            "{} trailing bytes do not form a whole record",
            body.len() % 12
        )));
    }
    let cells = body
        .chunks_exact(12)
        .map(|rec| {
            let v = words(rec);
            Coord3::new(v[0], v[1], v[2])
        })
        .collect();
    Ok(PathFile {
        dims: Some(dims),
        order: None,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sfc3::morton::morton_general;

    fn encode(path: &CurvePath, format: Format) -> Vec<u8> {
        let mut buf = Vec::new();
        write_path(&mut buf, path, "morton", format).unwrap();
        buf
    }

    #[test]
    fn csv_layout() {
        let path = morton_general(Dims3::new(3, 2, 2).unwrap());
        let text = String::from_utf8(encode(&path, Format::Csv)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "rank,slab,row,col");
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[1 + 8], "8,2,0,0");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn binary_layout() {
        let path = morton_general(Dims3::new(3, 2, 2).unwrap());
        let buf = encode(&path, Format::Bin);
        assert_eq!(&buf[..5], b"SFC3\x01");
        assert_eq!(&buf[5..17], &[3, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(buf.len(), 17 + 12 * 12);
        // record 8 is (2,0,0)
        assert_eq!(
            &buf[17 + 8 * 12..17 + 9 * 12],
            &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]
        );
    }

    #[test]
    fn detects_and_decodes_every_format() {
        let path = morton_general(Dims3::new(3, 3, 2).unwrap());
        for format in [Format::Csv, Format::Json, Format::Bin] {
            let buf = encode(&path, format);
            assert_eq!(Format::detect(&buf), format);
            let file = read_path(&buf, None).unwrap();
            assert_eq!(file.cells, path.cells());
            if format != Format::Csv {
                assert_eq!(file.dims, Some(path.dims()));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            read_path(b"rank,slab,row,col\n1,0,0,0\n", None),
            Err(ParseError::RankMismatch {
                expected: 0,
                found: 1
            })
        ));
        assert!(read_path(b"a,b,c,d\n", Some(Format::Csv)).is_err());
        assert!(read_path(b"rank,slab,row,col\n0,x,0,0\n", None).is_err());
        assert!(read_path(b"{\"dims\": [1,1", None).is_err());
        assert!(read_path(b"SFC3\x02\x01\0\0\0\x01\0\0\0\x01\0\0\0", None).is_err());
        assert!(read_path(b"SFC3\x01\x01\0\0\0\x01\0\0\0\x01\0\0\0\0\0", None).is_err());
        assert!(read_path(b"SFC3\x01\x00\0\0\0\x01\0\0\0\x01\0\0\0", None).is_err());
    }
}
