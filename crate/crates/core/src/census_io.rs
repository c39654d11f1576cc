//! Line-oriented census file format.
//!
//! ```text
//! MKC1 t_max=<float>
//! <digits> <trace> <length> <alt> <parity> <inert> <reciprocal>
//! ...
//! END records=<n> fnv1a64=<hex>
//! ```
//!
//! Lengths carry 17 significant digits. The trailer checksum covers every
//! record line including its newline, so truncation is detected.

use crate::census::{Census, GeodesicRecord};
use crate::error::{Error, Result};
use crate::word::PeriodicWord;
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

const MAGIC: &str = "MKC1";

fn fnv1a64(state: u64, bytes: &[u8]) -> u64 {
    let mut h = state;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;

fn record_line(rec: &GeodesicRecord) -> String {
    let mut s = String::new();
    write!(
        s,
        "{} {} {:.16e} {} {} {} {}",
        rec.canonical_word, rec.trace, rec.length, rec.alt, rec.parity, rec.inert, rec.reciprocal
    )
    .expect("write to string");
    s
}

pub fn write_census(path: &Path, census: &Census) -> Result<()> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{MAGIC} t_max={}", census.t_max)?;
    let mut hash = FNV_OFFSET;
    for rec in &census.records {
        let line = record_line(rec);
        hash = fnv1a64(hash, line.as_bytes());
        hash = fnv1a64(hash, b"\n");
        writeln!(out, "{line}")?;
    }
    writeln!(out, "END records={} fnv1a64={:016x}", census.records.len(), hash)?;
    out.flush()?;
    Ok(())
}

fn parse_record(line: &str, lineno: usize) -> Result<GeodesicRecord> {
    let err = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    if fields.len() != 7 {
        return Err(err(format!("expected 7 fields, found {}", fields.len())));
    }
    let canonical_word = PeriodicWord::from_str(fields[0]).map_err(|e| err(e.to_string()))?;
    let trace = BigInt::from_str(fields[1]).map_err(|e| err(e.to_string()))?;
    let length: f64 = fields[2].parse().map_err(|e| err(format!("length: {e}")))?;
    let alt: i64 = fields[3].parse().map_err(|e| err(format!("alt: {e}")))?;
    let parity = fields[4].parse().map_err(|_| err("bad parity".into()))?;
    let inert: bool = fields[5].parse().map_err(|e| err(format!("inert: {e}")))?;
    let reciprocal: bool = fields[6]
        .parse()
        .map_err(|e| err(format!("reciprocal: {e}")))?;
    Ok(GeodesicRecord {
        canonical_word,
        trace,
        length,
        alt,
        parity,
        inert,
        reciprocal,
    })
}

pub fn read_census(path: &Path) -> Result<Census> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines();

    let header = lines
        .next()
        .ok_or_else(|| Error::FormatVersion("empty file".into()))??;
    let rest = header
        .strip_prefix(MAGIC)
        .ok_or_else(|| Error::FormatVersion(format!("bad magic in `{header}`")))?;
    let t_max: f64 = rest
        .trim()
        .strip_prefix("t_max=")
        .ok_or_else(|| Error::FormatVersion("missing t_max".into()))?
        .parse()
        .map_err(|e| Error::FormatVersion(format!("bad t_max: {e}")))?;

    let mut records = Vec::new();
    let mut hash = FNV_OFFSET;
    let mut trailer: Option<String> = None;
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.starts_with("END ") {
            trailer = Some(line);
            break;
        }
        hash = fnv1a64(hash, line.as_bytes());
        hash = fnv1a64(hash, b"\n");
        records.push(parse_record(&line, i + 2)?);
    }
    let trailer = trailer.ok_or_else(|| Error::Checksum("missing END trailer".into()))?;
    let mut count: Option<usize> = None;
    let mut stored_hash: Option<u64> = None;
    for tok in trailer.split_ascii_whitespace().skip(1) {
        if let Some(v) = tok.strip_prefix("records=") {
            count = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("fnv1a64=") {
            stored_hash = u64::from_str_radix(v, 16).ok();
        }
    }
    let count = count.ok_or_else(|| Error::Checksum("trailer missing record count".into()))?;
    let stored_hash = stored_hash.ok_or_else(|| Error::Checksum("trailer missing hash".into()))?;
    if count != records.len() {
        return Err(Error::Checksum(format!(
            "trailer says {count} records, file has {}",
            records.len()
        )));
    }
    if stored_hash != hash {
        return Err(Error::Checksum(format!(
            "hash mismatch: stored {stored_hash:016x}, computed {hash:016x}"
        )));
    }
    for pair in records.windows(2) {
        if (&pair[1].trace, &pair[1].canonical_word) <= (&pair[0].trace, &pair[0].canonical_word) {
            return Err(Error::Checksum("records out of order".into()));
        }
    }
    Ok(Census { t_max, records })
}
