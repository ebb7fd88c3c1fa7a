//! FASTA/FASTQ ingestion and FASTA emission.
//!
//! Sequence bytes are uppercased on the way in; FASTQ quality strings are
//! length-checked and then dropped (nothing downstream consumes them).

use std::io::{BufRead, Write};
use std::path::Path;

use crate::{Error, Result};

/// One named sequence. Doubles as the read record used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub id: String,
    pub desc: Option<String>,
    pub bases: Vec<u8>,
}

impl SequenceRecord {
    pub fn new(id: impl Into<String>, bases: Vec<u8>) -> Self {
        SequenceRecord {
            id: id.into(),
            desc: None,
            bases,
        }
    }

    pub fn with_desc(id: impl Into<String>, desc: impl Into<String>, bases: Vec<u8>) -> Self {
        SequenceRecord {
            id: id.into(),
            desc: Some(desc.into()),
            bases,
        }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }
}

/// Parse FASTA or FASTQ, deciding by the first non-blank byte.
pub fn read_records<R: BufRead>(r: &mut R) -> Result<Vec<SequenceRecord>> {
    let mut lines = Vec::new();
    for line in r.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push(line);
        }
    }
    let records = match lines.first().map(|l| l.as_bytes()[0]) {
        None => return Err(Error::format("sequence file is empty")),
        Some(b'>') => parse_fasta(&lines)?,
        Some(b'@') => parse_fastq(&lines)?,
        Some(other) => {
            return Err(Error::format(format!(
                "unrecognized sequence file: first byte {:#04x} is neither '>' nor '@'",
                other
            )))
        }
    };
    let mut seen = std::collections::HashSet::new();
    for rec in &records {
        if !seen.insert(rec.id.as_str()) {
            return Err(Error::format(format!("duplicate record id '{}'", rec.id)));
        }
    }
    Ok(records)
}

/// Read a sequence file from disk (FASTA or FASTQ).
pub fn read_path(path: &Path) -> Result<Vec<SequenceRecord>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::invalid(format!("cannot open {}: {}", path.display(), e)))?;
    read_records(&mut std::io::BufReader::new(file))
}

fn split_header(line: &str) -> (String, Option<String>) {
    let body = &line[1..];
    match body.split_once(char::is_whitespace) {
        Some((id, desc)) => {
            let desc = desc.trim();
            (id.to_string(), (!desc.is_empty()).then(|| desc.to_string()))
        }
        None => (body.to_string(), None),
    }
}

fn parse_fasta(lines: &[String]) -> Result<Vec<SequenceRecord>> {
    let mut records = Vec::new();
    let mut current: Option<SequenceRecord> = None;
    for line in lines {
        if let Some(rest) = line.strip_prefix('>') {
            if let Some(rec) = current.take() {
                records.push(rec);
            }
            let (id, desc) = split_header(&format!(">{}", rest));
            if id.is_empty() {
                return Err(Error::format("FASTA record with empty id"));
            }
            current = Some(SequenceRecord {
                id,
                desc,
                bases: Vec::new(),
            });
        } else {
            let rec = current
                .as_mut()
                .ok_or_else(|| Error::format("sequence data before the first FASTA header"))?;
            rec.bases
                .extend(line.trim().bytes().map(|b| b.to_ascii_uppercase()));
        }
    }
    if let Some(rec) = current.take() {
        records.push(rec);
    }
    Ok(records)
}

fn parse_fastq(lines: &[String]) -> Result<Vec<SequenceRecord>> {
    if !lines.len().is_multiple_of(4) {
        return Err(Error::format(format!(
            "FASTQ line count {} is not a multiple of 4",
            lines.len()
        )));
    }
    let mut records = Vec::new();
    for chunk in lines.chunks(4) {
        if !chunk[0].starts_with('@') {
            return Err(Error::format("FASTQ record does not start with '@'"));
        }
        if !chunk[2].starts_with('+') {
            return Err(Error::format(
                "FASTQ separator line does not start with '+'",
            ));
        }
        let (id, desc) = split_header(&chunk[0]);
        if id.is_empty() {
            return Err(Error::format("FASTQ record with empty id"));
        }
        let bases: Vec<u8> = chunk[1]
            .trim()
            .bytes()
            .map(|b| b.to_ascii_uppercase())
            .collect();
        let qual = chunk[3].trim();
        if qual.len() != bases.len() {
            return Err(Error::format(format!(
                "record '{}': quality length {} does not match sequence length {}",
                id,
                qual.len(),
                bases.len()
            )));
        }
        records.push(SequenceRecord { id, desc, bases });
    }
    Ok(records)
}

/// Write FASTA with 60-column sequence wrapping.
pub fn write_fasta<W: Write>(w: &mut W, records: &[SequenceRecord]) -> Result<()> {
    for rec in records {
        match &rec.desc {
            Some(desc) => writeln!(w, ">{} {}", rec.id, desc)?,
            None => writeln!(w, ">{}", rec.id)?,
        }
        for chunk in rec.bases.chunks(60) {
            w.write_all(chunk)?;
            w.write_all(b"\n")?;
        }
    }
    Ok(())
}
