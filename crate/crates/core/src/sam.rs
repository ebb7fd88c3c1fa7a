//! Alignment input/output: a minimal SAM subset and the internal TSV form.
//!
//! From SAM only QNAME, FLAG (bits 0x4 unmapped and 0x10 reverse), RNAME and
//! POS are read; positions are converted from per-record 1-based to global
//! 0-based coordinates using the reference layout. The internal TSV carries
//! `read_id<TAB>pos<TAB>strand` with a 1-based global position (`0` and `*`
//! for unmapped reads).

use std::io::{BufRead, Write};

use crate::kmer_assignment::{AlignmentRecord, Placement, Strand};
use crate::text::RefLayout;
use crate::{Error, Result};

const FLAG_UNMAPPED: u32 = 0x4;
const FLAG_REVERSE: u32 = 0x10;

/// Parse a SAM fragment, mapping RNAME/POS into global coordinates.
/// Alignments naming an RNAME absent from the layout are rejected.
pub fn read_sam<R: BufRead>(r: &mut R, layout: &RefLayout) -> Result<Vec<AlignmentRecord>> {
    let mut records = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if line.is_empty() || line.starts_with('@') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 {
            return Err(Error::format(format!(
                "SAM line {}: fewer than 4 columns",
                lineno + 1
            )));
        }
        let qname = fields[0];
        let flag: u32 = fields[1]
            .parse()
            .map_err(|_| Error::format(format!("SAM line {}: bad FLAG", lineno + 1)))?;
        if flag & FLAG_UNMAPPED != 0 {
            records.push(AlignmentRecord::unmapped(qname));
            continue;
        }
        let rname = fields[2];
        let pos: usize = fields[3]
            .parse()
            .map_err(|_| Error::format(format!("SAM line {}: bad POS", lineno + 1)))?;
        let rec = layout.find(rname).ok_or_else(|| {
            Error::invalid(format!(
                "SAM line {}: unknown reference '{}'",
                lineno + 1,
                rname
            ))
        })?;
        if pos == 0 || pos > rec.len {
            return Err(Error::invalid(format!(
                "SAM line {}: POS {} outside reference '{}' of length {}",
                lineno + 1,
                pos,
                rname,
                rec.len
            )));
        }
        let strand = if flag & FLAG_REVERSE != 0 {
            Strand::Reverse
        } else {
            Strand::Forward
        };
        records.push(AlignmentRecord {
            read_id: qname.to_string(),
            placement: Some(Placement {
                position: rec.offset + pos - 1,
                strand,
            }),
        });
    }
    Ok(records)
}

/// Emit the internal alignment TSV.
pub fn write_alignment_tsv<W: Write>(w: &mut W, records: &[AlignmentRecord]) -> Result<()> {
    for rec in records {
        match rec.placement {
            Some(p) => writeln!(
                w,
                "{}\t{}\t{}",
                rec.read_id,
                p.position + 1,
                p.strand.as_char()
            )?,
            None => writeln!(w, "{}\t0\t*", rec.read_id)?,
        }
    }
    Ok(())
}

/// Parse the internal alignment TSV.
pub fn read_alignment_tsv<R: BufRead>(r: &mut R) -> Result<Vec<AlignmentRecord>> {
    let mut records = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::format(format!(
                "alignment line {}: expected 3 tab-separated fields",
                lineno + 1
            )));
        }
        let pos: usize = fields[1]
            .parse()
            .map_err(|_| Error::format(format!("alignment line {}: bad position", lineno + 1)))?;
        let placement = match (pos, fields[2]) {
            (0, "*") => None,
            (0, _) | (_, "*") => {
                return Err(Error::format(format!(
                    "alignment line {}: inconsistent unmapped marker",
                    lineno + 1
                )))
            }
            (p, "+") => Some(Placement {
                position: p - 1,
                strand: Strand::Forward,
            }),
            (p, "-") => Some(Placement {
                position: p - 1,
                strand: Strand::Reverse,
            }),
            (_, other) => {
                return Err(Error::format(format!(
                    "alignment line {}: bad strand '{}'",
                    lineno + 1,
                    other
                )))
            }
        };
        records.push(AlignmentRecord {
            read_id: fields[0].to_string(),
            placement,
        });
    }
    Ok(records)
}
