//! Per-read k-mer size selection.
//!
//! A mapped read covering reference window `[p, p + len)` is assigned
//! `k* = 1 + max(MSL[p..p + len])`: one more than the tallest repeat summit
//! under the read, so substrings of the window longer than every covering
//! repeat occur uniquely. Reverse-strand alignments cover the same reference
//! window and contribute to the same maximum (evaluated with the read's
//! reverse complement by the aligner). When the computed k exceeds the read
//! length the overflow default applies; reads with no mapped alignment get
//! the unaligned default.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use crate::fastx::SequenceRecord;
use crate::landscape::MslArray;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strand {
    Forward,
    Reverse,
}

impl Strand {
    pub fn as_char(&self) -> char {
        match self {
            Strand::Forward => '+',
            Strand::Reverse => '-',
        }
    }
}

/// Where a mapped read sits on the reference: 0-based global position of the
/// leftmost covered base, plus the strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub position: usize,
    pub strand: Strand,
}

/// One alignment report for a read; `placement` is `None` for unmapped reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentRecord {
    pub read_id: String,
    pub placement: Option<Placement>,
}

impl AlignmentRecord {
    pub fn mapped(read_id: impl Into<String>, position: usize, strand: Strand) -> Self {
        AlignmentRecord {
            read_id: read_id.into(),
            placement: Some(Placement { position, strand }),
        }
    }

    pub fn unmapped(read_id: impl Into<String>) -> Self {
        AlignmentRecord {
            read_id: read_id.into(),
            placement: None,
        }
    }
}

/// Provenance of an assigned k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignmentSource {
    Aligned,
    OverflowDefault,
    UnalignedDefault,
}

impl AssignmentSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            AssignmentSource::Aligned => "aligned",
            AssignmentSource::OverflowDefault => "overflow_default",
            AssignmentSource::UnalignedDefault => "unaligned_default",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aligned" => Ok(AssignmentSource::Aligned),
            "overflow_default" => Ok(AssignmentSource::OverflowDefault),
            "unaligned_default" => Ok(AssignmentSource::UnalignedDefault),
            other => Err(Error::format(format!(
                "unknown assignment source '{}'",
                other
            ))),
        }
    }
}

/// Chosen k for one read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadAssignment {
    pub read_id: String,
    pub k: usize,
    pub source: AssignmentSource,
}

/// Default k values; 77 for overflow and 55 for unaligned reads, with a
/// floor of 2 so every assigned k is a valid de Bruijn order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct KmerDefaults {
    pub unaligned: usize,
    pub overflow: usize,
    pub floor: usize,
}

impl Default for KmerDefaults {
    fn default() -> Self {
        KmerDefaults {
            unaligned: 55,
            overflow: 77,
            floor: 2,
        }
    }
}

impl KmerDefaults {
    pub fn validate(&self) -> Result<()> {
        if self.floor < 2 {
            return Err(Error::invalid("k floor must be at least 2"));
        }
        for (name, k) in [("unaligned", self.unaligned), ("overflow", self.overflow)] {
            if k < 2 {
                return Err(Error::invalid(format!(
                    "{} default k = {} must be at least 2",
                    name, k
                )));
            }
        }
        Ok(())
    }
}

/// `k* = 1 + max(msl[position .. position + len])` over the `len` reference
/// positions covered by the alignment.
pub fn k_for_alignment(msl: &MslArray, position: usize, len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::invalid("alignment covers zero positions"));
    }
    let end = position
        .checked_add(len)
        .filter(|&end| end <= msl.len())
        .ok_or_else(|| {
            Error::invalid(format!(
                "alignment window starting at {} with length {} exceeds reference length {}",
                position,
                len,
                msl.len()
            ))
        })?;
    let max = msl.heights()[position..end].iter().copied().max().unwrap();
    Ok(max as usize + 1)
}

/// Assign a k to one read from its mapped placements. The result does not
/// depend on placement order.
pub fn assign_k(
    read: &SequenceRecord,
    placements: &[Placement],
    msl: &MslArray,
    defaults: &KmerDefaults,
) -> Result<ReadAssignment> {
    let mut best: Option<usize> = None;
    for p in placements {
        let k = k_for_alignment(msl, p.position, read.len())?;
        best = Some(best.map_or(k, |b| b.max(k)));
    }
    let (k, source) = match best {
        None => (defaults.unaligned, AssignmentSource::UnalignedDefault),
        Some(raw) => {
            let k = raw.max(defaults.floor);
            if k > read.len() {
                (defaults.overflow, AssignmentSource::OverflowDefault)
            } else {
                (k, AssignmentSource::Aligned)
            }
        }
    };
    Ok(ReadAssignment {
        read_id: read.id.clone(),
        k,
        source,
    })
}

/// Assignment rows (in read input order) plus the k histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentTable {
    pub rows: Vec<ReadAssignment>,
    pub histogram: BTreeMap<usize, u64>,
}

/// Batch driver: one assignment per read. Duplicate read ids and alignments
/// naming unknown reads are rejected.
pub fn assign_all(
    reads: &[SequenceRecord],
    alignments: &[AlignmentRecord],
    msl: &MslArray,
    defaults: &KmerDefaults,
) -> Result<AssignmentTable> {
    defaults.validate()?;
    let mut by_read: HashMap<&str, Vec<Placement>> = HashMap::new();
    let mut known: HashMap<&str, usize> = HashMap::with_capacity(reads.len());
    for (i, read) in reads.iter().enumerate() {
        if known.insert(read.id.as_str(), i).is_some() {
            return Err(Error::invalid(format!("duplicate read id '{}'", read.id)));
        }
    }
    for aln in alignments {
        if !known.contains_key(aln.read_id.as_str()) {
            return Err(Error::invalid(format!(
                "alignment references unknown read '{}'",
                aln.read_id
            )));
        }
        if let Some(p) = aln.placement {
            by_read.entry(aln.read_id.as_str()).or_default().push(p);
        }
    }

    let mut rows = Vec::with_capacity(reads.len());
    let mut histogram = BTreeMap::new();
    for read in reads {
        let placements = by_read.get(read.id.as_str()).map_or(&[][..], |v| &v[..]);
        let row = assign_k(read, placements, msl, defaults)?;
        *histogram.entry(row.k).or_insert(0u64) += 1;
        rows.push(row);
    }
    Ok(AssignmentTable { rows, histogram })
}

/// `read_id<TAB>k<TAB>source` rows.
pub fn write_assignments_tsv<W: Write>(w: &mut W, rows: &[ReadAssignment]) -> Result<()> {
    for row in rows {
        writeln!(w, "{}\t{}\t{}", row.read_id, row.k, row.source.as_str())?;
    }
    Ok(())
}

pub fn read_assignments_tsv<R: BufRead>(r: &mut R) -> Result<Vec<ReadAssignment>> {
    let mut rows = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::format(format!(
                "assignment line {}: expected 3 tab-separated fields",
                lineno + 1
            )));
        }
        rows.push(ReadAssignment {
            read_id: fields[0].to_string(),
            k: fields[1]
                .parse()
                .map_err(|_| Error::format(format!("assignment line {}: bad k", lineno + 1)))?,
            source: AssignmentSource::from_str(fields[2])?,
        });
    }
    Ok(rows)
}

/// `{k: count}` histogram as JSON.
pub fn write_histogram_json<W: Write>(w: &mut W, histogram: &BTreeMap<usize, u64>) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, histogram)
        .map_err(|e| Error::format(format!("cannot serialize histogram: {}", e)))?;
    w.write_all(b"\n")?;
    Ok(())
}
