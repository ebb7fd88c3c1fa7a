//! Sentinel-terminated texts over a declared alphabet.
//!
//! Every indexed string is stored with a unique sentinel byte appended at the
//! end; the sentinel is strictly smaller than every other byte in the text,
//! which makes suffix order well defined. Two ingestion modes are provided:
//!
//! * genomic — uppercase IUPAC nucleotide codes, sentinel `'$'`. Ambiguity
//!   codes (`N` and friends) are kept as ordinary symbols, never wildcards.
//! * generic — arbitrary non-zero bytes, sentinel `0x00`.
//!
//! Multi-record references are concatenated with distinct single-use
//! separator bytes so that no repeated substring can span two records.

use crate::fastx::SequenceRecord;
use crate::{Error, Result};

/// Sentinel appended in genomic mode.
pub const GENOMIC_SENTINEL: u8 = b'$';
/// Sentinel appended in generic mode.
pub const GENERIC_SENTINEL: u8 = 0x00;

/// Uppercase IUPAC nucleotide codes accepted in genomic mode.
const IUPAC: &[u8] = b"ACGTUNRYSWKMBDHV";

fn is_iupac(b: u8) -> bool {
    IUPAC.contains(&b)
}

/// Byte-wise complement table; A<->T, C<->G, IUPAC codes mapped to their
/// standard complements, everything else left unchanged.
const fn build_complement() -> [u8; 256] {
    let mut t = [0u8; 256];
    let mut i = 0;
    while i < 256 {
        t[i] = i as u8;
        i += 1;
    }
    t[b'A' as usize] = b'T';
    t[b'T' as usize] = b'A';
    t[b'C' as usize] = b'G';
    t[b'G' as usize] = b'C';
    t[b'U' as usize] = b'A';
    t[b'R' as usize] = b'Y';
    t[b'Y' as usize] = b'R';
    t[b'K' as usize] = b'M';
    t[b'M' as usize] = b'K';
    t[b'B' as usize] = b'V';
    t[b'V' as usize] = b'B';
    t[b'D' as usize] = b'H';
    t[b'H' as usize] = b'D';
    t[b'a' as usize] = b't';
    t[b't' as usize] = b'a';
    t[b'c' as usize] = b'g';
    t[b'g' as usize] = b'c';
    t
}

const COMPLEMENT: [u8; 256] = build_complement();

/// Reverse complement of a nucleotide sequence.
pub fn reverse_complement(seq: &[u8]) -> Vec<u8> {
    seq.iter().rev().map(|&b| COMPLEMENT[b as usize]).collect()
}

/// One record of a concatenated multi-record reference: its id and the
/// half-open range it occupies in the concatenated body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefRecord {
    pub id: String,
    pub offset: usize,
    pub len: usize,
}

/// Layout of a concatenated reference: record ids and their global offsets.
#[derive(Debug, Clone, Default)]
pub struct RefLayout {
    pub records: Vec<RefRecord>,
}

impl RefLayout {
    pub fn find(&self, id: &str) -> Option<&RefRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Total length of the concatenated body, separators included.
    pub fn body_len(&self) -> usize {
        self.records.last().map(|r| r.offset + r.len).unwrap_or(0)
    }
}

/// A byte string terminated by a unique minimal sentinel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    sentinel: u8,
}

impl Text {
    /// Ingest a nucleotide string. Bytes are uppercased, validated against
    /// the IUPAC codes, and terminated with `'$'` (rejected if present in the
    /// input).
    pub fn genomic(body: &[u8]) -> Result<Self> {
        let mut bytes = Vec::with_capacity(body.len() + 1);
        for (i, &b) in body.iter().enumerate() {
            let up = b.to_ascii_uppercase();
            if !is_iupac(up) {
                return Err(Error::invalid(format!(
                    "byte {:#04x} at position {} is not a IUPAC nucleotide code (use generic mode for arbitrary bytes)",
                    b, i
                )));
            }
            bytes.push(up);
        }
        bytes.push(GENOMIC_SENTINEL);
        Ok(Text {
            bytes,
            sentinel: GENOMIC_SENTINEL,
        })
    }

    /// Ingest arbitrary bytes; `0x00` is reserved as the sentinel and must
    /// not occur in the input.
    pub fn generic(body: &[u8]) -> Result<Self> {
        if let Some(i) = body.iter().position(|&b| b == GENERIC_SENTINEL) {
            return Err(Error::invalid(format!(
                "byte 0x00 at position {} collides with the generic-mode sentinel",
                i
            )));
        }
        let mut bytes = body.to_vec();
        bytes.push(GENERIC_SENTINEL);
        Ok(Text {
            bytes,
            sentinel: GENERIC_SENTINEL,
        })
    }

    /// Build a text with an explicit sentinel byte. The sentinel is appended
    /// unless the input already ends with it; it must not occur anywhere else
    /// and must be strictly smaller than every other byte.
    pub fn with_sentinel(input: &[u8], sentinel: u8) -> Result<Self> {
        let body = if input.last() == Some(&sentinel) {
            &input[..input.len() - 1]
        } else {
            input
        };
        for (i, &b) in body.iter().enumerate() {
            if b == sentinel {
                return Err(Error::invalid(format!(
                    "sentinel byte {:#04x} occurs at interior position {}",
                    sentinel, i
                )));
            }
            if b < sentinel {
                return Err(Error::invalid(format!(
                    "byte {:#04x} at position {} is smaller than the sentinel {:#04x}",
                    b, i, sentinel
                )));
            }
        }
        let mut bytes = body.to_vec();
        bytes.push(sentinel);
        Ok(Text { bytes, sentinel })
    }

    /// Concatenate multiple genomic records into one text, inserting a
    /// distinct single-use separator byte between consecutive records so no
    /// repeat can span a record boundary. Returns the text together with the
    /// record layout in global (concatenated) coordinates.
    pub fn from_genomic_records(records: &[SequenceRecord]) -> Result<(Self, RefLayout)> {
        if records.is_empty() {
            return Err(Error::invalid("reference contains no sequence records"));
        }
        let mut separators = separator_pool();
        let mut body = Vec::new();
        let mut layout = RefLayout::default();
        for (idx, rec) in records.iter().enumerate() {
            if idx > 0 {
                let sep = separators.next().ok_or_else(|| {
                    Error::invalid("too many reference records: separator byte pool exhausted")
                })?;
                body.push(sep);
            }
            let offset = body.len();
            for (i, &b) in rec.bases.iter().enumerate() {
                let up = b.to_ascii_uppercase();
                if !is_iupac(up) {
                    return Err(Error::invalid(format!(
                        "record '{}': byte {:#04x} at position {} is not a IUPAC nucleotide code",
                        rec.id, b, i
                    )));
                }
                body.push(up);
            }
            layout.records.push(RefRecord {
                id: rec.id.clone(),
                offset,
                len: rec.bases.len(),
            });
        }
        body.push(GENOMIC_SENTINEL);
        Ok((
            Text {
                bytes: body,
                sentinel: GENOMIC_SENTINEL,
            },
            layout,
        ))
    }

    /// Reconstruct a text from raw bytes that already carry their sentinel at
    /// the last position (used when loading a serialized index). Validates
    /// the sentinel invariants.
    pub(crate) fn from_terminated(bytes: Vec<u8>) -> Result<Self> {
        let sentinel = *bytes
            .last()
            .ok_or_else(|| Error::format("terminated text is empty"))?;
        for (i, &b) in bytes[..bytes.len() - 1].iter().enumerate() {
            if b <= sentinel {
                return Err(Error::format(format!(
                    "byte {:#04x} at position {} violates the sentinel invariant",
                    b, i
                )));
            }
        }
        Ok(Text { bytes, sentinel })
    }

    /// Full contents, sentinel included.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Contents without the trailing sentinel.
    pub fn body(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    /// Total length, sentinel included. Always at least 1.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a text always contains at least the sentinel
    }

    pub fn sentinel(&self) -> u8 {
        self.sentinel
    }
}

/// Separator bytes usable between genomic records: printable non-IUPAC bytes
/// strictly greater than the `'$'` sentinel, each used at most once.
fn separator_pool() -> impl Iterator<Item = u8> {
    (GENOMIC_SENTINEL + 1..=0xFE).filter(|&b| !is_iupac(b) && b != GENOMIC_SENTINEL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genomic_uppercases_and_appends_sentinel() {
        let t = Text::genomic(b"acgTN").unwrap();
        assert_eq!(t.bytes(), b"ACGTN$");
        assert_eq!(t.body(), b"ACGTN");
        assert_eq!(t.sentinel(), b'$');
    }

    #[test]
    fn genomic_rejects_non_nucleotide() {
        assert!(Text::genomic(b"ACGT$").is_err());
        assert!(Text::genomic(b"AC-GT").is_err());
    }

    #[test]
    fn generic_rejects_nul() {
        assert!(Text::generic(b"ab\0cd").is_err());
        let t = Text::generic(b"abcd").unwrap();
        assert_eq!(t.bytes(), b"abcd\0");
    }

    #[test]
    fn with_sentinel_accepts_terminated_and_unterminated() {
        let a = Text::with_sentinel(b"mybananas$", b'$').unwrap();
        let b = Text::with_sentinel(b"mybananas", b'$').unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
    }

    #[test]
    fn with_sentinel_rejects_interior_or_smaller_bytes() {
        assert!(Text::with_sentinel(b"my$banana", b'$').is_err());
        assert!(Text::with_sentinel(b"my banana", b'$').is_err()); // ' ' < '$'
    }

    #[test]
    fn revcomp_is_involutive_on_iupac() {
        let s = b"ACGTNRYKMBVDHSW";
        assert_eq!(reverse_complement(&reverse_complement(s)), s.to_vec());
        assert_eq!(reverse_complement(b"AACGT"), b"ACGTT".to_vec());
    }

    #[test]
    fn multi_record_concatenation_uses_distinct_separators() {
        let recs = vec![
            SequenceRecord::new("a", b"ACGT".to_vec()),
            SequenceRecord::new("b", b"GGGG".to_vec()),
            SequenceRecord::new("c", b"TT".to_vec()),
        ];
        let (text, layout) = Text::from_genomic_records(&recs).unwrap();
        let body = text.body();
        assert_eq!(layout.records.len(), 3);
        assert_eq!(&body[layout.records[0].offset..][..4], b"ACGT");
        assert_eq!(&body[layout.records[1].offset..][..4], b"GGGG");
        assert_eq!(&body[layout.records[2].offset..][..2], b"TT");
        // the two separator bytes are distinct and occur exactly once each
        let sep1 = body[4];
        let sep2 = body[9];
        assert_ne!(sep1, sep2);
        assert_eq!(body.iter().filter(|&&b| b == sep1).count(), 1);
        assert_eq!(body.iter().filter(|&&b| b == sep2).count(), 1);
        assert_eq!(layout.body_len(), body.len());
    }
}
