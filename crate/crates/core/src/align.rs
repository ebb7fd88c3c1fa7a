//! Exact full-length read alignment against a suffix index.
//!
//! Every occurrence of the read and of its reverse complement is reported
//! with the strand flagged; reads hitting neither way are emitted once as
//! unmapped. Output order follows the input read order regardless of the
//! thread count.

use crate::fastx::SequenceRecord;
use crate::kmer_assignment::{AlignmentRecord, Strand};
use crate::suffix_index::SuffixIndex;
use crate::text::reverse_complement;

/// Align `reads` exactly. `threads` = 1 runs inline; larger values split the
/// read list into contiguous chunks processed by scoped threads and spliced
/// back in order.
pub fn align_exact(
    index: &SuffixIndex,
    reads: &[SequenceRecord],
    threads: usize,
) -> Vec<AlignmentRecord> {
    let threads = threads.max(1).min(reads.len().max(1));
    if threads == 1 {
        return align_chunk(index, reads);
    }
    let chunk_size = reads.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = reads
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || align_chunk(index, chunk)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    })
}

/// Flip reads whose only exact placements are on the reverse strand onto the
/// forward reference strand. With forward-only k-mer counting this keeps the
/// two strands of one locus from landing in disjoint halves of the graph.
/// Reads with a forward placement, or with none at all, pass through
/// unchanged.
pub fn orient_to_forward(
    reads: &[SequenceRecord],
    alignments: &[AlignmentRecord],
) -> Vec<SequenceRecord> {
    let mut has_forward: std::collections::HashSet<&str> = std::collections::HashSet::new();
    let mut has_reverse: std::collections::HashSet<&str> = std::collections::HashSet::new();
    for a in alignments {
        if let Some(p) = a.placement {
            match p.strand {
                Strand::Forward => has_forward.insert(a.read_id.as_str()),
                Strand::Reverse => has_reverse.insert(a.read_id.as_str()),
            };
        }
    }
    reads
        .iter()
        .map(|r| {
            if has_reverse.contains(r.id.as_str()) && !has_forward.contains(r.id.as_str()) {
                SequenceRecord {
                    id: r.id.clone(),
                    desc: r.desc.clone(),
                    bases: reverse_complement(&r.bases),
                }
            } else {
                r.clone()
            }
        })
        .collect()
}

fn align_chunk(index: &SuffixIndex, reads: &[SequenceRecord]) -> Vec<AlignmentRecord> {
    let mut out = Vec::new();
    for read in reads {
        let mut hits: Vec<(usize, Strand)> = Vec::new();
        if !read.bases.is_empty() {
            for pos in index.occurrences(&read.bases) {
                hits.push((pos, Strand::Forward));
            }
            for pos in index.occurrences(&reverse_complement(&read.bases)) {
                hits.push((pos, Strand::Reverse));
            }
        }
        hits.sort_unstable_by_key(|&(pos, strand)| (pos, strand == Strand::Reverse));
        if hits.is_empty() {
            out.push(AlignmentRecord::unmapped(read.id.clone()));
        } else {
            for (pos, strand) in hits {
                out.push(AlignmentRecord::mapped(read.id.clone(), pos, strand));
            }
        }
    }
    out
}
