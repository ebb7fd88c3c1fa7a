//! Exercises the serialized interfaces together: a multi-record reference
//! through the SLIX index file, the MSL file, SAM alignment input, and the
//! assembly path.

use seqscape::debruijn::{
    contig_stats, iterative_assemble, AssemblyMetrics, AssemblyOptions, ReadPartition,
};
use seqscape::fastx::SequenceRecord;
use seqscape::kmer_assignment::{assign_all, KmerDefaults};
use seqscape::landscape::{build_self_msl, MslArray};
use seqscape::sam::read_sam;
use seqscape::suffix_index::SuffixIndex;
use seqscape::text::Text;

#[test]
fn multi_record_reference_through_files_and_sam() {
    let dir = tempfile::tempdir().unwrap();

    let chr1 = b"ACGTTGCAGGATCCATACGTTGCA".to_vec();
    let chr2 = b"TTGACCGTCAGGTTAC".to_vec();
    let records = vec![
        SequenceRecord::new("chr1", chr1.clone()),
        SequenceRecord::new("chr2", chr2.clone()),
    ];
    let (text, layout) = Text::from_genomic_records(&records).unwrap();
    let index = SuffixIndex::build(text).unwrap();

    // index survives the SLIX round trip
    let slix = dir.path().join("ref.slix");
    index.save(&slix).unwrap();
    let index = SuffixIndex::load(&slix).unwrap();
    assert_eq!(index.occurrence_count(b"ACGTTGCA"), 2);
    // no repeat spans the record separator
    assert_eq!(index.occurrence_count(b"CATT"), 0);

    // landscape through the text file form
    let tree = index.lcp_tree().unwrap();
    let msl = build_self_msl(&index, &tree).unwrap();
    let msl_path = dir.path().join("ref.msl");
    let mut buf = Vec::new();
    msl.write_text(&mut buf).unwrap();
    std::fs::write(&msl_path, &buf).unwrap();
    let msl = MslArray::load(&msl_path).unwrap();
    assert_eq!(msl.len(), layout.body_len());

    // alignments arrive as SAM with per-record coordinates
    let reads = vec![
        SequenceRecord::new("r1", chr1[0..12].to_vec()),
        SequenceRecord::new("r2", chr2[4..16].to_vec()),
        SequenceRecord::new("r3", b"GGGGGGGGG".to_vec()),
    ];
    let sam = "@HD\tVN:1.6\n\
               r1\t0\tchr1\t1\t60\t12M\t*\t0\t0\t*\t*\n\
               r2\t0\tchr2\t5\t60\t12M\t*\t0\t0\t*\t*\n\
               r3\t4\t*\t0\t0\t*\t*\t0\t0\t*\t*\n";
    let alignments = read_sam(&mut sam.as_bytes(), &layout).unwrap();
    let table = assign_all(&reads, &alignments, &msl, &KmerDefaults::default()).unwrap();
    assert_eq!(table.rows.len(), 3);
    assert_eq!(
        table.rows[2].source,
        seqscape::kmer_assignment::AssignmentSource::UnalignedDefault
    );

    // the aligned reads assemble into reference substrings
    let aligned_reads: Vec<SequenceRecord> = reads[..2].to_vec();
    let aligned_rows = table.rows[..2].to_vec();
    let partition = ReadPartition::from_assignments(&aligned_reads, &aligned_rows).unwrap();
    let mut metrics = AssemblyMetrics::default();
    let contigs =
        iterative_assemble(&partition, &AssemblyOptions::with_cutoff(1), &mut metrics).unwrap();
    assert!(!contigs.is_empty());
    let stats = contig_stats(&contigs.contigs, Some(&index));
    assert_eq!(stats.exact_match_fraction, Some(1.0));
}
