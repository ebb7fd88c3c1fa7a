//! De Bruijn graph construction, condensation into contigs, the iterative
//! multi-k driver, and contig statistics.
//!
//! Nodes are the (k-1)-mers of the surviving k-mers; every k-mer with
//! multiplicity at least the coverage cutoff contributes one edge labelled
//! with its last symbol. Contigs are the spellings of maximal non-branching
//! paths, emitted in lexicographic order. K-mers are counted forward-only by
//! default; the opt-in canonical mode folds every k-mer (and every output
//! contig) onto the lexicographically smaller of itself and its reverse
//! complement.
//!
//! The iterative driver runs one round per k from the smallest assigned k to
//! the largest, feeding each round the reads assigned a k no larger than the
//! round's plus the previous round's contigs. Rounds with no newly admitted
//! reads still run; sequences shorter than the round's k are skipped for
//! that round but stay in the pool.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use serde::Serialize;

use crate::fastx::SequenceRecord;
use crate::kmer_assignment::ReadAssignment;
use crate::suffix_index::SuffixIndex;
use crate::text::reverse_complement;
use crate::{Error, Result};

/// Knobs shared by all assembly entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssemblyOptions {
    /// Minimum k-mer multiplicity kept in the graph.
    pub cutoff: u32,
    /// Fold k-mers and contigs onto their reverse complements.
    pub canonical: bool,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions {
            cutoff: 5,
            canonical: false,
        }
    }
}

impl AssemblyOptions {
    pub fn with_cutoff(cutoff: u32) -> Self {
        AssemblyOptions {
            cutoff,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.cutoff == 0 {
            return Err(Error::invalid("coverage cutoff must be at least 1"));
        }
        Ok(())
    }
}

/// Instrumentation counters; `total_kmer_insertions` increments once per
/// k-mer window taken from any input sequence.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AssemblyMetrics {
    pub total_kmer_insertions: u64,
}

/// Condensed assembly output for one k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContigSet {
    pub k: usize,
    pub contigs: Vec<Vec<u8>>,
}

impl ContigSet {
    pub fn is_empty(&self) -> bool {
        self.contigs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.contigs.len()
    }

    pub fn total_length(&self) -> u64 {
        self.contigs.iter().map(|c| c.len() as u64).sum()
    }

    /// Numbered FASTA records, ready for [`crate::fastx::write_fasta`].
    pub fn to_records(&self) -> Vec<SequenceRecord> {
        self.contigs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                SequenceRecord::with_desc(
                    format!("c{:06}", i),
                    format!("k={} len={}", self.k, c.len()),
                    c.clone(),
                )
            })
            .collect()
    }
}

/// Edge-centric de Bruijn graph with coverage counts.
#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    k: usize,
    node_labels: Vec<Vec<u8>>,
    /// Outgoing edges per node: (label symbol, target node, coverage),
    /// sorted by symbol.
    out_edges: Vec<Vec<(u8, u32, u32)>>,
    in_degree: Vec<u32>,
}

impl DeBruijnGraph {
    /// Count the k-mers of `sequences` (each with multiplicity 1), apply the
    /// cutoff and build the graph.
    pub fn from_sequences<S: AsRef<[u8]>>(
        sequences: &[S],
        k: usize,
        options: &AssemblyOptions,
        metrics: &mut AssemblyMetrics,
    ) -> Result<Self> {
        options.validate()?;
        let mut counts = HashMap::new();
        count_kmers(
            &mut counts,
            sequences.iter().map(|s| (s.as_ref(), 1)),
            k,
            options.canonical,
            metrics,
        )?;
        Self::from_counts(counts, k, options.cutoff)
    }

    fn from_counts(counts: HashMap<Vec<u8>, u32>, k: usize, cutoff: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("k = {} must be at least 2", k)));
        }
        let mut kmers: Vec<(Vec<u8>, u32)> = counts
            .into_iter()
            .filter(|&(_, cov)| cov >= cutoff)
            .collect();
        kmers.sort_unstable();

        let mut node_labels: Vec<Vec<u8>> = Vec::with_capacity(kmers.len() * 2);
        for (km, _) in &kmers {
            node_labels.push(km[..k - 1].to_vec());
            node_labels.push(km[1..].to_vec());
        }
        node_labels.sort_unstable();
        node_labels.dedup();

        let node_id = |s: &[u8]| -> Result<u32> {
            node_labels
                .binary_search_by(|l| l.as_slice().cmp(s))
                .map(|i| i as u32)
                .map_err(|_| Error::internal("edge endpoint missing from node set"))
        };
        let mut out_edges: Vec<Vec<(u8, u32, u32)>> = vec![Vec::new(); node_labels.len()];
        let mut in_degree = vec![0u32; node_labels.len()];
        for (km, cov) in &kmers {
            let from = node_id(&km[..k - 1])?;
            let to = node_id(&km[1..])?;
            out_edges[from as usize].push((km[k - 1], to, *cov));
            in_degree[to as usize] += 1;
        }
        Ok(DeBruijnGraph {
            k,
            node_labels,
            out_edges,
            in_degree,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.node_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edges.iter().map(Vec::len).sum()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degree.iter().copied().max().unwrap_or(0) as usize
    }

    /// Surviving k-mers with their coverage counts, in lexicographic order.
    pub fn edge_multiset(&self) -> BTreeMap<Vec<u8>, u32> {
        let mut out = BTreeMap::new();
        for (v, edges) in self.out_edges.iter().enumerate() {
            for &(symbol, _, cov) in edges {
                let mut km = self.node_labels[v].clone();
                km.push(symbol);
                out.insert(km, cov);
            }
        }
        out
    }

    /// Spell every maximal non-branching path (and isolated cycle), each
    /// graph edge contributing to exactly one spelling.
    pub fn condense(&self) -> Vec<Vec<u8>> {
        let n = self.node_labels.len();
        let linear = |v: usize| self.in_degree[v] == 1 && self.out_edges[v].len() == 1;
        let mut used: Vec<Vec<bool>> = self
            .out_edges
            .iter()
            .map(|es| vec![false; es.len()])
            .collect();
        let mut contigs = Vec::new();

        for v in 0..n {
            if linear(v) {
                continue;
            }
            for ei in 0..self.out_edges[v].len() {
                if used[v][ei] {
                    continue;
                }
                used[v][ei] = true;
                let (symbol, mut cur, _) = self.out_edges[v][ei];
                let mut spelling = self.node_labels[v].clone();
                spelling.push(symbol);
                while linear(cur as usize) && !used[cur as usize][0] {
                    used[cur as usize][0] = true;
                    let (next_symbol, next, _) = self.out_edges[cur as usize][0];
                    spelling.push(next_symbol);
                    cur = next;
                }
                contigs.push(spelling);
            }
        }

        // components where every node is 1-in-1-out: pure cycles, started at
        // their lexicographically smallest node
        for v in 0..n {
            if !linear(v) || used[v][0] {
                continue;
            }
            let mut spelling = self.node_labels[v].clone();
            let mut cur = v;
            loop {
                used[cur][0] = true;
                let (symbol, next, _) = self.out_edges[cur][0];
                spelling.push(symbol);
                cur = next as usize;
                if cur == v {
                    break;
                }
            }
            contigs.push(spelling);
        }
        contigs
    }
}

fn count_kmers<'a>(
    counts: &mut HashMap<Vec<u8>, u32>,
    sequences: impl Iterator<Item = (&'a [u8], u32)>,
    k: usize,
    canonical: bool,
    metrics: &mut AssemblyMetrics,
) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k = {} must be at least 2", k)));
    }
    for (seq, weight) in sequences {
        if seq.len() < k {
            continue;
        }
        for window in seq.windows(k) {
            metrics.total_kmer_insertions += 1;
            let folded;
            let key: &[u8] = if canonical {
                let rc = reverse_complement(window);
                if rc.as_slice() < window {
                    folded = rc;
                    &folded
                } else {
                    window
                }
            } else {
                window
            };
            match counts.get_mut(key) {
                Some(c) => *c = c.saturating_add(weight),
                None => {
                    counts.insert(key.to_vec(), weight);
                }
            }
        }
    }
    Ok(())
}

fn finish(mut contigs: Vec<Vec<u8>>, k: usize, canonical: bool) -> ContigSet {
    if canonical {
        for c in contigs.iter_mut() {
            let rc = reverse_complement(c);
            if rc < *c {
                *c = rc;
            }
        }
    }
    contigs.sort_unstable();
    ContigSet { k, contigs }
}

/// Assemble one set of sequences at a single k: count, filter by the cutoff,
/// condense. Sequences shorter than k are ignored; if nothing survives the
/// result is an empty (and valid) contig set.
pub fn assemble_single_k<S: AsRef<[u8]>>(
    sequences: &[S],
    k: usize,
    options: &AssemblyOptions,
    metrics: &mut AssemblyMetrics,
) -> Result<ContigSet> {
    let graph = DeBruijnGraph::from_sequences(sequences, k, options, metrics)?;
    Ok(finish(graph.condense(), k, options.canonical))
}

/// Reads bucketed by their assigned k.
#[derive(Debug, Clone, Default)]
pub struct ReadPartition {
    buckets: BTreeMap<usize, Vec<Vec<u8>>>,
}

impl ReadPartition {
    /// Bucket reads by the k in their assignment rows. Every read must have
    /// exactly one row and vice versa.
    pub fn from_assignments(reads: &[SequenceRecord], rows: &[ReadAssignment]) -> Result<Self> {
        let mut by_id: HashMap<&str, &ReadAssignment> = HashMap::with_capacity(rows.len());
        for row in rows {
            if by_id.insert(row.read_id.as_str(), row).is_some() {
                return Err(Error::invalid(format!(
                    "duplicate assignment for read '{}'",
                    row.read_id
                )));
            }
        }
        let mut buckets: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
        for read in reads {
            let row = by_id
                .remove(read.id.as_str())
                .ok_or_else(|| Error::invalid(format!("read '{}' has no k assignment", read.id)))?;
            buckets.entry(row.k).or_default().push(read.bases.clone());
        }
        if let Some(orphan) = by_id.keys().next() {
            return Err(Error::invalid(format!(
                "assignment references unknown read '{}'",
                orphan
            )));
        }
        Ok(ReadPartition { buckets })
    }

    /// All reads in one bucket.
    pub fn single(k: usize, reads: &[SequenceRecord]) -> Self {
        let mut buckets = BTreeMap::new();
        buckets.insert(k, reads.iter().map(|r| r.bases.clone()).collect());
        ReadPartition { buckets }
    }

    /// Make sure a (possibly empty) bucket exists at `k`, extending the
    /// iteration range.
    pub fn ensure_bucket(&mut self, k: usize) {
        self.buckets.entry(k).or_default();
    }

    pub fn k_min(&self) -> Option<usize> {
        self.buckets.keys().next().copied()
    }

    pub fn k_max(&self) -> Option<usize> {
        self.buckets.keys().last().copied()
    }

    pub fn total_reads(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn bucket_sizes(&self) -> BTreeMap<usize, usize> {
        self.buckets
            .iter()
            .map(|(&k, reads)| (k, reads.len()))
            .collect()
    }
}

/// Iterative multi-k assembly: one round per k in `[k_min, k_max]`, each
/// assembling the accumulated reads plus the previous round's contigs.
/// Carried contigs are counted with multiplicity `cutoff` per k-mer so the
/// coverage filter cannot erase them. Returns the final round's contigs.
pub fn iterative_assemble(
    partition: &ReadPartition,
    options: &AssemblyOptions,
    metrics: &mut AssemblyMetrics,
) -> Result<ContigSet> {
    options.validate()?;
    if partition.total_reads() == 0 {
        return Err(Error::invalid("read partition has no reads"));
    }
    let k_min = partition.k_min().unwrap();
    let k_max = partition.k_max().unwrap();

    let mut pool: Vec<&[u8]> = Vec::new();
    let mut carried = ContigSet {
        k: 0,
        contigs: Vec::new(),
    };
    for k in k_min..=k_max {
        if let Some(bucket) = partition.buckets.get(&k) {
            pool.extend(bucket.iter().map(|r| r.as_slice()));
        }
        let mut counts = HashMap::new();
        count_kmers(
            &mut counts,
            pool.iter().map(|&s| (s, 1)),
            k,
            options.canonical,
            metrics,
        )?;
        count_kmers(
            &mut counts,
            carried
                .contigs
                .iter()
                .map(|c| (c.as_slice(), options.cutoff)),
            k,
            options.canonical,
            metrics,
        )?;
        let graph = DeBruijnGraph::from_counts(counts, k, options.cutoff)?;
        carried = finish(graph.condense(), k, options.canonical);
    }
    Ok(carried)
}

/// Assembly summary statistics. N50 is the largest length L such that
/// contigs of length >= L hold at least half of the assembled bases.
/// `exact_match_fraction` is the fraction of contig bases lying in contigs
/// that occur verbatim (on either strand) in the reference; it is reported
/// only when a reference is supplied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContigStats {
    pub count: u64,
    pub total_length: u64,
    pub largest: u64,
    pub n50: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_match_fraction: Option<f64>,
}

/// Compute assembly statistics; an empty contig set yields zeros (callers
/// that care should warn).
pub fn contig_stats(contigs: &[Vec<u8>], reference: Option<&SuffixIndex>) -> ContigStats {
    let mut lengths: Vec<u64> = contigs.iter().map(|c| c.len() as u64).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = lengths.iter().sum();
    let largest = lengths.first().copied().unwrap_or(0);
    let mut n50 = 0;
    let mut acc = 0u64;
    for &len in &lengths {
        acc += len;
        if 2 * acc >= total && total > 0 {
            n50 = len;
            break;
        }
    }
    let exact_match_fraction = reference.map(|idx| {
        if total == 0 {
            return 0.0;
        }
        let matched: u64 = contigs
            .iter()
            .filter(|c| {
                idx.occurrence_count(c) > 0 || idx.occurrence_count(&reverse_complement(c)) > 0
            })
            .map(|c| c.len() as u64)
            .sum();
        matched as f64 / total as f64
    });
    ContigStats {
        count: lengths.len() as u64,
        total_length: total,
        largest,
        n50,
        exact_match_fraction,
    }
}

/// Serialize stats as JSON.
pub fn write_stats_json<W: Write>(w: &mut W, stats: &ContigStats) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, stats)
        .map_err(|e| Error::format(format!("cannot serialize stats: {}", e)))?;
    w.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Text;
    use rand::{Rng, SeedableRng};

    fn opts(cutoff: u32) -> AssemblyOptions {
        AssemblyOptions {
            cutoff,
            canonical: false,
        }
    }

    fn assemble(seqs: &[&[u8]], k: usize, cutoff: u32) -> ContigSet {
        let mut metrics = AssemblyMetrics::default();
        assemble_single_k(seqs, k, &opts(cutoff), &mut metrics).unwrap()
    }

    #[test]
    fn single_read_spells_itself() {
        let got = assemble(&[b"ACGTA"], 3, 1);
        assert_eq!(got.contigs, vec![b"ACGTA".to_vec()]);
    }

    #[test]
    fn overlapping_reads_merge() {
        let got = assemble(&[b"ACGT", b"CGTA"], 3, 1);
        assert_eq!(got.contigs, vec![b"ACGTA".to_vec()]);
    }

    #[test]
    fn cutoff_can_empty_the_graph() {
        let got = assemble(&[b"ACGTA"], 3, 2);
        assert!(got.is_empty());
    }

    #[test]
    fn k_below_two_rejected() {
        let mut metrics = AssemblyMetrics::default();
        assert!(assemble_single_k(&[b"ACGT".as_slice()], 1, &opts(1), &mut metrics).is_err());
        assert!(AssemblyOptions::with_cutoff(0).validate().is_err());
    }

    fn longest_repeat(body: &[u8]) -> usize {
        let n = body.len();
        let mut best = 0;
        for a in 0..n {
            for b in a + 1..n {
                let mut l = 0;
                while b + l < n && body[a + l] == body[b + l] {
                    l += 1;
                }
                best = best.max(l);
            }
        }
        best
    }

    #[test]
    fn genome_kmers_above_repeat_length_reassemble_the_genome() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let n = rng.gen_range(40..=250);
            let body: Vec<u8> = (0..n).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
            let k = longest_repeat(&body) + 2;
            if k > body.len() {
                continue;
            }
            let got = assemble(&[&body], k, 1);
            assert_eq!(got.contigs, vec![body.clone()]);

            let mut metrics = AssemblyMetrics::default();
            let graph = DeBruijnGraph::from_sequences(&[&body], k, &opts(1), &mut metrics).unwrap();
            assert!(graph.max_in_degree() <= 1 && graph.max_out_degree() <= 1);
        }
    }

    #[test]
    fn edge_multiset_matches_brute_force_counts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10 {
            let seqs: Vec<Vec<u8>> = (0..rng.gen_range(1..=6))
                .map(|_| {
                    let len = rng.gen_range(1..=40);
                    (0..len).map(|_| b"ACG"[rng.gen_range(0..3)]).collect()
                })
                .collect();
            let k = rng.gen_range(2..=5);
            let cutoff = rng.gen_range(1..=2);
            let mut brute: BTreeMap<Vec<u8>, u32> = BTreeMap::new();
            for s in &seqs {
                if s.len() < k {
                    continue;
                }
                for w in s.windows(k) {
                    *brute.entry(w.to_vec()).or_insert(0) += 1;
                }
            }
            brute.retain(|_, c| *c >= cutoff);
            let mut metrics = AssemblyMetrics::default();
            let graph =
                DeBruijnGraph::from_sequences(&seqs, k, &opts(cutoff), &mut metrics).unwrap();
            assert_eq!(graph.edge_multiset(), brute);
        }
    }

    #[test]
    fn reassembling_contigs_is_idempotent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let n = rng.gen_range(30..=200);
            let body: Vec<u8> = (0..n).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
            let reads: Vec<Vec<u8>> = (0..n)
                .step_by(7)
                .map(|s| body[s..(s + 20).min(n)].to_vec())
                .collect();
            let k = 9;
            let first = assemble(
                &reads.iter().map(|r| r.as_slice()).collect::<Vec<_>>(),
                k,
                1,
            );
            let again = assemble(
                &first
                    .contigs
                    .iter()
                    .map(|c| c.as_slice())
                    .collect::<Vec<_>>(),
                k,
                1,
            );
            assert_eq!(again.contigs, first.contigs);
        }
    }

    #[test]
    fn contigs_are_genome_substrings_with_cutoff_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let n = 4000;
        let body: Vec<u8> = (0..n).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
        let reads: Vec<Vec<u8>> = (0..1500)
            .map(|_| {
                let s = rng.gen_range(0..=n - 60);
                body[s..s + 60].to_vec()
            })
            .collect();
        let got = assemble(
            &reads.iter().map(|r| r.as_slice()).collect::<Vec<_>>(),
            21,
            1,
        );
        assert!(!got.is_empty());
        for c in &got.contigs {
            assert!(c.len() >= 21);
            assert!(
                body.windows(c.len()).any(|w| w == c.as_slice()),
                "contig not a genome substring"
            );
        }
    }

    #[test]
    fn cycle_component_is_emitted_once() {
        // CATCAT with k=3 wraps: 3-mers CAT ATC TCA CAT; nodes CA AT TC all 1-in-1-out
        let got = assemble(&[b"CATCAT"], 3, 1);
        assert_eq!(got.contigs.len(), 1);
        assert_eq!(got.contigs[0].len(), 2 + 3);
        let mut metrics = AssemblyMetrics::default();
        let graph = DeBruijnGraph::from_sequences(&[b"CATCAT"], 3, &opts(1), &mut metrics).unwrap();
        assert_eq!(graph.edge_count(), 3);
    }

    #[test]
    fn canonical_mode_folds_strands_together() {
        let fwd: &[u8] = b"ACGGTCAGT";
        let rc = reverse_complement(fwd);
        let mut m1 = AssemblyMetrics::default();
        let mut m2 = AssemblyMetrics::default();
        let canonical = AssemblyOptions {
            cutoff: 1,
            canonical: true,
        };
        let a = assemble_single_k(&[fwd, &rc], 4, &canonical, &mut m1).unwrap();
        let b = assemble_single_k(&[fwd, fwd], 4, &canonical, &mut m2).unwrap();
        assert_eq!(a.contigs, b.contigs);
    }

    #[test]
    fn partition_from_assignments_checks_consistency() {
        use crate::kmer_assignment::AssignmentSource;
        let reads = vec![
            SequenceRecord::new("a", b"ACGTA".to_vec()),
            SequenceRecord::new("b", b"CGTAC".to_vec()),
        ];
        let row = |id: &str, k: usize| ReadAssignment {
            read_id: id.into(),
            k,
            source: AssignmentSource::Aligned,
        };
        let part = ReadPartition::from_assignments(&reads, &[row("a", 3), row("b", 5)]).unwrap();
        assert_eq!(part.k_min(), Some(3));
        assert_eq!(part.k_max(), Some(5));
        assert_eq!(part.total_reads(), 2);

        assert!(ReadPartition::from_assignments(&reads, &[row("a", 3)]).is_err());
        assert!(
            ReadPartition::from_assignments(&reads, &[row("a", 3), row("b", 5), row("c", 4)])
                .is_err()
        );
        assert!(
            ReadPartition::from_assignments(&reads, &[row("a", 3), row("a", 4), row("b", 5)])
                .is_err()
        );
    }

    #[test]
    fn single_bucket_matches_single_k_assembly() {
        let reads = vec![
            SequenceRecord::new("a", b"ACGTACG".to_vec()),
            SequenceRecord::new("b", b"GTACGTT".to_vec()),
        ];
        let part = ReadPartition::single(4, &reads);
        let mut m1 = AssemblyMetrics::default();
        let mut m2 = AssemblyMetrics::default();
        let iterative = iterative_assemble(&part, &opts(1), &mut m1).unwrap();
        let direct = assemble_single_k(
            &reads.iter().map(|r| r.bases.as_slice()).collect::<Vec<_>>(),
            4,
            &opts(1),
            &mut m2,
        )
        .unwrap();
        assert_eq!(iterative.contigs, direct.contigs);
        assert_eq!(m1, m2);
    }

    // With cutoff 1 carried contigs weigh the same as reads, so each round
    // equals a plain single-k assembly of pool + previous contigs; the
    // driver must match that round-by-round composition.
    #[test]
    fn iterative_rounds_match_manual_composition() {
        let genome = b"ACGTACGGACGTACGGTTACGTACGG";
        let reads: Vec<SequenceRecord> = (0..=genome.len() - 8)
            .map(|s| SequenceRecord::new(format!("r{}", s), genome[s..s + 8].to_vec()))
            .collect();
        use crate::kmer_assignment::AssignmentSource;
        let rows: Vec<ReadAssignment> = reads
            .iter()
            .enumerate()
            .map(|(i, r)| ReadAssignment {
                read_id: r.id.clone(),
                k: if i % 3 == 0 { 3 } else { 6 },
                source: AssignmentSource::Aligned,
            })
            .collect();
        let part = ReadPartition::from_assignments(&reads, &rows).unwrap();

        let mut metrics = AssemblyMetrics::default();
        let got = iterative_assemble(&part, &opts(1), &mut metrics).unwrap();

        let mut pool: Vec<Vec<u8>> = Vec::new();
        let mut carried: Vec<Vec<u8>> = Vec::new();
        for k in 3..=6 {
            for (i, r) in reads.iter().enumerate() {
                if rows[i].k == k {
                    pool.push(r.bases.clone());
                }
            }
            let mut seqs: Vec<&[u8]> = pool.iter().map(|v| v.as_slice()).collect();
            seqs.extend(carried.iter().map(|v| v.as_slice()));
            let mut m = AssemblyMetrics::default();
            carried = assemble_single_k(&seqs, k, &opts(1), &mut m)
                .unwrap()
                .contigs;
        }
        assert_eq!(got.contigs, carried);
        assert_eq!(got.k, 6);
    }

    #[test]
    fn empty_rounds_carry_clean_contigs_through() {
        let reads = vec![SequenceRecord::new("a", b"ACGTA".to_vec())];
        let mut part = ReadPartition::single(3, &reads);
        part.ensure_bucket(5);
        let mut metrics = AssemblyMetrics::default();
        let got = iterative_assemble(&part, &opts(1), &mut metrics).unwrap();
        assert_eq!(got.k, 5);
        assert_eq!(got.contigs, vec![b"ACGTA".to_vec()]);
    }

    #[test]
    fn stats_follow_the_definitions() {
        let contigs = vec![b"AAAA".to_vec(), b"GG".to_vec()];
        let stats = contig_stats(&contigs, None);
        assert_eq!(stats.total_length, 6);
        assert_eq!(stats.n50, 4);
        assert_eq!(stats.largest, 4);
        assert_eq!(stats.count, 2);
        assert_eq!(stats.exact_match_fraction, None);

        let single = contig_stats(&[b"ACGTACG".to_vec()], None);
        assert_eq!(single.n50, 7);

        let empty = contig_stats(&[], None);
        assert_eq!((empty.count, empty.total_length, empty.n50), (0, 0, 0));
    }

    #[test]
    fn exact_match_fraction_detects_both_strands() {
        let index = SuffixIndex::build(Text::genomic(b"ACGGTCAGTAAC").unwrap()).unwrap();
        let inside = b"CGGTCA".to_vec();
        let rc_inside = reverse_complement(b"GTCAGT");
        let alien = b"TTTTTT".to_vec();
        let stats = contig_stats(&[inside, rc_inside, alien], Some(&index));
        // 6 + 6 matched out of 18 bases
        assert!((stats.exact_match_fraction.unwrap() - 12.0 / 18.0).abs() < 1e-12);
    }
}
