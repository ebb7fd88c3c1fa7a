//! End-to-end driver: landscape, exact alignment, k assignment, iterative
//! assembly, statistics, and the output files behind the `pipeline`
//! subcommand.
//!
//! Every stage failure is tagged with the stage name; output files are only
//! written once all stages have succeeded, and a failure while writing
//! removes whatever was already on disk.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::align::{align_exact, orient_to_forward};
use crate::debruijn::{
    contig_stats, iterative_assemble, AssemblyMetrics, AssemblyOptions, ContigSet, ContigStats,
    ReadPartition,
};
use crate::fastx;
use crate::kmer_assignment::{assign_all, AssignmentTable, KmerDefaults};
use crate::landscape::{build_self_msl_with_metrics, LandscapeMetrics, MslArray};
use crate::sam::write_alignment_tsv;
use crate::suffix_index::SuffixIndex;
use crate::text::Text;
use crate::{Error, Result};

/// Which serialization the landscape file uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MslFormat {
    Text,
    Binary,
}

impl std::str::FromStr for MslFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(MslFormat::Text),
            "binary" => Ok(MslFormat::Binary),
            other => Err(Error::invalid(format!(
                "unknown MSL format '{}' (expected text or binary)",
                other
            ))),
        }
    }
}

/// Pipeline configuration; see the CLI for the matching flags.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    pub reference: PathBuf,
    pub reads: PathBuf,
    pub out_dir: PathBuf,
    pub defaults: KmerDefaults,
    pub cutoff: u32,
    pub canonical: bool,
    pub msl_format: MslFormat,
    pub threads: usize,
    /// Recorded in the manifest for reproducibility of simulated inputs.
    pub seed: Option<u64>,
}

impl PipelineConfig {
    pub fn new(reference: PathBuf, reads: PathBuf, out_dir: PathBuf) -> Self {
        PipelineConfig {
            reference,
            reads,
            out_dir,
            defaults: KmerDefaults::default(),
            cutoff: 5,
            canonical: false,
            msl_format: MslFormat::Text,
            threads: 1,
            seed: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff == 0 {
            return Err(Error::invalid("coverage cutoff must be at least 1"));
        }
        if self.threads == 0 {
            return Err(Error::invalid("thread count must be at least 1"));
        }
        self.defaults.validate()
    }
}

/// Everything the run produced, with the paths of the written files.
#[derive(Debug)]
pub struct PipelineReport {
    pub contigs: ContigSet,
    pub stats: ContigStats,
    pub assignments: AssignmentTable,
    pub manifest: RunManifest,
    pub written: Vec<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: PipelineConfig,
    pub reference_length: u64,
    pub reference_records: u64,
    pub read_count: u64,
    pub aligned_read_count: u64,
    pub landscape: LandscapeMetrics,
    pub k_min: usize,
    pub k_max: usize,
    pub assembly: AssemblyMetrics,
    pub contig_stats: ContigStats,
}

fn stage<T>(name: &'static str, result: Result<T>) -> Result<T> {
    result.map_err(|e| Error::Stage {
        stage: name,
        source: Box::new(e),
    })
}

/// Run the whole pipeline for `config`.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineReport> {
    config.validate()?;

    let reference_records = stage("load-reference", fastx::read_path(&config.reference))?;
    let (text, layout) = stage(
        "load-reference",
        Text::from_genomic_records(&reference_records),
    )?;
    if text.body().is_empty() {
        return Err(Error::Stage {
            stage: "load-reference",
            source: Box::new(Error::invalid("reference contains no bases")),
        });
    }

    let reads = stage("load-reads", fastx::read_path(&config.reads))?;
    if reads.is_empty() {
        return Err(Error::Stage {
            stage: "load-reads",
            source: Box::new(Error::invalid("reads file contains no records")),
        });
    }

    let reference_length = text.body().len() as u64;
    let index = stage("index", SuffixIndex::build(text))?;
    let tree = stage("index", index.lcp_tree())?;

    let (msl, landscape_metrics) = stage("landscape", build_self_msl_with_metrics(&index, &tree))?;

    let alignments = align_exact(&index, &reads, config.threads);
    let aligned_read_count = {
        let mapped: std::collections::HashSet<&str> = alignments
            .iter()
            .filter(|a| a.placement.is_some())
            .map(|a| a.read_id.as_str())
            .collect();
        mapped.len() as u64
    };

    let assignments = stage(
        "assign-k",
        assign_all(&reads, &alignments, &msl, &config.defaults),
    )?;

    // reverse-only reads enter the forward-only graphs in reference
    // orientation so per-locus coverage is not split across strands
    let oriented = orient_to_forward(&reads, &alignments);
    let partition = stage(
        "assemble",
        ReadPartition::from_assignments(&oriented, &assignments.rows),
    )?;
    let options = AssemblyOptions {
        cutoff: config.cutoff,
        canonical: config.canonical,
    };
    let mut assembly_metrics = AssemblyMetrics::default();
    let contigs = stage(
        "assemble",
        iterative_assemble(&partition, &options, &mut assembly_metrics),
    )?;

    let stats = contig_stats(&contigs.contigs, Some(&index));

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        reference_length,
        reference_records: layout.records.len() as u64,
        read_count: reads.len() as u64,
        aligned_read_count,
        landscape: landscape_metrics,
        k_min: partition.k_min().unwrap_or(0),
        k_max: partition.k_max().unwrap_or(0),
        assembly: assembly_metrics,
        contig_stats: stats.clone(),
    };

    let written = stage(
        "write-outputs",
        write_outputs(
            config,
            &msl,
            &alignments,
            &assignments,
            &contigs,
            &stats,
            &manifest,
        ),
    )?;

    Ok(PipelineReport {
        contigs,
        stats,
        assignments,
        manifest,
        written,
    })
}

fn write_outputs(
    config: &PipelineConfig,
    msl: &MslArray,
    alignments: &[crate::kmer_assignment::AlignmentRecord],
    assignments: &AssignmentTable,
    contigs: &ContigSet,
    stats: &ContigStats,
    manifest: &RunManifest,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&config.out_dir)?;
    let mut written: Vec<PathBuf> = Vec::new();
    let result = (|| -> Result<()> {
        let msl_path = config.out_dir.join("reference.msl");
        write_file(&msl_path, &mut written, |w| match config.msl_format {
            MslFormat::Text => msl.write_text(w),
            MslFormat::Binary => msl.write_binary(w),
        })?;
        write_file(&config.out_dir.join("alignments.tsv"), &mut written, |w| {
            write_alignment_tsv(w, alignments)
        })?;
        write_file(&config.out_dir.join("assignments.tsv"), &mut written, |w| {
            crate::kmer_assignment::write_assignments_tsv(w, &assignments.rows)
        })?;
        write_file(
            &config.out_dir.join("k_histogram.json"),
            &mut written,
            |w| crate::kmer_assignment::write_histogram_json(w, &assignments.histogram),
        )?;
        write_file(&config.out_dir.join("contigs.fasta"), &mut written, |w| {
            fastx::write_fasta(w, &contigs.to_records())
        })?;
        write_file(&config.out_dir.join("stats.json"), &mut written, |w| {
            crate::debruijn::write_stats_json(w, stats)
        })?;
        write_file(&config.out_dir.join("manifest.json"), &mut written, |w| {
            serde_json::to_writer_pretty(&mut *w, manifest)
                .map_err(|e| Error::format(format!("cannot serialize manifest: {}", e)))?;
            w.write_all(b"\n")?;
            Ok(())
        })?;
        Ok(())
    })();
    match result {
        Ok(()) => Ok(written),
        Err(e) => {
            for path in &written {
                let _ = fs::remove_file(path);
            }
            Err(e)
        }
    }
}

fn write_file(
    path: &Path,
    written: &mut Vec<PathBuf>,
    body: impl FnOnce(&mut std::io::BufWriter<fs::File>) -> Result<()>,
) -> Result<()> {
    let mut w = std::io::BufWriter::new(fs::File::create(path)?);
    written.push(path.to_path_buf());
    body(&mut w)?;
    w.flush()?;
    Ok(())
}
