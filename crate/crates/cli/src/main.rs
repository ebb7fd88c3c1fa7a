//! `seqscape` command line: reference indexing, landscape construction,
//! exact alignment, per-read k assignment, multi-k assembly, read
//! simulation, contig statistics, and the end-to-end pipeline.
//!
//! Exit codes: 0 on success, 2 on bad input or configuration, 3 on a broken
//! internal invariant.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use seqscape::align::align_exact;
use seqscape::debruijn::{
    assemble_single_k, contig_stats, iterative_assemble, write_stats_json, AssemblyMetrics,
    AssemblyOptions, ContigSet, ReadPartition,
};
use seqscape::fastx;
use seqscape::kmer_assignment::{
    assign_all, read_assignments_tsv, write_assignments_tsv, write_histogram_json, KmerDefaults,
};
use seqscape::landscape::{build_general_msl, build_self_msl, build_silhouette, MslArray};
use seqscape::pipeline::{run_pipeline, MslFormat, PipelineConfig};
use seqscape::sam;
use seqscape::simulate::simulate_reads;
use seqscape::suffix_index::SuffixIndex;
use seqscape::text::Text;
use seqscape::Error;

/// Environment variable consulted for the default thread count.
const THREADS_ENV: &str = "SEQSCAPE_THREADS";

#[derive(Parser)]
#[command(
    name = "seqscape",
    version,
    about = "Sequence landscapes and landscape-guided multi-k assembly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and persist a reference suffix index
    Index {
        #[command(subcommand)]
        command: IndexCommand,
    },
    /// Build a maximal sequence landscape or silhouette
    Landscape {
        #[command(subcommand)]
        command: LandscapeCommand,
    },
    /// Report all exact full-length read placements (both strands)
    AlignExact(AlignArgs),
    /// Assign a k-mer size to each read from a landscape and alignments
    AssignK(AssignArgs),
    /// Assemble reads with a de Bruijn graph (single k or per-read k table)
    Assemble(AssembleArgs),
    /// Simulate error-free reads from a genome
    Simulate(SimulateArgs),
    /// Contig statistics (N50 and friends), optionally against a reference
    Stats(StatsArgs),
    /// Run landscape -> align -> assign-k -> iterative assembly end to end
    Pipeline(PipelineArgs),
}

#[derive(Subcommand)]
enum IndexCommand {
    /// Build the index from a FASTA reference (or raw bytes in generic mode)
    Build(IndexBuildArgs),
}

#[derive(Args)]
struct IndexBuildArgs {
    /// Reference FASTA (genomic mode) or arbitrary byte file (generic mode)
    #[arg(long)]
    input: PathBuf,
    /// Output index file (SLIX format)
    #[arg(long)]
    output: PathBuf,
    /// Input interpretation: genomic (FASTA over IUPAC codes) or generic
    /// (whole file as one byte string)
    #[arg(long, default_value = "genomic")]
    mode: String,
}

#[derive(Subcommand)]
enum LandscapeCommand {
    /// Build the landscape of the indexed text (or of a separate target)
    Build(LandscapeBuildArgs),
}

#[derive(Args)]
struct LandscapeBuildArgs {
    /// SLIX index of the source string
    #[arg(long)]
    index: PathBuf,
    /// Output MSL file
    #[arg(long)]
    output: PathBuf,
    /// Build the landscape of this target instead of the source itself
    /// (FASTA for genomic indexes, raw bytes for generic ones; multi-record
    /// targets are scanned per record and concatenated)
    #[arg(long)]
    general: Option<PathBuf>,
    /// Drop the frequency-and-height-above-one constraints
    #[arg(long)]
    silhouette: bool,
    /// Output serialization
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct AlignArgs {
    /// SLIX index of the reference
    #[arg(long)]
    index: PathBuf,
    /// Reads (FASTA or FASTQ)
    #[arg(long)]
    reads: PathBuf,
    /// Output alignment TSV (read_id, 1-based position, strand)
    #[arg(long)]
    output: PathBuf,
    /// Worker threads (default: $SEQSCAPE_THREADS or 1)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct AssignArgs {
    /// Landscape file of the reference (text or binary form)
    #[arg(long)]
    msl: PathBuf,
    /// Reads (FASTA or FASTQ)
    #[arg(long)]
    reads: PathBuf,
    /// Alignments as internal TSV or SAM (SAM needs --reference for RNAME
    /// resolution)
    #[arg(long)]
    alignments: PathBuf,
    /// Reference FASTA, required when --alignments is SAM
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Output assignment TSV (read_id, k, source)
    #[arg(long)]
    output: PathBuf,
    /// Also write the k histogram as JSON
    #[arg(long)]
    histogram: Option<PathBuf>,
    /// Default k for unaligned reads
    #[arg(long, default_value_t = 55)]
    unaligned_k: usize,
    /// Default k when the computed k exceeds the read length
    #[arg(long, default_value_t = 77)]
    overflow_k: usize,
    /// Smallest k ever assigned
    #[arg(long, default_value_t = 2)]
    k_floor: usize,
}

#[derive(Args)]
struct AssembleArgs {
    /// Reads (FASTA or FASTQ)
    #[arg(long)]
    reads: PathBuf,
    /// Per-read k table (assignment TSV); runs the iterative multi-k driver
    #[arg(long, conflicts_with = "k")]
    k_table: Option<PathBuf>,
    /// Single k for all reads
    #[arg(short)]
    k: Option<usize>,
    /// Coverage cutoff: minimum k-mer multiplicity kept
    #[arg(long, default_value_t = 5)]
    cutoff: u32,
    /// Fold k-mers and contigs onto their reverse complements
    #[arg(long)]
    canonical: bool,
    /// Output contigs FASTA
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    /// Genome FASTA (single record)
    #[arg(long)]
    genome: PathBuf,
    #[arg(long)]
    read_length: usize,
    /// Target depth of coverage
    #[arg(long)]
    coverage: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output reads FASTA
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    /// Contigs FASTA
    #[arg(long)]
    contigs: PathBuf,
    /// Reference FASTA for the exact-match fraction
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Write the JSON here as well as to stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Reference FASTA
    #[arg(long)]
    reference: PathBuf,
    /// Reads (FASTA or FASTQ)
    #[arg(long)]
    reads: PathBuf,
    /// Output directory for all pipeline artifacts
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 5)]
    cutoff: u32,
    #[arg(long, default_value_t = 55)]
    unaligned_k: usize,
    #[arg(long, default_value_t = 77)]
    overflow_k: usize,
    #[arg(long, default_value_t = 2)]
    k_floor: usize,
    #[arg(long)]
    canonical: bool,
    /// Landscape serialization: text or binary
    #[arg(long, default_value = "text")]
    msl_format: String,
    /// Worker threads (default: $SEQSCAPE_THREADS or 1)
    #[arg(long)]
    threads: Option<usize>,
    /// Seed recorded in the run manifest (for simulated inputs)
    #[arg(long)]
    seed: Option<u64>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e);
        std::process::exit(if e.is_internal() { 3 } else { 2 });
    }
}

fn threads_from(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Index {
            command: IndexCommand::Build(args),
        } => index_build(args),
        Command::Landscape {
            command: LandscapeCommand::Build(args),
        } => landscape_build(args),
        Command::AlignExact(args) => align_cmd(args),
        Command::AssignK(args) => assign_cmd(args),
        Command::Assemble(args) => assemble_cmd(args),
        Command::Simulate(args) => simulate_cmd(args),
        Command::Stats(args) => stats_cmd(args),
        Command::Pipeline(args) => pipeline_cmd(args),
    }
}

fn load_reference_text(path: &Path) -> Result<Text, Error> {
    let records = fastx::read_path(path)?;
    let (text, _) = Text::from_genomic_records(&records)?;
    Ok(text)
}

/// Raw byte ingestion for generic mode; one trailing newline is tolerated.
fn read_raw_bytes(path: &Path) -> Result<Vec<u8>, Error> {
    let mut bytes = fs::read(path)?;
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

fn index_build(args: IndexBuildArgs) -> Result<(), Error> {
    let text = match args.mode.as_str() {
        "genomic" => load_reference_text(&args.input)?,
        "generic" => Text::generic(&read_raw_bytes(&args.input)?)?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown mode '{}' (expected genomic or generic)",
                other
            )))
        }
    };
    let index = SuffixIndex::build(text)?;
    index.save(&args.output)?;
    eprintln!("indexed {} bytes -> {}", index.n(), args.output.display());
    Ok(())
}

fn landscape_build(args: LandscapeBuildArgs) -> Result<(), Error> {
    let format: MslFormat = args.format.parse()?;
    let index = SuffixIndex::load(&args.index)?;
    let tree = index.lcp_tree()?;
    let genomic = index.text().sentinel() == b'$';

    let msl: MslArray = match (&args.general, args.silhouette) {
        (None, false) => build_self_msl(&index, &tree)?,
        (None, true) => {
            let body = index.text().body().to_vec();
            build_silhouette(&body, &index, &tree)?
        }
        (Some(target_path), silhouette) => {
            let targets: Vec<Vec<u8>> = if genomic {
                fastx::read_path(target_path)?
                    .into_iter()
                    .map(|r| r.bases)
                    .collect()
            } else {
                vec![read_raw_bytes(target_path)?]
            };
            let mut heights_parts = Vec::new();
            for target in &targets {
                let part = if silhouette {
                    build_silhouette(target, &index, &tree)?
                } else {
                    build_general_msl(target, &index, &tree)?
                };
                heights_parts.push(part);
            }
            concat_msl(heights_parts)?
        }
    };

    let mut w = std::io::BufWriter::new(fs::File::create(&args.output)?);
    match format {
        MslFormat::Text => msl.write_text(&mut w)?,
        MslFormat::Binary => msl.write_binary(&mut w)?,
    }
    w.flush()?;
    eprintln!(
        "landscape ({}) of {} positions -> {}",
        msl.kind().as_str(),
        msl.len(),
        args.output.display()
    );
    Ok(())
}

/// Per-record landscapes of a multi-record target, stitched in record order.
fn concat_msl(parts: Vec<MslArray>) -> Result<MslArray, Error> {
    let mut iter = parts.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidInput("target contains no records".into()))?;
    let kind = first.kind();
    let mut heights: Vec<u32> = first.heights().to_vec();
    for part in iter {
        heights.extend_from_slice(part.heights());
    }
    Ok(MslArray::from_heights(kind, heights))
}

fn align_cmd(args: AlignArgs) -> Result<(), Error> {
    let index = SuffixIndex::load(&args.index)?;
    let reads = fastx::read_path(&args.reads)?;
    let alignments = align_exact(&index, &reads, threads_from(args.threads));
    let mut w = std::io::BufWriter::new(fs::File::create(&args.output)?);
    sam::write_alignment_tsv(&mut w, &alignments)?;
    w.flush()?;
    let mapped = alignments.iter().filter(|a| a.placement.is_some()).count();
    eprintln!(
        "{} placements for {} reads -> {}",
        mapped,
        reads.len(),
        args.output.display()
    );
    Ok(())
}

fn looks_like_sam(path: &Path) -> Result<bool, Error> {
    let contents = fs::read_to_string(path)?;
    for line in contents.lines() {
        if line.is_empty() {
            continue;
        }
        if line.starts_with('@') {
            return Ok(true);
        }
        return Ok(line.split('\t').count() >= 11);
    }
    Ok(false)
}

fn assign_cmd(args: AssignArgs) -> Result<(), Error> {
    let msl = MslArray::load(&args.msl)?;
    let reads = fastx::read_path(&args.reads)?;
    let alignments = if looks_like_sam(&args.alignments)? {
        let reference = args.reference.as_deref().ok_or_else(|| {
            Error::InvalidInput("SAM alignments need --reference to resolve RNAME".into())
        })?;
        let records = fastx::read_path(reference)?;
        let (_, layout) = Text::from_genomic_records(&records)?;
        let file = fs::File::open(&args.alignments)?;
        sam::read_sam(&mut std::io::BufReader::new(file), &layout)?
    } else {
        let file = fs::File::open(&args.alignments)?;
        sam::read_alignment_tsv(&mut std::io::BufReader::new(file))?
    };
    let defaults = KmerDefaults {
        unaligned: args.unaligned_k,
        overflow: args.overflow_k,
        floor: args.k_floor,
    };
    let table = assign_all(&reads, &alignments, &msl, &defaults)?;
    let mut w = std::io::BufWriter::new(fs::File::create(&args.output)?);
    write_assignments_tsv(&mut w, &table.rows)?;
    w.flush()?;
    if let Some(hist_path) = &args.histogram {
        let mut w = std::io::BufWriter::new(fs::File::create(hist_path)?);
        write_histogram_json(&mut w, &table.histogram)?;
        w.flush()?;
    }
    eprintln!(
        "assigned k to {} reads -> {}",
        table.rows.len(),
        args.output.display()
    );
    Ok(())
}

fn assemble_cmd(args: AssembleArgs) -> Result<(), Error> {
    let reads = fastx::read_path(&args.reads)?;
    let options = AssemblyOptions {
        cutoff: args.cutoff,
        canonical: args.canonical,
    };
    let mut metrics = AssemblyMetrics::default();
    let contigs: ContigSet = match (&args.k_table, args.k) {
        (Some(table_path), None) => {
            let file = fs::File::open(table_path)?;
            let rows = read_assignments_tsv(&mut std::io::BufReader::new(file))?;
            let partition = ReadPartition::from_assignments(&reads, &rows)?;
            iterative_assemble(&partition, &options, &mut metrics)?
        }
        (None, Some(k)) => {
            let seqs: Vec<&[u8]> = reads.iter().map(|r| r.bases.as_slice()).collect();
            assemble_single_k(&seqs, k, &options, &mut metrics)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "exactly one of --k-table and -k is required".into(),
            ))
        }
    };
    if contigs.is_empty() {
        eprintln!("warning: no contigs survived the cutoff");
    }
    let mut w = std::io::BufWriter::new(fs::File::create(&args.output)?);
    fastx::write_fasta(&mut w, &contigs.to_records())?;
    w.flush()?;
    eprintln!(
        "{} contigs ({} bp, {} k-mer insertions) -> {}",
        contigs.len(),
        contigs.total_length(),
        metrics.total_kmer_insertions,
        args.output.display()
    );
    Ok(())
}

fn simulate_cmd(args: SimulateArgs) -> Result<(), Error> {
    let records = fastx::read_path(&args.genome)?;
    if records.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "simulate expects a single-record genome, found {} records",
            records.len()
        )));
    }
    let genome = records.into_iter().next().unwrap().bases;
    let reads = simulate_reads(&genome, args.read_length, args.coverage, args.seed)?;
    let mut w = std::io::BufWriter::new(fs::File::create(&args.output)?);
    fastx::write_fasta(&mut w, &reads)?;
    w.flush()?;
    eprintln!("{} reads -> {}", reads.len(), args.output.display());
    Ok(())
}

fn stats_cmd(args: StatsArgs) -> Result<(), Error> {
    let contigs: Vec<Vec<u8>> = fastx::read_path(&args.contigs)?
        .into_iter()
        .map(|r| r.bases)
        .collect();
    if contigs.is_empty() {
        eprintln!("warning: contig set is empty; reporting zeros");
    }
    let reference = match &args.reference {
        Some(path) => Some(SuffixIndex::build(load_reference_text(path)?)?),
        None => None,
    };
    let stats = contig_stats(&contigs, reference.as_ref());
    let mut stdout = std::io::stdout().lock();
    write_stats_json(&mut stdout, &stats)?;
    if let Some(out) = &args.output {
        let mut w = std::io::BufWriter::new(fs::File::create(out)?);
        write_stats_json(&mut w, &stats)?;
        w.flush()?;
    }
    Ok(())
}

fn pipeline_cmd(args: PipelineArgs) -> Result<(), Error> {
    let mut config = PipelineConfig::new(args.reference, args.reads, args.out_dir);
    config.cutoff = args.cutoff;
    config.defaults = KmerDefaults {
        unaligned: args.unaligned_k,
        overflow: args.overflow_k,
        floor: args.k_floor,
    };
    config.canonical = args.canonical;
    config.msl_format = args.msl_format.parse()?;
    config.threads = threads_from(args.threads);
    config.seed = args.seed;
    let report = run_pipeline(&config)?;
    if report.contigs.is_empty() {
        eprintln!("warning: assembly produced no contigs");
    }
    eprintln!(
        "pipeline done: {} contigs, N50 {}, outputs in {}",
        report.stats.count,
        report.stats.n50,
        config.out_dir.display()
    );
    Ok(())
}
