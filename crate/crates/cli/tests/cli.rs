//! Drives the `seqscape` binary end to end through a temp directory.

use std::path::{Path, PathBuf};
use std::process::Command;

fn seqscape() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seqscape"))
}

fn run_ok(cmd: &mut Command) {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn exit_code(cmd: &mut Command) -> i32 {
    cmd.output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn write_genome(dir: &Path) -> PathBuf {
    // CATCAT-style repeat structure, long enough to assemble
    let mut genome = Vec::new();
    let blocks: [&[u8]; 5] = [
        b"ACGTTGCA",
        b"GGATCCAT",
        b"ACGTTGCA",
        b"TTGACCGT",
        b"CAGGTTAC",
    ];
    for b in blocks {
        genome.extend_from_slice(b);
    }
    let path = dir.join("genome.fa");
    std::fs::write(&path, format!(">g\n{}\n", String::from_utf8_lossy(&genome))).unwrap();
    path
}

#[test]
fn subcommand_chain_produces_contigs_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let genome = write_genome(dir.path());
    let reads = dir.path().join("reads.fa");
    let index = dir.path().join("ref.slix");
    let msl = dir.path().join("ref.msl");
    let aln = dir.path().join("aln.tsv");
    let assign = dir.path().join("assign.tsv");
    let hist = dir.path().join("hist.json");
    let contigs = dir.path().join("contigs.fa");

    run_ok(seqscape().args([
        "simulate",
        "--genome",
        genome.to_str().unwrap(),
        "--read-length",
        "12",
        "--coverage",
        "12",
        "--seed",
        "7",
        "--output",
        reads.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "index",
        "build",
        "--input",
        genome.to_str().unwrap(),
        "--output",
        index.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "landscape",
        "build",
        "--index",
        index.to_str().unwrap(),
        "--output",
        msl.to_str().unwrap(),
    ]));
    run_ok(seqscape().env("SEQSCAPE_THREADS", "2").args([
        "align-exact",
        "--index",
        index.to_str().unwrap(),
        "--reads",
        reads.to_str().unwrap(),
        "--output",
        aln.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "assign-k",
        "--msl",
        msl.to_str().unwrap(),
        "--reads",
        reads.to_str().unwrap(),
        "--alignments",
        aln.to_str().unwrap(),
        "--output",
        assign.to_str().unwrap(),
        "--histogram",
        hist.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "assemble",
        "--reads",
        reads.to_str().unwrap(),
        "--k-table",
        assign.to_str().unwrap(),
        "--cutoff",
        "1",
        "--output",
        contigs.to_str().unwrap(),
    ]));
    let out = seqscape()
        .args([
            "stats",
            "--contigs",
            contigs.to_str().unwrap(),
            "--reference",
            genome.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stats = String::from_utf8_lossy(&out.stdout);
    assert!(stats.contains("\"n50\""), "stats output: {}", stats);
    assert!(stats.contains("exact_match_fraction"), "{}", stats);

    let msl_text = std::fs::read_to_string(&msl).unwrap();
    assert!(
        msl_text.starts_with("#MSL self-landscape 40\n"),
        "{}",
        msl_text
    );
    let hist_text = std::fs::read_to_string(&hist).unwrap();
    assert!(hist_text.trim_start().starts_with('{'));
}

#[test]
fn single_k_assembly_and_binary_msl() {
    let dir = tempfile::tempdir().unwrap();
    let genome = write_genome(dir.path());
    let reads = dir.path().join("reads.fa");
    let index = dir.path().join("ref.slix");
    let msl = dir.path().join("ref.msl.bin");
    let contigs = dir.path().join("contigs.fa");

    run_ok(seqscape().args([
        "simulate",
        "--genome",
        genome.to_str().unwrap(),
        "--read-length",
        "15",
        "--coverage",
        "10",
        "--output",
        reads.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "index",
        "build",
        "--input",
        genome.to_str().unwrap(),
        "--output",
        index.to_str().unwrap(),
    ]));
    run_ok(seqscape().args([
        "landscape",
        "build",
        "--index",
        index.to_str().unwrap(),
        "--output",
        msl.to_str().unwrap(),
        "--format",
        "binary",
        "--silhouette",
    ]));
    assert_eq!(&std::fs::read(&msl).unwrap()[..4], b"MSL1");

    run_ok(seqscape().args([
        "assemble",
        "--reads",
        reads.to_str().unwrap(),
        "-k",
        "11",
        "--cutoff",
        "1",
        "--output",
        contigs.to_str().unwrap(),
    ]));
    let fasta = std::fs::read_to_string(&contigs).unwrap();
    assert!(fasta.starts_with('>'), "{}", fasta);
}

#[test]
fn pipeline_subcommand_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let genome = write_genome(dir.path());
    let reads = dir.path().join("reads.fa");
    run_ok(seqscape().args([
        "simulate",
        "--genome",
        genome.to_str().unwrap(),
        "--read-length",
        "12",
        "--coverage",
        "12",
        "--seed",
        "3",
        "--output",
        reads.to_str().unwrap(),
    ]));
    let out_dir = dir.path().join("run");
    run_ok(seqscape().args([
        "pipeline",
        "--reference",
        genome.to_str().unwrap(),
        "--reads",
        reads.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--cutoff",
        "1",
        "--seed",
        "3",
    ]));
    for name in [
        "reference.msl",
        "alignments.tsv",
        "assignments.tsv",
        "k_histogram.json",
        "contigs.fasta",
        "stats.json",
        "manifest.json",
    ] {
        assert!(out_dir.join(name).exists(), "{} missing", name);
    }
    let manifest = std::fs::read_to_string(out_dir.join("manifest.json")).unwrap();
    assert!(manifest.contains("total_kmer_insertions"), "{}", manifest);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let genome = write_genome(dir.path());

    // missing file
    assert_eq!(
        exit_code(seqscape().args([
            "index",
            "build",
            "--input",
            dir.path().join("nope.fa").to_str().unwrap(),
            "--output",
            dir.path().join("x.slix").to_str().unwrap(),
        ])),
        2
    );

    // not an index file
    assert_eq!(
        exit_code(seqscape().args([
            "landscape",
            "build",
            "--index",
            genome.to_str().unwrap(),
            "--output",
            dir.path().join("x.msl").to_str().unwrap(),
        ])),
        2
    );

    // cutoff 0 rejected by the pipeline
    assert_eq!(
        exit_code(seqscape().args([
            "pipeline",
            "--reference",
            genome.to_str().unwrap(),
            "--reads",
            genome.to_str().unwrap(),
            "--out-dir",
            dir.path().join("out").to_str().unwrap(),
            "--cutoff",
            "0",
        ])),
        2
    );

    // unknown flag is a clap usage error, also 2
    assert_eq!(exit_code(seqscape().args(["stats", "--bogus"])), 2);
}
