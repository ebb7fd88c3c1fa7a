//! Sequence landscapes and landscape-guided multi-k assembly.
//!
//! This crate indexes a reference string so that the length of the longest
//! repeated substring covering any position can be read off in constant time
//! (the *maximal sequence landscape*), uses that array to pick a de Bruijn
//! k-mer size per sequencing read, and assembles the reads with an iterative
//! multi-k de Bruijn graph procedure.
//!
//! The main building blocks, bottom up:
//!
//! * [`suffix_index`] — suffix array, LCP array, inverse index and
//!   suffix-pointer array over a sentinel-terminated text.
//! * [`interval_tree`] — a binary tree over the consecutive intervals of an
//!   integer array answering the largest-interval-above-threshold query in
//!   `O(log n)`.
//! * [`landscape`] — the maximal sequence landscape of a string with respect
//!   to itself or to another source string, plus the frequency-unconstrained
//!   silhouette variant.
//! * [`kmer_assignment`] — per-read k selection from the reference landscape
//!   and exact alignments, with overflow/unaligned defaults.
//! * [`debruijn`] — k-mer counting, graph condensation into contigs, the
//!   iterative multi-k driver, and contig statistics.
//! * [`fastx`], [`sam`], [`align`], [`simulate`], [`pipeline`] — ingestion,
//!   an exact aligner, a read simulator, and the end-to-end driver behind the
//!   `seqscape` command-line tool.
//!
//! All internal indices are 0-based; serialized formats are 0-based as well
//! and documented byte-exact in `docs/FORMATS.md`.
//!
//! ```
//! use seqscape::{landscape, suffix_index::SuffixIndex, text::Text};
//!
//! let text = Text::genomic(b"CATCATTTG").unwrap();
//! let index = SuffixIndex::build(text).unwrap();
//! let tree = index.lcp_tree().unwrap();
//! let msl = landscape::build_self_msl(&index, &tree).unwrap();
//! assert_eq!(msl.heights(), &[3, 3, 3, 3, 3, 3, 2, 2, 0]);
//! ```

pub mod align;
pub mod debruijn;
mod error;
pub mod fastx;
pub mod interval_tree;
pub mod kmer_assignment;
pub mod landscape;
pub mod pipeline;
mod sais;
pub mod sam;
pub mod simulate;
pub mod suffix_index;
pub mod text;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
