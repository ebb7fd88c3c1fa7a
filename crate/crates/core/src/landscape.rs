//! Maximal sequence landscapes.
//!
//! The maximal sequence landscape of a target string with respect to a source
//! string stores, for every target position, the length of the longest
//! substring that covers the position and occurs at least twice in the
//! source (single-symbol matches do not count). With target = source this is
//! the longest-repeat-per-position array. The *silhouette* drops both
//! constraints: any occurrence in the source qualifies, down to single
//! symbols.
//!
//! Construction slides a window over the target while maintaining the suffix
//! array interval of the current window string. Extending the window narrows
//! the interval by binary search; dropping the leading symbol re-anchors the
//! interval through the suffix-pointer array and re-expands it with a
//! largest-interval query on the LCP array. The window start and end only
//! move forward, so a target of length `m` costs at most `2m` ascent/descent
//! steps of `O(log n)` each (`n` = source length); the counters are exposed
//! through [`LandscapeMetrics`]. A final linear sweep turns the
//! longest-window-ending-at-each-position lengths into per-position covering
//! maxima.

use std::collections::VecDeque;
use std::io::{BufRead, Read, Write};
use std::path::Path;

use crate::interval_tree::ConsecutiveIntervalTree;
use crate::suffix_index::{SuffixIndex, SP_NONE};
use crate::{Error, Result};

/// Which landscape variant an [`MslArray`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandscapeKind {
    SelfLandscape,
    GeneralLandscape,
    Silhouette,
}

impl LandscapeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LandscapeKind::SelfLandscape => "self-landscape",
            LandscapeKind::GeneralLandscape => "general-landscape",
            LandscapeKind::Silhouette => "silhouette",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-landscape" => Ok(LandscapeKind::SelfLandscape),
            "general-landscape" => Ok(LandscapeKind::GeneralLandscape),
            "silhouette" => Ok(LandscapeKind::Silhouette),
            other => Err(Error::format(format!("unknown landscape kind '{}'", other))),
        }
    }

    fn code(&self) -> u8 {
        match self {
            LandscapeKind::SelfLandscape => 0,
            LandscapeKind::GeneralLandscape => 1,
            LandscapeKind::Silhouette => 2,
        }
    }

    fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(LandscapeKind::SelfLandscape),
            1 => Ok(LandscapeKind::GeneralLandscape),
            2 => Ok(LandscapeKind::Silhouette),
            other => Err(Error::format(format!(
                "unknown landscape kind code {}",
                other
            ))),
        }
    }
}

/// Per-position summit heights of a landscape; `heights[i] == 0` means no
/// qualifying repeat covers position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MslArray {
    kind: LandscapeKind,
    heights: Vec<u32>,
}

/// Ascent/descent counters of one landscape construction. Their sum is
/// bounded by twice the target length.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct LandscapeMetrics {
    pub ascents: u64,
    pub descents: u64,
}

const BINARY_MAGIC: &[u8; 4] = b"MSL1";

impl MslArray {
    /// Assemble an array from precomputed heights (used when stitching
    /// per-record landscapes of a multi-record target).
    pub fn from_heights(kind: LandscapeKind, heights: Vec<u32>) -> Self {
        MslArray { kind, heights }
    }

    pub fn kind(&self) -> LandscapeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// Constant-time summit lookup; out-of-range positions are rejected.
    pub fn height_at(&self, i: usize) -> Result<u32> {
        self.heights.get(i).copied().ok_or_else(|| {
            Error::invalid(format!(
                "position {} out of range for landscape of length {}",
                i,
                self.heights.len()
            ))
        })
    }

    pub fn max_height(&self) -> u32 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Text form: a `#MSL <kind> <n>` header line, then one height per line.
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "#MSL {} {}", self.kind.as_str(), self.heights.len())?;
        for &h in &self.heights {
            writeln!(w, "{}", h)?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: &mut R) -> Result<Self> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "#MSL" {
            return Err(Error::format("missing #MSL header line"));
        }
        let kind = LandscapeKind::from_str(fields[1])?;
        let n: usize = fields[2]
            .parse()
            .map_err(|_| Error::format("bad length in #MSL header"))?;
        let mut heights = Vec::with_capacity(n);
        for line in r.lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            heights.push(
                t.parse::<u32>()
                    .map_err(|_| Error::format(format!("bad height value '{}'", t)))?,
            );
        }
        if heights.len() != n {
            return Err(Error::format(format!(
                "header promises {} heights, file contains {}",
                n,
                heights.len()
            )));
        }
        Ok(MslArray { kind, heights })
    }

    /// Binary form: magic `MSL1`, kind byte, length as u64 LE, heights as
    /// u32 LE.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(BINARY_MAGIC)?;
        w.write_all(&[self.kind.code()])?;
        w.write_all(&(self.heights.len() as u64).to_le_bytes())?;
        for &h in &self.heights {
            w.write_all(&h.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != BINARY_MAGIC {
            return Err(Error::format("bad magic: not an MSL1 file"));
        }
        let mut kind_byte = [0u8; 1];
        r.read_exact(&mut kind_byte)?;
        let kind = LandscapeKind::from_code(kind_byte[0])?;
        let mut len_buf = [0u8; 8];
        r.read_exact(&mut len_buf)?;
        let n = u64::from_le_bytes(len_buf) as usize;
        let mut heights = vec![0u32; n];
        let mut buf = [0u8; 4];
        for h in heights.iter_mut() {
            r.read_exact(&mut buf)?;
            *h = u32::from_le_bytes(buf);
        }
        Ok(MslArray { kind, heights })
    }

    /// Load either serialized form, sniffing the magic bytes.
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        if bytes.starts_with(BINARY_MAGIC) {
            Self::read_binary(&mut bytes.as_slice())
        } else {
            Self::read_text(&mut bytes.as_slice())
        }
    }
}

/// Landscape of the indexed text with respect to itself.
pub fn build_self_msl(index: &SuffixIndex, tree: &ConsecutiveIntervalTree) -> Result<MslArray> {
    build_self_msl_with_metrics(index, tree).map(|(msl, _)| msl)
}

pub fn build_self_msl_with_metrics(
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
) -> Result<(MslArray, LandscapeMetrics)> {
    let body: Vec<u8> = index.text().body().to_vec();
    let (heights, metrics) = scan(&body, index, tree, 2, 2)?;
    Ok((
        MslArray {
            kind: LandscapeKind::SelfLandscape,
            heights,
        },
        metrics,
    ))
}

/// Landscape of `target` with respect to the indexed source: per target
/// position, the longest covering substring occurring at least twice in the
/// source.
pub fn build_general_msl(
    target: &[u8],
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
) -> Result<MslArray> {
    build_general_msl_with_metrics(target, index, tree).map(|(msl, _)| msl)
}

pub fn build_general_msl_with_metrics(
    target: &[u8],
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
) -> Result<(MslArray, LandscapeMetrics)> {
    let (heights, metrics) = scan(target, index, tree, 2, 2)?;
    Ok((
        MslArray {
            kind: LandscapeKind::GeneralLandscape,
            heights,
        },
        metrics,
    ))
}

/// Silhouette of `target` with respect to the indexed source: frequency and
/// height thresholds drop to one.
pub fn build_silhouette(
    target: &[u8],
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
) -> Result<MslArray> {
    build_silhouette_with_metrics(target, index, tree).map(|(msl, _)| msl)
}

pub fn build_silhouette_with_metrics(
    target: &[u8],
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
) -> Result<(MslArray, LandscapeMetrics)> {
    let (heights, metrics) = scan(target, index, tree, 1, 1)?;
    Ok((
        MslArray {
            kind: LandscapeKind::Silhouette,
            heights,
        },
        metrics,
    ))
}

/// Forward scan maintaining the longest window ending at each target
/// position whose string occurs at least `min_freq` times in the source,
/// followed by the covering sweep. `min_height` masks windows too short to
/// count as mountains.
fn scan(
    target: &[u8],
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
    min_freq: usize,
    min_height: u32,
) -> Result<(Vec<u32>, LandscapeMetrics)> {
    if target.is_empty() {
        return Err(Error::invalid("landscape target is empty"));
    }
    if tree.len() != index.lcp().len() {
        return Err(Error::invalid(
            "interval tree was not built over this index's LCP array",
        ));
    }
    let sentinel = index.text().sentinel();
    if target.contains(&sentinel) {
        return Err(Error::invalid("target contains the source sentinel byte"));
    }

    let n = index.n();
    let m = target.len();
    let full = (0usize, n - 1);
    let mut ends = vec![0u32; m]; // masked longest-window length ending at i
    let mut starts = vec![0usize; m]; // window start after processing i
    let mut metrics = LandscapeMetrics::default();

    let mut b = 0usize; // current window is target[b..i) entering iteration i
    let mut interval = full;

    for (i, &c) in target.iter().enumerate() {
        let depth = i - b;
        let mut accepted = try_extend(index, interval, depth, c, min_freq);
        while accepted.is_none() && b < i {
            // drop the leading symbol: re-anchor via the suffix pointer, then
            // re-expand to all suffixes sharing the shortened window
            let tail_len = i - b - 1;
            interval = if tail_len == 0 {
                full
            } else {
                let sp = index.sp()[interval.0];
                debug_assert_ne!(sp, SP_NONE);
                expand_ranks(index, tree, sp as usize, tail_len as i64)
            };
            b += 1;
            metrics.descents += 1;
            accepted = try_extend(index, interval, i - b, c, min_freq);
        }
        match accepted {
            Some(narrowed) => {
                interval = narrowed;
                metrics.ascents += 1;
                let len = (i - b + 1) as u32;
                ends[i] = if len >= min_height { len } else { 0 };
                starts[i] = b;
            }
            None => {
                b = i + 1;
                interval = full;
                starts[i] = b;
            }
        }
    }
    Ok((cover_max(&ends, &starts), metrics))
}

fn try_extend(
    index: &SuffixIndex,
    interval: (usize, usize),
    depth: usize,
    symbol: u8,
    min_freq: usize,
) -> Option<(usize, usize)> {
    let narrowed = index.narrow(interval, depth, symbol)?;
    if narrowed.1 - narrowed.0 + 1 >= min_freq {
        Some(narrowed)
    } else {
        None
    }
}

/// Maximal rank interval around `anchor` whose suffixes share a prefix of
/// at least `alpha` symbols: an interval-tree query on the LCP array.
fn expand_ranks(
    index: &SuffixIndex,
    tree: &ConsecutiveIntervalTree,
    anchor: usize,
    alpha: i64,
) -> (usize, usize) {
    let n = index.n();
    let mut visits = 0usize;
    let u = match tree.first_below_at_or_after(anchor, alpha, &mut visits) {
        Some(k) => k,
        None => n - 1,
    };
    let d = if anchor == 0 {
        0
    } else {
        match tree.first_below_at_or_before(anchor - 1, alpha, &mut visits) {
            Some(k) => k + 1,
            None => 0,
        }
    };
    (d, u)
}

/// Turn longest-window-ending-at-`i` lengths into covering maxima: a sliding
/// window maximum over the windows `[starts[i], i]`, which have
/// non-decreasing starts and ends.
fn cover_max(ends: &[u32], starts: &[usize]) -> Vec<u32> {
    let m = ends.len();
    let mut heights = vec![0u32; m];
    let mut dq: VecDeque<usize> = VecDeque::new();
    let mut next = 0usize;
    for (j, out) in heights.iter_mut().enumerate() {
        while next < m && starts[next] <= j {
            if ends[next] > 0 {
                while dq.back().is_some_and(|&k| ends[k] <= ends[next]) {
                    dq.pop_back();
                }
                dq.push_back(next);
            }
            next += 1;
        }
        while dq.front().is_some_and(|&k| k < j) {
            dq.pop_front();
        }
        *out = dq.front().map(|&k| ends[k]).unwrap_or(0);
    }
    heights
}
