//! Suffix array, LCP array, inverse index and suffix-pointer array over a
//! sentinel-terminated text.
//!
//! Conventions (all 0-based):
//!
//! * `sa[r]` — start position of the suffix with rank `r`; suffixes in `sa`
//!   order are strictly increasing lexicographically.
//! * `lcp[r]`, for `r` in `0..n-1` — length of the longest common prefix of
//!   the suffixes ranked `r` and `r + 1` (the rank-pair convention; some
//!   presentations print the same values shifted one row down with a
//!   leading 0).
//! * `inv[p]` — rank of the suffix starting at position `p`; the inverse
//!   permutation of `sa`.
//! * `sp[r]` — rank of the suffix obtained by deleting the first symbol of
//!   the suffix ranked `r`, i.e. `inv[sa[r] + 1]`. The sentinel suffix has no
//!   successor and carries [`SP_NONE`].
//!
//! Construction is `O(n)`: SA-IS for the suffix array, Kasai's algorithm for
//! the LCP array, and single scans for the rest. A built index is immutable;
//! concurrent read-only queries need no synchronization.

use std::io::{Read, Write};
use std::path::Path;

use crate::interval_tree::ConsecutiveIntervalTree;
use crate::sais;
use crate::text::Text;
use crate::{Error, Result};

/// Marker stored in `sp` for the rank of the sentinel suffix.
pub const SP_NONE: u32 = u32::MAX;

const MAGIC: &[u8; 4] = b"SLIX";
const FORMAT_VERSION: u16 = 1;
const FLAG_WIDE: u16 = 1;

/// Immutable suffix array bundle over one terminated text.
#[derive(Debug, Clone)]
pub struct SuffixIndex {
    text: Text,
    sa: Vec<u32>,
    lcp: Vec<u32>,
    inv: Vec<u32>,
    sp: Vec<u32>,
}

impl SuffixIndex {
    /// Build all four arrays for `text` in linear time.
    pub fn build(text: Text) -> Result<Self> {
        let n = text.len();
        if n as u64 >= u64::from(u32::MAX) {
            return Err(Error::invalid(format!(
                "text of {} bytes exceeds the 32-bit index limit",
                n
            )));
        }
        let sa = sais::suffix_array(text.bytes());
        let mut inv = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate() {
            inv[p as usize] = r as u32;
        }
        let lcp = kasai(text.bytes(), &sa, &inv);
        let mut sp = vec![SP_NONE; n];
        for (r, &p) in sa.iter().enumerate() {
            if (p as usize) + 1 < n {
                sp[r] = inv[p as usize + 1];
            }
        }
        Ok(SuffixIndex {
            text,
            sa,
            lcp,
            inv,
            sp,
        })
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    pub fn inv(&self) -> &[u32] {
        &self.inv
    }

    pub fn sp(&self) -> &[u32] {
        &self.sp
    }

    /// Consecutive-interval tree over the LCP array, as needed by the
    /// landscape builders. Requires `n >= 2` (a one-byte text has an empty
    /// LCP array).
    pub fn lcp_tree(&self) -> Result<ConsecutiveIntervalTree> {
        let values: Vec<i64> = self.lcp.iter().map(|&v| i64::from(v)).collect();
        ConsecutiveIntervalTree::build(&values)
    }

    /// Narrow a suffix-array rank interval by one more symbol.
    ///
    /// `interval` must be a rank range whose suffixes share a common prefix
    /// of length `depth`; returns the maximal subrange whose suffixes carry
    /// `symbol` at offset `depth`, or `None` when the extension does not
    /// occur. Binary search restricted to the input range, `O(log width)`.
    pub fn narrow(
        &self,
        interval: (usize, usize),
        depth: usize,
        symbol: u8,
    ) -> Option<(usize, usize)> {
        let (lo, hi) = interval;
        debug_assert!(lo <= hi && hi < self.n());
        let text = self.text.bytes();
        let n = text.len();
        // A suffix shorter than depth+1 sorts before any extension symbol.
        let key = |r: usize| -> i32 {
            let p = self.sa[r] as usize + depth;
            if p < n {
                i32::from(text[p])
            } else {
                -1
            }
        };
        let want = i32::from(symbol);
        let width = hi - lo + 1;
        let first = lo + partition_point(width, |off| key(lo + off) < want);
        let last = lo + partition_point(width, |off| key(lo + off) <= want);
        if first < last {
            Some((first, last - 1))
        } else {
            None
        }
    }

    /// Maximal rank interval of suffixes having `pattern` as a prefix.
    /// The empty pattern yields the full range.
    pub fn find_interval(&self, pattern: &[u8]) -> Option<(usize, usize)> {
        let mut interval = (0, self.n() - 1);
        for (depth, &c) in pattern.iter().enumerate() {
            interval = self.narrow(interval, depth, c)?;
        }
        Some(interval)
    }

    /// Number of (possibly overlapping) occurrences of `pattern` in the text.
    pub fn occurrence_count(&self, pattern: &[u8]) -> usize {
        match self.find_interval(pattern) {
            Some((lo, hi)) => hi - lo + 1,
            None => 0,
        }
    }

    /// Sorted start positions of all occurrences of `pattern`.
    pub fn occurrences(&self, pattern: &[u8]) -> Vec<usize> {
        let mut positions: Vec<usize> = match self.find_interval(pattern) {
            Some((lo, hi)) => self.sa[lo..=hi].iter().map(|&p| p as usize).collect(),
            None => Vec::new(),
        };
        positions.sort_unstable();
        positions
    }

    /// Serialize in the `SLIX` format (see `docs/FORMATS.md`).
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&0u16.to_le_bytes())?; // flags: narrow (u32) arrays
        w.write_all(&(self.n() as u64).to_le_bytes())?;
        for arr in [&self.sa, &self.lcp, &self.inv, &self.sp] {
            w.write_all(&(arr.len() as u64).to_le_bytes())?;
            for &v in arr.iter() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        w.write_all(self.text.bytes())?;
        Ok(())
    }

    /// Deserialize from the `SLIX` format, validating structural invariants.
    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::format("bad magic: not a SLIX index file"));
        }
        let version = read_u16(r)?;
        if version != FORMAT_VERSION {
            return Err(Error::format(format!(
                "unsupported index format version {}",
                version
            )));
        }
        let flags = read_u16(r)?;
        if flags & FLAG_WIDE != 0 {
            return Err(Error::format(
                "wide (u64) index files are not supported by this build",
            ));
        }
        if flags & !FLAG_WIDE != 0 {
            return Err(Error::format(format!("unknown flag bits {:#06x}", flags)));
        }
        let n = read_u64(r)? as usize;
        if n == 0 || n as u64 >= u64::from(u32::MAX) {
            return Err(Error::format(format!("implausible text length {}", n)));
        }
        let expected = [n, n - 1, n, n];
        let mut arrays: Vec<Vec<u32>> = Vec::with_capacity(4);
        for (i, &want) in expected.iter().enumerate() {
            let len = read_u64(r)? as usize;
            if len != want {
                return Err(Error::format(format!(
                    "array {} has length {}, expected {}",
                    i, len, want
                )));
            }
            let mut arr = vec![0u32; len];
            let mut buf = [0u8; 4];
            for v in arr.iter_mut() {
                r.read_exact(&mut buf)?;
                *v = u32::from_le_bytes(buf);
            }
            arrays.push(arr);
        }
        let sp = arrays.pop().unwrap();
        let inv = arrays.pop().unwrap();
        let lcp = arrays.pop().unwrap();
        let sa = arrays.pop().unwrap();
        let mut bytes = vec![0u8; n];
        r.read_exact(&mut bytes)?;
        let text = Text::from_terminated(bytes)?;

        let index = SuffixIndex {
            text,
            sa,
            lcp,
            inv,
            sp,
        };
        index.validate()?;
        Ok(index)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(&mut r)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        for (r, &p) in self.sa.iter().enumerate() {
            if p as usize >= n || self.inv[p as usize] as usize != r {
                return Err(Error::format("sa/inv are not inverse permutations"));
            }
        }
        for (r, &p) in self.sa.iter().enumerate() {
            let want = if (p as usize) + 1 < n {
                self.inv[p as usize + 1]
            } else {
                SP_NONE
            };
            if self.sp[r] != want {
                return Err(Error::format("sp array is inconsistent with sa/inv"));
            }
        }
        Ok(())
    }
}

fn partition_point(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let mut left = 0;
    let mut right = len;
    while left < right {
        let mid = left + (right - left) / 2;
        if pred(mid) {
            left = mid + 1;
        } else {
            right = mid;
        }
    }
    left
}

fn read_u16<R: Read>(r: &mut R) -> Result<u16> {
    let mut buf = [0u8; 2];
    r.read_exact(&mut buf)?;
    Ok(u16::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

/// Kasai's LCP construction; returns `n - 1` rank-pair values.
fn kasai(text: &[u8], sa: &[u32], inv: &[u32]) -> Vec<u32> {
    let n = text.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut lcp = vec![0u32; n - 1];
    let mut k = 0usize;
    for i in 0..n {
        let r = inv[i] as usize;
        if r == n - 1 {
            k = 0;
            continue;
        }
        let j = sa[r + 1] as usize;
        while i + k < n && j + k < n && text[i + k] == text[j + k] {
            k += 1;
        }
        lcp[r] = k as u32;
        k = k.saturating_sub(1);
    }
    lcp
}
