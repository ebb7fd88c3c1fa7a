//! Linear-time suffix array construction by induced sorting (SA-IS).
//!
//! Expects the input to end with a unique smallest byte (the sentinel), which
//! the [`crate::text::Text`] type guarantees.

use std::cmp::Ordering;

const EMPTY: u32 = u32::MAX;

pub(crate) fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let s: Vec<u32> = text.iter().map(|&b| u32::from(b)).collect();
    let mut sa = vec![EMPTY; n];
    sais(&s, 256, &mut sa);
    sa
}

fn sais(s: &[u32], sigma: usize, sa: &mut [u32]) {
    let n = s.len();
    if n == 1 {
        sa[0] = 0;
        return;
    }
    if n == 2 {
        if s[0] < s[1] {
            sa.copy_from_slice(&[0, 1]);
        } else {
            sa.copy_from_slice(&[1, 0]);
        }
        return;
    }

    // S/L classification; the last position is S-type by convention.
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = match s[i].cmp(&s[i + 1]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => is_s[i + 1],
        };
    }
    let lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut bucket = vec![0u32; sigma];
    for &c in s {
        bucket[c as usize] += 1;
    }
    let mut bkt = vec![0u32; sigma];

    // First pass: drop LMS suffixes at their bucket tails in text order and
    // induce; this sorts them by LMS substring.
    sa.fill(EMPTY);
    bucket_tails(&bucket, &mut bkt);
    for i in (1..n).rev() {
        if lms(i) {
            let c = s[i] as usize;
            bkt[c] -= 1;
            sa[bkt[c] as usize] = i as u32;
        }
    }
    induce(s, sa, &bucket, &is_s, &mut bkt);

    // Name LMS substrings in sorted order.
    let lms_sorted: Vec<u32> = sa
        .iter()
        .copied()
        .filter(|&p| p != EMPTY && lms(p as usize))
        .collect();
    let mut name_of = vec![EMPTY; n];
    let mut name: u32 = 0;
    let mut prev: Option<u32> = None;
    for &p in &lms_sorted {
        if let Some(q) = prev {
            if lms_substrings_differ(s, &is_s, q as usize, p as usize) {
                name += 1;
            }
        }
        name_of[p as usize] = name;
        prev = Some(p);
    }
    let num_names = name as usize + 1;

    let lms_positions: Vec<u32> = (1..n).filter(|&i| lms(i)).map(|i| i as u32).collect();
    let reduced: Vec<u32> = lms_positions.iter().map(|&p| name_of[p as usize]).collect();

    let mut reduced_sa = vec![EMPTY; reduced.len()];
    if num_names == reduced.len() {
        // All names distinct: suffix order of the reduced string is decided
        // by the first symbol alone.
        for (i, &nm) in reduced.iter().enumerate() {
            reduced_sa[nm as usize] = i as u32;
        }
    } else {
        sais(&reduced, num_names, &mut reduced_sa);
    }

    // Final pass: drop LMS suffixes in their true order and induce.
    sa.fill(EMPTY);
    bucket_tails(&bucket, &mut bkt);
    for &ri in reduced_sa.iter().rev() {
        let p = lms_positions[ri as usize];
        let c = s[p as usize] as usize;
        bkt[c] -= 1;
        sa[bkt[c] as usize] = p;
    }
    induce(s, sa, &bucket, &is_s, &mut bkt);
}

fn bucket_heads(bucket: &[u32], out: &mut [u32]) {
    let mut sum = 0u32;
    for (c, &cnt) in bucket.iter().enumerate() {
        out[c] = sum;
        sum += cnt;
    }
}

fn bucket_tails(bucket: &[u32], out: &mut [u32]) {
    let mut sum = 0u32;
    for (c, &cnt) in bucket.iter().enumerate() {
        sum += cnt;
        out[c] = sum;
    }
}

fn induce(s: &[u32], sa: &mut [u32], bucket: &[u32], is_s: &[bool], bkt: &mut [u32]) {
    let n = s.len();

    // L-type, left to right from bucket heads.
    bucket_heads(bucket, bkt);
    for i in 0..n {
        let p = sa[i];
        if p != EMPTY && p > 0 && !is_s[p as usize - 1] {
            let c = s[p as usize - 1] as usize;
            sa[bkt[c] as usize] = p - 1;
            bkt[c] += 1;
        }
    }

    // S-type, right to left from bucket tails.
    bucket_tails(bucket, bkt);
    for i in (0..n).rev() {
        let p = sa[i];
        if p != EMPTY && p > 0 && is_s[p as usize - 1] {
            let c = s[p as usize - 1] as usize;
            bkt[c] -= 1;
            sa[bkt[c] as usize] = p - 1;
        }
    }
}

fn lms_substrings_differ(s: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == b {
        return false;
    }
    // The sentinel's LMS substring is the single smallest byte and equals no other.
    if a == n - 1 || b == n - 1 {
        return true;
    }
    let mut i = 0;
    loop {
        let (pa, pb) = (a + i, b + i);
        if pa >= n || pb >= n {
            return true;
        }
        if s[pa] != s[pb] || is_s[pa] != is_s[pb] {
            return true;
        }
        if i > 0 && is_s[pa] && !is_s[pa - 1] {
            // both LMS substrings ended together
            return false;
        }
        i += 1;
    }
}
