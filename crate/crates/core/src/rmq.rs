//! Sparse-table range minimum queries over LCP arrays and ℓ-interval enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::extnat::{ExtNat, LcpArray};

/// Sparse table over an LCP array, addressed with the 1-based LCP convention.
#[derive(Debug, Clone)]
pub struct RmqIndex {
    entries: Vec<ExtNat>,
    // table[r][i]: 0-based index of the leftmost minimum of entries[i..i + 2^r)
    table: Vec<Vec<u32>>,
}

impl RmqIndex {
    pub fn new(lcp: &LcpArray) -> Self {
        let entries = lcp.entries.clone();
        let n = entries.len();
        let mut table: Vec<Vec<u32>> = Vec::new();
        if n > 0 {
            table.push((0..n as u32).collect());
            let mut r = 1;
            while (1 << r) <= n {
                let prev = &table[r - 1];
                let half = 1 << (r - 1);
                let row = (0..=n - (1 << r))
                    .map(|i| {
                        let (a, b) = (prev[i], prev[i + half]);
                        if entries[b as usize] < entries[a as usize] { b } else { a }
                    })
                    .collect();
                table.push(row);
                r += 1;
            }
        }
        RmqIndex { entries, table }
    }

    /// Number of LCP entries indexed.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based LCP entry.
    pub fn value(&self, k: usize) -> ExtNat {
        self.entries[k - 1]
    }

    /// Leftmost position of the minimum of LCP[i..j), 1-based, 1 ≤ i < j ≤ len+1.
    pub fn query(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i >= j || j > self.entries.len() + 1 {
            return arg(format!("range [{i}..{j}) is empty or out of bounds"));
        }
        Ok(self.query_unchecked(i, j))
    }

    pub(crate) fn query_unchecked(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = (i - 1, j - 1);
        let r = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let a = self.table[r][lo];
        let b = self.table[r][hi - (1 << r)];
        let k = if self.entries[b as usize] < self.entries[a as usize] { b } else { a };
        k as usize + 1
    }
}

pub fn build_rmq(lcp: &LcpArray) -> RmqIndex {
    RmqIndex::new(lcp)
}

pub fn rmq_query(idx: &RmqIndex, i: usize, j: usize) -> Result<usize> {
    idx.query(i, j)
}

/// An SA range [lo..hi) whose interior LCP minimum is `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LInterval {
    pub lo: usize,
    pub hi: usize,
    pub ell: ExtNat,
}

/// All ℓ-intervals, including the full range and singleton ω-intervals,
/// by recursive splitting at every occurrence of the interior minimum.
pub fn enumerate_l_intervals(lcp: &LcpArray) -> Vec<LInterval> {
    let n = lcp.text_len();
    let rmq = RmqIndex::new(lcp);
    let mut out = Vec::new();
    let mut stack = vec![(0usize, n)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo == 1 {
            out.push(LInterval { lo, hi, ell: ExtNat::Omega });
            continue;
        }
        let k = rmq.query_unchecked(lo + 1, hi);
        let ell = rmq.value(k);
        out.push(LInterval { lo, hi, ell });
        if ell.is_omega() {
            continue;
        }
        let mut cuts = vec![lo, k];
        let mut last = k;
        while last + 1 < hi {
            let k2 = rmq.query_unchecked(last + 1, hi);
            if rmq.value(k2) != ell {
                break;
            }
            cuts.push(k2);
            last = k2;
        }
        cuts.push(hi);
        for w in cuts.windows(2).rev() {
            stack.push((w[0], w[1]));
        }
    }
    out
}
