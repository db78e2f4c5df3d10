//! Binary inference: all BWTs v ∈ {a,b}^n with LCP_IBWT(v) equal to a given array.

use serde::{Deserialize, Serialize};

use crate::cyclic::{lcp_from_bwt, Symbol};
use crate::error::{arg, Result};
use crate::extnat::{ExtNat, LcpArray};
use crate::rmq::RmqIndex;
use crate::text::render;

const A: Symbol = 0;
const B: Symbol = 1;

/// BWT range [lo..hi) whose all-a and all-b halves may be exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SwapInterval {
    pub lo: usize,
    pub hi: usize,
}

impl SwapInterval {
    pub fn mid(&self) -> usize {
        (self.lo + self.hi) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceResult {
    pub bwt: Vec<Symbol>,
    pub swaps: Vec<SwapInterval>,
}

impl InferenceResult {
    /// `b[ab]bbaa`: swap intervals in brackets.
    pub fn rendered(&self) -> String {
        let mut out = String::new();
        let mut s = self.swaps.iter().peekable();
        let mut i = 0;
        while i < self.bwt.len() {
            if let Some(sw) = s.next_if(|sw| sw.lo == i) {
                out.push('[');
                out.push_str(&render(&self.bwt[sw.lo..sw.hi]));
                out.push(']');
                i = sw.hi;
            } else {
                out.push_str(&render(&self.bwt[i..i + 1]));
                i += 1;
            }
        }
        out
    }

    /// Applies the swaps whose flag is set; `select[i]` refers to `swaps[i]`.
    pub fn apply_selection(&self, select: &[bool]) -> Vec<Symbol> {
        let mut v = self.bwt.clone();
        for (sw, _) in self.swaps.iter().zip(select).filter(|(_, &f)| f) {
            swap_halves(&mut v, *sw);
        }
        v
    }
}

fn swap_halves(v: &mut [Symbol], sw: SwapInterval) {
    v[sw.lo..sw.hi].rotate_left(sw.mid() - sw.lo);
}

/// Half-open ranges over SA positions for x, ax and bx.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferFrame {
    pub x: (usize, usize),
    pub ax: (usize, usize),
    pub bx: (usize, usize),
}

/// Work counters for one inference run, verification excluded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferStats {
    pub frames: u64,
    pub rmq_queries: u64,
    pub compared: u64,
    pub writes: u64,
}

impl InferStats {
    pub fn total(&self) -> u64 {
        self.frames + self.rmq_queries + self.compared + self.writes
    }
}

/// Marker for a frame that no valid array can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

/// Mutable state threaded through the frames.
#[derive(Debug)]
pub struct Workspace<'a> {
    pub rmq: &'a RmqIndex,
    pub bwt: Vec<Option<Symbol>>,
    pub swaps: Vec<SwapInterval>,
    pub stats: InferStats,
}

impl<'a> Workspace<'a> {
    pub fn new(rmq: &'a RmqIndex) -> Self {
        Workspace {
            rmq,
            bwt: vec![None; rmq.len() + 1],
            swaps: Vec::new(),
            stats: InferStats::default(),
        }
    }

    fn fill(&mut self, lo: usize, hi: usize, c: Symbol) {
        self.stats.writes += (hi - lo) as u64;
        self.bwt[lo..hi].iter_mut().for_each(|x| *x = Some(c));
    }

    fn min_of(&mut self, lo: usize, hi: usize) -> (usize, ExtNat) {
        self.stats.rmq_queries += 1;
        let k = self.rmq.query_unchecked(lo + 1, hi);
        (k, self.rmq.value(k))
    }

    /// LCP[p..q) == 1 + LCP[r..s), elementwise, 1-based.
    fn shifted_eq(&mut self, (p, q): (usize, usize), (r, s): (usize, usize)) -> bool {
        if q - p != s - r {
            return false;
        }
        for t in 0..q - p {
            self.stats.compared += 1;
            if self.rmq.value(p + t) != self.rmq.value(r + t).succ() {
                return false;
            }
        }
        true
    }
}

/// Processes one frame: fills the determined part of v, records swaps,
/// and returns the frames still to be processed.
pub fn infer_interval(
    frame: InferFrame,
    ws: &mut Workspace<'_>,
) -> std::result::Result<Vec<InferFrame>, Inconsistent> {
    let InferFrame { x: (ix, jx), ax: (iax, jax), bx: (ibx, jbx) } = frame;
    ws.stats.frames += 1;
    if iax >= jax || ibx >= jbx || jx < ix || jx - ix != (jax - iax) + (jbx - ibx) {
        return Err(Inconsistent);
    }
    let (kx, mx) = ws.min_of(ix, jx);
    if mx.is_omega() {
        return Err(Inconsistent);
    }
    let (kax, max) = if jax - iax == 1 { (iax, ExtNat::Omega) } else { ws.min_of(iax, jax) };
    let (kbx, mbx) = if jbx - ibx == 1 { (ibx, ExtNat::Omega) } else { ws.min_of(ibx, jbx) };
    let thr = mx.succ();
    let mut next = Vec::new();
    match (max > thr, mbx > thr) {
        (true, true) => {
            if ws.shifted_eq((iax + 1, jax), (ix + 1, kx)) {
                ws.fill(ix, kx, A);
                ws.fill(kx, jx, B);
                if ws.shifted_eq((iax + 1, jax), (kx + 1, jx)) {
                    ws.swaps.push(SwapInterval { lo: ix, hi: jx });
                }
            } else {
                ws.fill(ix, kx, B);
                ws.fill(kx, jx, A);
            }
        }
        (true, false) => {
            if kbx - ibx == kx - ix {
                ws.fill(ix, kx, B);
                next.push(InferFrame { x: (kx, jx), ax: (iax, jax), bx: (kbx, jbx) });
            } else {
                ws.fill(kx, jx, B);
                next.push(InferFrame { x: (ix, kx), ax: (iax, jax), bx: (ibx, kbx) });
            }
        }
        (false, true) => {
            if kax - iax == kx - ix {
                ws.fill(ix, kx, A);
                next.push(InferFrame { x: (kx, jx), ax: (kax, jax), bx: (ibx, jbx) });
            } else {
                ws.fill(kx, jx, A);
                next.push(InferFrame { x: (ix, kx), ax: (iax, kax), bx: (ibx, jbx) });
            }
        }
        (false, false) => {
            next.push(InferFrame { x: (ix, kx), ax: (iax, kax), bx: (ibx, kbx) });
            next.push(InferFrame { x: (kx, jx), ax: (kax, jax), bx: (kbx, jbx) });
        }
    }
    Ok(next)
}

/// Runs the inference without the final verification.
pub fn infer_unverified(lcp: &LcpArray) -> (Option<InferenceResult>, InferStats) {
    let n = lcp.text_len();
    if lcp.is_empty() {
        return (Some(InferenceResult { bwt: vec![A], swaps: vec![] }), InferStats::default());
    }
    let rmq = RmqIndex::new(lcp);
    let mut ws = Workspace::new(&rmq);
    let (k, m) = ws.min_of(0, n);
    if m != ExtNat::Fin(0) {
        let out = m.is_omega().then(|| InferenceResult { bwt: vec![A; n], swaps: vec![] });
        return (out, ws.stats);
    }
    let mut stack = vec![InferFrame { x: (0, n), ax: (0, k), bx: (k, n) }];
    while let Some(f) = stack.pop() {
        match infer_interval(f, &mut ws) {
            Ok(next) => stack.extend(next.into_iter().rev()),
            Err(Inconsistent) => return (None, ws.stats),
        }
    }
    let Some(bwt) = ws.bwt.iter().copied().collect::<Option<Vec<_>>>() else {
        return (None, ws.stats);
    };
    let mut swaps = ws.swaps;
    swaps.sort();
    (Some(InferenceResult { bwt, swaps }), ws.stats)
}

/// Full inference with verification; `None` means no binary string has this LCP array.
pub fn infer_with_stats(lcp: &LcpArray) -> (Option<InferenceResult>, InferStats) {
    let (res, stats) = infer_unverified(lcp);
    let res = res.filter(|r| lcp_from_bwt(&r.bwt).map(|l| l == *lcp).unwrap_or(false));
    (res, stats)
}

pub fn infer(lcp: &LcpArray) -> Option<InferenceResult> {
    infer_with_stats(lcp).0
}

/// Applies the listed swap intervals, each of which must belong to `result`.
pub fn apply_swap_mask(result: &InferenceResult, mask: &[SwapInterval]) -> Result<Vec<Symbol>> {
    let mut v = result.bwt.clone();
    for sw in mask {
        if !result.swaps.contains(sw) {
            return arg(format!("[{}..{}) is not a swap interval of the result", sw.lo, sw.hi));
        }
        swap_halves(&mut v, *sw);
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub bwts: Vec<Vec<Symbol>>,
    pub truncated: bool,
}

/// Mask applications in increasing mask order, bit i selecting swap i.
pub fn enumerate_bwts(result: &InferenceResult, limit: usize) -> Enumeration {
    let s = result.swaps.len();
    let total: Option<u128> = if s < 128 { Some(1u128 << s) } else { None };
    let take = match total {
        Some(t) if t <= limit as u128 => t as usize,
        _ => limit,
    };
    let bwts = (0..take)
        .map(|mask| {
            let sel: Vec<bool> = (0..s).map(|i| i < 64 && (mask as u64 >> i) & 1 == 1).collect();
            result.apply_selection(&sel)
        })
        .collect();
    Enumeration { bwts, truncated: total.is_none_or(|t| t > take as u128) }
}

pub fn verify(lcp: &LcpArray, candidate: &[Symbol]) -> Result<bool> {
    if candidate.len() != lcp.text_len() {
        return arg(format!(
            "candidate length {} does not match LCP length {} + 1",
            candidate.len(),
            lcp.len()
        ));
    }
    Ok(lcp_from_bwt(candidate)? == *lcp)
}
