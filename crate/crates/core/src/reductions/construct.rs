//! CCEC instance → cyclic string multiset → LCP array, and the terminator transform.

use serde::{Deserialize, Serialize};

use crate::ccec::{cycles, from_cnf, CcecInstance, Cnf};
use crate::cyclic::{canonical_rotation, lcp_array, CyclicMultiset, CyclicWord, Symbol};
use crate::error::{Error, Result};
use crate::extnat::LcpArray;

const A: Symbol = 0;
const B: Symbol = 1;

/// The two strings of one vertex: b a^k b a^(m+2h) and bb a^k bb a^(m+2h-1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStrings {
    pub k: usize,
    pub h: usize,
    pub first: Vec<Symbol>,
    pub second: Vec<Symbol>,
}

fn run(c: Symbol, len: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n(c, len)
}

pub fn vertex_strings(inst: &CcecInstance) -> Result<Vec<VertexStrings>> {
    inst.validate()?;
    let (n, m) = (inst.vertices.len(), inst.partitions.len());
    if n == 0 {
        return Err(Error::Instance("instance has no vertices".into()));
    }
    let owner = inst.partition_of();
    Ok((0..n)
        .map(|v| {
            let (k, h) = (owner[v] + 1, v + 1);
            let first = [B].into_iter().chain(run(A, k)).chain([B]).chain(run(A, m + 2 * h)).collect();
            let second =
                [B, B].into_iter().chain(run(A, k)).chain([B, B]).chain(run(A, m + 2 * h - 1)).collect();
            VertexStrings { k, h, first, second }
        })
        .collect())
}

/// Raw (unrotated) words, one per cycle of the initial state; the first pass
/// through a vertex uses its first string, the second pass the other.
pub fn ccec_words(inst: &CcecInstance) -> Result<Vec<Vec<Symbol>>> {
    let strings = vertex_strings(inst)?;
    let mut passes = vec![0u8; inst.vertices.len()];
    let words = cycles(inst, &inst.initial)?
        .into_iter()
        .map(|cyc| {
            let mut w = Vec::new();
            for e in cyc {
                let v = inst.edges[e].to.0;
                let s = if passes[v] == 0 { &strings[v].first } else { &strings[v].second };
                passes[v] += 1;
                w.extend_from_slice(s);
            }
            w
        })
        .collect();
    Ok(words)
}

pub fn ccec_to_multiset(inst: &CcecInstance) -> Result<CyclicMultiset> {
    let words = ccec_words(inst)?;
    CyclicMultiset::from_words(&words)
}

pub fn ccec_to_lcp(inst: &CcecInstance) -> Result<LcpArray> {
    lcp_array(&ccec_to_multiset(inst)?)
}

pub fn sat_to_lcp(formula: &Cnf) -> Result<LcpArray> {
    ccec_to_lcp(&from_cnf(formula)?)
}

/// Replaces the unique maximal run a^(m+2n) by a^(m+2n+1) $ a^(m+2n).
/// The result uses the terminator alphabet $ = 0, a = 1, b = 2.
pub fn add_terminator(w: &CyclicMultiset, m: usize, n: usize) -> Result<CyclicMultiset> {
    let target = m + 2 * n;
    let mut hits = Vec::new();
    for (wi, word) in w.words().iter().enumerate() {
        for (start, len) in cyclic_runs(word.symbols(), A) {
            if len == target {
                hits.push((wi, start));
            } else if len > target {
                return Err(Error::Instance(format!("a-run of length {len} exceeds a^{target}")));
            }
        }
    }
    let [(wi, start)] = hits[..] else {
        return Err(Error::Instance(format!("expected one run a^{target}, found {}", hits.len())));
    };
    let mut words: Vec<CyclicWord> = Vec::new();
    for (i, word) in w.words().iter().enumerate() {
        let s = word.symbols();
        let rotated: Vec<Symbol> = s[start % s.len()..].iter().chain(&s[..start % s.len()]).copied().collect();
        let shifted = |x: &[Symbol]| x.iter().map(|&c| c + 1).collect::<Vec<_>>();
        let new = if i == wi {
            let mut out: Vec<Symbol> = run(A + 1, target + 1).collect();
            out.push(0);
            out.extend(shifted(&rotated));
            out
        } else {
            shifted(s)
        };
        words.push(canonical_rotation(&new)?);
    }
    Ok(CyclicMultiset::new(words))
}

/// Maximal runs of `c` in a cyclic word as (start, length); a word consisting
/// only of `c` yields no runs.
fn cyclic_runs(s: &[Symbol], c: Symbol) -> Vec<(usize, usize)> {
    let n = s.len();
    let Some(anchor) = (0..n).find(|&i| s[i] != c) else { return vec![] };
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let p = (anchor + i) % n;
        if s[p] == c {
            let mut len = 0;
            while len < n && s[(p + len) % n] == c {
                len += 1;
            }
            out.push((p, len));
            i += len;
        } else {
            i += 1;
        }
    }
    out
}
