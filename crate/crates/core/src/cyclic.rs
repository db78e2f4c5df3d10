//! Cyclic words, multisets of them, and the BWT/IBWT bijection.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::extnat::{ExtNat, LcpArray};

/// Alphabet symbol as a small index: 0 ↦ 'a', 1 ↦ 'b', ...
pub type Symbol = u8;

/// A primitive word stored in its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct CyclicWord {
    symbols: Vec<Symbol>,
}

impl CyclicWord {
    pub fn new(symbols: &[Symbol]) -> Result<Self> {
        canonical_rotation(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn at(&self, i: usize) -> Symbol {
        self.symbols[i % self.symbols.len()]
    }
}

impl TryFrom<Vec<Symbol>> for CyclicWord {
    type Error = Error;

    fn try_from(v: Vec<Symbol>) -> Result<Self> {
        canonical_rotation(&v)
    }
}

impl From<CyclicWord> for Vec<Symbol> {
    fn from(w: CyclicWord) -> Self {
        w.symbols
    }
}

/// Shortest first, then lexicographic.
impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Index of the least rotation (two-pointer minimum-expression scan).
pub fn least_rotation(s: &[Symbol]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest p such that s[i] = s[i+p] for all valid i.
pub fn smallest_period(s: &[Symbol]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail.last().copied().unwrap_or(0)
}

pub fn is_primitive(s: &[Symbol]) -> bool {
    let n = s.len();
    if n == 0 {
        return false;
    }
    let p = smallest_period(s);
    p == n || !n.is_multiple_of(p)
}

pub fn canonical_rotation(word: &[Symbol]) -> Result<CyclicWord> {
    if word.is_empty() {
        return arg("empty word");
    }
    if !is_primitive(word) {
        return Err(Error::Validation(format!(
            "word of length {} is not primitive",
            word.len()
        )));
    }
    Ok(rotate_least(word))
}

fn rotate_least(word: &[Symbol]) -> CyclicWord {
    let r = least_rotation(word);
    let mut symbols = word[r..].to_vec();
    symbols.extend_from_slice(&word[..r]);
    CyclicWord { symbols }
}

/// Multiset of primitive cyclic words, kept sorted so that equality of
/// multisets is equality of word lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<CyclicWord>", into = "Vec<CyclicWord>")]
pub struct CyclicMultiset {
    words: Vec<CyclicWord>,
}

impl From<Vec<CyclicWord>> for CyclicMultiset {
    fn from(mut words: Vec<CyclicWord>) -> Self {
        words.sort();
        CyclicMultiset { words }
    }
}

impl From<CyclicMultiset> for Vec<CyclicWord> {
    fn from(m: CyclicMultiset) -> Self {
        m.words
    }
}

impl CyclicMultiset {
    pub fn new(words: Vec<CyclicWord>) -> Self {
        words.into()
    }

    /// Builds from raw words, canonicalising each one.
    pub fn from_words<S: AsRef<[Symbol]>>(words: &[S]) -> Result<Self> {
        let words = words
            .iter()
            .map(|w| canonical_rotation(w.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(words.into())
    }

    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn total_len(&self) -> usize {
        self.words.iter().map(CyclicWord::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, p: Position) -> &CyclicWord {
        &self.words[p.word_index - 1]
    }

    /// Symbol `t` places after the start of the suffix at `p`.
    pub fn char_at(&self, p: Position, t: usize) -> Symbol {
        self.word(p).at(p.offset + t)
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        self.words.iter().enumerate().flat_map(|(i, w)| {
            (0..w.len()).map(move |offset| Position { word_index: i + 1, offset })
        })
    }

    fn check(&self, p: Position) -> Result<()> {
        if p.word_index == 0 || p.word_index > self.words.len() {
            return arg(format!("word index {} out of range", p.word_index));
        }
        if p.offset >= self.words[p.word_index - 1].len() {
            return arg(format!("offset {} out of range", p.offset));
        }
        Ok(())
    }
}

/// Position ⟨i,p⟩: word index `i` is 1-based, `offset` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub word_index: usize,
    pub offset: usize,
}

impl Position {
    pub fn new(word_index: usize, offset: usize) -> Self {
        Position { word_index, offset }
    }
}

/// Standard permutation: sorted(v)[i] = v[psi[i]].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psi(pub Vec<usize>);

impl Psi {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Disjoint cycles, each starting at its smallest element, in order of that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }
}

pub fn standard_permutation(v: &[Symbol]) -> Result<Psi> {
    if v.is_empty() {
        return arg("empty string");
    }
    Ok(Psi(stable_sort_perm(v)))
}

fn stable_sort_perm(v: &[Symbol]) -> Vec<usize> {
    let mut start = [0usize; 257];
    for &c in v {
        start[c as usize + 1] += 1;
    }
    for c in 0..256 {
        start[c + 1] += start[c];
    }
    let mut psi = vec![0; v.len()];
    for (j, &c) in v.iter().enumerate() {
        psi[start[c as usize]] = j;
        start[c as usize] += 1;
    }
    psi
}

pub fn sorted_symbols(v: &[Symbol]) -> Vec<Symbol> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Ψ-cycles of v read as words (not yet canonically rotated).
pub fn psi_words(v: &[Symbol]) -> Result<(Psi, Vec<Vec<usize>>, Vec<Vec<Symbol>>)> {
    let psi = standard_permutation(v)?;
    let hat = sorted_symbols(v);
    let cycles = psi.cycles();
    let words = cycles.iter().map(|c| c.iter().map(|&i| hat[i]).collect()).collect();
    Ok((psi, cycles, words))
}

pub fn ibwt(v: &[Symbol]) -> Result<CyclicMultiset> {
    let (_, _, words) = psi_words(v)?;
    let words = words
        .iter()
        .map(|w| {
            debug_assert!(is_primitive(w));
            rotate_least(w)
        })
        .collect::<Vec<_>>();
    Ok(words.into())
}

pub fn bwt(w: &CyclicMultiset) -> Result<Vec<Symbol>> {
    let sa = suffix_array(w)?;
    Ok(sa
        .order
        .iter()
        .map(|&p| {
            let word = w.word(p);
            word.at(p.offset + word.len() - 1)
        })
        .collect())
}

fn compare_unchecked(w: &CyclicMultiset, p: Position, q: Position) -> (Ordering, ExtNat) {
    let bound = w.word(p).len() + w.word(q).len();
    for t in 0..bound {
        let (a, b) = (w.char_at(p, t), w.char_at(q, t));
        if a != b {
            return (a.cmp(&b), ExtNat::Fin(t));
        }
    }
    (Ordering::Equal, ExtNat::Omega)
}

/// Lexicographic order of two infinite periodic suffixes.
pub fn compare_cyclic_suffixes(w: &CyclicMultiset, p: Position, q: Position) -> Result<Ordering> {
    w.check(p)?;
    w.check(q)?;
    Ok(compare_unchecked(w, p, q).0)
}

pub fn lcp_of_pair(w: &CyclicMultiset, p: Position, q: Position) -> Result<ExtNat> {
    w.check(p)?;
    w.check(q)?;
    Ok(compare_unchecked(w, p, q).1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffixArray {
    pub order: Vec<Position>,
}

/// Suffix array by prefix doubling over the cyclic successor function.
/// Equal suffixes are ordered by (word_index, offset).
pub fn suffix_array(w: &CyclicMultiset) -> Result<SuffixArray> {
    if w.is_empty() {
        return arg("empty multiset");
    }
    let pos: Vec<Position> = w.positions().collect();
    let n = pos.len();
    let mut base = Vec::with_capacity(w.words().len());
    let mut acc = 0;
    for word in w.words() {
        base.push(acc);
        acc += word.len();
    }
    let mut jump: Vec<usize> = pos
        .iter()
        .map(|p| base[p.word_index - 1] + (p.offset + 1) % w.word(*p).len())
        .collect();
    let mut rank: Vec<usize> = pos.iter().map(|&p| w.char_at(p, 0) as usize).collect();
    let max_len = w.words().iter().map(CyclicWord::len).max().unwrap_or(1);
    let mut idx: Vec<usize> = (0..n).collect();
    let mut span = 1;
    while span < 2 * max_len {
        idx.sort_unstable_by_key(|&g| (rank[g], rank[jump[g]]));
        let mut next = vec![0; n];
        for t in 1..n {
            let (a, b) = (idx[t - 1], idx[t]);
            let same = rank[a] == rank[b] && rank[jump[a]] == rank[jump[b]];
            next[b] = next[a] + usize::from(!same);
        }
        let distinct = next[idx[n - 1]] + 1;
        rank = next;
        jump = jump.iter().map(|&j| jump[j]).collect();
        span *= 2;
        if distinct == n {
            break;
        }
    }
    idx.sort_unstable_by_key(|&g| (rank[g], g));
    Ok(SuffixArray { order: idx.into_iter().map(|g| pos[g]).collect() })
}

/// Comparison-sort suffix array; reference implementation.
pub fn suffix_array_by_comparison(w: &CyclicMultiset) -> Result<SuffixArray> {
    if w.is_empty() {
        return arg("empty multiset");
    }
    let mut order: Vec<Position> = w.positions().collect();
    order.sort_by(|&p, &q| compare_unchecked(w, p, q).0.then(p.cmp(&q)));
    Ok(SuffixArray { order })
}

pub fn lcp_array(w: &CyclicMultiset) -> Result<LcpArray> {
    let sa = suffix_array(w)?;
    Ok(LcpArray::new(
        sa.order.windows(2).map(|pq| compare_unchecked(w, pq[0], pq[1]).1).collect(),
    ))
}

/// LCP array of IBWT(v) computed directly from v, Kasai-style along Ψ.
pub fn lcp_from_bwt(v: &[Symbol]) -> Result<LcpArray> {
    let (_, cycles, words) = psi_words(v)?;
    let n = v.len();
    let mut owner = vec![(0u32, 0u32); n];
    for (c, cyc) in cycles.iter().enumerate() {
        for (t, &i) in cyc.iter().enumerate() {
            owner[i] = (c as u32, t as u32);
        }
    }
    let at = |i: usize, t: usize| {
        let (c, off) = owner[i];
        let word = &words[c as usize];
        word[(off as usize + t) % word.len()]
    };
    let wlen = |i: usize| words[owner[i].0 as usize].len();
    let mut out = vec![ExtNat::Omega; n - 1];
    for cyc in &cycles {
        let mut h = 0usize;
        for &i in cyc {
            if i == 0 {
                h = 0;
                continue;
            }
            let bound = wlen(i - 1) + wlen(i);
            while h < bound && at(i - 1, h) == at(i, h) {
                h += 1;
            }
            out[i - 1] = if h >= bound { ExtNat::Omega } else { ExtNat::Fin(h) };
            h = h.saturating_sub(1);
        }
    }
    Ok(LcpArray::new(out))
}

/// First k symbols of the suffix at sorted position i, spelled via Ψ.
pub fn suffix_via_psi(v: &[Symbol], i: usize, k: usize) -> Result<Vec<Symbol>> {
    let psi = standard_permutation(v)?;
    if i >= v.len() {
        return arg(format!("position {i} out of range"));
    }
    let hat = sorted_symbols(v);
    let mut out = Vec::with_capacity(k);
    let mut j = i;
    for _ in 0..k {
        out.push(hat[j]);
        j = psi.0[j];
    }
    Ok(out)
}
