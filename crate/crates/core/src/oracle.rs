//! Brute-force ground truth: LCP arrays of every problem variant and exhaustive solution search.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic::{ibwt, is_primitive, lcp_array, lcp_from_bwt, CyclicMultiset, Symbol};
use crate::error::{arg, Error, Result};
use crate::extnat::{ExtNat, LcpArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VariantKind {
    CyclicSet,
    CyclicSingle,
    TerminatedSingle,
    OpenSingle,
    TerminatedSet,
    OpenSet,
}

impl VariantKind {
    pub fn is_set(self) -> bool {
        matches!(self, VariantKind::CyclicSet | VariantKind::TerminatedSet | VariantKind::OpenSet)
    }
}

/// A problem variant such as BTSILA or OSSILA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variant {
    pub kind: VariantKind,
    pub binary: bool,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use VariantKind::*;
        let (t, s) = match self.kind {
            CyclicSet => ("C", "S"),
            CyclicSingle => ("C", ""),
            TerminatedSingle => ("T", ""),
            OpenSingle => ("O", ""),
            TerminatedSet => ("T", "S"),
            OpenSet => ("O", "S"),
        };
        write!(f, "{}{t}{s}SILA", if self.binary { "B" } else { "" })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use VariantKind::*;
        let up = s.to_ascii_uppercase();
        let bad = || Error::Parse(format!("unknown variant `{s}`"));
        let rest = up.strip_suffix("SILA").ok_or_else(bad)?;
        let (binary, rest) = match rest.strip_prefix('B') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let kind = match rest {
            "C" => CyclicSingle,
            "CS" => CyclicSet,
            "T" => TerminatedSingle,
            "TS" => TerminatedSet,
            "O" => OpenSingle,
            "OS" => OpenSet,
            _ => return Err(bad()),
        };
        Ok(Variant { kind, binary })
    }
}

/// Input to [`lcp_variant`]: one string or an ordered collection of strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OracleInput {
    Single(Vec<Symbol>),
    Set(Vec<Vec<Symbol>>),
}

fn lcp_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// LCP array of a pool of finite sequences after sorting them.
fn pooled_lcp(mut pool: Vec<(&[i64], usize)>) -> LcpArray {
    pool.sort();
    LcpArray::new(pool.windows(2).map(|w| ExtNat::Fin(lcp_len(w[0].0, w[1].0))).collect())
}

/// Letters shifted above the terminators; terminator i becomes i - |set|.
fn with_terminators(set: &[Vec<Symbol>]) -> Vec<Vec<i64>> {
    let k = set.len() as i64;
    set.iter()
        .enumerate()
        .map(|(i, s)| s.iter().map(|&c| c as i64).chain([i as i64 - k]).collect())
        .collect()
}

/// Joint LCP array of all suffixes of s_1$_1, ..., s_k$_k with $_1 < ... < $_k < letters.
pub fn lcp_terminated_set(set: &[Vec<Symbol>]) -> LcpArray {
    let t = with_terminators(set);
    pooled_lcp(t.iter().enumerate().flat_map(|(i, s)| (0..s.len()).map(move |j| (&s[j..], i))).collect())
}

/// LCP array of all suffixes of the single string s_1$_1 s_2$_2 ... s_k$_k.
pub fn lcp_terminated_concat(set: &[Vec<Symbol>]) -> LcpArray {
    let cat: Vec<i64> = with_terminators(set).concat();
    pooled_lcp((0..cat.len()).map(|j| (&cat[j..], 0)).collect())
}

/// Joint LCP array of the non-empty suffixes of the strings; a suffix that is a
/// prefix of another sorts first, equal suffixes by string index.
pub fn lcp_open_set(set: &[Vec<Symbol>]) -> LcpArray {
    let t: Vec<Vec<i64>> = set.iter().map(|s| s.iter().map(|&c| c as i64).collect()).collect();
    pooled_lcp(t.iter().enumerate().flat_map(|(i, s)| (0..s.len()).map(move |j| (&s[j..], i))).collect())
}

pub fn lcp_terminated(s: &[Symbol]) -> LcpArray {
    lcp_terminated_set(&[s.to_vec()])
}

pub fn lcp_open(s: &[Symbol]) -> LcpArray {
    lcp_open_set(&[s.to_vec()])
}

/// LCP array of a single primitive cyclic string.
pub fn lcp_cyclic_single(s: &[Symbol]) -> Result<LcpArray> {
    if !is_primitive(s) {
        return Err(Error::Argument("cyclic single-string input must be primitive".into()));
    }
    lcp_array(&CyclicMultiset::from_words(&[s])?)
}

pub fn lcp_variant(input: &OracleInput, kind: VariantKind) -> Result<LcpArray> {
    use VariantKind::*;
    match (input, kind) {
        (OracleInput::Single(s), CyclicSingle) => lcp_cyclic_single(s),
        (OracleInput::Single(s), TerminatedSingle) => Ok(lcp_terminated(s)),
        (OracleInput::Single(s), OpenSingle) if !s.is_empty() => Ok(lcp_open(s)),
        (OracleInput::Set(set), CyclicSet) => lcp_array(&CyclicMultiset::from_words(set)?),
        (OracleInput::Set(set), TerminatedSet) if !set.is_empty() => Ok(lcp_terminated_set(set)),
        (OracleInput::Set(set), OpenSet) if set.iter().any(|s| !s.is_empty()) => Ok(lcp_open_set(set)),
        _ => arg(format!("input does not fit variant {kind:?}")),
    }
}

/// Upper bound on candidates a brute-force search may visit.
pub const DEFAULT_GUARD: u128 = 10_000_000;

fn check_guard(needed: u128, guard: u128) -> Result<()> {
    if needed > guard {
        return Err(Error::Cap { needed, cap: guard });
    }
    Ok(())
}

fn pow(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// All strings of length n over [0, sigma), lexicographic.
pub fn all_strings(n: usize, sigma: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = pow(sigma, n);
    (0..total).map(move |mut x| {
        let mut s = vec![0; n];
        for i in (0..n).rev() {
            s[i] = (x % sigma as u128) as Symbol;
            x /= sigma as u128;
        }
        s
    })
}

/// Strings of length n whose symbol set is exactly [0, k) for some k: one
/// representative per order-isomorphism class (the LCP arrays of terminated
/// and open strings depend only on this class).
pub fn order_patterns(n: usize) -> Vec<Vec<Symbol>> {
    fn rec(n: usize, cur: &mut Vec<Symbol>, used: &mut Vec<u32>, out: &mut Vec<Vec<Symbol>>) {
        let max = used.iter().rposition(|&c| c > 0).map_or(0, |m| m + 1);
        let missing = (0..max).filter(|&c| used[c] == 0).count();
        if n - cur.len() < missing {
            return;
        }
        if cur.len() == n {
            if missing == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..n.max(1) {
            cur.push(c as Symbol);
            used[c] += 1;
            rec(n, cur, used, out);
            used[c] -= 1;
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![0; n.max(1)], &mut out);
    out
}

/// Compositions of `total` into parts of at least `min_part`.
pub fn compositions(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min.max(1)..=left {
            cur.push(p);
            rec(left - p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, min_part, &mut Vec::new(), &mut out);
    out
}

/// Splits `s` into consecutive pieces with the given lengths.
pub fn split_by(s: &[Symbol], lens: &[usize]) -> Vec<Vec<Symbol>> {
    let mut at = 0;
    lens.iter()
        .map(|&l| {
            let piece = s[at..at + l].to_vec();
            at += l;
            piece
        })
        .collect()
}

/// A solution found by brute force.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Candidate {
    /// Cyclic variants are enumerated through BWT strings.
    Bwt(Vec<Symbol>),
    Word(Vec<Symbol>),
    Set(Vec<Vec<Symbol>>),
}

/// Exact solution set of `lcp` for strings over [0, sigma), in sorted order.
///
/// Cyclic variants enumerate BWT strings v ∈ Σ^n; a CyclicSingle solution is a v
/// whose inverse BWT is one word. Set variants enumerate ordered string lists.
pub fn brute_force_solutions(
    lcp: &LcpArray,
    sigma: usize,
    kind: VariantKind,
    guard: u128,
) -> Result<Vec<Candidate>> {
    use VariantKind::*;
    let len = lcp.len();
    let mut out: Vec<Candidate> = match kind {
        CyclicSet | CyclicSingle => {
            let n = len + 1;
            check_guard(pow(sigma, n), guard)?;
            let strings: Vec<_> = all_strings(n, sigma).collect();
            strings
                .into_par_iter()
                .filter(|v| lcp_from_bwt(v).map(|l| l == *lcp).unwrap_or(false))
                .filter(|v| kind == CyclicSet || ibwt(v).map(|w| w.words().len() == 1).unwrap_or(false))
                .map(Candidate::Bwt)
                .collect()
        }
        TerminatedSingle | OpenSingle => {
            let n = if kind == TerminatedSingle { len } else { len + 1 };
            check_guard(pow(sigma, n), guard)?;
            let strings: Vec<_> = all_strings(n, sigma).collect();
            strings
                .into_par_iter()
                .filter(|s| {
                    let l = if kind == TerminatedSingle { lcp_terminated(s) } else { lcp_open(s) };
                    l == *lcp
                })
                .map(Candidate::Word)
                .collect()
        }
        TerminatedSet | OpenSet => {
            // part sizes are |s_i| + 1 for terminated sets and |s_i| for open sets
            let total = len + 1;
            let comps = compositions(total, 1);
            let chars = |c: &Vec<usize>| if kind == TerminatedSet { total - c.len() } else { total };
            let needed = comps.iter().fold(0u128, |acc, c| acc.saturating_add(pow(sigma, chars(c))));
            check_guard(needed, guard)?;
            comps
                .par_iter()
                .flat_map_iter(|c| {
                    let lens: Vec<usize> =
                        if kind == TerminatedSet { c.iter().map(|p| p - 1).collect() } else { c.clone() };
                    all_strings(chars(c), sigma).filter_map(move |s| {
                        let set = split_by(&s, &lens);
                        let l =
                            if kind == TerminatedSet { lcp_terminated_set(&set) } else { lcp_open_set(&set) };
                        (l == *lcp).then_some(Candidate::Set(set))
                    })
                })
                .collect()
        }
    };
    out.sort();
    Ok(out)
}

/// Maps every cyclic-set LCP array over BWTs of length n to its generating BWTs.
pub fn oracle_table(n: usize, sigma: usize, guard: u128) -> Result<BTreeMap<LcpArray, Vec<Vec<Symbol>>>> {
    check_guard(pow(sigma, n), guard)?;
    let strings: Vec<_> = all_strings(n, sigma).collect();
    let pairs: Vec<(LcpArray, Vec<Symbol>)> =
        strings.into_par_iter().map(|v| (lcp_from_bwt(&v).expect("non-empty"), v)).collect();
    let mut table: BTreeMap<LcpArray, Vec<Vec<Symbol>>> = BTreeMap::new();
    for (l, v) in pairs {
        table.entry(l).or_default().push(v);
    }
    for vs in table.values_mut() {
        vs.sort();
    }
    Ok(table)
}
