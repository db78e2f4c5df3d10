//! General-alphabet inference: an acyclic DFA over (Parikh vector, bit vector) states.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::Symbol;
use crate::error::{arg, Error, Result};
use crate::extnat::{ExtNat, LcpArray};
use crate::text::render;

/// ω as a plain integer; sentinels use -1 and -2.
pub const OMEGA: i64 = i64::MAX;

fn as_int(e: ExtNat) -> i64 {
    match e {
        ExtNat::Fin(x) => x as i64,
        ExtNat::Omega => OMEGA,
    }
}

fn pred(x: i64) -> i64 {
    if x == OMEGA { OMEGA } else { x - 1 }
}

/// The c-interval [lo..hi) and the shifted array L_c with its sentinels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharArray {
    pub lo: usize,
    pub hi: usize,
    pub values: Vec<i64>,
}

impl CharArray {
    /// |L|_c, the number of occurrences of c.
    pub fn count(&self) -> usize {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterArrays {
    pub sigma: usize,
    /// L[0..=n] with L[0] = -1 and L[n] = -2.
    pub global: Vec<i64>,
    pub chars: Vec<CharArray>,
}

impl CharacterArrays {
    pub fn n(&self) -> usize {
        self.global.len() - 1
    }

    pub fn parikh(&self) -> Vec<usize> {
        self.chars.iter().map(CharArray::count).collect()
    }
}

/// Alphabet size implied by the zeros of an LCP array.
pub fn implied_sigma(lcp: &LcpArray) -> usize {
    lcp.zeros() + 1
}

pub fn character_arrays(lcp: &LcpArray, sigma: usize) -> Result<CharacterArrays> {
    if lcp.zeros() + 1 != sigma {
        return Err(Error::Instance(format!(
            "array has {} zeros but alphabet size {sigma} needs {}",
            lcp.zeros(),
            sigma.saturating_sub(1)
        )));
    }
    if sigma > 64 {
        return arg("alphabet larger than 64 symbols");
    }
    let n = lcp.text_len();
    let mut global = Vec::with_capacity(n + 1);
    global.push(-1);
    global.extend(lcp.entries.iter().map(|&e| as_int(e)));
    global.push(-2);
    let mut cuts = vec![0];
    cuts.extend((1..n).filter(|&j| global[j] == 0));
    cuts.push(n);
    let chars = cuts
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let mut values = vec![-1];
            values.extend(global[lo + 1..hi].iter().map(|&x| pred(x)));
            values.push(-2);
            CharArray { lo, hi, values }
        })
        .collect();
    Ok(CharacterArrays { sigma, global, chars })
}

/// Reference prefix-consistency check, independent of the automaton.
pub fn is_prefix_consistent(s: &[Symbol], ctx: &CharacterArrays) -> Result<bool> {
    let n = ctx.n();
    if s.len() > n {
        return arg(format!("prefix of length {} exceeds n = {n}", s.len()));
    }
    if let Some(&c) = s.iter().find(|&&c| c as usize >= ctx.sigma) {
        return arg(format!("symbol {c} outside alphabet of size {}", ctx.sigma));
    }
    let k = s.len();
    let range_min = |from: usize, to: usize| ctx.global[from..=to].iter().copied().min().unwrap();
    for (c, ch) in ctx.chars.iter().enumerate() {
        let occ: Vec<usize> = (0..k).filter(|&j| s[j] as usize == c).collect();
        if occ.len() > ch.count() {
            return Ok(false);
        }
        for (i, w) in occ.windows(2).enumerate() {
            if ch.values[i + 1] != range_min(w[0] + 1, w[1]) {
                return Ok(false);
            }
        }
        let t = occ.len();
        if t < ch.count() {
            let from = occ.last().map_or(0, |&h| h + 1);
            if from <= k && ch.values[t] > range_min(from, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DfaState {
    pub p: Vec<usize>,
    pub b: Vec<u8>,
}

impl DfaState {
    pub fn initial(sigma: usize) -> Self {
        DfaState { p: vec![0; sigma], b: vec![0; sigma] }
    }

    pub fn depth(&self) -> usize {
        self.p.iter().sum()
    }

    /// `[1,0]|[1,0]`
    pub fn label(&self) -> String {
        let j = |v: Vec<String>| v.join(",");
        format!(
            "[{}]|[{}]",
            j(self.p.iter().map(|x| x.to_string()).collect()),
            j(self.b.iter().map(|x| x.to_string()).collect())
        )
    }
}

/// Appends c to any prefix represented by `state`; `None` if the result is inconsistent.
pub fn extend_state(state: &DfaState, c: Symbol, ctx: &CharacterArrays) -> Option<DfaState> {
    let c = c as usize;
    let k = state.depth();
    if c >= ctx.sigma || k >= ctx.n() {
        return None;
    }
    let t = state.p[c];
    if t == ctx.chars[c].count() || state.b[c] != 0 {
        return None;
    }
    let next = ctx.global[k + 1];
    let mut out = state.clone();
    out.p[c] += 1;
    let want = ctx.chars[c].values[t + 1];
    out.b[c] = match want.cmp(&next) {
        std::cmp::Ordering::Greater => return None,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => 1,
    };
    for d in (0..ctx.sigma).filter(|&d| d != c) {
        let bound = ctx.chars[d].values[state.p[d]];
        match next.cmp(&bound) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => out.b[d] = 0,
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(out)
}

/// Layered acyclic automaton; only states on an initial→final path are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssilaDfa {
    pub sigma: usize,
    pub n: usize,
    pub states: Vec<DfaState>,
    /// Outgoing transitions per state, sorted by symbol.
    pub transitions: Vec<Vec<(Symbol, usize)>>,
    pub layers: Vec<Vec<usize>>,
    pub initial: Option<usize>,
    pub accepting: Option<usize>,
    /// States built by the forward sweep but unable to reach the final state,
    /// with their creation numbers (1-based, initial state is 1).
    pub pruned: Vec<(usize, DfaState)>,
    pub created: usize,
}

pub fn build_dfa(lcp: &LcpArray, sigma: usize) -> Result<CssilaDfa> {
    let ctx = character_arrays(lcp, sigma)?;
    Ok(build_dfa_from(&ctx))
}

pub fn build_dfa_from(ctx: &CharacterArrays) -> CssilaDfa {
    let (sigma, n) = (ctx.sigma, ctx.n());
    let mut states = vec![DfaState::initial(sigma)];
    let mut edges: Vec<Vec<(Symbol, usize)>> = vec![vec![]];
    let mut layers = vec![vec![0usize]];
    for _ in 0..n {
        let mut index: HashMap<DfaState, usize> = HashMap::new();
        let mut layer = Vec::new();
        for &u in layers.last().unwrap() {
            for c in 0..sigma as Symbol {
                let Some(next) = extend_state(&states[u], c, ctx) else { continue };
                let id = *index.entry(next).or_insert_with_key(|k| {
                    states.push(k.clone());
                    edges.push(vec![]);
                    layer.push(states.len() - 1);
                    states.len() - 1
                });
                edges[u].push((c, id));
            }
        }
        layers.push(layer);
    }
    let goal = DfaState { p: ctx.parikh(), b: vec![0; sigma] };
    let accepting = layers[n].iter().copied().find(|&u| states[u] == goal);
    let mut alive = vec![false; states.len()];
    if let Some(f) = accepting {
        alive[f] = true;
        for layer in layers[..n].iter().rev() {
            for &u in layer {
                alive[u] = edges[u].iter().any(|&(_, v)| alive[v]);
            }
        }
    }
    let mut remap = vec![usize::MAX; states.len()];
    let mut kept = Vec::new();
    let mut pruned = Vec::new();
    for (u, st) in states.iter().enumerate() {
        if alive[u] {
            remap[u] = kept.len();
            kept.push(st.clone());
        } else {
            pruned.push((u + 1, st.clone()));
        }
    }
    let transitions = (0..states.len())
        .filter(|&u| alive[u])
        .map(|u| edges[u].iter().filter(|&&(_, v)| alive[v]).map(|&(c, v)| (c, remap[v])).collect())
        .collect();
    let layers = layers
        .iter()
        .map(|l| l.iter().filter(|&&u| alive[u]).map(|&u| remap[u]).collect())
        .collect();
    CssilaDfa {
        sigma,
        n,
        created: states.len(),
        states: kept,
        transitions,
        layers,
        initial: accepting.map(|_| 0),
        accepting: accepting.map(|f| remap[f]),
        pruned,
    }
}

/// Number of accepted strings, saturating at u128::MAX.
pub fn dfa_count(dfa: &CssilaDfa) -> u128 {
    let Some(f) = dfa.accepting else { return 0 };
    let mut paths = vec![0u128; dfa.states.len()];
    paths[f] = 1;
    for layer in dfa.layers[..dfa.n].iter().rev() {
        for &u in layer {
            paths[u] = dfa.transitions[u]
                .iter()
                .fold(0u128, |acc, &(_, v)| acc.saturating_add(paths[v]));
        }
    }
    dfa.initial.map_or(0, |i| paths[i])
}

/// Accepted strings in lexicographic order, at most `limit` of them.
pub fn dfa_enumerate(dfa: &CssilaDfa, limit: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let Some(init) = dfa.initial else { return out };
    let mut word = Vec::with_capacity(dfa.n);
    let mut stack: Vec<(usize, usize)> = vec![(init, 0)];
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if out.len() >= limit {
            break;
        }
        if word.len() == dfa.n {
            out.push(word.clone());
            stack.pop();
            word.pop();
            continue;
        }
        if let Some(&(c, v)) = dfa.transitions[u].get(*next) {
            *next += 1;
            word.push(c);
            stack.push((v, 0));
        } else {
            stack.pop();
            word.pop();
        }
    }
    out
}

pub fn dfa_accepts(dfa: &CssilaDfa, s: &[Symbol]) -> bool {
    if s.len() != dfa.n {
        return false;
    }
    let Some(mut u) = dfa.initial else { return false };
    for &c in s {
        match dfa.transitions[u].iter().find(|&&(d, _)| d == c) {
            Some(&(_, v)) => u = v,
            None => return false,
        }
    }
    Some(u) == dfa.accepting
}

/// Graphviz rendering of the pruned automaton, one rank per layer.
pub fn dfa_to_dot(dfa: &CssilaDfa) -> String {
    let mut s = String::from("digraph cssila {\n  rankdir=LR;\n  node [shape=box];\n");
    for (k, layer) in dfa.layers.iter().enumerate() {
        let _ = writeln!(s, "  {{ rank=same; // depth {k}");
        for &u in layer {
            let shape = if Some(u) == dfa.accepting { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "    s{u} [label=\"{}\"{shape}];", dfa.states[u].label());
        }
        s.push_str("  }\n");
    }
    for (u, out) in dfa.transitions.iter().enumerate() {
        for &(c, v) in out {
            let _ = writeln!(s, "  s{u} -> s{v} [label=\"{}\"];", render(&[c]));
        }
    }
    s.push_str("}\n");
    s
}
