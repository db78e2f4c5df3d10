//! BWT graph of an inference result and the single-string decision built on it.

use serde::{Deserialize, Serialize};

use crate::bcssila::{infer, InferenceResult, SwapInterval};
use crate::ccec::{solve_with, CcecInstance, Edge, SolveOptions, Vertex, VertexLabel, VertexState};
use crate::cyclic::{ibwt, sorted_symbols, standard_permutation, CyclicWord, Symbol};
use crate::error::Result;
use crate::extnat::LcpArray;
use crate::text::render;

/// Contracted CCEC instance of a BWT with swap intervals.
///
/// Vertex t merges the BWT positions `merged[t] = (j, j')` of one swap pair;
/// in-slot 0 receives the a-edge and in-slot 1 the b-edge, out-slot 0 leaves
/// from j and out-slot 1 from j'. Partition p holds the pairs of `swaps[p]`.
/// With every vertex Straight the cycles are those of the unswapped BWT.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BwtGraph {
    pub instance: CcecInstance,
    pub merged: Vec<(usize, usize)>,
    pub swaps: Vec<SwapInterval>,
    /// Label sequences of Ψ-cycles that touch no swap position.
    pub isolated: Vec<String>,
    /// Uncontracted G_V: (from position, to position, label).
    pub raw_edges: Vec<(usize, usize, String)>,
}

fn occurrence_labels(hat: &[Symbol]) -> Vec<String> {
    let mut seen = [0usize; 256];
    hat.iter()
        .map(|&c| {
            seen[c as usize] += 1;
            format!("{}{}", render(&[c]), seen[c as usize])
        })
        .collect()
}

pub fn bwt_graph(result: &InferenceResult) -> Result<BwtGraph> {
    let v = &result.bwt;
    let psi = standard_permutation(v)?.0;
    let hat = sorted_symbols(v);
    let labels = occurrence_labels(&hat);

    let mut merged = Vec::new();
    let mut partitions = Vec::new();
    // slot_of[position] = (vertex, slot) for merged positions
    let mut slot_of = vec![None; v.len()];
    for sw in &result.swaps {
        let half = sw.mid() - sw.lo;
        let mut part = Vec::with_capacity(half);
        for q in 0..half {
            let t = merged.len();
            let (j, j2) = (sw.lo + q, sw.mid() + q);
            // the position currently holding 'a' takes the a-edge (in-slot 0)
            let (ja, jb) = if v[j] <= v[j2] { (j, j2) } else { (j2, j) };
            slot_of[ja] = Some((t, 0u8));
            slot_of[jb] = Some((t, 1u8));
            merged.push((j, j2));
            part.push(t);
        }
        partitions.push(part);
    }

    let mut edges = Vec::new();
    for (t, &(j, j2)) in merged.iter().enumerate() {
        for start in [j, j2] {
            // a walk entering a position leaves from it, so slots pair up
            let from = slot_of[start].expect("merged position");
            debug_assert_eq!(from.0, t);
            let mut label = String::new();
            let mut p = start;
            loop {
                label.push_str(&labels[p]);
                p = psi[p];
                if let Some(to) = slot_of[p] {
                    edges.push(Edge { from, to, label: Some(label) });
                    break;
                }
            }
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));

    let mut isolated = Vec::new();
    let mut seen = vec![false; v.len()];
    for s in 0..v.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            cyc.push(p);
            p = psi[p];
        }
        if cyc.iter().all(|&p| slot_of[p].is_none()) {
            isolated.push(cyc.iter().map(|&p| labels[p].as_str()).collect());
        }
    }

    let raw_edges = (0..v.len()).map(|i| (i, psi[i], labels[i].clone())).collect();
    let vertices = merged
        .iter()
        .map(|&(j, j2)| Vertex { name: format!("{{{j},{j2}}}"), label: VertexLabel::Free })
        .collect::<Vec<_>>();
    let initial = vec![VertexState::Straight; vertices.len()];
    let instance = CcecInstance { vertices, edges, partitions, initial };
    Ok(BwtGraph { instance, merged, swaps: result.swaps.clone(), isolated, raw_edges })
}

/// Keeps only the swaps whose flag is set.
pub fn restrict_swaps(result: &InferenceResult, keep: &[bool]) -> InferenceResult {
    let swaps = result.swaps.iter().zip(keep).filter(|(_, &k)| k).map(|(s, _)| *s).collect();
    InferenceResult { bwt: result.bwt.clone(), swaps }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SingleOutcome {
    Invalid,
    NoSingle,
    Single { bwt: Vec<Symbol>, word: CyclicWord },
}

pub fn single_string_decide(lcp: &LcpArray, opts: SolveOptions) -> Result<SingleOutcome> {
    match infer(lcp) {
        None => Ok(SingleOutcome::Invalid),
        Some(result) => single_string_from(&result, opts),
    }
}

/// Single-string search restricted to the swaps of `result`.
pub fn single_string_from(result: &InferenceResult, opts: SolveOptions) -> Result<SingleOutcome> {
    let g = bwt_graph(result)?;
    let selection = if g.merged.is_empty() {
        (g.isolated.len() == 1).then(Vec::new)
    } else if !g.isolated.is_empty() {
        None
    } else {
        solve_with(&g.instance, opts)?.map(|flips| {
            let mut sel = vec![false; result.swaps.len()];
            for p in flips.0 {
                sel[p] = true;
            }
            sel
        })
    };
    let Some(sel) = selection else { return Ok(SingleOutcome::NoSingle) };
    let bwt = result.apply_selection(&sel);
    let w = ibwt(&bwt)?;
    debug_assert_eq!(w.words().len(), 1);
    Ok(SingleOutcome::Single { bwt, word: w.words()[0].clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcssila::infer;
    use crate::lcp;
    use crate::text::parse;

    fn edge_table(g: &BwtGraph) -> Vec<(String, String, String)> {
        let name = |v: usize| g.instance.vertices[v].name.clone();
        let mut t: Vec<_> = g
            .instance
            .edges
            .iter()
            .map(|e| (name(e.from.0), name(e.to.0), e.label.clone().unwrap()))
            .collect();
        t.sort();
        t
    }

    #[test]
    fn contracted_edge_table() {
        let l = lcp![2, 5, 1, 4, 3, 4, 2, 0, 3, 2, 5, 3, 1];
        let r = infer(&l).unwrap();
        assert_eq!(r.rendered(), "b[ab][aabb]baa[ab]aa");
        let g = bwt_graph(&r).unwrap();
        assert_eq!(g.merged, [(1, 2), (3, 5), (4, 6), (10, 11)]);
        assert!(g.isolated.is_empty());
        let want = [
            ("{1,2}", "{3,5}", "a2"),
            ("{1,2}", "{4,6}", "a3"),
            ("{10,11}", "{3,5}", "b3"),
            ("{10,11}", "{4,6}", "b4"),
            ("{3,5}", "{1,2}", "a4b1a1"),
            ("{3,5}", "{10,11}", "a6"),
            ("{4,6}", "{1,2}", "a5b2"),
            ("{4,6}", "{10,11}", "a7b5a8b6"),
        ];
        let want: Vec<_> = want.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
        assert_eq!(edge_table(&g), want);
        assert_eq!(g.instance.partitions, [vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn straight_state_matches_bwt_cycles() {
        let r = infer(&lcp![2, 5, 1, 4, 3, 4, 2, 0, 3, 2, 5, 3, 1]).unwrap();
        let g = bwt_graph(&r).unwrap();
        let words = ibwt(&r.bwt).unwrap().words().len();
        let cyc = crate::ccec::cycles(&g.instance, &g.instance.initial).unwrap();
        assert_eq!(cyc.len() + g.isolated.len(), words);
    }

    #[test]
    fn two_word_multiset_graph() {
        let r = infer(&lcp![1, 4, 0, 2, 1, 3]).unwrap();
        let g = bwt_graph(&r).unwrap();
        assert_eq!(g.merged.len(), 1);
        assert_eq!(g.instance.partitions, [vec![0]]);
    }

    #[test]
    fn no_swaps() {
        let r = InferenceResult { bwt: parse("bbabbaa").unwrap(), swaps: vec![] };
        let g = bwt_graph(&r).unwrap();
        assert!(g.merged.is_empty());
        assert_eq!(g.isolated.len(), 1);
    }

    #[test]
    fn decide_examples() {
        let opts = SolveOptions::default();
        match single_string_decide(&lcp![1, 4, 0, 2, 1, 3], opts).unwrap() {
            SingleOutcome::Single { bwt, word } => {
                assert_eq!(render(&bwt), "bbabbaa");
                assert_eq!(word.len(), 7);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(single_string_decide(&lcp![w, 0], opts).unwrap(), SingleOutcome::NoSingle);
        assert_eq!(single_string_decide(&lcp![1], opts).unwrap(), SingleOutcome::Invalid);
    }
}
