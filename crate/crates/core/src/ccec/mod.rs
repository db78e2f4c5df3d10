//! Coupling constrained Eulerian cycles on degree-(2,2) digraphs.

mod cnf;
mod gadget;

pub use cnf::{lit_value, mask_to_assignment, parse_dimacs, Cnf, Lit};
pub use gadget::{from_cnf, CLAUSE_TEMPLATE};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexState {
    /// in1 → out1, in2 → out2
    Straight,
    /// in1 → out2, in2 → out1
    Crossing,
}

impl VertexState {
    pub fn flipped(self) -> Self {
        match self {
            VertexState::Straight => VertexState::Crossing,
            VertexState::Crossing => VertexState::Straight,
        }
    }

    /// Out-slot taken when entering through `in_slot`.
    pub fn route(self, in_slot: u8) -> u8 {
        match self {
            VertexState::Straight => in_slot,
            VertexState::Crossing => 1 - in_slot,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    Free,
    /// Signed 1-based variable index.
    Literal(i32),
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub label: VertexLabel,
}

/// Port slots are 0 (in1/out1) and 1 (in2/out2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: (usize, u8),
    pub to: (usize, u8),
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcecInstance {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub partitions: Vec<Vec<usize>>,
    pub initial: Vec<VertexState>,
}

pub type GraphState = Vec<VertexState>;

/// Indices of flipped partitions, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FlipSet(pub Vec<usize>);

impl CcecInstance {
    /// Checks port degrees, partition cover and state length.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut outs = vec![[0u8; 2]; n];
        let mut ins = vec![[0u8; 2]; n];
        for e in &self.edges {
            if e.from.0 >= n || e.to.0 >= n || e.from.1 > 1 || e.to.1 > 1 {
                return Err(Error::Validation("edge references a missing port".into()));
            }
            outs[e.from.0][e.from.1 as usize] += 1;
            ins[e.to.0][e.to.1 as usize] += 1;
        }
        if let Some(v) = (0..n).find(|&v| outs[v] != [1, 1] || ins[v] != [1, 1]) {
            return Err(Error::Validation(format!("vertex {} does not have degree (2,2)", self.vertices[v].name)));
        }
        let mut owner = vec![usize::MAX; n];
        for (p, part) in self.partitions.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::Validation(format!("partition {p} is empty")));
            }
            for &v in part {
                if v >= n || owner[v] != usize::MAX {
                    return Err(Error::Validation(format!("vertex {v} is missing or in two partitions")));
                }
                owner[v] = p;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Validation("partitions do not cover all vertices".into()));
        }
        if self.initial.len() != n {
            return Err(Error::Validation("initial state has the wrong length".into()));
        }
        Ok(())
    }

    /// Weak connectivity of the underlying graph, ignoring states.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.from.0, e.to.0);
        }
        uf.components == 1
    }

    /// `in_edge[v][slot]` and `out_edge[v][slot]`.
    fn port_edges(&self) -> (Vec<[usize; 2]>, Vec<[usize; 2]>) {
        let n = self.vertices.len();
        let mut ins = vec![[usize::MAX; 2]; n];
        let mut outs = vec![[usize::MAX; 2]; n];
        for (i, e) in self.edges.iter().enumerate() {
            ins[e.to.0][e.to.1 as usize] = i;
            outs[e.from.0][e.from.1 as usize] = i;
        }
        (ins, outs)
    }

    pub fn apply_flips(&self, flips: &FlipSet) -> GraphState {
        let mut s = self.initial.clone();
        for &p in &flips.0 {
            for &v in &self.partitions[p] {
                s[v] = s[v].flipped();
            }
        }
        s
    }

    pub fn partition_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.vertices.len()];
        for (p, part) in self.partitions.iter().enumerate() {
            for &v in part {
                owner[v] = p;
            }
        }
        owner
    }
}

/// Edge-disjoint cycles under `state`, as edge index lists. Cycles are started
/// from unvisited in-ports in order (vertex 0 in1, vertex 0 in2, vertex 1 in1, ...).
pub fn cycles(inst: &CcecInstance, state: &[VertexState]) -> Result<Vec<Vec<usize>>> {
    inst.validate()?;
    if state.len() != inst.vertices.len() {
        return Err(Error::Validation("state has the wrong length".into()));
    }
    Ok(cycles_unchecked(inst, state))
}

fn cycles_unchecked(inst: &CcecInstance, state: &[VertexState]) -> Vec<Vec<usize>> {
    let (ins, outs) = inst.port_edges();
    let mut seen = vec![false; inst.edges.len()];
    let mut out = Vec::new();
    for start in ins.iter().flatten().copied() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            cyc.push(e);
            let (v, slot) = inst.edges[e].to;
            e = outs[v][state[v].route(slot) as usize];
        }
        out.push(cyc);
    }
    out
}

pub fn is_eulerian(inst: &CcecInstance, state: &[VertexState]) -> Result<bool> {
    Ok(cycles(inst, state)?.len() == 1)
}

/// Options for [`solve_with`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Upper bound on flip combinations that may be enumerated.
    pub cap: u128,
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: 1 << 24, parallel: false }
    }
}

pub fn solve(inst: &CcecInstance) -> Result<Option<FlipSet>> {
    solve_with(inst, SolveOptions::default())
}

/// Searches flip sets of the multi-vertex partitions in increasing mask order;
/// single-vertex partitions are settled per mask by merging cycles greedily,
/// which is exact because flipping a vertex visited by two distinct cycles
/// merges exactly those two cycles.
pub fn solve_with(inst: &CcecInstance, opts: SolveOptions) -> Result<Option<FlipSet>> {
    inst.validate()?;
    let (multi, single): (Vec<usize>, Vec<usize>) =
        (0..inst.partitions.len()).partition(|&p| inst.partitions[p].len() > 1);
    let needed = combos(multi.len());
    if needed > opts.cap {
        return Err(Error::Cap { needed, cap: opts.cap });
    }
    if inst.edges.is_empty() {
        return Ok(None);
    }
    let (ins, _) = inst.port_edges();
    let eval = |mask: u64| -> Option<FlipSet> {
        let mut flips: Vec<usize> =
            multi.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &p)| p).collect();
        let state = inst.apply_flips(&FlipSet(flips.clone()));
        let cyc = cycles_unchecked(inst, &state);
        let mut of_edge = vec![0; inst.edges.len()];
        for (c, es) in cyc.iter().enumerate() {
            for &e in es {
                of_edge[e] = c;
            }
        }
        let mut uf = UnionFind::new(cyc.len());
        for &p in &single {
            let v = inst.partitions[p][0];
            if uf.union(of_edge[ins[v][0]], of_edge[ins[v][1]]) {
                flips.push(p);
            }
        }
        flips.sort_unstable();
        (uf.components == 1).then_some(FlipSet(flips))
    };
    let total = needed as u64;
    Ok(if opts.parallel {
        (0..total).into_par_iter().map(eval).find_first(Option::is_some).flatten()
    } else {
        (0..total).find_map(eval)
    })
}

/// Plain 2^m search over every partition; reference for [`solve`].
pub fn solve_exhaustive(inst: &CcecInstance, cap: u128) -> Result<Option<FlipSet>> {
    inst.validate()?;
    let m = inst.partitions.len();
    let needed = combos(m);
    if needed > cap {
        return Err(Error::Cap { needed, cap });
    }
    Ok((0..needed as u64).find_map(|mask| {
        let flips = FlipSet((0..m).filter(|i| (mask >> i) & 1 == 1).collect());
        (cycles_unchecked(inst, &inst.apply_flips(&flips)).len() == 1).then_some(flips)
    }))
}

fn combos(k: usize) -> u128 {
    if k >= 127 { u128::MAX } else { 1u128 << k }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    pub components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// True if a merge happened.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}

/// Graphviz rendering; vertex annotations show the state and partition.
pub fn ccec_to_dot(inst: &CcecInstance, state: &[VertexState]) -> String {
    let owner = inst.partition_of();
    let mut s = String::from("digraph ccec {\n  node [shape=circle];\n");
    for (v, vx) in inst.vertices.iter().enumerate() {
        let st = match state.get(v) {
            Some(VertexState::Crossing) => "X",
            _ => "=",
        };
        let _ = writeln!(s, "  v{v} [label=\"{}\\n{st} p{}\"];", vx.name, owner.get(v).map_or(0, |p| p + 1));
    }
    for e in &inst.edges {
        let label = e.label.as_deref().map(|l| format!(", label=\"{l}\"")).unwrap_or_default();
        let _ = writeln!(
            s,
            "  v{} -> v{} [taillabel=\"o{}\", headlabel=\"i{}\"{label}];",
            e.from.0,
            e.to.0,
            e.from.1 + 1,
            e.to.1 + 1
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> CcecInstance {
        let e = |a: usize, s: u8, b: usize, t: u8| Edge { from: (a, s), to: (b, t), label: None };
        CcecInstance {
            vertices: (0..2).map(|i| Vertex { name: format!("v{i}"), label: VertexLabel::Free }).collect(),
            edges: vec![e(0, 0, 1, 0), e(1, 0, 0, 0), e(0, 1, 1, 1), e(1, 1, 0, 1)],
            partitions: vec![vec![0], vec![1]],
            initial: vec![VertexState::Straight; 2],
        }
    }

    #[test]
    fn two_vertex_cycles() {
        let g = two_vertex();
        let straight = cycles(&g, &g.initial).unwrap();
        assert_eq!(straight.len(), 2);
        let crossing = vec![VertexState::Crossing, VertexState::Straight];
        assert_eq!(cycles(&g, &crossing).unwrap().len(), 1);
        assert!(is_eulerian(&g, &crossing).unwrap());
        let total: usize = cycles(&g, &[VertexState::Crossing; 2]).unwrap().iter().map(Vec::len).sum();
        assert_eq!(total, g.edges.len());
        assert_eq!(solve(&g).unwrap(), Some(FlipSet(vec![0])));
        assert_eq!(solve_exhaustive(&g, 16).unwrap(), Some(FlipSet(vec![0])));
    }

    #[test]
    fn already_eulerian_needs_no_flips() {
        let mut g = two_vertex();
        g.initial[1] = VertexState::Crossing;
        assert_eq!(solve(&g).unwrap(), Some(FlipSet(vec![])));
    }

    #[test]
    fn validation_errors() {
        let mut g = two_vertex();
        g.edges.pop();
        assert!(matches!(cycles(&g, &g.initial.clone()), Err(Error::Validation(_))));
        let mut g = two_vertex();
        g.partitions = vec![vec![0, 1], vec![1]];
        assert!(g.validate().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let mut g = two_vertex();
        g.partitions = vec![vec![0, 1]];
        let err = solve_with(&g, SolveOptions { cap: 1, parallel: false }).unwrap_err();
        assert_eq!(err, Error::Cap { needed: 2, cap: 1 });
    }
}
