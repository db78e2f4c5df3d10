//! 3-SAT to CCEC: clause gadgets, extra variable gadgets and the y vertex on one main cycle.

use super::{CcecInstance, Cnf, Edge, Vertex, VertexLabel, VertexState};
use crate::error::Result;

/// Clause gadget wiring over (L1, F1, L2, F2, L3) = (0..5):
/// (from vertex, out slot, to vertex, in slot). The main cycle enters at
/// L1.in2 and leaves from L3.out2.
pub const CLAUSE_TEMPLATE: [(usize, u8, usize, u8); 9] = [
    (0, 0, 1, 1), // L1.out1 -> F1.in2
    (0, 1, 2, 1), // L1.out2 -> L2.in2
    (1, 0, 3, 0), // F1.out1 -> F2.in1
    (1, 1, 2, 0), // F1.out2 -> L2.in1
    (2, 0, 3, 1), // L2.out1 -> F2.in2
    (2, 1, 4, 1), // L2.out2 -> L3.in2
    (3, 0, 0, 0), // F2.out1 -> L1.in1
    (3, 1, 4, 0), // F2.out2 -> L3.in1
    (4, 0, 1, 0), // L3.out1 -> F1.in1
];

/// Extra gadget over (V1, V2, V3, V4): a bottom chain through the in2/out2
/// ports carries the main cycle, a top ring links the out1/in1 ports.
const EXTRA_TEMPLATE: [(usize, u8, usize, u8); 7] = [
    (0, 1, 1, 1),
    (1, 1, 2, 1),
    (2, 1, 3, 1),
    (0, 0, 1, 0),
    (1, 0, 2, 0),
    (2, 0, 3, 0),
    (3, 0, 0, 0),
];

/// Builds the CCEC instance of a 3-CNF formula.
///
/// Vertex order (vertex number h = index + 1): clause gadgets, the ¬x_i
/// vertices of the extra gadgets, y, then the extra x_i vertices from x_V down
/// to x_1 so that x_1's three get the largest numbers, the middle one largest.
/// Partition order (number k = index + 1): free vertices, x_V down to x_1, {y}.
/// The initial state is the all-false assignment: a literal vertex is
/// Crossing exactly when its literal is true. Free vertices and y start Straight.
pub fn from_cnf(formula: &Cnf) -> Result<CcecInstance> {
    let f = Cnf::new(formula.num_vars, formula.clauses.clone())?;
    let (nc, nv) = (f.clauses.len(), f.num_vars);
    let mut vertices = Vec::new();
    let mut add = |name: String, label: VertexLabel| {
        vertices.push(Vertex { name, label });
        vertices.len() - 1
    };
    let mut clause_ids = Vec::with_capacity(nc);
    for (j, c) in f.clauses.iter().enumerate() {
        let names = ["L1", "F1", "L2", "F2", "L3"];
        let labels = [
            VertexLabel::Literal(c[0]),
            VertexLabel::Free,
            VertexLabel::Literal(c[1]),
            VertexLabel::Free,
            VertexLabel::Literal(c[2]),
        ];
        let ids: Vec<usize> =
            names.iter().zip(labels).map(|(nm, l)| add(format!("c{}.{nm}", j + 1), l)).collect();
        clause_ids.push(ids);
    }
    let v4: Vec<usize> =
        (1..=nv).map(|i| add(format!("x{i}.V4"), VertexLabel::Literal(-(i as i32)))).collect();
    let y = add("y".into(), VertexLabel::Y);
    let mut extra = vec![[0usize; 4]; nv + 1];
    for i in (1..=nv).rev() {
        let lab = VertexLabel::Literal(i as i32);
        let v1 = add(format!("x{i}.V1"), lab.clone());
        let v3 = add(format!("x{i}.V3"), lab.clone());
        let v2 = add(format!("x{i}.V2"), lab);
        extra[i] = [v1, v2, v3, v4[i - 1]];
    }

    let mut edges = Vec::new();
    let mut link = |a: usize, s: u8, b: usize, t: u8| edges.push(Edge { from: (a, s), to: (b, t), label: None });
    // (entry in-port, exit out-port) of each main-cycle segment
    let mut segments = Vec::new();
    for ids in &clause_ids {
        for &(a, s, b, t) in &CLAUSE_TEMPLATE {
            link(ids[a], s, ids[b], t);
        }
        segments.push(((ids[0], 1), (ids[4], 1)));
    }
    for ids in extra.iter().skip(1) {
        for &(a, s, b, t) in &EXTRA_TEMPLATE {
            link(ids[a], s, ids[b], t);
        }
        segments.push(((ids[0], 1), (ids[3], 1)));
    }
    link(y, 0, y, 1);
    segments.push(((y, 0), (y, 1)));
    for i in 0..segments.len() {
        let (_, exit) = segments[i];
        let (entry, _) = segments[(i + 1) % segments.len()];
        link(exit.0, exit.1, entry.0, entry.1);
    }

    let mut partitions: Vec<Vec<usize>> = Vec::new();
    for ids in &clause_ids {
        partitions.push(vec![ids[1]]);
        partitions.push(vec![ids[3]]);
    }
    for i in (1..=nv).rev() {
        let mut part: Vec<usize> = (0..vertices.len())
            .filter(|&v| matches!(vertices[v].label, VertexLabel::Literal(l) if l.unsigned_abs() as usize == i))
            .collect();
        part.sort_unstable();
        partitions.push(part);
    }
    partitions.push(vec![y]);

    let initial = vertices
        .iter()
        .map(|v| match v.label {
            VertexLabel::Literal(l) if l < 0 => VertexState::Crossing,
            _ => VertexState::Straight,
        })
        .collect();
    let inst = CcecInstance { vertices, edges, partitions, initial };
    inst.validate()?;
    Ok(inst)
}
