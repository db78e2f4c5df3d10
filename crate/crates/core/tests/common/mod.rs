#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use lcp_infer::bcssila::{infer, InferenceResult};
use lcp_infer::ccec::{cycles, CcecInstance, Cnf, Edge, FlipSet, Vertex, VertexLabel, VertexState};
use lcp_infer::cyclic::{bwt, ibwt, lcp_array, least_rotation, suffix_array, suffix_via_psi, CyclicMultiset, Symbol};
use lcp_infer::oracle::{
    all_strings, compositions, lcp_open, lcp_open_set, lcp_terminated, lcp_terminated_set, order_patterns, split_by,
    Variant, VariantKind,
};
use lcp_infer::reductions::{bwt_graph, ccec_to_multiset, classify_core, list_swap_cores, CoreFlavor, Transformed};
use lcp_infer::reductions::variant_transform;
use lcp_infer::{ExtNat, LcpArray};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(r: &mut impl Rng, len: usize, sigma: usize) -> Vec<Symbol> {
    (0..len).map(|_| r.gen_range(0..sigma) as Symbol).collect()
}

// ---------------------------------------------------------------- intervals

/// Distinct x-intervals of W: SA ranges sharing a prefix of length t, for every t.
pub fn brute_x_intervals(w: &CyclicMultiset) -> BTreeSet<(usize, usize)> {
    let sa = suffix_array(w).unwrap().order;
    let n = sa.len();
    let maxlen = w.words().iter().map(|x| x.len()).max().unwrap();
    let mut out = BTreeSet::new();
    for t in 0..=2 * maxlen + 1 {
        let key = |i: usize| (0..t).map(|s| w.char_at(sa[i], s)).collect::<Vec<_>>();
        let mut lo = 0;
        for i in 1..=n {
            if i == n || key(i) != key(lo) {
                out.insert((lo, i));
                lo = i;
            }
        }
    }
    out
}

// ---------------------------------------------------------------- CCEC

pub fn two_self_loops() -> CcecInstance {
    CcecInstance {
        vertices: vec![Vertex { name: "v".into(), label: VertexLabel::Free }],
        edges: vec![
            Edge { from: (0, 0), to: (0, 0), label: None },
            Edge { from: (0, 1), to: (0, 1), label: None },
        ],
        partitions: vec![vec![0]],
        initial: vec![VertexState::Crossing],
    }
}

/// u and v joined by a double edge each way; one cycle iff exactly one vertex crosses.
pub fn two_vertex(coupled: bool) -> CcecInstance {
    let e = |a: usize, s: u8, b: usize, t: u8| Edge { from: (a, s), to: (b, t), label: None };
    CcecInstance {
        vertices: vec![
            Vertex { name: "u".into(), label: VertexLabel::Free },
            Vertex { name: "v".into(), label: VertexLabel::Free },
        ],
        edges: vec![e(0, 0, 1, 0), e(0, 1, 1, 1), e(1, 0, 0, 0), e(1, 1, 0, 1)],
        partitions: if coupled { vec![vec![0, 1]] } else { vec![vec![0], vec![1]] },
        initial: vec![VertexState::Straight; 2],
    }
}

/// Random 2-in/2-out multigraph with random partitions and initial state.
pub fn random_instance(r: &mut impl Rng, n: usize, m: usize) -> CcecInstance {
    use rand::seq::SliceRandom;
    let mut ins: Vec<(usize, u8)> = (0..n).flat_map(|v| [(v, 0), (v, 1)]).collect();
    ins.shuffle(r);
    let edges = (0..n)
        .flat_map(|v| [(v, 0u8), (v, 1u8)])
        .zip(ins)
        .map(|(from, to)| Edge { from, to, label: None })
        .collect();
    let m = m.clamp(1, n);
    let mut owner: Vec<usize> = (0..n).map(|v| if v < m { v } else { r.gen_range(0..m) }).collect();
    owner.shuffle(r);
    let partitions = (0..m).map(|p| (0..n).filter(|&v| owner[v] == p).collect()).collect();
    let initial = (0..n).map(|_| if r.gen() { VertexState::Crossing } else { VertexState::Straight }).collect();
    let vertices = (0..n).map(|v| Vertex { name: format!("v{v}"), label: VertexLabel::Free }).collect();
    CcecInstance { vertices, edges, partitions, initial }
}

/// Cycles as vertex-entry sequences, each rotated to its least rotation, sorted.
pub fn cycle_shapes(inst: &CcecInstance, state: &[VertexState], rename: &dyn Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = cycles(inst, state)
        .unwrap()
        .into_iter()
        .map(|c| {
            let seq: Vec<usize> = c.iter().map(|&e| rename(inst.edges[e].to.0)).collect();
            let best = (0..seq.len())
                .map(|s| seq[s..].iter().chain(&seq[..s]).copied().collect::<Vec<_>>())
                .min()
                .unwrap();
            best
        })
        .collect();
    out.sort();
    out
}

/// Outcome of rebuilding a CCEC instance from the partition cores of its LCP array.
pub struct RoundTrip {
    /// Partition flip sets whose cycle shapes disagree.
    pub mismatches: usize,
    pub checked: usize,
    pub merged_ok: bool,
}

/// Restricts the BWT graph of W = ccec_to_multiset(I) to the swaps with cores
/// b a^k b, maps merged vertices to instance vertices through the a-run after
/// the core and compares cycle shapes under every partition flip set.
pub fn round_trip(inst: &CcecInstance) -> RoundTrip {
    let w = ccec_to_multiset(inst).unwrap();
    let (m, n) = (inst.partitions.len(), inst.vertices.len());
    let v = bwt(&w).unwrap();
    let lcp = lcp_array(&w).unwrap();
    let r = infer(&lcp).expect("constructed array is valid");
    let cores = list_swap_cores(&w).unwrap();
    let mut kept = Vec::new();
    let mut swap_of_partition = vec![usize::MAX; m];
    for c in &cores {
        if let CoreFlavor::Partition { k } = classify_core(&c.core, m, n) {
            swap_of_partition[k - 1] = kept.len();
            kept.push(c.interval);
        }
    }
    assert!(kept.iter().all(|s| r.swaps.contains(s)));
    let g = bwt_graph(&InferenceResult { bwt: v.clone(), swaps: kept.clone() }).unwrap();
    // merged vertex -> instance vertex
    let mut to_inst = Vec::new();
    for &(j, _) in &g.merged {
        let sw = kept.iter().position(|s| s.lo <= j && j < s.hi).unwrap();
        let core_len = cores.iter().find(|c| c.interval == kept[sw]).unwrap().core.len();
        let s = suffix_via_psi(&v, j, core_len + m + 2 * n + 1).unwrap();
        let run = s[core_len..].iter().take_while(|&&c| c == 0).count();
        assert!(run >= m + 2 && (run - m) % 2 == 0, "unexpected run {run}");
        to_inst.push((run - m) / 2 - 1);
    }
    let owner = inst.partition_of();
    let mut seen = vec![false; n];
    let mut merged_ok = g.merged.len() == n;
    for (t, &h) in to_inst.iter().enumerate() {
        let p = g.instance.partitions.iter().position(|part| part.contains(&t)).unwrap();
        merged_ok &= h < n && !seen[h] && swap_of_partition[owner[h]] == p;
        if h < n {
            seen[h] = true;
        }
    }
    let mut mismatches = 0;
    let total = 1u64 << m;
    for mask in 0..total {
        let flips: Vec<usize> = (0..m).filter(|&p| mask >> p & 1 == 1).collect();
        let si = inst.apply_flips(&FlipSet(flips.clone()));
        let gf: Vec<usize> = flips.iter().map(|&p| swap_of_partition[p]).collect();
        let sg = g.instance.apply_flips(&FlipSet(gf));
        let a = cycle_shapes(inst, &si, &|x| x);
        let b = cycle_shapes(&g.instance, &sg, &|x| to_inst[x]);
        mismatches += usize::from(a != b);
    }
    RoundTrip { mismatches, checked: total as usize, merged_ok }
}

// ---------------------------------------------------------------- formulas

pub struct Tiny {
    pub name: &'static str,
    pub formula: Cnf,
    pub satisfiable: bool,
}

pub fn tiny_formulas() -> Vec<Tiny> {
    let f = |v, c: Vec<[i32; 3]>| Cnf::new(v, c).unwrap();
    vec![
        Tiny { name: "x", formula: f(1, vec![[1, 1, 1]]), satisfiable: true },
        Tiny { name: "(x|y|-z)(-x|y|z)", formula: f(3, vec![[1, 2, -3], [-1, 2, 3]]), satisfiable: true },
        Tiny { name: "x & -x", formula: f(1, vec![[1, 1, 1], [-1, -1, -1]]), satisfiable: false },
        Tiny {
            name: "all four 2-clauses over x,y",
            formula: f(2, vec![[1, 2, 2], [1, -2, -2], [-1, 2, 2], [-1, -2, -2]]),
            satisfiable: false,
        },
    ]
}

/// Every 3-CNF with `vars` variables and `clauses` clauses.
pub fn all_formulas(vars: usize, clauses: usize) -> impl Iterator<Item = Cnf> {
    let lits: Vec<i32> = (1..=vars as i32).flat_map(|v| [v, -v]).collect();
    let per = lits.len().pow(3);
    let total = per.pow(clauses as u32);
    (0..total).map(move |mut x| {
        let mut cs = Vec::new();
        for _ in 0..clauses {
            let mut c = x % per;
            x /= per;
            let mut cl = [0; 3];
            for l in cl.iter_mut() {
                *l = lits[c % lits.len()];
                c /= lits.len();
            }
            cs.push(cl);
        }
        Cnf::new(vars, cs).unwrap()
    })
}

// ---------------------------------------------------------------- variants

pub fn variant(s: &str) -> Variant {
    s.parse().unwrap()
}

/// Yes-instances with `entries` LCP entries of a linear variant. Binary
/// variants range over {a,b}, the others over all order patterns.
pub fn image(v: Variant, entries: usize) -> HashSet<LcpArray> {
    let strings = |len: usize| -> Vec<Vec<Symbol>> {
        if v.binary {
            all_strings(len, 2).collect()
        } else {
            order_patterns(len)
        }
    };
    let mut out = HashSet::new();
    match v.kind {
        VariantKind::TerminatedSingle => out.extend(strings(entries).iter().map(|s| lcp_terminated(s))),
        VariantKind::OpenSingle => out.extend(strings(entries + 1).iter().map(|s| lcp_open(s))),
        VariantKind::TerminatedSet | VariantKind::OpenSet => {
            let terminated = v.kind == VariantKind::TerminatedSet;
            let total = entries + 1;
            let mut by_letters: BTreeMap<usize, Vec<Vec<Symbol>>> = BTreeMap::new();
            for c in compositions(total, 1) {
                let lens: Vec<usize> = if terminated { c.iter().map(|p| p - 1).collect() } else { c };
                let letters: usize = lens.iter().sum();
                let pool = by_letters.entry(letters).or_insert_with(|| strings(letters));
                for s in pool.iter() {
                    let set = split_by(s, &lens);
                    out.insert(if terminated { lcp_terminated_set(&set) } else { lcp_open_set(&set) });
                }
            }
        }
        _ => panic!("not a linear variant"),
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reduction {
    Identity,
    StripOne,
    StripAll,
}

pub struct Bullet {
    pub from: &'static str,
    /// Both sides binary.
    pub to: &'static str,
    pub how: Reduction,
}

pub const BULLETS: [Bullet; 7] = [
    Bullet { from: "BTSILA", to: "BOSILA", how: Reduction::StripOne },
    Bullet { from: "BTSILA", to: "TSILA", how: Reduction::Identity },
    Bullet { from: "TSILA", to: "OSILA", how: Reduction::StripOne },
    Bullet { from: "TSILA", to: "TSSILA", how: Reduction::Identity },
    Bullet { from: "TSSILA", to: "OSSILA", how: Reduction::StripAll },
    Bullet { from: "BTSILA", to: "BTSSILA", how: Reduction::Identity },
    Bullet { from: "BTSSILA", to: "BOSSILA", how: Reduction::StripAll },
];

#[derive(Default, Debug)]
pub struct BulletReport {
    pub forward_checked: usize,
    pub backward_checked: usize,
    pub reverse_checked: usize,
    /// X-instances whose transform is not a Y-instance.
    pub forward_bad: Vec<String>,
    /// Arrays passing the side condition with a Y-instance image that are not X-instances.
    pub backward_bad: Vec<String>,
    /// Y-instances whose reverse transform is not an X-instance.
    pub reverse_bad: Vec<String>,
}

impl BulletReport {
    pub fn holds(&self) -> bool {
        self.forward_bad.is_empty() && self.backward_bad.is_empty()
    }
}

const Z: ExtNat = ExtNat::Fin(0);

fn with_zeros(j: usize, rest: &LcpArray) -> LcpArray {
    LcpArray::new(std::iter::repeat_n(Z, j).chain(rest.entries.iter().copied()).collect())
}

fn note(list: &mut Vec<String>, msg: String) {
    if list.len() < 5 {
        list.push(msg);
    }
}

/// Checks `A ∈ X ⟺ side(A) ∧ T(A) ∈ Y` for non-empty arrays up to
/// `max_entries`: every A ∈ X (forward) and every preimage A of a
/// Y-instance (backward); also applies the reverse transform Y → X.
pub fn check_bullet(b: &Bullet, max_entries: usize) -> BulletReport {
    let (x, y) = (variant(b.from), variant(b.to));
    let xs: Vec<HashSet<LcpArray>> = (0..=max_entries).map(|n| image(x, n)).collect();
    let ys: Vec<HashSet<LcpArray>> = (0..=max_entries).map(|n| image(y, n)).collect();
    let mut rep = BulletReport::default();
    for n in 1..=max_entries {
        for a in &xs[n] {
            rep.forward_checked += 1;
            match variant_transform(a, x, y).unwrap() {
                Transformed::Applied(t) if ys[t.len()].contains(&t) => {}
                other => note(&mut rep.forward_bad, format!("{x} [{a}] maps to {other:?}")),
            }
        }
        let mut pre: Vec<(LcpArray, LcpArray)> = Vec::new();
        match b.how {
            Reduction::Identity => pre.extend(ys[n].iter().map(|t| (t.clone(), t.clone()))),
            Reduction::StripOne => pre.extend(ys[n - 1].iter().map(|t| (with_zeros(1, t), t.clone()))),
            Reduction::StripAll => {
                for j in 1..=n {
                    for t in ys[n - j].iter().filter(|t| t.entries.first() != Some(&Z)) {
                        pre.push((with_zeros(j, t), t.clone()));
                    }
                }
            }
        }
        for (a, t) in pre {
            match variant_transform(&a, x, y).unwrap() {
                Transformed::NotApplicable => continue,
                Transformed::Applied(got) if got == t => {
                    rep.backward_checked += 1;
                    if !xs[n].contains(&a) {
                        note(&mut rep.backward_bad, format!("[{a}] is no {x} instance though [{t}] is a {y} instance"));
                    }
                }
                Transformed::Applied(got) => note(&mut rep.backward_bad, format!("[{a}] transformed to [{got}], not [{t}]")),
            }
        }
        for t in &ys[n] {
            if let Ok(Transformed::Applied(a)) = variant_transform(t, y, x) {
                if a.len() <= max_entries {
                    rep.reverse_checked += 1;
                    if !xs[a.len()].contains(&a) {
                        note(&mut rep.reverse_bad, format!("{y} [{t}] reverses to non-instance [{a}]"));
                    }
                }
            }
        }
    }
    rep
}

pub fn render_multiset(w: &CyclicMultiset) -> Vec<String> {
    w.words().iter().map(|x| lcp_infer::text::render(x.symbols())).collect()
}

pub fn rotate_least(s: &[Symbol]) -> Vec<Symbol> {
    let r = least_rotation(s);
    s[r..].iter().chain(&s[..r]).copied().collect()
}

pub fn single_cycle(v: &[Symbol]) -> bool {
    ibwt(v).map(|w| w.words().len() == 1).unwrap_or(false)
}
