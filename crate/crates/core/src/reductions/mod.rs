//! Reduction chain 3-SAT → CCEC → BCSILA, the BWT graph back to CCEC,
//! swap-core analysis, the terminator transform and variant rewrites.

mod construct;
mod cores;
mod graph;
mod variants;

pub use construct::{add_terminator, ccec_to_lcp, ccec_to_multiset, ccec_words, sat_to_lcp, vertex_strings, VertexStrings};
pub use cores::{classify_core, list_swap_cores, CoreFlavor, ExtraForm, SwapCore};
pub use graph::{bwt_graph, restrict_swaps, single_string_decide, single_string_from, BwtGraph, SingleOutcome};
pub use variants::{variant_transform, Transformed};
