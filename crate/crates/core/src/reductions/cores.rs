//! Swap cores of a binary multiset and their catalogue forms.

use serde::{Deserialize, Serialize};

use crate::bcssila::SwapInterval;
use crate::cyclic::{bwt, lcp_array, suffix_via_psi, CyclicMultiset, Symbol};
use crate::error::{arg, Result};
use crate::extnat::ExtNat;
use crate::rmq::enumerate_l_intervals;

const A: Symbol = 0;
const B: Symbol = 1;

/// Shapes a non-partition core may take; `bb` selects the doubled-b variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ExtraForm {
    /// b a^(m+2n-1)
    LeadingB,
    /// a^(m+2n-1) b
    TrailingB,
    /// a^m b a^m
    Balanced { bb: bool },
    /// a^k b a^h, k ≠ h, min ≤ m < max
    Uneven { k: usize, h: usize, bb: bool },
    /// a^k b a^i b a^h, i ∈ [1..m]
    Double { k: usize, i: usize, h: usize, bb: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoreFlavor {
    /// b a^k b
    Partition { k: usize },
    Extra { form: ExtraForm },
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapCore {
    pub core: Vec<Symbol>,
    pub interval: SwapInterval,
    pub occurrences: usize,
}

/// Alternating decomposition a^r0 b^c1 a^r1 ... b^ct a^rt.
fn decompose(s: &[Symbol]) -> (Vec<usize>, Vec<usize>) {
    let (mut runs, mut blocks) = (vec![0], Vec::new());
    for (i, &c) in s.iter().enumerate() {
        if c == A {
            *runs.last_mut().unwrap() += 1;
        } else if i > 0 && s[i - 1] == B {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
            runs.push(0);
        }
    }
    (runs, blocks)
}

pub fn classify_core(core: &[Symbol], m: usize, n: usize) -> CoreFlavor {
    let long = m + 2 * n - 1;
    let (runs, blocks) = decompose(core);
    let uniform = blocks.windows(2).all(|w| w[0] == w[1]);
    let bb = blocks.first() == Some(&2);
    let extra = |form| CoreFlavor::Extra { form };
    match (runs.as_slice(), blocks.as_slice()) {
        (&[0, k, 0], &[1, 1]) if (1..=m).contains(&k) => CoreFlavor::Partition { k },
        (&[0, r], &[1]) if r == long => extra(ExtraForm::LeadingB),
        (&[r, 0], &[1]) if r == long => extra(ExtraForm::TrailingB),
        (&[k, h], &[c]) if c <= 2 && k == m && h == m => extra(ExtraForm::Balanced { bb }),
        (&[k, h], &[c]) if c <= 2 && k != h && k.min(h) >= 1 && k.min(h) <= m && k.max(h) > m => {
            extra(ExtraForm::Uneven { k, h, bb })
        }
        (&[k, i, h], &[c, _]) if uniform && c <= 2 && k >= 1 && h >= 1 && (1..=m).contains(&i) => {
            extra(ExtraForm::Double { k, i, h, bb })
        }
        _ => CoreFlavor::Unclassified,
    }
}

/// All swap cores of W: x-intervals split once at their midpoint whose
/// halves are preceded by opposite letters and carry equal sub-LCP arrays.
pub fn list_swap_cores(w: &CyclicMultiset) -> Result<Vec<SwapCore>> {
    if w.words().iter().any(|x| x.symbols().iter().any(|&c| c > B)) {
        return arg("swap cores need a binary multiset");
    }
    let lcp = lcp_array(w)?;
    let v = bwt(w)?;
    let mut out = Vec::new();
    for iv in enumerate_l_intervals(&lcp) {
        let ExtNat::Fin(ell) = iv.ell else { continue };
        let (lo, hi) = (iv.lo, iv.hi);
        if (hi - lo) % 2 != 0 {
            continue;
        }
        let mid = (lo + hi) / 2;
        if lcp.at(mid) != iv.ell || (lo + 1..hi).any(|t| t != mid && lcp.at(t) <= iv.ell) {
            continue;
        }
        let first = v[lo];
        let halves_ok = v[lo..mid].iter().all(|&c| c == first) && v[mid..hi].iter().all(|&c| c != first);
        let sub_ok = (lo + 1..mid).all(|t| lcp.at(t) == lcp.at(t + mid - lo));
        if halves_ok && sub_ok {
            out.push(SwapCore {
                core: suffix_via_psi(&v, lo, ell)?,
                interval: SwapInterval { lo, hi },
                occurrences: hi - lo,
            });
        }
    }
    out.sort_by_key(|c| c.interval);
    Ok(out)
}
