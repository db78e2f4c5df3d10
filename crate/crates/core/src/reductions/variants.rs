//! LCP array rewrites between linear problem variants (leading-zero add/strip
//! with zero-count side conditions).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extnat::{ExtNat, LcpArray};
use crate::oracle::Variant;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "lcp", rename_all = "snake_case")]
pub enum Transformed {
    Applied(LcpArray),
    NotApplicable,
}

const ZERO: ExtNat = ExtNat::Fin(0);

fn leading_zeros(l: &LcpArray) -> usize {
    l.entries.iter().take_while(|&&x| x == ZERO).count()
}

fn zeros_after(l: &LcpArray, from: usize) -> usize {
    l.entries[from.min(l.len())..].iter().filter(|&&x| x == ZERO).count()
}

fn prepend_zero(l: &LcpArray) -> LcpArray {
    LcpArray::new(std::iter::once(ZERO).chain(l.entries.iter().copied()).collect())
}

fn strip(l: &LcpArray, count: usize) -> LcpArray {
    LcpArray::new(l.entries[count..].to_vec())
}

/// Rewrites `lcp` from one variant's instance to the equivalent instance of another.
///
/// Supported pairs (either direction): BTSILA/BOSILA, BTSILA/TSILA, TSILA/OSILA,
/// TSILA/TSSILA, TSSILA/OSSILA, BTSILA/BTSSILA, BTSSILA/BOSSILA.
/// Open → terminated prepends one zero, i.e. one terminator; for sets this
/// only covers open instances realizable with a single string.
pub fn variant_transform(lcp: &LcpArray, from: Variant, to: Variant) -> Result<Transformed> {
    use Transformed::*;
    let lead = leading_zeros(lcp);
    // leading zero and at most one other zero
    let one_more = lead >= 1 && zeros_after(lcp, 1) <= 1;
    let applied = |ok: bool, f: &dyn Fn() -> LcpArray| Ok(if ok { Applied(f()) } else { NotApplicable });
    match (from.to_string().as_str(), to.to_string().as_str()) {
        ("BTSILA", "BOSILA") | ("TSILA", "OSILA") => applied(lead >= 1, &|| strip(lcp, 1)),
        ("BOSILA", "BTSILA") | ("OSILA", "TSILA") | ("OSSILA", "TSSILA") | ("BOSSILA", "BTSSILA") => {
            applied(true, &|| prepend_zero(lcp))
        }
        ("BTSILA", "TSILA") | ("TSILA", "BTSILA") | ("BTSILA", "BTSSILA") | ("BTSSILA", "BTSILA") => {
            applied(one_more, &|| lcp.clone())
        }
        ("TSILA", "TSSILA") | ("TSSILA", "TSILA") => applied(true, &|| lcp.clone()),
        ("TSSILA", "OSSILA") => applied(lead >= 1, &|| strip(lcp, lead)),
        ("BTSSILA", "BOSSILA") => applied(lead >= 1 && zeros_after(lcp, lead) <= 1, &|| strip(lcp, lead)),
        (f, t) => Err(Error::Argument(format!("no transform from {f} to {t}"))),
    }
}
