mod common;

use std::collections::BTreeSet;

use common::{random_word, rng};
use lcp_infer::bcssila::{enumerate_bwts, infer};
use lcp_infer::cssila::*;
use lcp_infer::cyclic::{lcp_from_bwt, Symbol};
use lcp_infer::oracle::{all_strings, oracle_table, DEFAULT_GUARD};
use lcp_infer::{ExtNat, LcpArray};
use rand::Rng;

fn language(dfa: &CssilaDfa) -> BTreeSet<Vec<Symbol>> {
    dfa_enumerate(dfa, usize::MAX).into_iter().collect()
}

#[test]
fn language_equals_oracle_up_to_three_letters() {
    for sigma in 1..=3 {
        for n in 1..=8 {
            for (lcp, vs) in oracle_table(n, sigma, DEFAULT_GUARD).unwrap() {
                if implied_sigma(&lcp) != sigma {
                    continue;
                }
                let dfa = build_dfa(&lcp, sigma).unwrap();
                let want: BTreeSet<Vec<Symbol>> = vs.into_iter().collect();
                assert_eq!(language(&dfa), want, "[{lcp}] sigma {sigma}");
                assert_eq!(dfa_count(&dfa), want.len() as u128);
            }
        }
    }
}

#[test]
fn non_image_arrays_have_empty_language() {
    let mut r = rng(5);
    let images: Vec<BTreeSet<LcpArray>> =
        (0..=8).map(|n| if n == 0 { BTreeSet::new() } else { oracle_table(n, 3, DEFAULT_GUARD).unwrap().into_keys().collect() }).collect();
    let mut rejected = 0;
    for _ in 0..3000 {
        let n = r.gen_range(2..=8);
        let entries: Vec<ExtNat> =
            (0..n - 1).map(|_| if r.gen_bool(0.1) { ExtNat::Omega } else { ExtNat::Fin(r.gen_range(0..4)) }).collect();
        let lcp = LcpArray::new(entries);
        let sigma = implied_sigma(&lcp);
        if sigma > 3 || images[n].contains(&lcp) {
            continue;
        }
        let dfa = build_dfa(&lcp, sigma).unwrap();
        assert_eq!(dfa_count(&dfa), 0, "[{lcp}]");
        assert!(dfa.accepting.is_none());
        rejected += 1;
    }
    assert!(rejected > 1000);
}

#[test]
fn acceptance_matches_prefix_consistency() {
    let mut r = rng(9);
    for _ in 0..200 {
        let n = r.gen_range(2..=9);
        let v = random_word(&mut r, n, 3);
        let lcp = lcp_from_bwt(&v).unwrap();
        let sigma = implied_sigma(&lcp);
        let ctx = character_arrays(&lcp, sigma).unwrap();
        let dfa = build_dfa_from(&ctx);
        for s in all_strings(n, sigma) {
            let prefixes_ok = (0..=n).all(|k| is_prefix_consistent(&s[..k], &ctx).unwrap());
            assert_eq!(dfa_accepts(&dfa, &s), prefixes_ok, "{s:?} for [{lcp}]");
        }
    }
}

#[test]
fn binary_language_equals_swap_enumeration() {
    for n in 2..=11 {
        for lcp in oracle_table(n, 2, DEFAULT_GUARD).unwrap().into_keys() {
            if implied_sigma(&lcp) != 2 {
                continue;
            }
            let dfa = build_dfa(&lcp, 2).unwrap();
            let r = infer(&lcp).unwrap();
            let swaps: BTreeSet<Vec<Symbol>> = enumerate_bwts(&r, usize::MAX).bwts.into_iter().collect();
            assert_eq!(language(&dfa), swaps, "[{lcp}]");
        }
    }
}

#[test]
fn state_bound_and_final_state() {
    let mut r = rng(13);
    for _ in 0..300 {
        let n = r.gen_range(2..=30);
        let sigma = r.gen_range(2..=4);
        let raw = random_word(&mut r, n, sigma);
        // relabel to the letters actually used
        let used: BTreeSet<Symbol> = raw.iter().copied().collect();
        let v: Vec<Symbol> = raw.iter().map(|c| used.range(..c).count() as Symbol).collect();
        let lcp = lcp_from_bwt(&v).unwrap();
        let s = implied_sigma(&lcp);
        let ctx = character_arrays(&lcp, s).unwrap();
        let dfa = build_dfa_from(&ctx);
        let bound = (1u128 << s) * ctx.parikh().iter().map(|&c| c as u128 + 1).product::<u128>();
        assert!((dfa.created as u128) <= bound);
        let fin = &dfa.states[dfa.accepting.expect("image array")];
        assert_eq!(fin.p, ctx.parikh());
        assert!(fin.b.iter().all(|&b| b == 0));
        assert!(dfa_accepts(&dfa, &v));
        for (i, st) in dfa.states.iter().enumerate() {
            if st.depth() == n {
                assert_eq!(Some(i), dfa.accepting);
            }
        }
    }
}
