use lcp_infer::oracle::*;
use lcp_infer::{ExtNat, LcpArray};
use proptest::prelude::*;

#[test]
fn terminated_is_open_with_leading_zero() {
    for n in 1..=10 {
        for s in all_strings(n, 2) {
            let mut want = vec![ExtNat::Fin(0)];
            want.extend(lcp_open(&s).entries);
            assert_eq!(lcp_terminated(&s), LcpArray::new(want), "{s:?}");
        }
    }
}

#[test]
fn pattern_and_composition_counts() {
    let fubini = [1, 1, 3, 13, 75, 541, 4683];
    for (n, &f) in fubini.iter().enumerate() {
        assert_eq!(order_patterns(n).len(), f, "n = {n}");
    }
    for n in 1..=10 {
        assert_eq!(compositions(n, 1).len(), 1 << (n - 1));
    }
}

#[test]
fn oracle_table_partitions_all_strings() {
    for n in 1..=10 {
        let t = oracle_table(n, 2, DEFAULT_GUARD).unwrap();
        assert_eq!(t.values().map(Vec::len).sum::<usize>(), 1 << n);
        assert!(t.keys().all(|l| l.len() == n - 1));
    }
    assert!(oracle_table(30, 2, 1000).is_err());
}

#[test]
fn brute_force_solutions_reproduce_the_array() {
    let w: Vec<u8> = vec![0, 0, 1, 0, 1];
    for kind in [VariantKind::TerminatedSingle, VariantKind::OpenSingle] {
        let lcp = lcp_variant(&OracleInput::Single(w.clone()), kind).unwrap();
        let sols = brute_force_solutions(&lcp, 2, kind, DEFAULT_GUARD).unwrap();
        assert!(sols.contains(&Candidate::Word(w.clone())));
        for c in sols {
            let Candidate::Word(s) = c else { panic!() };
            assert_eq!(lcp_variant(&OracleInput::Single(s), kind).unwrap(), lcp);
        }
    }
    let set = vec![vec![0, 1], vec![0]];
    for kind in [VariantKind::TerminatedSet, VariantKind::OpenSet] {
        let lcp = lcp_variant(&OracleInput::Set(set.clone()), kind).unwrap();
        let sols = brute_force_solutions(&lcp, 2, kind, DEFAULT_GUARD).unwrap();
        assert!(sols.contains(&Candidate::Set(set.clone())));
    }
}

#[test]
fn variant_names_round_trip() {
    for name in ["CSILA", "BCSILA", "CSSILA", "BCSSILA", "TSILA", "BTSILA", "OSILA", "BOSILA", "TSSILA", "OSSILA"] {
        let v: Variant = name.parse().unwrap();
        assert_eq!(v.to_string(), name);
    }
    assert!("XSILA".parse::<Variant>().is_err());
}

#[test]
fn cyclic_single_requires_primitive() {
    assert!(lcp_cyclic_single(&[0, 1, 0, 1]).is_err());
    assert!(lcp_variant(&OracleInput::Single(vec![]), VariantKind::OpenSingle).is_err());
}

proptest! {
    #[test]
    fn terminated_set_equals_concatenation(set in prop::collection::vec(prop::collection::vec(0u8..3, 0..5), 1..4)) {
        prop_assert_eq!(lcp_terminated_set(&set), lcp_terminated_concat(&set));
    }

    #[test]
    fn open_lcp_depends_only_on_order_pattern(s in prop::collection::vec(0u8..6, 1..9)) {
        let mut letters: Vec<u8> = s.clone();
        letters.sort();
        letters.dedup();
        let p: Vec<u8> = s.iter().map(|c| letters.binary_search(c).unwrap() as u8).collect();
        prop_assert_eq!(lcp_open(&s), lcp_open(&p));
        prop_assert_eq!(lcp_terminated(&s), lcp_terminated(&p));
    }
}
