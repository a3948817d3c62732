use super::*;

fn failures(suite: Suite, n: u32) -> Vec<CaseResult> {
    run_suite(suite, n).unwrap().into_iter().filter(|r| !r.passed()).collect()
}

#[test]
fn names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::from_name(s.name()), Some(s));
    }
    assert_eq!(Suite::from_name("nope"), None);
}

#[test]
fn small_dimensions_pass() {
    for n in 3..=4 {
        for s in Suite::ALL {
            let bad = failures(s, n);
            let ids: Vec<_> = bad.iter().map(|r| r.id.clone()).collect();
            assert!(bad.is_empty(), "{s} n={n}: {ids:?}");
        }
    }
}

#[test]
fn case_counts() {
    // (i, k) pairs with 1 ≤ i ≤ 3 and 0 ≤ k ≤ 3
    assert_eq!(cases(Suite::AlphaAction, 7).unwrap().len(), 12);
    assert!(cases(Suite::Diagonal, 2).unwrap().len() >= 2);
    assert!(cases(Suite::Summation, 2).is_err());
    assert_eq!(multisets(2, 2).len(), 6);
}
