use std::time::{Duration, Instant};

use proptest::prelude::*;

use tandem::alt::{
    decide, decide_pair, greedy_mapping, normalize_pair, synthesize_witness, validate_mapping,
    AltPair, Decision, RunMapping,
};
use tandem::solver::{oracle_exists, SearchConfig};
use tandem::strings::matches;

fn runs(q: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..4, q..=max)
}

/// Whether some strictly increasing `f` with `f(1) = 1`, `f(D) = R` passes
/// every condition, by enumerating all of them.
fn exhaustive(pair: &AltPair) -> bool {
    let (d, r) = (pair.domain(), pair.range());
    if d > r {
        return false;
    }
    fn rec(pair: &AltPair, f: &mut Vec<usize>, d: usize, r: usize) -> bool {
        if f.len() == d {
            let m = RunMapping { f: f.clone(), gaps: vec![] };
            return validate_mapping(pair, &m).is_ok();
        }
        let last = *f.last().unwrap();
        let hi = if f.len() + 1 == d { r } else { r - (d - f.len() - 1) };
        let lo = if f.len() + 1 == d { r } else { last + 1 };
        for j in lo..=hi {
            f.push(j);
            if rec(pair, f, d, r) {
                return true;
            }
            f.pop();
        }
        false
    }
    rec(pair, &mut vec![1], d, r)
}

/// `(q, s, t)` with `|t| = |s| + q k`, so only the conditions on lengths decide.
fn pair(qs: std::ops::RangeInclusive<usize>, max_s: usize, max_k: usize) -> impl Strategy<Value = AltPair> {
    qs.prop_flat_map(move |q| {
        (
            prop::collection::vec(1usize..4, q..=max_s),
            0..=max_k,
            prop::collection::vec(1usize..4, max_s + q * max_k),
        )
            .prop_map(move |(s, k, pool)| {
                let t = pool[..s.len() + q * k].to_vec();
                AltPair::new(q, s, t).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn decide_matches_exhaustive_mapping_search(pair in pair(2..=5, 9, 2)) {
        let d = decide_pair(&pair);
        prop_assert_eq!(d.is_yes(), exhaustive(&pair));
        if let Decision::Yes { mapping } = d {
            prop_assert!(validate_mapping(&pair, &mapping).is_ok());
            let trace = synthesize_witness(&pair.source_string(), &pair.target_string(), &mapping).unwrap();
            prop_assert!(trace.validate(&pair.target_string()).is_ok());
        }
    }

    #[test]
    fn greedy_agrees_below_five(pair in pair(2..=4, 12, 3)) {
        let greedy = greedy_mapping(&pair);
        prop_assert_eq!(greedy.is_some(), decide_pair(&pair).is_yes());
        if let Some(m) = greedy {
            prop_assert!(validate_mapping(&pair, &m).is_ok());
        }
    }

    #[test]
    fn matched_pairs_are_yes(q in 2usize..=5, s in runs(2, 12), extra in prop::collection::vec(0usize..3, 12)) {
        prop_assume!(s.len() >= q);
        let t: Vec<usize> = s.iter().zip(&extra).map(|(a, e)| a + e).collect();
        let pair = AltPair::new(q, s, t).unwrap();
        prop_assert!(matches(&pair.source_string(), &pair.target_string()));
        prop_assert!(decide_pair(&pair).is_yes());
    }

    #[test]
    fn oracle_agrees_on_small_q5(pair in pair(5..=5, 7, 1)) {
        prop_assume!(pair.t.iter().sum::<usize>() <= 16);
        let (a, b) = (pair.source_string(), pair.target_string());
        let oracle = oracle_exists(&a, &b, &SearchConfig::default()).unwrap();
        prop_assert_eq!(decide(&a, &b).unwrap().is_yes(), oracle.is_reachable());
    }
}

#[test]
fn relabelled_pairs_normalise_jointly() {
    let pair = normalize_pair(&[2, 2, 0, 1, 2], &[2, 0, 0, 1, 1, 2]).unwrap().unwrap();
    assert_eq!((pair.q, pair.s.clone(), pair.t.clone()), (3, vec![2, 1, 1, 1], vec![1, 2, 2, 1]));
}

#[test]
fn decision_time_grows_linearly() {
    // matched pairs keep f the identity; time per run should stay flat
    let time = |n: usize| {
        let s: Vec<usize> = (0..n).map(|k| 1 + k % 3).collect();
        let t: Vec<usize> = s.iter().map(|l| l + 1).collect();
        let pair = AltPair::new(5, s, t).unwrap();
        let start = Instant::now();
        assert!(decide_pair(&pair).is_yes());
        start.elapsed()
    };
    time(1000);
    let small = time(20_000);
    let large = time(200_000);
    assert!(large < Duration::from_secs(2));
    assert!(large < small * 40 + Duration::from_millis(20), "{small:?} vs {large:?}");
}
