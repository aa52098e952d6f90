use proptest::prelude::*;

use tandem::squarefree::generate;
use tandem::strings::{
    dup, dup_all, find_squares, is_almost_square_free, is_square_free, is_square_free_quadratic,
    is_subsequence, matches, rle, substring, Symbol, TDString,
};

fn word(max_sym: Symbol, max_len: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0..max_sym, 0..max_len)
}

fn brute_squares(s: &[Symbol]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        for d in 1..=(s.len() - i) / 2 {
            if s[i..i + d] == s[i + d..i + 2 * d] {
                out.push((i + 1, d));
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn rle_decodes_back(s in word(4, 40)) {
        let r = rle(&s);
        prop_assert_eq!(r.decode(), s.clone());
        prop_assert!(r.pairs().windows(2).all(|w| w[0].0 != w[1].0));
    }

    #[test]
    fn squares_match_brute_force(s in word(3, 30)) {
        prop_assert_eq!(find_squares(&s), brute_squares(&s));
        prop_assert_eq!(is_square_free(&s), brute_squares(&s).is_empty());
    }

    #[test]
    fn dup_lengths(s in word(5, 20), mask in any::<u32>()) {
        let set: Vec<usize> = (1..=s.len()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let d = dup(&s, &set).unwrap();
        prop_assert_eq!(d.len(), s.len() + set.len());
        prop_assert!(is_subsequence(&s, &d));
        prop_assert!(is_subsequence(&d, &dup_all(&s)));
    }

    #[test]
    fn matching_is_runwise(s in word(3, 20), extra in prop::collection::vec(0usize..3, 20)) {
        let runs = rle(&s).pairs();
        let longer: Vec<Symbol> = runs
            .iter()
            .zip(&extra)
            .flat_map(|(&(c, l), &e)| std::iter::repeat_n(c, l + e))
            .collect();
        prop_assert!(matches(&s, &longer));
        if longer.len() > s.len() {
            prop_assert!(!matches(&longer, &s));
        }
    }

    #[test]
    fn text_round_trip(s in word(38, 30)) {
        let t = TDString::from_symbols(s.clone());
        let back = TDString::parse(&t.to_string()).unwrap();
        prop_assert_eq!(back.data(), &s[..]);
    }

    #[test]
    fn substring_is_clamped(s in word(3, 12), i in 0usize..20, j in 0usize..20) {
        let sub = substring(&s, i, j);
        prop_assert!(sub.len() <= s.len());
        if i >= 1 && i <= j && j <= s.len() {
            prop_assert_eq!(sub, &s[i - 1..j]);
        }
    }
}

#[test]
fn hashed_scan_agrees_on_long_words() {
    let w = generate(3000);
    assert!(is_square_free(&w) && is_square_free_quadratic(&w));
    for (at, len) in [(0, 1), (700, 5), (1500, 300), (2990, 10)] {
        let mut v = w.to_vec();
        let piece: Vec<Symbol> = v[at..at + len].to_vec();
        v.splice(at + len..at + len, piece);
        assert!(!is_square_free(&v), "square at {at} len {len}");
        assert!(!is_square_free_quadratic(&v));
    }
}

#[test]
fn almost_square_free_root() {
    let w = generate(40);
    let z = dup(&w, &[1, 5, 9, 40]).unwrap();
    let (root, set) = is_almost_square_free(&z).unwrap();
    assert_eq!(root.data(), w.data());
    assert_eq!(set, vec![1, 5, 9, 40]);
}
