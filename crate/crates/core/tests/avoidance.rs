use proptest::prelude::*;
use zeckwin::{avoids, build_avoidance_dfa, ForbiddenFamily};

/// Naive check: split on '#' and search each binary segment for each pattern.
fn naive_avoids(v: &str, patterns: &[String]) -> bool {
    v.split('#')
        .all(|seg| patterns.iter().all(|p| !seg.contains(p.as_str())))
}

fn word(alphabet: &'static [char], max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(alphabet), 0..=max)
        .prop_map(|cs| cs.into_iter().collect())
}

fn family() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(
        prop::collection::vec(prop::sample::select(&['0', '1'][..]), 1..=5)
            .prop_map(|cs| cs.into_iter().collect::<String>()),
        1..=4,
    )
}

fn parse(patterns: &[String]) -> ForbiddenFamily {
    ForbiddenFamily::new(patterns).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn dfa_matches_substring_search(v in word(&['0', '1', '#'], 64), pats in family()) {
        prop_assert_eq!(avoids(&v, &parse(&pats)).unwrap(), naive_avoids(&v, &pats));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn pad_splits_the_check(a in word(&['0', '1'], 32), b in word(&['0', '1'], 32), pats in family()) {
        let f = parse(&pats);
        let joined = format!("{a}#{b}");
        prop_assert_eq!(
            avoids(&joined, &f).unwrap(),
            avoids(&a, &f).unwrap() && avoids(&b, &f).unwrap()
        );
    }

    #[test]
    fn factors_of_avoiding_words_avoid(v in word(&['0', '1', '#'], 40), pats in family(), i in 0usize..41, j in 0usize..41) {
        let f = parse(&pats);
        let (lo, hi) = (i.min(j).min(v.len()), i.max(j).min(v.len()));
        if avoids(&v, &f).unwrap() {
            prop_assert!(avoids(&v[lo..hi], &f).unwrap());
        }
    }

    #[test]
    fn state_count_bound(pats in family()) {
        let f = parse(&pats);
        let total: usize = f.patterns().map(<[u8]>::len).sum();
        prop_assert!(build_avoidance_dfa(&f).state_count() <= 2 + total);
    }
}
