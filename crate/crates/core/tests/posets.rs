use proptest::prelude::*;

use schurmzv::posets::*;
use schurmzv::words::Word;

// linear extensions by trying every permutation
fn brute_extensions(x: &TwoPoset) -> u64 {
    fn rec(x: &TwoPoset, placed: &mut Vec<usize>) -> u64 {
        if placed.len() == x.len() {
            return 1;
        }
        let mut total = 0;
        for y in 0..x.len() {
            if placed.contains(&y) {
                continue;
            }
            // y must not be below anything already placed
            if placed.iter().any(|&p| x.less(y, p)) {
                continue;
            }
            placed.push(y);
            total += rec(x, placed);
            placed.pop();
        }
        total
    }
    rec(x, &mut Vec::new())
}

fn poset() -> impl Strategy<Value = TwoPoset> {
    (2usize..=7).prop_flat_map(|n| {
        (prop::collection::vec(0u8..=1, n), prop::collection::vec((0..n, 0..n), 0..=n + 2)).prop_map(|(labels, rel)| {
            // only relations a < b with a < b as integers keep the order acyclic
            let covers = rel.into_iter().filter(|(a, b)| a < b).collect();
            TwoPoset::new(labels, covers).unwrap()
        })
    })
}

#[test]
fn chain_word_round_trip() {
    for wt in 2..=10i64 {
        for c in schurmzv::combinat::all_compositions(wt) {
            let w = Word(c.into_iter().map(|x| x as u32).collect());
            if !w.is_admissible() {
                continue;
            }
            assert_eq!(chain_to_word(&word_to_chain(&w)).unwrap(), w);
        }
    }
}

#[test]
fn parse_errors() {
    assert!("012:".parse::<TwoPoset>().is_err());
    assert!("01:0<1,1<0".parse::<TwoPoset>().is_err());
    assert!("01:0<5".parse::<TwoPoset>().is_err());
    assert!("01:0-1".parse::<TwoPoset>().is_err());
    assert!(build_x(0, &[2]).is_err());
    assert!(build_y(0, &[1]).is_err());
    assert!(anti_hook_poset(&[1], &[2, 1]).is_err());
}

#[test]
fn x_posets_match_weighted_sums_formally() {
    for (l, k) in [(1u32, vec![1u32, 1]), (2, vec![2, 1]), (3, vec![1, 2, 1]), (1, vec![3])] {
        let x = build_x(l, &k).unwrap();
        assert_eq!(admissible_part(&x, DEFAULT_CAP).unwrap(), schurmzv::weighted::p_std(&k, l), "X_{l}({k:?})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_counts(x in poset()) {
        let tot = total_extensions(&x, DEFAULT_CAP).unwrap();
        let n: u64 = tot.values().sum();
        prop_assert_eq!(n, brute_extensions(&x));
        if x.is_admissible() {
            let adm = admissible_part(&x, DEFAULT_CAP).unwrap();
            let m: i64 = adm.iter().map(|(_, q)| i64::try_from(q.to_integer()).unwrap()).sum();
            prop_assert_eq!(m as u64, n);
        }
    }

    #[test]
    fn text_round_trip(x in poset()) {
        let back: TwoPoset = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}
