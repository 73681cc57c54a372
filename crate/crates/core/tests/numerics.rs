use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schurmzv::combinat::all_compositions;
use schurmzv::numerics::*;
use schurmzv::words::{Word, WordCombo};

fn words_of(wt: i64) -> Vec<Vec<u32>> {
    all_compositions(wt).into_iter().map(|c| c.into_iter().map(|x| x as u32).collect()).collect()
}

fn admissible_word(max_depth: usize, max_weight: u32) -> impl Strategy<Value = Vec<u32>> {
    (prop::collection::vec(1u32..=3, 0..max_depth), 2u32..=4)
        .prop_filter("weight", move |(a, b)| a.iter().sum::<u32>() + b <= max_weight)
        .prop_map(|(mut a, b)| {
            a.push(b);
            a
        })
}

#[test]
fn known_values() {
    let pi2 = std::f64::consts::PI.powi(2);
    let z2 = riemann_zeta(2, 1e-13).unwrap();
    assert!((z2.value - pi2 / 6.0).abs() < 1e-13);
    let z21 = mzv_numeric(&Word(vec![1, 2]), 1e-12).unwrap();
    let z3 = riemann_zeta(3, 1e-13).unwrap();
    assert!((z21.value - z3.value).abs() < 1e-12);
    let z22 = mzv_numeric(&Word(vec![2, 2]), 1e-12).unwrap();
    assert!((z22.value - pi2 * pi2 / 120.0).abs() < 1e-12);
    assert!(mzv_numeric(&Word(vec![2, 1]), 1e-8).is_err());
    assert!(riemann_zeta(1, 1e-8).is_err());
}

#[test]
fn truncations_increase_toward_the_limit() {
    for wt in 2..=6 {
        for k in words_of(wt) {
            if k.len() > 3 || *k.last().unwrap() < 2 {
                continue;
            }
            let w = Word(k.clone());
            let limit = mzv_numeric(&w, 1e-12).unwrap();
            let all = mzv_trunc_exact_all(&w, 40);
            assert!(all.windows(2).all(|p| p[0] <= p[1]), "{k:?}");
            let last = rational_to_f64(all.last().unwrap());
            assert!(last <= limit.value + limit.err_bound);
            let far = mzv_trunc_f64(&k, 1 << 16);
            assert!(far >= last - 1e-12 && far <= limit.value + limit.err_bound, "{k:?}");
        }
    }
}

#[test]
fn exact_truncation_is_a_stuffle_homomorphism() {
    let words: Vec<Vec<u32>> = (1..=4).flat_map(words_of).collect();
    for u in &words {
        for v in &words {
            let prod = &WordCombo::word(u.clone()) * &WordCombo::word(v.clone());
            let lhs = mzv_trunc_exact_combo_all(&prod, 30);
            let a = mzv_trunc_exact_all(&Word(u.clone()), 30);
            let b = mzv_trunc_exact_all(&Word(v.clone()), 30);
            for m in 0..=30 {
                assert_eq!(lhs[m], &a[m] * &b[m], "{u:?} * {v:?} at M={m}");
            }
        }
    }
}

#[test]
fn small_truncations_by_hand() {
    // ζ_4(2) = 1 + 1/4 + 1/9, ζ_4(1,2) = 1/4 + 1/9 + 1/18
    assert_eq!(mzv_trunc_exact(&Word(vec![2]), 4), BigRational::new(49.into(), 36.into()));
    assert_eq!(mzv_trunc_exact(&Word(vec![1, 2]), 4), BigRational::new(15.into(), 36.into()));
    assert!(mzv_trunc_exact(&Word(vec![1, 1]), 2).is_zero());
}

#[test]
fn error_bounds_are_honest() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..50 {
        let depth = rng.gen_range(1..=3);
        let mut k: Vec<u32> = (0..depth - 1).map(|_| rng.gen_range(1..=3)).collect();
        k.push(rng.gen_range(2..=4));
        let w = Word(k.clone());
        let r = mzv_numeric(&w, 1e-10).unwrap();
        let n = 1 << 14;
        // partial sums bound the value from below
        assert!(mzv_trunc_f64(&k, 2 * n) <= r.value + r.err_bound, "{k:?}");
        let t = mzv_numeric_truncated(&w, 1e-2, 4 * n).unwrap();
        assert!((r.value - t.value).abs() <= r.err_bound + t.err_bound, "{k:?}: {r:?} vs {t:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_respects_the_stuffle(u in admissible_word(2, 5), v in admissible_word(2, 5)) {
        let prod = &WordCombo::word(u.clone()) * &WordCombo::word(v.clone());
        let lhs = eval_combo(&prod, 1e-9).unwrap();
        let a = mzv_numeric(&Word(u), 1e-11).unwrap();
        let b = mzv_numeric(&Word(v), 1e-11).unwrap();
        let rhs = a.mul(&b);
        prop_assert!((lhs.value - rhs.value).abs() <= lhs.err_bound + rhs.err_bound + 1e-12);
    }
}
