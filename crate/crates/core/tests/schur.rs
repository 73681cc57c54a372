use proptest::prelude::*;

use schurmzv::numerics::{eval_combo, riemann_zeta};
use schurmzv::schur::*;
use schurmzv::shapes::{all_skew_shapes, ribbon_to_spec, spec_to_shape, RibbonSpec, SkewShape};
use schurmzv::tableaux::{enumerate_admissible_fillings, Tableau};

#[test]
fn naive_and_direct_truncations_agree() {
    for shape in all_skew_shapes(4) {
        for t in enumerate_admissible_fillings(&shape, shape.size() as u32 + 2) {
            for m in [1, 2, 5, 9] {
                assert_eq!(schur_trunc_naive(&t, m), schur_trunc_direct(&t, m), "{shape} {:?} M={m}", t.entries());
            }
        }
    }
}

#[test]
fn truncations_of_admissible_fillings_increase() {
    for shape in all_skew_shapes(4) {
        for t in enumerate_admissible_fillings(&shape, shape.size() as u32 + 2) {
            let all = schur_trunc_direct_all(&t, 20);
            assert!(all.windows(2).all(|p| p[0] <= p[1]));
        }
    }
}

#[test]
fn filling_values() {
    // a column is an MZV, a row an MZSV
    let col = Tableau::new(SkewShape::column(2), vec![1, 2]).unwrap();
    assert_eq!(schur_to_combo(&col), schurmzv::words::WordCombo::word(vec![1, 2]));
    let row = Tableau::new(SkewShape::row(2), vec![1, 2]).unwrap();
    let v = schur_numeric(&row, 1e-10).unwrap();
    let z3 = riemann_zeta(3, 1e-12).unwrap();
    assert!((v.value - 2.0 * z3.value).abs() < 1e-9);
    let bad = Tableau::new(SkewShape::row(2), vec![2, 1]).unwrap();
    assert!(schur_numeric(&bad, 1e-8).is_err());
}

#[test]
fn anti_hook_matches_its_tableau() {
    // ζ[1 \\ 2] is the shape (2,2)/(1) with row entry 1 above corner 2 and column entry 2
    let mc = MultiCornerIndex::anti_hook(vec![1], vec![2]).unwrap();
    let t = multicorner_tableau(&mc).unwrap();
    assert_eq!(multicorner_to_combo(&mc), schur_to_combo(&t));
    assert_eq!(multicorner_system_combo(&mc), schur_to_combo(&t));
    assert!(MultiCornerIndex::anti_hook(vec![1], vec![2, 1]).is_err());
}

#[test]
fn spec_sum_matches_brute_force_on_ribbons() {
    for shape in all_skew_shapes(6) {
        if !shape.is_ribbon() {
            continue;
        }
        let spec = ribbon_to_spec(&shape).unwrap();
        for w in shape.size() as u32 + 1..=9 {
            let a = s_w_bruteforce(&shape, w, 1e-9).unwrap();
            let b = s_w_spec(&spec, w, 1e-9).unwrap();
            assert!(a.agrees(&b, 1e-8), "{shape} w={w}: {a:?} {b:?}");
        }
    }
}

fn spec_strategy() -> impl Strategy<Value = RibbonSpec> {
    (1usize..=3)
        .prop_flat_map(|n| (prop::collection::vec(0u32..=2, n), prop::collection::vec(1u32..=2, n)))
        .prop_map(|(s, r)| RibbonSpec::new(s, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn system_and_tableau_routes_agree(spec in spec_strategy(), extra in 0u32..=2) {
        prop_assume!(spec.is_geometric());
        let n = spec.n();
        // spread extra weight over the corners, which keeps every k_i admissible
        let ll: Vec<Vec<u32>> = spec.s.iter().map(|&s| vec![1; s as usize]).collect();
        let kk: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut k = vec![1; spec.r[i] as usize];
                *k.last_mut().unwrap() = 2 + if i == 0 { extra } else { 0 };
                k
            })
            .collect();
        let mc = MultiCornerIndex::new(ll, kk).unwrap();
        prop_assert_eq!(mc.spec(), spec.clone());
        let t = multicorner_tableau(&mc).unwrap();
        prop_assert_eq!(t.shape().clone(), spec_to_shape(&spec));
        prop_assert_eq!(multicorner_system_combo(&mc), schur_to_combo(&t));
        let v = eval_combo(&multicorner_to_combo(&mc), 1e-9).unwrap();
        prop_assert!(v.value > 0.0);
    }
}
