//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use schurmzv::combinat::{all_compositions, binom};
use schurmzv::formulas::*;
use schurmzv::mixed::MixedCombo;
use schurmzv::numerics::{eval_combo, mzv_trunc_exact_combo_all, riemann_zeta, EvalResult};
use schurmzv::posets::*;
use schurmzv::reference::*;
use schurmzv::schur::*;
use schurmzv::shapes::{all_skew_shapes, RibbonSpec, SkewShape};
use schurmzv::tableaux::enumerate_fillings;
use schurmzv::weighted::*;
use schurmzv::words::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: &EvalResult, b: &EvalResult, tol: f64, what: impl FnOnce() -> String) -> Result<(), String> {
    let diff = (a.value - b.value).abs();
    ensure(diff <= a.err_bound + b.err_bound + tol, || {
        format!("{}: {} vs {} (diff {diff:e})", what(), a.value, b.value)
    })
}

fn ev(c: &WordCombo, tol: f64) -> EvalResult {
    eval_combo(c, tol).expect("evaluation within budget")
}

fn zeta(w: u32, tol: f64) -> EvalResult {
    riemann_zeta(w, tol).unwrap()
}

fn spec(s: &[u32], r: &[u32]) -> RibbonSpec {
    RibbonSpec::new(s.to_vec(), r.to_vec()).unwrap()
}

fn shape(s: &str) -> SkewShape {
    s.parse().unwrap()
}

fn words_up_to(wt: u32) -> Vec<Vec<u32>> {
    (1..=wt as i64).flat_map(all_compositions).map(|c| c.into_iter().map(|x| x as u32).collect()).collect()
}

fn c1_oracle() -> Outcome {
    let m = 25;
    let mut n = 0;
    for sh in all_skew_shapes(6) {
        for w in sh.size() as u32..=8 {
            for t in enumerate_fillings(&sh, w) {
                let direct = schur_trunc_direct_all(&t, m);
                let via = mzv_trunc_exact_combo_all(&schur_to_combo(&t), m);
                ensure(direct == via, || format!("{sh} filling {:?}", t.entries()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} fillings, M = 0..={m}"))
}

fn c2_phi() -> Outcome {
    let shapes = all_skew_shapes(8);
    for sh in &shapes {
        ensure(phi_via_ssd(sh) == phi_via_jacobi_trudi(sh), || format!("{sh}"))?;
    }
    let mut closed = 0;
    for total in 1..=5u32 {
        for k in 0..=total {
            let n = total - k;
            let lam = vec![2; total as usize];
            let mu = vec![1; k as usize];
            let sh = SkewShape::from_parts(&lam, &mu).unwrap();
            ensure(phi_two_column_closed_form(n, k) == phi_via_ssd(&sh), || format!("two columns n={n} k={k}"))?;
            closed += 1;
        }
    }
    Ok(format!("{} shapes, {closed} two-column cases", shapes.len()))
}

fn c3_classical() -> Outcome {
    let tol = 1e-6;
    let mut n = 0;
    for d in 1..=3u32 {
        for w in d + 1..=9 {
            let z = zeta(w, 1e-10);
            let col = s_w_bruteforce(&SkewShape::column(d), w, 1e-9).unwrap();
            close(&col, &z, tol, || format!("column d={d} w={w}"))?;
            let row = s_w_bruteforce(&SkewShape::row(d), w, 1e-9).unwrap();
            let c = BigRational::from_integer(binom(w as i64 - 1, d as i64 - 1));
            close(&row, &z.scale_q(&c), tol, || format!("row d={d} w={w}"))?;
            n += 2;
        }
    }
    Ok(format!("{n} cases"))
}

fn c4_square() -> Outcome {
    let tol = 1e-6;
    for w in 5..=9 {
        let brute = s_w_bruteforce(&square_shape(), w, 1e-9).unwrap();
        let disp = square_22(w).eval(1e-9).unwrap();
        let oc = ev(&one_corner_sum(&square_shape(), w).unwrap(), 1e-9);
        close(&brute, &disp, tol, || format!("display w={w}"))?;
        close(&oc, &brute, tol, || format!("one-corner w={w}"))?;
    }
    Ok("w = 5..9".into())
}

fn c5_anti_hook() -> Outcome {
    let tol = 1e-6;
    let mut n = 0;
    for s in 0..=3u32 {
        for r in 1..=3u32 {
            let th = s + r + 1;
            let sp = spec(&[s], &[r]);
            for w in th..=th + 3 {
                let c = BigRational::from_integer(anti_hook_formula(s, r, w).unwrap());
                let expected = zeta(w, 1e-10).scale_q(&c);
                let got =
                    if sp.boxes() <= 6 { s_w_spec(&sp, w, 1e-9).unwrap() } else { ev(&s00_formula(s, &[r], w), 1e-9) };
                close(&got, &expected, tol, || format!("s={s} r={r} w={w}"))?;
                let f = ev(&s00_formula(s, &[r], w), 1e-9);
                close(&f, &expected, tol, || format!("s00 s={s} r={r} w={w}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} cases"))
}

fn c6_stairs() -> Outcome {
    let tol = 1e-5;
    for (r, n, which) in [(2u32, 2u32, 0), (1, 3, 1)] {
        let th = (r + 2) * n + 1;
        for w in th..=th + 3 {
            let c = stair_formula(r, n, w).unwrap();
            let printed = if which == 0 { stair_examples(w).0 } else { stair_examples(w).1 };
            ensure(c == printed, || format!("coefficient r={r} n={n} w={w}: {c} vs {printed}"))?;
            let sw = s_w_spec(&stair_spec(r, n), w, 1e-9).unwrap();
            close(&sw, &zeta(w, 1e-10).scale_q(&c), tol, || format!("stair r={r} n={n} w={w}"))?;
        }
    }
    let mut k = 0;
    for r in 1..=4u32 {
        for n in 1..=4u32 {
            for w in (r + 2) * n + 1..=30 {
                let c = stair_formula(r, n, w).unwrap();
                ensure(is_integer(&c) && c > BigRational::zero(), || format!("c_{w},{r}({n}) = {c}"))?;
                let alt = BigRational::from_integer(stair_formula_integral(r, n, w).unwrap());
                ensure(c == alt, || format!("integral form r={r} n={n} w={w}"))?;
                k += 1;
            }
        }
    }
    Ok(format!("8 values, {k} integrality checks"))
}

fn two_corner_params(max_total: u32) -> Vec<(u32, u32, u32, u32)> {
    let mut out = Vec::new();
    for s1 in 0..=max_total {
        for s2 in 0..=max_total {
            for r1 in 1..=max_total {
                for r2 in 1..=max_total {
                    if s1 + s2 + r1 + r2 <= max_total {
                        out.push((s1, s2, r1, r2));
                    }
                }
            }
        }
    }
    out
}

fn c7_inductive() -> Outcome {
    let mut n = 0;
    for (s1, s2, r1, r2) in two_corner_params(6) {
        if r1 < 2 {
            continue;
        }
        let sp = spec(&[s1, s2], &[r1, r2]);
        for w in sp.boxes() + 1..=9 {
            let rep = inductive_reduction_check(&sp, 1, w, 15, 1e-8).unwrap();
            ensure(rep.exact_match == Some(true), || rep.to_string())?;
            n += 1;
        }
    }
    Ok(format!("{n} exact cases at M = 15"))
}

fn c8_two_corner() -> Outcome {
    let tol = 1e-6;
    let mut n = 0;
    for (s1, s2, r1, r2) in two_corner_params(6) {
        let sp = spec(&[s1, s2], &[r1, r2]);
        for w in s1 + s2 + r1 + r2 + 2..=10 {
            let brute = s_w_spec(&sp, w, 1e-9).unwrap();
            let pre = two_corner_prelim(s1, s2, r1, r2, w).unwrap().eval(1e-9).unwrap();
            close(&pre, &brute, tol, || format!("prelim {:?} w={w}", (s1, s2, r1, r2)))?;
            let f = two_corner_formula(s1, s2, r1, r2, w).unwrap().eval(1e-9).unwrap();
            close(&f, &brute, tol, || format!("A/B/C {:?} w={w}", (s1, s2, r1, r2)))?;
            if s2 == 0 {
                let f = ev(&s00_formula(s1, &[r1, r2], w), 1e-9);
                close(&f, &brute, tol, || format!("s00 {:?} w={w}", (s1, r1, r2)))?;
            }
            n += 1;
        }
    }
    let mut s00 = 0;
    for s in 0..=3u32 {
        for r in words_up_to(6 - s) {
            if r.len() != 3 {
                continue;
            }
            let mut sv = vec![0; 3];
            sv[0] = s;
            let sp = RibbonSpec::new(sv, r.clone()).unwrap();
            for w in sp.boxes() + 3..=10 {
                let brute = s_w_spec(&sp, w, 1e-9).unwrap();
                close(&ev(&s00_formula(s, &r, w), 1e-9), &brute, tol, || format!("s00 s={s} r={r:?} w={w}"))?;
                s00 += 1;
            }
        }
    }
    let mut hooks = 0;
    for s in 1..=4u32 {
        for r in 1..=5 - s {
            for w in s + r + 2..=10 {
                let brute = s_w_spec(&spec(&[0, s - 1], &[r, 1]), w, 1e-9).unwrap();
                let f = hook_formula(s, r, w).unwrap().eval(1e-9).unwrap();
                close(&f, &brute, tol, || format!("hook s={s} r={r} w={w}"))?;
                hooks += 1;
            }
        }
    }
    for w in 7..=8 {
        let brute = s_w_bruteforce(&shape("3,1,1"), w, 1e-9).unwrap();
        close(&hook_311(w).eval(1e-9).unwrap(), &brute, tol, || format!("printed (3,1,1) w={w}"))?;
        close(&hook_formula(3, 2, w).unwrap().eval(1e-9).unwrap(), &brute, tol, || format!("hook (3,1,1) w={w}"))?;
    }
    Ok(format!("{n} two-corner, {s00} depth-3 s00, {hooks} hook cases"))
}

fn c9_weighted() -> Outcome {
    let mut n = 0;
    for k in words_up_to(6) {
        for l in 0..=4 {
            ensure(q_via_p(&k, l).unwrap() == q_std(&k, l).unwrap(), || format!("Q bridge k={k:?} l={l}"))?;
            n += 1;
        }
    }
    let tol = 1e-6;
    let mut rec = 0;
    for k in words_up_to(5) {
        for l in 1..=3u32 {
            let def = ev(&p_std(&k, l), 1e-9);
            let d = k.len();
            let mut routes: Vec<(&str, MixedCombo)> = Vec::new();
            if d >= 2 && *k.last().unwrap() >= 2 {
                routes.push(("rec-adm", p_recursive_admissible(&k, l).unwrap()));
            }
            if d >= 2 && *k.last().unwrap() == 1 {
                routes.push(("rec-nonadm", p_recursive_nonadmissible(&k, l).unwrap()));
            }
            if d == 2 {
                routes.push(("closed2", p_closed_depth2(k[0], k[1], l).unwrap()));
            }
            if d == 3 {
                routes.push(("closed3", p_closed_depth3(k[0], k[1], k[2], l).unwrap()));
            }
            for (name, m) in routes {
                close(&m.eval(1e-9).unwrap(), &def, tol, || format!("{name} k={k:?} l={l}"))?;
                rec += 1;
            }
        }
    }
    let mut bps = 0;
    for d in 1..=3usize {
        for last2 in [false, true] {
            let mut nn = vec![1; d];
            if last2 {
                nn[d - 1] = 2;
            }
            for kt in d as u32..=d as u32 + 2 {
                for w in kt + 1..=kt + 4 {
                    if w < nn.iter().sum::<u32>() + 1 {
                        continue;
                    }
                    let (a, b) = sum_p_fixed_weight_depth_check(&nn, kt, w, 1e-9).unwrap();
                    close(&a, &b, tol, || format!("binomial sum n={nn:?} k={kt} w={w}"))?;
                    bps += 1;
                }
            }
        }
    }
    let mut bounded = 0;
    for k in words_up_to(5) {
        let forms: Vec<MixedCombo> = match k.len() {
            2 => (1..=6).map(|l| p_closed_depth2(k[0], k[1], l).unwrap()).collect(),
            3 => (1..=6).map(|l| p_closed_depth3(k[0], k[1], k[2], l).unwrap()).collect(),
            _ => continue,
        };
        let terms: Vec<usize> = forms.iter().map(|m| m.len()).collect();
        ensure(terms.iter().all(|&c| c == terms[0]), || format!("term counts for k={k:?}: {terms:?}"))?;
        // cancellations can only shrink the expanded word count at small l
        let words: Vec<usize> = forms.iter().map(|m| m.flatten().len()).collect();
        let stable_from = (k.iter().sum::<u32>() as usize).saturating_sub(2).max(1);
        let top = words[5];
        ensure(words[stable_from - 1..].iter().all(|&c| c == top) && words.iter().all(|&c| c <= top), || {
            format!("expanded word counts for k={k:?}: {words:?}")
        })?;
        bounded += 1;
    }
    Ok(format!("{n} bridge, {rec} recursion, {bps} binomial-sum, {bounded} boundedness cases"))
}

fn c10_derivation() -> Outcome {
    let ws = words_up_to(5);
    let mut n = 0;
    for u in &ws {
        for v in &ws {
            if u.iter().sum::<u32>() + v.iter().sum::<u32>() > 5 {
                continue;
            }
            let (u, v) = (WordCombo::word(u.clone()), WordCombo::word(v.clone()));
            let lhs = derivation(&(&u * &v));
            let rhs = &(&derivation(&u) * &v) + &(&u * &derivation(&v));
            ensure(lhs == rhs, || format!("derivation on {u} * {v}"))?;
            n += 1;
        }
    }
    let mut q = 0;
    for v in &ws {
        let v = WordCombo::word(v.clone());
        for l in 2..=5u32 {
            let lhs = q_on_combo(&v, l).scale_int(l as i64 - 1);
            let rhs = q_on_combo(&derivation(&v), l - 1);
            ensure(lhs == rhs, || format!("(l−1)Q_l vs Q_(l−1)∂ on {v}, l={l}"))?;
            q += 1;
        }
    }
    Ok(format!("{n} product pairs, {q} Q identities"))
}

fn sw_brute(sh: &SkewShape, w: u32) -> EvalResult {
    s_w_bruteforce(sh, w, 1e-9).unwrap()
}

fn relation_brute(base: &SkewShape, terms: &[(SkewShape, i64)], w: u32, tol: f64) -> Result<(), String> {
    let mut lhs = EvalResult::zero();
    for (sh, c) in terms {
        lhs = lhs.add(&sw_brute(sh, w).scale(*c as f64));
    }
    let rhs = sw_brute(base, w).scale(w as f64 - base.size() as f64 - 1.0);
    close(&lhs, &rhs, tol, || format!("relation for {base} w={w}"))
}

fn c11_relations() -> Outcome {
    let tol = 1e-5;
    let sq = square_shape();
    let mut terms = sw_relation_terms(&sq).unwrap();
    terms.sort();
    let mut expected = vec![(example_i_shape(), 2), (example_ii_shape(), -2)];
    expected.sort();
    ensure(terms == expected, || format!("square relation terms {terms:?}"))?;
    for w in 6..=9 {
        let rep = sw_relation_check(&sq, w, 1e-9).unwrap();
        ensure(rep.passed, || rep.to_string())?;
        relation_brute(&sq, &terms, w, tol)?;
    }
    let (base, four) = four_row_relation();
    let mut got = sw_relation_terms(&base).unwrap();
    got.sort();
    let mut four_sorted = four.clone();
    four_sorted.sort();
    ensure(got == four_sorted, || format!("four-row terms {got:?}"))?;
    for w in 8..=10 {
        let rep = sw_relation_check(&base, w, 1e-9).unwrap();
        ensure(rep.passed, || rep.to_string())?;
        relation_brute(&base, &four, w, tol)?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut pool: Vec<SkewShape> = all_skew_shapes(7)
        .into_iter()
        .filter(|s| s.is_connected() && s.corners().len() == 1 && s.size() >= 2)
        .collect();
    pool.shuffle(&mut rng);
    let mut n = 0;
    for sh in pool.iter().take(12) {
        let w = sh.size() as u32 + 2;
        let rep = sw_relation_check(sh, w, 1e-9).unwrap();
        ensure(rep.passed, || rep.to_string())?;
        let oc = ev(&one_corner_sum(sh, w).unwrap(), 1e-9);
        close(&oc, &sw_brute(sh, w), tol, || format!("one-corner sum {sh} w={w}"))?;
        n += 1;
    }
    Ok(format!("square w=6..9, four-row w=8..10, {n} random shapes"))
}

fn c12_posets() -> Outcome {
    let x: TwoPoset = "0101:1<0,1<2,2<3".parse().unwrap();
    let tot = total_extensions(&x, DEFAULT_CAP).unwrap();
    ensure(tot == BTreeMap::from([(vec![1, 0, 1, 0], 1), (vec![1, 0, 0, 1], 2)]), || format!("[X]^tot = {tot:?}"))?;
    ensure(admissible_part(&x, DEFAULT_CAP).unwrap() == WordCombo::word(vec![2, 2]), || "[X]^adm".into())?;
    let mut series = 0;
    let lls: Vec<Vec<u32>> = std::iter::once(vec![]).chain(words_up_to(3)).collect();
    for ll in &lls {
        for kk in words_up_to(4) {
            if *kk.last().unwrap() < 2 {
                continue;
            }
            let rep = verify_integral_series(ll, &kk, 1e-6).unwrap();
            ensure(rep.passed, || rep.to_string())?;
            series += 1;
        }
    }
    let (mut formal, mut numeric) = (0, Vec::new());
    for k in words_up_to(4) {
        for l in 1..=3u32 {
            let adm = admissible_part(&build_x(l, &k).unwrap(), DEFAULT_CAP).unwrap();
            let p = p_std(&k, l);
            if adm == p {
                formal += 1;
            } else {
                close(&ev(&adm, 1e-9), &ev(&p, 1e-9), 1e-6, || format!("X_{l}({k:?})"))?;
                numeric.push(format!("X_{l}({k:?})"));
            }
        }
    }
    for ce in &numeric {
        eprintln!("    formal mismatch (numeric agreement): {ce}");
    }
    Ok(format!("{series} integral series, X vs P: {formal} formal, {} numeric only", numeric.len()))
}

fn c13_examples() -> Outcome {
    let tol = 1e-5;
    for w in 6..=8 {
        for (sh, disp, name) in [(example_i_shape(), example_i(w), "(i)"), (example_ii_shape(), example_ii(w), "(ii)")]
        {
            let oc = ev(&one_corner_sum(&sh, w).unwrap(), 1e-9);
            close(&oc, &disp.eval(1e-9).unwrap(), tol, || format!("{name} display w={w}"))?;
            close(&oc, &sw_brute(&sh, w), tol, || format!("{name} brute force w={w}"))?;
        }
    }
    Ok("w = 6..8".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("exact truncated oracle equivalence", c1_oracle),
        ("phi by decompositions and by determinant", c2_phi),
        ("classical sum formulas", c3_classical),
        ("2x2 square sum formula", c4_square),
        ("anti-hook sum formula", c5_anti_hook),
        ("stairs of tread one", c6_stairs),
        ("inductive corner reduction", c7_inductive),
        ("s00, preliminary and two-corner formulas, hooks", c8_two_corner),
        ("weighted sums P and Q", c9_weighted),
        ("derivation identities", c10_derivation),
        ("S_w relations", c11_relations),
        ("2-poset layer", c12_posets),
        ("worked one-corner examples", c13_examples),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
