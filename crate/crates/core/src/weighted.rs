//! Binomially weighted sums P_l(n; k), P_l(k), Q_l(k), their recursion in l
//! and the closed forms in depth 2 and 3.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{binom, compositions_min, sign};
use crate::error::{Error, Result};
use crate::mixed::{Atom, MixedCombo};
use crate::numerics::{eval_combo, riemann_zeta, EvalResult};
use crate::schur::MultiCornerIndex;
use crate::words::{Word, WordCombo};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSumSpec {
    pub n: Vec<u32>,
    pub k: Vec<u32>,
    pub l: u32,
}

impl WeightedSumSpec {
    pub fn new(n: Vec<u32>, k: Vec<u32>, l: u32) -> Result<Self> {
        if n.len() != k.len() {
            return Err(Error::Domain("n and k must have the same depth".into()));
        }
        if n.iter().chain(&k).any(|&x| x == 0) {
            return Err(Error::Domain("entries of n and k must be positive".into()));
        }
        Ok(WeightedSumSpec { n, k, l })
    }
}

fn int(q: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(q.into())
}

fn word(w: &[i64]) -> Word {
    Word(w.iter().map(|&x| x as u32).collect())
}

/// Σ over admissible w with w_i ≥ n_i and wt(w) = wt(k)+l of Π C(w_i−n_i, k_i−1)·ζ(w).
pub fn p_def(spec: &WeightedSumSpec) -> WordCombo {
    let d = spec.k.len();
    if d == 0 {
        return if spec.l == 0 { WordCombo::unit() } else { WordCombo::zero() };
    }
    let total = spec.k.iter().sum::<u32>() as i64 + spec.l as i64;
    let mut mins: Vec<i64> = spec.n.iter().map(|&x| x as i64).collect();
    mins[d - 1] = mins[d - 1].max(2);
    let mut out = WordCombo::zero();
    for w in compositions_min(total, &mins) {
        let mut c = BigInt::one();
        for i in 0..d {
            c *= binom(w[i] - spec.n[i] as i64, spec.k[i] as i64 - 1);
        }
        if !c.is_zero() {
            out.add_term(word(&w), int(c));
        }
    }
    out
}

pub fn p_std(k: &[u32], l: u32) -> WordCombo {
    p_def(&WeightedSumSpec { n: vec![1; k.len()], k: k.to_vec(), l })
}

pub fn q_std(k: &[u32], l: u32) -> Result<WordCombo> {
    if k.is_empty() {
        return Err(Error::Domain("Q_l needs depth ≥ 1".into()));
    }
    let mut n = vec![1; k.len()];
    n[k.len() - 1] = 2;
    Ok(p_def(&WeightedSumSpec { n, k: k.to_vec(), l }))
}

/// Q_l(k) = Σ_{j<k_d} (−1)^j P_{l+j}(k_1,…,k_{d−1},k_d−j).
pub fn q_via_p(k: &[u32], l: u32) -> Result<WordCombo> {
    let Some(&kd) = k.last() else {
        return Err(Error::Domain("Q_l needs depth ≥ 1".into()));
    };
    let mut out = WordCombo::zero();
    for j in 0..kd {
        let mut kk = k.to_vec();
        kk[k.len() - 1] = kd - j;
        out += p_std(&kk, l + j).scale_int(sign(j as i64));
    }
    Ok(out)
}

/// Linear extension of Q_l to combinations of words.
pub fn q_on_combo(c: &WordCombo, l: u32) -> WordCombo {
    c.map_linear(|w| if w.is_empty() { WordCombo::zero() } else { q_std(w.letters(), l).unwrap() })
}

fn rev_with(prefix: &[u32], last: u32) -> Vec<u32> {
    prefix.iter().rev().copied().chain(std::iter::once(last)).collect()
}

thread_local! {
    static P_MEMO: RefCell<HashMap<(Vec<u32>, u32), WordCombo>> = RefCell::new(HashMap::new());
}

/// P_l(k) through the recursion, descending in depth; full-depth factors come
/// from the definition.
pub fn p_recursive(k: &[u32], l: u32) -> WordCombo {
    let key = (k.to_vec(), l);
    if let Some(c) = P_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return c;
    }
    let d = k.len();
    let out = if d == 0 {
        if l == 0 {
            WordCombo::unit()
        } else {
            WordCombo::zero()
        }
    } else if l == 0 {
        if k[d - 1] >= 2 {
            WordCombo::word(k.to_vec())
        } else {
            WordCombo::zero()
        }
    } else if d == 1 {
        let c = binom((l + k[0] - 1) as i64, k[0] as i64 - 1);
        WordCombo::from_terms([(Word(vec![l + k[0]]), int(c))])
    } else if k[d - 1] >= 2 {
        first_sum(k, l).flatten()
    } else {
        let mut m = first_sum(k, l);
        m.extend(anti_hook_sum(k, l));
        m.flatten()
    };
    P_MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

// Σ_i Σ_a (−1)^{k_1+…+k_{i−1}+a} P_{k_i−1−a}(k_{i−1},…,k_1,l+1) P_a(k_{i+1},…,k_d)
fn first_sum(k: &[u32], l: u32) -> MixedCombo {
    let mut m = MixedCombo::zero();
    let mut prefix = 0i64;
    for i in 0..k.len() {
        for a in 0..k[i] {
            // the i = d factor has the full depth and is taken from the definition
            let left_k = rev_with(&k[..i], l + 1);
            let left =
                if left_k.len() == k.len() { p_std(&left_k, k[i] - 1 - a) } else { p_recursive(&left_k, k[i] - 1 - a) };
            let right = p_recursive(&k[i + 1..], a);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            m.push_int(sign(prefix + a as i64), vec![Atom::Combo(left), Atom::Combo(right)]);
        }
        prefix += k[i] as i64;
    }
    m
}

// the anti-hook correction for k_d = 1
fn anti_hook_sum(k: &[u32], l: u32) -> MixedCombo {
    let d = k.len();
    let total = k.iter().sum::<u32>() as i64 + l as i64 + 1;
    let mut m = MixedCombo::zero();
    for i in 1..d {
        // free variables: b_j for j ≠ i; b_0 ≥ max(2, l+1)
        let mut mins = vec![1i64; d - 1];
        mins[0] = 2.max(l as i64 + 1);
        for free in compositions_min(total - 2, &mins) {
            let mut b: Vec<i64> = free.clone();
            b.insert(i, 2);
            let mut coeff = binom(b[0] - 1, l as i64);
            for j in 1..d {
                if j != i {
                    coeff *= binom(b[j] - 1, k[j - 1] as i64 - 1);
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let outer = sign(l as i64 + d as i64 + k[i - 1] as i64 + b[..i].iter().sum::<i64>());
            let column: Vec<u32> = b[..i].iter().rev().map(|&x| x as u32).collect();
            for j in i..d {
                let tail: i64 = b[j + 1..].iter().sum();
                for c in 1..b[j] {
                    let mut row = vec![c as u32];
                    row.extend(b[j + 1..].iter().map(|&x| x as u32));
                    let hook = MultiCornerIndex::anti_hook(row, column.clone()).expect("admissible column");
                    let mut atoms = vec![Atom::AntiHook(hook)];
                    if j > i {
                        let mut z: Vec<u32> = b[i + 1..j].iter().map(|&x| x as u32).collect();
                        z.push((b[j] - c + 1) as u32);
                        atoms.push(Atom::Combo(WordCombo::word(z)));
                    }
                    let s = outer * sign(c + j as i64 + tail);
                    m.push_int(&coeff * s, atoms);
                }
            }
        }
    }
    m
}

/// The recursion for admissible k, as a formal sum of products.
pub fn p_recursive_admissible(k: &[u32], l: u32) -> Result<MixedCombo> {
    if k.len() < 2 || l == 0 || *k.last().unwrap() < 2 || k.contains(&0) {
        return Err(Error::Domain("needs admissible k of depth ≥ 2 and l > 0".into()));
    }
    Ok(first_sum(k, l))
}

/// The recursion for k with k_d = 1, including the anti-hook terms.
pub fn p_recursive_nonadmissible(k: &[u32], l: u32) -> Result<MixedCombo> {
    if k.len() < 2 || l == 0 || *k.last().unwrap() != 1 || k.contains(&0) {
        return Err(Error::Domain("needs k of depth ≥ 2 with k_d = 1 and l > 0".into()));
    }
    let mut m = first_sum(k, l);
    m.extend(anti_hook_sum(k, l));
    Ok(m)
}

fn z(w: &[i64]) -> Atom {
    Atom::Combo(WordCombo::word(w.iter().map(|&x| x as u32).collect::<Vec<_>>()))
}

fn hook(row: &[i64], col: &[i64]) -> Atom {
    let cv = |v: &[i64]| v.iter().map(|&x| x as u32).collect::<Vec<_>>();
    Atom::AntiHook(MultiCornerIndex::anti_hook(cv(row), cv(col)).expect("admissible column"))
}

fn b(n: i64, k: u32) -> BigInt {
    binom(n, k as i64)
}

/// Closed form of P_l(k1, k2) valid for any k1, k2 ≥ 1 and l > 0.
pub fn p_closed_depth2(k1: u32, k2: u32, l: u32) -> Result<MixedCombo> {
    if k1 == 0 || k2 == 0 || l == 0 {
        return Err(Error::Domain("needs k1, k2 ≥ 1 and l > 0".into()));
    }
    let (k1i, k2i, li) = (k1 as i64, k2 as i64, l as i64);
    let total = k1i + k2i + li;
    let mut m = MixedCombo::zero();
    for w in compositions_min(total, &[2, 2]) {
        let c = b(w[0] - 1, k2 - 1) * b(w[1] - 1, l) * sign(k2i + w[0]);
        m.push_int(c, vec![z(&w[..1]), z(&w[1..])]);
    }
    for w in compositions_min(total, &[1, 2]) {
        let c = b(w[0] - 1, k1 - 1) * b(w[1] - 1, l) * sign(k1i);
        m.push_int(c, vec![z(&w)]);
    }
    if k2 == 1 {
        m.push_int(b(li + k1i - 1, k1 - 1), vec![hook(&[1], &[li + k1i])]);
    }
    Ok(m)
}

/// Closed form of P_l(k1, k2, k3) valid for any k1, k2, k3 ≥ 1 and l > 0.
pub fn p_closed_depth3(k1: u32, k2: u32, k3: u32, l: u32) -> Result<MixedCombo> {
    if k1 == 0 || k2 == 0 || k3 == 0 || l == 0 {
        return Err(Error::Domain("needs k1, k2, k3 ≥ 1 and l > 0".into()));
    }
    let (k1i, k2i, k3i, li) = (k1 as i64, k2 as i64, k3 as i64, l as i64);
    let total = k1i + k2i + k3i + li;
    let mut m = MixedCombo::zero();
    for w in compositions_min(total, &[1, 1, 2]) {
        let c = b(w[0] - 1, k2 - 1) * b(w[1] - 1, k1 - 1) * b(w[2] - 1, l) * sign(k1i + k2i);
        m.push_int(c, vec![z(&w)]);
    }
    for w in compositions_min(total, &[1, 2, 2]) {
        let c = b(w[0] - 1, k2 - 1) * b(w[1] - 1, k3 - 1) * b(w[2] - 1, l) * sign(k2i + k3i + w[0] + w[1]);
        m.push_int(c, vec![z(&w[..2]), z(&w[2..])]);
    }
    for w in compositions_min(total, &[2, 1, 2]) {
        let c = b(w[0] - 1, k3 - 1) * b(w[1] - 1, k1 - 1) * b(w[2] - 1, l) * sign(k1i + k3i + w[0]);
        m.push_int(c, vec![z(&w[..1]), z(&w[1..])]);
    }
    if k3 == 1 {
        let s = k1i + k2i + li;
        for bb in compositions_min(s, &[2, 1]) {
            let (b0, b2) = (bb[0], bb[1]);
            let c = b(b0 - 1, l) * b(b2 - 1, k2 - 1) * sign(k2i + 1 + b2);
            if c.is_zero() {
                continue;
            }
            m.push_int(&c * sign(b2), vec![hook(&[1, b2], &[b0])]);
            for c2 in 1..b2 {
                m.push_int(&c * sign(c2), vec![hook(&[c2], &[b0]), z(&[b2 - c2 + 1])]);
            }
        }
        for bb in compositions_min(s, &[2, 1]) {
            let (b0, b1) = (bb[0], bb[1]);
            let c = b(b0 - 1, l) * b(b1 - 1, k1 - 1) * sign(k1i);
            m.push_int(c, vec![hook(&[1], &[b1, b0])]);
        }
    }
    Ok(m)
}

/// C(w − wt(n), k − d): the weight of ζ(w) in Σ_{dep k = d, wt k = k} P_{w−k}(n; k).
pub fn sum_p_fixed_weight_depth(n: &[u32], k_total: u32, w: u32) -> Result<BigInt> {
    let d = n.len() as u32;
    if d == 0 || k_total < d || w < d + 1 {
        return Err(Error::Domain("needs k ≥ d ≥ 1 and w ≥ d+1".into()));
    }
    let wt_n: u32 = n.iter().sum();
    Ok(binom(w as i64 - wt_n as i64, (k_total - d) as i64))
}

/// The combination Σ_{dep k = d, wt k = k_total} P_{w−k_total}(n; k).
pub fn sum_p_over_indices(n: &[u32], k_total: u32, w: u32) -> WordCombo {
    let mut out = WordCombo::zero();
    if w < k_total {
        return out;
    }
    for k in compositions_min(k_total as i64, &vec![1; n.len()]) {
        let k: Vec<u32> = k.into_iter().map(|x| x as u32).collect();
        out += p_def(&WeightedSumSpec { n: n.to_vec(), k, l: w - k_total });
    }
    out
}

/// Numeric values of both sides of the fixed weight-and-depth sum.
pub fn sum_p_fixed_weight_depth_check(n: &[u32], k_total: u32, w: u32, tol: f64) -> Result<(EvalResult, EvalResult)> {
    let c = sum_p_fixed_weight_depth(n, k_total, w)?;
    let lhs = eval_combo(&sum_p_over_indices(n, k_total, w), tol)?;
    let rhs = riemann_zeta(w, tol)?.scale_q(&int(c));
    Ok((lhs, rhs))
}
