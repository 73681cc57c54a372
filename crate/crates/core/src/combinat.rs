//! Small combinatorial helpers shared by the other modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient with the convention used throughout:
/// `n(n-1)...(n-k+1)/k!` for `k > 0`, `1` for `k = 0`, `0` for `k < 0`.
/// `n` may be negative.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn binom_q(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binom(n, k))
}

pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All compositions of `total` into `parts` parts with part `i` at least `mins[i]`,
/// in lexicographic order.
pub fn compositions_min(total: i64, mins: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if mins.is_empty() {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let rest_min: Vec<i64> = {
        let mut v = vec![0; mins.len() + 1];
        for i in (0..mins.len()).rev() {
            v[i] = v[i + 1] + mins[i];
        }
        v
    };
    if total < rest_min[0] {
        return out;
    }
    let mut cur = Vec::with_capacity(mins.len());
    fn rec(i: usize, left: i64, mins: &[i64], rest_min: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == mins.len() {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let hi = left - rest_min[i + 1];
        for v in mins[i]..=hi {
            cur.push(v);
            rec(i + 1, left - v, mins, rest_min, cur, out);
            cur.pop();
        }
    }
    rec(0, total, mins, &rest_min, &mut cur, &mut out);
    out
}

/// Compositions of `total` into exactly `parts` positive parts.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    compositions_min(total, &vec![1; parts])
}

/// Every composition (any number of positive parts) of `total`.
pub fn all_compositions(total: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for d in 1..=total.max(0) as usize {
        out.extend(compositions(total, d));
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}
