//! Schur MZVs: expansion into MZV words, the truncated direct sum, the
//! multi-corner ribbon series and the weighted sums S_w.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::compositions_min;
use crate::error::{Error, Result};
use crate::levels::LevelSystem;
use crate::numerics::{eval_combo, EvalResult};
use crate::shapes::{Cell, RibbonSpec, SkewShape};
use crate::tableaux::{enumerate_admissible_fillings, enumerate_ssyt, Tableau};
use crate::words::{shape_levels, Word, WordCombo};

/// Index data (l_1,…,l_n; k_1,…,k_n) of the multi-corner series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiCornerIndex {
    pub ll: Vec<Vec<u32>>,
    pub kk: Vec<Vec<u32>>,
}

impl MultiCornerIndex {
    pub fn new(ll: Vec<Vec<u32>>, kk: Vec<Vec<u32>>) -> Result<Self> {
        if kk.is_empty() || ll.len() != kk.len() {
            return Err(Error::Domain("need n ≥ 1 blocks with matching ll and kk".into()));
        }
        if kk.iter().any(|k| k.is_empty() || *k.last().unwrap() < 2) {
            return Err(Error::NonAdmissible("every k_i must be non-empty and admissible".into()));
        }
        if ll.iter().chain(&kk).flatten().any(|&x| x == 0) {
            return Err(Error::Domain("entries must be positive".into()));
        }
        Ok(MultiCornerIndex { ll, kk })
    }

    /// The anti-hook ζ[l \\ k]: one block.
    pub fn anti_hook(l: Vec<u32>, k: Vec<u32>) -> Result<Self> {
        Self::new(vec![l], vec![k])
    }

    pub fn spec(&self) -> RibbonSpec {
        RibbonSpec {
            s: self.ll.iter().map(|l| l.len() as u32).collect(),
            r: self.kk.iter().map(|k| k.len() as u32).collect(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.ll.iter().chain(&self.kk).flatten().sum()
    }
}

fn counts_to_combo(m: HashMap<Vec<u32>, u128>) -> WordCombo {
    WordCombo::from_terms(m.into_iter().map(|(w, c)| (Word(w), BigRational::from_integer(BigInt::from(c)))))
}

/// Σ over semi-standard decompositions of the word of block sums.
pub fn schur_to_combo(t: &Tableau) -> WordCombo {
    counts_to_combo(shape_levels(t.shape(), t.entries().to_vec()).expand())
}

pub fn schur_numeric(t: &Tableau, tol: f64) -> Result<EvalResult> {
    if !t.is_admissible() {
        return Err(Error::NonAdmissible(format!("filling {t}")));
    }
    eval_combo(&schur_to_combo(t), tol)
}

/// Literal sum over semi-standard tableaux with entries below M.
pub fn schur_trunc_naive(t: &Tableau, m: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for vals in enumerate_ssyt(t.shape(), m) {
        let mut den = BigInt::one();
        for (v, k) in vals.iter().zip(t.entries()) {
            den *= num_traits::pow(BigInt::from(*v), *k as usize);
        }
        acc += BigRational::new(BigInt::one(), den);
    }
    acc
}

/// ζ_M of a Schur filling, summed directly over the tableaux.
pub fn schur_trunc_direct(t: &Tableau, m: u32) -> BigRational {
    schur_trunc_direct_all(t, m).pop().unwrap()
}

/// The direct truncated sums for every M in 0..=m_max.
///
/// The sum factors over connected components; inside a component the tableaux
/// are enumerated once with entries < m_max, the last cell is summed from
/// prefix tables, and contributions are bucketed by their largest entry.
pub fn schur_trunc_direct_all(t: &Tableau, m_max: u32) -> Vec<BigRational> {
    let mut l = BigUint::one();
    for m in 1..m_max.max(1) {
        l = l.lcm(&BigUint::from(m));
    }
    let mut total: Vec<BigUint> = vec![BigUint::one(); m_max as usize + 1];
    for (shape, entries) in split_components(t) {
        let part = direct_component(&shape, &entries, m_max, &l);
        for (a, b) in total.iter_mut().zip(part.iter()) {
            *a *= b;
        }
    }
    let den = BigInt::from(num_traits::pow(l, t.weight() as usize));
    total.into_iter().map(|x| BigRational::new(BigInt::from(x), den.clone())).collect()
}

fn split_components(t: &Tableau) -> Vec<(SkewShape, Vec<u32>)> {
    let map = t.entry_map();
    let cells = t.shape().cells();
    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    let mut out = Vec::new();
    for &c in &cells {
        if !seen.insert(c) {
            continue;
        }
        let mut comp = vec![c];
        let mut stack = vec![c];
        while let Some((i, j)) = stack.pop() {
            for n in [(i + 1, j), (i, j + 1), (i.wrapping_sub(1), j), (i, j.wrapping_sub(1))] {
                if map.contains_key(&n) && seen.insert(n) {
                    comp.push(n);
                    stack.push(n);
                }
            }
        }
        comp.sort();
        let entries = comp.iter().map(|c| map[c]).collect();
        out.push((SkewShape::from_cells(&comp).expect("component"), entries));
    }
    out
}

type DirectKey = (SkewShape, Vec<u32>, u32);

thread_local! {
    static DIRECT_MEMO: RefCell<HashMap<DirectKey, Rc<Vec<BigUint>>>> = RefCell::new(HashMap::new());
}

// Primes below 2^62 used for the residue computation of the direct sums.
const PRIMES: [u64; 32] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
    4611686018427387091,
    4611686018427387073,
    4611686018427386981,
    4611686018427386923,
    4611686018427386911,
    4611686018427386903,
    4611686018427386897,
    4611686018427386887,
];

// Montgomery arithmetic modulo an odd p < 2^62 with R = 2^64.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    neg_inv: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        Mont { p, neg_inv: inv.wrapping_neg() }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn to_mont(self, x: &BigUint) -> u64 {
        ((x << 64u32) % self.p).try_into().expect("residue fits")
    }

    fn from_mont(self, x: u64) -> u64 {
        self.mul(x, 1)
    }
}

struct Frame<'a> {
    n: usize,
    hi: i64,
    left: &'a [Option<usize>],
    up: &'a [Option<usize>],
    mods: &'a [Mont],
    // pw[pos][v·K + j]: (L/v)^{k_pos} modulo the j-th prime, Montgomery form
    pw: &'a [Vec<u64>],
    last_prefix: &'a [u64],
}

impl Frame<'_> {
    fn lo(&self, vals: &[i64], p: usize) -> i64 {
        let mut lo = 1;
        if let Some(x) = self.left[p] {
            lo = lo.max(vals[x]);
        }
        if let Some(x) = self.up[p] {
            lo = lo.max(vals[x] + 1);
        }
        lo
    }
}

// Accumulators, each indexed by value·K + prime: `low[c]` collects tableaux whose last
// entry is at most the current maximum c, `start[s]` those where it is a new maximum ≥ s.
struct Acc {
    low: Vec<u64>,
    start: Vec<u64>,
}

fn direct_rec(f: &Frame, pos: usize, vals: &mut [i64], prods: &mut [u64], cm: i64, acc: &mut Acc) {
    let k = f.mods.len();
    let a = f.lo(vals, pos);
    if pos == f.n - 1 {
        if a > f.hi {
            return;
        }
        let prod = &prods[pos * k..(pos + 1) * k];
        if a <= cm {
            let top = cm.min(f.hi) as usize;
            for (j, m) in f.mods.iter().enumerate() {
                let s = m.sub(f.last_prefix[top * k + j], f.last_prefix[(a as usize - 1) * k + j]);
                let slot = &mut acc.low[cm as usize * k + j];
                *slot = m.add(*slot, m.mul(prod[j], s));
            }
        }
        let s = a.max(cm + 1);
        if s <= f.hi {
            for (j, m) in f.mods.iter().enumerate() {
                let slot = &mut acc.start[s as usize * k + j];
                *slot = m.add(*slot, prod[j]);
            }
        }
        return;
    }
    for v in a..=f.hi {
        vals[pos] = v;
        let (cur, next) = prods.split_at_mut((pos + 1) * k);
        let cur = &cur[pos * k..];
        let table = &f.pw[pos][v as usize * k..(v as usize + 1) * k];
        for (j, m) in f.mods.iter().enumerate() {
            next[j] = m.mul(cur[j], table[j]);
        }
        direct_rec(f, pos + 1, vals, prods, cm.max(v), acc);
    }
}

// entry M is L^{wt}·Σ over tableaux with entries < M, computed from residues
// modulo enough primes to exceed the a-priori bound L^{wt}·m_max^{n}.
fn direct_component(shape: &SkewShape, entries: &[u32], m_max: u32, l: &BigUint) -> Rc<Vec<BigUint>> {
    let key = (shape.clone(), entries.to_vec(), m_max);
    if let Some(r) = DIRECT_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return r;
    }
    let cells = shape.cells();
    let n = cells.len();
    let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let left: Vec<Option<usize>> =
        cells.iter().map(|&(i, j)| if j > 1 { index.get(&(i, j - 1)).copied() } else { None }).collect();
    let up: Vec<Option<usize>> =
        cells.iter().map(|&(i, j)| if i > 1 { index.get(&(i - 1, j)).copied() } else { None }).collect();
    let size = m_max.max(1) as usize;

    let weight: u32 = entries.iter().sum();
    let bound = num_traits::pow(l.clone(), weight as usize) * num_traits::pow(BigUint::from(m_max.max(2)), n) * 2u32;
    let mut primes = Vec::new();
    let mut modulus = BigUint::one();
    for &p in PRIMES.iter() {
        if modulus > bound {
            break;
        }
        primes.push(p);
        modulus *= p;
    }
    assert!(modulus > bound, "direct sum too large for the residue table");
    let mods: Vec<Mont> = primes.iter().map(|&p| Mont::new(p)).collect();
    let k = mods.len();

    let pw: Vec<Vec<u64>> = entries
        .iter()
        .map(|&e| {
            let mut t = vec![0u64; size * k];
            for v in 1..size {
                let r = num_traits::pow(l / BigUint::from(v), e as usize);
                for (j, m) in mods.iter().enumerate() {
                    t[v * k + j] = m.to_mont(&r);
                }
            }
            t
        })
        .collect();
    let last = &pw[n - 1];
    let mut last_prefix = vec![0u64; size * k];
    for v in 1..size {
        for (j, m) in mods.iter().enumerate() {
            last_prefix[v * k + j] = m.add(last_prefix[(v - 1) * k + j], last[v * k + j]);
        }
    }
    let frame =
        Frame { n, hi: m_max as i64 - 1, left: &left, up: &up, mods: &mods, pw: &pw, last_prefix: &last_prefix };
    let mut acc = Acc { low: vec![0; size * k], start: vec![0; (size + 1) * k] };
    if frame.hi >= 1 {
        let mut prods = vec![0u64; n * k];
        for (j, m) in mods.iter().enumerate() {
            prods[j] = m.to_mont(&BigUint::one());
        }
        direct_rec(&frame, 0, &mut vec![0; n], &mut prods, 0, &mut acc);
    }
    // residues of the sum over tableaux with largest entry v
    let mut bucket = acc.low;
    let mut running = vec![0u64; k];
    for v in 1..size {
        for (j, m) in mods.iter().enumerate() {
            running[j] = m.add(running[j], acc.start[v * k + j]);
            bucket[v * k + j] = m.add(bucket[v * k + j], m.mul(running[j], last[v * k + j]));
        }
    }
    // CRT reconstruction of each bucket
    let mut values = vec![BigUint::zero(); size];
    let mut modulus = BigUint::one();
    for (j, m) in mods.iter().enumerate() {
        let pb = BigUint::from(m.p);
        let inv = BigInt::from(&modulus % &pb).extended_gcd(&BigInt::from(m.p)).x.mod_floor(&BigInt::from(m.p));
        let inv = inv.to_biguint().expect("non-negative inverse");
        for (v, x) in values.iter_mut().enumerate() {
            let r = BigUint::from(m.from_mont(bucket[v * k + j]));
            let diff = (r + &pb - (&*x % &pb)) % &pb;
            *x += &modulus * ((diff * &inv) % &pb);
        }
        modulus *= &pb;
    }
    let mut out = vec![BigUint::zero(); m_max as usize + 1];
    let mut total = BigUint::zero();
    for m in 1..=m_max as usize {
        total += &values[m - 1];
        out[m] = total.clone();
    }
    let rc = Rc::new(out);
    DIRECT_MEMO.with(|m| m.borrow_mut().insert(key, rc.clone()));
    rc
}

/// Cell positions of a ribbon spec: for block i the row cells (left to right)
/// and the column cells (top to bottom, corner last), translated like `spec_to_shape`.
fn spec_layout(spec: &RibbonSpec) -> (SkewShape, Vec<(Vec<Cell>, Vec<Cell>)>) {
    let total = spec.boxes() as usize + 2;
    let mut blocks = Vec::new();
    let mut row = total;
    let mut col = 1usize;
    for (i, (&s, &r)) in spec.s.iter().zip(&spec.r).enumerate() {
        if i > 0 {
            row -= 1;
        }
        let rc: Vec<Cell> = (col..col + s as usize).map(|c| (row, c)).collect();
        col += s as usize;
        let cc: Vec<Cell> = (0..r as usize).rev().map(|k| (row - k, col)).collect();
        row -= r as usize - 1;
        blocks.push((rc, cc));
    }
    let all: Vec<Cell> = blocks.iter().flat_map(|(a, b)| a.iter().chain(b)).copied().collect();
    let min_row = all.iter().map(|c| c.0).min().unwrap();
    let shape = SkewShape::from_cells(&all).expect("ribbon");
    let shift = |c: &Cell| (c.0 - min_row + 1, c.1);
    let blocks =
        blocks.into_iter().map(|(a, b)| (a.iter().map(shift).collect(), b.iter().map(shift).collect())).collect();
    (shape, blocks)
}

/// The ribbon tableau realizing a multi-corner index (needs s_i > 0 for i ≥ 2).
pub fn multicorner_tableau(mc: &MultiCornerIndex) -> Result<Tableau> {
    let spec = mc.spec();
    if !spec.is_geometric() {
        return Err(Error::Domain("s_i = 0 for some i ≥ 2 has no tableau".into()));
    }
    let (shape, blocks) = spec_layout(&spec);
    let mut map: HashMap<Cell, u32> = HashMap::new();
    for ((rc, cc), (l, k)) in blocks.iter().zip(mc.ll.iter().zip(&mc.kk)) {
        for (c, v) in rc.iter().zip(l) {
            map.insert(*c, *v);
        }
        for (c, v) in cc.iter().zip(k) {
            map.insert(*c, *v);
        }
    }
    let entries = shape.cells().iter().map(|c| map[c]).collect();
    Tableau::new(shape, entries)
}

/// Variables b_{i,·}, a_{i,·} with the inequality chain of the multi-corner series.
fn multicorner_system(spec: &RibbonSpec) -> (LevelSystem, Vec<(Vec<usize>, Vec<usize>)>) {
    let mut vars = Vec::new();
    let mut idx = 0;
    for (&s, &r) in spec.s.iter().zip(&spec.r) {
        let b: Vec<usize> = (idx..idx + s as usize).collect();
        idx += s as usize;
        let a: Vec<usize> = (idx..idx + r as usize).collect();
        idx += r as usize;
        vars.push((b, a));
    }
    let mut sys = LevelSystem::new(vec![1; idx]);
    for (i, (b, a)) in vars.iter().enumerate() {
        for w in b.windows(2) {
            sys.weak(w[0], w[1]);
        }
        if let Some(&last) = b.last() {
            sys.weak(last, *a.last().unwrap());
        }
        for w in a.windows(2) {
            sys.strict(w[0], w[1]);
        }
        if let Some((nb, na)) = vars.get(i + 1) {
            let first = nb.first().copied().unwrap_or(*na.last().unwrap());
            sys.strict(first, a[0]);
        }
    }
    (sys, vars)
}

fn with_weights(sys: &LevelSystem, weights: Vec<u32>) -> LevelSystem {
    let mut s = sys.clone();
    s.set_weights(weights);
    s
}

/// The multi-corner series expanded into MZV words by classifying the orderings
/// of its summation variables.
pub fn multicorner_system_combo(mc: &MultiCornerIndex) -> WordCombo {
    let (sys, _) = multicorner_system(&mc.spec());
    let weights: Vec<u32> = mc.ll.iter().zip(&mc.kk).flat_map(|(l, k)| l.iter().chain(k)).copied().collect();
    counts_to_combo(with_weights(&sys, weights).expand())
}

pub fn multicorner_to_combo(mc: &MultiCornerIndex) -> WordCombo {
    match multicorner_tableau(mc) {
        Ok(t) => schur_to_combo(&t),
        Err(_) => multicorner_system_combo(mc),
    }
}

/// Word counts of Σ over admissible fillings, using one precomputed list of
/// ordered partitions for the whole sum.
fn sum_over_fillings(sys: &LevelSystem, fillings: impl Iterator<Item = Vec<u32>>) -> WordCombo {
    let parts: Vec<Vec<u64>> = sys.partitions().collect();
    let n = sys.len();
    let mut acc: HashMap<Vec<u32>, u128> = HashMap::new();
    for f in fillings {
        for p in &parts {
            let word: Vec<u32> = p.iter().map(|&b| (0..n).filter(|&x| b >> x & 1 == 1).map(|x| f[x]).sum()).collect();
            *acc.entry(word).or_insert(0) += 1;
        }
    }
    counts_to_combo(acc)
}

/// S_w(λ/μ) as a combination of MZV words.
pub fn sw_shape_combo(shape: &SkewShape, w: u32) -> WordCombo {
    if shape.is_empty() {
        return if w == 0 { WordCombo::unit() } else { WordCombo::zero() };
    }
    let sys = shape_levels(shape, vec![1; shape.size()]);
    let fillings = enumerate_admissible_fillings(shape, w).map(|t| t.entries().to_vec());
    sum_over_fillings(&sys, fillings)
}

pub fn s_w_bruteforce(shape: &SkewShape, w: u32, tol: f64) -> Result<EvalResult> {
    eval_combo(&sw_shape_combo(shape, w), tol)
}

/// S_w of a ribbon spec as a combination of MZV words: the sum of the
/// multi-corner series over all indices of the given depths and weight w.
pub fn sw_spec_combo(spec: &RibbonSpec, w: u32) -> WordCombo {
    thread_local! {
        static MEMO: RefCell<HashMap<(RibbonSpec, u32), WordCombo>> = RefCell::new(HashMap::new());
    }
    let key = (spec.clone(), w);
    if let Some(c) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return c;
    }
    let (sys, vars) = multicorner_system(spec);
    // corners a_{i,r_i} need at least 2
    let mut mins = vec![1i64; sys.len()];
    for (_, a) in &vars {
        mins[*a.last().unwrap()] = 2;
    }
    let fillings = compositions_min(w as i64, &mins).into_iter().map(|c| c.into_iter().map(|x| x as u32).collect());
    let combo = sum_over_fillings(&sys, fillings);
    MEMO.with(|m| m.borrow_mut().insert(key, combo.clone()));
    combo
}

pub fn s_w_spec(spec: &RibbonSpec, w: u32, tol: f64) -> Result<EvalResult> {
    eval_combo(&sw_spec_combo(spec, w), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{mzv_numeric, mzv_trunc_exact_combo};

    fn sh(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn combo_examples() {
        let t = Tableau::new(sh("1"), vec![5]).unwrap();
        assert_eq!(schur_to_combo(&t), WordCombo::word(vec![5]));
        let t = Tableau::new(sh("2"), vec![1, 3]).unwrap();
        assert_eq!(schur_to_combo(&t), WordCombo::from_int_terms([(vec![4], 1), (vec![1, 3], 1)]));
        // top k1, bottom-left k3, bottom-right k2
        let t = Tableau::new(sh("2,2/1"), vec![1, 1, 2]).unwrap();
        let c = schur_to_combo(&t);
        for m in [3, 5, 9] {
            assert_eq!(mzv_trunc_exact_combo(&c, m), schur_trunc_naive(&t, m));
        }
    }

    #[test]
    fn direct_examples() {
        let t = Tableau::parse(&sh("2,2/1"), "1;1,1").unwrap();
        assert_eq!(schur_trunc_direct(&t, 3), q(3, 4));
        let t = Tableau::parse(&sh("2,2/1"), "1;2,1").unwrap();
        assert_eq!(schur_trunc_direct(&t, 3), q(5, 8));
        let t = Tableau::new(sh("1,1"), vec![1, 2]).unwrap();
        assert_eq!(schur_trunc_direct(&t, 3), q(1, 4));
        assert_eq!(schur_trunc_direct(&t, 1), q(0, 1));
        for m in 0..8 {
            assert_eq!(schur_trunc_direct(&t, m), schur_trunc_naive(&t, m));
        }
    }

    #[test]
    fn numeric_examples() {
        let col = Tableau::new(sh("1,1,1"), vec![1, 1, 2]).unwrap();
        let a = schur_numeric(&col, 1e-10).unwrap();
        let b = mzv_numeric(&Word(vec![1, 1, 2]), 1e-10).unwrap();
        assert!(a.agrees(&b, 0.0));
        let bad = Tableau::new(sh("1,1"), vec![2, 1]).unwrap();
        assert!(schur_numeric(&bad, 1e-6).is_err());
    }

    #[test]
    fn multicorner_examples() {
        let one = MultiCornerIndex::new(vec![vec![]], vec![vec![3]]).unwrap();
        assert_eq!(multicorner_to_combo(&one), WordCombo::word(vec![3]));
        let ah = MultiCornerIndex::anti_hook(vec![1], vec![2]).unwrap();
        let c = multicorner_to_combo(&ah);
        assert_eq!(c, WordCombo::from_int_terms([(vec![1, 2], 1), (vec![3], 1)]));
        assert_eq!(c, multicorner_system_combo(&ah));
        let printed = MultiCornerIndex::anti_hook(vec![2, 3], vec![2, 1, 2]).unwrap();
        assert_eq!(multicorner_to_combo(&printed), multicorner_system_combo(&printed));
    }

    #[test]
    fn spec_sums() {
        let w = 7;
        let anti = RibbonSpec::new(vec![2], vec![2]).unwrap();
        let a = s_w_spec(&anti, w, 1e-8).unwrap();
        let b = s_w_bruteforce(&sh("3,3/2"), w, 1e-8).unwrap();
        assert!(a.agrees(&b, 1e-12));
        let degenerate = RibbonSpec::new(vec![2, 0], vec![1, 1]).unwrap();
        let c = s_w_spec(&degenerate, 6, 1e-8).unwrap();
        let d = s_w_bruteforce(&crate::shapes::spec_to_shape(&degenerate), 6, 1e-8).unwrap();
        assert!((c.value - d.value).abs() > 1e-3);
        assert!(sw_spec_combo(&RibbonSpec::new(vec![1, 1], vec![2, 1]).unwrap(), 6).is_zero());
    }
}
