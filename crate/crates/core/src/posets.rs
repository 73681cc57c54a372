//! Labeled 2-posets, their totally ordered expansion and admissible part,
//! and the posets attached to weighted sums and anti-hook Schur MZVs.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulas::FormulaReport;
use crate::numerics::eval_combo;
use crate::schur::{multicorner_to_combo, MultiCornerIndex};
use crate::words::{Word, WordCombo};

pub const DEFAULT_CAP: usize = 14;

/// A finite poset on 0..n with labels in {0, 1}; `below[x]` is the bitmask of
/// elements strictly below x.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoPoset {
    labels: Vec<u8>,
    covers: Vec<(usize, usize)>,
    below: Vec<u64>,
}

impl TwoPoset {
    /// `covers` lists relations a < b.
    pub fn new(labels: Vec<u8>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > 64 {
            return Err(Error::CapExceeded { size: n, cap: 64 });
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(Error::Parse("labels must be 0 or 1".into()));
        }
        if let Some(&(a, b)) = covers.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::Parse(format!("relation {a}<{b} out of range")));
        }
        let mut below = vec![0u64; n];
        for &(a, b) in &covers {
            below[b] |= 1 << a;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut acc = below[x];
                for y in 0..n {
                    if below[x] >> y & 1 == 1 {
                        acc |= below[y];
                    }
                }
                if acc != below[x] {
                    below[x] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if (0..n).any(|x| below[x] >> x & 1 == 1) {
            return Err(Error::Parse("order relation has a cycle".into()));
        }
        Ok(TwoPoset { labels, covers, below })
    }

    /// A chain with the given labels, bottom to top.
    pub fn chain(labels: &[u8]) -> Self {
        let covers = (1..labels.len()).map(|i| (i - 1, i)).collect();
        TwoPoset::new(labels.to_vec(), covers).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.below[x] == 0).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| !self.less(x, y))).collect()
    }

    pub fn is_admissible(&self) -> bool {
        self.maximal().iter().all(|&x| self.labels[x] == 0) && self.minimal().iter().all(|&x| self.labels[x] == 1)
    }

    /// Disjoint union, the product of 2-posets.
    pub fn disjoint_union(&self, other: &TwoPoset) -> TwoPoset {
        let shift = self.len();
        let mut labels = self.labels.clone();
        labels.extend(&other.labels);
        let mut covers = self.covers.clone();
        covers.extend(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)));
        TwoPoset::new(labels, covers).expect("union of posets")
    }
}

/// Text format "LABELS:a<b,c<d", e.g. "1010:0<1,1<2".
impl fmt::Display for TwoPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: String = self.labels.iter().map(|l| if *l == 1 { '1' } else { '0' }).collect();
        let rel: Vec<String> = self.covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        write!(f, "{labels}:{}", rel.join(","))
    }
}

impl FromStr for TwoPoset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (labels, rel) = s.split_once(':').unwrap_or((s, ""));
        let labels = labels
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad label {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        let mut covers = Vec::new();
        for r in rel.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let (a, b) = r.split_once('<').ok_or_else(|| Error::Parse(format!("bad relation {r:?}")))?;
            let p = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x:?}: {e}")));
            covers.push((p(a)?, p(b)?));
        }
        TwoPoset::new(labels, covers)
    }
}

type Extensions = BTreeMap<Vec<u8>, u64>;

/// Label sequences (bottom to top) of the linear extensions, with multiplicities.
pub fn total_extensions(x: &TwoPoset, cap: usize) -> Result<Extensions> {
    if x.len() > cap {
        return Err(Error::CapExceeded { size: x.len(), cap });
    }
    let n = x.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // suffixes reachable from each down-set
    fn rec(x: &TwoPoset, placed: u64, full: u64, memo: &mut HashMap<u64, Extensions>) -> Extensions {
        if placed == full {
            return BTreeMap::from([(Vec::new(), 1)]);
        }
        if let Some(e) = memo.get(&placed) {
            return e.clone();
        }
        let mut out = Extensions::new();
        for y in 0..x.len() {
            if placed >> y & 1 == 0 && x.below[y] & !placed == 0 {
                for (suffix, c) in rec(x, placed | 1 << y, full, memo) {
                    let mut s = Vec::with_capacity(suffix.len() + 1);
                    s.push(x.labels[y]);
                    s.extend(suffix);
                    *out.entry(s).or_insert(0) += c;
                }
            }
        }
        memo.insert(placed, out.clone());
        out
    }
    Ok(rec(x, 0, full, &mut HashMap::new()))
}

/// Splits a chain •◦^{k_1−1}•◦^{k_2−1}… into its word (k_1, k_2, …).
pub fn chain_to_word(labels: &[u8]) -> Result<Word> {
    if labels.first() != Some(&1) || labels.last() != Some(&0) {
        return Err(Error::MalformedChain(format!("{labels:?} must start with 1 and end with 0")));
    }
    let mut out = Vec::new();
    for &l in labels {
        match l {
            1 => out.push(1),
            0 => *out.last_mut().unwrap() += 1,
            _ => return Err(Error::MalformedChain(format!("label {l}"))),
        }
    }
    Ok(Word(out))
}

pub fn word_to_chain(w: &Word) -> Vec<u8> {
    w.letters().iter().flat_map(|&k| std::iter::once(1).chain(std::iter::repeat_n(0, k as usize - 1))).collect()
}

/// The admissible terms of the totally ordered expansion as MZV words.
pub fn admissible_part(x: &TwoPoset, cap: usize) -> Result<WordCombo> {
    thread_local! {
        static MEMO: RefCell<HashMap<TwoPoset, WordCombo>> = RefCell::new(HashMap::new());
    }
    if let Some(c) = MEMO.with(|m| m.borrow().get(x).cloned()) {
        return Ok(c);
    }
    let mut out = WordCombo::zero();
    for (chain, c) in total_extensions(x, cap)? {
        if chain.first() == Some(&1) && chain.last() == Some(&0) {
            out.add_int(chain_to_word(&chain)?, c as i64);
        }
    }
    MEMO.with(|m| m.borrow_mut().insert(x.clone(), out.clone()));
    Ok(out)
}

struct PosetBuilder {
    labels: Vec<u8>,
    covers: Vec<(usize, usize)>,
}

impl PosetBuilder {
    fn new() -> Self {
        PosetBuilder { labels: Vec::new(), covers: Vec::new() }
    }

    /// Appends a chain above `base` (if any); returns its elements bottom to top.
    fn chain(&mut self, base: Option<usize>, labels: &[u8]) -> Vec<usize> {
        let mut prev = base;
        let mut out = Vec::new();
        for &l in labels {
            let id = self.labels.len();
            self.labels.push(l);
            if let Some(p) = prev {
                self.covers.push((p, id));
            }
            prev = Some(id);
            out.push(id);
        }
        out
    }

    fn build(self) -> TwoPoset {
        TwoPoset::new(self.labels, self.covers).expect("built poset")
    }
}

fn blocks(k: &[u32]) -> Vec<u8> {
    word_to_chain(&Word(k.to_vec()))
}

/// X_l(k): a bottom • carrying a chain of l ◦ and, on a second branch,
/// ◦^{k_1−1} • ◦^{k_2−1} … • ◦^{k_d−1}.
pub fn build_x(l: u32, k: &[u32]) -> Result<TwoPoset> {
    if l == 0 || k.is_empty() || k.contains(&0) {
        return Err(Error::Domain("X_l(k) needs l > 0 and a non-empty index".into()));
    }
    let mut b = PosetBuilder::new();
    let bottom = b.chain(None, &[1])[0];
    b.chain(Some(bottom), &vec![0; l as usize]);
    b.chain(Some(bottom), &blocks(k)[1..]);
    Ok(b.build())
}

/// Y_i(p) for p = (p_0, …, p̌_i, …, p_{d−1}) given without the i-th entry:
/// a chain •_i ◦^{p_{i−1}} •_{i−1} … •_1 ◦^{p_0} and a chain
/// •_{i+1} ◦^{p_{i+1}} … •_{d−1} ◦^{p_{d−1}} •_d whose top lies below the top of the first.
pub fn build_y(i: usize, p: &[u32]) -> Result<TwoPoset> {
    let d = p.len() + 1;
    if i == 0 || i >= d || p[0] == 0 {
        return Err(Error::Domain("Y_i(p) needs 1 ≤ i ≤ d−1 and p_0 > 0".into()));
    }
    let full = |j: usize| if j < i { p[j] } else { p[j - 1] };
    let mut left = Vec::new();
    for j in (0..i).rev() {
        left.push(1);
        left.extend(std::iter::repeat_n(0, full(j) as usize));
    }
    let mut right = Vec::new();
    for j in i + 1..d {
        right.push(1);
        right.extend(std::iter::repeat_n(0, full(j) as usize));
    }
    right.push(1);
    let mut b = PosetBuilder::new();
    let l = b.chain(None, &left);
    let r = b.chain(None, &right);
    b.covers.push((*r.last().unwrap(), *l.last().unwrap()));
    Ok(b.build())
}

/// Σ_{j=i}^{d−1} Σ_{c_j} (−1)^{c_j+p_{j+1}+…+p_{d−1}} ζ[c_j+1, p_{j+1}+1, …, p_{d−1}+1 \\ p_{i−1}+1, …, p_0+1]
/// · ζ(p_{i+1}+1, …, p_{j−1}+1, p_j−c_j+1) with p_i = 1; the j = i term has no second factor.
pub fn i_of_y_rhs(i: usize, p: &[u32]) -> Result<WordCombo> {
    let d = p.len() + 1;
    if i == 0 || i >= d || p[0] == 0 {
        return Err(Error::Domain("needs 1 ≤ i ≤ d−1 and p_0 > 0".into()));
    }
    let full: Vec<u32> = (0..d)
        .map(|j| {
            if j < i {
                p[j]
            } else if j == i {
                1
            } else {
                p[j - 1]
            }
        })
        .collect();
    let column: Vec<u32> = (0..i).rev().map(|j| full[j] + 1).collect();
    let mut out = WordCombo::zero();
    for j in i..d {
        for c in 0..full[j] {
            let mut row = vec![c + 1];
            row.extend(full[j + 1..].iter().map(|x| x + 1));
            let sign = if (c + full[j + 1..].iter().sum::<u32>()) % 2 == 0 { 1 } else { -1 };
            let hook = multicorner_to_combo(&MultiCornerIndex::anti_hook(row, column.clone())?).scale_int(sign);
            if j == i {
                out += hook;
            } else {
                let mut zw: Vec<u32> = full[i + 1..j].iter().map(|x| x + 1).collect();
                zw.push(full[j] - c + 1);
                out += &hook * &WordCombo::word(zw);
            }
        }
    }
    Ok(out)
}

/// The poset of the integral expression of ζ[l \\ k]: the chain of k, then for
/// q = s, …, 1 a branch •◦^{l_q−1} whose • lies below the top of the previous piece.
pub fn anti_hook_poset(ll: &[u32], kk: &[u32]) -> Result<TwoPoset> {
    if kk.is_empty() || *kk.last().unwrap() < 2 || ll.iter().chain(kk).any(|&x| x == 0) {
        return Err(Error::NonAdmissible("k must be non-empty and admissible".into()));
    }
    let mut b = PosetBuilder::new();
    let mut top = *b.chain(None, &blocks(kk)).last().unwrap();
    for &lq in ll.iter().rev() {
        let branch = b.chain(None, &blocks(&[lq]));
        b.covers.push((branch[0], top));
        top = *branch.last().unwrap();
    }
    Ok(b.build())
}

/// Compares ζ[l \\ k] through its Schur expansion with the admissible part of its poset.
pub fn verify_integral_series(ll: &[u32], kk: &[u32], tol: f64) -> Result<FormulaReport> {
    let mc = MultiCornerIndex::anti_hook(ll.to_vec(), kk.to_vec())?;
    let lhs = eval_combo(&multicorner_to_combo(&mc), tol)?;
    let x = anti_hook_poset(ll, kk)?;
    let rhs = eval_combo(&admissible_part(&x, DEFAULT_CAP)?, tol)?;
    Ok(FormulaReport::compare("integral-series", format!("l={ll:?} k={kk:?}"), lhs, rhs, tol))
}
