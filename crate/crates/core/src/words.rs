//! Words z_{k_1}...z_{k_d}, their rational combinations, the stuffle and index
//! shuffle products, the derivation ∂, stuffle determinants and φ(λ/μ).

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::levels::LevelSystem;
use crate::shapes::SkewShape;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Domain("word letters must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// "1,2,3" is z1 z2 z3; the empty string is the unit.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::unit());
        }
        let letters = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Every composition of `weight` as a word.
pub fn words_of_weight(weight: u32) -> Vec<Word> {
    crate::combinat::all_compositions(weight as i64)
        .into_iter()
        .map(|c| Word(c.into_iter().map(|x| x as u32).collect()))
        .collect()
}

/// A finite Q-linear combination of words, without zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordCombo {
    terms: BTreeMap<Word, BigRational>,
}

impl WordCombo {
    pub fn zero() -> Self {
        WordCombo::default()
    }

    pub fn unit() -> Self {
        Self::word(Word::unit())
    }

    pub fn word(w: impl Into<Word>) -> Self {
        let mut c = Self::zero();
        c.add_term(w.into(), BigRational::one());
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigRational)>>(it: I) -> Self {
        let mut c = Self::zero();
        for (w, q) in it {
            c.add_term(w, q);
        }
        c
    }

    pub fn from_int_terms<I: IntoIterator<Item = (Vec<u32>, i64)>>(it: I) -> Self {
        Self::from_terms(it.into_iter().map(|(w, q)| (Word(w), BigRational::from_integer(q.into()))))
    }

    pub fn add_term(&mut self, w: Word, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += q;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, q);
            }
        }
    }

    pub fn add_int(&mut self, w: Word, q: i64) {
        self.add_term(w, BigRational::from_integer(q.into()));
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigRational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        WordCombo { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect() }
    }

    pub fn scale_int(&self, q: i64) -> Self {
        self.scale(&BigRational::from_integer(q.into()))
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|q| q.is_integer())
    }

    /// Applies a linear map word by word.
    pub fn map_linear(&self, f: impl Fn(&Word) -> WordCombo) -> WordCombo {
        let mut acc = WordCombo::zero();
        for (w, q) in &self.terms {
            acc += f(w).scale(q);
        }
        acc
    }

    pub fn to_json_terms(&self) -> Vec<ComboTerm> {
        self.terms
            .iter()
            .map(|(w, q)| ComboTerm { word: w.0.clone(), num: q.numer().to_string(), den: q.denom().to_string() })
            .collect()
    }

    pub fn from_json_terms(terms: &[ComboTerm]) -> Result<Self> {
        let mut c = Self::zero();
        for t in terms {
            let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator {}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator {}", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            c.add_term(Word::new(t.word.clone())?, BigRational::new(num, den));
        }
        Ok(c)
    }
}

/// JSON form of one term: `{word, num, den}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub word: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl Serialize for WordCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WordCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<ComboTerm>::deserialize(d)?;
        WordCombo::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WordCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, q) in &self.terms {
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "z({w})")?;
        }
        Ok(())
    }
}

impl AddAssign<WordCombo> for WordCombo {
    fn add_assign(&mut self, rhs: WordCombo) {
        for (w, q) in rhs.terms {
            self.add_term(w, q);
        }
    }
}

impl AddAssign<&WordCombo> for WordCombo {
    fn add_assign(&mut self, rhs: &WordCombo) {
        for (w, q) in &rhs.terms {
            self.add_term(w.clone(), q.clone());
        }
    }
}

impl Add for WordCombo {
    type Output = WordCombo;
    fn add(mut self, rhs: WordCombo) -> WordCombo {
        self += rhs;
        self
    }
}

impl Add for &WordCombo {
    type Output = WordCombo;
    fn add(self, rhs: &WordCombo) -> WordCombo {
        let mut c = self.clone();
        c += rhs;
        c
    }
}

impl Neg for WordCombo {
    type Output = WordCombo;
    fn neg(self) -> WordCombo {
        WordCombo { terms: self.terms.into_iter().map(|(w, q)| (w, -q)).collect() }
    }
}

impl Sub for WordCombo {
    type Output = WordCombo;
    fn sub(self, rhs: WordCombo) -> WordCombo {
        self + (-rhs)
    }
}

impl Sub for &WordCombo {
    type Output = WordCombo;
    fn sub(self, rhs: &WordCombo) -> WordCombo {
        self.clone() + (-rhs.clone())
    }
}

impl Mul for &WordCombo {
    type Output = WordCombo;
    /// The stuffle product.
    fn mul(self, rhs: &WordCombo) -> WordCombo {
        stuffle(self, rhs)
    }
}

type Counts = Vec<(Vec<u32>, u64)>;

thread_local! {
    static STUFFLE_MEMO: RefCell<HashMap<(Vec<u32>, Vec<u32>), Rc<Counts>>> = RefCell::new(HashMap::new());
    static SHUFFLE_MEMO: RefCell<HashMap<(Vec<u32>, Vec<u32>), Rc<Counts>>> = RefCell::new(HashMap::new());
}

fn product_words(u: &[u32], v: &[u32], merge: bool) -> Rc<Counts> {
    if u.is_empty() {
        return Rc::new(vec![(v.to_vec(), 1)]);
    }
    if v.is_empty() {
        return Rc::new(vec![(u.to_vec(), 1)]);
    }
    // both products are commutative
    let key = if u <= v { (u.to_vec(), v.to_vec()) } else { (v.to_vec(), u.to_vec()) };
    let memo = if merge { &STUFFLE_MEMO } else { &SHUFFLE_MEMO };
    if let Some(r) = memo.with(|m| m.borrow().get(&key).cloned()) {
        return r;
    }
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut push = |first: u32, tail: &Counts| {
        for (w, c) in tail {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(first);
            word.extend_from_slice(w);
            *acc.entry(word).or_insert(0) += c;
        }
    };
    push(u[0], &product_words(&u[1..], v, merge));
    push(v[0], &product_words(u, &v[1..], merge));
    if merge {
        push(u[0] + v[0], &product_words(&u[1..], &v[1..], merge));
    }
    let mut out: Counts = acc.into_iter().collect();
    out.sort_unstable();
    let rc = Rc::new(out);
    memo.with(|m| m.borrow_mut().insert(key, rc.clone()));
    rc
}

/// Stuffle product of two words, with integer multiplicities.
pub fn stuffle_words(u: &[u32], v: &[u32]) -> Vec<(Vec<u32>, u64)> {
    (*product_words(u, v, true)).clone()
}

fn bilinear(a: &WordCombo, b: &WordCombo, merge: bool) -> WordCombo {
    let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
    for (u, p) in &a.terms {
        for (v, q) in &b.terms {
            let pq = p * q;
            for (w, c) in product_words(&u.0, &v.0, merge).iter() {
                let add = &pq * BigRational::from_integer(BigInt::from(*c));
                *acc.entry(w.clone()).or_insert_with(BigRational::zero) += add;
            }
        }
    }
    WordCombo::from_terms(acc.into_iter().map(|(w, q)| (Word(w), q)))
}

pub fn stuffle(a: &WordCombo, b: &WordCombo) -> WordCombo {
    bilinear(a, b, true)
}

pub fn index_shuffle(a: &WordCombo, b: &WordCombo) -> WordCombo {
    bilinear(a, b, false)
}

/// z_k^n: the n-letter word for n > 0, the unit for n = 0, zero for n < 0.
pub fn z_power(k: u32, n: i64) -> WordCombo {
    match n {
        n if n < 0 => WordCombo::zero(),
        0 => WordCombo::unit(),
        n => WordCombo::word(vec![k; n as usize]),
    }
}

pub fn derivation(v: &WordCombo) -> WordCombo {
    v.map_linear(|w| {
        let mut out = WordCombo::zero();
        for a in 0..w.depth() {
            let mut x = w.0.clone();
            x[a] += 1;
            out.add_int(Word(x), w.0[a] as i64);
        }
        out
    })
}

/// Integer-coefficient combination used inside determinant expansions.
type IntCombo = HashMap<Vec<u32>, i128>;

fn int_stuffle(a: &IntCombo, b: &IntCombo) -> IntCombo {
    let mut acc = IntCombo::new();
    for (u, p) in a {
        for (v, q) in b {
            for (w, c) in product_words(u, v, true).iter() {
                *acc.entry(w.clone()).or_insert(0) += p * q * (*c as i128);
            }
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

fn to_int_combo(c: &WordCombo) -> Option<IntCombo> {
    c.terms
        .iter()
        .map(|(w, q)| if q.is_integer() { q.numer().to_i128().map(|n| (w.0.clone(), n)) } else { None })
        .collect()
}

fn from_int_combo(c: IntCombo) -> WordCombo {
    WordCombo::from_terms(c.into_iter().map(|(w, q)| (Word(w), BigRational::from_integer(q.into()))))
}

/// Determinant in the (commutative) stuffle algebra, Σ_σ sgn σ ∏_* a_{i,σ(i)}.
/// Evaluated by Laplace expansion along rows, memoized on the set of used columns,
/// which regroups the terms of the permutation sum.
pub fn det_stuffle(matrix: &[Vec<WordCombo>]) -> WordCombo {
    let n = matrix.len();
    assert!(n >= 1 && matrix.iter().all(|r| r.len() == n), "square matrix required");
    assert!(n < 64);
    if let Some(int) =
        matrix.iter().map(|r| r.iter().map(to_int_combo).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()
    {
        let mut memo: HashMap<u64, IntCombo> = HashMap::new();
        return from_int_combo(det_int(&int, 0, 0, &mut memo));
    }
    let mut memo: HashMap<u64, WordCombo> = HashMap::new();
    det_rat(matrix, 0, 0, &mut memo)
}

fn det_int(m: &[Vec<IntCombo>], row: usize, used: u64, memo: &mut HashMap<u64, IntCombo>) -> IntCombo {
    let n = m.len();
    if row == n {
        let mut one = IntCombo::new();
        one.insert(Vec::new(), 1);
        return one;
    }
    if let Some(r) = memo.get(&used) {
        return r.clone();
    }
    let mut acc = IntCombo::new();
    let mut pos = 0;
    for j in 0..n {
        if used >> j & 1 == 1 {
            continue;
        }
        let sgn: i128 = if pos % 2 == 0 { 1 } else { -1 };
        pos += 1;
        if m[row][j].is_empty() {
            continue;
        }
        let minor = det_int(m, row + 1, used | 1 << j, memo);
        if minor.is_empty() {
            continue;
        }
        for (w, c) in int_stuffle(&m[row][j], &minor) {
            *acc.entry(w).or_insert(0) += sgn * c;
        }
    }
    acc.retain(|_, c| *c != 0);
    memo.insert(used, acc.clone());
    acc
}

fn det_rat(m: &[Vec<WordCombo>], row: usize, used: u64, memo: &mut HashMap<u64, WordCombo>) -> WordCombo {
    let n = m.len();
    if row == n {
        return WordCombo::unit();
    }
    if let Some(r) = memo.get(&used) {
        return r.clone();
    }
    let mut acc = WordCombo::zero();
    let mut pos = 0;
    for j in 0..n {
        if used >> j & 1 == 1 {
            continue;
        }
        let sgn = if pos % 2 == 0 { 1 } else { -1 };
        pos += 1;
        if m[row][j].is_zero() {
            continue;
        }
        let minor = det_rat(m, row + 1, used | 1 << j, memo);
        acc += stuffle(&m[row][j], &minor).scale_int(sgn);
    }
    memo.insert(used, acc.clone());
    acc
}

/// Weak/strict constraints between the cells of a shape: weak along rows,
/// strict down columns. Cells are indexed in row-major order.
pub(crate) fn shape_levels(shape: &SkewShape, weights: Vec<u32>) -> LevelSystem {
    let cells = shape.cells();
    let index: HashMap<_, _> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut sys = LevelSystem::new(weights);
    for (x, &(i, j)) in cells.iter().enumerate() {
        if let Some(&y) = index.get(&(i, j + 1)) {
            sys.weak(x, y);
        }
        if let Some(&y) = index.get(&(i + 1, j)) {
            sys.strict(x, y);
        }
    }
    sys
}

fn count_map_to_combo(m: crate::levels::CountMap) -> WordCombo {
    WordCombo::from_terms(m.into_iter().map(|(w, c)| (Word(w), BigRational::from_integer(BigInt::from(c)))))
}

/// φ(λ/μ) = Σ over semi-standard decompositions of z_{|D_1|}...z_{|D_r|}.
pub fn phi_via_ssd(shape: &SkewShape) -> WordCombo {
    let sys = shape_levels(shape, vec![1; shape.size()]);
    count_map_to_combo(sys.expand())
}

/// φ(λ/μ) = det_*[z_1^{λ'_i − μ'_j − i + j}] of size λ_1.
pub fn phi_via_jacobi_trudi(shape: &SkewShape) -> WordCombo {
    let lc = shape.lambda().conjugate();
    let mc = shape.mu().conjugate();
    let s = shape.lambda().get(1) as usize;
    if s == 0 {
        return WordCombo::unit();
    }
    let matrix: Vec<Vec<WordCombo>> = (1..=s)
        .map(|i| (1..=s).map(|j| z_power(1, lc.get(i) as i64 - mc.get(j) as i64 - i as i64 + j as i64)).collect())
        .collect();
    det_stuffle(&matrix)
}

/// Σ_{l=0}^n (k+1)/(l+k+1) C(2l+k, l) z_2^{n−l} ⧢̃ z_1^{2l+k}.
pub fn phi_two_column_closed_form(n: u32, k: u32) -> WordCombo {
    let mut acc = WordCombo::zero();
    for l in 0..=n as i64 {
        let k = k as i64;
        let c = BigRational::new(BigInt::from(k + 1) * binom(2 * l + k, l), BigInt::from(l + k + 1));
        let term = index_shuffle(&z_power(2, n as i64 - l), &z_power(1, 2 * l + k));
        acc += term.scale(&c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> WordCombo {
        WordCombo::word(v.to_vec())
    }

    fn c(terms: &[(&[u32], i64)]) -> WordCombo {
        WordCombo::from_int_terms(terms.iter().map(|(w, q)| (w.to_vec(), *q)))
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(stuffle(&w(&[1]), &w(&[1])), c(&[(&[1, 1], 2), (&[2], 1)]));
        assert_eq!(stuffle(&WordCombo::unit(), &w(&[3, 1])), w(&[3, 1]));
        assert_eq!(stuffle(&w(&[2]), &w(&[3])), c(&[(&[2, 3], 1), (&[3, 2], 1), (&[5], 1)]));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(index_shuffle(&w(&[1]), &w(&[2])), c(&[(&[1, 2], 1), (&[2, 1], 1)]));
        assert_eq!(index_shuffle(&WordCombo::unit(), &w(&[2, 2])), w(&[2, 2]));
        assert_eq!(index_shuffle(&w(&[1]), &w(&[1, 1])), c(&[(&[1, 1, 1], 3)]));
    }

    #[test]
    fn power_examples() {
        assert_eq!(z_power(1, 3), w(&[1, 1, 1]));
        assert_eq!(z_power(2, 0), WordCombo::unit());
        assert!(z_power(1, -2).is_zero());
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(derivation(&w(&[1])), w(&[2]));
        assert_eq!(derivation(&w(&[1, 1])), c(&[(&[2, 1], 1), (&[1, 2], 1)]));
        assert!(derivation(&WordCombo::unit()).is_zero());
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_stuffle(&[vec![w(&[3])]]), w(&[3]));
        let m = vec![vec![z_power(1, 1), z_power(1, 2)], vec![z_power(1, 0), z_power(1, 1)]];
        assert_eq!(det_stuffle(&m), c(&[(&[1, 1], 1), (&[2], 1)]));
        let m = vec![vec![w(&[1]), w(&[1])], vec![w(&[2, 1]), w(&[2, 1])]];
        assert!(det_stuffle(&m).is_zero());
    }

    #[test]
    fn phi_examples() {
        let row: SkewShape = "2".parse().unwrap();
        let col: SkewShape = "1,1".parse().unwrap();
        let rib: SkewShape = "2,2/1".parse().unwrap();
        assert_eq!(phi_via_ssd(&row), c(&[(&[2], 1), (&[1, 1], 1)]));
        assert_eq!(phi_via_ssd(&col), c(&[(&[1, 1], 1)]));
        let expect = c(&[(&[1, 2], 1), (&[2, 1], 1), (&[1, 1, 1], 2)]);
        assert_eq!(phi_via_ssd(&rib), expect);
        for s in [&row, &col, &rib] {
            assert_eq!(phi_via_jacobi_trudi(s), phi_via_ssd(s));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(phi_two_column_closed_form(1, 0), phi_via_ssd(&"2".parse().unwrap()));
        let expect = c(&[(&[1, 2], 1), (&[2, 1], 1), (&[1, 1, 1], 2)]);
        assert_eq!(phi_two_column_closed_form(1, 1), expect);
        assert_eq!(phi_two_column_closed_form(2, 0), phi_via_ssd(&"2,2".parse().unwrap()));
    }

    #[test]
    fn word_text() {
        assert_eq!("1,2,3".parse::<Word>().unwrap(), Word(vec![1, 2, 3]));
        assert!("1,0".parse::<Word>().is_err());
        assert_eq!(Word(vec![2, 1]).to_string(), "2,1");
        assert!(!Word(vec![2, 1]).is_admissible());
        assert!(Word::unit().is_admissible());
    }

    #[test]
    fn combo_json_round_trip() {
        let x = c(&[(&[1, 2], 3), (&[4], -1)]).scale(&BigRational::new(1.into(), 2.into()));
        let j = serde_json::to_string(&x).unwrap();
        let back: WordCombo = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }
}
