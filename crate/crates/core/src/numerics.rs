//! Truncated MZVs in exact arithmetic and convergent MZVs in double precision
//! with error bounds.
//!
//! The default floating route splits the iterated integral at 1/2 and sums the
//! two geometrically convergent halves; the long-truncation route with tail
//! bounds is kept as an alternative.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Word, WordCombo};

const U: f64 = f64::EPSILON * 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_bound: f64,
    pub bound_kind: BoundKind,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        EvalResult { value, err_bound: 0.0, bound_kind: BoundKind::Rigorous }
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    fn kind(a: BoundKind, b: BoundKind) -> BoundKind {
        if a == BoundKind::Heuristic || b == BoundKind::Heuristic {
            BoundKind::Heuristic
        } else {
            BoundKind::Rigorous
        }
    }

    pub fn add(&self, o: &EvalResult) -> EvalResult {
        let value = self.value + o.value;
        EvalResult {
            value,
            err_bound: self.err_bound + o.err_bound + U * value.abs(),
            bound_kind: Self::kind(self.bound_kind, o.bound_kind),
        }
    }

    pub fn sub(&self, o: &EvalResult) -> EvalResult {
        self.add(&o.scale(-1.0))
    }

    pub fn mul(&self, o: &EvalResult) -> EvalResult {
        let value = self.value * o.value;
        EvalResult {
            value,
            err_bound: self.err_bound * o.value.abs()
                + o.err_bound * self.value.abs()
                + self.err_bound * o.err_bound
                + U * value.abs(),
            bound_kind: Self::kind(self.bound_kind, o.bound_kind),
        }
    }

    pub fn scale(&self, c: f64) -> EvalResult {
        let value = self.value * c;
        EvalResult { value, err_bound: self.err_bound * c.abs() + U * value.abs(), bound_kind: self.bound_kind }
    }

    pub fn scale_q(&self, q: &BigRational) -> EvalResult {
        let c = q.to_f64().unwrap_or(f64::NAN);
        let r = self.scale(c);
        EvalResult { err_bound: r.err_bound + U * r.value.abs(), ..r }
    }

    /// True when the two enclosures, widened by `slack`, overlap.
    pub fn agrees(&self, o: &EvalResult, slack: f64) -> bool {
        (self.value - o.value).abs() <= self.err_bound + o.err_bound + slack
    }
}

// ---------------------------------------------------------------- exact truncations

/// Scaled truncations: entry M of the result is ζ_M(k)·L^{wt(k)} with L = lcm(1..m_max−1).
struct Scale {
    m_max: u32,
    l: BigUint,
    // (L/m) for m in 1..m_max
    ratio: Vec<BigUint>,
}

fn scale_for(m_max: u32) -> Scale {
    let mut l = BigUint::one();
    for m in 1..m_max.max(1) {
        l = l.lcm(&BigUint::from(m));
    }
    let ratio = (0..m_max.max(1)).map(|m| if m == 0 { BigUint::zero() } else { &l / BigUint::from(m) }).collect();
    Scale { m_max, l, ratio }
}

fn pow_table(s: &Scale, k: u32) -> Vec<BigUint> {
    s.ratio.iter().map(|r| num_traits::pow(r.clone(), k as usize)).collect()
}

type ScaledCache = HashMap<(Vec<u32>, u32), std::sync::Arc<Vec<BigUint>>>;

fn scaled_cache() -> &'static Mutex<ScaledCache> {
    static C: OnceLock<Mutex<ScaledCache>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn trunc_scaled(k: &[u32], s: &Scale) -> std::sync::Arc<Vec<BigUint>> {
    let key = (k.to_vec(), s.m_max);
    if let Some(v) = scaled_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let n = s.m_max as usize;
    // prefix[M] = Σ_{m_1<...<m_j<M} ∏ (L/m_i)^{k_i}
    let mut prefix = vec![BigUint::one(); n + 1];
    for &kj in k {
        let pw = pow_table(s, kj);
        let mut next = vec![BigUint::zero(); n + 1];
        for m in 1..n {
            next[m + 1] = &next[m] + &prefix[m] * &pw[m];
        }
        prefix = next;
    }
    let arc = std::sync::Arc::new(prefix);
    scaled_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// ζ_M(k) = Σ_{0<m_1<...<m_d<M} ∏ m_i^{-k_i}, exactly.
pub fn mzv_trunc_exact(k: &Word, m: u32) -> BigRational {
    mzv_trunc_exact_all(k, m).pop().unwrap()
}

/// ζ_M(k) for every M in 0..=m_max.
pub fn mzv_trunc_exact_all(k: &Word, m_max: u32) -> Vec<BigRational> {
    let s = scale_for(m_max);
    let num = trunc_scaled(k.letters(), &s);
    let den = BigInt::from(num_traits::pow(s.l.clone(), k.weight() as usize));
    num.iter().map(|x| BigRational::new(BigInt::from(x.clone()), den.clone())).collect()
}

/// Linear extension of [`mzv_trunc_exact`].
pub fn mzv_trunc_exact_combo(c: &WordCombo, m: u32) -> BigRational {
    mzv_trunc_exact_combo_all(c, m).pop().unwrap()
}

pub fn mzv_trunc_exact_combo_all(c: &WordCombo, m_max: u32) -> Vec<BigRational> {
    let s = scale_for(m_max);
    // group by weight so each group shares the denominator D·L^wt, D the lcm of coefficient denominators
    let mut groups: BTreeMap<u32, Vec<(&Word, &BigRational)>> = BTreeMap::new();
    for (w, q) in c.iter() {
        groups.entry(w.weight()).or_default().push((w, q));
    }
    let mut out = vec![BigRational::zero(); m_max as usize + 1];
    for (wt, terms) in groups {
        let d = terms.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut acc = vec![BigInt::zero(); m_max as usize + 1];
        for (w, q) in terms {
            let num = trunc_scaled(w.letters(), &s);
            let c = q.numer() * (&d / q.denom());
            for (a, x) in acc.iter_mut().zip(num.iter()) {
                *a += &c * BigInt::from(x.clone());
            }
        }
        let den = d * BigInt::from(num_traits::pow(s.l.clone(), wt as usize));
        for (o, a) in out.iter_mut().zip(acc) {
            *o += BigRational::new(a, den.clone());
        }
    }
    out
}

// ---------------------------------------------------------------- floating engine

/// Σ_{0<m_1<...<m_d} x^{m_d} / ∏ m_i^{k_i} at x = 1/2, truncated adaptively.
/// Returns (value, error bound).
fn li_half(k: &[u32]) -> (f64, f64) {
    if k.is_empty() {
        return (1.0, 0.0);
    }
    let d = k.len();
    let wt: u32 = k.iter().sum();
    let fact: f64 = (1..d).map(|x| x as f64).product();
    // choose n so that the geometric tail is negligible
    let mut n = 40usize;
    let tail = loop {
        let p = (d - 1) as i32;
        let lg = |m: f64| 1.0 + m.ln();
        let rho = 0.5 * (lg(n as f64 + 2.0) / lg(n as f64 + 1.0)).powi(p);
        let first = 0.5f64.powi(n as i32 + 1) * lg(n as f64 + 1.0).powi(p) / fact;
        let t = first / (1.0 - rho);
        if t < 1e-19 || n > 400 {
            break t;
        }
        n += 10;
    };
    let mut prefix = vec![1.0f64; n + 1];
    for (j, &kj) in k.iter().enumerate() {
        let mut next = vec![0.0f64; n + 1];
        let mut acc = 0.0;
        for m in 1..=n {
            let t = prefix[m] / (m as f64).powi(kj as i32);
            // next[m+1] holds the sum over indices < m+1; the last level keeps terms
            if j + 1 == d {
                next[m] = t;
            } else {
                acc += t;
                if m < n {
                    next[m + 1] = acc;
                }
            }
        }
        if j + 1 < d {
            next[1] = 0.0;
        }
        prefix = next;
    }
    let mut x = 1.0f64;
    let mut sum = 0.0;
    for term in prefix.iter().skip(1) {
        x *= 0.5;
        sum += term * x;
    }
    let ops = (n as f64) * (wt as f64 + 2.0 * d as f64 + 2.0);
    let rounding = 2.0 * ops * U * sum.abs();
    (sum, tail + rounding)
}

fn word_bits(k: &[u32]) -> Vec<u8> {
    let mut bits = Vec::new();
    for &x in k {
        bits.push(1);
        bits.extend(std::iter::repeat_n(0, x as usize - 1));
    }
    bits
}

fn bits_to_index(bits: &[u8]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::new();
    for &b in bits {
        if b == 1 {
            out.push(1);
        } else {
            *out.last_mut().expect("word starts with a 1") += 1;
        }
    }
    out
}

fn zeta_split(k: &[u32]) -> (f64, f64) {
    let bits = word_bits(k);
    let n = bits.len();
    let mut value = 0.0;
    let mut err = 0.0;
    let mut mass = 0.0;
    for j in 0..=n {
        let (a, ea) = li_half(&bits_to_index(&bits[..j]));
        let dual: Vec<u8> = bits[j..].iter().rev().map(|b| 1 - b).collect();
        let (b, eb) = li_half(&bits_to_index(&dual));
        let t = a * b;
        value += t;
        mass += t.abs();
        err += ea * b.abs() + eb * a.abs() + ea * eb + U * t.abs();
    }
    err += (n as f64 + 1.0) * U * mass;
    (value, err)
}

fn float_cache() -> &'static Mutex<HashMap<Vec<u32>, (f64, f64)>> {
    static C: OnceLock<Mutex<HashMap<Vec<u32>, (f64, f64)>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn zeta_cached(k: &[u32]) -> (f64, f64) {
    if let Some(v) = float_cache().lock().unwrap().get(k) {
        return *v;
    }
    let v = zeta_split(k);
    float_cache().lock().unwrap().insert(k.to_vec(), v);
    v
}

fn check_tol(r: EvalResult, tol: f64) -> Result<EvalResult> {
    if r.err_bound <= tol {
        Ok(r)
    } else {
        Err(Error::BudgetExceeded { best_bound: r.err_bound, tol })
    }
}

/// ζ(k) for an admissible index (or the empty index, which gives 1).
pub fn mzv_numeric(k: &Word, tol: f64) -> Result<EvalResult> {
    if k.is_empty() {
        return Ok(EvalResult::exact(1.0));
    }
    if !k.is_admissible() {
        return Err(Error::NonAdmissible(format!("({k})")));
    }
    let (value, err_bound) = zeta_cached(k.letters());
    check_tol(EvalResult { value, err_bound, bound_kind: BoundKind::Rigorous }, tol)
}

/// ζ(w) by Euler–Maclaurin summation.
pub fn riemann_zeta(w: u32, tol: f64) -> Result<EvalResult> {
    if w < 2 {
        return Err(Error::Domain(format!("zeta({w}) diverges")));
    }
    const B2: [f64; 8] =
        [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0];
    let s = w as f64;
    let n = 20usize;
    let nf = n as f64;
    let mut sum = 0.0;
    for m in (1..n).rev() {
        sum += (m as f64).powf(-s);
    }
    sum += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // B_{2j}/(2j)! · s(s+1)...(s+2j−2) · N^{−s−2j+1}
    let mut poch = s;
    let mut fact = 2.0;
    let mut last = 0.0;
    for (j, b) in B2.iter().enumerate() {
        let j = j + 1;
        let term = b / fact * poch * nf.powf(-s - 2.0 * j as f64 + 1.0);
        if j < B2.len() {
            sum += term;
        } else {
            last = term.abs();
        }
        poch *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
        fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
    }
    let err = 2.0 * last + 4.0 * (n as f64) * U * sum;
    check_tol(EvalResult { value: sum, err_bound: err, bound_kind: BoundKind::Rigorous }, tol)
}

/// Σ coeff·ζ(word) over a combination of admissible words.
pub fn eval_combo(c: &WordCombo, tol: f64) -> Result<EvalResult> {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut mass = 0.0;
    for (w, q) in c.iter() {
        if !w.is_admissible() {
            return Err(Error::NonAdmissible(format!("({w})")));
        }
        let (v, e) = if w.is_empty() { (1.0, 0.0) } else { zeta_cached(w.letters()) };
        let qf = q.to_f64().unwrap_or(f64::NAN);
        let t = qf * v;
        value += t;
        mass += t.abs();
        err += qf.abs() * e + 2.0 * U * t.abs();
    }
    err += (c.len() as f64) * U * mass;
    check_tol(EvalResult { value, err_bound: err, bound_kind: BoundKind::Rigorous }, tol)
}

/// Large-cutoff truncation in floating point, Σ_{m_d<N}, compensated.
pub fn mzv_trunc_f64(k: &[u32], n: usize) -> f64 {
    trunc_f64_state(k, n).0
}

// returns (ζ_N, P_{d−1}(N)) where P_{d−1}(N) is the inner nested sum below N
fn trunc_f64_state(k: &[u32], n: usize) -> (f64, f64) {
    let d = k.len();
    let mut sums = vec![0.0f64; d + 1];
    let mut comp = vec![0.0f64; d + 1];
    sums[0] = 1.0;
    for m in 1..n {
        let mf = m as f64;
        // update deepest levels first so each uses the prefix below m
        for j in (1..=d).rev() {
            let t = sums[j - 1] / mf.powi(k[j - 1] as i32);
            let y = t - comp[j];
            let s = sums[j] + y;
            comp[j] = (s - sums[j]) - y;
            sums[j] = s;
        }
    }
    (sums[d], if d >= 1 { sums[d - 1] } else { 1.0 })
}

/// Least-squares-free fit of y = a + b ln m + c/m through three points.
fn fit_log_model(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let rows: Vec<[f64; 4]> = pts.iter().map(|&(m, y)| [1.0, m.ln(), 1.0 / m, y]).collect();
    let det3 = |c0: usize, c1: usize, c2: usize| {
        let r = &rows;
        r[0][c0] * (r[1][c1] * r[2][c2] - r[1][c2] * r[2][c1]) - r[0][c1] * (r[1][c0] * r[2][c2] - r[1][c2] * r[2][c0])
            + r[0][c2] * (r[1][c0] * r[2][c1] - r[1][c1] * r[2][c0])
    };
    let det = det3(0, 1, 2);
    (det3(3, 1, 2) / det, det3(0, 3, 2) / det, det3(0, 1, 3) / det)
}

/// ∫_a^∞ (1+ln x)^p x^{−k} dx.
fn log_power_tail(a: f64, p: u32, k: u32) -> f64 {
    let u = 1.0 + a.ln();
    let km1 = (k - 1) as f64;
    let mut total = 0.0;
    let mut falling = 1.0;
    for j in 0..=p {
        total += falling * u.powi((p - j) as i32) * a.powf(1.0 - k as f64) / km1.powi(j as i32 + 1);
        falling *= (p - j) as f64;
    }
    total
}

/// ζ(k) from a long truncation plus tail estimates; rigorous when the bracket
/// [lower tail, upper tail] is narrow enough, heuristic extrapolation otherwise.
pub fn mzv_numeric_truncated(k: &Word, tol: f64, max_n: usize) -> Result<EvalResult> {
    if k.is_empty() {
        return Ok(EvalResult::exact(1.0));
    }
    if !k.is_admissible() {
        return Err(Error::NonAdmissible(format!("({k})")));
    }
    let kk = k.letters();
    let d = kk.len();
    let kd = *kk.last().unwrap();
    let p = (d - 1) as u32;
    let fact: f64 = (1..d).map(|x| x as f64).product();
    let mut n = 1024usize.min(max_n.max(16));
    let mut best_rigorous = f64::INFINITY;
    loop {
        let (s, inner) = trunc_f64_state(kk, n);
        let nf = n as f64;
        let lower = inner * nf.powf(1.0 - kd as f64) / (kd as f64 - 1.0);
        let lg = 1.0 + nf.ln();
        let upper = if lg * kd as f64 >= p as f64 {
            (lg.powi(p as i32) * nf.powf(-(kd as f64)) + log_power_tail(nf, p, kd)) / fact
        } else {
            f64::INFINITY
        };
        let rounding = 4.0 * (n as f64) * (d as f64) * U * s;
        let r = EvalResult {
            value: s + 0.5 * (lower + upper),
            err_bound: 0.5 * (upper - lower) + rounding,
            bound_kind: BoundKind::Rigorous,
        };
        if r.err_bound <= tol {
            return Ok(r);
        }
        best_rigorous = best_rigorous.min(r.err_bound);
        if n * 2 > max_n {
            break;
        }
        n *= 2;
    }
    // heuristic: P_{d−1}(m) ≈ a + b ln m + c/m fitted at N/4, N/2, N
    let extrapolate = |nn: usize| -> f64 {
        let pts: Vec<(f64, f64)> =
            [nn / 4, nn / 2, nn].iter().map(|&m| (m.max(2) as f64, trunc_f64_state(kk, m.max(2)).1)).collect();
        let (a, b, c) = if d == 1 { (1.0, 0.0, 0.0) } else { fit_log_model(&pts) };
        let nf = nn as f64;
        let k = kd as f64;
        let s = trunc_f64_state(kk, nn).0;
        let int = a * nf.powf(1.0 - k) / (k - 1.0)
            + b * (nf.ln() * nf.powf(1.0 - k) / (k - 1.0) + nf.powf(1.0 - k) / ((k - 1.0) * (k - 1.0)))
            + c * nf.powf(-k) / k;
        let pn = a + b * nf.ln() + c / nf;
        s + int + 0.5 * pn * nf.powf(-k)
    };
    let v2 = extrapolate(n);
    let v1 = extrapolate((n / 2).max(8));
    let h = EvalResult {
        value: v2,
        err_bound: 4.0 * (v2 - v1).abs() + 4.0 * (n as f64) * (d as f64) * U * v2,
        bound_kind: BoundKind::Heuristic,
    };
    if h.err_bound <= tol {
        return Ok(h);
    }
    let best_bound = best_rigorous.min(h.err_bound);
    Err(Error::BudgetExceeded { best_bound, tol })
}

/// Float rendering of an exact rational (for reporting truncated values).
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let sign = if q.is_negative() { -1.0 } else { 1.0 };
        let (n, d) = (q.numer().abs(), q.denom().clone());
        let shift = n.bits() as i64 - d.bits() as i64;
        let scaled = if shift > 0 {
            BigRational::new(n, d << shift as usize)
        } else {
            BigRational::new(n << (-shift) as usize, d)
        };
        sign * scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}
